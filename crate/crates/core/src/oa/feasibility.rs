use std::fmt;

use crate::error::{Error, Result};

/// Parameters `(r, N, d, k)` of an orthogonal array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OaParams {
    pub runs: usize,
    pub factors: usize,
    pub levels: usize,
    pub strength: usize,
}

impl OaParams {
    pub fn new(runs: usize, factors: usize, levels: usize, strength: usize) -> Self {
        OaParams {
            runs,
            factors,
            levels,
            strength,
        }
    }
}

impl fmt::Display for OaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OA({},{},{},{})",
            self.runs, self.factors, self.levels, self.strength
        )
    }
}

/// A known existence result with its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistenceFact {
    pub params: OaParams,
    pub exists: bool,
    pub source: String,
}

/// Table of known existence results, read from a fixture file.
///
/// Line format: `exists|nonexistent <r> <N> <d> <k> <source words...>`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExistenceFacts {
    facts: Vec<ExistenceFact>,
}

impl ExistenceFacts {
    pub fn new(facts: Vec<ExistenceFact>) -> Self {
        ExistenceFacts { facts }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut facts = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let exists = match it.next() {
                Some("exists") => true,
                Some("nonexistent") => false,
                other => return Err(Error::parse(ln + 1, format!("unknown fact kind {other:?}"))),
            };
            let mut nums = [0usize; 4];
            for slot in nums.iter_mut() {
                *slot = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(ln + 1, "expected four integers r N d k"))?;
            }
            let source = it.collect::<Vec<_>>().join(" ");
            if source.is_empty() {
                return Err(Error::parse(ln + 1, "fact has no source"));
            }
            facts.push(ExistenceFact {
                params: OaParams::new(nums[0], nums[1], nums[2], nums[3]),
                exists,
                source,
            });
        }
        Ok(ExistenceFacts { facts })
    }

    /// Canonical text form; parses back to an equal table.
    pub fn to_text(&self) -> String {
        self.facts
            .iter()
            .map(|f| {
                let p = f.params;
                let kind = if f.exists { "exists" } else { "nonexistent" };
                format!(
                    "{kind} {} {} {} {} {}\n",
                    p.runs, p.factors, p.levels, p.strength, f.source
                )
            })
            .collect()
    }

    pub fn facts(&self) -> &[ExistenceFact] {
        &self.facts
    }

    pub fn lookup(&self, p: &OaParams) -> Option<&ExistenceFact> {
        self.facts.iter().find(|f| &f.params == p)
    }

    pub fn known_nonexistent(&self, p: &OaParams) -> Option<&ExistenceFact> {
        self.lookup(p).filter(|f| !f.exists)
    }
}

/// Existence requirement for a block of `block_size` rows when that size is
/// a power `d^t` of the level count and `k + 1 ≥ N − t + 1`: such a block must
/// itself be an `OA(d^t, N, d, t)`.
pub fn case_a_block_test(block_size: usize, n: usize, d: usize, k: usize) -> Option<OaParams> {
    let t = exact_log(block_size, d)?;
    (t >= 1 && t <= n && k + 1 >= n + 1 - t).then(|| OaParams::new(block_size, n, d, t))
}

fn exact_log(mut x: usize, d: usize) -> Option<usize> {
    if d < 2 || x == 0 {
        return None;
    }
    let mut t = 0;
    while x.is_multiple_of(d) {
        x /= d;
        t += 1;
    }
    (x == 1).then_some(t)
}

fn choose2(s: usize) -> u128 {
    let s = s as u128;
    s * s.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    /// No block count is excluded.
    FeasibleUnknown,
    /// Every block count is excluded.
    Infeasible,
    /// The number of blocks is at least this value.
    MinBlocks(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub runs: usize,
    pub factors: usize,
    pub levels: usize,
    pub k: usize,
    pub k_prime: usize,
    /// Upper bound on the rows per block, when the column count forces one.
    pub max_block_size: Option<usize>,
    /// Excluded block counts `m` (divisors of `r`) with the reason.
    pub excluded: Vec<(usize, String)>,
    pub verdict: FeasibilityVerdict,
}

impl FeasibilityReport {
    pub fn is_excluded(&self, m: usize) -> bool {
        self.excluded.iter().any(|(x, _)| *x == m)
    }

    /// Smallest admissible number of blocks.
    pub fn min_blocks(&self) -> Option<usize> {
        match self.verdict {
            FeasibilityVerdict::FeasibleUnknown => Some(1),
            FeasibilityVerdict::Infeasible => None,
            FeasibilityVerdict::MinBlocks(m) => Some(m),
        }
    }
}

/// Why a partition of an `OA(r, N, d, k)` into `m` blocks with minimal
/// distance `≥ k + 1 ≥ N − k'` cannot exist, if one of the tests fires.
pub fn block_count_exclusion(
    r: usize,
    n: usize,
    d: usize,
    k: usize,
    k_prime: usize,
    m: usize,
    facts: &ExistenceFacts,
) -> Option<String> {
    if m == 0 || !r.is_multiple_of(m) {
        return Some(format!("{m} does not divide {r}"));
    }
    let s = r / m;
    if k + 1 >= n && s > d {
        return Some(format!(
            "blocks of {s} rows exceed {d}, the most rows at pairwise distance N"
        ));
    }
    if n > k_prime * choose2(d + 1) as usize && s > d {
        return Some(format!(
            "blocks of {s} rows exceed the bound {d} forced by N > k'·C(d+1,2)"
        ));
    }
    let lhs = k_prime as u128 * choose2(s);
    let rhs_num = r as u128 * n as u128 * (s as i128 - d as i128).max(0) as u128;
    let rhs_den = 2 * m as u128 * d as u128;
    if lhs * rhs_den < rhs_num {
        return Some(format!("coincidence count k'·C({s},2) = {lhs} is below rN(s−d)/(2md)"));
    }
    if let Some(req) = case_a_block_test(s, n, d, k) {
        if let Some(f) = facts.known_nonexistent(&req) {
            return Some(format!(
                "each block would be an {req}, which does not exist ({})",
                f.source
            ));
        }
    }
    None
}

/// Lower bounds on the number of blocks `m` in an orthogonal partition of an
/// `OA(r, N, d, k)` whose blocks have minimal distance `≥ k + 1 ≥ N − k'`.
pub fn feasibility_bound(
    r: usize,
    n: usize,
    d: usize,
    k: usize,
    k_prime: usize,
    facts: &ExistenceFacts,
) -> Result<FeasibilityReport> {
    if k_prime == 0 {
        return Err(Error::invalid("k' must be at least 1"));
    }
    if k + 1 + k_prime < n {
        return Err(Error::invalid(format!(
            "k' = {k_prime} does not satisfy k + 1 ≥ N − k' for N={n}, k={k}"
        )));
    }
    if r == 0 || d < 2 {
        return Err(Error::invalid("need r ≥ 1 and d ≥ 2"));
    }
    let max_block_size = (n > k_prime * choose2(d + 1) as usize).then_some(d);
    let divisors: Vec<usize> = (1..=r).filter(|m| r.is_multiple_of(*m)).collect();
    let mut excluded = Vec::new();
    let mut smallest_open = None;
    for &m in &divisors {
        match block_count_exclusion(r, n, d, k, k_prime, m, facts) {
            Some(reason) => excluded.push((m, reason)),
            None => {
                smallest_open.get_or_insert(m);
            }
        }
    }
    let verdict = match smallest_open {
        None => FeasibilityVerdict::Infeasible,
        Some(1) => FeasibilityVerdict::FeasibleUnknown,
        Some(m) => FeasibilityVerdict::MinBlocks(m),
    };
    Ok(FeasibilityReport {
        runs: r,
        factors: n,
        levels: d,
        k,
        k_prime,
        max_block_size,
        excluded,
        verdict,
    })
}

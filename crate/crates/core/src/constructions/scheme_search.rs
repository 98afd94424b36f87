use itertools::Itertools;

use super::{DifferenceScheme, Provenance};
use crate::algebra::SymbolGroup;
use crate::error::{Error, Result};
use crate::oa::SymbolArray;
use crate::search::{BudgetMeter, SearchBudget, SearchOutcome, SearchResult};

// Translating a whole row keeps every tuple in its coset, and translating a
// column permutes the cosets of each projection. So any scheme whose rows are
// pairwise non-translates can be brought to: first column zero, rows
// distinct and sorted, hence first row zero. Only those arrays are searched.
struct SchemeSearch<'a> {
    d: usize,
    k: usize,
    rows_needed: usize,
    lambda: u16,
    group: &'a SymbolGroup,
    candidates: Vec<Vec<u8>>,
    // coset[c][s]: coset index of candidate c in column subset s.
    coset: Vec<Vec<u32>>,
    cells: usize,
    counts: Vec<u16>,
    chosen: Vec<usize>,
    meter: BudgetMeter,
}

impl SchemeSearch<'_> {
    fn place(&mut self, c: usize) -> bool {
        let mut ok = true;
        for (s, &cell) in self.coset[c].iter().enumerate() {
            let slot = &mut self.counts[s * self.cells + cell as usize];
            *slot += 1;
            ok &= *slot <= self.lambda;
        }
        ok
    }

    fn unplace(&mut self, c: usize) {
        for (s, &cell) in self.coset[c].iter().enumerate() {
            self.counts[s * self.cells + cell as usize] -= 1;
        }
    }

    fn run(&mut self, next: usize) -> bool {
        if self.chosen.len() == self.rows_needed {
            return true;
        }
        let remaining = self.rows_needed - self.chosen.len();
        for c in next..self.candidates.len() {
            if self.candidates.len() - c < remaining {
                break;
            }
            if !self.meter.tick() {
                return false;
            }
            if self.place(c) {
                self.chosen.push(c);
                if self.run(c + 1) {
                    return true;
                }
                self.chosen.pop();
            }
            self.unplace(c);
            if self.meter.exhausted() {
                return false;
            }
        }
        false
    }
}

/// Backtracking search for `D_k(r, N, d)` over normalized arrays (first row
/// and column zero, rows strictly increasing). Deterministic: the first
/// solution in lexicographic order is returned.
pub fn search_difference_scheme(
    r: usize,
    n: usize,
    d: usize,
    k: usize,
    budget: SearchBudget,
) -> Result<SearchResult<DifferenceScheme>> {
    if k == 0 || k > n || r == 0 {
        return Err(Error::invalid(format!("bad scheme parameters r={r} N={n} k={k}")));
    }
    let cells = d
        .checked_pow(k as u32 - 1)
        .ok_or_else(|| Error::ResourceGuard("coset table too large".into()))?;
    if !r.is_multiple_of(cells) {
        return Err(Error::invalid(format!("r = {r} is not divisible by d^(k-1) = {cells}")));
    }
    let space = d
        .checked_pow(n as u32 - 1)
        .filter(|&s| s <= 1 << 20)
        .ok_or_else(|| Error::ResourceGuard(format!("{d}^{} candidate rows", n - 1)))?;
    let group = SymbolGroup::new(d)?;
    let candidates: Vec<Vec<u8>> = (0..space)
        .map(|mut v| {
            let mut row = vec![0u8; n];
            for slot in row[1..].iter_mut().rev() {
                *slot = (v % d) as u8;
                v /= d;
            }
            row
        })
        .collect();
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let coset = candidates
        .iter()
        .map(|row| {
            subsets
                .iter()
                .map(|cols| {
                    let base = row[cols[0]];
                    cols[1..]
                        .iter()
                        .fold(0u32, |acc, &c| acc * d as u32 + group.sub(row[c], base) as u32)
                })
                .collect()
        })
        .collect();
    let lambda = u16::try_from(r / cells).map_err(|_| Error::ResourceGuard("λ too large".into()))?;
    let mut s = SchemeSearch {
        d,
        k,
        rows_needed: r,
        lambda,
        group: &group,
        candidates,
        coset,
        cells,
        counts: vec![0; subsets.len() * cells],
        chosen: Vec::with_capacity(r),
        meter: budget.start(),
    };
    let first_ok = r <= s.candidates.len() && s.place(0);
    let found = if first_ok {
        s.chosen.push(0);
        s.run(1)
    } else {
        false
    };
    let nodes = s.meter.nodes();
    let outcome = if found {
        let rows = s.chosen.iter().map(|&c| s.candidates[c].clone()).collect();
        let array = SymbolArray::new(s.d, n, rows)?;
        debug_assert_eq!(s.group.order(), s.d);
        SearchOutcome::Found(DifferenceScheme::new(array, s.k, Provenance::Searched)?)
    } else if s.meter.exhausted() {
        SearchOutcome::BudgetExhausted
    } else {
        SearchOutcome::ProvenNonexistent
    };
    Ok(SearchResult { outcome, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_small_binary_scheme() {
        let res = search_difference_scheme(4, 4, 2, 3, SearchBudget::UNLIMITED).unwrap();
        let ds = res.outcome.found().unwrap();
        assert_eq!(ds.array().rows(), 4);
        assert_eq!(ds.array().row(0), &[0, 0, 0, 0]);
    }

    #[test]
    fn deterministic() {
        let a = search_difference_scheme(9, 4, 3, 3, SearchBudget::UNLIMITED).unwrap();
        let b = search_difference_scheme(9, 4, 3, 3, SearchBudget::UNLIMITED).unwrap();
        assert_eq!(a, b);
        assert!(a.outcome.is_found());
    }

    #[test]
    fn proves_tiny_instances_impossible() {
        let res = search_difference_scheme(2, 3, 2, 2, SearchBudget::UNLIMITED).unwrap();
        assert_eq!(res.outcome, SearchOutcome::ProvenNonexistent);
        let res = search_difference_scheme(8, 5, 2, 4, SearchBudget::UNLIMITED).unwrap();
        assert_eq!(res.outcome, SearchOutcome::ProvenNonexistent);
    }

    #[test]
    fn two_rows_two_columns_exist() {
        let res = search_difference_scheme(2, 2, 2, 2, SearchBudget::UNLIMITED).unwrap();
        assert!(res.outcome.is_found());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let res = search_difference_scheme(16, 6, 4, 3, SearchBudget::nodes(5)).unwrap();
        assert_eq!(res.outcome, SearchOutcome::BudgetExhausted);
    }

    #[test]
    fn indivisible_row_count_rejected() {
        assert!(search_difference_scheme(5, 4, 2, 3, SearchBudget::UNLIMITED).is_err());
    }
}

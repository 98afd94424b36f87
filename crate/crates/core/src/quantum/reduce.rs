use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use super::state::{basis_capacity, unpack, MixedState};
use crate::error::{Error, Result};
use crate::scalar::{complex_approx_eq, complex_is_zero, Scalar};
use crate::stabilizer::{DenseOperator, DENSE_QUBIT_LIMIT};

/// Upper bound on the reduced dimension `d^|S|` a reduction may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionLimits {
    pub max_reduced_dim: u64,
}

impl Default for ReductionLimits {
    fn default() -> Self {
        ReductionLimits {
            max_reduced_dim: 1 << 13,
        }
    }
}

impl ReductionLimits {
    pub fn with_max_dim(max_reduced_dim: u64) -> Self {
        ReductionLimits { max_reduced_dim }
    }

    fn check(&self, d: usize, t: usize) -> Result<u64> {
        let dim = basis_capacity(d, t)?;
        if dim > self.max_reduced_dim {
            return Err(Error::ResourceGuard(format!(
                "reduced dimension {d}^{t} = {dim} exceeds {}",
                self.max_reduced_dim
            )));
        }
        Ok(dim)
    }
}

/// Reduced density matrix on a subset of parties, stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity<S> {
    d: usize,
    subset: Vec<usize>,
    dim: u64,
    entries: BTreeMap<(u64, u64), Complex<S>>,
}

impl<S: Scalar> ReducedDensity<S> {
    fn from_accumulator(d: usize, subset: Vec<usize>, dim: u64, acc: HashMap<(u64, u64), Complex<S>>) -> Self {
        let entries = acc.into_iter().filter(|(_, v)| !complex_is_zero(v)).collect();
        ReducedDensity {
            d,
            subset,
            dim,
            entries,
        }
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn entry(&self, row: u64, col: u64) -> Complex<S> {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Complex::zero)
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(u64, u64), &Complex<S>)> {
        self.entries.iter()
    }

    pub fn trace(&self) -> Complex<S> {
        self.entries
            .iter()
            .filter(|((r, c), _)| r == c)
            .fold(Complex::zero(), |acc, (_, v)| acc + v.clone())
    }

    pub fn is_hermitian(&self) -> bool {
        self.entries
            .iter()
            .all(|(&(r, c), v)| complex_approx_eq(&self.entry(c, r), &v.conj()))
    }

    /// First entry differing from `I / d^|S|`, or `None` if maximally mixed.
    pub fn deviation_from_maximally_mixed(&self) -> Option<(u64, u64, Complex<S>)> {
        let target = Complex::new(S::from_ratio(1, self.dim as i64), S::zero());
        for (&(r, c), v) in &self.entries {
            if r != c || !complex_approx_eq(v, &target) {
                return Some((r, c, v.clone()));
            }
        }
        if self.entries.len() as u64 != self.dim {
            let missing = (0..self.dim).find(|i| !self.entries.contains_key(&(*i, *i)))?;
            return Some((missing, missing, Complex::zero()));
        }
        None
    }

    pub fn is_maximally_mixed(&self) -> bool {
        self.deviation_from_maximally_mixed().is_none()
    }

    pub fn to_dense(&self) -> Result<DenseOperator<S>> {
        let t = self.subset.len();
        let mut op = DenseOperator::zeros(self.d, t);
        if op.dim() as u64 != self.dim {
            return Err(Error::Dimension("reduced operator size".into()));
        }
        for (&(r, c), v) in &self.entries {
            *op.entry_mut(r as usize, c as usize) = v.clone();
        }
        Ok(op)
    }
}

fn validate_subset(n: usize, subset: &[usize]) -> Result<Vec<usize>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != subset.len() || s.iter().any(|&p| p >= n) {
        return Err(Error::invalid(format!("bad party subset {subset:?} for N={n}")));
    }
    Ok(s)
}

/// Exact partial trace of a uniform mixture onto `subset`.
///
/// Entry `(u, v)` collects `a_x conj(a_y) / ‖a‖²` over term pairs whose
/// symbols outside `subset` agree, weighted by `1/m`.
pub fn reduced_density<S: Scalar>(
    mix: &MixedState<S>,
    subset: &[usize],
    limits: ReductionLimits,
) -> Result<ReducedDensity<S>> {
    let (d, n) = (mix.local_dim(), mix.parties());
    let subset = validate_subset(n, subset)?;
    let dim = limits.check(d, subset.len())?;
    let mut inside = vec![false; n];
    for &p in &subset {
        inside[p] = true;
    }
    let weight = S::from_ratio(1, mix.len() as i64);
    let mut acc: HashMap<(u64, u64), Complex<S>> = HashMap::new();
    let mut digits = vec![0u8; n];
    let mut keyed: Vec<(u64, u64, &Complex<S>)> = Vec::new();
    for c in mix.components() {
        keyed.clear();
        for (x, a) in c.terms() {
            unpack(d, n, *x, &mut digits);
            let (mut sub, mut rest) = (0u64, 0u64);
            for (p, &s) in digits.iter().enumerate() {
                if inside[p] {
                    sub = sub * d as u64 + s as u64;
                } else {
                    rest = rest * d as u64 + s as u64;
                }
            }
            keyed.push((rest, sub, a));
        }
        keyed.sort_by_key(|&(rest, sub, _)| (rest, sub));
        let w = weight.clone() / c.norm_sq().clone();
        for group in keyed.chunk_by(|a, b| a.0 == b.0) {
            for (_, u, a) in group {
                for (_, v, b) in group {
                    let val = (*a).clone() * b.conj() * w.clone();
                    let cell = acc.entry((*u, *v)).or_insert_with(Complex::zero);
                    *cell = cell.clone() + val;
                }
            }
        }
    }
    Ok(ReducedDensity::from_accumulator(d, subset, dim, acc))
}

/// Exact partial trace of a dense operator onto `subset`.
pub fn reduced_density_dense<S: Scalar>(rho: &DenseOperator<S>, subset: &[usize]) -> Result<ReducedDensity<S>> {
    let (d, n) = (rho.local_dim(), rho.qudits());
    if d.pow(n as u32) > 1 << DENSE_QUBIT_LIMIT {
        return Err(Error::ResourceGuard("dense operator too large".into()));
    }
    let subset = validate_subset(n, subset)?;
    let rest: Vec<usize> = (0..n).filter(|p| !subset.contains(p)).collect();
    let t = subset.len();
    let dim = (d as u64).pow(t as u32);
    let rest_dim = (d as u64).pow(rest.len() as u32);
    let compose = |sub: u64, env: u64| -> usize {
        let mut sd = vec![0u8; t];
        let mut ed = vec![0u8; rest.len()];
        unpack(d, t, sub, &mut sd);
        unpack(d, rest.len(), env, &mut ed);
        let mut full = vec![0u8; n];
        for (k, &p) in subset.iter().enumerate() {
            full[p] = sd[k];
        }
        for (k, &p) in rest.iter().enumerate() {
            full[p] = ed[k];
        }
        full.iter().fold(0usize, |acc, &s| acc * d + s as usize)
    };
    let index: Vec<Vec<usize>> = (0..dim)
        .map(|u| (0..rest_dim).map(|e| compose(u, e)).collect())
        .collect();
    let mut acc = HashMap::new();
    for u in 0..dim {
        for v in 0..dim {
            let mut sum = Complex::zero();
            for (&a, &b) in index[u as usize].iter().zip(&index[v as usize]) {
                sum = sum + rho.entry(a, b).clone();
            }
            if !complex_is_zero(&sum) {
                acc.insert((u, v), sum);
            }
        }
    }
    Ok(ReducedDensity::from_accumulator(d, subset, dim, acc))
}

/// A subset whose reduction is not maximally mixed, with the first bad entry.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformityWitness<S> {
    pub subset: Vec<usize>,
    pub row: u64,
    pub col: u64,
    pub value: Complex<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport<S> {
    pub k: usize,
    pub subsets_checked: usize,
    pub witness: Option<UniformityWitness<S>>,
}

impl<S> UniformityReport<S> {
    pub fn is_uniform(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks all `C(N, k)` reductions against `I / d^k`.
///
/// Subsets are processed in parallel; the witness reported is always the
/// lexicographically first failing subset.
pub fn is_k_uniform<S: Scalar>(mix: &MixedState<S>, k: usize, limits: ReductionLimits) -> Result<UniformityReport<S>> {
    let n = mix.parties();
    if k >= n {
        return Err(Error::invalid(format!("k={k} must be below N={n}")));
    }
    limits.check(mix.local_dim(), k)?;
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let witness = subsets
        .par_iter()
        .map(|s| -> Result<Option<UniformityWitness<S>>> {
            let red = reduced_density(mix, s, limits)?;
            Ok(red
                .deviation_from_maximally_mixed()
                .map(|(row, col, value)| UniformityWitness {
                    subset: s.clone(),
                    row,
                    col,
                    value,
                }))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()?
        .flatten();
    Ok(UniformityReport {
        k,
        subsets_checked: subsets.len(),
        witness,
    })
}

/// Largest `k < N` with every k-party reduction maximally mixed (0 if none).
pub fn max_uniformity<S: Scalar>(mix: &MixedState<S>, limits: ReductionLimits) -> Result<usize> {
    max_uniformity_from(mix, 1, limits)
}

/// Same as [`max_uniformity`], starting the scan at `hint`.
///
/// Uniformity is monotone (tracing out a party of `I/d^k` gives
/// `I/d^(k-1)`), so the scan moves up from a passing hint or down from a
/// failing one.
pub fn max_uniformity_from<S: Scalar>(mix: &MixedState<S>, hint: usize, limits: ReductionLimits) -> Result<usize> {
    let n = mix.parties();
    if n < 2 {
        return Ok(0);
    }
    let mut k = hint.clamp(1, n - 1);
    if is_k_uniform(mix, k, limits)?.is_uniform() {
        while k + 1 < n && is_k_uniform(mix, k + 1, limits)?.is_uniform() {
            k += 1;
        }
        Ok(k)
    } else {
        while k > 1 {
            k -= 1;
            if is_k_uniform(mix, k, limits)?.is_uniform() {
                return Ok(k);
            }
        }
        Ok(0)
    }
}

use std::fmt;

use itertools::Itertools;

use crate::algebra::{GaloisField, SymbolGroup};
use crate::error::{Error, Result};
use crate::oa::{
    kronecker_sum_expand, min_distance_at_least, verify_strength, OrthogonalArray, OrthogonalPartition, SymbolArray,
};

/// Where a difference scheme came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Copied from a printed matrix.
    Printed,
    Fixture(String),
    Searched,
    Generic(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Printed => f.write_str("printed"),
            Provenance::Fixture(s) => write!(f, "fixture:{s}"),
            Provenance::Searched => f.write_str("searched"),
            Provenance::Generic(s) => write!(f, "generic:{s}"),
        }
    }
}

/// Every `k`-column projection meets each coset of the diagonal subgroup
/// `{(x,…,x)}` of `G^k` exactly `r / d^(k-1)` times, where `G` is the symbol
/// group. The coset of a tuple `t` is indexed by `t - t_1·(1,…,1)`.
pub fn verify_difference_scheme(a: &SymbolArray, k: usize, group: &SymbolGroup) -> bool {
    if group.order() != a.levels() || k == 0 || k > a.cols() {
        return false;
    }
    let (r, d) = (a.rows(), a.levels());
    let Some(cells) = d.checked_pow(k as u32 - 1) else {
        return false;
    };
    if r % cells != 0 {
        return false;
    }
    let lambda = (r / cells) as u32;
    let mut hist = vec![0u32; cells];
    (0..a.cols()).combinations(k).all(|cols| {
        hist.iter_mut().for_each(|h| *h = 0);
        for row in a.iter_rows() {
            let base = row[cols[0]];
            let idx = cols[1..]
                .iter()
                .fold(0usize, |acc, &c| acc * d + group.sub(row[c], base) as usize);
            hist[idx] += 1;
        }
        hist.iter().all(|&h| h == lambda)
    })
}

/// [`verify_difference_scheme`] over the default symbol group for `d`.
pub fn is_difference_scheme(a: &SymbolArray, k: usize) -> bool {
    SymbolGroup::new(a.levels()).is_ok_and(|g| verify_difference_scheme(a, k, &g))
}

/// A verified difference scheme `D_k(r, N, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceScheme {
    array: SymbolArray,
    strength: usize,
    provenance: Provenance,
}

impl DifferenceScheme {
    pub fn new(array: SymbolArray, strength: usize, provenance: Provenance) -> Result<Self> {
        if !is_difference_scheme(&array, strength) {
            return Err(Error::Verification(format!(
                "{}x{} array over {} symbols is not a difference scheme of strength {strength} ({provenance})",
                array.rows(),
                array.cols(),
                array.levels()
            )));
        }
        Ok(DifferenceScheme {
            array,
            strength,
            provenance,
        })
    }

    pub fn array(&self) -> &SymbolArray {
        &self.array
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// Partition of `D ⊕ (d)` into the blocks `a_i ⊕ (d)`, one per scheme row.
///
/// The parent has strength `k` and every block has minimal distance `N`;
/// both are checked here.
pub fn scheme_to_mixed_state_blocks(ds: &DifferenceScheme) -> Result<OrthogonalPartition> {
    let a = ds.array();
    let (d, n, k) = (a.levels(), a.cols(), ds.strength());
    if k >= n {
        return Err(Error::invalid(format!("scheme strength {k} must be below N = {n}")));
    }
    let group = SymbolGroup::new(d)?;
    let parent = kronecker_sum_expand(a, &group)?;
    if !verify_strength(&parent, k) {
        return Err(Error::Verification(format!("expanded scheme lacks strength {k}")));
    }
    let parent = OrthogonalArray::new(parent, k)?;
    let blocks: Vec<Vec<usize>> = (0..a.rows()).map(|i| (i * d..(i + 1) * d).collect()).collect();
    let p = OrthogonalPartition::new(parent, blocks, 1)?;
    for i in 0..p.len() {
        if !min_distance_at_least(&p.block(i), n) {
            return Err(Error::Verification(format!("block {i} has two rows closer than {n}")));
        }
    }
    Ok(p)
}

fn odd_prime_power_field(q: usize) -> Result<GaloisField> {
    if q.is_multiple_of(2) {
        return Err(Error::invalid(format!("{q} is not an odd prime power")));
    }
    GaloisField::new(q)
}

/// Rows `(a, b) ∈ GF(q)²`, columns `c ∈ GF(q) ∪ {∞}`, entry `a·c + b·c²`
/// (and `b` at `∞`). This candidate is not a strength-3 scheme in general;
/// it is kept so the failure can be demonstrated.
pub fn quadratic_evaluation_candidate(q: usize) -> Result<SymbolArray> {
    let f = odd_prime_power_field(q)?;
    let mut rows = Vec::with_capacity(q * q);
    for a in 0..q as u8 {
        for b in 0..q as u8 {
            let mut row: Vec<u8> = (0..q as u8)
                .map(|c| f.add(f.mul(a, c), f.mul(b, f.mul(c, c))))
                .collect();
            row.push(b);
            rows.push(row);
        }
    }
    SymbolArray::new(q, q + 1, rows)
}

/// `D_3(q², q+1, q)` for an odd prime power `q`.
///
/// Columns are the `q + 1` points `(x, y)` of the conic `x² − n·y² = 1`
/// (`n` a non-square), rows are `(a, b) ∈ GF(q)²` and the entry is
/// `a·x + b·y`. No three conic points are collinear, which makes every
/// three-column difference map bijective.
pub fn ellipse_scheme(q: usize) -> Result<DifferenceScheme> {
    let f = odd_prime_power_field(q)?;
    let non_square = (1..q as u8)
        .find(|&n| !f.is_square(n))
        .ok_or_else(|| Error::invalid("field has no non-square"))?;
    let points: Vec<(u8, u8)> = (0..q as u8)
        .cartesian_product(0..q as u8)
        .filter(|&(x, y)| f.sub(f.mul(x, x), f.mul(non_square, f.mul(y, y))) == 1)
        .collect();
    if points.len() != q + 1 {
        return Err(Error::Verification(format!(
            "conic has {} points, expected {}",
            points.len(),
            q + 1
        )));
    }
    let rows = (0..q as u8)
        .cartesian_product(0..q as u8)
        .map(|(a, b)| points.iter().map(|&(x, y)| f.add(f.mul(a, x), f.mul(b, y))).collect())
        .collect();
    let array = SymbolArray::new(q, q + 1, rows)?;
    DifferenceScheme::new(array, 3, Provenance::Generic(format!("conic over GF({q})")))
}

/// `D_k(d^(k-1), k+1, d)` from the parity check `h·x = 0` with every `h_i`
/// nonzero and `Σ h_i = 0`. Rows are the codewords with `x_0 = 0`.
///
/// Over GF(2) the check vector is all ones, so `k` must be odd.
pub fn parity_scheme(d: usize, k: usize) -> Result<DifferenceScheme> {
    if k < 2 {
        return Err(Error::invalid("parity scheme needs k ≥ 2"));
    }
    let f = GaloisField::new(d)?;
    let rows_needed = d
        .checked_pow(k as u32 - 1)
        .filter(|&r| r <= 1 << 20)
        .ok_or_else(|| Error::ResourceGuard(format!("{d}^{} rows", k - 1)))?;
    // h = (1, …, 1, u, w) with u, w nonzero and u + w = −(k − 1).
    let ones = (0..k - 1).fold(0u8, |acc, _| f.add(acc, 1));
    let target = f.neg(ones);
    let (u, w) = (1..d as u8)
        .map(|u| (u, f.sub(target, u)))
        .find(|&(_, w)| w != 0)
        .ok_or_else(|| Error::invalid(format!("no parity check over GF({d}) for k = {k}")))?;
    let mut h = vec![1u8; k + 1];
    h[k - 1] = u;
    h[k] = w;
    let w_inv = f.inv(w);
    let mut rows = Vec::with_capacity(rows_needed);
    for idx in 0..rows_needed {
        let mut x = vec![0u8; k + 1];
        let mut v = idx;
        for slot in x[1..k].iter_mut().rev() {
            *slot = (v % d) as u8;
            v /= d;
        }
        let partial = (0..k).fold(0u8, |acc, i| f.add(acc, f.mul(h[i], x[i])));
        x[k] = f.mul(f.neg(partial), w_inv);
        rows.push(x);
    }
    let array = SymbolArray::new(d, k + 1, rows)?;
    DifferenceScheme::new(array, k, Provenance::Generic(format!("parity check over GF({d})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oa::{max_strength, min_hamming_distance, MinDistance};

    #[test]
    fn all_zero_array_fails() {
        let z = SymbolArray::new(3, 4, vec![vec![0; 4]; 3]).unwrap();
        assert!(!is_difference_scheme(&z, 2));
        assert!(is_difference_scheme(&z.select_rows(&[0]), 1));
    }

    #[test]
    fn conic_schemes_verify() {
        for q in [3, 5, 7, 9] {
            let ds = ellipse_scheme(q).unwrap();
            assert_eq!(ds.array().rows(), q * q);
            assert_eq!(ds.array().cols(), q + 1);
        }
        assert!(ellipse_scheme(2).is_err());
        assert!(ellipse_scheme(4).is_err());
    }

    #[test]
    fn quadratic_candidate_is_rejected_by_verifier() {
        // Columns c1, c2 with c1·c2 = −1 make the difference map singular.
        for q in [3, 5, 7] {
            let a = quadratic_evaluation_candidate(q).unwrap();
            assert!(!is_difference_scheme(&a, 3), "q = {q}");
            assert!(DifferenceScheme::new(a, 3, Provenance::Generic("quadratic".into())).is_err());
        }
    }

    #[test]
    fn parity_schemes_verify() {
        for (d, k) in [(2, 3), (2, 5), (3, 2), (3, 3), (3, 4), (4, 3), (4, 4), (5, 3)] {
            let ds = parity_scheme(d, k).unwrap();
            assert_eq!(ds.array().rows(), d.pow(k as u32 - 1));
        }
        assert!(parity_scheme(2, 4).is_err());
    }

    #[test]
    fn scheme_blocks_have_full_distance() {
        let ds = parity_scheme(3, 3).unwrap();
        let p = scheme_to_mixed_state_blocks(&ds).unwrap();
        assert_eq!(p.len(), 9);
        assert!(max_strength(p.parent()) >= 3);
        for i in 0..p.len() {
            assert_eq!(min_hamming_distance(&p.block(i)), MinDistance::Finite(4));
        }
    }

    #[test]
    fn single_row_scheme_gives_one_block() {
        let a = SymbolArray::new(2, 3, vec![vec![0, 0, 0]]).unwrap();
        let ds = DifferenceScheme::new(a, 1, Provenance::Generic("trivial".into())).unwrap();
        let p = scheme_to_mixed_state_blocks(&ds).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.block_size(), 2);
    }
}

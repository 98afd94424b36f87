use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use super::{verify_strength, SymbolArray};
use crate::error::{Error, Result};

/// Minimal Hamming distance between distinct rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MinDistance {
    Finite(usize),
    /// Fewer than two rows.
    Infinite,
}

impl MinDistance {
    pub fn at_least(self, x: usize) -> bool {
        match self {
            MinDistance::Finite(v) => v >= x,
            MinDistance::Infinite => true,
        }
    }
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDistance::Finite(v) => write!(f, "{v}"),
            MinDistance::Infinite => f.write_str("inf"),
        }
    }
}

#[inline]
pub fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

// Rows below this count are compared on one thread.
const PARALLEL_ROWS: usize = 512;

pub fn min_hamming_distance(a: &SymbolArray) -> MinDistance {
    let r = a.rows();
    if r < 2 {
        return MinDistance::Infinite;
    }
    let per_row = |i: usize| {
        let ri = a.row(i);
        (i + 1..r).map(|j| hamming(ri, a.row(j))).min().unwrap_or(usize::MAX)
    };
    let best = if r >= PARALLEL_ROWS {
        (0..r - 1).into_par_iter().map(per_row).min()
    } else {
        (0..r - 1).map(per_row).min()
    };
    MinDistance::Finite(best.unwrap_or(usize::MAX))
}

/// Same as `min_hamming_distance(a) >= x`, stopping at the first close pair.
pub fn min_distance_at_least(a: &SymbolArray, x: usize) -> bool {
    let r = a.rows();
    let close = |i: usize| {
        let ri = a.row(i);
        (i + 1..r).any(|j| hamming(ri, a.row(j)) < x)
    };
    if r >= PARALLEL_ROWS {
        !(0..r.saturating_sub(1)).into_par_iter().any(close)
    } else {
        !(0..r.saturating_sub(1)).any(close)
    }
}

/// Deleting any `k` columns leaves the rows pairwise distinct.
pub fn is_irredundant_by_deletion(a: &SymbolArray, k: usize) -> bool {
    let n = a.cols();
    if k >= n {
        return a.rows() < 2;
    }
    (0..n).combinations(k).all(|gone| {
        let kept: Vec<usize> = (0..n).filter(|c| !gone.contains(c)).collect();
        let mut seen = HashSet::with_capacity(a.rows());
        a.iter_rows()
            .all(|row| seen.insert(kept.iter().map(|&c| row[c]).collect::<Vec<u8>>()))
    })
}

/// Irredundancy of a strength-`k` array, decided through the minimal
/// distance and cross-checked against the column-deletion definition.
///
/// Fails with [`Error::Invalid`] when the array does not have strength `k`.
pub fn is_irredundant(a: &SymbolArray, k: usize) -> Result<bool> {
    if !verify_strength(a, k) {
        return Err(Error::invalid(format!("array does not have strength {k}")));
    }
    let by_distance = min_distance_at_least(a, k + 1);
    let by_deletion = is_irredundant_by_deletion(a, k);
    if by_distance != by_deletion {
        return Err(Error::Verification(format!(
            "irredundancy routes disagree: distance {by_distance}, deletion {by_deletion}"
        )));
    }
    Ok(by_distance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn distances() {
        let a = SymbolArray::from_digit_rows(2, &["0000", "0111", "1011"]).unwrap();
        assert_eq!(min_hamming_distance(&a), MinDistance::Finite(2));
        assert!(min_distance_at_least(&a, 2));
        assert!(!min_distance_at_least(&a, 3));
        let one = SymbolArray::from_digit_rows(2, &["0101"]).unwrap();
        assert_eq!(min_hamming_distance(&one), MinDistance::Infinite);
        assert!(min_distance_at_least(&one, 99));
    }

    #[test]
    fn even_weight_code_is_not_irredundant_for_k4() {
        let rows: Vec<Vec<u8>> = (0..16u8)
            .map(|i| {
                let mut r: Vec<u8> = (0..4).map(|b| (i >> b) & 1).collect();
                r.push(r.iter().sum::<u8>() % 2);
                r
            })
            .collect();
        let a = SymbolArray::new(2, 5, rows).unwrap();
        assert!(!is_irredundant(&a, 4).unwrap());
        assert!(is_irredundant(&a, 1).unwrap());
        assert!(is_irredundant(&a, 5).is_err());
    }

    proptest! {
        #[test]
        fn routes_agree_for_distinct_rows(
            rows in proptest::collection::btree_set(proptest::collection::vec(0u8..3, 4), 2..20),
            k in 0usize..4,
        ) {
            let a = SymbolArray::new(3, 4, rows.into_iter().collect()).unwrap();
            prop_assert_eq!(min_distance_at_least(&a, k + 1), is_irredundant_by_deletion(&a, k));
            prop_assert_eq!(
                min_hamming_distance(&a).at_least(k + 1),
                min_distance_at_least(&a, k + 1)
            );
        }
    }
}

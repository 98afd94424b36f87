use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::algebra::SymbolGroup;
use crate::error::{Error, Result};

/// Row-major `r × N` array over the symbols `0..d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymbolArray {
    d: usize,
    n: usize,
    data: Vec<u8>,
}

impl fmt::Debug for SymbolArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymbolArray {}x{} over {} symbols", self.rows(), self.n, self.d)?;
        for r in self.iter_rows().take(32) {
            let s: String = r
                .iter()
                .map(|&x| char::from_digit(x as u32, 36).unwrap_or('?'))
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

impl SymbolArray {
    pub fn new(d: usize, n: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {n}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_flat(d, n, data)
    }

    pub fn from_flat(d: usize, n: usize, data: Vec<u8>) -> Result<Self> {
        if d == 0 || d > 64 {
            return Err(Error::invalid(format!("symbol count {d} out of range")));
        }
        if n == 0 {
            return Err(Error::invalid("array needs at least one column"));
        }
        if !data.len().is_multiple_of(n) {
            return Err(Error::Dimension("flat data is not a whole number of rows".into()));
        }
        if let Some(p) = data.iter().position(|&s| s as usize >= d) {
            return Err(Error::invalid(format!(
                "symbol {} at row {} column {} is not below d={d}",
                data[p],
                p / n,
                p % n
            )));
        }
        Ok(SymbolArray { d, n, data })
    }

    /// Parses rows written as digit strings, e.g. `["0121", "1030"]`.
    pub fn from_digit_rows(d: usize, rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| {
                        c.to_digit(36)
                            .map(|v| v as u8)
                            .ok_or_else(|| Error::invalid(format!("bad symbol {c:?}")))
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map(Vec::len).unwrap_or(0);
        Self::new(d, n, parsed)
    }

    /// All `d^n` tuples in lexicographic order.
    pub fn full_factorial(d: usize, n: usize) -> Result<Self> {
        let r = d
            .checked_pow(n as u32)
            .filter(|&r| r <= 1 << 24)
            .ok_or_else(|| Error::ResourceGuard(format!("full factorial {d}^{n} too large")))?;
        let mut data = vec![0u8; r * n];
        for i in 0..r {
            let mut v = i;
            for c in (0..n).rev() {
                data[i * n + c] = (v % d) as u8;
                v /= d;
            }
        }
        Self::from_flat(d, n, data)
    }

    #[inline]
    pub fn levels(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.data.len() / self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }

    pub fn iter_rows(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.data.chunks_exact(self.n)
    }

    pub fn as_flat(&self) -> &[u8] {
        &self.data
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.n);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        SymbolArray {
            d: self.d,
            n: self.n,
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Result<Self> {
        if cols.is_empty() || cols.iter().any(|&c| c >= self.n) {
            return Err(Error::invalid(format!("bad column selection {cols:?}")));
        }
        let mut data = Vec::with_capacity(self.rows() * cols.len());
        for r in self.iter_rows() {
            data.extend(cols.iter().map(|&c| r[c]));
        }
        Ok(SymbolArray {
            d: self.d,
            n: cols.len(),
            data,
        })
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::Dimension("stacked arrays differ in shape".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(SymbolArray {
            d: self.d,
            n: self.n,
            data,
        })
    }

    /// First pair of identical rows, if any.
    pub fn first_duplicate(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&[u8], usize> = HashMap::with_capacity(self.rows());
        for (i, r) in self.iter_rows().enumerate() {
            if let Some(&j) = seen.get(r) {
                return Some((j, i));
            }
            seen.insert(r, i);
        }
        None
    }

    pub fn sorted_rows(&self) -> Vec<Vec<u8>> {
        let mut v: Vec<Vec<u8>> = self.iter_rows().map(<[u8]>::to_vec).collect();
        v.sort();
        v
    }
}

/// An array with distinct rows and a declared strength.
///
/// The declared strength is a claim carried from the input; callers verify
/// it with [`crate::oa::verify_strength`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    array: SymbolArray,
    claimed_strength: usize,
}

impl OrthogonalArray {
    pub fn new(array: SymbolArray, claimed_strength: usize) -> Result<Self> {
        if let Some((first, second)) = array.first_duplicate() {
            return Err(Error::DuplicateRows { first, second });
        }
        if claimed_strength > array.cols() {
            return Err(Error::invalid(format!(
                "claimed strength {claimed_strength} exceeds {} columns",
                array.cols()
            )));
        }
        Ok(OrthogonalArray {
            array,
            claimed_strength,
        })
    }

    pub fn claimed_strength(&self) -> usize {
        self.claimed_strength
    }

    pub fn array(&self) -> &SymbolArray {
        &self.array
    }

    pub fn into_array(self) -> SymbolArray {
        self.array
    }

    pub fn with_claimed_strength(mut self, k: usize) -> Self {
        self.claimed_strength = k.min(self.array.cols());
        self
    }
}

impl Deref for OrthogonalArray {
    type Target = SymbolArray;

    fn deref(&self) -> &SymbolArray {
        &self.array
    }
}

/// `c ⊕ A`: adds the symbol `c` to every entry.
pub fn kronecker_sum_scalar(c: u8, a: &SymbolArray, group: &SymbolGroup) -> Result<SymbolArray> {
    if group.order() != a.levels() || c as usize >= a.levels() {
        return Err(Error::invalid("symbol or group does not match the array"));
    }
    let data = a.data.iter().map(|&x| group.add(x, c)).collect();
    SymbolArray::from_flat(a.d, a.n, data)
}

/// `D ⊕ (d)`: every row `a` becomes the `d` consecutive rows `a + j`,
/// `j = 0..d`.
pub fn kronecker_sum_expand(a: &SymbolArray, group: &SymbolGroup) -> Result<SymbolArray> {
    if group.order() != a.levels() {
        return Err(Error::invalid("group does not match the array"));
    }
    let mut data = Vec::with_capacity(a.data.len() * a.d);
    for r in a.iter_rows() {
        for j in 0..a.d as u8 {
            data.extend(r.iter().map(|&x| group.add(x, j)));
        }
    }
    SymbolArray::from_flat(a.d, a.n, data)
}

/// The `d × N` array whose row `i` is constant `i`: strength 1, distance `N`.
pub fn construct_strength1(n: usize, d: usize) -> Result<OrthogonalArray> {
    if n < 2 || d < 2 {
        return Err(Error::invalid("strength-1 construction needs N ≥ 2 and d ≥ 2"));
    }
    let rows = (0..d as u8).map(|i| vec![i; n]).collect();
    OrthogonalArray::new(SymbolArray::new(d, n, rows)?, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_reproduces_printed_rows() {
        let g = SymbolGroup::new(4).unwrap();
        let a2 = SymbolArray::from_digit_rows(4, &["0121"]).unwrap();
        let expanded = kronecker_sum_expand(&a2, &g).unwrap();
        assert_eq!(
            expanded,
            SymbolArray::from_digit_rows(4, &["0121", "1030", "2303", "3212"]).unwrap()
        );
    }

    #[test]
    fn scalar_shift_identities() {
        let g = SymbolGroup::new(4).unwrap();
        let a = SymbolArray::from_digit_rows(4, &["0123", "3312"]).unwrap();
        assert_eq!(kronecker_sum_scalar(0, &a, &g).unwrap(), a);
        let twice = kronecker_sum_scalar(2, &kronecker_sum_scalar(2, &a, &g).unwrap(), &g).unwrap();
        assert_eq!(twice, a);
    }

    #[test]
    fn binary_complement_shift() {
        let g = SymbolGroup::new(2).unwrap();
        let a = SymbolArray::from_digit_rows(2, &["0000000", "0001111"]).unwrap();
        assert_eq!(
            kronecker_sum_scalar(1, &a, &g).unwrap(),
            SymbolArray::from_digit_rows(2, &["1111111", "1110000"]).unwrap()
        );
    }

    #[test]
    fn zero_row_expands_to_constants() {
        let g = SymbolGroup::new(3).unwrap();
        let z = SymbolArray::new(3, 4, vec![vec![0; 4]]).unwrap();
        assert_eq!(
            kronecker_sum_expand(&z, &g).unwrap(),
            SymbolArray::from_digit_rows(3, &["0000", "1111", "2222"]).unwrap()
        );
    }

    #[test]
    fn duplicates_rejected() {
        let a = SymbolArray::from_digit_rows(2, &["01", "10", "01"]).unwrap();
        assert_eq!(a.first_duplicate(), Some((0, 2)));
        assert!(matches!(
            OrthogonalArray::new(a, 1),
            Err(Error::DuplicateRows { first: 0, second: 2 })
        ));
    }

    #[test]
    fn symbol_range_checked() {
        assert!(SymbolArray::from_digit_rows(2, &["012"]).is_err());
        assert!(SymbolArray::new(2, 3, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn strength_one_construction() {
        let a = construct_strength1(2, 2).unwrap();
        assert_eq!(a.array(), &SymbolArray::from_digit_rows(2, &["00", "11"]).unwrap());
        assert!(construct_strength1(1, 2).is_err());
        assert_eq!(construct_strength1(5, 3).unwrap().rows(), 3);
    }

    #[test]
    fn full_factorial_order() {
        let f = SymbolArray::full_factorial(3, 2).unwrap();
        assert_eq!(f.rows(), 9);
        assert_eq!(f.row(5), &[1, 2]);
    }
}

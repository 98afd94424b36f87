use std::collections::{BTreeMap, HashSet};

use crate::algebra::SymbolGroup;
use crate::error::{Error, Result};
use crate::oa::{
    max_strength, min_distance_at_least, verify_strength, OrthogonalArray, OrthogonalPartition, SymbolArray,
};

/// Removes one column. Strength becomes `min(k, N − 1)`.
pub fn drop_column(a: &OrthogonalArray, col: usize) -> Result<OrthogonalArray> {
    let n = a.cols();
    if n < 2 || col >= n {
        return Err(Error::invalid(format!("cannot drop column {col} of {n}")));
    }
    let keep: Vec<usize> = (0..n).filter(|&c| c != col).collect();
    let k = a.claimed_strength().min(n - 1);
    OrthogonalArray::new(a.select_cols(&keep)?, k)
}

/// Groups the rows of an `OA(r, N, d, k)` with minimal distance `≥ k + 1` by
/// their first `x` symbols and drops those columns.
///
/// The result has `d^x` blocks (ordered by prefix), each an
/// `OA(r/d^x, N−x, d, k−x)` whose rows keep their pairwise distances.
pub fn prefix_partition(a: &OrthogonalArray, x: usize, k: usize) -> Result<OrthogonalPartition> {
    let n = a.cols();
    if x == 0 || x > k || n <= x + k {
        return Err(Error::invalid(format!(
            "prefix length {x} needs 1 ≤ x ≤ k = {k} and N − x > k (N = {n})"
        )));
    }
    if !verify_strength(a, k) {
        return Err(Error::Verification(format!("array lacks strength {k}")));
    }
    if !min_distance_at_least(a, k + 1) {
        return Err(Error::Verification(format!("array has distance below {}", k + 1)));
    }
    let mut groups: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for (i, row) in a.iter_rows().enumerate() {
        groups.entry(&row[..x]).or_default().push(i);
    }
    let tail: Vec<usize> = (x..n).collect();
    let trimmed = OrthogonalArray::new(a.select_cols(&tail)?, k)?;
    let blocks: Vec<Vec<usize>> = groups.into_values().collect();
    let expected = a.levels().pow(x as u32);
    if blocks.len() != expected {
        return Err(Error::Verification(format!(
            "{} prefixes occur, expected {expected}",
            blocks.len()
        )));
    }
    let p = OrthogonalPartition::new(trimmed, blocks, k - x)?;
    if !p.verify() {
        return Err(Error::Verification(format!("prefix blocks lack strength {}", k - x)));
    }
    Ok(p)
}

/// Partition of the full factorial `G^N` into the cosets `v + S` of an
/// additively closed row set `S` containing zero.
///
/// The parent lists the cosets one after another, each in the row order of
/// `S`, so block `j` holds rows `j·|S| .. (j+1)·|S|`. Coset leaders are taken
/// in lexicographic order.
pub fn coset_partition(sub: &SymbolArray, group: &SymbolGroup) -> Result<OrthogonalPartition> {
    let (d, n) = (sub.levels(), sub.cols());
    if group.order() != d {
        return Err(Error::invalid("group order differs from symbol count"));
    }
    let members: HashSet<&[u8]> = sub.iter_rows().collect();
    if members.len() != sub.rows() {
        return Err(Error::invalid("subgroup rows are not distinct"));
    }
    if !members.contains(&vec![0u8; n][..]) {
        return Err(Error::invalid("subgroup does not contain the zero row"));
    }
    let mut sum = vec![0u8; n];
    for a in sub.iter_rows() {
        for b in sub.iter_rows() {
            sum.iter_mut()
                .zip(a.iter().zip(b))
                .for_each(|(s, (&x, &y))| *s = group.add(x, y));
            if !members.contains(&sum[..]) {
                return Err(Error::invalid("row set is not closed under addition"));
            }
        }
    }
    let ambient = SymbolArray::full_factorial(d, n)?;
    let mut covered: HashSet<Vec<u8>> = HashSet::with_capacity(ambient.rows());
    let mut data = Vec::with_capacity(ambient.rows() * n);
    for v in ambient.iter_rows() {
        if covered.contains(v) {
            continue;
        }
        for s in sub.iter_rows() {
            let row: Vec<u8> = v.iter().zip(s).map(|(&x, &y)| group.add(x, y)).collect();
            data.extend_from_slice(&row);
            covered.insert(row);
        }
    }
    let parent = OrthogonalArray::new(SymbolArray::from_flat(d, n, data)?, n)?;
    let size = sub.rows();
    let blocks = (0..parent.rows() / size)
        .map(|j| (j * size..(j + 1) * size).collect())
        .collect();
    let p = OrthogonalPartition::new(parent, blocks, max_strength(sub))?;
    if !p.verify() {
        return Err(Error::Verification("a coset lost the subgroup's strength".into()));
    }
    Ok(p)
}

/// Location of the rows `[A_j ⊗ 1, 1 ⊗ C_j]` inside a product array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuperBlock {
    pub offset: usize,
    pub left_rows: usize,
    pub right_rows: usize,
}

/// Output of [`product_construction`].
#[derive(Debug, Clone)]
pub struct ProductArray {
    pub array: OrthogonalArray,
    pub super_blocks: Vec<SuperBlock>,
}

/// Stacks `[A_j ⊗ 1_{|C_j|}, 1_{|A_j|} ⊗ C_j]` over `j`: every row of block
/// `A_j` is joined with every row of block `C_j`. Row `(i, c)` of super-block
/// `j` sits at `offset_j + i·|C_j| + c`. The claimed strength of the result
/// is its measured strength.
pub fn product_construction(a: &OrthogonalPartition, c: &OrthogonalPartition) -> Result<ProductArray> {
    if a.len() != c.len() {
        return Err(Error::invalid(format!(
            "block counts differ: {} and {}",
            a.len(),
            c.len()
        )));
    }
    let d = a.parent().levels();
    if c.parent().levels() != d {
        return Err(Error::invalid("the two arrays use different symbol counts"));
    }
    let n = a.parent().cols() + c.parent().cols();
    let mut data = Vec::new();
    let mut super_blocks = Vec::with_capacity(a.len());
    for (ab, cb) in a.blocks().iter().zip(c.blocks()) {
        super_blocks.push(SuperBlock {
            offset: data.len() / n,
            left_rows: ab.len(),
            right_rows: cb.len(),
        });
        for &i in ab {
            for &j in cb {
                data.extend_from_slice(a.parent().row(i));
                data.extend_from_slice(c.parent().row(j));
            }
        }
    }
    let array = SymbolArray::from_flat(d, n, data)?;
    let strength = max_strength(&array);
    Ok(ProductArray {
        array: OrthogonalArray::new(array, strength)?,
        super_blocks,
    })
}

/// Splits one super-block into `|C_j|` blocks of `|A_j|` rows.
///
/// `C_j` is read as consecutive bands of `|A_j|` rows. Block `(b, s)` pairs
/// row `i` of `A_j` with row `b·|A_j| + (i + s) mod |A_j|` of `C_j`, so each
/// block takes one band and a cyclic shift of it. Returned indices refer to
/// rows of the product array.
pub fn diagonal_repartition(sb: &SuperBlock) -> Result<Vec<Vec<usize>>> {
    let (a, c) = (sb.left_rows, sb.right_rows);
    if a == 0 || c % a != 0 {
        return Err(Error::Dimension(format!("{c} right rows do not form bands of {a}")));
    }
    let mut blocks = Vec::with_capacity(c);
    for band in 0..c / a {
        for shift in 0..a {
            blocks.push((0..a).map(|i| sb.offset + i * c + band * a + (i + shift) % a).collect());
        }
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oa::{construct_strength1, min_hamming_distance, verify_mixed_state_partition, MinDistance};

    #[test]
    fn drop_from_constant_rows() {
        let a = construct_strength1(5, 3).unwrap();
        let b = drop_column(&a, 2).unwrap();
        assert_eq!(min_hamming_distance(&b), MinDistance::Finite(4));
        assert_eq!(b.claimed_strength(), 1);
        assert!(drop_column(&construct_strength1(2, 2).unwrap().with_claimed_strength(1), 5).is_err());
    }

    #[test]
    fn drop_can_create_duplicates() {
        let a = OrthogonalArray::new(SymbolArray::from_digit_rows(2, &["00", "01"]).unwrap(), 0).unwrap();
        assert!(matches!(drop_column(&a, 1), Err(Error::DuplicateRows { .. })));
    }

    #[test]
    fn coset_partition_of_repetition_code() {
        let g = SymbolGroup::new(2).unwrap();
        let sub = SymbolArray::from_digit_rows(2, &["000", "111"]).unwrap();
        let p = coset_partition(&sub, &g).unwrap();
        assert_eq!(p.len(), 4);
        assert!(verify_mixed_state_partition(&p, 2).passed());
        let not_closed = SymbolArray::from_digit_rows(2, &["000", "110", "011"]).unwrap();
        assert!(coset_partition(&not_closed, &g).is_err());
        let no_zero = SymbolArray::from_digit_rows(2, &["111"]).unwrap();
        assert!(coset_partition(&no_zero, &g).is_err());
    }

    #[test]
    fn whole_space_is_one_coset() {
        let g = SymbolGroup::new(3).unwrap();
        let full = SymbolArray::full_factorial(3, 2).unwrap();
        let p = coset_partition(&full, &g).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn single_row_product_is_concatenation() {
        let l = OrthogonalArray::new(SymbolArray::from_digit_rows(2, &["01"]).unwrap(), 0).unwrap();
        let r = OrthogonalArray::new(SymbolArray::from_digit_rows(2, &["110"]).unwrap(), 0).unwrap();
        let prod = product_construction(&OrthogonalPartition::trivial(l), &OrthogonalPartition::trivial(r)).unwrap();
        assert_eq!(prod.array.row(0), &[0, 1, 1, 1, 0]);
        assert_eq!(
            prod.super_blocks,
            vec![SuperBlock {
                offset: 0,
                left_rows: 1,
                right_rows: 1
            }]
        );
    }

    #[test]
    fn diagonal_blocks_cover_super_block() {
        let sb = SuperBlock {
            offset: 10,
            left_rows: 3,
            right_rows: 6,
        };
        let blocks = diagonal_repartition(&sb).unwrap();
        assert_eq!(blocks.len(), 6);
        let mut all: Vec<usize> = blocks.concat();
        all.sort();
        assert_eq!(all, (10..28).collect::<Vec<_>>());
        assert_eq!(blocks[1], vec![10 + 1, 10 + 6 + 2, 10 + 12]);
        assert!(diagonal_repartition(&SuperBlock {
            offset: 0,
            left_rows: 4,
            right_rows: 6
        })
        .is_err());
    }

    #[test]
    fn prefix_partition_preconditions() {
        let a = construct_strength1(4, 3).unwrap();
        assert!(prefix_partition(&a, 1, 1).is_ok());
        assert!(prefix_partition(&a, 2, 1).is_err());
        assert!(prefix_partition(&a, 1, 3).is_err());
    }
}

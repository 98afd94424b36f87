//! Named end-to-end pipelines over the bundled fixtures.
//!
//! Each function returns a verified orthogonal partition; turning it into a
//! quantum mixture and checking uniformity is left to the caller so the
//! combinatorial and quantum verdicts stay independent.

use crate::algebra::SymbolGroup;
use crate::constructions::{
    coset_partition, diagonal_repartition, drop_column, prefix_partition, product_construction,
    scheme_to_mixed_state_blocks,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::oa::{kronecker_sum_scalar, OrthogonalArray, OrthogonalPartition};

/// `{A, 1 ⊕ A}` for the binary `OA(8,7,2,2)` fixture: two blocks whose union
/// has strength 3 (7 qubits, purity 1/2).
pub fn complement_pair() -> Result<OrthogonalPartition> {
    let a = fixtures::oa(fixtures::BINARY_8_7)?;
    let shifted = kronecker_sum_scalar(1, &a, &SymbolGroup::new(2)?)?;
    let r = a.rows();
    let parent = OrthogonalArray::new(a.stack(&shifted)?, 3)?;
    let p = OrthogonalPartition::new(parent, vec![(0..r).collect(), (r..2 * r).collect()], 2)?;
    check(&p, 3)?;
    Ok(p)
}

/// Every row of the even-weight `OA(16,5,2,4)` as its own block.
pub fn even_weight_singletons() -> Result<OrthogonalPartition> {
    Ok(OrthogonalPartition::singletons(fixtures::oa(fixtures::EVEN_WEIGHT)?))
}

/// The printed `D_3(16,6,4)` expanded to `D ⊕ (4)`, one block per scheme row
/// (6 ququarts, 16 blocks).
pub fn printed_scheme_blocks() -> Result<OrthogonalPartition> {
    scheme_to_mixed_state_blocks(&fixtures::scheme(fixtures::DS_16_6_4)?)
}

/// The same 16 blocks on the four inner columns only (4 ququarts).
pub fn printed_scheme_inner_blocks() -> Result<OrthogonalPartition> {
    let p = printed_scheme_blocks()?.restrict_columns(&[1, 2, 3, 4])?;
    check(&p, 3)?;
    Ok(p)
}

/// `OA(64,5,4,3)` split into the four translates `j ⊕ A`, where `A` is the
/// printed scheme without its zero column. Rows are stored block by block.
pub fn shift_partition() -> Result<OrthogonalPartition> {
    prefix_partition(printed_scheme_blocks()?.parent(), 1, 3)?.contiguous()
}

/// The ternary Golay `OA(3^5,11,3,4)` minus its last column, grouped by the
/// first `x` symbols: a `(10 − x)`-qutrit 4-uniform mixture of `3^x` blocks.
pub fn golay_prefix(x: usize) -> Result<OrthogonalPartition> {
    let g = fixtures::code(fixtures::GOLAY_11)?;
    let dropped = drop_column(&g, g.cols() - 1)?;
    prefix_partition(&dropped, x, 4)
}

/// The 9-ququart product `OA(4^7,9,4,6)` cut into 1024 blocks of 16 rows.
///
/// Left factor: cosets of the `[4,2,3]_4` code in `GF(4)^4`. Right factor:
/// cosets of the shift-partitioned `OA(64,5,4,3)` in `GF(4)^5`. Each of the
/// 16 super-blocks is re-cut along cyclic diagonals.
pub fn ququart_product() -> Result<OrthogonalPartition> {
    let g = SymbolGroup::new(4)?;
    let left = coset_partition(fixtures::code(fixtures::QUATERNARY_4_2)?.array(), &g)?;
    let right = coset_partition(shift_partition()?.parent(), &g)?;
    let prod = product_construction(&left, &right)?;
    let mut blocks = Vec::new();
    for sb in &prod.super_blocks {
        blocks.extend(diagonal_repartition(sb)?);
    }
    let p = OrthogonalPartition::new(prod.array, blocks, 1)?;
    check(&p, 6)?;
    Ok(p)
}

fn check(p: &OrthogonalPartition, k: usize) -> Result<()> {
    let report = crate::oa::verify_mixed_state_partition(p, k);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "partition fails the {k}-uniform conditions: {report:?}"
        )))
    }
}

//! Generators of orthogonal arrays, partitions and difference schemes.
//!
//! Every output is re-verified with the checks in [`crate::oa`] before it is
//! returned; a formula that produces an invalid object is an error, never a
//! silent success.

mod codes;
mod derived;
mod difference;
mod partition_search;
mod scheme_search;

pub use codes::{code_to_oa, CodeClaims, LinearCodeSpec};
pub use derived::{
    coset_partition, diagonal_repartition, drop_column, prefix_partition, product_construction, ProductArray,
    SuperBlock,
};
pub use difference::{
    ellipse_scheme, is_difference_scheme, parity_scheme, quadratic_evaluation_candidate, scheme_to_mixed_state_blocks,
    verify_difference_scheme, DifferenceScheme, Provenance,
};
pub use partition_search::{partition_search, PartitionSearch};
pub use scheme_search::search_difference_scheme;

use crate::error::Result;
use crate::oa::OrthogonalPartition;
use crate::quantum::{block_to_state, MixedState};
use crate::scalar::Scalar;

/// The uniform mixture of the block states of a partition.
pub fn mixture_from_partition<S: Scalar>(p: &OrthogonalPartition) -> Result<MixedState<S>> {
    let a = p.parent();
    let components = p
        .blocks()
        .iter()
        .map(|b| block_to_state(a.levels(), a.cols(), b.iter().map(|&i| a.row(i))))
        .collect::<Result<Vec<_>>>()?;
    MixedState::new(components)
}

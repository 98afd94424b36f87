//! Exact quantum-side verification: sparse states built from array rows,
//! partial traces, uniformity certificates and mixture purity.
//!
//! Nothing here consults the combinatorial theorems; the results are what
//! the arithmetic says, so they can be used to cross-check the array side.

mod reduce;
mod state;

pub use reduce::{
    is_k_uniform, max_uniformity, max_uniformity_from, reduced_density, reduced_density_dense, ReducedDensity,
    ReductionLimits, UniformityReport, UniformityWitness,
};
pub use state::{block_to_state, lower_purity, mixture_purity, LoweredMixture, MixedState, SparseState};

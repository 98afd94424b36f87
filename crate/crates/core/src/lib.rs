//! Construction and exact verification of k-uniform quantum states.
//!
//! Two construction routes are provided:
//!
//! * qubit states from GF(4) generator matrices, turned into stabilizer-style
//!   density operators `ρ = 2^-N ∏(I + G_i)` ([`stabilizer`]);
//! * qudit states from orthogonal arrays with orthogonal partitions,
//!   difference schemes, column deletion and product constructions
//!   ([`oa`], [`constructions`]).
//!
//! Every claimed property (strength, minimal distance, uniformity of all
//! reductions, purity) is re-checked by an independent verifier
//! ([`quantum`]) with exact rational arithmetic. The math is generic over the
//! [`Scalar`] type; the aliases below pin the exact instantiations used by
//! the verification paths.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod oa;
pub mod quantum;
pub mod recipes;
pub mod scalar;
pub mod search;
pub mod stabilizer;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational used on every verification path.
pub type Rational = num_rational::Ratio<i128>;
/// 64-bit rational, enough for the small denominators of desk-scale examples.
pub type Rational64 = num_rational::Ratio<i64>;
/// Arbitrary-precision rational.
pub type BigRational = num_rational::BigRational;
/// Complex number with exact rational parts.
pub type GaussianRational = num_complex::Complex<Rational>;

/// Dense operator with exact entries.
pub type ExactOperator = stabilizer::DenseOperator<Rational>;
/// Sparse pure state with exact amplitudes.
pub type ExactState = quantum::SparseState<Rational>;
/// Uniform mixture with exact amplitudes.
pub type ExactMixture = quantum::MixedState<Rational>;
/// Reduced density matrix with exact entries.
pub type ExactReduced = quantum::ReducedDensity<Rational>;

/// Floating-point instantiations, useful for quick numerical cross-checks.
pub type OperatorF64 = stabilizer::DenseOperator<f64>;
pub type MixtureF64 = quantum::MixedState<f64>;

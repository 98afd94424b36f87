//! Exact finite-field and Pauli arithmetic.

mod gf4;
mod gfq;
mod pauli;

pub use gf4::Gf4;
pub use gfq::{GaloisField, SymbolGroup, SUPPORTED_ORDERS};
pub use pauli::{anticommutes, pauli_product, word_product, words_commute, PauliWord};

//! Exact normalization of perturbed polynomial Hamiltonians.
//!
//! A Hamiltonian `H = H_0 + Σ ε^k H_k` with harmonic `H_0 = Σ ω_k (p_k² + q_k²)/2`
//! is normalized by a Lie-Deprit transform whose generator is computed in one
//! pass from the expansion of the perturbed Liouvillian resolvent
//! ([`normalize::explicit_generator`]). The crate also carries the classical
//! order-by-order Deprit and Henrard normalizations for comparison, the
//! operator-word expansion of the perturbed projector / integrating operator
//! ([`kato`]), and formal integrals of motion ([`integrals`]).
//!
//! All arithmetic is exact over Q(i)[√2]; see [`algebra`].

pub mod algebra;
pub mod canonical;
pub mod error;
pub mod integrals;
pub mod kato;
pub mod models;
pub mod normalize;
pub mod operators;
pub mod parallel;
pub mod stats;

pub use algebra::{ExtScalar, Monomial, PolySeries, VarFrame, VarKind};
pub use error::{Error, Result};
pub use normalize::{GeneratorSeries, HamiltonianModel};
pub use operators::Frequencies;

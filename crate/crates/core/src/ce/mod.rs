//! Chevalley–Eilenberg side: free Lie words, the arity-wise CE complex of
//! A ⊗ L_n, its pairing with the LS model, and CE homology of A ⊗ g.

pub mod engine;
pub mod finite;
pub mod lie;
pub mod module;
pub mod pairing;

pub use finite::{ce_homology, FiniteLieAlgebra};
pub use lie::{lie_normal_form, LieExpr};
pub use module::{ce_module_complex, CeBasis, CeBlock};
pub use pairing::{pair, pairing_checks, PairingReport};

#[cfg(test)]
mod tests;

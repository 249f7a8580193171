//! Numerical laboratory for majorization, passive states, and the quantum
//! channels generated by single-jump Lindblad dissipators.
//!
//! The crate is organized around a dense complex linear-algebra kernel
//! ([`linalg`]), density-matrix and spectrum utilities ([`states`]), the
//! majorization partial order with constructive T-transform witnesses
//! ([`majorization`]), a validated Lindblad generator class and its channel
//! maps ([`lindblad`]), Monte-Carlo verification of the optimality of passive
//! inputs ([`verify`]), and executable counterexamples showing why each
//! hypothesis of the optimality statement is needed ([`counterexamples`]).

pub mod counterexamples;
pub mod error;
pub mod linalg;
pub mod lindblad;
pub mod majorization;
pub mod numeric;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::CMatrix;

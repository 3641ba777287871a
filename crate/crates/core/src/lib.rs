//! Euler's generalized factorials `Γ_E`, `Δ` and `Θ`, their continuation to
//! real arguments through the Gamma function, the constants of their
//! leading-order growth laws, and residual checks for the Gamma duplication
//! and multiplication formulas.
//!
//! Everything that can grow past the range of `f64` is carried as a
//! [`LogValue`].

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod euler_family;
pub mod identities;
pub mod special_core;

pub use asymptotics::{AsymptoticConstants, ConstantEstimate};
pub use error::{Error, Result};
pub use euler_family::{FamilyKind, Parameters};
pub use identities::{Identity, VerificationReport};
pub use special_core::{BernoulliTable, LogValue};

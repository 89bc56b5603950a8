//! Verification toolkit for prime-power congruences involving reciprocals of
//! central binomial coefficients.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: exact rationals, modular contexts, fixed-precision p-adic
//!   numbers and the classical kernels (Legendre symbol, Fermat quotient,
//!   Lucas sequences, binomials).
//! * [`harmonic`]: multiple harmonic sums in exact and modular mode.
//! * [`bernoulli`]: Bernoulli numbers, exact and modulo prime powers.
//! * [`identities`]: exact verification of the finite identities behind the
//!   congruences, plus numeric partial sums of the related infinite series.
//! * [`suite`]: the congruence registry, the sweep engine and reports.
//! * [`dsl`]: a small statement language for congruences over sums.

pub mod arith;
pub mod bernoulli;
pub mod dsl;
mod error;
pub mod harmonic;
pub mod identities;
pub mod suite;

pub use arith::{ModContext, PadicNumber, Rational};
pub use error::{Error, Result};
pub use harmonic::Composition;
pub use suite::{CheckId, CongruenceReport, Params, Status};

//! Numerical toolkit for exponential and heavy-tail bounds on the maxima and
//! normalized sums of random variables.
//!
//! The crate is organized around a small algebra of tail-exponent functions:
//!
//! * [`tail_calculus`]: Young-Orlicz functions, Young-Fenchel (Legendre)
//!   conjugation, generating functions of Grand Lebesgue type, and tail to
//!   moment conversions.
//! * [`max_bounds`]: norming sequences `(q_n, w_n, z_n)` and uniform
//!   exponential tail bounds for maxima of sequences.
//! * [`lower_bounds`]: Bonferroni lower bounds for the normalized maximum and
//!   the sandwich check against the exact law.
//! * [`array_sums`]: aggregated exponents for partial sums of triangular
//!   arrays, the subgaussian specialization, and Monte-Carlo certification of
//!   running means with a band that is uniform in the sample size.
//! * [`heavy_tails`]: Pisier-type bounds, regularly varying tails, and
//!   Rosenthal-shaped sum bounds for polynomially decaying tails.
//! * [`sim_harness`]: exact-tail samplers, exact maximum-law oracles,
//!   empirical tails with DKW envelopes, and bound verification drivers.
//!
//! Every bound exposed here is backed by a verification path: either an exact
//! oracle (closed-form law of the maximum) or a seeded simulation with a
//! distribution-free envelope. All operations are pure functions of their
//! inputs; sampling is reproducible bit-for-bit from an explicit
//! `(seed, stream)` pair.

pub mod array_sums;
pub mod error;
pub mod heavy_tails;
pub mod lower_bounds;
pub mod max_bounds;
mod numeric;
pub mod sim_harness;
pub mod tail_calculus;

pub use error::{Error, Result};

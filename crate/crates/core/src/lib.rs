//! Exact desk-scale computation of multiplicative-order statistics over
//! primes, and the machinery they rest on.
//!
//! The crate is organized around the objects the statistics consume:
//!
//! - [`arith`]: sieves, deterministic 64-bit factorization, modular
//!   arithmetic, primitive roots.
//! - [`orders`]: order tables modulo primes, Carmichael's lambda, the
//!   primary decomposition of (Z/nZ)*, and lambda-primitive-root counts
//!   R(n) with their product formula.
//! - [`characters`]: explicit Dirichlet character groups with exact
//!   discrete logs, the order-class coefficients c_w, elementary characters,
//!   and the character sums S4 / S10.
//! - [`divisors`]: ordered-factorization counts tau_r and their bounds.
//! - [`constants`]: Euler products with certified tails, the logarithmic
//!   integral, the exponent functions f1/f2 and their roots.
//! - [`statistics`]: the averaged statistics themselves, reported as exact
//!   left-hand sides against their main terms.
//!
//! All computations are deterministic: reports are byte-identical across
//! runs regardless of the number of worker threads.

pub mod arith;
pub mod characters;
pub mod constants;
pub mod divisors;
pub mod error;
pub mod orders;
pub mod statistics;
mod util;

pub use error::{Error, Result};

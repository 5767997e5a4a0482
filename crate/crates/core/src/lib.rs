//! Ideal calculus for the ring of real analytic functions on `[0,1]`.
//!
//! Every ideal of this ring is principal and is determined by the finite
//! multiset of zeros of a generator. The crate computes those divisors with
//! certified interval arithmetic and implements the ideal operations on them.

pub mod cli;
pub mod expr;
pub mod ideals;
pub mod oracle;
pub mod rational;
pub mod roots;
pub mod taylor;

//! Exact computational commutative algebra over prime fields and the rationals.
//!
//! The crate builds graded artinian quotient rings from homogeneous ideals,
//! computes Koszul homology and quasi-complete-intersection certificates,
//! searches for exact zero-divisors, computes quadratic duals and minimal
//! free resolutions, and runs randomized generic-quadrics experiments.
//!
//! All arithmetic is exact; there is no floating point anywhere. The crate is
//! `no_std` + `alloc`: IO, parsing of job descriptions and report formats live
//! in the companion CLI crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod battery;
pub mod dual;
pub mod field;
pub mod generic;
pub mod graded;
pub mod groebner;
pub mod koszul;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod resolution;
pub mod series;

pub use field::{Field, Fp2, PrimeField, Rationals};
pub use groebner::GroebnerBasis;
pub use koszul::{KoszulComplex, QciCertificate, QciOutcome};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
pub use quotient::{QuotientRing, RingElement, RingIdeal};

//! Gauss factorials of polynomials over finite fields.
//!
//! For a nonconstant `f` over `F_q`, `G(f)` is the product of the monic
//! polynomials of degree below `deg f` that are coprime to `f`, reduced mod
//! `f`. This crate computes these products (and their half-system variants)
//! by brute force and by closed form, and checks the two against each other.

pub mod cli;
pub mod error;
pub mod factorize;
pub mod field;
pub mod gauss;
pub mod poly;
pub mod symbols;
pub mod verify;

pub use error::{Error, Result};
pub use factorize::{enumerate_primes, factor, is_irreducible, phi, Factorization};
pub use field::{build_field, FieldCtx, FieldElem};
pub use gauss::{
    big_m, classify_order, delta, enumerate_half_systems, gauss_factorial, gauss_factorial_upto,
    gauss_half, gauss_half_via_m, mult_order, predict_g, predict_g_upto, predict_half_value,
    Clause, HalfPrediction, HalfSystem, OrderClassification,
};
pub use poly::{gcd_monic, inverse_mod, parse_poly, powmod, Degree, Poly};
pub use symbols::{class_number, kronecker, legendre, reciprocity_check, SymbolValue};
pub use verify::{run_sweep, verify_instance, Instance, SweepConfig, Theorem, VerdictRecord};

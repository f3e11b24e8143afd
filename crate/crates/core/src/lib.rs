//! Reed-Muller quotient modules over small finite fields.
//!
//! For a prime power `q = p^m`, the reduced polynomials of degree at most `r`
//! in `n` variables over `F_q` (every exponent at most `q - 1`) form the
//! generalized Reed-Muller code `R_q(r, n)`. This crate works with the
//! quotients `H_q(r, n) = R_q(r, n) / R_q(r - 1, n)`, which carry an action
//! of `GL(n, F_q)`, and provides:
//!
//! * arithmetic in `F_q` with a deterministic modulus and generator choice
//!   ([`gf`]),
//! * reduced polynomial arithmetic, evaluation, interpolation, and the
//!   monomial basis of each quotient ([`polyfun`]),
//! * the matrix of a group element acting on a quotient, both by direct
//!   substitution and by a combinatorial coefficient formula ([`glaction`]),
//! * the duality map sending a quotient to its complementary-degree partner
//!   and orbit / equivalence searches ([`duality`]),
//! * the lattice of `GL`-submodules of a quotient, described by downward
//!   closed sets in a poset of digit-sum signatures ([`lattice`]),
//! * composition series, factor dimensions, and non-isomorphism evidence for
//!   the simple factors ([`factors`]).
//!
//! Everything is deterministic: field construction, basis enumeration,
//! submodule enumeration, and randomized checks (which derive their streams
//! from explicit seeds) produce identical results on every run.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod duality;
pub mod error;
pub mod factors;
pub mod gf;
pub mod glaction;
pub mod lattice;
pub mod linalg;
pub mod polyfun;
pub mod rng;

pub use error::Error;

//! Fat points in the projective plane.
//!
//! A fat point scheme `Z = m1 p1 + ... + mn pn` at general points is given by
//! its multiplicities ([`FatPointSpec`]). The crate computes its expected
//! Hilbert function and graded Betti numbers by working in the divisor class
//! lattice of the blow-up ([`DivisorClass`]), together with the classical
//! families of lower bounds on alpha (the least degree of a curve through
//! `Z`) and upper bounds on tau (the regularity index). A brute-force
//! finite-field oracle checks the expected values at pseudorandom points.
//!
//! Expected values are theorems for at most nine points and predictions of
//! the SHGH conjecture beyond that; [`Exactness`] records which.

mod arith;
mod unload;

pub mod alpha;
pub mod error;
pub mod hilbert;
pub mod lattice;
pub mod oracle;
pub mod report;
pub mod resolution;
pub mod suite;
pub mod tau;

pub use error::{Error, Result};
pub use hilbert::{
    beta_expected, expected_dim, find_alpha, find_tau, h1_dim, hilbert_polynomial, hilbert_table,
    Exactness, HilbertTable,
};
pub use lattice::{
    apply_inverse, psi_decompose, reduce_fundamental, DivisorClass, FatPointSpec, Move,
    PsiDecomposition, WeylWord,
};
pub use oracle::{actual_hilbert, actual_nu, PointConfig, DEFAULT_PRIME};
pub use report::{BoundReport, Direction, Method, Params};
pub use resolution::{betti_table, quasi_uniform_resolution, BettiTable, QuasiUniformResolution};

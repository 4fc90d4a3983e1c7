//! Exact-arithmetic toolkit for commutative post-Lie algebra (CPA) structures
//! on finite-dimensional Lie algebras.
//!
//! A Lie algebra is given by its structure constants over the rationals. A
//! CPA-structure on it is a commutative bilinear product `x·y` satisfying
//!
//! ```text
//! x·y = y·x
//! [x,y]·z = x·(y·z) − y·(x·z)
//! x·[y,z] = [x·y, z] + [y, x·z]
//! ```
//!
//! The crate verifies such products, computes their annihilator and ideal
//! chain, solves for all products on a given algebra (general and inner
//! pipelines), decomposes inner structures along the spectrum of the defining
//! endomorphism, and builds the classical constructive products (cocycle,
//! central element, eigenfunctional, center construction, componentwise).
//!
//! All arithmetic is exact; there are no tolerances anywhere. Everything is
//! deterministic, so outputs are stable across runs.
//!
//! The `parallel` feature (on by default) enables rayon data-parallelism in
//! the hot inner loops (row elimination, axiom sweeps, suite execution); the
//! sequential fallback computes identical results.

// Structure constants are triple-indexed tensors; indexed loops over them are
// clearer than iterator chains, and the solver signatures carry their shapes.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod catalog;
pub mod cpa;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod suite;

pub use cpa::CPAProduct;
pub use lie::LieAlgebra;
pub use linalg::{Matrix, Polynomial, Rational, Subspace};

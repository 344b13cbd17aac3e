//! Membership decision procedures for the holomorphy domains of vacuum
//! expectation values over complexified Minkowski space.
//!
//! The library answers questions of the form "does this configuration of
//! `m` complex space-time points lie in the tube domain / extended tube /
//! permuted union of extended tubes?", returning three- or four-valued
//! [`Verdict`]s that carry re-checkable witness [`Certificate`]s (a complex
//! Lorentz element, a permutation, or both). Alongside the geometric
//! procedures sit a linear-time HORNSAT engine with minimal-model semantics
//! used for cell-level domain inference, and the order-classification
//! bookkeeping over space-time dimension `s` and function order `m`.
//!
//! Modules:
//!
//! * [`geometry`] — metric products, cone and spacelike tests, difference
//!   coordinates, light-cone coordinates for `s = 2`.
//! * [`lorentz`] — real and complex Lorentz transformations, verification,
//!   the `s = 2` scaling parametrization, and certificates.
//! * [`domains`] — tube / extended-tube / Jost-point membership, the
//!   two-point cut test, and suborder projections.
//! * [`permutation`] — permuted-union membership, guess-and-verify search,
//!   and Bose/Fermi sign bookkeeping.
//! * [`hornsat`] — Horn formulas, minimal models, the text format, and the
//!   cell-catalogue inference layer.
//! * [`classify`] — function index `n = s·m` and order classes.
//! * [`selftest`] — the seeded verification suites behind `selftest` in the
//!   CLI, with their independent oracles.

pub mod classify;
pub mod domains;
pub mod error;
pub mod geometry;
pub mod hornsat;
pub mod lorentz;
pub mod permutation;
pub mod selftest;

pub use error::Error;
pub use geometry::{
    ComplexVector, Configuration, Metric, RealVector, Statistics, Verdict, VerdictState,
};
pub use lorentz::{Certificate, LorentzTransform, TransformWitness};
pub use permutation::Permutation;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Default width of the boundary band for geometric verdicts.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Default entrywise tolerance for the metric condition on Lorentz matrices.
pub const DEFAULT_LORENTZ_TOL: f64 = 1e-10;

//! Numerical verification of probability axiomatics on projector lattices.
//!
//! The crate builds the chain from classical plausible inference to quantum
//! conditional probability and checks every link numerically:
//!
//! - [`matrix`], [`eigen`], [`operators`]: dense complex linear algebra and
//!   validated operator types (projectors, density matrices).
//! - [`lattice`]: meet, join, complement, and commutation classification on
//!   projectors, defined through the subspace lattice so non-commuting pairs
//!   are first-class.
//! - [`boolean`]: Boolean subalgebras of commuting projectors — atom
//!   extraction, closure, and identity verification.
//! - [`classical`]: finite classical probability under both axiomatizations,
//!   the plausibility calculus (product form, negation family, sum rule), and
//!   their residual checkers.
//! - [`quantum`]: the Lüders conditional Pr(P|Q) = tr(QρQP)/tr(ρQ), the Born
//!   rule, the conditional-axiom verifier, the product-rule residual Δ with
//!   its two-qubit violation family, and randomized violation search.
//! - [`oracle`]: a Monte Carlo sequential-measurement sampler providing
//!   frequency estimates independent of the trace formulas.
//! - [`report`], [`io`]: the shared report schema and the operator file
//!   format.
//!
//! Everything randomized is driven by counter-addressed seeds and replays
//! bit-identically.

pub mod boolean;
pub mod classical;
pub mod eigen;
pub mod error;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod operators;
pub mod oracle;
pub mod quantum;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use matrix::{C64, ComplexMatrix};
pub use operators::{DensityMatrix, Projector, ToleranceProfile};
pub use report::AxiomReport;

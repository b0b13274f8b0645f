//! Exact computation of the blowup coefficient polynomials B_k(x) and
//! S_k(x) for Donaldson invariants.
//!
//! The exponential generating functions B(x,t) = Σ B_k(x)·tᵏ/k! and
//! S(x,t) = Σ S_k(x)·tᵏ/k! are built over exact rational arithmetic by
//! independent pipelines — a nonlinear-ODE Taylor recursion, a direct
//! quadratic coefficient recursion, and Weierstrass closed forms
//! e^{−t²x/6}·σ₃(t) and e^{−t²x/6}·σ(t) — and cross-verified against each
//! other and against every algebraic identity the construction satisfies.
//! Mutual agreement is the crate's correctness guarantee; `tables::crosscheck`
//! and the CLI `verify` subcommand drive the whole battery.
//!
//! No computational path uses floating point; the only approximate output
//! is the CLI's opt-in `--approx` decoration.

pub mod cli;
pub mod polyring;
pub mod reduce;
pub mod series;
pub mod tables;
pub mod weierstrass;

pub use polyring::{Poly, Rational};
pub use series::{SeriesError, TruncSeries};
pub use tables::{BlowupTable, Pipeline, PipelineReport, TableKind};

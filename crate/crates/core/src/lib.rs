//! Exact engine for sign-invariant Open Cylindrical Algebraic Decompositions.
//!
//! The crate builds CADs of real n-space from sets of polynomial constraints
//! using the Lazard projection operator, lifts over open cells only (all
//! sample points stay rational), and refines an existing decomposition
//! incrementally when a new constraint arrives instead of recomputing from
//! scratch.
//!
//! Pipeline, bottom to top:
//!
//! * [`poly`] — sparse multivariate polynomials over exact rationals, with
//!   the algebraic subroutines projection consumes (contents, resultants,
//!   discriminants, square-free and gcd-free bases).
//! * [`realroot`] — isolation, ordering and exact deduplication of the real
//!   roots of univariate polynomial sets, plus rational sample selection.
//! * [`projection`] — Lazard projection tables, computed from scratch or
//!   incrementally.
//! * [`lifting`] — the CAD tree: base decomposition, stack lifting via the
//!   Lazard valuation, and the incremental attach/detach tree merge.
//! * [`engine`] — sessions: build, incremental add, point location, sign
//!   queries, persistence, and the recompute oracle.
//!
//! All core arithmetic is exact; no floating point is used anywhere in this
//! crate.

pub mod engine;
pub mod error;
pub mod lifting;
pub mod poly;
pub mod projection;
pub mod realroot;

pub use error::CadError;
pub use poly::{PolySet, Polynomial, Rational, VarOrder};
pub use realroot::{IsolatedRoot, RootSet};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CadError>;

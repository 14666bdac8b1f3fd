//! Exact computations with gap functions of subalgebras of
//! `K[[t_1]] × ... × K[[t_r]]`, and their use in classifying the
//! singularities of linear projections of rational normal curves.
//!
//! The layers, bottom up:
//!
//! * [`field`], [`poly`], [`linalg`]: exact arithmetic over `Q` and `F_p`.
//! * [`series`], [`subspace`]: truncated multi-branch series and subspaces.
//! * [`gapfn`]: gap functions, algebra closure, degree, the key lemma check.
//! * [`classify`]: the 21 types with `δ <= 3`.
//! * [`curve`]: osculating flags and multifiltrations on the curve.
//! * [`project`]: basepoints, ramification and per-cluster analysis of a
//!   projection center.
//! * [`schubert`]: Schubert conditions for each type and sampling of centers.

pub mod classify;
pub mod curve;
pub mod field;
pub mod gapfn;
pub mod linalg;
pub mod poly;
pub mod project;
pub mod schubert;
pub mod series;
pub mod subspace;

pub use field::{Field, FieldSpec, PrimeField, RationalField};

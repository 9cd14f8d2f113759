//! Exact computation in partially commutative groups (right-angled Artin groups).
//!
//! - [`graph`]: commutation graphs and their subset queries.
//! - [`words`]: geodesic reduction, canonical forms, cyclic reduction, conjugacy.
//! - [`cosets`]: parabolic subgroups, double coset representatives, malnormality.
//! - [`hnn`]: factorization relative to a generator `t`, the symbol map and root tests.
//! - [`frei`]: embedding verdicts for one-relator quotients.
//! - [`census`]: normal-form counts and generic-case tallies over chorded cycles.

pub mod census;
pub mod cosets;
pub mod frei;
pub mod graph;
pub mod hnn;
pub mod words;

pub use graph::{CommutationGraph, GraphError, Vertex, VertexSet};
pub use words::{Letter, NormalForm, Word, WordError};

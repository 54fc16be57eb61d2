//! Exceptional representations of quivers without multiple arrows.
//!
//! Two independent engines compute the same numbers: [`roots`] works with
//! the root system of the underlying graph, [`rep`] enumerates matrix
//! representations over a small prime field. [`census`] combines them into
//! the counts `e_Q(t)`, the invariant `t_Q` and the finite/infinite theorem
//! checks, and [`corpus`] runs those checks over every small tree and
//! unicyclic graph.

pub mod census;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod field;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod roots;

pub use classify::{classify_graph, is_representation_finite, Diagram, GraphClass, GraphKind};
pub use error::{Error, Result};
pub use field::{Field, FiniteField, Fp};
pub use quiver::{parse_quiver, preset, preset_by_name, DimVector, Family, Quiver};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
/// Exact rationals, for determinants and definiteness checks.
pub type Rational = num_rational::Rational64;

//! Reconstruction algebras `A_{r,a}` of cyclic quotient surface singularities
//! `1/r(1,a)`.
//!
//! The crate builds the quiver with relations from the Jung–Hirzebruch
//! expansion of `r/a`, labels every arrow with a monomial, and checks the
//! resulting algebra computationally: graded dimensions against the weight
//! model of the special modules, projective resolutions of the vertex
//! simples, and the chart atlas of the minimal resolution.

pub mod cfrac;
pub mod error;
pub mod grading;
pub mod quiver;
pub mod homology;
pub mod moduli;
pub mod pathalg;
mod rank;
pub mod relations;

pub use cfrac::{GroupParams, IJSeries, LabelList};
pub use error::{Error, Result};
pub use grading::{Bidegree, Monomial, PhiTable};
pub use quiver::{build_quiver, reverse_iso, Arrow, ArrowId, ArrowKind, Quiver, Vertex};
pub use relations::{generate_relations, Path, Relation};

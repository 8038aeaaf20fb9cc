//! Exact-arithmetic toolkit for metric representations of compact Lie
//! algebras: curvature and torsion spaces, module decompositions, holonomy
//! classification, and one-parameter families of homogeneous models, all over
//! the rational numbers so every reported dimension and eigenvalue is exact.

pub mod catalog;
pub mod curvature;
pub mod decompose;
pub mod exactlin;
pub mod indexing;
pub mod liealg;
pub mod infmodel;
pub mod tensorops;
pub mod torsion;

pub use exactlin::{Rational, RationalMatrix, Subspace};
pub use liealg::{LieAlgError, MetricRepresentation};
pub use tensorops::{Shape, TensorRep};

//! Equivariant selfmaps of cohomogeneity-one manifolds.
//!
//! The crate builds the geodesic-folding maps `ψ_k` on SU(3), the k-powers of
//! spheres and the folding maps of CP^m, and checks their degrees and
//! Lefschetz numbers two ways: Monte-Carlo integration of the signed Jacobian
//! ([`numtopo`]) and exact enumeration over the normal geodesic ([`weyl`]).

pub mod encoding;
pub mod error;
pub mod halfangle;
pub mod linalg;
pub mod numtopo;
pub mod sphere_cpm;
pub mod su3;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, ComplexVector, RandomSource, RealVector, Tolerance};
pub use numtopo::{DegreeEstimate, ManifoldModel, Verdict};
pub use su3::{OddFoldParam, Realization, RealizationPlan};
pub use weyl::{CohomOneData, FoldParam, Parity};

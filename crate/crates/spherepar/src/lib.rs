//! Explicit orthonormal frames on products of spheres S^m x S^n (n odd),
//! together with the machinery to verify every identity they satisfy:
//! orthonormality, bracket tables, dual coframes, structure equations, the
//! Hopf-quotient pushforward, change-of-basis relations, the pointwise
//! isomorphism chain behind the general frame, and the recursive embedding
//! of a product of spheres into Euclidean space.
//!
//! Identities are checked two ways:
//! - numerically, at seeded sample points, against stated tolerances;
//! - exactly, through sparse polynomial vector fields over the rationals
//!   and an exact Lie bracket, with residuals reduced to normal form modulo
//!   the two sphere relations. A zero normal form is a proof that the
//!   identity holds on the manifold, not a tolerance statement.
//!
//! See the crate examples for runnable tours of each capability, and the
//! `spherepar` binary for the `verify`, `eval`, and `embed` commands.

pub mod error;
pub mod tol;

pub mod geometry;

pub mod frames;

pub mod polybracket;

pub mod hopf;

pub mod kervaire;

pub mod identities;

pub mod report;

pub mod cli;

pub use error::{Error, Result};
pub use frames::{
    change_of_basis, coframe, frame_b_s1, frame_b_s3, frame_p, frame_product, ChainIsomorphism,
    ChangeOfBasis, Coframe,
};
pub use geometry::{
    gram, meridian, normal, quaternion_fields, sample_point, sample_points, torsion,
    AmbientVector, Frame, FrameKind, ProductPoint, SpherePoint,
};
pub use polybracket::{lie_bracket, PolyVectorField, SparsePoly, SphereIdeal, VarSet};

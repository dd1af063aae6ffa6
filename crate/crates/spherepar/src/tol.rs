//! Tolerance thresholds used across the crate.
//!
//! Every gate and check tolerance is defined here rather than inline, so the
//! verification suites and the constructors agree on the same numbers.

/// Unit-norm residual guaranteed by sphere-point constructors after
/// renormalization: ||coords|^2 - 1| stays below this.
pub const UNIT_CONSTRUCT: f64 = 1e-12;

/// Raw inputs farther than this from unit norm are rejected instead of
/// silently normalized. Use [`crate::geometry::SpherePoint::normalized`]
/// for arbitrary nonzero vectors.
pub const UNIT_REJECT: f64 = 1e-9;

/// Tangency gate for frame vectors: |<v_x, x>| and |<v_y, y>|.
pub const TANGENCY: f64 = 1e-12;

/// Orthonormality gate: max |Gram - I| entry. Looser than [`TANGENCY`] to
/// tolerate accumulated rounding at large m+n.
pub const ORTHONORMAL: f64 = 1e-9;

/// Rank gate for user-supplied fiber frames: |det Gram| below this is
/// treated as rank-deficient.
pub const RANK_DET: f64 = 1e-9;

/// Agreement between two exact closed forms evaluated in floating point
/// (frame equality, change-of-basis products, pushed frames).
pub const EXACT_EVAL: f64 = 1e-12;

/// Step for central finite differences on unit-scale inputs.
pub const FD_STEP: f64 = 1e-6;

/// Agreement between a central finite-difference Jacobian and a closed form.
pub const FD_TOL: f64 = 1e-6;

/// Singular values above this count toward numerical rank.
pub const RANK_SV: f64 = 1e-7;

/// Round-trip residual for the product-of-spheres embedding and its inverse.
pub const ROUNDTRIP: f64 = 1e-9;

/// Default numeric tolerance for sampled identity checks.
pub const DEFAULT_NUMERIC: f64 = 1e-9;

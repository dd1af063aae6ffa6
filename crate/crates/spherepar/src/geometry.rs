//! Points on spheres and products of spheres, ambient tangent vectors,
//! seeded sampling, and the elementary vector fields: meridian, normal,
//! torsion, and the three quaternionic fields on S^3.
//!
//! Tangent vectors are represented in ambient coordinates throughout: a
//! tangent vector at (x, y) in S^m x S^n lives in R^{m+1} (+) R^{n+1}.
//! Indices in the public API are 1-based.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::tol;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

// ---------------------------------------------------------------------------
// SpherePoint / ProductPoint
// ---------------------------------------------------------------------------

/// A point on the unit sphere S^m in R^{m+1}, m >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Accepts a vector already within [`tol::UNIT_REJECT`] of unit norm and
    /// renormalizes it, so that `||coords|^2 - 1|` ends up below
    /// [`tol::UNIT_CONSTRUCT`]. Anything farther from the sphere is rejected.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len().saturating_sub(1)));
        }
        let n = norm(&coords);
        if !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        if (n - 1.0).abs() > tol::UNIT_REJECT {
            return Err(Error::NotUnit {
                norm: n,
                tol: tol::UNIT_REJECT,
            });
        }
        Ok(Self::scale_to_unit(coords, n))
    }

    /// Normalizes an arbitrary nonzero vector onto the sphere.
    pub fn normalized(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len().saturating_sub(1)));
        }
        let n = norm(&coords);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self::scale_to_unit(coords, n))
    }

    fn scale_to_unit(mut coords: Vec<f64>, n: f64) -> Self {
        for c in &mut coords {
            *c /= n;
        }
        Self { coords }
    }

    /// Sphere dimension m (the ambient dimension is m + 1).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// 1-based coordinate access: x_i, i = 1..=m+1.
    pub fn coord(&self, i: usize) -> f64 {
        self.coords[i - 1]
    }
}

/// A point (x, y) in S^m x S^n. The parity of n is not constrained here;
/// frame constructors enforce it where required.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    pub x: SpherePoint,
    pub y: SpherePoint,
}

impl ProductPoint {
    pub fn new(x: SpherePoint, y: SpherePoint) -> Self {
        Self { x, y }
    }

    pub fn m(&self) -> usize {
        self.x.dim()
    }

    pub fn n(&self) -> usize {
        self.y.dim()
    }
}

// ---------------------------------------------------------------------------
// AmbientVector
// ---------------------------------------------------------------------------

/// A vector in R^{m+1} (+) R^{n+1}. `ypart` is empty for single-sphere work:
/// the elementary field constructors return their components in `xpart`
/// regardless of which factor the sphere will play in a product.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientVector {
    pub xpart: Vec<f64>,
    pub ypart: Vec<f64>,
}

impl AmbientVector {
    pub fn new(xpart: Vec<f64>, ypart: Vec<f64>) -> Self {
        Self { xpart, ypart }
    }

    /// A single-sphere vector: components in `xpart`, empty `ypart`.
    pub fn single(components: Vec<f64>) -> Self {
        Self {
            xpart: components,
            ypart: Vec::new(),
        }
    }

    pub fn zeros(xlen: usize, ylen: usize) -> Self {
        Self {
            xpart: vec![0.0; xlen],
            ypart: vec![0.0; ylen],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.xpart.len(), self.ypart.len())
    }

    /// Product inner product: xpart . xpart + ypart . ypart.
    pub fn dot(&self, other: &AmbientVector) -> f64 {
        debug_assert_eq!(self.dims(), other.dims());
        dot(&self.xpart, &other.xpart) + dot(&self.ypart, &other.ypart)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn add(&self, other: &AmbientVector) -> AmbientVector {
        AmbientVector {
            xpart: self.xpart.iter().zip(&other.xpart).map(|(a, b)| a + b).collect(),
            ypart: self.ypart.iter().zip(&other.ypart).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &AmbientVector) -> AmbientVector {
        AmbientVector {
            xpart: self.xpart.iter().zip(&other.xpart).map(|(a, b)| a - b).collect(),
            ypart: self.ypart.iter().zip(&other.ypart).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> AmbientVector {
        AmbientVector {
            xpart: self.xpart.iter().map(|a| c * a).collect(),
            ypart: self.ypart.iter().map(|a| c * a).collect(),
        }
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.xpart
            .iter()
            .chain(&self.ypart)
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Tangency residual at (x, y): max(|<xpart, x>|, |<ypart, y>|).
    /// Empty parts contribute zero.
    pub fn tangency_residual(&self, base: &ProductPoint) -> f64 {
        let rx = if self.xpart.is_empty() {
            0.0
        } else {
            dot(&self.xpart, base.x.coords()).abs()
        };
        let ry = if self.ypart.is_empty() {
            0.0
        } else {
            dot(&self.ypart, base.y.coords()).abs()
        };
        rx.max(ry)
    }
}

// ---------------------------------------------------------------------------
// Elementary vector fields
// ---------------------------------------------------------------------------

/// The i-th meridian field at x: the orthogonal projection of the i-th
/// coordinate field onto the sphere, e_i - x_i x. Vanishes where x_i = +-1.
pub fn meridian(i: usize, x: &SpherePoint) -> Result<AmbientVector> {
    let len = x.coords().len();
    if i < 1 || i > len {
        return Err(Error::IndexOutOfRange { index: i, max: len });
    }
    let xi = x.coord(i);
    let mut v: Vec<f64> = x.coords().iter().map(|c| -xi * c).collect();
    v[i - 1] += 1.0;
    Ok(AmbientVector::single(v))
}

/// The outward unit normal at x, i.e. the coordinate vector of x itself.
pub fn normal(x: &SpherePoint) -> AmbientVector {
    AmbientVector::single(x.coords().to_vec())
}

/// The unit tangent field on an odd sphere given by complex multiplication
/// by i in C^{(n+1)/2}: component j is -y_{j+1} for odd j and y_{j-1} for
/// even j (1-based).
pub fn torsion(y: &SpherePoint) -> Result<AmbientVector> {
    let n = y.dim();
    if n.is_multiple_of(2) {
        return Err(Error::ParityRequired(n));
    }
    Ok(AmbientVector::single(torsion_components(y.coords())))
}

pub(crate) fn torsion_components(y: &[f64]) -> Vec<f64> {
    let mut t = vec![0.0; y.len()];
    for pair in 0..y.len() / 2 {
        t[2 * pair] = -y[2 * pair + 1];
        t[2 * pair + 1] = y[2 * pair];
    }
    t
}

/// The three unit tangent fields on S^3 given by quaternion multiplication
/// by i, j, k. The first equals [`torsion`] on S^3.
pub fn quaternion_fields(y: &SpherePoint) -> Result<[AmbientVector; 3]> {
    if y.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: y.dim(),
        });
    }
    let c = y.coords();
    let t1 = torsion_components(c);
    let t2 = vec![-c[2], c[3], c[0], -c[1]];
    let t3 = vec![-c[3], -c[2], c[1], c[0]];
    Ok([
        AmbientVector::single(t1),
        AmbientVector::single(t2),
        AmbientVector::single(t3),
    ])
}

// ---------------------------------------------------------------------------
// Gram matrices
// ---------------------------------------------------------------------------

/// Symmetric matrix of pairwise inner products. Errors if the vectors do not
/// share ambient dimensions. The empty list gives a 0x0 matrix.
pub fn gram(vectors: &[AmbientVector]) -> Result<Vec<Vec<f64>>> {
    if let Some(first) = vectors.first() {
        let dims = first.dims();
        for v in vectors {
            if v.dims() != dims {
                return Err(Error::AmbientMismatch(format!(
                    "expected parts of lengths {:?}, got {:?}",
                    dims,
                    v.dims()
                )));
            }
        }
    }
    let k = vectors.len();
    let mut g = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let p = vectors[i].dot(&vectors[j]);
            g[i][j] = p;
            g[j][i] = p;
        }
    }
    Ok(g)
}

/// Max-entry residual of the Gram matrix against the identity.
pub fn gram_identity_residual(vectors: &[AmbientVector]) -> Result<f64> {
    let g = gram(vectors)?;
    let mut r = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            r = r.max((v - target).abs());
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

/// Which construction produced a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    /// Meridian frame on S^m x S^1.
    BS1,
    /// Quaternionic extension on S^m x S^3.
    BS3,
    /// Product frame built from a user-supplied fiber frame; orthonormal
    /// exactly when the supplied frame is.
    BGeneric,
    /// The general frame on S^m x S^n, n odd.
    P,
}

impl FrameKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FrameKind::BS1 => "B_S1",
            FrameKind::BS3 => "B_S3",
            FrameKind::BGeneric => "B_GENERIC",
            FrameKind::P => "P",
        }
    }
}

/// An ordered family of tangent vectors at a base point, column-stacked.
///
/// Construction checks tangency at [`tol::TANGENCY`] for every kind, and
/// orthonormality at [`tol::ORTHONORMAL`] for every kind except
/// [`FrameKind::BGeneric`] (a generic product frame inherits whatever Gram
/// matrix the supplied fiber frame induces).
#[derive(Debug, Clone)]
pub struct Frame {
    base: ProductPoint,
    vectors: Vec<AmbientVector>,
    kind: FrameKind,
}

impl Frame {
    pub fn new(kind: FrameKind, base: ProductPoint, vectors: Vec<AmbientVector>) -> Result<Self> {
        let dims = (base.x.coords().len(), base.y.coords().len());
        for v in &vectors {
            if v.dims() != dims {
                return Err(Error::AmbientMismatch(format!(
                    "frame vector parts {:?} do not match base point {:?}",
                    v.dims(),
                    dims
                )));
            }
            let t = v.tangency_residual(&base);
            if t > tol::TANGENCY {
                return Err(Error::NotTangent {
                    residual: t,
                    tol: tol::TANGENCY,
                });
            }
        }
        let frame = Self { base, vectors, kind };
        if kind != FrameKind::BGeneric {
            let r = frame.max_gram_residual()?;
            if r > tol::ORTHONORMAL {
                return Err(Error::NotOrthonormal {
                    residual: r,
                    tol: tol::ORTHONORMAL,
                });
            }
        }
        Ok(frame)
    }

    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn base(&self) -> &ProductPoint {
        &self.base
    }

    pub fn vectors(&self) -> &[AmbientVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// 1-based access, matching the index conventions of the frame formulas.
    pub fn vector(&self, i: usize) -> &AmbientVector {
        &self.vectors[i - 1]
    }

    pub fn gram(&self) -> Vec<Vec<f64>> {
        gram(&self.vectors).expect("frame vectors share dimensions by construction")
    }

    pub fn max_gram_residual(&self) -> Result<f64> {
        gram_identity_residual(&self.vectors)
    }

    pub fn max_tangency_residual(&self) -> f64 {
        self.vectors
            .iter()
            .map(|v| v.tangency_residual(&self.base))
            .fold(0.0, f64::max)
    }

    /// Coefficients of `v` in this frame, assuming orthonormality:
    /// coefficient i is <v, frame_i>.
    pub fn coefficients(&self, v: &AmbientVector) -> Vec<f64> {
        self.vectors.iter().map(|b| b.dot(v)).collect()
    }
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

pub(crate) fn gaussian_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| StandardNormal.sample(rng)).collect()
}

pub(crate) fn gaussian_sphere_point(rng: &mut ChaCha8Rng, dim: usize) -> SpherePoint {
    loop {
        let v = gaussian_vector(rng, dim + 1);
        if norm(&v) > 1e-8 {
            return SpherePoint::normalized(v).expect("nonzero gaussian vector");
        }
    }
}

/// One uniform point on S^m x S^n: each factor is a normalized standard
/// Gaussian vector drawn from a ChaCha8 stream seeded with `seed`.
/// Deterministic given (m, n, seed).
pub fn sample_point(m: usize, n: usize, seed: u64) -> Result<ProductPoint> {
    let mut points = sample_points(m, n, seed, 1)?;
    Ok(points.pop().expect("one point requested"))
}

/// A deterministic batch of uniform points, streamed from a single
/// ChaCha8 generator seeded with `seed`.
pub fn sample_points(m: usize, n: usize, seed: u64, count: usize) -> Result<Vec<ProductPoint>> {
    if m < 1 {
        return Err(Error::DimensionTooSmall(m));
    }
    if n < 1 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let x = gaussian_sphere_point(&mut rng, m);
            let y = gaussian_sphere_point(&mut rng, n);
            ProductPoint::new(x, y)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2_INV: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn constructor_rejects_far_from_unit() {
        let err = SpherePoint::new(vec![1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NotUnit { .. }));
        // within the reject band: accepted and renormalized
        let p = SpherePoint::new(vec![1.0 + 5e-10, 0.0]).unwrap();
        let n2: f64 = p.coords().iter().map(|c| c * c).sum();
        assert!((n2 - 1.0).abs() < tol::UNIT_CONSTRUCT);
    }

    #[test]
    fn normalized_handles_any_nonzero_vector() {
        let p = SpherePoint::normalized(vec![3.0, 4.0]).unwrap();
        assert!((p.coord(1) - 0.6).abs() < 1e-15);
        assert!((p.coord(2) - 0.8).abs() < 1e-15);
        assert!(matches!(
            SpherePoint::normalized(vec![0.0, 0.0]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn meridian_at_poles_and_generic_point() {
        let x = SpherePoint::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(meridian(1, &x).unwrap().xpart, vec![0.0, 0.0, 0.0]);

        let x = SpherePoint::new(vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(meridian(1, &x).unwrap().xpart, vec![1.0, 0.0, 0.0]);

        // direct substitution: e_1 - x_1 x at x = (1/sqrt2, 1/sqrt2, 0)
        let x = SpherePoint::new(vec![SQRT2_INV, SQRT2_INV, 0.0]).unwrap();
        let m1 = meridian(1, &x).unwrap();
        assert!((m1.xpart[0] - 0.5).abs() < 1e-15);
        assert!((m1.xpart[1] + 0.5).abs() < 1e-15);
        assert_eq!(m1.xpart[2], 0.0);

        assert!(matches!(
            meridian(4, &x),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn meridian_inner_products_match_delta_minus_xx() {
        let x = sample_point(4, 1, 7).unwrap().x;
        let fields: Vec<_> = (1..=5).map(|i| meridian(i, &x).unwrap()).collect();
        let g = gram(&fields).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j { 1.0 } else { 0.0 } - x.coords()[i] * x.coords()[j];
                assert!((g[i][j] - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn meridians_orthogonal_to_normal_and_radial_sum_vanishes() {
        let x = sample_point(3, 1, 11).unwrap().x;
        let nrm = normal(&x);
        assert!((nrm.norm() - 1.0).abs() < 1e-12);
        let mut radial_sum = AmbientVector::single(vec![0.0; 4]);
        for i in 1..=4 {
            let mi = meridian(i, &x).unwrap();
            assert!(mi.dot(&nrm).abs() < 1e-12);
            radial_sum = radial_sum.add(&mi.scale(x.coord(i)));
        }
        assert!(radial_sum.max_abs() < 1e-12);
    }

    #[test]
    fn torsion_on_circle_and_s3() {
        let theta = 0.77f64;
        let y = SpherePoint::new(vec![theta.cos(), theta.sin()]).unwrap();
        let t = torsion(&y).unwrap();
        assert!((t.xpart[0] + theta.sin()).abs() < 1e-15);
        assert!((t.xpart[1] - theta.cos()).abs() < 1e-15);

        let y = SpherePoint::new(vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(torsion(&y).unwrap().xpart, vec![-1.0, 0.0, 0.0, 0.0]);

        let even = SpherePoint::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(torsion(&even), Err(Error::ParityRequired(2))));
    }

    #[test]
    fn torsion_is_unit_and_tangent() {
        for seed in 0..20 {
            let y = sample_point(1, 5, seed).unwrap().y;
            let t = torsion(&y).unwrap();
            assert!((t.norm() - 1.0).abs() < 1e-12);
            assert!(dot(&t.xpart, y.coords()).abs() < 1e-12);
        }
    }

    #[test]
    fn quaternion_fields_at_identity_and_orthonormal() {
        let y = SpherePoint::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let [t1, t2, t3] = quaternion_fields(&y).unwrap();
        assert_eq!(t1.xpart, vec![0.0, 1.0, 0.0, 0.0]);
        assert_eq!(t2.xpart, vec![0.0, 0.0, 1.0, 0.0]);
        assert_eq!(t3.xpart, vec![0.0, 0.0, 0.0, 1.0]);

        for seed in 0..20 {
            let y = sample_point(1, 3, seed).unwrap().y;
            let fields = quaternion_fields(&y).unwrap();
            assert!(gram_identity_residual(&fields).unwrap() < 1e-12);
            for f in &fields {
                assert!(dot(&f.xpart, y.coords()).abs() < 1e-12);
            }
        }

        let bad = SpherePoint::new(vec![1.0, 0.0]).unwrap();
        assert!(quaternion_fields(&bad).is_err());
    }

    #[test]
    fn gram_of_empty_and_single() {
        assert_eq!(gram(&[]).unwrap().len(), 0);
        let x = SpherePoint::new(vec![0.0, 1.0]).unwrap();
        let g = gram(std::slice::from_ref(&normal(&x))).unwrap();
        assert!((g[0][0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gram_rejects_mismatched_dimensions() {
        let a = AmbientVector::single(vec![1.0, 0.0]);
        let b = AmbientVector::single(vec![1.0, 0.0, 0.0]);
        assert!(matches!(gram(&[a, b]), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn sampling_is_deterministic_and_unit_norm() {
        let p1 = sample_point(2, 1, 42).unwrap();
        let p2 = sample_point(2, 1, 42).unwrap();
        assert_eq!(p1, p2);
        let q = sample_point(2, 1, 43).unwrap();
        assert_ne!(p1, q);

        for p in sample_points(1, 1, 5, 50).unwrap() {
            let nx: f64 = p.x.coords().iter().map(|c| c * c).sum();
            let ny: f64 = p.y.coords().iter().map(|c| c * c).sum();
            assert!((nx - 1.0).abs() < tol::UNIT_CONSTRUCT);
            assert!((ny - 1.0).abs() < tol::UNIT_CONSTRUCT);
        }

        assert!(sample_point(0, 1, 1).is_err());
        assert!(sample_point(1, 0, 1).is_err());
    }
}

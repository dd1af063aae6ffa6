//! The explicit frames on products of spheres: the meridian frame on
//! S^m x S^1, its quaternionic extension on S^m x S^3, the generic product
//! frame over any parallelizable fiber, and the general frame P for odd n.
//! Also their dual coframes, the change-of-basis matrices relating P to the
//! simpler frames, and the pointwise isomorphism chain that produces P.

use crate::error::{Error, Result};
use crate::geometry::{
    gram, meridian, quaternion_fields, torsion, torsion_components, AmbientVector, Frame,
    FrameKind, ProductPoint,
};
use crate::tol;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// b_i = M_i + x_i d_theta on S^m x S^1, with d_theta embedded in R^2 as
/// (-y_2, y_1). The m+1 fields are orthonormal at every point.
pub fn frame_b_s1(point: &ProductPoint) -> Result<Frame> {
    if point.n() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: point.n(),
        });
    }
    let m = point.m();
    let dtheta = torsion_components(point.y.coords());
    let mut vectors = Vec::with_capacity(m + 1);
    for i in 1..=m + 1 {
        let mi = meridian(i, &point.x)?;
        let xi = point.x.coord(i);
        vectors.push(AmbientVector::new(
            mi.xpart,
            dtheta.iter().map(|t| xi * t).collect(),
        ));
    }
    Frame::new(FrameKind::BS1, point.clone(), vectors)
}

/// b_i = M_i + x_i T_1 (i <= m+1), b_{m+2} = T_2, b_{m+3} = T_3 on
/// S^m x S^3, where T_1, T_2, T_3 are the quaternionic fields.
pub fn frame_b_s3(point: &ProductPoint) -> Result<Frame> {
    if point.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: point.n(),
        });
    }
    let m = point.m();
    let [t1, t2, t3] = quaternion_fields(&point.y)?;
    let mut vectors = Vec::with_capacity(m + 3);
    for i in 1..=m + 1 {
        let mi = meridian(i, &point.x)?;
        let xi = point.x.coord(i);
        vectors.push(AmbientVector::new(
            mi.xpart,
            t1.xpart.iter().map(|t| xi * t).collect(),
        ));
    }
    let zeros = vec![0.0; m + 1];
    vectors.push(AmbientVector::new(zeros.clone(), t2.xpart));
    vectors.push(AmbientVector::new(zeros, t3.xpart));
    Frame::new(FrameKind::BS3, point.clone(), vectors)
}

/// The product construction over an arbitrary supplied frame on the fiber:
/// b_i = M_i + x_i T (i <= m+1), b_{m+j} = T_j (j = 2..n), where T = first
/// supplied field. The result is orthonormal exactly when the input is.
///
/// Each supplied field may be given in single-sphere form (components in
/// `xpart`, empty `ypart`) or as a product vector with vanishing x part.
pub fn frame_product(point: &ProductPoint, n_frame: &[AmbientVector]) -> Result<Frame> {
    let m = point.m();
    let n = point.n();
    if n_frame.len() != n {
        return Err(Error::AmbientMismatch(format!(
            "fiber frame must have n = {} fields, got {}",
            n,
            n_frame.len()
        )));
    }
    let mut fiber: Vec<Vec<f64>> = Vec::with_capacity(n);
    for v in n_frame {
        let comps = if v.ypart.is_empty() {
            v.xpart.clone()
        } else {
            if v.xpart.iter().any(|c| c.abs() > tol::TANGENCY) {
                return Err(Error::AmbientMismatch(
                    "fiber frame fields must have vanishing x part".into(),
                ));
            }
            v.ypart.clone()
        };
        if comps.len() != n + 1 {
            return Err(Error::AmbientMismatch(format!(
                "fiber field has {} components, expected {}",
                comps.len(),
                n + 1
            )));
        }
        let t = dot(&comps, point.y.coords()).abs();
        if t > tol::TANGENCY {
            return Err(Error::NotTangent {
                residual: t,
                tol: tol::TANGENCY,
            });
        }
        fiber.push(comps);
    }
    // rank gate via Gram determinant
    let singles: Vec<AmbientVector> = fiber
        .iter()
        .map(|c| AmbientVector::single(c.clone()))
        .collect();
    let g = gram(&singles)?;
    let det = nalgebra::DMatrix::from_fn(n, n, |r, c| g[r][c]).determinant();
    if det.abs() < tol::RANK_DET {
        return Err(Error::RankDeficient {
            det: det.abs(),
            tol: tol::RANK_DET,
        });
    }

    let t_field = &fiber[0];
    let mut vectors = Vec::with_capacity(m + n);
    for i in 1..=m + 1 {
        let mi = meridian(i, &point.x)?;
        let xi = point.x.coord(i);
        vectors.push(AmbientVector::new(
            mi.xpart,
            t_field.iter().map(|t| xi * t).collect(),
        ));
    }
    let zeros = vec![0.0; m + 1];
    for tj in fiber.iter().skip(1) {
        vectors.push(AmbientVector::new(zeros.clone(), tj.clone()));
    }
    Frame::new(FrameKind::BGeneric, point.clone(), vectors)
}

/// The general orthonormal frame on S^m x S^n for odd n:
///
///   p_i       = M_i + x_i T                        for i = 1..m-1,
///   p_{m-1+j} = y_j M_m + t_j M_{m+1}
///               + (t_j x_{m+1} + y_j x_m - t_j) T + N_j   for j = 1..n+1.
///
/// For m = 1 the first family is empty and the frame has n + 1 fields.
pub fn frame_p(point: &ProductPoint) -> Result<Frame> {
    let n = point.n();
    if n.is_multiple_of(2) {
        return Err(Error::ParityRequired(n));
    }
    let m = point.m();
    let t = torsion(&point.y)?.xpart;
    let mut vectors = Vec::with_capacity(m + n);
    for i in 1..m {
        let mi = meridian(i, &point.x)?;
        let xi = point.x.coord(i);
        vectors.push(AmbientVector::new(
            mi.xpart,
            t.iter().map(|c| xi * c).collect(),
        ));
    }
    let mm = meridian(m, &point.x)?.xpart;
    let mm1 = meridian(m + 1, &point.x)?.xpart;
    let xm = point.x.coord(m);
    let xm1 = point.x.coord(m + 1);
    for j in 1..=n + 1 {
        let yj = point.y.coord(j);
        let tj = t[j - 1];
        let xpart: Vec<f64> = mm
            .iter()
            .zip(&mm1)
            .map(|(a, b)| yj * a + tj * b)
            .collect();
        let tcoef = tj * xm1 + yj * xm - tj;
        let nj = meridian(j, &point.y)?.xpart;
        let ypart: Vec<f64> = t
            .iter()
            .zip(&nj)
            .map(|(tc, nc)| tcoef * tc + nc)
            .collect();
        vectors.push(AmbientVector::new(xpart, ypart));
    }
    Frame::new(FrameKind::P, point.clone(), vectors)
}

// ---------------------------------------------------------------------------
// Coframes
// ---------------------------------------------------------------------------

/// The dual coframe of an orthonormal frame, represented by metric duals:
/// a covector acts on a tangent vector through the ambient inner product.
#[derive(Debug, Clone)]
pub struct Coframe {
    base: ProductPoint,
    covectors: Vec<AmbientVector>,
}

impl Coframe {
    pub fn base(&self) -> &ProductPoint {
        &self.base
    }

    pub fn covectors(&self) -> &[AmbientVector] {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    /// Apply the a-th covector (1-based) to a tangent vector.
    pub fn apply(&self, a: usize, v: &AmbientVector) -> f64 {
        self.covectors[a - 1].dot(v)
    }

    /// Pairing matrix against a frame; the identity when the frame is the
    /// one this coframe was derived from.
    pub fn pairing(&self, frame: &Frame) -> Vec<Vec<f64>> {
        self.covectors
            .iter()
            .map(|c| frame.vectors().iter().map(|b| c.dot(b)).collect())
            .collect()
    }
}

/// Metric-dual coframe of an orthonormal frame. Refuses frames whose Gram
/// matrix strays from the identity by more than [`tol::ORTHONORMAL`],
/// since the metric dual of a non-orthonormal frame would require inverting
/// the Gram matrix.
pub fn coframe(frame: &Frame) -> Result<Coframe> {
    let r = frame.max_gram_residual()?;
    if r > tol::ORTHONORMAL {
        return Err(Error::NotOrthonormal {
            residual: r,
            tol: tol::ORTHONORMAL,
        });
    }
    Ok(Coframe {
        base: frame.base().clone(),
        covectors: frame.vectors().to_vec(),
    })
}

// ---------------------------------------------------------------------------
// Change of basis between P and B
// ---------------------------------------------------------------------------

/// The orthogonal matrix A with P = B A: identity on the first m-1 slots and
/// a y-dependent rotation block on the last n+1.
#[derive(Debug, Clone)]
pub struct ChangeOfBasis {
    size: usize,
    matrix: Vec<Vec<f64>>,
}

impl ChangeOfBasis {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    /// Entry in row r, column c (0-based).
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.matrix[r][c]
    }

    /// Max-entry residual of A A^T against the identity.
    pub fn orthogonality_residual(&self) -> f64 {
        let k = self.size;
        let mut res = 0.0f64;
        for r in 0..k {
            for c in 0..k {
                let p: f64 = (0..k).map(|l| self.matrix[r][l] * self.matrix[c][l]).sum();
                let target = if r == c { 1.0 } else { 0.0 };
                res = res.max((p - target).abs());
            }
        }
        res
    }

    /// Columns of B A, i.e. the frame this matrix transforms `frame` into.
    pub fn apply(&self, frame: &Frame) -> Result<Vec<AmbientVector>> {
        if frame.len() != self.size {
            return Err(Error::AmbientMismatch(format!(
                "matrix size {} does not match frame size {}",
                self.size,
                frame.len()
            )));
        }
        let (xl, yl) = frame.vectors()[0].dims();
        let mut out = Vec::with_capacity(self.size);
        for c in 0..self.size {
            let mut acc = AmbientVector::zeros(xl, yl);
            for (r, b) in frame.vectors().iter().enumerate() {
                acc = acc.add(&b.scale(self.matrix[r][c]));
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Rows of the rotation block for n = 1: the coordinates of y and of the
/// circle torsion field.
fn block_s1(y: &[f64]) -> Vec<Vec<f64>> {
    vec![vec![y[0], y[1]], vec![-y[1], y[0]]]
}

/// Rows of the rotation block for n = 3: the coordinates of y and of the
/// three quaternionic fields.
fn block_s3(y: &[f64]) -> Vec<Vec<f64>> {
    vec![
        vec![y[0], y[1], y[2], y[3]],
        vec![-y[1], y[0], -y[3], y[2]],
        vec![-y[2], y[3], y[0], -y[1]],
        vec![-y[3], -y[2], y[1], y[0]],
    ]
}

/// The change-of-basis matrix at a point, for n in {1, 3}. Satisfies
/// frame_p = frame_b * A at the point, and A A^T = I.
pub fn change_of_basis(point: &ProductPoint) -> Result<ChangeOfBasis> {
    let n = point.n();
    let block = match n {
        1 => block_s1(point.y.coords()),
        3 => block_s3(point.y.coords()),
        _ => {
            return Err(Error::InvalidConfig(format!(
                "change of basis is only defined for n = 1 or 3, got n = {n}"
            )))
        }
    };
    let m = point.m();
    let size = m + n;
    let mut matrix = vec![vec![0.0; size]; size];
    for (i, row) in matrix.iter_mut().enumerate().take(m - 1) {
        row[i] = 1.0;
    }
    for (r, brow) in block.iter().enumerate() {
        for (c, val) in brow.iter().enumerate() {
            matrix[m - 1 + r][m - 1 + c] = *val;
        }
    }
    Ok(ChangeOfBasis { size, matrix })
}

// ---------------------------------------------------------------------------
// The pointwise isomorphism chain
// ---------------------------------------------------------------------------

/// The composed pointwise isometry
/// T_x S^m (+) T_y S^n  ->  R^{m-1} (+) R^{n+1}
/// built from the two substitutions: the torsion direction trades places
/// with the x-normal, and the m-th and (m+1)-th coordinate directions trade
/// places with the y-normal and the torsion field. Its inverse carries the
/// standard basis to the frame P.
#[derive(Debug, Clone)]
pub struct ChainIsomorphism {
    base: ProductPoint,
    torsion: Vec<f64>,
}

impl ChainIsomorphism {
    pub fn new(point: &ProductPoint) -> Result<Self> {
        if point.n().is_multiple_of(2) {
            return Err(Error::ParityRequired(point.n()));
        }
        if point.m() < 1 {
            return Err(Error::DimensionTooSmall(point.m()));
        }
        Ok(Self {
            base: point.clone(),
            torsion: torsion_components(point.y.coords()),
        })
    }

    pub fn base(&self) -> &ProductPoint {
        &self.base
    }

    /// Forward direction. Requires a tangent vector at the base point.
    pub fn forward(&self, v: &AmbientVector) -> Result<(Vec<f64>, Vec<f64>)> {
        let r = v.tangency_residual(&self.base);
        if r > tol::ORTHONORMAL {
            return Err(Error::NotTangent {
                residual: r,
                tol: tol::ORTHONORMAL,
            });
        }
        let m = self.base.m();
        let x = self.base.x.coords();
        let y = self.base.y.coords();
        // split the y part along the torsion direction
        let wt = dot(&v.ypart, &self.torsion);
        let wperp: Vec<f64> = v
            .ypart
            .iter()
            .zip(&self.torsion)
            .map(|(w, t)| w - wt * t)
            .collect();
        // swap the torsion coefficient onto the x-normal: u + wt * x fills R^{m+1}
        let full: Vec<f64> = v.xpart.iter().zip(x).map(|(u, xi)| u + wt * xi).collect();
        // the last two coordinate directions become the y-normal and torsion
        let head = full[..m - 1].to_vec();
        let tail: Vec<f64> = y
            .iter()
            .zip(&self.torsion)
            .zip(&wperp)
            .map(|((yj, tj), wp)| full[m - 1] * yj + full[m] * tj + wp)
            .collect();
        Ok((head, tail))
    }

    /// Inverse direction: from R^{m-1} (+) R^{n+1} back to a tangent vector.
    pub fn inverse(&self, head: &[f64], tail: &[f64]) -> Result<AmbientVector> {
        let m = self.base.m();
        let n = self.base.n();
        if head.len() != m - 1 || tail.len() != n + 1 {
            return Err(Error::AmbientMismatch(format!(
                "expected lengths ({}, {}), got ({}, {})",
                m - 1,
                n + 1,
                head.len(),
                tail.len()
            )));
        }
        let x = self.base.x.coords();
        let y = self.base.y.coords();
        // split the R^{n+1} slot along the y-normal and the torsion direction
        let zn = dot(tail, y);
        let zt = dot(tail, &self.torsion);
        let zperp: Vec<f64> = tail
            .iter()
            .zip(y)
            .zip(&self.torsion)
            .map(|((z, yj), tj)| z - zn * yj - zt * tj)
            .collect();
        // rebuild the R^{m+1} vector whose last two slots carried (zn, zt)
        let mut full = vec![0.0; m + 1];
        full[..m - 1].copy_from_slice(head);
        full[m - 1] = zn;
        full[m] = zt;
        // project off the x-normal; its coefficient returns as a torsion part
        let radial = dot(&full, x);
        let xpart: Vec<f64> = full.iter().zip(x).map(|(f, xi)| f - radial * xi).collect();
        let ypart: Vec<f64> = self
            .torsion
            .iter()
            .zip(&zperp)
            .map(|(tj, zp)| radial * tj + zp)
            .collect();
        Ok(AmbientVector::new(xpart, ypart))
    }

    /// Images of the standard basis of R^{m-1} (+) R^{n+1} under the
    /// inverse; componentwise equal to the frame P.
    pub fn inverse_standard_basis(&self) -> Vec<AmbientVector> {
        let m = self.base.m();
        let n = self.base.n();
        let mut out = Vec::with_capacity(m + n);
        for i in 0..m - 1 {
            let mut head = vec![0.0; m - 1];
            head[i] = 1.0;
            out.push(
                self.inverse(&head, &vec![0.0; n + 1])
                    .expect("standard basis lengths match"),
            );
        }
        for j in 0..n + 1 {
            let mut tail = vec![0.0; n + 1];
            tail[j] = 1.0;
            out.push(
                self.inverse(&vec![0.0; m - 1], &tail)
                    .expect("standard basis lengths match"),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_point, sample_points, SpherePoint};

    fn north_product(m: usize, n: usize) -> ProductPoint {
        let mut x = vec![0.0; m + 1];
        x[0] = 1.0;
        let mut y = vec![0.0; n + 1];
        y[0] = 1.0;
        ProductPoint::new(SpherePoint::new(x).unwrap(), SpherePoint::new(y).unwrap())
    }

    #[test]
    fn frame_b_s1_at_north_pole() {
        let p = north_product(2, 1);
        let f = frame_b_s1(&p).unwrap();
        assert_eq!(f.vector(1).xpart, vec![0.0, 0.0, 0.0]);
        assert_eq!(f.vector(1).ypart, vec![0.0, 1.0]);
        assert_eq!(f.vector(2).xpart, vec![0.0, 1.0, 0.0]);
        assert_eq!(f.vector(2).ypart, vec![0.0, 0.0]);
        assert_eq!(f.vector(3).xpart, vec![0.0, 0.0, 1.0]);
        assert!(f.max_gram_residual().unwrap() < 1e-15);
    }

    #[test]
    fn frame_b_s1_rejects_wrong_fiber() {
        let p = north_product(2, 3);
        assert!(frame_b_s1(&p).is_err());
    }

    #[test]
    fn frame_b_s3_at_poles_and_orthonormal_everywhere() {
        let mut x = vec![0.0, 0.0, 1.0];
        let p = ProductPoint::new(
            SpherePoint::new(std::mem::take(&mut x)).unwrap(),
            SpherePoint::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap(),
        );
        let f = frame_b_s3(&p).unwrap();
        assert_eq!(f.vector(3).xpart, vec![0.0, 0.0, 0.0]);
        assert_eq!(f.vector(3).ypart, vec![0.0, 1.0, 0.0, 0.0]);
        assert_eq!(f.vector(4).ypart, vec![0.0, 0.0, 1.0, 0.0]);
        assert_eq!(f.vector(5).ypart, vec![0.0, 0.0, 0.0, 1.0]);

        for p in sample_points(2, 3, 3, 50).unwrap() {
            let f = frame_b_s3(&p).unwrap();
            assert!(f.max_gram_residual().unwrap() < 1e-12);
        }
    }

    #[test]
    fn torsion_equals_radial_frame_combination() {
        // sum_i x_i b_i = T for the S^m x S^3 frame
        for p in sample_points(3, 3, 9, 20).unwrap() {
            let f = frame_b_s3(&p).unwrap();
            let mut acc = AmbientVector::zeros(4, 4);
            for i in 1..=4 {
                acc = acc.add(&f.vector(i).scale(p.x.coord(i)));
            }
            let t = torsion(&p.y).unwrap();
            assert!(acc.xpart.iter().all(|c| c.abs() < 1e-12));
            assert!(acc
                .ypart
                .iter()
                .zip(&t.xpart)
                .all(|(a, b)| (a - b).abs() < 1e-12));
        }
    }

    #[test]
    fn frame_product_reproduces_the_named_frames() {
        for p in sample_points(2, 3, 17, 10).unwrap() {
            let quat = quaternion_fields(&p.y).unwrap();
            let generic = frame_product(&p, &quat).unwrap();
            let named = frame_b_s3(&p).unwrap();
            for (a, b) in generic.vectors().iter().zip(named.vectors()) {
                assert!(a.sub(b).max_abs() < 1e-15);
            }
        }
        for p in sample_points(3, 1, 18, 10).unwrap() {
            let t = torsion(&p.y).unwrap();
            let generic = frame_product(&p, std::slice::from_ref(&t)).unwrap();
            let named = frame_b_s1(&p).unwrap();
            for (a, b) in generic.vectors().iter().zip(named.vectors()) {
                assert!(a.sub(b).max_abs() < 1e-15);
            }
        }
    }

    #[test]
    fn frame_product_scaling_shows_in_gram() {
        let p = sample_point(2, 3, 21).unwrap();
        let scaled: Vec<_> = quaternion_fields(&p.y)
            .unwrap()
            .into_iter()
            .map(|v| v.scale(2.0))
            .collect();
        let f = frame_product(&p, &scaled).unwrap();
        let g = f.gram();
        // the pure-fiber fields pick up a factor 4; the mixed fields pick up
        // 1 - x_i^2 + 4 x_i^2 on the diagonal
        assert!((g[3][3] - 4.0).abs() < 1e-12);
        assert!((g[4][4] - 4.0).abs() < 1e-12);
        let x1 = p.x.coord(1);
        assert!((g[0][0] - (1.0 + 3.0 * x1 * x1)).abs() < 1e-12);
    }

    #[test]
    fn frame_product_rejects_bad_input() {
        let p = sample_point(2, 3, 22).unwrap();
        // not tangent
        let bad = vec![
            AmbientVector::single(p.y.coords().to_vec()),
            quaternion_fields(&p.y).unwrap()[1].clone(),
            quaternion_fields(&p.y).unwrap()[2].clone(),
        ];
        assert!(matches!(
            frame_product(&p, &bad),
            Err(Error::NotTangent { .. })
        ));
        // rank deficient
        let [t1, t2, _] = quaternion_fields(&p.y).unwrap();
        let dependent = vec![t1.clone(), t2.clone(), t1.add(&t2)];
        assert!(matches!(
            frame_product(&p, &dependent),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn frame_p_is_orthonormal_for_various_sizes() {
        for (m, n) in [(1, 1), (2, 1), (4, 1), (1, 3), (2, 3), (3, 5), (2, 7)] {
            for p in sample_points(m, n, 31, 20).unwrap() {
                let f = frame_p(&p).unwrap();
                assert_eq!(f.len(), m + n);
                assert!(f.max_gram_residual().unwrap() < 1e-12);
                assert!(f.max_tangency_residual() < 1e-12);
            }
        }
        let p = sample_point(2, 2, 1).unwrap();
        assert!(matches!(frame_p(&p), Err(Error::ParityRequired(2))));
    }

    #[test]
    fn frame_p_with_m1_has_no_meridian_family() {
        let p = sample_point(1, 3, 5).unwrap();
        let f = frame_p(&p).unwrap();
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn frame_p_n1_matches_rotated_b() {
        // p_m = y1 b_m - y2 b_{m+1}, p_{m+1} = y2 b_m + y1 b_{m+1}
        for p in sample_points(3, 1, 40, 20).unwrap() {
            let m = 3;
            let bp = frame_p(&p).unwrap();
            let bb = frame_b_s1(&p).unwrap();
            let (y1, y2) = (p.y.coord(1), p.y.coord(2));
            let pm = bb.vector(m).scale(y1).sub(&bb.vector(m + 1).scale(y2));
            let pm1 = bb.vector(m).scale(y2).add(&bb.vector(m + 1).scale(y1));
            assert!(bp.vector(m).sub(&pm).max_abs() < 1e-15);
            assert!(bp.vector(m + 1).sub(&pm1).max_abs() < 1e-15);
            for i in 1..m {
                assert!(bp.vector(i).sub(bb.vector(i)).max_abs() < 1e-15);
            }
        }
    }

    #[test]
    fn coframe_duality_and_refusal() {
        let p = sample_point(3, 3, 8).unwrap();
        let f = frame_b_s3(&p).unwrap();
        let cf = coframe(&f).unwrap();
        let pairing = cf.pairing(&f);
        for (a, row) in pairing.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let target = if a == b { 1.0 } else { 0.0 };
                assert!((v - target).abs() < 1e-12);
            }
        }

        let quat = quaternion_fields(&p.y).unwrap();
        let scaled: Vec<_> = quat.iter().map(|v| v.scale(2.0)).collect();
        let generic = frame_product(&p, &scaled).unwrap();
        assert!(matches!(
            coframe(&generic),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn coframe_closed_forms_on_s1_fiber() {
        // b^i acts as dx_i + x_i dtheta
        for p in sample_points(2, 1, 51, 10).unwrap() {
            let f = frame_b_s1(&p).unwrap();
            let cf = coframe(&f).unwrap();
            let dtheta = torsion_components(p.y.coords());
            // try the covectors on an arbitrary tangent vector
            let probe = {
                let u = meridian(2, &p.x).unwrap().xpart;
                let w: Vec<f64> = dtheta.iter().map(|t| 0.7 * t).collect();
                AmbientVector::new(u, w)
            };
            for i in 1..=3 {
                let lhs = cf.apply(i, &probe);
                let rhs = probe.xpart[i - 1] + p.x.coord(i) * dot(&probe.ypart, &dtheta);
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn change_of_basis_is_orthogonal_and_transforms_b_to_p() {
        for (m, n) in [(2, 1), (5, 1), (2, 3), (4, 3)] {
            for p in sample_points(m, n, 60, 20).unwrap() {
                let a = change_of_basis(&p).unwrap();
                assert!(a.orthogonality_residual() < 1e-12);
                let b = if n == 1 {
                    frame_b_s1(&p).unwrap()
                } else {
                    frame_b_s3(&p).unwrap()
                };
                let transformed = a.apply(&b).unwrap();
                let fp = frame_p(&p).unwrap();
                for (u, v) in transformed.iter().zip(fp.vectors()) {
                    assert!(u.sub(v).max_abs() < 1e-12);
                }
            }
        }
        let p = sample_point(2, 5, 1).unwrap();
        assert!(change_of_basis(&p).is_err());
    }

    #[test]
    fn change_of_basis_identity_at_fiber_pole() {
        let p = north_product(3, 1);
        let a = change_of_basis(&p).unwrap();
        for r in 0..a.size() {
            for c in 0..a.size() {
                let target = if r == c { 1.0 } else { 0.0 };
                assert!((a.entry(r, c) - target).abs() < 1e-15);
            }
        }
        let p = north_product(3, 3);
        let a = change_of_basis(&p).unwrap();
        assert!(a.orthogonality_residual() < 1e-15);
        for r in 0..a.size() {
            assert!((a.entry(r, r) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_isomorphism_inverse_gives_frame_p() {
        for (m, n) in [(2, 1), (3, 3), (4, 5), (1, 3)] {
            for p in sample_points(m, n, 70, 10).unwrap() {
                let chain = ChainIsomorphism::new(&p).unwrap();
                let basis = chain.inverse_standard_basis();
                let fp = frame_p(&p).unwrap();
                assert_eq!(basis.len(), fp.len());
                for (u, v) in basis.iter().zip(fp.vectors()) {
                    assert!(u.sub(v).max_abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn chain_isomorphism_round_trip_and_isometry() {
        let p = sample_point(3, 3, 77).unwrap();
        let chain = ChainIsomorphism::new(&p).unwrap();
        let f = frame_p(&p).unwrap();
        for v in f.vectors() {
            let (head, tail) = chain.forward(v).unwrap();
            let back = chain.inverse(&head, &tail).unwrap();
            assert!(back.sub(v).max_abs() < 1e-12);
            // isometry: image norm matches
            let img: f64 = head.iter().chain(&tail).map(|c| c * c).sum();
            assert!((img - v.dot(v)).abs() < 1e-12);
        }
        // forward rejects non-tangent vectors
        let radial = AmbientVector::new(p.x.coords().to_vec(), vec![0.0; 4]);
        assert!(chain.forward(&radial).is_err());
    }
}

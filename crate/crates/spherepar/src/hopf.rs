//! The quotient of R^{m+1} minus the origin by the dilation x -> e^{2*pi} x,
//! identified with S^m x S^1 through p(x) = (x/|x|, log|x| mod 2*pi).
//!
//! The meridian frame on S^m x S^1 arises as the pushforward of the
//! dilation-equivariant frame |x| d/dx_i upstairs; this module implements
//! the projection, the closed-form pushforward, the pushed frame, and the
//! coordinate-permutation equivariance of the construction.

use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frames::frame_b_s1;
use crate::geometry::{gaussian_vector, AmbientVector, Frame, ProductPoint, SpherePoint};
use crate::tol;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// A point of R^{m+1} minus the origin, upstairs of the quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct UpstairsPoint {
    coords: Vec<f64>,
}

impl UpstairsPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionTooSmall(coords.len().saturating_sub(1)));
        }
        let n = dot(&coords, &coords).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        dot(&self.coords, &self.coords).sqrt()
    }

    pub fn m(&self) -> usize {
        self.coords.len() - 1
    }
}

/// p(x) = (x/|x|, log|x| mod 2*pi), with the angle stored only through its
/// embedded (cos, sin) pair so the branch choice never leaks into results.
pub fn project(x: &UpstairsPoint) -> ProductPoint {
    let r = x.norm();
    let dir = SpherePoint::normalized(x.coords().to_vec()).expect("|x| > 0 by construction");
    let t = r.ln().rem_euclid(TAU);
    let circle = SpherePoint::new(vec![t.cos(), t.sin()]).expect("cos/sin pair is unit");
    ProductPoint::new(dir, circle)
}

/// The differential of [`project`] applied to an ambient vector v at x:
///
///   p_* v = ( (v - w(v) x) / |x| ,  w(v) d_theta ),   w(v) = <x, v> / |x|^2,
///
/// with d_theta embedded as (-y_2, y_1) at the projected circle position.
pub fn pushforward(x: &UpstairsPoint, v: &[f64]) -> Result<AmbientVector> {
    if v.len() != x.coords().len() {
        return Err(Error::AmbientMismatch(format!(
            "vector length {} does not match point length {}",
            v.len(),
            x.coords().len()
        )));
    }
    let r2 = dot(x.coords(), x.coords());
    let r = r2.sqrt();
    let omega = dot(x.coords(), v) / r2;
    let xpart: Vec<f64> = v
        .iter()
        .zip(x.coords())
        .map(|(vi, xi)| (vi - omega * xi) / r)
        .collect();
    let downstairs = project(x);
    let (c, s) = (downstairs.y.coord(1), downstairs.y.coord(2));
    Ok(AmbientVector::new(xpart, vec![-s * omega, c * omega]))
}

/// The pushforward of the equivariant frame |x| d/dx_i: equals the meridian
/// frame at the projected point, at any radius.
pub fn pushed_frame(x: &UpstairsPoint) -> Result<Frame> {
    let len = x.coords().len();
    let r = x.norm();
    let base = project(x);
    let mut vectors = Vec::with_capacity(len);
    for i in 0..len {
        let mut v = vec![0.0; len];
        v[i] = r;
        vectors.push(pushforward(x, &v)?);
    }
    Frame::new(crate::geometry::FrameKind::BS1, base, vectors)
}

/// Central finite-difference Jacobian of [`project`] at x, as a list of
/// columns (one ambient vector per upstairs coordinate direction). The
/// independent numeric cross-check of [`pushforward`].
pub fn projection_jacobian_fd(x: &UpstairsPoint, step: f64) -> Vec<AmbientVector> {
    let len = x.coords().len();
    let mut cols = Vec::with_capacity(len);
    for i in 0..len {
        let mut plus = x.coords().to_vec();
        let mut minus = x.coords().to_vec();
        plus[i] += step;
        minus[i] -= step;
        let pp = project(&UpstairsPoint::new(plus).expect("still away from origin"));
        let pm = project(&UpstairsPoint::new(minus).expect("still away from origin"));
        let dx: Vec<f64> = pp
            .x
            .coords()
            .iter()
            .zip(pm.x.coords())
            .map(|(a, b)| (a - b) / (2.0 * step))
            .collect();
        let dy: Vec<f64> = pp
            .y
            .coords()
            .iter()
            .zip(pm.y.coords())
            .map(|(a, b)| (a - b) / (2.0 * step))
            .collect();
        cols.push(AmbientVector::new(dx, dy));
    }
    cols
}

/// Max residual between the finite-difference Jacobian columns and the
/// closed-form pushforward of the coordinate directions.
pub fn pushforward_fd_residual(x: &UpstairsPoint) -> Result<f64> {
    let fd = projection_jacobian_fd(x, tol::FD_STEP);
    let len = x.coords().len();
    let mut res = 0.0f64;
    for (i, col) in fd.iter().enumerate() {
        let mut e = vec![0.0; len];
        e[i] = 1.0;
        let closed = pushforward(x, &e)?;
        res = res.max(col.sub(&closed).max_abs());
    }
    Ok(res)
}

/// Deterministic batch of upstairs points with radii in (lo, hi).
pub fn sample_upstairs(m: usize, seed: u64, count: usize, lo: f64, hi: f64) -> Vec<UpstairsPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let dir = gaussian_vector(&mut rng, m + 1);
            let norm = dot(&dir, &dir).sqrt();
            if norm < 1e-8 {
                continue;
            }
            let r: f64 = rng.random_range(lo..hi);
            break UpstairsPoint::new(dir.iter().map(|c| c * r / norm).collect())
                .expect("nonzero by construction");
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Permutation equivariance
// ---------------------------------------------------------------------------

/// A coordinate permutation of the x factor of S^m x S^1 together with its
/// differential. Satisfies df(b_{pi(i)} at q) = b_i at f(q).
#[derive(Debug, Clone)]
pub struct PermutationAction {
    /// 1-based images: the k-th output coordinate is input coordinate pi[k-1].
    pi: Vec<usize>,
}

impl PermutationAction {
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let len = pi.len();
        let mut seen = vec![false; len];
        for &v in &pi {
            if v < 1 || v > len || seen[v - 1] {
                return Err(Error::InvalidPermutation { len });
            }
            seen[v - 1] = true;
        }
        Ok(Self { pi })
    }

    pub fn images(&self) -> &[usize] {
        &self.pi
    }

    /// Where index i goes: pi(i), 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.pi[i - 1]
    }

    fn permute(&self, values: &[f64]) -> Vec<f64> {
        self.pi.iter().map(|&src| values[src - 1]).collect()
    }

    /// The induced map on S^m x S^1: permutes x, leaves the circle alone.
    pub fn apply_point(&self, point: &ProductPoint) -> Result<ProductPoint> {
        if point.x.coords().len() != self.pi.len() {
            return Err(Error::AmbientMismatch(format!(
                "permutation of {} coordinates applied to a point with {}",
                self.pi.len(),
                point.x.coords().len()
            )));
        }
        Ok(ProductPoint::new(
            SpherePoint::new(self.permute(point.x.coords()))?,
            point.y.clone(),
        ))
    }

    /// The differential: permutes the x components of tangent vectors.
    pub fn apply_vector(&self, v: &AmbientVector) -> Result<AmbientVector> {
        if v.xpart.len() != self.pi.len() {
            return Err(Error::AmbientMismatch(format!(
                "permutation of {} coordinates applied to a vector with {}",
                self.pi.len(),
                v.xpart.len()
            )));
        }
        Ok(AmbientVector::new(self.permute(&v.xpart), v.ypart.clone()))
    }

    /// Residual of the equivariance identity df(b_{pi(i)}) = b_i at the
    /// image point, maximized over i.
    pub fn equivariance_residual(&self, point: &ProductPoint) -> Result<f64> {
        let here = frame_b_s1(point)?;
        let image_point = self.apply_point(point)?;
        let there = frame_b_s1(&image_point)?;
        let mut res = 0.0f64;
        for i in 1..=self.pi.len() {
            let moved = self.apply_vector(here.vector(self.image(i)))?;
            res = res.max(moved.sub(there.vector(i)).max_abs());
        }
        Ok(res)
    }
}

/// Deterministic random permutation of 1..=len.
pub fn sample_permutation(len: usize, rng: &mut ChaCha8Rng) -> PermutationAction {
    let mut pi: Vec<usize> = (1..=len).collect();
    // Fisher-Yates
    for i in (1..len).rev() {
        let j = rng.random_range(0..=i);
        pi.swap(i, j);
    }
    PermutationAction::new(pi).expect("shuffle of 1..=len is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_point;

    #[test]
    fn project_scales_and_wraps() {
        let x = UpstairsPoint::new(vec![2.0, 0.0, 0.0]).unwrap();
        let p = project(&x);
        assert_eq!(p.x.coords(), &[1.0, 0.0, 0.0]);
        let t = 2.0f64.ln();
        assert!((p.y.coord(1) - t.cos()).abs() < 1e-15);
        assert!((p.y.coord(2) - t.sin()).abs() < 1e-15);

        // unit radius lands at angle zero
        let x = UpstairsPoint::new(vec![0.0, 1.0]).unwrap();
        let p = project(&x);
        assert!((p.y.coord(1) - 1.0).abs() < 1e-15);
        assert!(p.y.coord(2).abs() < 1e-15);

        assert!(UpstairsPoint::new(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn project_is_dilation_invariant() {
        let period = std::f64::consts::TAU.exp();
        for (i, x) in sample_upstairs(3, 5, 20, 0.5, 2.0).iter().enumerate() {
            let lambda = 0.3 + 0.1 * i as f64;
            let a = UpstairsPoint::new(x.coords().iter().map(|c| c * lambda).collect()).unwrap();
            let b =
                UpstairsPoint::new(x.coords().iter().map(|c| c * lambda * period).collect())
                    .unwrap();
            let pa = project(&a);
            let pb = project(&b);
            assert!(pa
                .x
                .coords()
                .iter()
                .zip(pb.x.coords())
                .all(|(u, v)| (u - v).abs() < 1e-12));
            assert!(pa
                .y
                .coords()
                .iter()
                .zip(pb.y.coords())
                .all(|(u, v)| (u - v).abs() < 1e-9));
        }
    }

    #[test]
    fn radial_vectors_push_to_pure_rotation() {
        // at |x| = 1, the radial direction maps to d_theta exactly
        let x = UpstairsPoint::new(vec![0.6, 0.8, 0.0]).unwrap();
        let v = x.coords().to_vec();
        let pushed = pushforward(&x, &v).unwrap();
        assert!(pushed.xpart.iter().all(|c| c.abs() < 1e-15));
        let p = project(&x);
        assert!((pushed.ypart[0] + p.y.coord(2)).abs() < 1e-15);
        assert!((pushed.ypart[1] - p.y.coord(1)).abs() < 1e-15);
    }

    #[test]
    fn pushforward_matches_finite_differences() {
        for x in sample_upstairs(2, 11, 30, 0.5, 2.0) {
            assert!(pushforward_fd_residual(&x).unwrap() < tol::FD_TOL);
        }
    }

    #[test]
    fn pushed_frame_equals_meridian_frame_at_any_radius() {
        for x in sample_upstairs(3, 13, 30, 0.5, 2.0) {
            let pf = pushed_frame(&x).unwrap();
            let direct = frame_b_s1(&project(&x)).unwrap();
            for (a, b) in pf.vectors().iter().zip(direct.vectors()) {
                assert!(a.sub(b).max_abs() < 1e-12);
            }
            assert!(pf.max_gram_residual().unwrap() < 1e-12);
        }
    }

    #[test]
    fn pushed_frame_is_periodic_in_radius() {
        let period = std::f64::consts::TAU.exp();
        let x = UpstairsPoint::new(vec![1.0, 2.0, 2.0]).unwrap();
        let scaled =
            UpstairsPoint::new(x.coords().iter().map(|c| c * period).collect()).unwrap();
        let a = pushed_frame(&x).unwrap();
        let b = pushed_frame(&scaled).unwrap();
        for (u, v) in a.vectors().iter().zip(b.vectors()) {
            assert!(u.sub(v).max_abs() < 1e-9);
        }
    }

    #[test]
    fn permutation_equivariance() {
        // identity permutation acts trivially
        let p = sample_point(2, 1, 3).unwrap();
        let id = PermutationAction::new(vec![1, 2, 3]).unwrap();
        assert!(id.equivariance_residual(&p).unwrap() < 1e-15);

        // a transposition, checked directly
        let swap = PermutationAction::new(vec![2, 1, 3]).unwrap();
        assert!(swap.equivariance_residual(&p).unwrap() < 1e-12);

        // random permutations preserve the Gram matrix
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let pi = sample_permutation(4, &mut rng);
            let q = sample_point(3, 1, rng.random_range(0..1000)).unwrap();
            assert!(pi.equivariance_residual(&q).unwrap() < 1e-12);
            let f = frame_b_s1(&q).unwrap();
            let moved: Vec<_> = f
                .vectors()
                .iter()
                .map(|v| pi.apply_vector(v).unwrap())
                .collect();
            assert!(crate::geometry::gram_identity_residual(&moved).unwrap() < 1e-12);
        }

        assert!(PermutationAction::new(vec![1, 1, 3]).is_err());
        assert!(PermutationAction::new(vec![0, 1, 2]).is_err());
    }
}

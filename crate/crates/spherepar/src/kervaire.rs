//! The recursive embedding of S^{n_1} x ... x S^{n_r} into R^{n_1+...+n_r+1}.
//!
//! Each level consumes the previous embedding g, shifted so that its first
//! coordinate stays at least 1, and maps
//!
//!   (u, xi) -> (g_2(u), ..., g_last(u), xi_1 sqrt(g_1(u)), ..., xi_{n+1} sqrt(g_1(u))).
//!
//! The shift at level k is 2^k: 2 at the base level (raw sphere coordinates
//! lie in [-1, 1]), then 1 plus the previous level's coordinate bound, which
//! doubles per level. Injectivity is certified constructively by
//! [`embed_inverse`], which peels the recursion back one level at a time.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{gaussian_sphere_point, SpherePoint};
use crate::tol;

/// A point on a finite product of spheres S^{n_1} x ... x S^{n_r}.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiProductPoint {
    factors: Vec<SpherePoint>,
}

impl MultiProductPoint {
    pub fn new(factors: Vec<SpherePoint>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidConfig("a product needs at least one factor".into()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[SpherePoint] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(SpherePoint::dim).collect()
    }

    /// Dimension of the product manifold, sum of the factor dimensions.
    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(SpherePoint::dim).sum()
    }
}

/// Factor dimensions plus the per-level shift constants.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSpec {
    dims: Vec<usize>,
    shifts: Vec<f64>,
}

impl EmbeddingSpec {
    /// Shift at level k is 1 plus a bound on the magnitude of the unshifted
    /// level-k coordinates; the bound starts at 1 and satisfies
    /// b_k = 1 + 2 b_{k-1}, so the shifts are 2, 4, 8, ...
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidConfig("dims list must be nonempty".into()));
        }
        for &d in &dims {
            if d < 1 {
                return Err(Error::DimensionTooSmall(d));
            }
        }
        let mut shifts = Vec::with_capacity(dims.len());
        let mut bound = 1.0f64;
        for _ in &dims {
            let shift = 1.0 + bound;
            shifts.push(shift);
            bound += shift; // bound of the shifted level
        }
        Ok(Self { dims, shifts })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }

    pub fn levels(&self) -> usize {
        self.dims.len()
    }

    /// Length of the embedding image: sum of the dims plus one.
    pub fn output_dim(&self) -> usize {
        self.dims.iter().sum::<usize>() + 1
    }

    fn check_point(&self, point: &MultiProductPoint) -> Result<()> {
        if point.dims() != self.dims {
            return Err(Error::AmbientMismatch(format!(
                "point dims {:?} do not match embedding dims {:?}",
                point.dims(),
                self.dims
            )));
        }
        Ok(())
    }
}

/// Unshifted embedding of the first `levels` factors.
fn embed_raw(spec: &EmbeddingSpec, point: &MultiProductPoint, levels: usize) -> Vec<f64> {
    if levels == 1 {
        return point.factors()[0].coords().to_vec();
    }
    let g = embed_shifted(spec, point, levels - 1);
    let root = g[0].sqrt();
    let xi = point.factors()[levels - 1].coords();
    let mut out = Vec::with_capacity(g.len() - 1 + xi.len());
    out.extend_from_slice(&g[1..]);
    out.extend(xi.iter().map(|c| c * root));
    out
}

/// Shifted embedding of the first `levels` factors: first coordinate >= 1.
fn embed_shifted(spec: &EmbeddingSpec, point: &MultiProductPoint, levels: usize) -> Vec<f64> {
    let mut v = embed_raw(spec, point, levels);
    v[0] += spec.shifts[levels - 1];
    v
}

/// The embedding of the full product. The single-factor case is the sphere
/// inclusion followed by the first-coordinate shift; deeper products return
/// the top recursion level as written, unshifted.
pub fn embed(spec: &EmbeddingSpec, point: &MultiProductPoint) -> Result<Vec<f64>> {
    spec.check_point(point)?;
    let r = spec.levels();
    Ok(if r == 1 {
        embed_shifted(spec, point, 1)
    } else {
        embed_raw(spec, point, r)
    })
}

/// First coordinates of the shifted embeddings actually consumed by each
/// recursion level (one value per level below the top). All of them are
/// at least 1 by construction.
pub fn recursion_floors(spec: &EmbeddingSpec, point: &MultiProductPoint) -> Result<Vec<f64>> {
    spec.check_point(point)?;
    Ok((1..spec.levels())
        .map(|k| embed_shifted(spec, point, k)[0])
        .collect())
}

fn invert_raw(spec: &EmbeddingSpec, image: &[f64], levels: usize) -> Result<Vec<SpherePoint>> {
    if levels == 1 {
        let norm: f64 = image.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-7 {
            return Err(Error::NotInRange(format!(
                "base factor has norm {norm}, expected 1"
            )));
        }
        let u = SpherePoint::normalized(image.to_vec())?;
        return Ok(vec![u]);
    }
    let n_last = spec.dims[levels - 1];
    let split = image.len() - (n_last + 1);
    let (head, block) = image.split_at(split);
    let f1: f64 = block.iter().map(|c| c * c).sum();
    // the shifted previous level keeps its first coordinate >= 1
    if f1 < 1.0 - 1e-6 {
        return Err(Error::NotInRange(format!(
            "trailing block norm squared {f1} is below the shift floor 1"
        )));
    }
    let root = f1.sqrt();
    let xi = SpherePoint::normalized(block.iter().map(|c| c / root).collect())?;
    let mut g = Vec::with_capacity(head.len() + 1);
    g.push(f1 - spec.shifts[levels - 2]);
    g.extend_from_slice(head);
    let mut factors = invert_raw(spec, &g, levels - 1)?;
    factors.push(xi);
    Ok(factors)
}

/// Recovers the product point from an embedding image: the trailing block
/// norm gives the square root factor, dividing it out gives the last factor,
/// and the rest recurses. Errors when the image is not in range.
pub fn embed_inverse(spec: &EmbeddingSpec, image: &[f64]) -> Result<MultiProductPoint> {
    if image.len() != spec.output_dim() {
        return Err(Error::AmbientMismatch(format!(
            "image length {} does not match output dimension {}",
            image.len(),
            spec.output_dim()
        )));
    }
    let r = spec.levels();
    let factors = if r == 1 {
        let mut v = image.to_vec();
        v[0] -= spec.shifts[0];
        invert_raw(spec, &v, 1)?
    } else {
        invert_raw(spec, image, r)?
    };
    MultiProductPoint::new(factors)
}

/// Max-component round-trip residual of `embed_inverse(embed(point))`.
pub fn round_trip_residual(spec: &EmbeddingSpec, point: &MultiProductPoint) -> Result<f64> {
    let image = embed(spec, point)?;
    let back = embed_inverse(spec, &image)?;
    let mut res = 0.0f64;
    for (a, b) in point.factors().iter().zip(back.factors()) {
        for (u, v) in a.coords().iter().zip(b.coords()) {
            res = res.max((u - v).abs());
        }
    }
    Ok(res)
}

/// Orthonormal basis of the tangent space of S^d at u, via the Householder
/// reflection exchanging e_1 with u.
fn tangent_basis(u: &SpherePoint) -> Vec<Vec<f64>> {
    let c = u.coords();
    let len = c.len();
    let mut w: Vec<f64> = c.to_vec();
    w[0] -= 1.0;
    let w2: f64 = w.iter().map(|v| v * v).sum();
    let mut basis = Vec::with_capacity(len - 1);
    for k in 1..len {
        let mut e = vec![0.0; len];
        e[k] = 1.0;
        if w2 > 1e-24 {
            let proj = 2.0 * w[k] / w2;
            for (ei, wi) in e.iter_mut().zip(&w) {
                *ei -= proj * wi;
            }
        }
        basis.push(e);
    }
    basis
}

/// Numerical rank of the finite-difference Jacobian of [`embed`] restricted
/// to the product tangent space: singular values above [`tol::RANK_SV`].
/// Equals the manifold dimension exactly when the embedding is an immersion
/// at the point.
pub fn immersion_rank(spec: &EmbeddingSpec, point: &MultiProductPoint) -> Result<usize> {
    spec.check_point(point)?;
    let rows = spec.output_dim();
    let total = point.total_dim();
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(total);
    let h = tol::FD_STEP;
    for (fi, factor) in point.factors().iter().enumerate() {
        for dir in tangent_basis(factor) {
            let perturbed = |sign: f64| -> Result<Vec<f64>> {
                let mut factors = point.factors().to_vec();
                let moved: Vec<f64> = factor
                    .coords()
                    .iter()
                    .zip(&dir)
                    .map(|(c, d)| c + sign * h * d)
                    .collect();
                factors[fi] = SpherePoint::normalized(moved)?;
                embed(spec, &MultiProductPoint::new(factors)?)
            };
            let plus = perturbed(1.0)?;
            let minus = perturbed(-1.0)?;
            columns.push(
                plus.iter()
                    .zip(&minus)
                    .map(|(a, b)| (a - b) / (2.0 * h))
                    .collect(),
            );
        }
    }
    let jac = nalgebra::DMatrix::from_fn(rows, total, |r, c| columns[c][r]);
    let svals = jac.singular_values();
    Ok(svals.iter().filter(|s| **s > tol::RANK_SV).count())
}

/// Deterministic batch of points on the given product of spheres.
pub fn sample_multi_points(dims: &[usize], seed: u64, count: usize) -> Result<Vec<MultiProductPoint>> {
    for &d in dims {
        if d < 1 {
            return Err(Error::DimensionTooSmall(d));
        }
    }
    if dims.is_empty() {
        return Err(Error::InvalidConfig("dims list must be nonempty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            MultiProductPoint::new(
                dims.iter()
                    .map(|&d| gaussian_sphere_point(&mut rng, d))
                    .collect(),
            )
            .expect("dims checked nonempty")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case_is_shifted_inclusion() {
        let spec = EmbeddingSpec::new(vec![2]).unwrap();
        assert_eq!(spec.shifts(), &[2.0]);
        let u = SpherePoint::new(vec![0.6, 0.0, 0.8]).unwrap();
        let point = MultiProductPoint::new(vec![u]).unwrap();
        let image = embed(&spec, &point).unwrap();
        assert_eq!(image.len(), 3);
        assert!((image[0] - 2.6).abs() < 1e-15);
        assert!((image[1] - 0.0).abs() < 1e-15);
        assert!((image[2] - 0.8).abs() < 1e-15);

        let back = embed_inverse(&spec, &image).unwrap();
        assert!(round_trip_residual(&spec, &point).unwrap() < 1e-15);
        assert_eq!(back.factors()[0].coords().len(), 3);
    }

    #[test]
    fn torus_unrolls_once() {
        // (u, xi) -> (u_2, xi_1 sqrt(u_1 + 2), xi_2 sqrt(u_1 + 2))
        let spec = EmbeddingSpec::new(vec![1, 1]).unwrap();
        let u = SpherePoint::new(vec![0.6, 0.8]).unwrap();
        let xi = SpherePoint::new(vec![-0.8, 0.6]).unwrap();
        let point = MultiProductPoint::new(vec![u, xi]).unwrap();
        let image = embed(&spec, &point).unwrap();
        let root = (0.6f64 + 2.0).sqrt();
        assert_eq!(image.len(), 3);
        assert!((image[0] - 0.8).abs() < 1e-15);
        assert!((image[1] + 0.8 * root).abs() < 1e-15);
        assert!((image[2] - 0.6 * root).abs() < 1e-15);

        // trailing block carries the shifted first coordinate
        let f1: f64 = image[1] * image[1] + image[2] * image[2];
        assert!((f1 - 2.6).abs() < 1e-12);
    }

    #[test]
    fn round_trips_and_floors() {
        for dims in [vec![2, 3], vec![1, 1, 2], vec![3, 1], vec![1, 1, 1, 1]] {
            let spec = EmbeddingSpec::new(dims.clone()).unwrap();
            for p in sample_multi_points(&dims, 4, 100).unwrap() {
                assert!(round_trip_residual(&spec, &p).unwrap() < tol::ROUNDTRIP);
                for floor in recursion_floors(&spec, &p).unwrap() {
                    assert!(floor >= 1.0 - 1e-12);
                }
                assert_eq!(embed(&spec, &p).unwrap().len(), spec.output_dim());
            }
        }
    }

    #[test]
    fn corrupted_image_is_rejected() {
        let spec = EmbeddingSpec::new(vec![1, 1]).unwrap();
        let p = &sample_multi_points(&[1, 1], 9, 1).unwrap()[0];
        let mut image = embed(&spec, p).unwrap();
        // crush the trailing block below the shift floor
        image[1] *= 1e-3;
        image[2] *= 1e-3;
        assert!(matches!(
            embed_inverse(&spec, &image),
            Err(Error::NotInRange(_))
        ));
        // wrong length
        assert!(embed_inverse(&spec, &image[..2]).is_err());
    }

    #[test]
    fn immersion_ranks() {
        let spec = EmbeddingSpec::new(vec![1]).unwrap();
        let p = &sample_multi_points(&[1], 2, 1).unwrap()[0];
        assert_eq!(immersion_rank(&spec, p).unwrap(), 1);

        let spec = EmbeddingSpec::new(vec![1, 1, 2]).unwrap();
        for p in sample_multi_points(&[1, 1, 2], 6, 20).unwrap() {
            assert_eq!(immersion_rank(&spec, &p).unwrap(), 4);
        }

        let spec = EmbeddingSpec::new(vec![2, 3]).unwrap();
        for p in sample_multi_points(&[2, 3], 7, 20).unwrap() {
            assert_eq!(immersion_rank(&spec, &p).unwrap(), 5);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(EmbeddingSpec::new(vec![]).is_err());
        assert!(EmbeddingSpec::new(vec![2, 0]).is_err());
        let spec = EmbeddingSpec::new(vec![1, 1]).unwrap();
        let p = &sample_multi_points(&[2, 1], 3, 1).unwrap()[0];
        assert!(embed(&spec, p).is_err());
    }
}

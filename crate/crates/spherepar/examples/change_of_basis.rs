//! The two frames on S^m x S^1 and S^m x S^3 differ by an orthogonal,
//! y-dependent block rotation: P = B A. The matrix is orthogonal exactly
//! (A A^T - I lies in the sphere ideal), shown both numerically and by
//! reduction.
//!
//! Run with: cargo run --example change_of_basis

use spherepar::frames::{change_of_basis, frame_b_s3, frame_p};
use spherepar::geometry::sample_point;
use spherepar::identities::change_of_basis_poly;
use spherepar::polybracket::{SphereIdeal, SparsePoly, VarSet};
use spherepar::Result;

fn main() -> Result<()> {
    let (m, n) = (2, 3);
    let point = sample_point(m, n, 3)?;
    let a = change_of_basis(&point)?;
    println!("change-of-basis matrix at y = {:?}:", point.y.coords());
    for row in a.matrix() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:+.4}")).collect();
        println!("  [{}]", cells.join(" "));
    }
    println!("orthogonality residual: {:.3e}", a.orthogonality_residual());

    let b = frame_b_s3(&point)?;
    let p = frame_p(&point)?;
    let transformed = a.apply(&b)?;
    let mut worst = 0.0f64;
    for (u, v) in transformed.iter().zip(p.vectors()) {
        worst = worst.max(u.sub(v).max_abs());
    }
    println!("max |P - B A| over all fields: {worst:.3e}");

    // exact version: A A^T - I reduces to zero modulo the sphere relations
    let vars = VarSet::new(m, n);
    let ideal = SphereIdeal::new(vars);
    let poly = change_of_basis_poly(m, n)?;
    let size = m + n;
    let mut all_zero = true;
    for r in 0..size {
        for c in 0..size {
            let mut acc = SparsePoly::zero(vars);
            for l in 0..size {
                acc = &acc + &(&poly[r][l] * &poly[c][l]);
            }
            if r == c {
                acc = &acc - &SparsePoly::one(vars);
            }
            all_zero &= ideal.reduce(&acc).is_zero();
        }
    }
    println!(
        "A A^T - I reduces to zero in every entry: {}",
        if all_zero { "yes" } else { "NO" }
    );
    Ok(())
}

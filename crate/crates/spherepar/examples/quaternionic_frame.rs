//! The frame on S^m x S^3 built from quaternion multiplication: the three
//! fields T_1, T_2, T_3 parallelize S^3, and b_i = M_i + x_i T_1 extends
//! them over the product. Shows the non-circle bracket relations, including
//! [b_{m+2}, b_{m+3}] = -2 T.
//!
//! Run with: cargo run --example quaternionic_frame

use spherepar::frames::frame_b_s3;
use spherepar::geometry::{quaternion_fields, sample_point, torsion};
use spherepar::polybracket::{frame_as_poly, lie_bracket};
use spherepar::{FrameKind, Result};

fn main() -> Result<()> {
    let m = 2;
    let point = sample_point(m, 3, 11)?;
    let [t1, t2, t3] = quaternion_fields(&point.y)?;
    println!("quaternionic fields at y = {:?}", point.y.coords());
    println!("  T_1 = {:?}", t1.xpart);
    println!("  T_2 = {:?}", t2.xpart);
    println!("  T_3 = {:?}", t3.xpart);

    let frame = frame_b_s3(&point)?;
    println!(
        "\nframe B on S^{m} x S^3: {} fields, max |Gram - I| = {:.3e}",
        frame.len(),
        frame.max_gram_residual()?
    );

    // [b_{m+2}, b_{m+3}] = -2 T exactly, even before reduction
    let fields = frame_as_poly(FrameKind::BS3, m, 3)?;
    let bracket = lie_bracket(&fields[m + 1], &fields[m + 2]);
    let at_point = bracket.eval(&point);
    let t = torsion(&point.y)?;
    println!("\n[b_{}, b_{}] at the point:", m + 2, m + 3);
    println!("  oracle: {:?}", at_point.ypart);
    println!("  -2 T:   {:?}", t.xpart.iter().map(|c| -2.0 * c).collect::<Vec<_>>());

    // and -2T = -2 sum x_i b_i: expand in frame coefficients
    let coeffs = frame.coefficients(&at_point);
    println!("\nframe coefficients of the bracket (expect -2 x_i, then 0, 0):");
    for (i, c) in coeffs.iter().enumerate() {
        let expected = if i < m + 1 {
            -2.0 * point.x.coord(i + 1)
        } else {
            0.0
        };
        println!("  <[.,.], b_{}> = {c:+.6} (expected {expected:+.6})", i + 1);
    }
    Ok(())
}

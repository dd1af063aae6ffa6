//! Build the meridian frame b_i = M_i + x_i d_theta on S^2 x S^1, print its
//! columns at a point, and confirm orthonormality and the bracket relation
//! [b_i, b_j] = x_i b_j - x_j b_i numerically.
//!
//! Run with: cargo run --example meridian_frame_circle

use spherepar::frames::frame_b_s1;
use spherepar::geometry::sample_point;
use spherepar::identities::{closed_bracket, BracketTableKind};
use spherepar::polybracket::{frame_as_poly, lie_bracket, point_coords};
use spherepar::{FrameKind, Result};

fn main() -> Result<()> {
    let point = sample_point(2, 1, 7)?;
    println!("point: x = {:?}", point.x.coords());
    println!("       y = {:?}", point.y.coords());

    let frame = frame_b_s1(&point)?;
    println!("\nframe B on S^2 x S^1 ({} fields):", frame.len());
    for (i, v) in frame.vectors().iter().enumerate() {
        println!("  b_{} = {:?} | {:?}", i + 1, v.xpart, v.ypart);
    }
    println!("\nmax |Gram - I| = {:.3e}", frame.max_gram_residual()?);
    println!("max tangency residual = {:.3e}", frame.max_tangency_residual());

    // compare the exact Lie bracket of b_1, b_2 with the closed form
    let fields = frame_as_poly(FrameKind::BS1, 2, 1)?;
    let oracle = lie_bracket(&fields[0], &fields[1]);
    let closed = closed_bracket(BracketTableKind::BS1, 1, 2, 2, 1)?;
    let at_point = oracle.eval(&point);
    let closed_at_point = closed.to_numeric().eval(&point_coords(&point));
    println!("\n[b_1, b_2] at the point:");
    println!("  oracle:      {:?} | {:?}", at_point.xpart, at_point.ypart);
    println!(
        "  x_1 b_2 - x_2 b_1: {:?} | {:?}",
        closed_at_point.xpart, closed_at_point.ypart
    );
    println!(
        "  difference: {:.3e}",
        at_point.sub(&closed_at_point).max_abs()
    );
    Ok(())
}

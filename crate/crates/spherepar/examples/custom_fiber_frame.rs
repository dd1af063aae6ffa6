//! The product construction works over any parallelizable fiber: supply n
//! tangent, independent fields on S^n and b_i = M_i + x_i T_1 plus the
//! remaining fields give a frame on S^m x S^n. Orthonormality is inherited
//! exactly when the supplied fields are orthonormal — a rotated quaternionic
//! frame stays orthonormal, a scaled one shows up in the Gram matrix.
//!
//! Run with: cargo run --example custom_fiber_frame

use spherepar::frames::frame_product;
use spherepar::geometry::{gram, quaternion_fields, sample_point, AmbientVector};
use spherepar::Result;

fn main() -> Result<()> {
    let point = sample_point(2, 3, 19)?;
    let [t1, t2, t3] = quaternion_fields(&point.y)?;

    // rotate the three fiber fields among themselves: still orthonormal
    let (c, s) = (0.6f64, 0.8f64);
    let rotated = vec![
        t1.clone(),
        t2.scale(c).add(&t3.scale(s)),
        t3.scale(c).sub(&t2.scale(s)),
    ];
    let frame = frame_product(&point, &rotated)?;
    println!(
        "rotated fiber frame: {} fields, max |Gram - I| = {:.3e}",
        frame.len(),
        frame.max_gram_residual()?
    );

    // scale the fiber frame: the product frame is still a frame, with the
    // scaling visible in the Gram matrix
    let scaled: Vec<AmbientVector> = [t1, t2, t3].iter().map(|v| v.scale(0.5)).collect();
    let frame = frame_product(&point, &scaled)?;
    let g = gram(frame.vectors())?;
    println!("\nhalved fiber frame Gram diagonal:");
    for (i, row) in g.iter().enumerate() {
        println!("  <f_{0}, f_{0}> = {1:.6}", i + 1, row[i]);
    }
    println!(
        "(mixed fields carry 1 - x_i^2 + x_i^2/4; pure fiber fields carry 1/4)"
    );
    Ok(())
}

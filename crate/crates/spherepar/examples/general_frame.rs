//! The general orthonormal frame P on S^m x S^n for any odd n — here on
//! S^4 x S^5, where no quaternionic shortcut exists. Also derives P a second
//! way, through the pointwise isomorphism chain, and confirms both routes
//! agree.
//!
//! Run with: cargo run --example general_frame

use spherepar::frames::{frame_p, ChainIsomorphism};
use spherepar::geometry::sample_point;
use spherepar::Result;

fn main() -> Result<()> {
    let (m, n) = (4, 5);
    let point = sample_point(m, n, 23)?;
    let frame = frame_p(&point)?;
    println!(
        "frame P on S^{m} x S^{n}: {} fields at a random point",
        frame.len()
    );
    println!("max |Gram - I| = {:.3e}", frame.max_gram_residual()?);
    println!("max tangency residual = {:.3e}", frame.max_tangency_residual());

    // the first m-1 fields are meridian-plus-torsion; the rest mix the two
    // last meridians with the fiber
    for (i, v) in frame.vectors().iter().enumerate().take(2) {
        println!("p_{} = {:?} | {:?}", i + 1, v.xpart, v.ypart);
    }
    println!("...");

    // the same frame out of the isomorphism chain: the inverse images of the
    // standard basis of R^{m-1} (+) R^{n+1}
    let chain = ChainIsomorphism::new(&point)?;
    let derived = chain.inverse_standard_basis();
    let mut worst = 0.0f64;
    for (a, b) in derived.iter().zip(frame.vectors()) {
        worst = worst.max(a.sub(b).max_abs());
    }
    println!("\nchain-of-isomorphisms route vs direct formula: max difference {worst:.3e}");

    // the chain is an isometry: it preserves inner products of tangent vectors
    let (head, tail) = chain.forward(frame.vector(1))?;
    let image_norm: f64 = head.iter().chain(&tail).map(|c| c * c).sum();
    println!("|image of p_1|^2 = {image_norm:.12} (expect 1)");
    Ok(())
}

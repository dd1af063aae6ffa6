//! The dilation quotient of R^{m+1} minus the origin is S^m x S^1, and the
//! meridian frame downstairs is the pushforward of the equivariant frame
//! |x| d/dx_i upstairs. Cross-checks the closed-form differential against
//! central finite differences of the projection, away from unit radius.
//!
//! Run with: cargo run --example hopf_quotient

use spherepar::frames::frame_b_s1;
use spherepar::hopf::{
    project, pushed_frame, pushforward, pushforward_fd_residual, sample_upstairs, UpstairsPoint,
};
use spherepar::Result;

fn main() -> Result<()> {
    let x = UpstairsPoint::new(vec![1.2, -0.7, 0.9])?;
    let downstairs = project(&x);
    println!("upstairs x = {:?}, |x| = {:.6}", x.coords(), x.norm());
    println!(
        "projects to x/|x| = {:?}, circle = {:?}",
        downstairs.x.coords(),
        downstairs.y.coords()
    );

    // the radial direction becomes pure rotation of the circle factor
    let radial = pushforward(&x, x.coords())?;
    println!(
        "\npushforward of the radial direction: {:?} | {:?}",
        radial.xpart, radial.ypart
    );

    // pushed equivariant frame = meridian frame at the projected point
    let pushed = pushed_frame(&x)?;
    let direct = frame_b_s1(&downstairs)?;
    let mut worst = 0.0f64;
    for (a, b) in pushed.vectors().iter().zip(direct.vectors()) {
        worst = worst.max(a.sub(b).max_abs());
    }
    println!("pushed frame vs meridian frame: max difference {worst:.3e}");

    // finite-difference cross-check over a batch with radii in (0.5, 2)
    let mut fd_worst = 0.0f64;
    for p in sample_upstairs(2, 5, 200, 0.5, 2.0) {
        fd_worst = fd_worst.max(pushforward_fd_residual(&p)?);
    }
    println!("finite-difference Jacobian vs closed form over 200 points: {fd_worst:.3e}");
    Ok(())
}

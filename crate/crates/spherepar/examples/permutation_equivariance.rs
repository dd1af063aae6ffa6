//! Coordinate permutations of the base sphere respect the meridian frame:
//! the induced diffeomorphism of S^m x S^1 carries b_{pi(i)} to b_i. Useful
//! as a sanity transform, since it is an isometry built from nothing but
//! index shuffling.
//!
//! Run with: cargo run --example permutation_equivariance

use rand::SeedableRng;
use spherepar::frames::frame_b_s1;
use spherepar::geometry::sample_point;
use spherepar::hopf::{sample_permutation, PermutationAction};
use spherepar::Result;

fn main() -> Result<()> {
    let m = 3;
    let point = sample_point(m, 1, 31)?;

    // a fixed transposition first
    let swap = PermutationAction::new(vec![2, 1, 3, 4])?;
    println!(
        "transposition (1 2): residual of df(b_pi(i)) = b_i is {:.3e}",
        swap.equivariance_residual(&point)?
    );

    // the differential permutes tangent components, so Gram matrices survive
    let frame = frame_b_s1(&point)?;
    let moved: Vec<_> = frame
        .vectors()
        .iter()
        .map(|v| swap.apply_vector(v))
        .collect::<Result<_>>()?;
    println!(
        "Gram residual of the permuted fields: {:.3e}",
        spherepar::geometry::gram_identity_residual(&moved)?
    );

    // and a batch of random permutations
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let pi = sample_permutation(m + 1, &mut rng);
        worst = worst.max(pi.equivariance_residual(&point)?);
    }
    println!("worst residual over 100 random permutations: {worst:.3e}");
    Ok(())
}

//! The exact layer on its own: sparse polynomials over the rationals, the
//! Lie bracket, and normal-form reduction modulo the sphere relations.
//! Identities that hold only on the manifold reduce to zero; identities
//! that fail leave a nonzero normal form you can read.
//!
//! Run with: cargo run --example exact_polynomials

use spherepar::polybracket::{
    lie_bracket, meridian_field, torsion_field, PolyVectorField, SparsePoly, SphereIdeal, VarSet,
};
use spherepar::Result;

fn main() -> Result<()> {
    let vars = VarSet::new(2, 1);
    let ideal = SphereIdeal::new(vars);

    // y1 t2 - y2 t1 = y1^2 + y2^2, which is 1 on the circle
    let c = &(&SparsePoly::y(vars, 1) * &SparsePoly::t(vars, 2))
        - &(&SparsePoly::y(vars, 2) * &SparsePoly::t(vars, 1));
    println!("y1 t2 - y2 t1 = {c}");
    println!("  reduces to {}", ideal.reduce(&c));

    // sum x_i M_i is zero on the sphere but not in the ambient ring
    let mut radial = PolyVectorField::zero(vars);
    for i in 1..=3 {
        radial = radial.add(&meridian_field(vars, i).scale_by(&SparsePoly::x(vars, i)));
    }
    println!("\nsum_i x_i M_i, first component: {}", radial.component(0));
    println!(
        "  reduces to {}",
        ideal.reduce(radial.component(0))
    );

    // an exact bracket: [M_1, T] vanishes because the factors are disjoint
    let b = lie_bracket(&meridian_field(vars, 1), &torsion_field(vars));
    println!(
        "\n[M_1, T] is identically zero: {}",
        if b.is_zero() { "yes" } else { "no" }
    );

    // a deliberately false identity leaves a readable witness
    let wrong = &SparsePoly::x(vars, 1) - &SparsePoly::x(vars, 2);
    let nf = ideal.reduce(&wrong);
    println!("\nx1 - x2 reduces to {nf} (not an identity, as expected)");
    Ok(())
}

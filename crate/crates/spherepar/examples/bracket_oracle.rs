//! Prove a bracket table exactly: for every pair of frame fields, the Lie
//! bracket is computed in exact rational arithmetic, the closed form is
//! subtracted, and the residual is reduced modulo the sphere relations.
//! A zero normal form for every pair is a proof on the manifold.
//!
//! Run with: cargo run --example bracket_oracle

use spherepar::identities::{verify_bracket_table, BracketTableKind, SymbolicBudget};
use spherepar::polybracket::{lie_bracket, SphereIdeal, VarSet};
use spherepar::Result;

fn main() -> Result<()> {
    // the general table on S^3 x S^5 — 45 pairs in 10 variables
    let report = verify_bracket_table(
        BracketTableKind::PGeneral,
        3,
        5,
        100,
        42,
        1e-9,
        SymbolicBudget::default(),
    )?;
    print!("{}", report.to_text());

    // a peek at the machinery: one oracle bracket and its reduction
    let vars = VarSet::new(3, 5);
    let ideal = SphereIdeal::new(vars);
    let table = spherepar::identities::BracketTable::new(BracketTableKind::PGeneral, 3, 5)?;
    let oracle = lie_bracket(&table.fields()[2], &table.fields()[5]);
    let closed = table.entry(3, 6)?;
    let diff = oracle.sub(&closed);
    println!("\n[p_3, p_6] raw residual before reduction:");
    let nonzero = diff.components().iter().filter(|c| !c.is_zero()).count();
    println!(
        "  {} of {} components nonzero off the manifold, total degree {}",
        nonzero,
        diff.components().len(),
        diff.total_degree()
    );
    let reduced = diff.reduce(&ideal);
    println!(
        "  after reduction modulo the sphere relations: {}",
        if reduced.is_zero() { "identically zero" } else { "NONZERO" }
    );
    Ok(())
}

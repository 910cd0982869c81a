//! Basic arithmetic in the cohomology ring of a Bott manifold: relations,
//! normal forms, products, and the graded basis.
//!
//! Run with: cargo run -p bott --example ring_arithmetic

use bott::{alpha, graded_basis, multiply, reduce, BottMatrix, CohomClass, Int};

fn main() -> bott::Result<()> {
    // The Hirzebruch surface: one twist, alpha_2 = x_1.
    let h = BottMatrix::from_rows(&[&[0, 1], &[0, 0]])?;
    println!("matrix:\n{}\n", h);
    println!("alpha_2 = {}", alpha(&h, 2)?);

    // The defining relation rewrites x_2^2 to alpha_2 * x_2.
    let x2_squared = reduce::<Int>(&h, &[2, 2], Int::from(1))?;
    println!("x2^2    = {}", x2_squared);

    // x_2 * (x_2 - x_1) is exactly the relation class, so it vanishes.
    let x2 = CohomClass::<Int>::var(2, 2);
    let diff = x2.sub(&CohomClass::var(2, 1))?;
    println!("x2*(x2 - x1) = {}", multiply(&h, &x2, &diff)?);

    // A stage-3 example with a nontrivial square.
    let a = BottMatrix::from_rows(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]])?;
    let u = CohomClass::<Int>::var(3, 1).add(&CohomClass::var(3, 2))?;
    println!("\nstage 3, alpha_3 = {}", alpha(&a, 3)?);
    println!("(x1 + x2)^2 = {}", multiply(&a, &u, &u)?);

    // Squarefree monomials form the additive basis in each degree.
    println!("\ngraded basis of the stage-4 ring:");
    let probe = BottMatrix::zero(4);
    for k in 0..=4 {
        let basis = graded_basis(&probe, k)?;
        let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
        println!("  degree {:>2}: {}", 2 * k, names.join(", "));
    }
    Ok(())
}

//! Degree-two structure: primitive square-zero classes, vanishing pairs and
//! their classified decompositions, all cross-checked by brute force.
//!
//! Run with: cargo run -p bott --example square_zero_and_vanishing_pairs

use bott::base_change::DecomposeOutcome;
use bott::oracle::{brute_force_square_zero, brute_force_vanishing_pairs};
use bott::{primitive_square_zero, vanishing_pair_decompose, BottMatrix};

fn main() -> bott::Result<()> {
    let samples = [
        BottMatrix::zero(2),
        BottMatrix::from_rows(&[&[0, 1], &[0, 0]])?,
        BottMatrix::from_rows(&[&[0, 2], &[0, 0]])?,
        BottMatrix::from_rows(&[&[0, 1, -2], &[0, 0, 2], &[0, 0, 0]])?,
    ];

    for a in &samples {
        println!("matrix:\n{}", a);
        let classified = primitive_square_zero(a);
        let names: Vec<String> = classified.iter().map(|u| u.to_string()).collect();
        println!("primitive square-zero classes: {}", names.join(", "));

        let mut brute = brute_force_square_zero(a, 6);
        brute.sort();
        let mut sorted = classified.clone();
        sorted.sort();
        assert_eq!(sorted, brute, "classification must match brute force");

        let pairs = brute_force_vanishing_pairs(a, 3);
        println!("{} vanishing pair(s) in the [-3, 3] box", pairs.len());
        if let Some((u, v)) = pairs.first() {
            match vanishing_pair_decompose(a, u, v)? {
                DecomposeOutcome::Decomposed(d) => {
                    println!(
                        "first pair ({}, {}) decomposes with a = {}, j = {}, w = {}",
                        u, v, d.a_coeff, d.j, d.w
                    );
                    assert_eq!(d.reconstruct(a)?, (u.clone(), v.clone()));
                }
                DecomposeOutcome::NotAPair => unreachable!("oracle pairs vanish"),
            }
        }
        println!();
    }
    Ok(())
}

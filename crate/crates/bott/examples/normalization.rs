//! Removing even exceptional twisting classes by explicit unipotent base
//! changes, step by step.
//!
//! Run with: cargo run -p bott --example normalization

use bott::{exceptional_type, normalize, verify_iso, BottMatrix, ExceptionalKind};

fn main() -> bott::Result<()> {
    // alpha_2 = 2 x_1 is twice a square-zero class, and alpha_3 = 4 x_2
    // becomes one after the first rewrite.
    let a = BottMatrix::from_rows(&[&[0, 2, 0], &[0, 0, 4], &[0, 0, 0]])?;
    println!("input:\n{}\n", a);
    for j in 1..=3 {
        let report = exceptional_type(&a, j)?;
        match report.kind {
            ExceptionalKind::None => println!("alpha_{}: not exceptional", j),
            ExceptionalKind::Exceptional { c, i } => {
                println!("alpha_{} = {} * y_{} (odd multiple)", j, c, i)
            }
            ExceptionalKind::EvenExceptional { c, i } => {
                println!("alpha_{} = {} * y_{} (even multiple)", j, c, i)
            }
        }
    }

    let (out, steps) = normalize(&a);
    println!("\n{} normalization step(s):", steps.len());
    for (k, s) in steps.iter().enumerate() {
        println!(
            "step {}: stage j={} rewrites by x_{} + ({}/2) x_{}",
            k, s.j, s.j, s.c, s.i
        );
        println!("map:\n{}", s.step_iso);
        // each step is itself a verified ring isomorphism with unit weights
        let desc = verify_iso(&s.before, &s.after, &s.step_iso)?
            .accepted()
            .expect("step maps always verify");
        println!("weights: {:?}\n", desc.q().iter().map(|q| q.to_string()).collect::<Vec<_>>());
    }
    println!("normalized matrix (no even exceptional classes left):\n{}", out);
    Ok(())
}

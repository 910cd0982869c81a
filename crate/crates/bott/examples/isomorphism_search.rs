//! Searching for graded ring isomorphisms between two different matrices,
//! with the diagonal (sigma, q) data and a brute-force cross-check.
//!
//! Run with: cargo run -p bott --example isomorphism_search

use bott::json::IsoJson;
use bott::oracle::naive_isos_pruned;
use bott::{find_isos, pontrjagin_preserved, BottMatrix, SearchMode};

fn main() -> bott::Result<()> {
    // Two stage-3 matrices defining isomorphic rings: they differ by the
    // even base change x_2 -> x_2 + x_1.
    let a = BottMatrix::from_rows(&[&[0, 2, 0], &[0, 0, 1], &[0, 0, 0]])?;
    let b = BottMatrix::from_rows(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]])?;
    println!("A:\n{}\nB:\n{}\n", a, b);

    let isos = find_isos(&a, &b, SearchMode::All)?;
    println!("{} isomorphism(s) from H*(M(A)) to H*(M(B)):", isos.len());
    for iso in &isos {
        println!("{}", iso);
        let check = pontrjagin_preserved(&a, &b, iso)?;
        assert!(check.preserved);
        println!("preserves p: {} -> {}\n", check.mapped, check.target);
    }

    // the naive column-backtracking oracle finds exactly the same set
    let naive = naive_isos_pruned(&a, &b, 6)?;
    assert_eq!(naive, isos);
    println!("naive enumeration over the [-6, 6] box agrees: {} maps", naive.len());

    // one descriptor on the wire
    if let Some(first) = isos.first() {
        println!("\nfirst descriptor as JSON:");
        println!("{}", serde_json::to_string_pretty(&IsoJson::from(first)).unwrap());
    }

    // a non-isomorphic pair yields the empty list
    let o = BottMatrix::zero(3);
    println!(
        "\nisos between the product ring and a twisted one: {}",
        find_isos(&o, &b, SearchMode::All)?.len()
    );
    Ok(())
}

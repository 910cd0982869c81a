//! The automorphism group of the Hirzebruch surface's cohomology ring:
//! eight elements mapping bijectively onto the signed permutations of rank
//! two.
//!
//! Run with: cargo run -p bott --example hirzebruch_automorphisms

use bott::{find_isos, pontrjagin, signed_perm_image, BottMatrix, SearchMode};

fn main() -> bott::Result<()> {
    let h = BottMatrix::from_rows(&[&[0, 1], &[0, 0]])?;
    println!("ring: Z[x1, x2] / (x1^2, x2^2 - x1*x2)\n");

    let autos = find_isos(&h, &h, SearchMode::All)?;
    println!("{} automorphisms:", autos.len());
    for (k, iso) in autos.iter().enumerate() {
        let img = signed_perm_image(iso);
        let images: Vec<String> = (1..=2)
            .map(|j| iso.map().column_class(j).to_string())
            .collect();
        println!(
            "  {}: x1 -> {:<14} x2 -> {:<14} signs {:?}, sigma {}",
            k, images[0], images[1], img.signs, img.sigma
        );
    }

    println!("\ntotal Pontrjagin class: {}", pontrjagin(&h));
    println!("(trivial, so every automorphism preserves it on the nose)");
    Ok(())
}

//! The JSON wire formats used by the `bott` binary, produced and consumed
//! through the library types.
//!
//! Run with: cargo run -p bott --example json_interface

use bott::json::{ClassJson, DegreeTwoJson, ExceptionalJson, IsoJson, MatrixJson};
use bott::{exceptional_type, find_isos, pontrjagin, BottMatrix, DegreeTwo, SearchMode};

fn main() -> bott::Result<()> {
    let a = BottMatrix::from_rows(&[&[0, 2, -1], &[0, 0, 3], &[0, 0, 0]])?;

    // matrices: {"n": ..., "entries": [[...]]}, strictly validated on input
    let wire = MatrixJson::from(&a);
    let text = serde_json::to_string_pretty(&wire).unwrap();
    println!("matrix:\n{}\n", text);
    let parsed: MatrixJson = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.to_matrix()?, a);

    // classes: {"terms": [{"mono": [...], "num": ..}]}, den omitted when 1
    let p = pontrjagin(&a);
    println!(
        "pontrjagin class: {}",
        serde_json::to_string(&ClassJson::from(&p)).unwrap()
    );

    // degree-two elements: {"x_coeffs": [...]}
    let u = DegreeTwo::from_i64(&[1, -2, 0]);
    println!(
        "degree-two element: {}",
        serde_json::to_string(&DegreeTwoJson::from(&u)).unwrap()
    );

    // exceptional reports carry a kind tag and the (c, i) payload
    for j in 1..=3 {
        let report = exceptional_type(&a, j)?;
        println!(
            "exceptional report {}: {}",
            j,
            serde_json::to_string(&ExceptionalJson::from(&report)).unwrap()
        );
    }

    // isomorphism descriptors: matrix, sigma and the weight vector
    let autos = find_isos(&a, &a, SearchMode::All)?;
    println!(
        "\nfirst automorphism: {}",
        serde_json::to_string(&IsoJson::from(&autos[0])).unwrap()
    );
    Ok(())
}

//! Factoring ring isomorphisms into diffeomorphism-realizable pieces, and
//! the not-covered frontier where the factorization does not apply.
//!
//! Run with: cargo run -p bott --example diffeo_certificates

use bott::json::CertificateJson;
use bott::rigidity::CertFactorKind;
use bott::{certify_diffeo, find_isos, BottMatrix, CertifyOutcome, SearchMode};

fn main() -> bott::Result<()> {
    // An even pair related by the base change x_2 -> x_2 + x_1: every
    // isomorphism is certified.
    let a = BottMatrix::from_rows(&[&[0, 2, 0], &[0, 0, 2], &[0, 0, 0]])?;
    let b = BottMatrix::from_rows(&[&[0, 0, 2], &[0, 0, 2], &[0, 0, 0]])?;
    let isos = find_isos(&a, &b, SearchMode::All)?;
    println!("{} isomorphism(s) between the even pair", isos.len());
    for (k, iso) in isos.iter().enumerate() {
        match certify_diffeo(&a, &b, iso)? {
            CertifyOutcome::Certificate(cert) => {
                let kinds: Vec<&str> = cert
                    .chain
                    .iter()
                    .map(|f| match f.kind {
                        CertFactorKind::Normalization { .. } => "normalization",
                        CertFactorKind::Permutation { .. } => "permutation",
                        CertFactorKind::UpperTriangular => "upper-triangular",
                    })
                    .collect();
                println!("iso {}: certificate with factors [{}]", k, kinds.join(", "));
                cert.validate(&a, &b)?;
            }
            CertifyOutcome::NotCovered { reason } => {
                println!("iso {}: NOT COVERED ({})", k, reason)
            }
        }
    }

    // The Hirzebruch ring: the four stage-swapping automorphisms carry
    // weights (+-2, +-1/2) and fall outside the certified fragment.
    let h = BottMatrix::from_rows(&[&[0, 1], &[0, 0]])?;
    let autos = find_isos(&h, &h, SearchMode::All)?;
    let mut certified = 0;
    let mut not_covered = 0;
    for iso in &autos {
        match certify_diffeo(&h, &h, iso)? {
            CertifyOutcome::Certificate(_) => certified += 1,
            CertifyOutcome::NotCovered { .. } => not_covered += 1,
        }
    }
    println!(
        "\nHirzebruch automorphisms: {} certified, {} not covered",
        certified, not_covered
    );

    // Certificates serialize for offline re-verification.
    let first = isos.first().expect("the even pair above is isomorphic");
    if let CertifyOutcome::Certificate(cert) = certify_diffeo(&a, &b, first)? {
        let wire = CertificateJson::from(&cert);
        let text = serde_json::to_string(&wire).unwrap();
        println!("\nfirst certificate as JSON ({} bytes)", text.len());
        let back = wire.to_certificate()?;
        back.validate(&a, &b)?;
        println!("round-trips and validates offline");
    }
    Ok(())
}

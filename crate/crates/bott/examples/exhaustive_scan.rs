//! Running exhaustive checks over a whole family of matrices: Pontrjagin
//! invariance and certificates for every ordered pair.
//!
//! Run with: cargo run -p bott --example exhaustive_scan

use bott::scan::CheckKind;
use bott::{run_scan, Parity, ScanConfig};

fn main() -> bott::Result<()> {
    // all 27 stage-3 matrices with entries in {-1, 0, 1}
    let cfg = ScanConfig::new(
        3,
        1,
        Parity::All,
        [CheckKind::Pontrjagin, CheckKind::Aut],
    );
    let report = run_scan(&cfg)?;
    println!(
        "scanned {} matrices ({} ordered pairs) in {} ms",
        report.totals.matrices,
        report.totals.pairs,
        report.wall.as_millis()
    );
    println!("isomorphisms found: {}", report.totals.isos);
    println!("violations: {}", report.violations.len());
    println!("ring isomorphism classes: {}", report.iso_classes.len());
    for class in report.iso_classes.iter().filter(|c| c.len() > 1) {
        println!("  class of size {}: matrices {:?}", class.len(), class);
    }

    // the even family, with certificates for every isomorphism
    let cfg = ScanConfig::new(3, 2, Parity::EvenOnly, [CheckKind::Certify]);
    let report = run_scan(&cfg)?;
    println!(
        "\neven family: {} matrices, {} isomorphisms, not covered: {}, violations: {}",
        report.totals.matrices,
        report.totals.isos,
        report.not_covered,
        report.violations.len()
    );
    Ok(())
}

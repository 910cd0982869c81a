//! Total Pontrjagin classes, computed two ways: as prod (1 + alpha_j^2) in
//! the integral ring and as prod (1 + 4 y_j^2) in the rational ring.
//!
//! Run with: cargo run -p bott --example pontrjagin_classes

use bott::base_change::{y_class_to_x, YSquareTable};
use bott::ring::CohomClass;
use bott::{pontrjagin, BottMatrix, Int, Rat};

fn main() -> bott::Result<()> {
    let samples = [
        BottMatrix::zero(3),
        BottMatrix::from_rows(&[&[0, 1], &[0, 0]])?,
        BottMatrix::from_rows(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]])?,
        BottMatrix::from_rows(&[&[0, 2, -1], &[0, 0, 3], &[0, 0, 0]])?,
        BottMatrix::from_rows(&[
            &[0, 1, 0, 2],
            &[0, 0, -1, 1],
            &[0, 0, 0, 2],
            &[0, 0, 0, 0],
        ])?,
    ];

    for a in &samples {
        let n = a.stage();
        let p = pontrjagin(a);
        println!("stage {} matrix:\n{}", n, a);
        println!("p = {}", p);

        // independent route through the shifted basis
        let table = YSquareTable::new(a);
        let four = Rat::from(Int::from(4));
        let mut acc = CohomClass::<Rat>::one(n);
        for j in 1..=n {
            let factor = CohomClass::one(n).add(&table.expansion(j)?.scale(&four))?;
            acc = table.multiply(&acc, &factor)?;
        }
        let via_y = y_class_to_x(a, &acc)?;
        assert_eq!(via_y, p.to_rational(), "the two routes must agree");
        println!("prod (1 + 4 y_j^2) agrees with the integral computation\n");
    }
    Ok(())
}

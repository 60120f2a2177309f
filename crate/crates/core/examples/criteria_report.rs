//! Structural criteria for a net `1/(b(m) + a(m) n)`: interlacing, the
//! necessary inequalities and the exact bi-degree (2,1) classifier.
//!
//! ```text
//! cargo run --example criteria_report
//! ```

use jcmnet::criteria::{classify_21, criteria_report};
use jcmnet::ratpoly::{int, ratio, FactoredPoly, TwoVarPoly};

fn main() -> jcmnet::Result<()> {
    let grid: Vec<_> = [0, 1, 2, 5, 10, 100].iter().map(|&x| int(x)).collect();

    let interlacing = TwoVarPoly::monic_int(&[1, 3], &[2]);
    println!("{interlacing}\n{}\n", criteria_report(&interlacing, &grid)?);

    let outside = TwoVarPoly::new(
        FactoredPoly::new(int(2), vec![int(1), int(2)])?,
        FactoredPoly::new(ratio(1, 2), vec![int(5)])?,
    )?;
    println!("{outside}\n{}\n", criteria_report(&outside, &grid)?);

    // b1 <= a1 <= b2 decides the (2,1) case exactly
    for a1 in [ratio(1, 2), int(1), int(2), int(3), int(4)] {
        let class = classify_21(&int(1), &int(1), &int(3), &int(1), &a1)?;
        println!("b = (x+1)(x+3), a = x+{a1}: {class:?}");
    }
    Ok(())
}

//! The cubic counterexample families: locate each sign change exactly and
//! confirm a violation certificate past the threshold.
//!
//! ```text
//! cargo run --release --example scan_family
//! ```

use jcmnet::counterex::{b_grid, family_scan, threshold_bisect, Family};
use jcmnet::ratpoly::{format_rational, int, ratio};
use jcmnet::Window;

fn main() -> jcmnet::Result<()> {
    for (family, lo, hi) in [(Family::Family1, 4, 6), (Family::Family2, 8, 9)] {
        let t = threshold_bisect(family, &int(lo), &int(hi), &ratio(1, 1_000_000))?;
        println!(
            "{family:?}: condition changes sign in {t} after {} halvings",
            t.iterations
        );
    }

    let grid = b_grid(&int(7), &int(10), &ratio(1, 2))?;
    let rows = family_scan(Family::Family2, &grid, Some(Window::new(2, 2)?))?;
    println!("\n{:>6} {:>5} {:>10}", "b", "sign", "2x2");
    for r in rows {
        let verdict = r
            .window_verdict
            .map_or("-".to_string(), |v| format!("{v:?}"));
        println!("{:>6} {:>5} {verdict:>10}", format_rational(&r.b), r.sign);
    }
    Ok(())
}

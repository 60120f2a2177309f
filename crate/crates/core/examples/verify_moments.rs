//! Numerical check that each partial-fraction term yields a moment
//! sequence: the measure built from the weight reproduces `t^{A/(m+a)}`.
//!
//! ```text
//! cargo run --release --example verify_moments
//! ```

use jcmnet::decomp::partial_fractions;
use jcmnet::moments::{
    log_moment_identity, measure_moment, moment_representation_check, WeightParams,
};
use jcmnet::ratpoly::{format_rational, ratio, TwoVarPoly};

fn main() -> jcmnet::Result<()> {
    for k in 1..=3 {
        let c = log_moment_identity(k, &ratio(1, 2), 1)?;
        println!("log-moment k={k}: {:.15} vs {:.15}", c.lhs.value, c.rhs);
    }

    let p = TwoVarPoly::monic_int(&[1, 4, 6], &[2, 5]);
    for (m, n) in [(0, 0), (2, 1), (5, 3)] {
        let c = moment_representation_check(&p, m, n, 1e-10)?;
        println!("1/p({m},{n}) = {:.15}, integral {:.15}", c.rhs, c.lhs.value);
    }

    let pf = partial_fractions(&p.b, &p.a)?;
    println!(
        "\n{:>6} {:>6} {:>4} {:>20} {:>10}",
        "pole", "t", "m", "moment", "error"
    );
    for r in &pf.residues {
        for t in [0.1, 0.9] {
            let wp = WeightParams::new(r.value.clone(), r.root.clone(), t)?;
            for m in [0, 3, 10] {
                let got = measure_moment(&wp, m, 1e-10)?;
                let err = (got.value - wp.moment_target(m)).abs();
                println!(
                    "{:>6} {t:>6} {m:>4} {:>20.15} {err:>10.2e}",
                    format_rational(&r.root),
                    got.value
                );
            }
        }
    }
    Ok(())
}

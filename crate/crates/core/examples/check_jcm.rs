//! Window check of joint complete monotonicity for two nets: one whose roots
//! interlace and one from the cubic counterexample family.
//!
//! ```text
//! cargo run --example check_jcm
//! ```

use jcmnet::cmnet::Window;
use jcmnet::ratpoly::{format_rational, TwoVarPoly};
use jcmnet::{jcm_check, separate_cm_check};

fn main() -> jcmnet::Result<()> {
    let window = Window::square(12)?;

    // roots 1 < 2 < 3 interlace, so every difference has the right sign
    let good = TwoVarPoly::monic_int(&[1, 3], &[2]);
    let cert = jcm_check(&good, window);
    println!("{good}: {}", cert.verdict);

    // b = (x+9)^3, a = x+1 is separately CM yet fails the mixed test
    let bad = TwoVarPoly::monic_int(&[9, 9, 9], &[1]);
    let small = Window::new(2, 2)?;
    println!(
        "{bad}: separate CM {}",
        separate_cm_check(&bad, small).verdict
    );
    let cert = jcm_check(&bad, small);
    println!(
        "{bad}: joint {} with {} violations",
        cert.verdict, cert.violation_count
    );
    for w in &cert.violations {
        println!(
            "  Delta^{:?} (1/p) at {:?} = {}",
            w.beta,
            w.alpha,
            format_rational(&w.value)
        );
    }

    println!(
        "\ncertificate as JSON:\n{}",
        serde_json::to_string_pretty(&cert)?
    );
    Ok(())
}

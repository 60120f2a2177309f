//! Weighted shift built from `beta_m = 1/p(m, n)`: contraction, moment
//! evidence for subnormality, the self-commutator tail and the spectral
//! radius.
//!
//! ```text
//! cargo run --release --example shift_report
//! ```

use jcmnet::ratpoly::{format_rational, TwoVarPoly};
use jcmnet::shifts::{
    build_profile, essential_normality_report, norm_z_sq_closed_form, spectral_radius_estimate,
    subnormal_contraction_check, unitary_equivalence_witness,
};

fn main() -> jcmnet::Result<()> {
    let p = TwoVarPoly::monic_int(&[1, 3], &[2]);
    let profile = build_profile(&p, 1, 1000)?;

    let sub = subnormal_contraction_check(&profile, 30)?;
    println!(
        "contraction: {}, 30-term moment check: {}",
        sub.contraction, sub.moment_certificate.verdict
    );

    let tail = essential_normality_report(&profile)?;
    println!(
        "self-commutator tail from m = {}: max |d_m| = {:.3e}, log-log slope {:.3}",
        tail.tail_start,
        tail.tail_max_abs,
        tail.decay_exponent.unwrap_or(f64::NAN)
    );

    let est = spectral_radius_estimate(&profile, &[1, 4, 16, 64], 100_000)?;
    for (m, r) in &est.per_power {
        println!("||T^{m}||^(1/{m}) >= {r:.9}");
    }

    println!(
        "||z||^2 = {} (closed form {})",
        format_rational(&profile.norm_z_sq),
        format_rational(&norm_z_sq_closed_form(&p, 1))
    );

    let q = TwoVarPoly::monic_int(&[2, 4], &[3]);
    let eq = unitary_equivalence_witness(&p, &q, 1, 20)?;
    println!(
        "shifts for {p} and {q} identical weights: {} (first difference at {:?})",
        eq.identical_weights, eq.first_difference
    );
    Ok(())
}

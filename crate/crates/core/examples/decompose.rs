//! Exact partial fractions of `b/a`, each verified by rebuilding `b`
//! coefficient by coefficient.
//!
//! ```text
//! cargo run --example decompose
//! ```

use jcmnet::decomp::{
    cubic_over_linear, has_interlacing_signs, partial_fractions, quotient_residue_decompose,
    reconstruct_and_verify,
};
use jcmnet::ratpoly::{format_rational, FactoredPoly};

fn main() -> jcmnet::Result<()> {
    let b = FactoredPoly::monic_int(&[1, 4, 6]);
    let a = FactoredPoly::monic_int(&[2, 5]);
    let pf = partial_fractions(&b, &a)?;
    println!("b = {b}, a = {a}");
    println!(
        "c0 = {}, c = {}",
        format_rational(&pf.c0),
        format_rational(&pf.c)
    );
    for r in &pf.residues {
        println!(
            "  A = {} at pole -{}",
            format_rational(&r.value),
            format_rational(&r.root)
        );
    }
    println!(
        "interlacing sign pattern: {}",
        has_interlacing_signs(&pf, true)
    );
    println!(
        "rebuilds b exactly: {}",
        reconstruct_and_verify(&pf, &b, &a).is_ok()
    );

    // deg a < deg b - 1 leaves a polynomial quotient
    let b = FactoredPoly::monic_int(&[1, 2, 3]);
    let a = FactoredPoly::monic_int(&[4]);
    let qr = quotient_residue_decompose(&b, &a)?;
    let closed = cubic_over_linear(&b, &a)?;
    println!("\nb = {b}, a = {a}");
    println!(
        "quotient {} with residue {}",
        qr.quotient,
        format_rational(&qr.residues[0].value)
    );
    println!(
        "closed form agrees: {}",
        qr.quotient == closed.quotient && qr.residues == closed.residues
    );
    Ok(())
}

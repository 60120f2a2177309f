//! Recomputes every headline claim and writes one JSON file per claim plus
//! a CSV summary.
//!
//! ```text
//! cargo run --release --example reproduce_claims -- [OUTDIR]
//! ```

use std::path::PathBuf;

use jcmnet::cli::reproduce_claims;

fn main() -> jcmnet::Result<()> {
    let outdir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("jcmnet_reproduce"));
    let claims = reproduce_claims(&outdir, 0)?;
    for c in &claims {
        println!(
            "{} {:<34} {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    println!("written to {}", outdir.display());
    if claims.iter().any(|c| !c.pass) {
        std::process::exit(1);
    }
    Ok(())
}

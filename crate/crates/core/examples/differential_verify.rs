//! Random joins checked against the explicit graph, plus a negative control.

use hjoin::cli::verify_random;
use hjoin::io::parse_inline;
use hjoin::join::{verify_with, VerifyOptions};
use hjoin::Tolerances;

fn main() -> hjoin::Result<()> {
    let tol = Tolerances::default();
    let summary = verify_random(42, 100, &tol, VerifyOptions::default())?;
    println!(
        "{} / {} random joins agree with the dense oracle",
        summary.passed, summary.trials
    );

    let spec = parse_inline("P3[K1,3;K2;P3]")?.into_spec()?;
    let bad = verify_with(
        &spec,
        &tol,
        VerifyOptions {
            corrupt_assoc: true,
        },
    )?;
    println!("perturbed associated matrix:");
    for c in &bad.checks {
        println!("  {:<12} {:<5} {}", c.name, c.passed, c.detail);
    }
    assert!(!bad.passed());
    Ok(())
}

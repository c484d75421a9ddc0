//! Spectrum, characteristic polynomial and associated matrix of P3[K1,3; K2; P3].

use hjoin::io::parse_inline;
use hjoin::spectral::{matching_distance, sym_eigenvalues};
use hjoin::{hjoin_explicit, JoinAnalysis, Tolerances};

fn main() -> hjoin::Result<()> {
    let spec = parse_inline("P3[K1,3;K2;P3]")?.into_spec()?;
    let tol = Tolerances::default();
    let a = JoinAnalysis::new(&spec, &tol)?;

    println!(
        "associated matrix ({} x {}):",
        a.assoc.size(),
        a.assoc.size()
    );
    for row in a.assoc.matrix.to_decimal_rows() {
        println!("  [{}]", row.join(", "));
    }
    println!("charpoly: {}", a.charpoly()?);

    let s = a.spectrum(&tol)?;
    for e in &s.entries {
        let origins: Vec<String> = e.origins.iter().map(|o| o.to_string()).collect();
        println!(
            "  {:>10.6}  x{}  {}",
            e.value,
            e.multiplicity,
            origins.join("+")
        );
    }

    let g = hjoin_explicit(&spec);
    let oracle = sym_eigenvalues(&g.adjacency_f64())?;
    let d = matching_distance(&s.expand(), &oracle).unwrap();
    println!("order {}, distance to dense solve {d:.2e}", g.order());
    assert_eq!(a.charpoly()?, g.adjacency().charpoly_exact()?);
    Ok(())
}

//! Exact spectra of lexicographic powers of the Petersen graph.

use hjoin::lexpow::{lex_power_explicit, lex_power_regular, order_string};
use hjoin::spectral::{matching_distance, sym_eigenvalues};
use hjoin::Graph;

fn main() -> hjoin::Result<()> {
    let h = Graph::petersen();
    for k in 1..=3 {
        let s = lex_power_regular(&h, k)?;
        println!(
            "k = {k}: order {}, degree {}",
            order_string(h.order(), k),
            s.degree
        );
        for e in &s.entries {
            println!(
                "  {:>6} x{:<6} levels {:?}",
                e.value.to_string(),
                e.multiplicity,
                e.levels
            );
        }
    }

    // dense check where the explicit graph is still small
    let s = lex_power_regular(&h, 2)?;
    let oracle = sym_eigenvalues(&lex_power_explicit(&h, 2)?.adjacency_f64())?;
    println!(
        "k = 2 distance to dense solve {:.2e}",
        matching_distance(&s.to_spectrum().expand(), &oracle).unwrap()
    );

    let big = lex_power_regular(&h, 100)?;
    println!(
        "k = 100: {} distinct values, multiplicities sum to {} digits",
        big.entries.len(),
        big.multiplicity_sum().to_string().len()
    );
    Ok(())
}

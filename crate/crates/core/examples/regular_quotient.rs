//! Joins of regular graphs: the associated matrix collapses to a p x p quotient.

use hjoin::spectral::{matching_distance, sym_eigenvalues};
use hjoin::{regular_quotient, Graph, JoinAnalysis, JoinSpec, Tolerances};

fn main() -> hjoin::Result<()> {
    let spec = JoinSpec::new(
        Graph::cycle(4)?,
        vec![
            Graph::complete(3),
            Graph::cycle(5)?,
            Graph::petersen(),
            Graph::empty(2),
        ],
    )?;
    let q = regular_quotient(&spec)?;
    println!("quotient matrix:");
    for r in q.row_iter() {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:8.4}")).collect();
        println!("  {}", cells.join(" "));
    }
    let from_q = sym_eigenvalues(&q)?;
    let from_w = JoinAnalysis::new(&spec, &Tolerances::default())?.assoc_eigenvalues()?;
    println!("quotient eigenvalues {from_q:.6?}");
    println!(
        "distance to associated spectrum {:.2e}",
        matching_distance(&from_q, &from_w).unwrap()
    );
    Ok(())
}

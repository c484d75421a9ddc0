//! Walk matrix, main polynomial and main/non-main split of single graphs.

use hjoin::{classify_spectrum, walk_data, Graph, Tolerances};

fn main() -> hjoin::Result<()> {
    let graphs = [
        ("K1,3", Graph::complete_bipartite(1, 3)),
        ("P4", Graph::path(4)),
        ("petersen", Graph::petersen()),
        (
            "K1 + K2",
            Graph::complete(1).disjoint_union(&Graph::complete(2)),
        ),
    ];
    for (name, g) in graphs {
        let wd = walk_data(&g)?;
        let counts: Vec<String> = wd.walk_counts.iter().map(|c| c.to_string()).collect();
        println!(
            "{name}: s = {}, walks [{}], main poly {}",
            wd.s,
            counts.join(", "),
            wd.main_poly()
        );
        let c = classify_spectrum(&g, &Tolerances::default())?;
        for e in &c.eigenvalues {
            let kind = if e.main { "main" } else { "non-main" };
            println!("  {:>9.5} x{}  {kind}", e.value, e.multiplicity);
        }
        assert_eq!(c.main_count(), wd.s);
    }
    Ok(())
}

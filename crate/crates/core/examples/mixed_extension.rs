//! Mixed extensions: blow vertices up into cliques (a > 0) or cocliques (a < 0).

use hjoin::lexpow::{count_outside_trivial, mixed_extension};
use hjoin::{hjoin_explicit, hjoin_spectrum, Graph, Tolerances};

fn main() -> hjoin::Result<()> {
    let h = Graph::path(4);
    for a in [vec![3, -2, 1, -4], vec![-5, -5, -5, -5], vec![2, 2, 2, 2]] {
        let spec = mixed_extension(&h, &a)?;
        let g = hjoin_explicit(&spec);
        let s = hjoin_spectrum(&spec, &Tolerances::default())?;
        let outside = count_outside_trivial(&s, 1e-7);
        println!(
            "a = {a:?}: order {}, {} edges, {outside} eigenvalues outside {{0, -1}}",
            g.order(),
            g.size()
        );
        for e in &s.entries {
            println!("  {:>9.5} x{}", e.value, e.multiplicity);
        }
    }
    Ok(())
}

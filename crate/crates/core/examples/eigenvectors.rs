//! Full eigenbasis of a join from component eigenvectors and the associated matrix.

use hjoin::io::parse_inline;
use hjoin::{reconstruct_eigvecs, Tolerances};

fn main() -> hjoin::Result<()> {
    let spec = parse_inline("P3[K1,3;K2;P3]")?.into_spec()?;
    let b = reconstruct_eigvecs(&spec, &Tolerances::default())?;

    println!(
        "{} embedded, {} reconstructed",
        b.embedded.len(),
        b.reconstructed.len()
    );
    for e in &b.embedded {
        println!(
            "  embedded  {:>9.5} from component {}",
            e.eigenvalue, e.component
        );
    }
    for r in &b.reconstructed {
        println!("  lifted    {:>9.5}", r.rho);
    }
    println!("max residual {:.2e}", b.max_residual);
    println!(
        "max cross inner product {:.2e}",
        b.max_cross_inner_product()
    );

    let v = b.matrix();
    let gram = v.transpose() * &v;
    let off = (gram - nalgebra::DMatrix::identity(b.len(), b.len()))
        .abs()
        .max();
    println!("|V^T V - I|_max = {off:.2e}");
    Ok(())
}

//! Formula path vs dense eigensolve of the explicit join, on C_p[G(n, 1/2), ...].
//!
//! Usage: cargo run --release --example benchmark -- [p] [n]

use hjoin::cli::bench;
use hjoin::Tolerances;

fn main() -> hjoin::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let p = args.next().unwrap_or(6);
    let n = args.next().unwrap_or(32);
    let r = bench(p, n, 0.5, 3, 9, &Tolerances::default())?;
    r.print_table();
    println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
    Ok(())
}

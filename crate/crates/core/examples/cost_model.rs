//! Counted work per insertion for both strategies as the embedding grows.
//!
//! `cargo run --release --example cost_model`

use unn::bench::uniform_dataset;
use unn::{embed, EmbedConfig, Strategy};

fn main() -> unn::Result<()> {
    let (k, d) = (10, 100);
    let data = uniform_dataset(1000, d, 8)?;
    let unn1 = embed(&data, &EmbedConfig::new(k, Strategy::Unn1))?;
    let unn2 = embed(&data, &EmbedConfig::new(k, Strategy::Unn2))?;

    println!("embedded  unn1_work  unn2_work");
    for step in [1, 10, 100, 250, 500, 999] {
        println!(
            "{:<9} {:<10} {}",
            unn1.trace[step].embedded_before, unn1.trace[step].ops.work, unn2.trace[step].ops.work
        );
    }
    let (a, b) = (unn1.total_ops().work, unn2.total_ops().work);
    println!("total     {a:<10} {b}   ratio {:.2}", a as f64 / b as f64);
    Ok(())
}

//! How far the greedy heuristics land from the exhaustive optimum on small inputs.
//!
//! `cargo run --release --example oracle_gap`

use unn::{brute_force, embed, generate, EmbedConfig, GenSpec, Shape, Strategy};

fn main() -> unn::Result<()> {
    println!("seed  optimum   unn1      unn2      evaluated");
    for seed in 1..=5 {
        let data = generate(&GenSpec::new(Shape::S2d, 9, seed))?;
        let best = brute_force(&data, 2, 10)?;
        let unn1 = embed(&data, &EmbedConfig::new(2, Strategy::Unn1))?.final_dsre;
        let unn2 = embed(&data, &EmbedConfig::new(2, Strategy::Unn2))?.final_dsre;
        println!(
            "{seed:<5} {:<9.5} {:<9.5} {:<9.5} {}",
            best.best_dsre.value(),
            unn1.value(),
            unn2.value(),
            best.evaluated
        );
    }
    Ok(())
}

//! Embed a noisy 3-D S curve with both greedy strategies and plot the result.
//!
//! `cargo run --release --example embed_s_curve -- [out_dir]`

use std::path::PathBuf;

use unn::report::{plot_embedding, save_plot};
use unn::{dsre, embed, generate, EmbedConfig, GenSpec, LatentOrdering, Shape, Strategy};

fn main() -> unn::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/unn-plots".into()));
    std::fs::create_dir_all(&out).map_err(|e| unn::UnnError::Io { path: out.clone(), source: e })?;

    let data = generate(&GenSpec::new(Shape::S3d, 500, 1))?;
    let k = 5;
    let init = LatentOrdering::identity(data.len());
    println!("identity ordering dsre {}", dsre(&init, &data, k)?);
    save_plot(&plot_embedding(&data, &init, &[0, 1, 2])?, out.join("init.svg"))?;

    for (name, strategy) in [("unn1", Strategy::Unn1), ("unn2", Strategy::Unn2)] {
        let result = embed(&data, &EmbedConfig::new(k, strategy))?;
        println!("{name} dsre {}  work {}", result.final_dsre, result.total_ops().work);
        save_plot(&plot_embedding(&data, &result.ordering, &[0, 1, 2])?, out.join(format!("{name}.svg")))?;
    }
    println!("plots written to {}", out.display());
    Ok(())
}

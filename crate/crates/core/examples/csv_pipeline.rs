//! Round trip through the file formats: dataset CSV, ordering CSV, report CSV.
//!
//! `cargo run --example csv_pipeline`

use unn::io::{load_csv, load_ordering, save_csv, save_ordering};
use unn::report::compare;
use unn::{dsre, embed, generate, EmbedConfig, GenSpec, InsertionOrder, Shape, Strategy};

fn main() -> unn::Result<()> {
    let dir = std::env::temp_dir().join(format!("unn-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| unn::UnnError::Io { path: dir.clone(), source: e })?;

    let data = generate(&GenSpec::new(Shape::S3dHole, 120, 7).with_noise(0.02))?;
    save_csv(&data, dir.join("data.csv"))?;
    let data = load_csv(dir.join("data.csv"))?;

    let config = EmbedConfig::new(4, Strategy::Unn2).with_order(InsertionOrder::Shuffled { seed: 3 });
    let result = embed(&data, &config)?;
    save_ordering(&result.ordering, dir.join("ordering.csv"))?;

    let ordering = load_ordering(dir.join("ordering.csv"))?;
    println!("embedded dsre {}", result.final_dsre);
    println!("reloaded dsre {}", dsre(&ordering, &data, 4)?);

    compare("hole", &data, &[4], Some(7))?.save_csv(dir.join("report.csv"))?;
    println!("files in {}", dir.display());
    Ok(())
}

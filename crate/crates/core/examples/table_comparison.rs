//! DSRE comparison table across shapes and neighborhood sizes, written as CSV.
//!
//! `cargo run --release --example table_comparison > report.csv`

use unn::report::{compare, DsreReport};
use unn::{generate, GenSpec, Shape};

fn main() -> unn::Result<()> {
    let seed = 1;
    let mut report: Option<DsreReport> = None;
    for (label, shape) in [("2D-S", Shape::S2d), ("3D-S", Shape::S3d), ("3D-S-hole", Shape::S3dHole)] {
        let data = generate(&GenSpec::new(shape, 200, seed))?;
        let part = compare(label, &data, &[2, 5, 10], Some(seed))?;
        match report.as_mut() {
            Some(r) => r.extend(part),
            None => report = Some(part),
        }
    }
    print!("{}", report.expect("three shapes").to_csv());
    Ok(())
}

//! DSRE comparison tables and latent-order scatter plots.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::data::Dataset;
use crate::embed::{embed, Criterion, EmbedConfig, InsertionOrder, Strategy};
use crate::error::{Result, UnnError};
use crate::io::write_file;
use crate::knn::dsre;
use crate::latent::LatentOrdering;

pub const REPORT_HEADER: &str = "dataset,K,init,unn1,unn2";

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub dataset: String,
    pub k: usize,
    /// DSRE of the identity (row-order) ordering.
    pub init: f64,
    pub unn1: f64,
    pub unn2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportMeta {
    /// Seed the dataset was generated with, when known.
    pub seed: Option<u64>,
    pub criterion: Criterion,
    pub insertion_order: InsertionOrder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DsreReport {
    pub rows: Vec<ReportRow>,
    pub meta: ReportMeta,
}

impl DsreReport {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{REPORT_HEADER}")?;
        for r in &self.rows {
            writeln!(w, "{},{},{},{},{}", r.dataset, r.k, r.init, r.unn1, r.unn2)?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("report CSV is UTF-8")
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        write_file(path.as_ref(), |w| self.write_csv(w))
    }

    /// Appends the rows of `other`, keeping this report's metadata.
    pub fn extend(&mut self, other: DsreReport) {
        self.rows.extend(other.rows);
    }
}

/// Identity-ordering DSRE against both strategies for every `K`, using the
/// pointwise criterion and dataset insertion order.
pub fn compare(label: &str, data: &Dataset, ks: &[usize], seed: Option<u64>) -> Result<DsreReport> {
    if label.contains([',', '\n', '\r']) {
        return Err(UnnError::invalid(format!(
            "dataset label '{label}' contains a CSV separator"
        )));
    }
    if ks.is_empty() {
        return Err(UnnError::invalid("no neighborhood sizes given"));
    }
    let identity = LatentOrdering::identity(data.len());
    let rows = ks
        .par_iter()
        .map(|&k| {
            let init = dsre(&identity, data, k)?.value();
            let unn1 = embed(data, &EmbedConfig::new(k, Strategy::Unn1))?.final_dsre.value();
            let unn2 = embed(data, &EmbedConfig::new(k, Strategy::Unn2))?.final_dsre.value();
            Ok(ReportRow {
                dataset: label.to_string(),
                k,
                init,
                unn1,
                unn2,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DsreReport {
        rows,
        meta: ReportMeta {
            seed,
            criterion: Criterion::Pointwise,
            insertion_order: InsertionOrder::Dataset,
        },
    })
}

/// Name of the color ramp used by [`plot_embedding`].
pub const COLOR_RAMP: &str = "viridis (5-stop linear sRGB interpolation)";

const VIRIDIS: [[f64; 3]; 5] = [
    [68.0, 1.0, 84.0],
    [59.0, 82.0, 139.0],
    [33.0, 145.0, 140.0],
    [94.0, 201.0, 98.0],
    [253.0, 231.0, 37.0],
];

/// Position on the ramp for `slot` out of `m` slots: 0 for the first slot,
/// 1 for the last.
pub fn ramp_position(slot: usize, m: usize) -> f64 {
    if m <= 1 {
        0.0
    } else {
        slot as f64 / (m - 1) as f64
    }
}

/// Hex color at ramp position `t` in `[0, 1]`.
pub fn ramp_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let scaled = t * (VIRIDIS.len() - 1) as f64;
    let lo = (scaled.floor() as usize).min(VIRIDIS.len() - 2);
    let frac = scaled - lo as f64;
    let c: Vec<u8> = (0..3)
        .map(|i| (VIRIDIS[lo][i] + frac * (VIRIDIS[lo + 1][i] - VIRIDIS[lo][i])).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

const CANVAS: f64 = 600.0;
const PAD: f64 = 20.0;
const RADIUS: f64 = 3.5;
const AZIMUTH_DEG: f64 = -60.0;
const ELEVATION_DEG: f64 = 20.0;

/// Standalone SVG scatter plot of `data` on 2 or 3 of its axes, each point
/// filled by its latent slot's ramp color.
///
/// Three axes are drawn under a fixed orthographic view (azimuth −60°,
/// elevation 20°), back to front. Every point is a `<circle>` carrying
/// `data-index` and `data-slot` attributes.
pub fn plot_embedding(data: &Dataset, ordering: &LatentOrdering, axes: &[usize]) -> Result<String> {
    if data.dim() < 2 {
        return Err(UnnError::invalid("plots need at least 2 data dimensions"));
    }
    if !(axes.len() == 2 || axes.len() == 3) {
        return Err(UnnError::invalid(format!(
            "plots take 2 or 3 axes, got {}",
            axes.len()
        )));
    }
    if let Some(&bad) = axes.iter().find(|&&a| a >= data.dim()) {
        return Err(UnnError::invalid(format!(
            "axis {bad} out of range for {}-dimensional data",
            data.dim()
        )));
    }
    if !ordering.is_complete_for(data.len()) {
        return Err(UnnError::invalid(format!(
            "ordering embeds {} patterns, dataset has {}",
            ordering.len(),
            data.len()
        )));
    }

    // (pattern, x, y, depth)
    let mut points: Vec<(usize, f64, f64, f64)> = data
        .rows()
        .enumerate()
        .map(|(i, row)| {
            let (x, y, depth) = project(row, axes);
            (i, x, y, depth)
        })
        .collect();
    points.sort_by(|a, b| a.3.total_cmp(&b.3).then(a.0.cmp(&b.0)));

    let (x_lo, x_hi) = padded_range(points.iter().map(|p| p.1));
    let (y_lo, y_hi) = padded_range(points.iter().map(|p| p.2));
    let inner = CANVAS - 2.0 * PAD;
    let sx = |x: f64| PAD + (x - x_lo) / (x_hi - x_lo) * inner;
    let sy = |y: f64| CANVAS - PAD - (y - y_lo) / (y_hi - y_lo) * inner;

    let axes_label: Vec<String> = axes.iter().map(usize::to_string).collect();
    let m = ordering.len();
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(svg, "<title>latent order of {} patterns</title>", data.len());
    let _ = writeln!(
        svg,
        "<desc>axes {}; fill = latent slot, slot 0 = {}, slot {} = {}; ramp: {}</desc>",
        axes_label.join(","),
        ramp_color(0.0),
        m - 1,
        ramp_color(1.0),
        COLOR_RAMP
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>"##
    );
    let _ = writeln!(svg, r#"<g stroke="none">"#);
    for &(i, x, y, _) in &points {
        let slot = ordering.slot_of(i).expect("complete ordering");
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{RADIUS}" fill="{}" data-index="{i}" data-slot="{slot}"/>"#,
            sx(x),
            sy(y),
            ramp_color(ramp_position(slot, m)),
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

pub fn save_plot(svg: &str, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), |w| w.write_all(svg.as_bytes()))
}

/// Screen coordinates and depth (larger is nearer) of one pattern.
fn project(row: &[f64], axes: &[usize]) -> (f64, f64, f64) {
    match *axes {
        [a, b] => (row[a], row[b], 0.0),
        [a, b, c] => {
            let (az, el) = (AZIMUTH_DEG.to_radians(), ELEVATION_DEG.to_radians());
            let (p, q, r) = (row[a], row[b], row[c]);
            let x = -az.sin() * p + az.cos() * q;
            let y = -az.cos() * el.sin() * p - az.sin() * el.sin() * q + el.cos() * r;
            let depth = az.cos() * el.cos() * p + az.sin() * el.cos() * q + el.sin() * r;
            (x, y, depth)
        }
        _ => unreachable!("axes validated"),
    }
}

/// Data range widened by 5% on each side; a degenerate range becomes ±0.5.
fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

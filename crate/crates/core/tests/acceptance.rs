//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.
//!
//! Runs with `cargo test -p unn --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use unn::bench::bench;
use unn::datasets::{generate, GenSpec, Shape};
use unn::embed::{candidate_slots_unn1, candidate_slots_unn2, score_insertion};
use unn::{brute_force, dsre, embed, pointwise_error, Criterion, Dataset, EmbedConfig, LatentOrdering, Strategy};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------------------
// Independent naive DSRE: explicit latent coordinates, full sort of all
// other patterns by (latent distance, pattern index), first K averaged.
// ---------------------------------------------------------------------------

fn naive_dsre(order: &[usize], rows: &[Vec<f64>], k: usize) -> f64 {
    let n = order.len();
    let mut position = vec![0.0f64; n];
    for (slot, &p) in order.iter().enumerate() {
        position[p] = slot as f64;
    }
    let mut total = 0.0;
    for i in 0..n {
        let mut others: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| ((position[i] - position[j]).abs(), j))
            .collect();
        others.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let chosen = &others[..k.min(n - 1)];
        let mut err = 0.0;
        for (c, v) in rows[i].iter().enumerate() {
            let mean = chosen.iter().map(|&(_, j)| rows[j][c]).sum::<f64>() / chosen.len() as f64;
            err += (v - mean).powi(2);
        }
        total += err;
    }
    total / n as f64
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn random_rows(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(-5.0..5.0)).collect())
        .collect()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2010);
    let datasets = 60;
    let mut failures = Vec::new();
    let mut max_dev = 0.0f64;
    for case in 0..datasets {
        let n = rng.random_range(4..=8);
        let d = rng.random_range(1..=3);
        let k = rng.random_range(1..=3);
        let rows = random_rows(&mut rng, n, d);
        let data = Dataset::from_rows(&rows).unwrap();

        let oracle = brute_force(&data, k, 10).unwrap();
        let naive_best = all_permutations(n)
            .iter()
            .map(|p| naive_dsre(p, &rows, k))
            .fold(f64::INFINITY, f64::min);
        let greedy = embed(&data, &EmbedConfig::new(k, Strategy::Unn1)).unwrap();

        let naive_of_best = naive_dsre(oracle.best_ordering.order(), &rows, k);
        let naive_of_greedy = naive_dsre(greedy.ordering.order(), &rows, k);
        for dev in [
            (oracle.best_dsre.value() - naive_best).abs(),
            (oracle.best_dsre.value() - naive_of_best).abs(),
            (greedy.final_dsre.value() - naive_of_greedy).abs(),
        ] {
            max_dev = max_dev.max(dev);
            if dev > 1e-12 {
                failures.push(format!("case {case}: implementations differ by {dev:e}"));
            }
        }
        if greedy.final_dsre < oracle.best_dsre {
            failures.push(format!("case {case}: UNN 1 below global optimum"));
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "{datasets} datasets, max |main - naive| = {max_dev:.1e}, {:.1}s{}",
            elapsed.as_secs_f64(),
            failures.first().map(|f| format!("; {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_2() -> Outcome {
    let rows = [[0.0], [1.0], [2.0], [3.0]];
    let data = Dataset::from_rows(&rows).unwrap();
    let init = dsre(&LatentOrdering::identity(4), &data, 2).unwrap().value();
    let best = brute_force(&data, 2, 10).unwrap();
    let pass = init == 1.125 && best.best_dsre.value() == 1.125 && best.best_ordering.order() == [0, 1, 2, 3];
    outcome(
        pass,
        format!(
            "identity DSRE {init}, optimum {} at {:?}",
            best.best_dsre,
            best.best_ordering.order()
        ),
    )
}

const SEEDS: std::ops::RangeInclusive<u64> = 1..=10;
const KS: [usize; 3] = [2, 5, 10];

/// (label, seed, K, init, unn1, unn2) for every cell of the benchmark grid.
struct Cell {
    label: &'static str,
    seed: u64,
    k: usize,
    init: f64,
    unn1: f64,
    unn2: f64,
}

fn benchmark_grid() -> Vec<Cell> {
    let shapes = [(Shape::S2d, 200, "2D-S"), (Shape::S3d, 500, "3D-S"), (Shape::S3dHole, 400, "3D-S hole")];
    let mut cells = Vec::new();
    for (shape, n, label) in shapes {
        for seed in SEEDS {
            let data = generate(&GenSpec::new(shape, n, seed)).unwrap();
            let identity = LatentOrdering::identity(n);
            for k in KS {
                cells.push(Cell {
                    label,
                    seed,
                    k,
                    init: dsre(&identity, &data, k).unwrap().value(),
                    unn1: embed(&data, &EmbedConfig::new(k, Strategy::Unn1)).unwrap().final_dsre.value(),
                    unn2: embed(&data, &EmbedConfig::new(k, Strategy::Unn2)).unwrap().final_dsre.value(),
                });
            }
        }
    }
    cells
}

fn criterion_3(grid: &[Cell]) -> Outcome {
    let bad: Vec<String> = grid
        .iter()
        .filter(|c| !(c.unn1 < c.init && c.unn2 < c.init))
        .map(|c| format!("{} seed {} K={}", c.label, c.seed, c.k))
        .collect();
    let worst = grid
        .iter()
        .map(|c| c.unn1.max(c.unn2) / c.init)
        .fold(0.0, f64::max);
    outcome(
        bad.is_empty(),
        format!(
            "{} runs, {} not improved, worst final/init = {worst:.3}",
            grid.len() * 2,
            bad.len()
        ),
    )
}

fn criterion_4(grid: &[Cell]) -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for label in ["2D-S", "3D-S", "3D-S hole"] {
        for (name, pick) in [("UNN1", 0), ("UNN2", 1)] {
            let monotone = SEEDS
                .filter(|&seed| {
                    let v: Vec<f64> = KS
                        .iter()
                        .map(|&k| {
                            let c = grid.iter().find(|c| c.label == label && c.seed == seed && c.k == k).unwrap();
                            if pick == 0 { c.unn1 } else { c.unn2 }
                        })
                        .collect();
                    v.windows(2).all(|w| w[0] <= w[1])
                })
                .count();
            pass &= monotone >= 8;
            lines.push(format!("{label}/{name} {monotone}/10"));
        }
    }
    outcome(pass, lines.join(", "))
}

fn criterion_5(grid: &[Cell]) -> Outcome {
    let wins = grid.iter().filter(|c| c.unn1 <= c.unn2).count();
    let share = wins as f64 / grid.len() as f64;
    outcome(share >= 0.70, format!("UNN1 <= UNN2 in {wins}/{} cells ({:.0}%)", grid.len(), share * 100.0))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let cases = 1000;
    let mut violations = 0;
    for _ in 0..cases {
        let n = rng.random_range(3..=30);
        let d = rng.random_range(1..=4);
        let k = rng.random_range(1..=6);
        let criterion = if rng.random_bool(0.5) { Criterion::Pointwise } else { Criterion::FullDsre };
        let data = Dataset::from_rows(&random_rows(&mut rng, n, d)).unwrap();
        let mut patterns: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(patterns.as_mut_slice(), &mut rng);
        let m = rng.random_range(1..n);
        let partial = LatentOrdering::from_order(patterns[..m].to_vec()).unwrap();
        let pattern = patterns[m];
        let config = EmbedConfig::new(k, Strategy::Unn1).with_criterion(criterion);
        let best = |slots: Vec<usize>| {
            slots
                .into_iter()
                .map(|s| score_insertion(&partial, pattern, s, &data, &config).unwrap())
                .fold(f64::INFINITY, f64::min)
        };
        let unn1 = best(candidate_slots_unn1(&partial));
        let unn2 = best(candidate_slots_unn2(&partial, data.row(pattern), &data).unwrap());
        if unn1 > unn2 {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{cases} random partial states, {violations} violations"))
}

fn random_orthogonal(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<f64>> {
    // Gram-Schmidt on a Gaussian matrix
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let instances = 200;
    let (mut reversal, mut rigid, mut scaling, mut decomposition) = (0, 0, 0, 0);
    for _ in 0..instances {
        let n = rng.random_range(2..=40);
        let d = rng.random_range(1..=5);
        let k = rng.random_range(1..=8);
        let data = Dataset::from_rows(&random_rows(&mut rng, n, d)).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
        let ordering = LatentOrdering::from_order(order).unwrap();
        let base = dsre(&ordering, &data, k).unwrap().value();

        if dsre(&ordering.reversed(), &data, k).unwrap().value() != base {
            reversal += 1;
        }

        let q = random_orthogonal(&mut rng, d);
        let shift: Vec<f64> = (0..d).map(|_| rng.random_range(-100.0..100.0)).collect();
        let moved = data
            .map_rows(|row| {
                (0..d)
                    .map(|i| q[i].iter().zip(row).map(|(a, b)| a * b).sum::<f64>() + shift[i])
                    .collect()
            })
            .unwrap();
        if !rel_close(dsre(&ordering, &moved, k).unwrap().value(), base, 1e-9) {
            rigid += 1;
        }

        let alpha: f64 = rng.random_range(0.01..50.0);
        let scaled = data.map_rows(|row| row.iter().map(|v| alpha * v).collect()).unwrap();
        if !rel_close(dsre(&ordering, &scaled, k).unwrap().value(), alpha * alpha * base, 1e-9) {
            scaling += 1;
        }

        let mut sum = 0.0;
        for i in 0..n {
            sum += pointwise_error(i, &ordering, &data, k).unwrap();
        }
        if sum / n as f64 != base {
            decomposition += 1;
        }
    }
    outcome(
        reversal + rigid + scaling + decomposition == 0,
        format!(
            "{instances} instances; failures: reversal {reversal}, rigid motion {rigid}, scaling {scaling}, decomposition {decomposition}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let (n, k, d) = (1000, 10, 100);
    let model_ratio = 1_001_000.0 / 102_000.0;
    let unn1 = &bench(Strategy::Unn1, k, d, &[n], 8).unwrap()[0];
    let unn2 = &bench(Strategy::Unn2, k, d, &[n], 8).unwrap()[0];
    let total_ratio = unn1.total.work as f64 / unn2.total.work as f64;
    let step_ratio = unn1.last_step_work as f64 / unn2.last_step_work as f64;
    let within = |r: f64| r >= model_ratio / 2.0 && r <= model_ratio * 2.0;

    // per-insertion UNN 1 work against M, least squares
    let data = unn::bench::uniform_dataset(n, d, 8).unwrap();
    let trace = embed(&data, &EmbedConfig::new(k, Strategy::Unn1)).unwrap().trace;
    let xs: Vec<f64> = trace.iter().map(|r| r.embedded_before as f64).collect();
    let ys: Vec<f64> = trace.iter().map(|r| r.ops.work as f64).collect();
    let r2 = r_squared(&xs, &ys);

    outcome(
        within(total_ratio) && within(step_ratio) && r2 >= 0.99,
        format!(
            "work ratio total {total_ratio:.2}, last step {step_ratio:.2} (model {model_ratio:.2}, last step {} vs {}); per-insertion R^2 {r2:.5}",
            unn1.last_step_work, unn2.last_step_work
        ),
    )
}

fn r_squared(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    1.0 - ss_res / ss_tot
}

fn run_pipeline(dir: &Path) -> Result<(), String> {
    let bin = env!("CARGO_BIN_EXE_unn");
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let steps: Vec<Vec<String>> = vec![
        vec!["generate", "--shape", "s3d-hole", "--n", "120", "--sigma", "0.05", "--seed", "5", "--out", &p("data.csv")],
        vec!["generate", "--shape", "s2d", "--n", "8", "--sigma", "0.05", "--seed", "5", "--out", &p("small.csv")],
        vec!["embed", "--in", &p("data.csv"), "--k", "5", "--strategy", "unn1", "--out", &p("unn1.csv")],
        vec![
            "embed", "--in", &p("data.csv"), "--k", "5", "--strategy", "unn2", "--criterion", "full-dsre",
            "--order", "shuffled", "--seed", "3", "--out", &p("unn2.csv"),
        ],
        vec!["compare", "--in", &p("data.csv"), "--ks", "2,5,10", "--out", &p("report.csv")],
        vec!["plot", "--in", &p("data.csv"), "--ordering", &p("unn1.csv"), "--dims", "0,1,2", "--out", &p("plot.svg")],
        vec!["oracle", "--in", &p("small.csv"), "--k", "2", "--out", &p("best.csv")],
    ]
    .into_iter()
    .map(|s| s.into_iter().map(String::from).collect())
    .collect();
    for args in steps {
        let status = Command::new(bin).args(&args).output().map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("{args:?}: {}", String::from_utf8_lossy(&status.stderr)));
        }
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    if let Err(e) = run_pipeline(a.path()).and_then(|_| run_pipeline(b.path())) {
        return outcome(false, e);
    }
    let files = ["data.csv", "small.csv", "unn1.csv", "unn2.csv", "report.csv", "plot.svg", "best.csv"];
    let differing: Vec<&str> = files
        .iter()
        .copied()
        .filter(|f| std::fs::read(a.path().join(f)).unwrap() != std::fs::read(b.path().join(f)).unwrap())
        .collect();
    outcome(
        differing.is_empty(),
        format!("{} output files compared, differing: {differing:?}", files.len()),
    )
}

fn main() {
    let grid_start = Instant::now();
    let grid = benchmark_grid();
    let grid_time = grid_start.elapsed();

    let results: Vec<(&str, Outcome)> = vec![
        ("1 oracle equivalence", criterion_1()),
        ("2 hand example", criterion_2()),
        ("3 improvement over init", criterion_3(&grid)),
        ("4 K-monotonicity", criterion_4(&grid)),
        ("5 strategy ranking", criterion_5(&grid)),
        ("6 candidate dominance", criterion_6()),
        ("7 invariance suite", criterion_7()),
        ("8 complexity model", criterion_8()),
        ("9 CLI determinism", criterion_9()),
    ];

    println!("benchmark grid: {} cells in {:.1}s", grid.len(), grid_time.as_secs_f64());
    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", results.len());
}

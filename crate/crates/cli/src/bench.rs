//! Randomized incremental-vs-recompute benchmark.
//!
//! For each seeded random pair (p, q): build the CAD of {p} (untimed
//! preparation), then time the incremental add of q against a classical
//! from-scratch build of {p, q}, per phase (projection, lifting) and
//! combined. Every pair is checked for cell-set equivalence between the
//! two routes; a failing pair fails the run.

use serde::Serialize;

use cad_core::engine::CadState;
use cad_core::lifting::diff_trees;
use cad_core::poly::VarOrder;

use crate::gen;
use crate::CmdError;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BenchConfig {
    pub dims: usize,
    pub count: usize,
    pub terms: usize,
    pub degree: u32,
    pub seed: u64,
}

impl BenchConfig {
    /// Per-dimension defaults for terms and degree: trivariate runs use 4
    /// terms of total degree ≤ 3, bivariate 5 terms of total degree ≤ 4.
    pub fn defaults_for(dims: usize, count: usize, seed: u64) -> BenchConfig {
        let (terms, degree) = if dims >= 3 { (4, 3) } else { (5, 4) };
        BenchConfig {
            dims,
            count,
            terms,
            degree,
            seed,
        }
    }
}

/// Variance / mean / quartile rows, as the benchmark reports them.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SummaryRows {
    pub variance: f64,
    pub mean: f64,
    pub lower_quartile: f64,
    pub median: f64,
    pub upper_quartile: f64,
}

/// Sample variance (n−1 denominator; 0 for fewer than two samples) and
/// linear-interpolation quartiles over the raw timing list.
pub fn summarize(samples: &[f64]) -> SummaryRows {
    let n = samples.len();
    let mean = if n == 0 {
        0.0
    } else {
        samples.iter().sum::<f64>() / n as f64
    };
    let variance = if n < 2 {
        0.0
    } else {
        samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n as f64 - 1.0)
    };
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| -> f64 {
        if sorted.is_empty() {
            return 0.0;
        }
        let h = p * (sorted.len() as f64 - 1.0);
        let lo = h.floor() as usize;
        let hi = h.ceil() as usize;
        sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
    };
    SummaryRows {
        variance,
        mean,
        lower_quartile: q(0.25),
        median: q(0.5),
        upper_quartile: q(0.75),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhaseSummary {
    pub classical: SummaryRows,
    pub incremental: SummaryRows,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub pairs_run: usize,
    pub equivalence_failures: usize,
    pub projection: PhaseSummary,
    pub lifting: PhaseSummary,
    pub combined: PhaseSummary,
    #[serde(skip)]
    pub raw: RawTimings,
}

#[derive(Debug, Default)]
pub struct RawTimings {
    pub proj_classical: Vec<f64>,
    pub proj_incremental: Vec<f64>,
    pub lift_classical: Vec<f64>,
    pub lift_incremental: Vec<f64>,
}

pub fn run(cfg: BenchConfig) -> Result<BenchReport, CmdError> {
    if cfg.count < 1 {
        return Err(CmdError::Usage("--count must be at least 1".into()));
    }
    if cfg.dims < 2 || cfg.dims > 3 {
        return Err(CmdError::Usage("--dims must be 2 or 3".into()));
    }
    let order = VarOrder::new(
        (1..=cfg.dims)
            .map(|i| format!("x{i}"))
            .collect::<Vec<_>>(),
    )
    .map_err(CmdError::Input)?;
    let mut rng = gen::rng_from_seed(cfg.seed);
    let mut raw = RawTimings::default();
    let mut failures = 0usize;
    for _ in 0..cfg.count {
        let (p, q) = gen::random_pair(&mut rng, cfg.dims, cfg.terms, cfg.degree);
        let base = CadState::build(&[p.clone()], &order).map_err(CmdError::Input)?;
        let incremental = base.add(&q).map_err(CmdError::Input)?;
        let classical = CadState::build(&[p, q], &order).map_err(CmdError::Input)?;
        raw.proj_classical
            .push(classical.meta().projection_nanos as f64 * 1e-9);
        raw.proj_incremental
            .push(incremental.meta().projection_nanos as f64 * 1e-9);
        raw.lift_classical
            .push(classical.meta().lifting_nanos as f64 * 1e-9);
        raw.lift_incremental
            .push(incremental.meta().lifting_nanos as f64 * 1e-9);
        if !diff_trees(incremental.tree(), classical.tree()).is_empty() {
            failures += 1;
        }
    }
    let combined_classical: Vec<f64> = raw
        .proj_classical
        .iter()
        .zip(&raw.lift_classical)
        .map(|(a, b)| a + b)
        .collect();
    let combined_incremental: Vec<f64> = raw
        .proj_incremental
        .iter()
        .zip(&raw.lift_incremental)
        .map(|(a, b)| a + b)
        .collect();
    Ok(BenchReport {
        config: cfg,
        pairs_run: cfg.count,
        equivalence_failures: failures,
        projection: PhaseSummary {
            classical: summarize(&raw.proj_classical),
            incremental: summarize(&raw.proj_incremental),
        },
        lifting: PhaseSummary {
            classical: summarize(&raw.lift_classical),
            incremental: summarize(&raw.lift_incremental),
        },
        combined: PhaseSummary {
            classical: summarize(&combined_classical),
            incremental: summarize(&combined_incremental),
        },
        raw,
    })
}

fn phase_table(name: &str, s: &PhaseSummary) -> String {
    let row = |label: &str, c: f64, i: f64| format!("{label:<16}{c:>14.6}{i:>14.6}\n");
    let mut out = String::new();
    out.push_str(&format!("{name} (seconds)\n"));
    out.push_str(&format!(
        "{:<16}{:>14}{:>14}\n",
        "", "classical", "incremental"
    ));
    out.push_str(&row("variance", s.classical.variance, s.incremental.variance));
    out.push_str(&row("mean", s.classical.mean, s.incremental.mean));
    out.push_str(&row(
        "lower quartile",
        s.classical.lower_quartile,
        s.incremental.lower_quartile,
    ));
    out.push_str(&row("median", s.classical.median, s.incremental.median));
    out.push_str(&row(
        "upper quartile",
        s.classical.upper_quartile,
        s.incremental.upper_quartile,
    ));
    out
}

pub fn format_table(r: &BenchReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "bench: dims={} count={} terms<={} degree<={} seed={}\n",
        r.config.dims, r.config.count, r.config.terms, r.config.degree, r.config.seed
    ));
    out.push('\n');
    out.push_str(&phase_table("projection", &r.projection));
    out.push('\n');
    out.push_str(&phase_table("lifting", &r.lifting));
    out.push('\n');
    out.push_str(&phase_table("combined", &r.combined));
    out.push('\n');
    out.push_str(&format!(
        "equivalence checks: {} run, {} failed\n",
        r.pairs_run, r.equivalence_failures
    ));
    out
}

pub fn format_json(r: &BenchReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("serializable");
    s.push('\n');
    s
}

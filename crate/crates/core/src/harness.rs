//! Batch experiment driver: sample conjugation-stable osculating instances
//! by osculation type, solve, tally, and persist as append-only JSONL.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{rat, GaussianRational, Rational};
use crate::combinatorics::{OsculationType, SchubertProblem};
use crate::geometry::OsculationPoint;
use crate::solver::{solve_instance, SolveBudget, SolverError};
use crate::systems::{CoordChoice, InstanceSpec};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("osculation type is inconsistent with the problem's multiplicities")]
    ImpossibleType,
    #[error("chart condition {0} has no real point under this osculation type")]
    ChartNeedsRealPoint(usize),
    #[error("the experiment pipeline only solves the determinantal formulation, not `{0}`")]
    UnsupportedFormulation(String),
    #[error(transparent)]
    Systems(#[from] crate::systems::SystemsError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Everything needed to reproduce an experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problem: SchubertProblem,
    /// Real-point counts per distinct condition, aligned with the problem's
    /// compressed condition list.
    pub osculation: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Only the determinantal formulation runs through the symbolic
    /// counting pipeline.
    #[serde(default = "default_formulation")]
    pub formulation: String,
    #[serde(default = "default_coords")]
    pub coords: String,
    #[serde(default = "default_budget_pairs")]
    pub budget_pairs: usize,
    #[serde(default)]
    pub budget_secs: Option<f64>,
}

fn default_coords() -> String {
    "pair".to_string()
}

fn default_formulation() -> String {
    "det".to_string()
}

fn default_budget_pairs() -> usize {
    200_000
}

impl ExperimentConfig {
    pub fn coord_choice(&self) -> CoordChoice {
        match self.coords.as_str() {
            "grassmannian" | "grass" => CoordChoice::Grassmannian,
            "schubert" => CoordChoice::Schubert,
            _ => CoordChoice::Pair,
        }
    }

    pub fn budget(&self) -> SolveBudget {
        let env_secs = std::env::var("SKIT_BUDGET_SECS")
            .ok()
            .and_then(|s| s.parse::<f64>().ok());
        SolveBudget {
            max_pairs: self.budget_pairs,
            wall_secs: self.budget_secs.or(env_secs).or(Some(300.0)),
        }
    }
}

/// One solved (or failed) trial. Field order is fixed; `wall_ms` is excluded
/// from the replay hash.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    /// Exact point literals aligned with the problem's condition list.
    pub points: Vec<String>,
    pub status: String,
    pub complex_count: Option<usize>,
    pub real_count: Option<usize>,
    pub multiplicity: bool,
    pub wall_ms: u128,
}

impl TrialRecord {
    /// The replayable content: everything except the timestamp field.
    pub fn replay_line(&self) -> String {
        format!(
            "{}|{}|{}|{}|{:?}|{:?}|{}",
            self.trial,
            self.seed,
            self.points.join(","),
            self.status,
            self.complex_count,
            self.real_count,
            self.multiplicity
        )
    }
}

/// Histogram of real counts per osculation type, plus failure tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyTable {
    /// osculation type -> (real count -> frequency)
    pub columns: BTreeMap<OsculationType, BTreeMap<usize, u64>>,
    pub failed: u64,
    pub trials: u64,
}

impl FrequencyTable {
    pub fn record(&mut self, ty: &OsculationType, real_count: usize) {
        *self.columns.entry(ty.clone()).or_default().entry(real_count).or_insert(0) += 1;
        self.trials += 1;
    }

    pub fn record_failure(&mut self) {
        self.failed += 1;
        self.trials += 1;
    }

    pub fn merge(&mut self, other: &FrequencyTable) {
        for (ty, hist) in &other.columns {
            let col = self.columns.entry(ty.clone()).or_default();
            for (&rc, &f) in hist {
                *col.entry(rc).or_insert(0) += f;
            }
        }
        self.failed += other.failed;
        self.trials += other.trials;
    }

    /// Markdown rendering: rows are real counts, columns are osculation
    /// types, with totals.
    pub fn render_markdown(&self) -> String {
        let mut rows: Vec<usize> = self
            .columns
            .values()
            .flat_map(|h| h.keys().copied())
            .collect();
        rows.sort_unstable();
        rows.dedup();
        let types: Vec<&OsculationType> = self.columns.keys().collect();
        let mut out = String::from("| # real |");
        for t in &types {
            out.push_str(&format!(" {t} |"));
        }
        out.push_str(" total |\n|---|");
        for _ in &types {
            out.push_str("---|");
        }
        out.push_str("---|\n");
        for rc in &rows {
            out.push_str(&format!("| {rc} |"));
            let mut total = 0;
            for t in &types {
                let f = self.columns[*t].get(rc).copied().unwrap_or(0);
                total += f;
                out.push_str(&format!(" {f} |"));
            }
            out.push_str(&format!(" {total} |\n"));
        }
        out.push_str("| total |");
        let mut grand = 0;
        for t in &types {
            let s: u64 = self.columns[*t].values().sum();
            grand += s;
            out.push_str(&format!(" {s} |"));
        }
        out.push_str(&format!(" {grand} |\n"));
        if self.failed > 0 {
            out.push_str(&format!("\nfailed trials: {}\n", self.failed));
        }
        out
    }

    /// CSV rendering: header of osculation types, one line per real count.
    pub fn render_csv(&self) -> String {
        let mut rows: Vec<usize> = self
            .columns
            .values()
            .flat_map(|h| h.keys().copied())
            .collect();
        rows.sort_unstable();
        rows.dedup();
        let types: Vec<&OsculationType> = self.columns.keys().collect();
        let mut out = String::from("real");
        for t in &types {
            out.push_str(&format!(",{t}"));
        }
        out.push('\n');
        for rc in &rows {
            out.push_str(&rc.to_string());
            for t in &types {
                out.push_str(&format!(",{}", self.columns[*t].get(rc).copied().unwrap_or(0)));
            }
            out.push('\n');
        }
        out
    }

    /// Parse the CSV rendering back (for round-trip checks).
    pub fn parse_csv(text: &str) -> Option<FrequencyTable> {
        let mut lines = text.lines();
        let header = lines.next()?;
        let types: Vec<OsculationType> = header
            .split(',')
            .skip(1)
            .map(|t| {
                let inner = t.trim().strip_prefix("r=(")?.strip_suffix(')')?;
                let rs: Option<Vec<usize>> =
                    inner.split(',').map(|x| x.trim().parse().ok()).collect();
                Some(OsculationType(rs?))
            })
            .collect::<Option<_>>()?;
        let mut table = FrequencyTable::default();
        for line in lines {
            let mut parts = line.split(',');
            let rc: usize = parts.next()?.trim().parse().ok()?;
            for ty in &types {
                let f: u64 = parts.next()?.trim().parse().ok()?;
                if f > 0 {
                    let col = table.columns.entry(ty.clone()).or_default();
                    col.insert(rc, f);
                    table.trials += f;
                }
            }
        }
        Some(table)
    }
}

/// Per-trial random stream: a hash of the master seed and the trial index,
/// so records are independent of scheduling.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    // splitmix64 over the combined value
    let mut z = master ^ (trial as u64).wrapping_mul(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn sample_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-40i64..=40);
    let den = rng.gen_range(1i64..=40);
    rat(num, den)
}

/// Sample the trial's conjugation-stable instance: within each condition
/// group the first r_alpha slots get distinct real rationals and the rest
/// get conjugate pairs with nonzero imaginary part; all points pairwise
/// distinct.
pub fn sample_instance(
    cfg: &ExperimentConfig,
    trial: usize,
) -> Result<InstanceSpec, HarnessError> {
    if cfg.formulation != "det" {
        return Err(HarnessError::UnsupportedFormulation(cfg.formulation.clone()));
    }
    let ty = OsculationType(cfg.osculation.clone());
    if !ty.is_valid_for(&cfg.problem) {
        return Err(HarnessError::ImpossibleType);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, trial));
    let compressed = cfg.problem.compressed();
    let mut used: Vec<OsculationPoint> = Vec::new();
    let fresh_real = |rng: &mut ChaCha8Rng, used: &mut Vec<OsculationPoint>| loop {
        let cand = OsculationPoint::rational(sample_rational(rng));
        if !used.contains(&cand) {
            used.push(cand.clone());
            return cand;
        }
    };
    // assign per distinct condition: r real points then conjugate pairs
    let mut per_group: Vec<Vec<OsculationPoint>> = Vec::new();
    for ((_, mult), &r) in compressed.iter().zip(&cfg.osculation) {
        let mut pts = Vec::with_capacity(*mult);
        for _ in 0..r {
            pts.push(fresh_real(&mut rng, &mut used));
        }
        let mut pairs = (mult - r) / 2;
        while pairs > 0 {
            let re = sample_rational(&mut rng);
            let im = sample_rational(&mut rng);
            if num_traits::Zero::is_zero(&im) {
                continue;
            }
            let z = OsculationPoint::Finite(GaussianRational::new(re, im));
            let zbar = z.conjugate();
            if used.contains(&z) || used.contains(&zbar) {
                continue;
            }
            used.push(z.clone());
            used.push(zbar.clone());
            pts.push(z);
            pts.push(zbar);
            pairs -= 1;
        }
        per_group.push(pts);
    }
    // lay the points back onto the full condition list in order
    let mut group_iters: Vec<std::vec::IntoIter<OsculationPoint>> =
        per_group.into_iter().map(|v| v.into_iter()).collect();
    let mut points = Vec::with_capacity(cfg.problem.len());
    for i in 0..cfg.problem.len() {
        let gi = compressed
            .iter()
            .position(|(c, _)| c.entries == cfg.problem.conditions[i])
            .expect("condition in compression");
        points.push(group_iters[gi].next().expect("enough points per group"));
    }
    let spec = InstanceSpec::new(cfg.problem.clone(), points)?;
    debug_assert!(spec.is_conjugate_stable());
    // the chart conditions need real points
    let chart_slots: usize = match cfg.coord_choice() {
        CoordChoice::Grassmannian => 0,
        CoordChoice::Schubert => 1,
        CoordChoice::Pair => 2,
    };
    for idx in 0..chart_slots {
        if !spec.points[idx].is_real() {
            return Err(HarnessError::ChartNeedsRealPoint(idx));
        }
    }
    Ok(spec)
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> TrialRecord {
    let started = Instant::now();
    let seed = trial_seed(cfg.seed, trial);
    let spec = match sample_instance(cfg, trial) {
        Ok(s) => s,
        Err(e) => {
            return TrialRecord {
                trial,
                seed,
                points: vec![],
                status: format!("sample-error: {e}"),
                complex_count: None,
                real_count: None,
                multiplicity: false,
                wall_ms: started.elapsed().as_millis(),
            }
        }
    };
    let points: Vec<String> = spec.points.iter().map(|p| p.to_string()).collect();
    match solve_instance(&spec, cfg.coord_choice(), &cfg.budget()) {
        Ok(res) => TrialRecord {
            trial,
            seed,
            points,
            status: "ok".to_string(),
            complex_count: Some(res.complex_count),
            real_count: Some(res.real_count),
            multiplicity: res.multiplicity_detected,
            wall_ms: started.elapsed().as_millis(),
        },
        Err(SolverError::BudgetExceeded(which)) => TrialRecord {
            trial,
            seed,
            points,
            status: format!("budget-exceeded: {which}"),
            complex_count: None,
            real_count: None,
            multiplicity: false,
            wall_ms: started.elapsed().as_millis(),
        },
        Err(e) => TrialRecord {
            trial,
            seed,
            points,
            status: format!("error: {e}"),
            complex_count: None,
            real_count: None,
            multiplicity: false,
            wall_ms: started.elapsed().as_millis(),
        },
    }
}

/// Run all trials (in a worker pool), stream records to `sink` in trial
/// order, and aggregate the frequency table. The record stream and table
/// depend only on the config, never on scheduling.
pub fn run_experiment(
    cfg: &ExperimentConfig,
    sink: Option<&mut dyn Write>,
) -> Result<(FrequencyTable, Vec<TrialRecord>), HarnessError> {
    let records: Vec<TrialRecord> =
        (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect();
    if let Some(out) = sink {
        for r in &records {
            serde_json::to_writer(&mut *out, r).map_err(std::io::Error::other)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
    }
    let ty = OsculationType(cfg.osculation.clone());
    let mut table = FrequencyTable::default();
    for r in &records {
        match r.real_count {
            Some(rc) if r.status == "ok" => table.record(&ty, rc),
            _ => table.record_failure(),
        }
    }
    Ok((table, records))
}

/// FNV-1a hash over the replayable record content, for quick reproducibility
/// checks across runs.
pub fn replay_hash(records: &[TrialRecord]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for r in records {
        for b in r.replay_line().as_bytes() {
            h ^= *b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

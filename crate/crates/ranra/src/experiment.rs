//! Declarative Monte Carlo experiments with deterministic CSV output.
//!
//! A config names the experiment kind, the atom counts, the cycle probability
//! (literal or the critical threshold per atom count), the trial count, and a
//! master seed. Trials run in parallel with per-trial seeds derived through
//! [`trial_seed`], and results merge in trial-index order, so reruns of an
//! identical config produce byte-identical CSV regardless of worker count.

use crate::analysis::{
    associativity_violation, expected_flexible_count, failure_bound, flexible_atom_set,
    witness_conditions_on,
};
use crate::quasirandom::algebra_quasirandomness;
use crate::sampler::{sample, trial_seed, SamplerConfig};
use crate::table::CompositionTable;
use crate::{critical_p, Error, Result, MAX_N};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Associativity,
    Flexible,
    Quasirandom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PMode {
    /// Use `critical_p(n)` for each atom count.
    Critical,
}

/// One experiment description; the JSON config holds exactly these keys.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n_values: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_mode: Option<PMode>,
    pub trials: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub output_path: String,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_values.is_empty() {
            return invalid("n_values must be non-empty".into());
        }
        for &n in &self.n_values {
            if n == 0 || n > MAX_N {
                return invalid(format!("n = {n} out of range 1..={MAX_N}"));
            }
            if self.kind == ExperimentKind::Quasirandom && n < 3 {
                return invalid(format!("quasirandom experiments need n >= 3, got {n}"));
            }
        }
        if self.trials == 0 {
            return invalid("trials must be at least 1".into());
        }
        match (self.p, self.p_mode) {
            (Some(p), None) => {
                if !(0.0..=1.0).contains(&p) {
                    return invalid(format!("p = {p} must lie in [0, 1]"));
                }
            }
            (None, Some(PMode::Critical)) => {}
            (Some(_), Some(_)) => return invalid("give either p or p_mode, not both".into()),
            (None, None) => return invalid("one of p or p_mode is required".into()),
        }
        match self.kind {
            ExperimentKind::Quasirandom => {
                let eps = self
                    .epsilon
                    .ok_or_else(|| Error::InvalidConfig("epsilon is required".into()))?;
                let delta = self
                    .delta
                    .ok_or_else(|| Error::InvalidConfig("delta is required".into()))?;
                if !(eps > 0.0 && eps.is_finite()) {
                    return invalid(format!("epsilon = {eps} must be positive"));
                }
                if !(0.0..=1.0).contains(&delta) {
                    return invalid(format!("delta = {delta} must lie in [0, 1]"));
                }
            }
            _ => {
                if self.epsilon.is_some() || self.delta.is_some() {
                    return invalid("epsilon/delta apply to quasirandom experiments only".into());
                }
            }
        }
        Ok(())
    }

    fn p_for(&self, n: usize) -> f64 {
        match self.p_mode {
            Some(PMode::Critical) => critical_p(n),
            None => self.p.expect("validated"),
        }
    }
}

/// Per-trial outcome; the quasirandom verdict is only present for
/// quasirandom experiments.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub n: usize,
    pub p: f64,
    pub trial_index: u64,
    pub associative: bool,
    pub paper_condition: bool,
    pub extended_condition: bool,
    pub flexible_count: usize,
    pub quasirandom: Option<bool>,
}

/// Rendered experiment results.
#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub summary_csv: String,
    pub per_trial_csv: Option<String>,
}

pub const ASSOCIATIVITY_HEADER: &str =
    "n,p,trials,seed,fail_assoc,fail_paper_cond,fail_extended_cond,empirical_fail_rate,union_bound,asymptotic_bound";
pub const FLEXIBLE_HEADER: &str = "n,p,trials,seed,mean_flexible,expected_flexible,stderr";
pub const QUASIRANDOM_HEADER: &str = "n,p,trials,seed,epsilon,delta,fraction_quasirandom";
pub const PER_TRIAL_HEADER: &str =
    "n,p,trial_index,associative,paper_condition,extended_condition,flexible_count,quasirandom";

struct TrialEval {
    associative: bool,
    paper: bool,
    extended: bool,
    flexible: usize,
    quasirandom: Option<bool>,
}

fn eval_trial(cfg: &ExperimentConfig, n: usize, p: f64, seed: u64, full: bool) -> TrialEval {
    let s = sample(&SamplerConfig { n, p, seed }).expect("config validated");
    let need_assoc = full || cfg.kind == ExperimentKind::Associativity;
    let (associative, paper, extended) = if need_assoc {
        let t = CompositionTable::build(&s);
        let assoc = associativity_violation(&t).is_none();
        let (paper, extended) = witness_conditions_on(&t);
        (assoc, paper, extended)
    } else {
        (false, false, false)
    };
    let flexible = if full || cfg.kind == ExperimentKind::Flexible {
        flexible_atom_set(&s).len()
    } else {
        0
    };
    let quasirandom = if cfg.kind == ExperimentKind::Quasirandom {
        let verdict = algebra_quasirandomness(
            &s,
            p,
            cfg.epsilon.expect("validated"),
            cfg.delta.expect("validated"),
        );
        Some(verdict.algebra_quasirandom)
    } else {
        None
    };
    TrialEval {
        associative,
        paper,
        extended,
        flexible,
        quasirandom,
    }
}

/// Runs the experiment. Rows appear in ascending `n`. With `with_per_trial`,
/// a second CSV holds one [`TrialRecord`] row per trial.
pub fn run_experiment(cfg: &ExperimentConfig, with_per_trial: bool) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let mut ns = cfg.n_values.clone();
    ns.sort_unstable();

    let header = match cfg.kind {
        ExperimentKind::Associativity => ASSOCIATIVITY_HEADER,
        ExperimentKind::Flexible => FLEXIBLE_HEADER,
        ExperimentKind::Quasirandom => QUASIRANDOM_HEADER,
    };
    let mut summary = format!("{header}\n");
    let mut per_trial = with_per_trial.then(|| format!("{PER_TRIAL_HEADER}\n"));

    for (row_index, &n) in ns.iter().enumerate() {
        let p = cfg.p_for(n);
        let row_seed = trial_seed(cfg.seed, row_index as u64);
        let evals: Vec<TrialEval> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| eval_trial(cfg, n, p, trial_seed(row_seed, t), with_per_trial))
            .collect();

        match cfg.kind {
            ExperimentKind::Associativity => {
                let fail_assoc = evals.iter().filter(|e| !e.associative).count() as u64;
                let fail_paper = evals.iter().filter(|e| !e.paper).count() as u64;
                let fail_extended = evals.iter().filter(|e| !e.extended).count() as u64;
                let rate = fail_assoc as f64 / cfg.trials as f64;
                // p = 0 makes the pair bound meaningless; report it as inf.
                let (union, asymptotic) = failure_bound(n as u64, p)
                    .unwrap_or((f64::INFINITY, f64::INFINITY));
                writeln!(
                    summary,
                    "{n},{p},{},{},{fail_assoc},{fail_paper},{fail_extended},{rate},{union},{asymptotic}",
                    cfg.trials, cfg.seed
                )
                .unwrap();
            }
            ExperimentKind::Flexible => {
                let counts: Vec<f64> = evals.iter().map(|e| e.flexible as f64).collect();
                let mean = counts.iter().sum::<f64>() / counts.len() as f64;
                let stderr = if counts.len() < 2 {
                    0.0
                } else {
                    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>()
                        / (counts.len() - 1) as f64;
                    (var / counts.len() as f64).sqrt()
                };
                let expected = expected_flexible_count(n, p);
                writeln!(
                    summary,
                    "{n},{p},{},{},{mean},{expected},{stderr}",
                    cfg.trials, cfg.seed
                )
                .unwrap();
            }
            ExperimentKind::Quasirandom => {
                let hits = evals
                    .iter()
                    .filter(|e| e.quasirandom == Some(true))
                    .count();
                let fraction = hits as f64 / cfg.trials as f64;
                writeln!(
                    summary,
                    "{n},{p},{},{},{},{},{fraction}",
                    cfg.trials,
                    cfg.seed,
                    cfg.epsilon.expect("validated"),
                    cfg.delta.expect("validated")
                )
                .unwrap();
            }
        }

        if let Some(out) = per_trial.as_mut() {
            for (t, e) in evals.iter().enumerate() {
                let quasi = match e.quasirandom {
                    Some(q) => q.to_string(),
                    None => String::new(),
                };
                writeln!(
                    out,
                    "{n},{p},{t},{},{},{},{},{quasi}",
                    e.associative, e.paper, e.extended, e.flexible
                )
                .unwrap();
            }
        }
    }

    Ok(ExperimentOutput {
        summary_csv: summary,
        per_trial_csv: per_trial,
    })
}

/// Runs the experiment and writes the CSV file(s): the summary to the
/// config's `output_path`, per-trial records to `per_trial_path` when given.
pub fn run_experiment_to_files(
    cfg: &ExperimentConfig,
    per_trial_path: Option<&Path>,
) -> Result<()> {
    let out = run_experiment(cfg, per_trial_path.is_some())?;
    std::fs::write(&cfg.output_path, &out.summary_csv)?;
    if let Some(path) = per_trial_path {
        std::fs::write(path, out.per_trial_csv.as_deref().unwrap_or(""))?;
    }
    Ok(())
}

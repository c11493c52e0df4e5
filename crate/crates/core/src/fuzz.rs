//! Deterministic fuzz driver. Trial `t` of a run with seed `s` draws everything from the
//! ChaCha8 stream `(s, t)`, so results do not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::{evaluate, CheckId, CheckReport, FunctionSpec, InstanceSpec, Verdict};
use crate::error::{Error, Result};
use crate::sampling::{Sampler, SamplerConfig};

/// Fuzz tolerance used by the suites unless overridden.
pub const FUZZ_TOL_REL: f64 = 1e-8;

const CHUNK: usize = 128;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub check: CheckId,
    pub trials: usize,
    /// Inclusive dimension range.
    pub dims: (usize, usize),
    /// Exponents cycled by trial index; `None` uses [`default_p_list`].
    pub p_list: Option<Vec<f64>>,
    pub seed: u64,
    pub tol_rel: f64,
    pub parallel: bool,
    /// Evaluate every trial instead of stopping at the first `FAILS`.
    #[serde(default)]
    pub keep_going: bool,
}

impl FuzzConfig {
    pub fn new(check: CheckId, trials: usize, seed: u64) -> Self {
        Self { check, trials, dims: (2, 6), p_list: None, seed, tol_rel: FUZZ_TOL_REL, parallel: true, keep_going: false }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.dims;
        if !(1 <= lo && lo <= hi && hi <= 64) {
            return Err(Error::DomainError(format!("dimension range {lo}-{hi} must lie in 1..=64")));
        }
        if let Some(ps) = &self.p_list {
            if ps.is_empty() || ps.iter().any(|p| !p.is_finite()) {
                return Err(Error::DomainError("p list must be non-empty and finite".into()));
            }
        }
        if !(self.tol_rel >= 0.0 && self.tol_rel.is_finite()) {
            return Err(Error::DomainError(format!("tol_rel = {}", self.tol_rel)));
        }
        Ok(())
    }

    fn p_list(&self) -> Vec<f64> {
        self.p_list.clone().unwrap_or_else(|| default_p_list(self.check))
    }
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self::new(CheckId::InfoMonotonicity, 0, 0)
    }
}

/// First failing trial of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub check_id: CheckId,
    pub seed: u64,
    pub trial: u64,
    pub instance: InstanceSpec,
    pub report: CheckReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzRun {
    /// Reports in trial order, ending at the first `FAILS` unless `keep_going` is set.
    pub reports: Vec<CheckReport>,
    pub witness: Option<Witness>,
}

impl FuzzRun {
    pub fn count(&self, v: Verdict) -> usize {
        self.reports.iter().filter(|r| r.verdict == v).count()
    }
}

/// The exponents a check is fuzzed over by default: its full admissible range,
/// boundary values included.
pub fn default_p_list(id: CheckId) -> Vec<f64> {
    let third = 1.0 / 3.0;
    let two_thirds = 2.0 / 3.0;
    match id {
        CheckId::InfoMonotonicity | CheckId::ReverseMonotonicity => {
            vec![-1.0, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
        }
        CheckId::AndoConverse | CheckId::PowerCorollary => {
            vec![-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
        }
        CheckId::NormPowerLemma => vec![-3.0, -1.0, -0.5, 0.0, third, 0.5, two_thirds, 1.0, 2.0, 4.0],
        CheckId::LhExtension => vec![-3.0, -1.0, -0.5, third, two_thirds, 1.0, 2.0, 4.0],
        CheckId::Mn2012 => vec![0.0, 0.25, 0.5, two_thirds, 1.0],
        CheckId::MondPecaric => vec![-1.0, 0.5, 2.0, 3.0],
        CheckId::HolderMccarthy => vec![-1.0, -0.5, 0.5, 2.0, 3.0],
        CheckId::NormChain => vec![-1.0, -0.5, 0.5, 1.0, 2.0, 3.0],
        CheckId::RadiusChain => vec![-1.0, 0.5, 1.0, 2.0],
        CheckId::PowerNorm => vec![0.0, 0.25, 0.5, 1.0, 2.0, 3.0],
        CheckId::NormRefinement => vec![0.25, 0.5, 1.0, 2.0, 3.0],
        CheckId::LownerHeinz => vec![0.0, 0.25, 0.5, 1.0],
        CheckId::DensityTrace => vec![-1.0, -0.5, 0.5, 1.0, 1.5, 2.0],
        CheckId::FurutaBounds => vec![0.25, 0.5, 0.75, 1.0],
        CheckId::SeoBound => vec![0.25, 0.5, 0.75],
    }
}

fn cfg(dim: usize, seed: u64, lo: f64, hi: f64) -> SamplerConfig {
    SamplerConfig { dim, seed, spectrum_lo: lo, spectrum_hi: hi, trials: 1 }
}

/// The instance of trial `trial`. Hypotheses hold by construction.
pub fn generate(id: CheckId, dims: (usize, usize), p_list: &[f64], seed: u64, trial: u64) -> InstanceSpec {
    let mut s = Sampler::new(seed, trial);
    let n = dims.0 + s.index(dims.1 - dims.0 + 1);
    let len = p_list.len() as u64;
    let p = p_list[(trial % len) as usize];
    let c = cfg(n, seed, 0.2, 5.0);
    match id {
        CheckId::InfoMonotonicity | CheckId::ReverseMonotonicity | CheckId::AndoConverse | CheckId::FurutaBounds => {
            let target = s.uniform(1.0, 8.0);
            let (a, b) = s.sandwich_pair(&c, target);
            let map = s.map(n);
            InstanceSpec::pair(a, b, p).with_map(map)
        }
        CheckId::SeoBound => {
            let a = s.spd(n, 0.5, 2.0);
            let b = s.spd(n, 0.5, 2.0);
            let map = s.map(n);
            InstanceSpec::pair(a, b, p).with_map(map)
        }
        CheckId::DensityTrace => {
            // the sandwich hypothesis with unit traces forces B = A
            let a = s.density(&c);
            InstanceSpec::pair(a.clone(), a, p)
        }
        CheckId::PowerCorollary => {
            let top = s.uniform(1.0, 8.0);
            let a = s.spd(n, 1.0, top);
            let map = s.map(n);
            InstanceSpec::new(a, p).with_map(map)
        }
        CheckId::LownerHeinz => {
            let (a, b) = s.loewner_pair(&c);
            InstanceSpec::pair(a, b, p)
        }
        CheckId::NormPowerLemma => InstanceSpec::new(s.spd(n, 0.1, 5.0), p),
        CheckId::LhExtension => {
            let (a, b) = s.norm_dominated_pair(&c, 3.0);
            InstanceSpec::pair(a, b, p)
        }
        CheckId::Mn2012 => {
            let a = s.random_spd(&c);
            let top = crate::linalg::norm_op(&a).expect("symmetric");
            let b = s.spd(n, 0.05, 3.0).add_scalar(top);
            InstanceSpec::pair(a, b, p)
        }
        CheckId::MondPecaric => {
            let b = s.spd(n, 0.2, 3.0);
            let a = (&b + &s.psd(n, 0.0, 2.0)).symmetrized();
            let x = s.unit_vector(n);
            let f = match (trial / len) % 3 {
                0 => FunctionSpec::Power { exponent: p },
                1 => FunctionSpec::Exp,
                _ => FunctionSpec::Log,
            };
            InstanceSpec::pair(a, b, p).with_vector(x).with_function(f)
        }
        CheckId::HolderMccarthy => {
            let a = s.random_spd(&c);
            let x = s.unit_vector(n);
            InstanceSpec::new(a, p).with_vector(x)
        }
        CheckId::NormChain | CheckId::RadiusChain => InstanceSpec::new(s.gaussian_matrix(n), p),
        CheckId::PowerNorm | CheckId::NormRefinement => {
            let a = s.spd(n, 0.5, 2.0);
            let b = s.spd(n, 0.5, 2.0);
            InstanceSpec::pair(a, b, p)
        }
    }
}

fn run_trial(cfg: &FuzzConfig, p_list: &[f64], trial: u64) -> Result<(InstanceSpec, CheckReport)> {
    let inst = generate(cfg.check, cfg.dims, p_list, cfg.seed, trial);
    let mut report = evaluate(cfg.check, &inst, cfg.tol_rel).inspect_err(|e| {
        log::error!("{} trial {trial} (seed {}): {e}", cfg.check, cfg.seed);
    })?;
    report.params.seed = Some(cfg.seed);
    report.params.trial = Some(trial);
    Ok((inst, report))
}

/// Runs the configured trials, by default stopping at the first `FAILS`. The output is
/// identical for serial and parallel execution.
pub fn run(cfg: &FuzzConfig) -> Result<FuzzRun> {
    cfg.validate()?;
    let p_list = cfg.p_list();
    let mut reports = Vec::with_capacity(cfg.trials);
    let mut witness = None;
    let mut start = 0;
    while start < cfg.trials {
        let end = (start + CHUNK).min(cfg.trials);
        let batch: Vec<Result<(InstanceSpec, CheckReport)>> = if cfg.parallel {
            (start..end).into_par_iter().map(|t| run_trial(cfg, &p_list, t as u64)).collect()
        } else {
            (start..end).map(|t| run_trial(cfg, &p_list, t as u64)).collect()
        };
        for item in batch {
            let (inst, report) = item?;
            let failed = report.verdict == Verdict::Fails;
            reports.push(report.clone());
            if failed && witness.is_none() {
                let trial = report.params.trial.unwrap_or_default();
                log::warn!("{} fails at trial {trial}", cfg.check);
                witness = Some(Witness { check_id: cfg.check, seed: cfg.seed, trial, instance: inst, report });
                if !cfg.keep_going {
                    return Ok(FuzzRun { reports, witness });
                }
            }
        }
        start = end;
    }
    Ok(FuzzRun { reports, witness })
}

/// Re-evaluates a witness, returning the fresh report.
pub fn replay(w: &Witness) -> Result<CheckReport> {
    evaluate(w.check_id, &w.instance, w.report.params.tol_rel)
}

//! Sample-mean IPR curves over seeded network instantiations.
//!
//! Run `r` of an ensemble draws its graph with seed `derive_seed(master, r)`.
//! If that graph has an isolated node (the Hamiltonian is undefined) the run
//! retries with `derive_seed(derive_seed(master, r), attempt)` and the retry is
//! counted. Runs are independent, so callers may execute them in any order or
//! in parallel and then [`accumulate`] the outcomes in run order.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::netgen::{derive_seed, Model};
use crate::qwalk::ipr_curve;
use crate::spectral::SpectralDecomposition;

/// Give up on a run after this many rejected graphs.
pub const MAX_ATTEMPTS: u64 = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleConfig {
    pub model: Model,
    pub n_runs: usize,
    pub master_seed: u64,
    /// 0-based start node.
    pub start: usize,
    pub t_grid: Vec<f64>,
    pub tolerance: f64,
}

impl EnsembleConfig {
    /// Number of runs actually performed: deterministic models need only one.
    pub fn effective_runs(&self) -> usize {
        if self.model.is_random() {
            self.n_runs
        } else {
            1
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        let n = self.model.n_nodes();
        if self.start >= n {
            return Err(Error::NodeOutOfRange { label: self.start + 1, n });
        }
        if self.n_runs == 0 {
            return Err(invalid("runs", "need at least one run"));
        }
        if self.t_grid.is_empty() {
            return Err(Error::EmptyInput("time grid"));
        }
        Ok(())
    }
}

/// IPR curve of one instantiation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub run: usize,
    pub seed: u64,
    pub regenerations: u64,
    pub ipr: Vec<f64>,
}

/// Pointwise sample mean and standard error of `IPR_start(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleCurve {
    pub t_grid: Vec<f64>,
    pub mean_ipr: Vec<f64>,
    /// Standard error of the mean (0 for a single run).
    pub stderr: Vec<f64>,
    pub n_runs: usize,
    pub model: Model,
    pub master_seed: u64,
    /// 1-based label of the initially excited node.
    pub start_node: usize,
    /// Graphs rejected for having an isolated node.
    pub regenerations: u64,
}

/// Executes run `run` of the ensemble described by `cfg`.
pub fn single_run(cfg: &EnsembleConfig, run: usize) -> Result<RunOutcome> {
    let base = derive_seed(cfg.master_seed, run as u64);
    for attempt in 0..MAX_ATTEMPTS {
        let seed = if attempt == 0 { base } else { derive_seed(base, attempt) };
        let generated = cfg.model.generate(seed)?;
        let h = match Hamiltonian::from_graph(&generated.graph) {
            Ok(h) => h,
            Err(Error::ZeroDegree { .. }) if cfg.model.is_random() => continue,
            Err(e) => return Err(e),
        };
        let decomp = SpectralDecomposition::from_hamiltonian(&h, cfg.tolerance)?;
        let ipr = ipr_curve(&decomp, cfg.start, &cfg.t_grid)?;
        return Ok(RunOutcome { run, seed, regenerations: attempt, ipr });
    }
    Err(invalid("model", format!("no valid graph after {MAX_ATTEMPTS} attempts in run {run}")))
}

/// Folds run outcomes, which must arrive in run order `0, 1, ...`, into a curve.
pub fn accumulate<I>(cfg: &EnsembleConfig, outcomes: I) -> Result<EnsembleCurve>
where
    I: IntoIterator<Item = RunOutcome>,
{
    let len = cfg.t_grid.len();
    let mut mean = alloc::vec![0.0; len];
    let mut m2 = alloc::vec![0.0; len];
    let mut count = 0usize;
    let mut regenerations = 0;
    for outcome in outcomes {
        if outcome.run != count {
            return Err(invalid("outcomes", format!("expected run {count}, got {}", outcome.run)));
        }
        if outcome.ipr.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: outcome.ipr.len() });
        }
        count += 1;
        regenerations += outcome.regenerations;
        let k = count as f64;
        for ((mu, s), &x) in mean.iter_mut().zip(m2.iter_mut()).zip(&outcome.ipr) {
            let delta = x - *mu;
            *mu += delta / k;
            *s += delta * (x - *mu);
        }
    }
    if count == 0 {
        return Err(Error::EmptyInput("ensemble runs"));
    }
    let stderr = if count > 1 {
        let k = count as f64;
        m2.iter().map(|s| libm::sqrt(s / (k - 1.0) / k)).collect()
    } else {
        alloc::vec![0.0; len]
    };
    Ok(EnsembleCurve {
        t_grid: cfg.t_grid.clone(),
        mean_ipr: mean,
        stderr,
        n_runs: count,
        model: cfg.model.clone(),
        master_seed: cfg.master_seed,
        start_node: cfg.start + 1,
        regenerations,
    })
}

/// Sequential ensemble: every run in order, then [`accumulate`].
pub fn ensemble_mean_ipr(cfg: &EnsembleConfig) -> Result<EnsembleCurve> {
    cfg.validate()?;
    let outcomes = (0..cfg.effective_runs())
        .map(|r| single_run(cfg, r))
        .collect::<Result<Vec<_>>>()?;
    accumulate(cfg, outcomes)
}

/// `0, dt, 2dt, ...` up to `t_max` (inclusive when `t_max / dt` is integral).
pub fn time_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid("dt", format!("{dt} must be positive")));
    }
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(invalid("t_max", format!("{t_max} must be non-negative")));
    }
    let steps = libm::floor(t_max / dt + 1e-9) as usize;
    Ok((0..=steps).map(|k| k as f64 * dt).collect())
}

/// Indices of the grid points in the trailing `tail_fraction` of the time span.
fn tail_range(t_grid: &[f64], tail_fraction: f64) -> Result<core::ops::Range<usize>> {
    if t_grid.is_empty() {
        return Err(Error::EmptyInput("time grid"));
    }
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(invalid("tail", format!("{tail_fraction} not in (0, 1]")));
    }
    let first = t_grid[0];
    let last = t_grid[t_grid.len() - 1];
    let span = last - first;
    let cutoff = last - tail_fraction * span - 1e-9 * span.max(1.0);
    let start = t_grid.partition_point(|&t| t < cutoff);
    Ok(start..t_grid.len())
}

/// Mean of `mean_ipr` over the trailing `tail_fraction` of the time window.
pub fn plateau(curve: &EnsembleCurve, tail_fraction: f64) -> Result<f64> {
    let r = tail_range(&curve.t_grid, tail_fraction)?;
    let values = &curve.mean_ipr[r];
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Mean pointwise standard error over the same window as [`plateau`]; an
/// upper bound on the standard error of the plateau itself.
pub fn plateau_stderr(curve: &EnsembleCurve, tail_fraction: f64) -> Result<f64> {
    let r = tail_range(&curve.t_grid, tail_fraction)?;
    let values = &curve.stderr[r];
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DEFAULT_TOLERANCE;
    use alloc::vec;

    fn curve(t_grid: Vec<f64>, mean_ipr: Vec<f64>) -> EnsembleCurve {
        let n = t_grid.len();
        EnsembleCurve {
            t_grid,
            mean_ipr,
            stderr: vec![0.0; n],
            n_runs: 1,
            model: Model::Ring { n: 3 },
            master_seed: 0,
            start_node: 1,
            regenerations: 0,
        }
    }

    #[test]
    fn grid() {
        let g = time_grid(100.0, 0.1).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g[0], 0.0);
        assert!((g[1000] - 100.0).abs() < 1e-12);
        assert_eq!(time_grid(0.0, 0.1).unwrap(), vec![0.0]);
        assert!(time_grid(1.0, 0.0).is_err());
    }

    #[test]
    fn plateau_basics() {
        let t = time_grid(10.0, 0.5).unwrap();
        let c = curve(t.clone(), vec![0.25; t.len()]);
        assert_eq!(plateau(&c, 0.2).unwrap(), 0.25);
        let ramp: Vec<f64> = t.iter().map(|x| x / 10.0).collect();
        let c = curve(t, ramp.clone());
        let global = ramp.iter().sum::<f64>() / ramp.len() as f64;
        assert!((plateau(&c, 1.0).unwrap() - global).abs() < 1e-15);
        // window t >= 8: 8, 8.5, 9, 9.5, 10
        assert!((plateau(&c, 0.2).unwrap() - 0.9).abs() < 1e-15);
        assert!(plateau(&c, 0.0).is_err());
        assert!(plateau(&curve(vec![], vec![]), 0.5).is_err());
    }

    #[test]
    fn two_node_plateau() {
        // cos⁴ + sin⁴ averages to 3/4
        let t = time_grid(1000.0, 0.05).unwrap();
        let v: Vec<f64> = t.iter().map(|&x| libm::cos(x).powi(4) + libm::sin(x).powi(4)).collect();
        assert!((plateau(&curve(t, v), 0.2).unwrap() - 0.75).abs() < 1e-2);
    }

    #[test]
    fn deterministic_model_runs_once() {
        let cfg = EnsembleConfig {
            model: Model::Ring { n: 20 },
            n_runs: 50,
            master_seed: 1,
            start: 9,
            t_grid: time_grid(5.0, 0.5).unwrap(),
            tolerance: DEFAULT_TOLERANCE,
        };
        let c = ensemble_mean_ipr(&cfg).unwrap();
        assert_eq!(c.n_runs, 1);
        assert_eq!(c.mean_ipr[0], 1.0);
        assert!(c.stderr.iter().all(|&s| s == 0.0));
        assert_eq!(c.start_node, 10);
    }

    #[test]
    fn random_model_statistics() {
        let cfg = EnsembleConfig {
            model: Model::Nws { n: 30, p: 0.2 },
            n_runs: 25,
            master_seed: 9,
            start: 4,
            t_grid: time_grid(10.0, 0.5).unwrap(),
            tolerance: DEFAULT_TOLERANCE,
        };
        let c = ensemble_mean_ipr(&cfg).unwrap();
        assert_eq!(c.n_runs, 25);
        assert_eq!(c.mean_ipr[0], 1.0);
        assert_eq!(c.stderr[0], 0.0);
        for &m in &c.mean_ipr {
            assert!(m >= 1.0 / 30.0 - 1e-12 && m <= 1.0 + 1e-12);
        }
        assert!(c.stderr[5..].iter().all(|&s| s > 0.0));
        assert_eq!(c, ensemble_mean_ipr(&cfg).unwrap());
    }

    #[test]
    fn out_of_order_outcomes_rejected() {
        let cfg = EnsembleConfig {
            model: Model::Nws { n: 10, p: 0.5 },
            n_runs: 2,
            master_seed: 0,
            start: 0,
            t_grid: vec![0.0, 1.0],
            tolerance: DEFAULT_TOLERANCE,
        };
        let a = single_run(&cfg, 0).unwrap();
        let b = single_run(&cfg, 1).unwrap();
        assert!(accumulate(&cfg, vec![b, a]).is_err());
        let bad = EnsembleConfig { start: 10, ..cfg };
        assert!(bad.validate().is_err());
    }
}

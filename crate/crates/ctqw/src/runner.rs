use ctqw_core::ensemble::{accumulate, single_run, EnsembleConfig, EnsembleCurve, RunOutcome};
use rayon::prelude::*;

/// Runs every instantiation on the rayon pool, then folds them in run order,
/// so the result does not depend on the number of threads.
pub fn run_ensemble(cfg: &EnsembleConfig) -> ctqw_core::Result<EnsembleCurve> {
    cfg.validate()?;
    let outcomes: Vec<RunOutcome> = (0..cfg.effective_runs())
        .into_par_iter()
        .map(|run| single_run(cfg, run))
        .collect::<ctqw_core::Result<_>>()?;
    accumulate(cfg, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ctqw_core::ensemble::{ensemble_mean_ipr, time_grid};
    use ctqw_core::netgen::Model;

    fn config(model: Model) -> EnsembleConfig {
        EnsembleConfig {
            model,
            n_runs: 12,
            master_seed: 5,
            start: 3,
            t_grid: time_grid(5.0, 0.5).unwrap(),
            tolerance: 1e-8,
        }
    }

    #[test]
    fn matches_sequential_for_any_pool_size() {
        let cfg = config(Model::KleinbergRing { n: 30, q: 1, alpha: 2.0, allow_self_edges: false });
        let sequential = ensemble_mean_ipr(&cfg).unwrap();
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let parallel = pool.install(|| run_ensemble(&cfg)).unwrap();
            assert_eq!(parallel, sequential);
        }
    }

    #[test]
    fn deterministic_model_runs_once() {
        let curve = run_ensemble(&config(Model::Ring { n: 10 })).unwrap();
        assert_eq!(curve.n_runs, 1);
        assert!(curve.stderr.iter().all(|&s| s == 0.0));
    }
}

//! Self-checks runnable from the command line.
//!
//! `golden` compares against exactly known values (small recursive triangle
//! networks, K3, the two-node path). `properties` checks structural
//! invariants on seeded random graphs; the seeds are listed in the report.

use ctqw_core::netgen::{recursive_triangle, ChaCha8Rng};
use ctqw_core::qwalk::oracle::{naive_longtime_ipr, naive_transition_matrix, rk4_evolve, time_averaged_means};
use ctqw_core::qwalk::{evolve, ipr, longtime, transition_probability, AmplitudeVector};
use ctqw_core::{eig_sym, Graph, Hamiltonian, Matrix, SpectralDecomposition};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::io::round_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Golden,
    Properties,
    All,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Largest deviation from the reference, when the check is numeric.
    pub max_error: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub n_checks: usize,
    pub n_failed: usize,
    /// Seeds of the random graphs used by the property checks.
    pub seeds: Vec<u64>,
    pub checks: Vec<Check>,
}

impl Check {
    fn numeric(name: &str, error: f64, tolerance: f64) -> Check {
        Check {
            name: name.into(),
            passed: error <= tolerance,
            max_error: Some(round_real(error)),
            tolerance: Some(tolerance),
            detail: String::new(),
        }
    }

    fn boolean(name: &str, passed: bool, detail: String) -> Check {
        Check { name: name.into(), passed, max_error: None, tolerance: None, detail }
    }
}

/// Seeds of the property suite.
pub const PROPERTY_SEEDS: std::ops::Range<u64> = 0..20;

pub fn run(suite: Suite) -> Report {
    let mut checks = Vec::new();
    let mut seeds = Vec::new();
    if matches!(suite, Suite::Golden | Suite::All) {
        checks.extend(golden());
    }
    if matches!(suite, Suite::Properties | Suite::All) {
        seeds.extend(PROPERTY_SEEDS);
        checks.extend(properties());
    }
    let n_failed = checks.iter().filter(|c| !c.passed).count();
    Report {
        suite: format!("{suite:?}").to_lowercase(),
        passed: n_failed == 0,
        n_checks: checks.len(),
        n_failed,
        seeds,
        checks,
    }
}

/// Erdős–Rényi `G(n, p)`, redrawn until connected.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = Graph::new(n, false);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen::<f64>() < p {
                    g.add_edge(u, v).expect("fresh pair");
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

/// Exact `π̄` of the depth-1 triangle network.
pub fn depth_one_pi_bar() -> Matrix {
    let rows = [
        [11.0, 2.0, 2.0, 4.0, 4.0, 4.0],
        [2.0, 11.0, 2.0, 4.0, 4.0, 4.0],
        [2.0, 2.0, 11.0, 4.0, 4.0, 4.0],
        [4.0, 4.0, 4.0, 11.0, 2.0, 2.0],
        [4.0, 4.0, 4.0, 2.0, 11.0, 2.0],
        [4.0, 4.0, 4.0, 2.0, 2.0, 11.0],
    ];
    Matrix::from_fn(6, 6, |i, j| rows[i][j] / 27.0)
}

/// The golden `π̄` check, shared by the real computation and the mutant.
pub fn check_depth_one_pi_bar(name: &str, pi_bar: &Matrix) -> Check {
    let exact = depth_one_pi_bar();
    if pi_bar.rows() != 6 || pi_bar.cols() != 6 {
        return Check::boolean(name, false, format!("shape {}x{}", pi_bar.rows(), pi_bar.cols()));
    }
    Check::numeric(name, pi_bar.max_abs_diff(&exact), 1e-9)
}

fn decompose(g: &Graph) -> SpectralDecomposition {
    eig_sym(&Hamiltonian::from_graph(g).expect("no isolated nodes")).expect("symmetric")
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn argmax_labels(values: &[f64]) -> Vec<usize> {
    let max = values.iter().copied().fold(f64::MIN, f64::max);
    (0..values.len()).filter(|&j| values[j] > max - 1e-10).map(|j| j + 1).collect()
}

fn golden() -> Vec<Check> {
    let mut out = Vec::new();
    let (g1, _) = recursive_triangle(1);
    let s1 = decompose(&g1);
    out.push(Check::numeric(
        "depth1_spectrum",
        max_dev(s1.eigenvalues(), &[0.0, 0.75, 0.75, 1.5, 1.5, 1.5]),
        1e-9,
    ));
    let r1 = longtime(&s1).expect("connected");
    out.push(check_depth_one_pi_bar("depth1_pi_bar", &r1.pi_bar));

    // Dropping the degenerate cross terms must be caught by the same check.
    let mutant = check_depth_one_pi_bar("mutant", &naive_transition_matrix(&s1, false));
    out.push(Check::boolean(
        "depth1_pi_bar_detects_missing_degenerate_terms",
        !mutant.passed,
        format!("mutant deviation {}", mutant.max_error.unwrap_or(f64::NAN)),
    ));

    let ipr_exact: Vec<f64> = (0..6).map(|j| if j < 3 { 269.0 } else { 301.0 } / 729.0).collect();
    out.push(Check::numeric("depth1_ipr_bar", max_dev(&r1.ipr_bar, &ipr_exact), 1e-9));
    out.push(Check::numeric(
        "depth1_ipr_gaps",
        (r1.delta_abs - 32.0 / 729.0).abs().max((r1.delta_rel - 32.0 / 269.0).abs()),
        1e-9,
    ));
    let counts: Vec<usize> = s1.gap_classes().iter().map(|c| c.pairs.len()).collect();
    out.push(Check::boolean("depth1_gap_classes", counts == [4, 8, 3], format!("pair counts {counts:?}")));

    let sizes_ok = (0..=8u32).all(|d| {
        let (g, _) = recursive_triangle(d);
        g.n_nodes() == 3 << d && g.n_edges() == 3 * ((2usize << d) - 1)
    });
    out.push(Check::boolean("triangle_sizes", sizes_ok, "N = 3*2^d, M = 3*(2^(d+1)-1) for d = 0..8".into()));

    let clustering: Vec<f64> = (1..=3).map(|d| recursive_triangle(d).0.mean_clustering()).collect();
    out.push(Check::numeric(
        "triangle_clustering",
        max_dev(&clustering, &[0.75, 17.0 / 24.0, 16.75 / 24.0]),
        1e-10,
    ));

    for (d, expected) in [(2u32, vec![4, 5, 6]), (3, (7..=12).collect::<Vec<_>>())] {
        let r = longtime(&decompose(&recursive_triangle(d).0)).expect("connected");
        let found = argmax_labels(&r.ipr_bar);
        out.push(Check::boolean(
            &format!("depth{d}_localized_nodes"),
            found == expected,
            format!("argmax {found:?}"),
        ));
    }

    let k3 = Graph::from_labels(3, &[(1, 2), (2, 3), (1, 3)], false).expect("K3");
    out.push(Check::numeric("k3_spectrum", max_dev(decompose(&k3).eigenvalues(), &[0.0, 1.5, 1.5]), 1e-12));

    let path = Graph::from_labels(2, &[(1, 2)], false).expect("path");
    let sp = decompose(&path);
    let err = (0..50)
        .map(|k| {
            let t = 0.13 * k as f64;
            (transition_probability(&sp, 0, 0, t) - t.cos().powi(2)).abs()
        })
        .fold(0.0, f64::max);
    out.push(Check::numeric("path_return_probability", err, 1e-12));
    out
}

fn properties() -> Vec<Check> {
    let (mut pi_err, mut ipr_err) = (0.0f64, 0.0f64);
    let (mut norm_err, mut stoch_err, mut sym_err) = (0.0f64, 0.0f64, 0.0f64);
    let mut ipr_bounds = true;
    let mut ode_err = 0.0f64;
    let mut avg_err = 0.0f64;
    for seed in PROPERTY_SEEDS {
        let n = 3 + (seed as usize % 10);
        let g = random_connected_graph(n, 0.4, seed);
        let s = decompose(&g);
        let r = longtime(&s).expect("connected");
        pi_err = pi_err.max(r.pi_bar.max_abs_diff(&naive_transition_matrix(&s, true)));
        for j in 0..n {
            ipr_err = ipr_err.max((r.ipr_bar[j] - naive_longtime_ipr(&s, j)).abs());
        }
        let t = 0.7 + seed as f64;
        for j in 0..n {
            let psi = evolve(&s, &AmplitudeVector::basis(n, j), t).expect("dimension");
            norm_err = norm_err.max((psi.norm_sqr() - 1.0).abs());
            let col: f64 = (0..n).map(|i| transition_probability(&s, i, j, t)).sum();
            stoch_err = stoch_err.max((col - 1.0).abs());
            for i in 0..n {
                sym_err = sym_err.max((transition_probability(&s, i, j, t) - transition_probability(&s, j, i, t)).abs());
            }
            let x = ipr(&s, j, t);
            ipr_bounds &= x >= 1.0 / n as f64 - 1e-12 && x <= 1.0 + 1e-12;
        }
        if seed < 3 {
            let (pi, iprs) = time_averaged_means(&s, 1e4, 0.05);
            avg_err = avg_err.max(r.pi_bar.max_abs_diff(&pi)).max(max_dev(&r.ipr_bar, &iprs));
        }
        if seed < 2 {
            let g20 = random_connected_graph(20, 0.25, seed);
            let h = Hamiltonian::from_graph(&g20).expect("connected");
            let s20 = decompose(&g20);
            let psi0 = AmplitudeVector::basis(20, 0);
            let exact = evolve(&s20, &psi0, 1.0).expect("dimension");
            let ode = rk4_evolve(h.matrix(), psi0.values(), 1.0, 1e-4);
            for (a, b) in exact.values().iter().zip(&ode) {
                ode_err = ode_err.max((a - b).norm_sqr().sqrt());
            }
        }
    }
    vec![
        Check::numeric("pi_bar_matches_enumeration", pi_err, 1e-10),
        Check::numeric("ipr_bar_matches_enumeration", ipr_err, 1e-10),
        Check::numeric("means_match_time_average", avg_err, 5e-3),
        Check::numeric("unitarity", norm_err, 1e-10),
        Check::numeric("column_stochastic", stoch_err, 1e-10),
        Check::numeric("transition_symmetry", sym_err, 1e-12),
        Check::boolean("ipr_bounds", ipr_bounds, "1/N <= IPR <= 1".into()),
        Check::numeric("spectral_matches_rk4", ode_err, 1e-6),
    ]
}

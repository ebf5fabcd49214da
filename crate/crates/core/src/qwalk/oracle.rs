//! Reference routes that share no code with the closed-form estimators:
//! finite-horizon trapezoidal time averages, the literal pair and quadruplet
//! sums over eigenvector products, and an explicit RK4 integrator of
//! `dψ/dt = -iHψ`. They are slow and intended for small graphs and checks.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectral::SpectralDecomposition;

/// Default quadrature horizon.
pub const DEFAULT_HORIZON: f64 = 1e4;
/// Default quadrature step.
pub const DEFAULT_STEP: f64 = 0.05;

/// Observable whose time average is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// `π_ij(t)` with `i` the end node and `j` the start node.
    TransitionProbability { i: usize, j: usize },
    Ipr { j: usize },
}

/// `(1/T) ∫_0^T f(t) dt` by the composite trapezoid rule with
/// `round(T / dt)` intervals. For a quasi-periodic `f` the bias relative to
/// the infinite-time mean decays like `1/T`.
pub fn time_average(mut f: impl FnMut(f64) -> f64, horizon: f64, dt: f64) -> f64 {
    let steps = libm::round(horizon / dt).max(1.0) as usize;
    let h = horizon / steps as f64;
    let mut sum = 0.5 * (f(0.0) + f(horizon));
    for k in 1..steps {
        sum += f(k as f64 * h);
    }
    sum * h / horizon
}

/// Time average of a single observable.
pub fn time_average_oracle(decomp: &SpectralDecomposition, observable: Observable, horizon: f64, dt: f64) -> Result<f64> {
    let n = decomp.dim();
    let check = |x: usize| if x < n { Ok(()) } else { Err(Error::NodeOutOfRange { label: x + 1, n }) };
    match observable {
        Observable::TransitionProbability { i, j } => {
            check(i)?;
            check(j)?;
            Ok(time_average(|t| super::transition_probability(decomp, i, j, t), horizon, dt))
        }
        Observable::Ipr { j } => {
            check(j)?;
            Ok(time_average(|t| super::ipr(decomp, j, t), horizon, dt))
        }
    }
}

/// Time averages of every `π_ij(t)` and every `IPR_j(t)` in one sweep over the
/// quadrature grid. Each step builds the full propagator, `O(N³)`.
pub fn time_averaged_means(decomp: &SpectralDecomposition, horizon: f64, dt: f64) -> (Matrix, Vec<f64>) {
    let n = decomp.dim();
    let steps = libm::round(horizon / dt).max(1.0) as usize;
    let h = horizon / steps as f64;
    let v = decomp.eigenvectors();
    let lambda = decomp.eigenvalues();
    let mut pi = Matrix::zeros(n, n);
    let mut ipr = vec![0.0; n];
    let mut cos = vec![0.0; n];
    let mut sin = vec![0.0; n];
    let mut prob = Matrix::zeros(n, n);
    for k in 0..=steps {
        let t = k as f64 * h;
        let w = if k == 0 || k == steps { 0.5 } else { 1.0 };
        for m in 0..n {
            cos[m] = libm::cos(lambda[m] * t);
            sin[m] = libm::sin(lambda[m] * t);
        }
        for i in 0..n {
            for j in i..n {
                let (mut re, mut im) = (0.0, 0.0);
                for m in 0..n {
                    let c = v[(i, m)] * v[(j, m)];
                    re += c * cos[m];
                    im += c * sin[m];
                }
                let p = re * re + im * im;
                prob[(i, j)] = p;
                prob[(j, i)] = p;
            }
        }
        for j in 0..n {
            let mut s = 0.0;
            for i in 0..n {
                let p = prob[(i, j)];
                pi[(i, j)] += w * p;
                s += p * p;
            }
            ipr[j] += w * s;
        }
    }
    let scale = h / horizon;
    let pi = Matrix::from_fn(n, n, |i, j| pi[(i, j)] * scale);
    ipr.iter_mut().for_each(|x| *x *= scale);
    (pi, ipr)
}

/// `A^{ij}_m = |⟨i|e_m⟩⟨e_m|j⟩|²`.
fn a_term(v: &Matrix, i: usize, j: usize, m: usize) -> f64 {
    let x = v[(i, m)] * v[(j, m)];
    x * x
}

/// `B^{ij}_{mn} = 2 ⟨i|e_m⟩⟨e_m|j⟩⟨j|e_n⟩⟨e_n|i⟩`.
fn b_term(v: &Matrix, i: usize, j: usize, m: usize, n: usize) -> f64 {
    2.0 * v[(i, m)] * v[(j, m)] * v[(j, n)] * v[(i, n)]
}

/// `π̄_ij = Σ_m A^{ij}_m + Σ_{m<n, λ_m=λ_n} B^{ij}_{mn}` summed literally,
/// with equality meaning `|λ_m - λ_n| <= tolerance`. Setting
/// `include_degenerate = false` drops the B-sum.
pub fn naive_transition_matrix(decomp: &SpectralDecomposition, include_degenerate: bool) -> Matrix {
    let n = decomp.dim();
    let v = decomp.eigenvectors();
    let lambda = decomp.eigenvalues();
    let tol = decomp.tolerance();
    Matrix::from_fn(n, n, |i, j| {
        let mut s: f64 = (0..n).map(|m| a_term(v, i, j, m)).sum();
        if include_degenerate {
            for m in 0..n {
                for k in (m + 1)..n {
                    if (lambda[m] - lambda[k]).abs() <= tol {
                        s += b_term(v, i, j, m, k);
                    }
                }
            }
        }
        s
    })
}

/// Long-time mean IPR for start node `j` by literal enumeration of the A, B
/// and C terms over all eigenvalue pairs and quadruplets, `O(N⁵)`.
pub fn naive_longtime_ipr(decomp: &SpectralDecomposition, j: usize) -> f64 {
    let n = decomp.dim();
    let v = decomp.eigenvectors();
    let lambda = decomp.eigenvalues();
    let tol = decomp.tolerance();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|m| ((m + 1)..n).map(move |k| (m, k))).collect();
    let mut total = 0.0;
    for i in 0..n {
        let a_sum: f64 = (0..n).map(|m| a_term(v, i, j, m)).sum();
        let b_deg: f64 = pairs
            .iter()
            .filter(|&&(m, k)| (lambda[m] - lambda[k]).abs() <= tol)
            .map(|&(m, k)| b_term(v, i, j, m, k))
            .sum();
        let b: Vec<f64> = pairs.iter().map(|&(m, k)| b_term(v, i, j, m, k)).collect();
        let mut c_same = 0.0;
        let mut c_flip = 0.0;
        for (x, &(m, k)) in pairs.iter().enumerate() {
            let gap_mn = lambda[m] - lambda[k];
            for (y, &(r, s)) in pairs.iter().enumerate() {
                let c = b[x] * b[y] / 2.0;
                if (gap_mn - (lambda[r] - lambda[s])).abs() <= tol {
                    c_same += c;
                }
                if (gap_mn - (lambda[s] - lambda[r])).abs() <= tol {
                    c_flip += c;
                }
            }
        }
        total += a_sum * a_sum + 2.0 * a_sum * b_deg + c_same + c_flip;
    }
    total
}

/// Integrates `dψ/dt = -iHψ` from 0 to `t` with classical fourth-order
/// Runge–Kutta and fixed step `≈ step`.
pub fn rk4_evolve(h: &Matrix, psi0: &[Complex64], t: f64, step: f64) -> Vec<Complex64> {
    let n = psi0.len();
    let steps = libm::ceil((t.abs() / step).max(1.0)) as usize;
    let dt = t / steps as f64;
    let minus_i = Complex64::new(0.0, -1.0);
    let rhs = |psi: &[Complex64], out: &mut [Complex64]| {
        for i in 0..n {
            let row = h.row(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &x) in psi.iter().enumerate() {
                acc += x * row[k];
            }
            out[i] = minus_i * acc;
        }
    };
    let mut psi = psi0.to_vec();
    let zero = Complex64::new(0.0, 0.0);
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n]);
    for _ in 0..steps {
        rhs(&psi, &mut k1);
        for i in 0..n {
            tmp[i] = psi[i] + k1[i] * (dt / 2.0);
        }
        rhs(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = psi[i] + k2[i] * (dt / 2.0);
        }
        rhs(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = psi[i] + k3[i] * dt;
        }
        rhs(&tmp, &mut k4);
        for i in 0..n {
            psi[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
        }
    }
    psi
}

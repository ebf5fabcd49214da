use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;
use crate::spectral::SpectralDecomposition;

/// Allowed deviation of `⟨ψ|ψ⟩` from 1.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Wave function `⟨i|ψ(t)⟩` over the nodes at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    values: Vec<Complex64>,
    time: f64,
}

impl AmplitudeVector {
    /// Rejects vectors whose squared norm is not 1 within `1e-10`.
    pub fn new(values: Vec<Complex64>, time: f64) -> Result<Self> {
        let norm: f64 = values.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(invalid("amplitudes", alloc::format!("squared norm {norm} differs from 1")));
        }
        Ok(AmplitudeVector { values, time })
    }

    /// Walker localized on node `j` at `t = 0`.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        values[j] = Complex64::new(1.0, 0.0);
        AmplitudeVector { values, time: 0.0 }
    }

    /// Equal real amplitude `1/sqrt(n)` on every node.
    pub fn uniform(n: usize) -> Self {
        let a = 1.0 / libm::sqrt(n as f64);
        AmplitudeVector { values: vec![Complex64::new(a, 0.0); n], time: 0.0 }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(Complex64::norm_sqr).sum()
    }

    /// `|ψ_i|²` per node.
    pub fn probabilities(&self) -> Vec<f64> {
        self.values.iter().map(Complex64::norm_sqr).collect()
    }
}

#[inline]
fn phase(lambda: f64, t: f64) -> Complex64 {
    let x = lambda * t;
    Complex64::new(libm::cos(x), -libm::sin(x))
}

/// `e^{-iHt} ψ0`. The returned vector is stamped with time `ψ0.time() + t`.
pub fn evolve(decomp: &SpectralDecomposition, psi0: &AmplitudeVector, t: f64) -> Result<AmplitudeVector> {
    let n = decomp.dim();
    if psi0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: psi0.len() });
    }
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    let v = decomp.eigenvectors();
    let lambda = decomp.eigenvalues();
    let mut coeff = vec![Complex64::new(0.0, 0.0); n];
    for (i, &a) in psi0.values.iter().enumerate() {
        for (m, c) in coeff.iter_mut().enumerate() {
            *c += a * v[(i, m)];
        }
    }
    for (m, c) in coeff.iter_mut().enumerate() {
        *c *= phase(lambda[m], t);
    }
    let values = (0..n)
        .map(|i| v.row(i).iter().zip(&coeff).map(|(&e, &c)| c * e).sum())
        .collect();
    Ok(AmplitudeVector { values, time: psi0.time + t })
}

/// `π_ij(t) = |⟨i|e^{-iHt}|j⟩|²`: probability of finding at node `i` at time
/// `t` a walker that started on node `j`.
pub fn transition_probability(decomp: &SpectralDecomposition, i: usize, j: usize, t: f64) -> f64 {
    if t == 0.0 {
        return if i == j { 1.0 } else { 0.0 };
    }
    let lambda = decomp.eigenvalues();
    let amp: Complex64 = (0..decomp.dim())
        .map(|m| phase(lambda[m], t) * (decomp.component(i, m) * decomp.component(j, m)))
        .sum();
    amp.norm_sqr()
}

/// `Σ_i |ψ_i|⁴`.
pub fn ipr_of(psi: &AmplitudeVector) -> f64 {
    psi.values.iter().map(|a| {
        let p = a.norm_sqr();
        p * p
    }).sum()
}

/// `IPR_j(t) = Σ_i π_ij(t)²`.
pub fn ipr(decomp: &SpectralDecomposition, j: usize, t: f64) -> f64 {
    let psi0 = AmplitudeVector::basis(decomp.dim(), j);
    ipr_of(&evolve(decomp, &psi0, t).expect("dimensions agree"))
}

/// Evaluates `|⟨i|e^{-iHt}|j⟩|²` for all `i` on a time grid.
struct ColumnPropagator<'a> {
    lambda: &'a [f64],
    /// `weights[i * n + m] = ⟨i|e_m⟩⟨e_m|j⟩`
    weights: Vec<f64>,
    j: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl<'a> ColumnPropagator<'a> {
    fn new(decomp: &'a SpectralDecomposition, j: usize) -> Self {
        let n = decomp.dim();
        let v = decomp.eigenvectors();
        let vj = v.row(j);
        let mut weights = Vec::with_capacity(n * n);
        for i in 0..n {
            weights.extend(v.row(i).iter().zip(vj).map(|(a, b)| a * b));
        }
        ColumnPropagator { lambda: decomp.eigenvalues(), weights, j, cos: vec![0.0; n], sin: vec![0.0; n] }
    }

    fn probabilities(&mut self, t: f64, out: &mut [f64]) {
        let n = self.lambda.len();
        if t == 0.0 {
            out.iter_mut().for_each(|p| *p = 0.0);
            out[self.j] = 1.0;
            return;
        }
        for m in 0..n {
            let x = self.lambda[m] * t;
            self.cos[m] = libm::cos(x);
            self.sin[m] = libm::sin(x);
        }
        for (i, p) in out.iter_mut().enumerate() {
            let w = &self.weights[i * n..(i + 1) * n];
            let mut re = 0.0;
            let mut im = 0.0;
            for m in 0..n {
                re += w[m] * self.cos[m];
                im += w[m] * self.sin[m];
            }
            *p = re * re + im * im;
        }
    }
}

fn check_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.windows(2).any(|w| !(w[0] < w[1])) || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(invalid("t_grid", "times must be finite and strictly ascending"));
    }
    Ok(())
}

/// `|ψ_i(t)|²` for a walk started on node `j`: one row per time of `t_grid`,
/// one column per node.
pub fn probability_trajectory(decomp: &SpectralDecomposition, j: usize, t_grid: &[f64]) -> Result<Matrix> {
    let n = decomp.dim();
    if j >= n {
        return Err(Error::NodeOutOfRange { label: j + 1, n });
    }
    check_grid(t_grid)?;
    let mut prop = ColumnPropagator::new(decomp, j);
    let mut out = Matrix::zeros(t_grid.len(), n);
    let mut row = vec![0.0; n];
    for (k, &t) in t_grid.iter().enumerate() {
        prop.probabilities(t, &mut row);
        for (i, &p) in row.iter().enumerate() {
            out[(k, i)] = p;
        }
    }
    Ok(out)
}

/// `IPR_j(t)` on a time grid; exactly 1 at `t = 0`.
pub fn ipr_curve(decomp: &SpectralDecomposition, j: usize, t_grid: &[f64]) -> Result<Vec<f64>> {
    let n = decomp.dim();
    if j >= n {
        return Err(Error::NodeOutOfRange { label: j + 1, n });
    }
    check_grid(t_grid)?;
    let mut prop = ColumnPropagator::new(decomp, j);
    let mut row = vec![0.0; n];
    Ok(t_grid
        .iter()
        .map(|&t| {
            prop.probabilities(t, &mut row);
            row.iter().map(|p| p * p).sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hamiltonian::Hamiltonian;
    use crate::spectral::eig_sym;

    fn decomp(n: usize, edges: &[(usize, usize)]) -> SpectralDecomposition {
        let g = Graph::from_labels(n, edges, false).unwrap();
        eig_sym(&Hamiltonian::from_graph(&g).unwrap()).unwrap()
    }

    fn path2() -> SpectralDecomposition {
        decomp(2, &[(1, 2)])
    }

    #[test]
    fn zero_time_is_identity() {
        let s = decomp(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]);
        let psi = AmplitudeVector::basis(4, 2);
        assert_eq!(evolve(&s, &psi, 0.0).unwrap(), psi);
        assert_eq!(ipr(&s, 2, 0.0), 1.0);
        assert_eq!(transition_probability(&s, 1, 2, 0.0), 0.0);
        assert_eq!(transition_probability(&s, 2, 2, 0.0), 1.0);
    }

    #[test]
    fn two_node_closed_forms() {
        let s = path2();
        for k in 0..50 {
            let t = 0.137 * k as f64;
            let c = libm::cos(t);
            let sn = libm::sin(t);
            let psi = evolve(&s, &AmplitudeVector::basis(2, 0), t).unwrap();
            assert!((psi.probabilities()[0] - c * c).abs() < 1e-14);
            assert!((transition_probability(&s, 1, 0, t) - sn * sn).abs() < 1e-14);
            assert!((ipr(&s, 0, t) - (c.powi(4) + sn.powi(4))).abs() < 1e-14);
        }
        let quarter = core::f64::consts::FRAC_PI_4;
        assert!((ipr(&s, 0, quarter) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn trajectory_moves_mass_across_the_edge() {
        let s = path2();
        let half_pi = core::f64::consts::FRAC_PI_2;
        let traj = probability_trajectory(&s, 0, &[0.0, half_pi]).unwrap();
        assert_eq!(traj.row(0), &[1.0, 0.0]);
        assert!((traj[(1, 1)] - 1.0).abs() < 1e-14);
        assert!(probability_trajectory(&s, 0, &[1.0, 0.5]).is_err());
        assert!(probability_trajectory(&s, 2, &[0.0]).is_err());
    }

    #[test]
    fn uniform_state_has_minimal_ipr() {
        for n in [1, 2, 7, 100] {
            let v = AmplitudeVector::uniform(n);
            assert!((ipr_of(&v) - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = path2();
        assert!(matches!(
            evolve(&s, &AmplitudeVector::basis(3, 0), 1.0),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(AmplitudeVector::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0)], 0.0).is_err());
    }

    #[test]
    fn curve_matches_pointwise_ipr() {
        let s = decomp(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 4)]);
        let grid: Vec<f64> = (0..40).map(|k| 0.25 * k as f64).collect();
        let c = ipr_curve(&s, 3, &grid).unwrap();
        assert_eq!(c[0], 1.0);
        for (k, &t) in grid.iter().enumerate() {
            assert!((c[k] - ipr(&s, 3, t)).abs() < 1e-13);
        }
    }

    #[test]
    fn negative_time_reverses() {
        let s = decomp(4, &[(1, 2), (2, 3), (3, 4), (1, 3)]);
        let psi0 = AmplitudeVector::basis(4, 0);
        let fwd = evolve(&s, &psi0, 1.3).unwrap();
        let back = evolve(&s, &fwd, -1.3).unwrap();
        for (a, b) in back.values().iter().zip(psi0.values()) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}

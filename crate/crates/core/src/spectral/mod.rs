//! Spectral decomposition of the Hamiltonian and the degeneracy bookkeeping
//! needed by the long-time averages.

mod classes;
mod eigen;

use alloc::vec::Vec;

pub use classes::{degeneracy_classes, gap_classes, EigenClass, GapClass};

use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::matrix::Matrix;

/// Absolute tolerance used to decide `λ_m = λ_n` and equal gaps.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Inputs whose symmetric counterparts differ by more than this are rejected.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Components below this magnitude are skipped when fixing eigenvector signs.
const SIGN_THRESHOLD: f64 = 1e-8;

/// `H = Σ_m λ_m e_m e_mᵀ` together with degeneracy and gap classes.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
    tolerance: f64,
    classes: Vec<EigenClass>,
    class_gaps: Vec<GapClass>,
}

/// Eigendecomposition of `h` with the default tolerance.
pub fn eig_sym(h: &Hamiltonian) -> Result<SpectralDecomposition> {
    SpectralDecomposition::new(h.matrix(), DEFAULT_TOLERANCE)
}

impl SpectralDecomposition {
    /// Decomposes a symmetric matrix. Eigenvalues come out ascending; each
    /// eigenvector is oriented so that its first component of magnitude above
    /// `1e-8` is positive.
    pub fn new(matrix: &Matrix, tolerance: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(crate::error::invalid("tolerance", "must be finite and non-negative"));
        }
        if let Some((row, col, diff)) = matrix.asymmetry(SYMMETRY_TOLERANCE) {
            return Err(Error::NotSymmetric { row, col, diff });
        }
        let (eigenvalues, mut eigenvectors) = eigen::symmetric_eigen(matrix);
        let n = eigenvalues.len();
        for m in 0..n {
            let flip = (0..n)
                .map(|i| eigenvectors[(i, m)])
                .find(|x| x.abs() > SIGN_THRESHOLD)
                .is_some_and(|x| x < 0.0);
            if flip {
                for i in 0..n {
                    eigenvectors[(i, m)] = -eigenvectors[(i, m)];
                }
            }
        }
        Ok(Self::from_parts(eigenvalues, eigenvectors, tolerance))
    }

    pub fn from_hamiltonian(h: &Hamiltonian, tolerance: f64) -> Result<Self> {
        Self::new(h.matrix(), tolerance)
    }

    fn from_parts(eigenvalues: Vec<f64>, eigenvectors: Matrix, tolerance: f64) -> Self {
        let classes = degeneracy_classes(&eigenvalues, tolerance);
        let mut items = Vec::with_capacity(classes.len() * classes.len().saturating_sub(1) / 2);
        for a in 0..classes.len() {
            for b in (a + 1)..classes.len() {
                items.push((classes[b].value - classes[a].value, a, b));
            }
        }
        let class_gaps = classes::group_by_gap(items, tolerance);
        SpectralDecomposition { eigenvalues, eigenvectors, tolerance, classes, class_gaps }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `λ_1 <= ... <= λ_N`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column `m` is `e_m`.
    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    /// `⟨i|e_m⟩`.
    #[inline]
    pub fn component(&self, i: usize, m: usize) -> f64 {
        self.eigenvectors[(i, m)]
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn degeneracy_classes(&self) -> &[EigenClass] {
        &self.classes
    }

    /// Number of distinct eigenvalues.
    pub fn n_distinct(&self) -> usize {
        self.classes.len()
    }

    /// Pairs of degeneracy classes `(a, b)`, `a < b`, grouped by `value_b - value_a`.
    pub fn class_gap_classes(&self) -> &[GapClass] {
        &self.class_gaps
    }

    /// Pairs of eigenvalue indices grouped by gap (zero-gap class first).
    /// Built on demand; there are `N(N-1)/2` pairs.
    pub fn gap_classes(&self) -> Vec<GapClass> {
        gap_classes(&self.eigenvalues, self.tolerance)
    }

    /// True when some degeneracy class spans more than the tolerance.
    pub fn has_chained_degeneracy(&self) -> bool {
        self.classes.iter().any(|c| c.span > self.tolerance)
    }

    /// True when some gap class spans more than the tolerance.
    pub fn has_chained_gaps(&self) -> bool {
        self.class_gaps.iter().any(|c| c.span > self.tolerance)
    }

    /// `Σ_m λ_m e_m e_mᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        Matrix::from_fn(n, n, |i, j| (0..n).map(|m| self.eigenvalues[m] * v[(i, m)] * v[(j, m)]).sum())
    }

    /// Largest `|e_mᵀ e_n - δ_mn|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut worst: f64 = 0.0;
        for m in 0..n {
            for k in m..n {
                let dot: f64 = (0..n).map(|i| v[(i, m)] * v[(i, k)]).sum();
                let target = if m == k { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Orthogonal projector onto degeneracy class `a`, column `j`:
    /// `(P_a)_{ij}` for all `i`, written into `out`.
    pub fn projector_column(&self, a: usize, j: usize, out: &mut [f64]) {
        let v = &self.eigenvectors;
        out.iter_mut().for_each(|x| *x = 0.0);
        for m in self.classes[a].indices.clone() {
            let vjm = v[(j, m)];
            for (i, o) in out.iter_mut().enumerate() {
                *o += v[(i, m)] * vjm;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use alloc::vec;

    fn decomp(n: usize, edges: &[(usize, usize)]) -> SpectralDecomposition {
        let g = Graph::from_labels(n, edges, false).unwrap();
        eig_sym(&Hamiltonian::from_graph(&g).unwrap()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn triangle_spectrum() {
        let s = decomp(3, &[(1, 2), (2, 3), (3, 1)]);
        assert_close(s.eigenvalues(), &[0.0, 1.5, 1.5], 1e-12);
        assert_eq!(s.n_distinct(), 2);
    }

    #[test]
    fn recursive_triangle_depth_one_spectrum() {
        let s = decomp(6, &[(1, 2), (2, 3), (3, 1), (4, 1), (4, 2), (5, 2), (5, 3), (6, 3), (6, 1)]);
        assert_close(s.eigenvalues(), &[0.0, 0.75, 0.75, 1.5, 1.5, 1.5], 1e-12);
        let sizes: Vec<usize> = s.degeneracy_classes().iter().map(EigenClass::len).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(!s.has_chained_degeneracy());
    }

    #[test]
    fn two_node_path_vectors() {
        let s = decomp(2, &[(1, 2)]);
        assert_close(s.eigenvalues(), &[0.0, 2.0], 1e-14);
        let r = 1.0 / libm::sqrt(2.0);
        assert_close(&s.eigenvectors().column(0), &[r, r], 1e-14);
        assert_close(&s.eigenvectors().column(1), &[r, -r], 1e-14);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = Matrix::from_row_major(2, 2, vec![1.0, 0.5, 0.4, 1.0]);
        assert!(matches!(SpectralDecomposition::new(&m, 1e-8), Err(Error::NotSymmetric { .. })));
        let m = Matrix::zeros(2, 3);
        assert!(matches!(SpectralDecomposition::new(&m, 1e-8), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn reconstructs_dense_matrix() {
        let n = 9;
        let m = Matrix::from_fn(n, n, |i, j| {
            let (a, b) = (i.min(j) as f64, i.max(j) as f64);
            libm::sin(1.0 + a * 0.7 + b * b * 0.3)
        });
        let s = SpectralDecomposition::new(&m, 1e-8).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-12);
        assert!(s.orthonormality_error() < 1e-13);
        assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn handles_diagonal_and_trivial_sizes() {
        let m = Matrix::from_row_major(3, 3, vec![2.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.5]);
        let s = SpectralDecomposition::new(&m, 1e-8).unwrap();
        assert_close(s.eigenvalues(), &[-1.0, 0.5, 2.0], 0.0);
        let one = SpectralDecomposition::new(&Matrix::identity(1), 1e-8).unwrap();
        assert_eq!(one.eigenvalues(), &[1.0]);
        let empty = SpectralDecomposition::new(&Matrix::zeros(0, 0), 1e-8).unwrap();
        assert_eq!(empty.dim(), 0);
    }
}

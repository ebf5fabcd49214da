//! Closed-form long-time means.
//!
//! Writing `p_a = (P_a)_ij` for the projector onto the `a`-th distinct
//! eigenvalue, the transition probability is
//! `π_ij(t) = Σ_a p_a² + Σ_{a<b} 2 p_a p_b cos((λ_b - λ_a) t)`.
//! Its time average keeps only the constant term, and the time average of its
//! square is `c_0² + ½ Σ_g c_g²` where `c_g` collects the cosine coefficients
//! of all class pairs sharing the gap `g`. Both need `O(N·D)` and `O(D²)` work
//! per matrix element, `D` being the number of distinct eigenvalues.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectral::SpectralDecomposition;

/// Diagnostic attached to long-time results.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Warning {
    /// The zero eigenvalue is degenerate, i.e. the graph has several components.
    Disconnected { components: usize },
    /// A degeneracy class was formed by chaining values further apart than the tolerance.
    ChainedDegeneracy,
    /// A gap class was formed by chaining gaps further apart than the tolerance.
    ChainedGaps,
}

/// `π̄`, `IPR̄_j` for every start node, and the IPR gaps.
#[derive(Debug, Clone)]
pub struct LongTimeResult {
    /// `pi_bar[(i, j)] = π̄_ij`.
    pub pi_bar: Matrix,
    pub ipr_bar: Vec<f64>,
    /// `max_j IPR̄_j - min_j IPR̄_j`
    pub delta_abs: f64,
    /// `delta_abs / min_j IPR̄_j`
    pub delta_rel: f64,
    pub tolerance_used: f64,
    pub warnings: Vec<Warning>,
}

/// `(Δ, δ)` = `(max - min, (max - min) / min)`.
pub fn ipr_gaps(ipr_bar: &[f64]) -> Result<(f64, f64)> {
    if ipr_bar.is_empty() {
        return Err(Error::EmptyInput("long-time IPR vector"));
    }
    let max = ipr_bar.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ipr_bar.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::UndefinedRelativeGap);
    }
    let delta = max - min;
    Ok((delta, delta / min))
}

/// Class pairs flattened in gap-class order.
struct GapLayout {
    first: Vec<u32>,
    second: Vec<u32>,
    /// `offsets[g]..offsets[g + 1]` indexes the pairs of gap class `g`.
    offsets: Vec<usize>,
}

impl GapLayout {
    fn new(decomp: &SpectralDecomposition) -> Self {
        let classes = decomp.class_gap_classes();
        let total: usize = classes.iter().map(|c| c.pairs.len()).sum();
        let mut first = Vec::with_capacity(total);
        let mut second = Vec::with_capacity(total);
        let mut offsets = Vec::with_capacity(classes.len() + 1);
        offsets.push(0);
        for class in classes {
            for &(a, b) in &class.pairs {
                first.push(a as u32);
                second.push(b as u32);
            }
            offsets.push(first.len());
        }
        GapLayout { first, second, offsets }
    }

    /// `Σ_g (Σ_{(a,b) ∈ g} p_a p_b)²`.
    #[inline]
    fn oscillating_power(&self, p: &[f64]) -> f64 {
        let mut total = 0.0;
        for g in self.offsets.windows(2) {
            let (start, end) = (g[0], g[1]);
            let mut s = 0.0;
            for (&a, &b) in self.first[start..end].iter().zip(&self.second[start..end]) {
                s += p[a as usize] * p[b as usize];
            }
            total += s * s;
        }
        total
    }
}

/// Projector entries `(P_a)_ij` for one start node `j`, stored `[i * D + a]`.
fn projector_columns(decomp: &SpectralDecomposition, vt: &Matrix, j: usize, out: &mut [f64]) {
    let n = decomp.dim();
    let d = decomp.n_distinct();
    out.iter_mut().for_each(|x| *x = 0.0);
    for (a, class) in decomp.degeneracy_classes().iter().enumerate() {
        for m in class.indices.clone() {
            let row = vt.row(m);
            let vjm = row[j];
            for i in 0..n {
                out[i * d + a] += row[i] * vjm;
            }
        }
    }
}

/// Contribution of matrix element `(i, j)` to `IPR̄_j`, given its class projections.
#[inline]
fn squared_mean(layout: &GapLayout, p: &[f64]) -> (f64, f64) {
    let c0: f64 = p.iter().map(|x| x * x).sum();
    // c_g = 2 Σ p_a p_b, and ½ c_g² = 2 (Σ p_a p_b)²
    (c0, c0 * c0 + 2.0 * layout.oscillating_power(p))
}

/// `π̄_ij = Σ_a (P_a)_ij²`, the long-time mean transition probability matrix.
pub fn longtime_transition_matrix(decomp: &SpectralDecomposition) -> Matrix {
    let n = decomp.dim();
    let d = decomp.n_distinct();
    let vt = decomp.eigenvectors().transpose();
    let mut p = vec![0.0; n * d];
    let mut out = Matrix::zeros(n, n);
    for j in 0..n {
        projector_columns(decomp, &vt, j, &mut p);
        for i in 0..n {
            out[(i, j)] = p[i * d..(i + 1) * d].iter().map(|x| x * x).sum();
        }
    }
    out
}

/// `IPR̄_j`, the long-time mean inverse participation ratio for start node `j`.
pub fn longtime_ipr(decomp: &SpectralDecomposition, j: usize) -> Result<f64> {
    let n = decomp.dim();
    if j >= n {
        return Err(Error::NodeOutOfRange { label: j + 1, n });
    }
    let d = decomp.n_distinct();
    let layout = GapLayout::new(decomp);
    let vt = decomp.eigenvectors().transpose();
    let mut p = vec![0.0; n * d];
    projector_columns(decomp, &vt, j, &mut p);
    Ok((0..n).map(|i| squared_mean(&layout, &p[i * d..(i + 1) * d]).1).sum())
}

/// Full long-time analysis: `π̄`, `IPR̄_j` for all `j`, and the gaps.
///
/// Uses the symmetry `(P_a)_ij = (P_a)_ji` to visit each unordered pair once.
pub fn longtime(decomp: &SpectralDecomposition) -> Result<LongTimeResult> {
    let n = decomp.dim();
    if n == 0 {
        return Err(Error::EmptyInput("spectral decomposition"));
    }
    let d = decomp.n_distinct();
    let layout = GapLayout::new(decomp);
    let vt = decomp.eigenvectors().transpose();
    let mut p = vec![0.0; n * d];
    let mut pi_bar = Matrix::zeros(n, n);
    let mut ipr_bar = vec![0.0; n];
    for j in 0..n {
        projector_columns(decomp, &vt, j, &mut p);
        for i in j..n {
            let (mean, mean_sq) = squared_mean(&layout, &p[i * d..(i + 1) * d]);
            pi_bar[(i, j)] = mean;
            pi_bar[(j, i)] = mean;
            ipr_bar[j] += mean_sq;
            if i != j {
                ipr_bar[i] += mean_sq;
            }
        }
    }
    let (delta_abs, delta_rel) = ipr_gaps(&ipr_bar)?;
    Ok(LongTimeResult {
        pi_bar,
        ipr_bar,
        delta_abs,
        delta_rel,
        tolerance_used: decomp.tolerance(),
        warnings: warnings(decomp),
    })
}

fn warnings(decomp: &SpectralDecomposition) -> Vec<Warning> {
    let mut w = Vec::new();
    let tol = decomp.tolerance();
    if let Some(zero) = decomp.degeneracy_classes().iter().find(|c| c.value.abs() <= tol.max(1e-10)) {
        if zero.len() > 1 {
            w.push(Warning::Disconnected { components: zero.len() });
        }
    }
    if decomp.has_chained_degeneracy() {
        w.push(Warning::ChainedDegeneracy);
    }
    if decomp.has_chained_gaps() {
        w.push(Warning::ChainedGaps);
    }
    w
}

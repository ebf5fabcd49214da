//! The walk generator `H = D^{-1/2} L D^{-1/2}` with `L = D - A`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;

/// Symmetric normalized Laplacian of a graph (ħ = 1, dimensionless).
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: Matrix,
    sqrt_degrees: Vec<f64>,
}

impl Hamiltonian {
    /// Every node needs degree ≥ 1, otherwise [`Error::ZeroDegree`] names the
    /// first isolated node (1-based).
    ///
    /// Entries are written symmetrically: `H_ii = 1 - a_ii / k_i` and
    /// `H_ij = -a_ij / sqrt(k_i k_j)`.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let n = g.n_nodes();
        let degrees = g.degrees();
        if let Some(i) = degrees.iter().position(|&k| k == 0) {
            return Err(Error::ZeroDegree { node: i + 1 });
        }
        let sqrt_degrees: Vec<f64> = degrees.iter().map(|&k| libm::sqrt(k as f64)).collect();
        let mut matrix = Matrix::identity(n);
        for &(u, v) in g.edges() {
            if u == v {
                matrix[(u, u)] = 1.0 - 1.0 / degrees[u] as f64;
            } else {
                let w = -1.0 / (sqrt_degrees[u] * sqrt_degrees[v]);
                matrix[(u, v)] = w;
                matrix[(v, u)] = w;
            }
        }
        Ok(Hamiltonian { matrix, sqrt_degrees })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `(sqrt(k_1), ..., sqrt(k_N))`, the (unnormalized) zero mode of `H`.
    pub fn sqrt_degrees(&self) -> &[f64] {
        &self.sqrt_degrees
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_identity_minus_half_adjacency() {
        let g = Graph::from_labels(3, &[(1, 2), (2, 3), (3, 1)], false).unwrap();
        let h = Hamiltonian::from_graph(&g).unwrap();
        let expected = Matrix::from_fn(3, 3, |i, j| if i == j { 1.0 } else { -0.5 });
        assert!(h.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn single_edge() {
        let g = Graph::from_labels(2, &[(1, 2)], false).unwrap();
        let h = Hamiltonian::from_graph(&g).unwrap();
        assert_eq!(h.matrix().as_slice(), &[1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn isolated_node_is_an_error() {
        let g = Graph::from_labels(3, &[(1, 2)], false).unwrap();
        assert_eq!(Hamiltonian::from_graph(&g), Err(Error::ZeroDegree { node: 3 }));
    }

    #[test]
    fn zero_mode_and_unit_diagonal() {
        let g = Graph::from_labels(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)], false).unwrap();
        let h = Hamiltonian::from_graph(&g).unwrap();
        assert!(h.matrix().asymmetry(0.0).is_none());
        for i in 0..5 {
            assert_eq!(h.matrix()[(i, i)], 1.0);
        }
        let r = h.matrix().mul_vec(h.sqrt_degrees());
        assert!(r.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn self_edge_convention() {
        let g = Graph::from_labels(2, &[(1, 1), (1, 2)], true).unwrap();
        let h = Hamiltonian::from_graph(&g).unwrap();
        let m = h.matrix();
        assert!((m[(0, 0)] - 0.5).abs() < 1e-15);
        assert!((m[(0, 1)] + 1.0 / libm::sqrt(2.0)).abs() < 1e-15);
        let r = m.mul_vec(h.sqrt_degrees());
        assert!(r.iter().all(|x| x.abs() < 1e-12));
    }
}

#![allow(dead_code)]

use ctqw_core::netgen::ChaCha8Rng;
use ctqw_core::{eig_sym, Graph, Hamiltonian, SpectralDecomposition};
use rand::{Rng, SeedableRng};

/// Erdős–Rényi G(n, p) redrawn until connected.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = Graph::new(n, false);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen::<f64>() < p {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

pub fn decompose(g: &Graph) -> SpectralDecomposition {
    eig_sym(&Hamiltonian::from_graph(g).unwrap()).unwrap()
}

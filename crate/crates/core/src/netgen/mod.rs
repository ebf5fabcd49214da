//! Network generators: the deterministic recursive triangle and ring graphs,
//! and the seeded Newman–Watts–Strogatz, Kleinberg ring and Holme–Kim models.
//!
//! Every random generator draws from a [`ChaCha8Rng`] seeded with the caller's
//! 64-bit seed, so `(model, seed)` fixes the output edge set.

mod holme_kim;
mod small_world;
mod triangle;

use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub use holme_kim::holme_kim;
pub use small_world::{kleinberg_ring, nws, RingDistanceSampler};
pub use triangle::{recursive_triangle, Generation};

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Network family and its parameters.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "model", rename_all = "snake_case"))]
pub enum Model {
    RecursiveTriangle { depth: u32 },
    Ring { n: usize },
    Nws { n: usize, p: f64 },
    KleinbergRing { n: usize, q: usize, alpha: f64, allow_self_edges: bool },
    HolmeKim { n: usize, m: usize, p_triangle: f64 },
}

/// A model plus the seed for its random choices.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeneratorSpec {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub model: Model,
    pub seed: u64,
}

/// A generated graph; recursive triangle graphs also carry generation tags.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: Graph,
    pub generation: Option<Generation>,
}

/// Recursive-triangle depths above this would not fit sensible memory.
pub const MAX_DEPTH: u32 = 24;

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::RecursiveTriangle { .. } => "recursive_triangle",
            Model::Ring { .. } => "ring",
            Model::Nws { .. } => "nws",
            Model::KleinbergRing { .. } => "kleinberg_ring",
            Model::HolmeKim { .. } => "holme_kim",
        }
    }

    /// Number of nodes the model produces.
    pub fn n_nodes(&self) -> usize {
        match *self {
            Model::RecursiveTriangle { depth } => 3usize << depth,
            Model::Ring { n }
            | Model::Nws { n, .. }
            | Model::KleinbergRing { n, .. }
            | Model::HolmeKim { n, .. } => n,
        }
    }

    /// Whether the output depends on the seed.
    pub fn is_random(&self) -> bool {
        !matches!(self, Model::RecursiveTriangle { .. } | Model::Ring { .. })
    }

    pub fn validate(&self) -> Result<()> {
        fn probability(name: &'static str, p: f64) -> Result<()> {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(invalid(name, format!("{p} not in [0, 1]")))
            }
        }
        fn size(n: usize) -> Result<()> {
            if n >= 3 {
                Ok(())
            } else {
                Err(invalid("n", format!("{n} < 3")))
            }
        }
        match *self {
            Model::RecursiveTriangle { depth } if depth > MAX_DEPTH => {
                Err(invalid("depth", format!("{depth} > {MAX_DEPTH}")))
            }
            Model::RecursiveTriangle { .. } => Ok(()),
            Model::Ring { n } => size(n),
            Model::Nws { n, p } => size(n).and(probability("p", p)),
            Model::KleinbergRing { n, alpha, .. } => {
                size(n)?;
                if alpha >= 0.0 && alpha.is_finite() {
                    Ok(())
                } else {
                    Err(invalid("alpha", format!("{alpha} must be finite and >= 0")))
                }
            }
            Model::HolmeKim { n, m, p_triangle } => {
                size(n)?;
                if m != 2 {
                    return Err(invalid("m", format!("{m}: only m = 2 is supported")));
                }
                probability("p_triangle", p_triangle)
            }
        }
    }

    /// Builds one instance. Deterministic models ignore `seed`.
    pub fn generate(&self, seed: u64) -> Result<Generated> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let plain = |graph| Generated { graph, generation: None };
        Ok(match *self {
            Model::RecursiveTriangle { depth } => {
                let (graph, generation) = recursive_triangle(depth);
                Generated { graph, generation: Some(generation) }
            }
            Model::Ring { n } => plain(ring(n)?),
            Model::Nws { n, p } => plain(nws(n, p, &mut rng)?),
            Model::KleinbergRing { n, q, alpha, allow_self_edges } => {
                plain(kleinberg_ring(n, q, alpha, allow_self_edges, &mut rng)?)
            }
            Model::HolmeKim { n, m, p_triangle } => plain(holme_kim(n, m, p_triangle, &mut rng)?),
        })
    }
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Generated> {
        self.model.generate(self.seed)
    }
}

/// Cycle on `n >= 3` nodes with edges `(i, i+1)` and finally `(n-1, 0)`.
pub fn ring(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("n", format!("ring needs n >= 3, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_indices(n, &edges, false)
}

/// SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `index` derived from `master`:
/// `splitmix64(master ^ splitmix64(index))`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let g = ring(3).unwrap();
        assert_eq!(g.n_edges(), 3);
        assert_eq!(g.mean_clustering(), 1.0);
        let g = ring(100).unwrap();
        assert!(g.degrees().iter().all(|&k| k == 2));
        assert!(g.is_connected());
        assert!(ring(2).is_err());
    }

    #[test]
    fn validation() {
        assert!(Model::Nws { n: 10, p: 1.5 }.validate().is_err());
        assert!(Model::Nws { n: 2, p: 0.5 }.validate().is_err());
        assert!(Model::KleinbergRing { n: 10, q: 1, alpha: -1.0, allow_self_edges: false }
            .validate()
            .is_err());
        assert!(Model::HolmeKim { n: 10, m: 3, p_triangle: 0.5 }.validate().is_err());
        assert!(Model::HolmeKim { n: 10, m: 2, p_triangle: f64::NAN }.validate().is_err());
        assert!(Model::RecursiveTriangle { depth: 8 }.validate().is_ok());
    }

    #[test]
    fn reproducible() {
        let models = [
            Model::Nws { n: 60, p: 0.3 },
            Model::KleinbergRing { n: 60, q: 2, alpha: 2.0, allow_self_edges: false },
            Model::HolmeKim { n: 60, m: 2, p_triangle: 0.5 },
        ];
        for m in &models {
            let a = m.generate(42).unwrap();
            let b = m.generate(42).unwrap();
            assert_eq!(a, b);
            assert_ne!(a.graph.edges(), m.generate(43).unwrap().graph.edges(), "{m:?}");
        }
    }

    #[test]
    fn derived_seeds_differ() {
        let s: Vec<u64> = (0..100).map(|r| derive_seed(7, r)).collect();
        let mut d = s.clone();
        d.sort_unstable();
        d.dedup();
        assert_eq!(d.len(), 100);
        assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
    }
}

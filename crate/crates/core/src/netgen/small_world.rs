use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use super::ring;
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Newman–Watts–Strogatz ring: `ring(n)` plus shortcuts.
///
/// Ring edges `(i, i+1 mod n)` are visited in order of `i`. With probability `p`
/// a uniform node `w` is drawn and `(i, w)` added; a self-edge or an existing
/// edge is redrawn, at most `n` times, after which the shortcut is dropped.
pub fn nws<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("p", format!("{p} not in [0, 1]")));
    }
    let mut g = ring(n)?;
    for i in 0..n {
        if rng.gen::<f64>() >= p {
            continue;
        }
        for _ in 0..n {
            let w = rng.gen_range(0..n);
            if w != i && g.try_add_edge(i, w) {
                break;
            }
        }
    }
    Ok(g)
}

/// Draws ring offsets `k` (target `(i + k) mod n`) with probability
/// proportional to `d(k)^{-alpha}`, `d(k) = min(k, n - k)`.
///
/// Offset 0 (the node itself) has weight 0, or weight 1 when self-edges are
/// enabled.
#[derive(Debug, Clone)]
pub struct RingDistanceSampler {
    cumulative: Vec<f64>,
}

impl RingDistanceSampler {
    pub fn new(n: usize, alpha: f64, allow_self_edges: bool) -> Self {
        let mut total = 0.0;
        let cumulative = (0..n)
            .map(|k| {
                total += Self::weight(n, k, alpha, allow_self_edges);
                total
            })
            .collect();
        RingDistanceSampler { cumulative }
    }

    fn weight(n: usize, k: usize, alpha: f64, allow_self_edges: bool) -> f64 {
        match k {
            0 if allow_self_edges => 1.0,
            0 => 0.0,
            _ => libm::pow(k.min(n - k) as f64, -alpha),
        }
    }

    /// Probability of each offset `0..n`.
    pub fn probabilities(&self) -> Vec<f64> {
        let total = self.cumulative.last().copied().unwrap_or(0.0);
        let mut prev = 0.0;
        self.cumulative
            .iter()
            .map(|&c| {
                let p = (c - prev) / total;
                prev = c;
                p
            })
            .collect()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = self.cumulative[self.cumulative.len() - 1];
        let u = rng.gen::<f64>() * total;
        self.cumulative.partition_point(|&c| c <= u).min(self.cumulative.len() - 1)
    }
}

/// Kleinberg navigable small world on a ring: `ring(n)` plus, for every node
/// `i` in order, `q` independent long-range draws `j` with
/// `P(j) ∝ d_ring(i, j)^{-alpha}`. A draw that hits an existing edge is
/// discarded, so a node gains at most `q` new edges.
pub fn kleinberg_ring<R: Rng + ?Sized>(
    n: usize,
    q: usize,
    alpha: f64,
    allow_self_edges: bool,
    rng: &mut R,
) -> Result<Graph> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(invalid("alpha", format!("{alpha} must be finite and >= 0")));
    }
    let base = ring(n)?;
    let mut g = Graph::new(n, allow_self_edges);
    for &(u, v) in base.edges() {
        g.add_edge(u, v)?;
    }
    let sampler = RingDistanceSampler::new(n, alpha, allow_self_edges);
    for i in 0..n {
        for _ in 0..q {
            let j = (i + sampler.sample(rng)) % n;
            g.try_add_edge(i, j);
        }
    }
    Ok(g)
}

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Holme–Kim power-law cluster graph grown from an empty dyad.
///
/// Nodes `2..n` arrive in order and each makes `m` links. The first link goes to
/// a preferential-attachment (PA) target. Every further link is, with
/// probability `p_triangle`, a triangle link to a uniform neighbor of the last
/// PA target that is not yet adjacent to the new node; otherwise (or if no such
/// neighbor exists) it goes to a fresh PA target.
///
/// PA targets are drawn among earlier nodes not yet adjacent to the new node,
/// with probability proportional to degree, or uniformly when all those
/// degrees are zero. Node 2 therefore links to both dyad nodes.
pub fn holme_kim<R: Rng + ?Sized>(n: usize, m: usize, p_triangle: f64, rng: &mut R) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("n", format!("holme_kim needs n >= 3, got {n}")));
    }
    if m != 2 {
        return Err(invalid("m", format!("{m}: only m = 2 is supported")));
    }
    if !(0.0..=1.0).contains(&p_triangle) {
        return Err(invalid("p_triangle", format!("{p_triangle} not in [0, 1]")));
    }
    let mut g = Graph::new(n, false);
    for v in 2..n {
        let Some(mut target) = attachment_target(&g, v, rng) else { continue };
        g.add_edge(v, target)?;
        let mut links = 1;
        while links < m {
            if rng.gen::<f64>() < p_triangle {
                let candidates: Vec<usize> = g
                    .neighbors(target)
                    .iter()
                    .copied()
                    .filter(|&w| w != v && !g.has_edge(v, w))
                    .collect();
                if !candidates.is_empty() {
                    let w = candidates[rng.gen_range(0..candidates.len())];
                    g.add_edge(v, w)?;
                    links += 1;
                    continue;
                }
            }
            match attachment_target(&g, v, rng) {
                Some(t) => {
                    g.add_edge(v, t)?;
                    target = t;
                    links += 1;
                }
                None => break,
            }
        }
    }
    Ok(g)
}

fn attachment_target<R: Rng + ?Sized>(g: &Graph, v: usize, rng: &mut R) -> Option<usize> {
    let eligible: Vec<usize> = (0..v).filter(|&u| !g.has_edge(v, u)).collect();
    if eligible.is_empty() {
        return None;
    }
    let total: usize = eligible.iter().map(|&u| g.degree(u)).sum();
    if total == 0 {
        return Some(eligible[rng.gen_range(0..eligible.len())]);
    }
    let mut r = rng.gen_range(0..total);
    for &u in &eligible {
        let k = g.degree(u);
        if r < k {
            return Some(u);
        }
        r -= k;
    }
    unreachable!("r < total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::ChaCha8Rng;
    use rand::SeedableRng;

    #[test]
    fn three_nodes_give_a_path() {
        for seed in 0..20 {
            for p in [0.0, 1.0] {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let g = holme_kim(3, 2, p, &mut rng).unwrap();
                assert_eq!(g.sorted_edges(), alloc::vec![(0, 2), (1, 2)]);
            }
        }
    }

    #[test]
    fn every_new_node_makes_two_links() {
        for seed in 0..100 {
            for p in [0.0, 0.5, 1.0] {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let g = holme_kim(100, 2, p, &mut rng).unwrap();
                assert_eq!(g.n_edges(), 196);
                assert!(g.degrees()[..2].iter().all(|&k| k >= 1));
                assert!(g.degrees()[2..].iter().all(|&k| k >= 2));
                assert!(g.is_connected());
            }
        }
    }

    #[test]
    fn triangles_raise_clustering() {
        let mean = |p: f64| {
            (0..50)
                .map(|s| {
                    let mut rng = ChaCha8Rng::seed_from_u64(s);
                    holme_kim(100, 2, p, &mut rng).unwrap().mean_clustering()
                })
                .sum::<f64>()
                / 50.0
        };
        let (c0, c1) = (mean(0.0), mean(1.0));
        assert!(c1 > c0 + 0.3, "clustering {c0} vs {c1}");
    }

    #[test]
    fn heavy_tailed_degrees() {
        let mut max_k = 0;
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = holme_kim(100, 2, 1.0, &mut rng).unwrap();
            max_k = max_k.max(*g.degrees().iter().max().unwrap());
        }
        // a Poisson-like graph with mean degree 4 almost never exceeds 15
        assert!(max_k > 20, "max degree {max_k}");
    }
}

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Generation tags of a recursive triangle network.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Generation {
    /// Generation of each node (0 for the base triangle).
    pub of_node: Vec<u32>,
    /// Generation of each edge, aligned with [`Graph::edges`].
    pub of_edge: Vec<u32>,
}

/// Recursive triangle network of depth `d`.
///
/// Generation 0 is the triangle `(0,1), (1,2), (2,0)`. Generation `g` adds, for
/// every generation-`(g-1)` edge `(u, v)` in creation order, a new node `w`
/// (next free index) with edges `(w, u)` and `(w, v)`. The result has
/// `3·2^d` nodes and `3·(2^{d+1} - 1)` edges.
pub fn recursive_triangle(depth: u32) -> (Graph, Generation) {
    let n = 3usize << depth;
    let mut graph = Graph::new(n, false);
    let mut of_node = vec![0u32; n];
    let mut of_edge = Vec::with_capacity(3 * ((2usize << depth) - 1));

    let mut frontier: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    for &(u, v) in &frontier {
        graph.add_edge(u, v).expect("base triangle");
        of_edge.push(0);
    }
    let mut next = 3;
    for g in 1..=depth {
        let mut created = Vec::with_capacity(2 * frontier.len());
        for &(u, v) in &frontier {
            let w = next;
            next += 1;
            of_node[w] = g;
            for (a, b) in [(w, u), (w, v)] {
                graph.add_edge(a, b).expect("fresh node");
                of_edge.push(g);
                created.push((a, b));
            }
        }
        frontier = created;
    }
    (graph, Generation { of_node, of_edge })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_is_a_triangle() {
        let (g, gen) = recursive_triangle(0);
        assert_eq!((g.n_nodes(), g.n_edges()), (3, 3));
        assert_eq!(gen.of_node, vec![0, 0, 0]);
    }

    #[test]
    fn depth_one_layout() {
        let (g, gen) = recursive_triangle(1);
        assert_eq!((g.n_nodes(), g.n_edges()), (6, 9));
        // nodes 4, 5, 6 sit on base edges (1,2), (2,3), (3,1)
        assert_eq!(g.neighbors(3), &[0, 1]);
        assert_eq!(g.neighbors(4), &[1, 2]);
        assert_eq!(g.neighbors(5), &[0, 2]);
        assert_eq!(gen.of_node, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(gen.of_edge, vec![0, 0, 0, 1, 1, 1, 1, 1, 1]);
        assert_eq!(g.mean_clustering(), 0.75);
    }

    #[test]
    fn closed_forms() {
        for d in 0..=8u32 {
            let (g, gen) = recursive_triangle(d);
            assert_eq!(g.n_nodes(), 3 * (1 << d));
            assert_eq!(g.n_edges(), 3 * ((1 << (d + 1)) - 1));
            for gg in 0..=d {
                let count = gen.of_node.iter().filter(|&&x| x == gg).count();
                let expected = if gg == 0 { 3 } else { 3 << (gg - 1) };
                assert_eq!(count, expected);
            }
            if d > 0 {
                for (i, &gg) in gen.of_node.iter().enumerate() {
                    if gg == d {
                        assert_eq!(g.degree(i), 2);
                    }
                }
            }
        }
    }

    #[test]
    fn depth_three_degrees() {
        let (g, _) = recursive_triangle(3);
        let mut k = g.degrees();
        k.sort_unstable();
        let mut expected = vec![2; 12];
        expected.extend([4; 6]);
        expected.extend([6; 3]);
        expected.extend([8; 3]);
        assert_eq!(k, expected);
    }
}

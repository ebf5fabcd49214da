use ctqw_core::netgen::{derive_seed, kleinberg_ring, nws, recursive_triangle, ring, ChaCha8Rng, Model, RingDistanceSampler};
use rand::SeedableRng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn triangle_sizes() {
    for d in 0..=8u32 {
        let (g, generation) = recursive_triangle(d);
        assert_eq!(g.n_nodes(), 3 << d);
        assert_eq!(g.n_edges(), 3 * ((2usize << d) - 1));
        assert_eq!(generation.of_edge.len(), g.n_edges());
        assert!(g.is_connected());
        // every non-base node has degree 2 when created
        for w in 3..g.n_nodes() {
            assert!(g.degree(w) >= 2);
        }
    }
}

#[test]
fn triangle_clustering() {
    let c = |d| recursive_triangle(d).0.mean_clustering();
    assert!((c(1) - 0.75).abs() < 1e-10);
    assert!((c(2) - 17.0 / 24.0).abs() < 1e-10);
    assert!((c(3) - 16.75 / 24.0).abs() < 1e-10);
    let c8 = c(8);
    assert!((0.685..=0.695).contains(&c8), "{c8}");
}

#[test]
fn kleinberg_sampler_chi_square() {
    let n = 100;
    for (alpha, allow_self) in [(0.0, false), (1.0, false), (2.0, false), (3.0, true)] {
        let sampler = RingDistanceSampler::new(n, alpha, allow_self);
        let probs = sampler.probabilities();
        let draws = 200_000;
        let mut counts = vec![0u64; n];
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..draws {
            counts[sampler.sample(&mut rng)] += 1;
        }
        // pool offsets into bins with expected count >= 5
        let mut stat = 0.0;
        let mut bins = 0usize;
        let (mut obs, mut exp) = (0.0, 0.0);
        for k in 0..n {
            obs += counts[k] as f64;
            exp += probs[k] * draws as f64;
            if exp >= 5.0 || k == n - 1 {
                if exp > 0.0 {
                    stat += (obs - exp) * (obs - exp) / exp;
                    bins += 1;
                }
                obs = 0.0;
                exp = 0.0;
            }
        }
        if !allow_self {
            assert_eq!(counts[0], 0);
        }
        let p_value = 1.0 - ChiSquared::new((bins - 1) as f64).unwrap().cdf(stat);
        assert!(p_value > 0.01, "alpha {alpha}: chi2 {stat} on {bins} bins, p = {p_value}");
    }
}

#[test]
fn kleinberg_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = kleinberg_ring(100, 3, 2.0, false, &mut rng).unwrap();
    let base = ring(100).unwrap();
    for &(u, v) in base.edges() {
        assert!(g.has_edge(u, v));
    }
    assert!(g.n_edges() > 100 && g.n_edges() <= 400);
    assert!((0..100).all(|i| !g.has_edge(i, i)));
}

#[test]
fn nws_connected_over_many_seeds() {
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(9, seed));
        let g = nws(100, 0.05, &mut rng).unwrap();
        assert!(g.is_connected());
        assert!(g.n_edges() >= 100);
    }
}

#[test]
fn generation_is_seed_deterministic() {
    let models = [
        Model::Nws { n: 60, p: 0.1 },
        Model::KleinbergRing { n: 60, q: 2, alpha: 2.0, allow_self_edges: false },
        Model::HolmeKim { n: 60, m: 2, p_triangle: 0.5 },
    ];
    for model in models {
        let a = model.generate(42).unwrap().graph;
        let b = model.generate(42).unwrap().graph;
        let c = model.generate(43).unwrap().graph;
        assert_eq!(a, b);
        assert_ne!(a, c, "{}", model.name());
    }
}

#[test]
fn holme_kim_counts() {
    for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for seed in 0..20 {
            let g = Model::HolmeKim { n: 100, m: 2, p_triangle: p }.generate(seed).unwrap().graph;
            assert_eq!(g.n_edges(), 196);
            assert!(g.is_connected());
        }
    }
}

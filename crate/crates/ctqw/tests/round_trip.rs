use std::path::Path;

use ctqw::io::{format_real, parse_edge_list, read_csv, read_edge_list, render_edge_list, write_csv, write_edge_list, Table};
use ctqw_core::netgen::Model;
use proptest::prelude::*;

#[test]
fn generated_graphs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let models = [
        Model::RecursiveTriangle { depth: 5 },
        Model::Ring { n: 17 },
        Model::Nws { n: 50, p: 0.2 },
        Model::KleinbergRing { n: 40, q: 3, alpha: 1.0, allow_self_edges: true },
        Model::HolmeKim { n: 60, m: 2, p_triangle: 0.7 },
    ];
    for (k, model) in models.iter().enumerate() {
        let g = model.generate(k as u64).unwrap().graph;
        let path = dir.path().join(format!("{k}.edges"));
        write_edge_list(&path, &g, &["round trip".into()]).unwrap();
        let back = read_edge_list(&path, false).unwrap();
        // same edge set, same flag; insertion order becomes sorted order
        assert_eq!(back.sorted_edges(), g.sorted_edges());
        assert_eq!(back.allows_self_edges(), g.allows_self_edges());
        assert_eq!(render_edge_list(&back, &[]), render_edge_list(&g, &[]));
    }
}

proptest! {
    #[test]
    fn edge_lists_round_trip(n in 1usize..30, raw in proptest::collection::vec((0usize..30, 0usize..30), 0..80)) {
        let mut g = ctqw_core::Graph::new(n, false);
        for (u, v) in raw {
            let (u, v) = (u % n, v % n);
            if u != v && !g.has_edge(u, v) {
                g.add_edge(u, v).unwrap();
            }
        }
        let text = render_edge_list(&g, &[]);
        let back = parse_edge_list(&text, false, Path::new("p")).unwrap();
        prop_assert_eq!(back.sorted_edges(), g.sorted_edges());
        prop_assert_eq!(render_edge_list(&back, &[]), text);
    }

    #[test]
    fn csv_round_trip(rows in proptest::collection::vec(proptest::collection::vec(-1e6f64..1e6, 3), 0..20), scale in -20i32..20) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let mut t = Table::new(vec!["a".into(), "b".into(), "c".into()]);
        t.rows = rows.iter().map(|r| r.iter().map(|x| x * 10f64.powi(scale)).collect()).collect();
        write_csv(&path, &t).unwrap();
        let back = read_csv(&path).unwrap();
        prop_assert_eq!(&back, &t.rounded());
        // values already at 12 digits survive unchanged
        write_csv(&path, &back).unwrap();
        prop_assert_eq!(read_csv(&path).unwrap(), back);
    }

    #[test]
    fn format_has_at_most_twelve_digits(x in proptest::num::f64::NORMAL) {
        let s = format_real(x);
        let digits = s.split('e').next().unwrap().chars().filter(char::is_ascii_digit).collect::<String>();
        prop_assert!(digits.trim_start_matches('0').len() <= 12, "{}", s);
        let back: f64 = s.parse().unwrap();
        prop_assert!(((back - x) / x).abs() <= 5e-12);
    }
}

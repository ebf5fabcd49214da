use std::fmt::Write as _;
use std::path::Path;

use ctqw_core::Graph;

use super::{read_text, write_text};
use crate::error::{CliError, Result};

/// Header token marking a graph that may contain self-edges.
const SELF_EDGE_TOKEN: &str = "self-edges";

/// Parses the edge-list format: `#` comments, a header `N <int>` (optionally
/// followed by `self-edges`), then one 1-based `u v` pair per line.
/// `allow_self_edges` also permits `u == u` lines without the header token.
pub fn parse_edge_list(text: &str, allow_self_edges: bool, path: &Path) -> Result<Graph> {
    let err = |line: usize, message: String| CliError::Parse { path: path.to_path_buf(), line, message };
    let mut graph: Option<Graph> = None;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                let n = match fields.as_slice() {
                    ["N", n] | ["N", n, SELF_EDGE_TOKEN] => n
                        .parse::<usize>()
                        .map_err(|_| err(line_no, format!("bad node count {n:?}")))?,
                    _ => return Err(err(line_no, format!("expected header `N <int>`, found {line:?}"))),
                };
                let allow = allow_self_edges || fields.len() == 3;
                graph = Some(Graph::new(n, allow));
            }
            Some(g) => {
                let [u, v] = fields.as_slice() else {
                    return Err(err(line_no, format!("expected `u v`, found {line:?}")));
                };
                let label = |s: &str| s.parse::<usize>().map_err(|_| err(line_no, format!("bad node label {s:?}")));
                let (u, v) = (label(u)?, label(v)?);
                let n = g.n_nodes();
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(line_no, ctqw_core::Error::NodeOutOfRange { label: x, n }.to_string()));
                    }
                }
                g.add_edge(u - 1, v - 1).map_err(|e| err(line_no, e.to_string()))?;
            }
        }
    }
    graph.ok_or_else(|| err(0, "missing `N <int>` header".into()))
}

pub fn read_edge_list(path: &Path, allow_self_edges: bool) -> Result<Graph> {
    parse_edge_list(&read_text(path)?, allow_self_edges, path)
}

/// Edge-list text with edges sorted lexicographically by 1-based label.
pub fn render_edge_list(graph: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = write!(out, "N {}", graph.n_nodes());
    if graph.allows_self_edges() {
        let _ = write!(out, " {SELF_EDGE_TOKEN}");
    }
    out.push('\n');
    for (u, v) in graph.sorted_edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn write_edge_list(path: &Path, graph: &Graph, comments: &[String]) -> Result<()> {
    write_text(path, &render_edge_list(graph, comments))
}

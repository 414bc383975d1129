//! Plain-text edge lists and CSV histograms.
//!
//! An edge list has one `u v` pair per line, whitespace separated. Lines
//! starting with `#` are comments, except for three header directives that
//! [`write_edge_list`] emits so that a file round-trips to an identical
//! [`Graph`]:
//!
//! ```text
//! # directed
//! # self-loops
//! # n=<k>
//! ```
//!
//! A bare `n=<k>` line is accepted as well. Without an `n` header the node
//! count is the largest id plus one.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Graph, GraphError, NodeId};
use crate::metrics::DistanceHistogram;

/// Node ids must stay below this so that every id fits a `u32`.
pub const MAX_NODES: usize = u32::MAX as usize;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: node id {id} exceeds the supported range")]
    IdOverflow { line: usize, id: String },
    #[error("line {line}: node id {id} is not below the declared n={n}")]
    OutsideDeclared { line: usize, id: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn parse_id(token: &str, line: usize) -> Result<NodeId, IoError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(IoError::Parse { line, msg: format!("expected a non-negative integer, got {token:?}") });
    }
    match token.parse::<usize>() {
        Ok(id) if id < MAX_NODES => Ok(id),
        _ => Err(IoError::IdOverflow { line, id: token.to_string() }),
    }
}

fn parse_n(value: &str, line: usize) -> Result<usize, IoError> {
    parse_id(value.trim(), line)
}

/// Reads an edge list. `directed` is combined with a `# directed` header.
/// Duplicate edges collapse; self-loops are kept.
pub fn parse_edge_list<R: BufRead>(reader: R, directed: bool) -> Result<Graph, IoError> {
    let mut directed = directed;
    let mut declared_n = None;
    let mut self_loops = false;
    let mut edges = Vec::new();
    let mut max_id = None;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            let directive = comment.trim();
            if edges.is_empty() {
                match directive {
                    "directed" => directed = true,
                    "self-loops" => self_loops = true,
                    _ => {
                        if let Some(v) = directive.strip_prefix("n=") {
                            declared_n = Some(parse_n(v, lineno)?);
                        }
                    }
                }
            }
            continue;
        }
        if let Some(v) = text.strip_prefix("n=") {
            if !edges.is_empty() {
                return Err(IoError::Parse { line: lineno, msg: "n= header after the first edge".into() });
            }
            declared_n = Some(parse_n(v, lineno)?);
            continue;
        }
        let mut tokens = text.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(IoError::Parse { line: lineno, msg: format!("expected `u v`, got {text:?}") });
        };
        let (u, v) = (parse_id(a, lineno)?, parse_id(b, lineno)?);
        if let Some(n) = declared_n {
            if let Some(&id) = [u, v].iter().find(|&&id| id >= n) {
                return Err(IoError::OutsideDeclared { line: lineno, id, n });
            }
        }
        self_loops |= u == v;
        max_id = max_id.max(Some(u.max(v)));
        edges.push((u, v));
    }
    let n = declared_n.unwrap_or(max_id.map_or(0, |m| m + 1));
    Ok(Graph::build(n, directed, edges, self_loops)?)
}

/// Convenience wrapper over [`parse_edge_list`] for in-memory text.
pub fn parse_edge_list_str(text: &str, directed: bool) -> Result<Graph, IoError> {
    parse_edge_list(text.as_bytes(), directed)
}

/// Canonical form: headers only where needed, one edge per line, `u <= v`
/// for undirected graphs, lexicographic order.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<(), IoError> {
    if g.is_directed() {
        writeln!(w, "# directed")?;
    }
    if g.allows_self_loops() {
        writeln!(w, "# self-loops")?;
    }
    let n = g.num_nodes();
    // The last node is implied only when it has an edge.
    let implied = n > 0 && (g.out_degree(n - 1) > 0 || g.in_degree(n - 1) > 0);
    if !implied {
        writeln!(w, "# n={n}")?;
    }
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

/// `distance,fraction` over finite distances, in increasing distance.
pub fn write_histogram_csv<W: Write>(h: &DistanceHistogram, mut w: W) -> Result<(), IoError> {
    writeln!(w, "distance,fraction")?;
    if h.finite_pairs() > 0 {
        for (d, f) in h.fractions() {
            writeln!(w, "{d},{f}")?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn histogram_csv_string(h: &DistanceHistogram) -> String {
    let mut buf = Vec::new();
    write_histogram_csv(h, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{path_graph, Model, ModelSpec};
    use crate::metrics::{exhaustive_pair_distances, sample_pair_distances, Scope};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(parse_edge_list_str("0 1\n1 2\n", false).unwrap(), path_graph(3));
        let g = parse_edge_list_str("# comment\n0 1\n0 1\n", false).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert!(matches!(parse_edge_list_str("0 x\n", false), Err(IoError::Parse { line: 1, .. })));
        assert_eq!(edge_list_string(&path_graph(3)), "0 1\n1 2\n");
        let d = Graph::build(2, true, [(0, 1)], false).unwrap();
        assert_eq!(edge_list_string(&d), "# directed\n0 1\n");
        assert_eq!(parse_edge_list_str(&edge_list_string(&d), false).unwrap(), d);
    }

    #[test]
    fn headers_and_errors() {
        let g = parse_edge_list_str("n=5\n0 1\n", false).unwrap();
        assert_eq!(g.num_nodes(), 5);
        let g = parse_edge_list_str("# n=4\n\n  2   3  \n", false).unwrap();
        assert_eq!(g.num_nodes(), 4);
        // Node 3 carries an edge, so n is implied.
        assert_eq!(edge_list_string(&g), "2 3\n");
        let g = parse_edge_list_str("# n=6\n2 3\n", false).unwrap();
        assert_eq!(edge_list_string(&g), "# n=6\n2 3\n");
        assert!(matches!(parse_edge_list_str("0 1\n1\n", false), Err(IoError::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list_str("0 1 2\n", false), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list_str("-1 2\n", false), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_edge_list_str("0 99999999999999999999999\n", false),
            Err(IoError::IdOverflow { line: 1, .. })
        ));
        assert!(matches!(parse_edge_list_str("0 4294967295\n", false), Err(IoError::IdOverflow { .. })));
        assert!(matches!(
            parse_edge_list_str("n=3\n0 1\n1 3\n", false),
            Err(IoError::OutsideDeclared { line: 3, id: 3, n: 3 })
        ));
        assert_eq!(parse_edge_list_str("", false).unwrap().num_nodes(), 0);
    }

    #[test]
    fn self_loops_round_trip() {
        let g = parse_edge_list_str("0 0\n0 1\n", false).unwrap();
        assert!(g.allows_self_loops());
        let text = edge_list_string(&g);
        assert_eq!(text, "# self-loops\n0 0\n0 1\n");
        assert_eq!(parse_edge_list_str(&text, false).unwrap(), g);
    }

    #[test]
    fn generated_graphs_round_trip() {
        let models = [
            Model::ErdosRenyi { n: 300, mean_degree: 3.0 },
            Model::WattsStrogatz { n: 300, m: 2, p_rewire: 0.3 },
            Model::Kleinberg { n: 256, r: 0.0, p_local: 1, q_long: 1 },
            Model::Kleinberg { n: 256, r: 1.5, p_local: 2, q_long: 3 },
            Model::BarabasiAlbert { n: 300, m_attach: 2 },
            Model::Configuration { n: 300, tau: 2.5 },
        ];
        for (seed, model) in models.into_iter().enumerate() {
            let g = ModelSpec::new(model, seed as u64).generate().unwrap().graph;
            let text = edge_list_string(&g);
            assert_eq!(parse_edge_list_str(&text, false).unwrap(), g);
            assert_eq!(edge_list_string(&parse_edge_list_str(&text, false).unwrap()), text);
        }
    }

    #[test]
    fn csv_layout() {
        let csv = histogram_csv_string(&exhaustive_pair_distances(&path_graph(4)));
        assert_eq!(csv, "distance,fraction\n1,0.5\n2,0.3333333333333333\n3,0.16666666666666666\n");
        let g = ModelSpec::new(Model::ErdosRenyi { n: 2000, mean_degree: 1.5 }, 3).generate().unwrap().graph;
        let h = sample_pair_distances(&g, 5000, 1, Scope::All).unwrap();
        let sum: f64 = histogram_csv_string(&h)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
            .sum();
        assert!((sum - 1.0).abs() <= 1e-9);
    }

    proptest! {
        #[test]
        fn arbitrary_edge_sets_round_trip(
            n in 1usize..40,
            directed: bool,
            raw in proptest::collection::vec((0usize..40, 0usize..40), 0..80),
        ) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n, v % n)).collect();
            let g = Graph::build(n, directed, edges, true).unwrap();
            let text = edge_list_string(&g);
            prop_assert_eq!(parse_edge_list_str(&text, false).unwrap(), g);
        }
    }
}

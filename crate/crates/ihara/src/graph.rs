//! Oriented doubling of a finite connected unoriented multigraph, with the
//! structural maps (reversal involution, successor relation, connectedness
//! matrix K, outer-degree-minus-one matrix Q) the rest of the crate consumes.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge {edge} endpoint {vertex} out of range (vertex count {vertex_count})")]
    InvalidEndpoint {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {vertex} has degree 0")]
    IsolatedVertex { vertex: usize },
}

/// Input multigraph: unordered edges over 0-based vertices. Loops and
/// parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnorientedGraphSpec {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UnorientedGraphSpec {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        UnorientedGraphSpec {
            vertex_count,
            edges,
        }
    }

    /// Text format: first line `vertices N`, then `edge I J` lines. Blank
    /// lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut vertex_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match (parts.as_slice(), vertex_count) {
                (["vertices", n], None) => {
                    let n: usize = n.parse().map_err(|_| GraphError::Parse {
                        line: lineno,
                        msg: format!("invalid vertex count `{n}`"),
                    })?;
                    if n == 0 {
                        return Err(GraphError::Parse {
                            line: lineno,
                            msg: "vertex count must be positive".to_string(),
                        });
                    }
                    vertex_count = Some(n);
                }
                (["vertices", _], Some(_)) => {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "duplicate `vertices` line".to_string(),
                    });
                }
                (["edge", i, j], Some(n)) => {
                    let pi: usize = i.parse().map_err(|_| GraphError::Parse {
                        line: lineno,
                        msg: format!("invalid endpoint `{i}`"),
                    })?;
                    let pj: usize = j.parse().map_err(|_| GraphError::Parse {
                        line: lineno,
                        msg: format!("invalid endpoint `{j}`"),
                    })?;
                    if pi >= n || pj >= n {
                        return Err(GraphError::Parse {
                            line: lineno,
                            msg: format!("endpoint out of range in `{line}` (vertices {n})"),
                        });
                    }
                    edges.push((pi, pj));
                }
                (["edge", ..], None) => {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "`edge` before `vertices`".to_string(),
                    });
                }
                _ => {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("unrecognized line `{line}`"),
                    });
                }
            }
        }
        let vertex_count = vertex_count.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing `vertices` line".to_string(),
        })?;
        Ok(UnorientedGraphSpec {
            vertex_count,
            edges,
        })
    }

    /// Serializer; round-trips bit-exactly through [`UnorientedGraphSpec::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for &(i, j) in &self.edges {
            let _ = writeln!(out, "edge {i} {j}");
        }
        out
    }
}

/// Oriented doubling: input edge k becomes oriented edges 2k (forward) and
/// 2k+1 (reverse), so the reversal involution is `e ^ 1`. Immutable after
/// construction.
#[derive(Clone, Debug)]
pub struct OrientedGraph {
    c0: usize,
    /// (origin, end) per oriented edge id.
    oriented: Vec<(usize, usize)>,
    /// Outgoing oriented edge ids per vertex, ascending.
    out: Vec<Vec<usize>>,
}

pub fn build_oriented(spec: &UnorientedGraphSpec) -> Result<OrientedGraph, GraphError> {
    let n = spec.vertex_count;
    for (k, &(i, j)) in spec.edges.iter().enumerate() {
        for v in [i, j] {
            if v >= n {
                return Err(GraphError::InvalidEndpoint {
                    edge: k,
                    vertex: v,
                    vertex_count: n,
                });
            }
        }
    }
    let mut oriented = Vec::with_capacity(2 * spec.edges.len());
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in &spec.edges {
        out[i].push(oriented.len());
        oriented.push((i, j));
        out[j].push(oriented.len());
        oriented.push((j, i));
    }
    if n > 1 {
        if let Some(v) = out.iter().position(|o| o.is_empty()) {
            return Err(GraphError::IsolatedVertex { vertex: v });
        }
        // BFS over the underlying graph from vertex 0.
        let mut seen = vec![false; n];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(v) = queue.pop() {
            for &e in &out[v] {
                let w = oriented[e].1;
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(GraphError::Disconnected);
        }
    }
    Ok(OrientedGraph { c0: n, oriented, out })
}

impl OrientedGraph {
    /// Vertex count (c₀).
    pub fn vertex_count(&self) -> usize {
        self.c0
    }

    /// Unoriented edge count (c₁).
    pub fn c1(&self) -> usize {
        self.oriented.len() / 2
    }

    /// Number of oriented edges, 2c₁.
    pub fn oriented_edge_count(&self) -> usize {
        self.oriented.len()
    }

    pub fn origin(&self, e: usize) -> usize {
        self.oriented[e].0
    }

    pub fn end(&self, e: usize) -> usize {
        self.oriented[e].1
    }

    /// Reversal involution J.
    pub fn reverse(&self, e: usize) -> usize {
        e ^ 1
    }

    /// Oriented edges leaving `v`, ascending by edge id.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// All e' with origin(e') = end(e), in edge order. The reverse of `e` is
    /// always among them; reducedness is filtered by consumers.
    pub fn successors(&self, e: usize) -> &[usize] {
        &self.out[self.end(e)]
    }

    /// Connectedness matrix K: K(i,j) = number of oriented edges i → j.
    pub fn connectedness_matrix(&self) -> Vec<Vec<usize>> {
        let mut k = vec![vec![0usize; self.c0]; self.c0];
        for &(i, j) in &self.oriented {
            k[i][j] += 1;
        }
        k
    }

    /// Diagonal of Q: outer degree minus one per vertex.
    pub fn q_diagonal(&self) -> Vec<usize> {
        self.out.iter().map(|o| o.len().saturating_sub(1)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> UnorientedGraphSpec {
        UnorientedGraphSpec::new(3, vec![(0, 1), (1, 2), (2, 0)])
    }

    #[test]
    fn triangle_doubling() {
        let g = build_oriented(&triangle()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.oriented_edge_count(), 6);
        for e in 0..6 {
            assert_eq!(g.reverse(g.reverse(e)), e);
            assert_ne!(g.reverse(e), e);
            assert_eq!(g.origin(g.reverse(e)), g.end(e));
            assert_eq!(g.end(g.reverse(e)), g.origin(e));
        }
        assert_eq!(g.origin(0), 0);
        assert_eq!(g.end(0), 1);
        assert_eq!(g.origin(1), 1);
        assert_eq!(g.end(1), 0);
    }

    #[test]
    fn loop_gives_two_oriented_loops() {
        let g = build_oriented(&UnorientedGraphSpec::new(1, vec![(0, 0)])).unwrap();
        assert_eq!(g.oriented_edge_count(), 2);
        for e in 0..2 {
            assert_eq!(g.origin(e), 0);
            assert_eq!(g.end(e), 0);
        }
        assert_eq!(g.reverse(0), 1);
        // A loop succeeds both itself and its reverse.
        assert_eq!(g.successors(0), &[0, 1]);
        assert_eq!(g.connectedness_matrix(), vec![vec![2]]);
    }

    #[test]
    fn path_structure() {
        let g = build_oriented(&UnorientedGraphSpec::new(2, vec![(0, 1)])).unwrap();
        assert_eq!(g.connectedness_matrix(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(g.q_diagonal(), vec![0, 0]);
        assert_eq!(g.successors(0), &[1]);
    }

    #[test]
    fn triangle_successors() {
        let g = build_oriented(&triangle()).unwrap();
        // Edge 0 is 0→1; successors are edges out of 1: 1 (1→0) and 2 (1→2).
        assert_eq!(g.successors(0), &[1, 2]);
    }

    #[test]
    fn degree_sum_identity() {
        let g = build_oriented(&triangle()).unwrap();
        let q = g.q_diagonal();
        let total: usize = q.iter().map(|&x| x + 1).sum();
        assert_eq!(total, 2 * g.c1());
    }

    #[test]
    fn k_symmetric_with_outdegree_row_sums() {
        let spec = UnorientedGraphSpec::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 2)]);
        let g = build_oriented(&spec).unwrap();
        let k = g.connectedness_matrix();
        let q = g.q_diagonal();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k[i][j], k[j][i]);
            }
            assert_eq!(k[i].iter().sum::<usize>(), q[i] + 1);
        }
    }

    #[test]
    fn successor_duality() {
        let spec = UnorientedGraphSpec::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)]);
        let g = build_oriented(&spec).unwrap();
        for e in 0..g.oriented_edge_count() {
            for ep in 0..g.oriented_edge_count() {
                let fwd = g.successors(e).contains(&ep);
                let bwd = g.successors(g.reverse(ep)).contains(&g.reverse(e));
                assert_eq!(fwd, bwd, "duality failed at ({e},{ep})");
            }
        }
    }

    #[test]
    fn rejects_disconnected_and_isolated() {
        let disc = UnorientedGraphSpec::new(4, vec![(0, 1), (2, 3)]);
        assert!(matches!(build_oriented(&disc), Err(GraphError::Disconnected)));
        let iso = UnorientedGraphSpec::new(3, vec![(0, 1)]);
        assert!(matches!(
            build_oriented(&iso),
            Err(GraphError::IsolatedVertex { vertex: 2 })
        ));
    }

    #[test]
    fn parse_round_trip() {
        let text = "# a comment\nvertices 3\nedge 0 1\n\nedge 1 2\nedge 2 0\n";
        let spec = UnorientedGraphSpec::parse(text).unwrap();
        assert_eq!(spec, triangle());
        let spec2 = UnorientedGraphSpec::parse(&spec.to_text()).unwrap();
        assert_eq!(spec, spec2);
    }

    #[test]
    fn parse_rejects_bad_endpoint() {
        let err = UnorientedGraphSpec::parse("vertices 3\nedge 0 5\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
    }

    #[test]
    fn single_vertex_no_edges_is_valid() {
        let g = build_oriented(&UnorientedGraphSpec::new(1, vec![])).unwrap();
        assert_eq!(g.oriented_edge_count(), 0);
    }
}

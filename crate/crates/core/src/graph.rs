//! Undirected simple finite graphs.
//!
//! Vertices are `0..n`. Figures in the literature usually number vertices
//! from 1; every generator here documents its 0-indexed vertex order so the
//! shift is always explicit.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// An undirected simple graph. Edges are stored as sorted pairs `(u, v)`
/// with `u < v`, without duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicate edges collapse; loops
    /// and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge {{{u},{v}}} has an endpoint >= n = {n}"
                )));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// The 0/1 adjacency matrix as an exact integer matrix.
    pub fn adjacency(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            m.set(u, v, 1.into());
            m.set(v, u, 1.into());
        }
        m
    }

    /// The adjacency matrix in floating point, row-major.
    pub fn adjacency_f64(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            m[(u, v)] = 1.0;
            m[(v, u)] = 1.0;
        }
        m
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2 - self.size());
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph { n: self.n, edges }
    }

    /// The common degree if every vertex has the same degree. `None` for the
    /// null graph.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        deg.iter().all(|&d| d == first).then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Disjoint union with `other`; the vertices of `other` are shifted by
    /// `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        edges.sort_unstable();
        Graph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Parses the edge-list text format: the first significant line holds
    /// `n`, every further non-empty line holds one edge `u v`. Lines starting
    /// with `#` are comments.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (first_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::Parse {
            line: first_line,
            msg: format!("expected a vertex count, found `{header}`"),
        })?;

        let mut set = BTreeSet::new();
        for (line, l) in lines {
            let mut parts = l.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                let tok = tok.ok_or(Error::Parse {
                    line,
                    msg: format!("expected `u v`, found `{l}`"),
                })?;
                tok.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("`{tok}` is not a vertex index"),
                })
            };
            let u = parse(parts.next())?;
            let v = parse(parts.next())?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line,
                    msg: format!("trailing tokens in `{l}`"),
                });
            }
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex index out of range (n = {n})"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    msg: format!("loop at vertex {u}"),
                });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph { n, edges }
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`. For `K_{1,b}` the center is 0.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        Graph { n: a + b, edges }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Graph { n, edges }
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::Invalid(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Petersen graph: outer 5-cycle on `0..5`, spokes `i - i+5`, inner
    /// pentagram `5+i - 5+(i+2)%5`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, edges).expect("petersen edges are valid")
    }

    /// Circulant graph on `n` vertices where `u ~ v` iff `|u - v| mod n` is
    /// one of the given jumps (or its negative).
    pub fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
        let mut edges = Vec::new();
        for &k in jumps {
            let k = k % n.max(1);
            if k == 0 {
                return Err(Error::Invalid(
                    "circulant jump must be nonzero mod n".into(),
                ));
            }
            for u in 0..n {
                edges.push((u, (u + k) % n));
            }
        }
        Graph::new(n, edges)
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p.clamp(0.0, 1.0)) {
                    edges.push((u, v));
                }
            }
        }
        Graph { n, edges }
    }

    /// Builds a graph from the generator mini-language:
    /// `K<n>`, `K<a>,<b>`, `P<n>`, `C<n>`, `E<n>` or `petersen`.
    pub fn generate(spec: &str) -> Result<Graph> {
        let s = spec.trim();
        let unknown = || Error::UnknownGenerator(s.to_string());
        if s.eq_ignore_ascii_case("petersen") {
            return Ok(Graph::petersen());
        }
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(unknown)?;
        let rest = chars.as_str();
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        match kind {
            'K' => match rest.split_once(',') {
                Some((a, b)) => Ok(Graph::complete_bipartite(num(a)?, num(b)?)),
                None => Ok(Graph::complete(num(rest)?)),
            },
            'P' => Ok(Graph::path(num(rest)?)),
            'C' => Graph::cycle(num(rest)?),
            'E' => Ok(Graph::empty(num(rest)?)),
            _ => Err(unknown()),
        }
    }
}

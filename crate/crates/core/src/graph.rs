//! Finite simple undirected graphs and their twin partitions.
//!
//! Vertices are zero-based indices `0..n` throughout the library. The text
//! format, like every user-facing report, numbers vertices from 1.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::field::{FieldSpec, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("vertex index {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex index {0}")]
    Loop(usize),
    #[error("duplicate edge between vertex indices {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex indices {from} and {to} lie in different components")]
    Unreachable { from: usize, to: usize },
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
}

/// Parse failures; vertex labels here are the one-based labels of the file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing \"n m\" header")]
    MissingHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("loop at vertex {0}")]
    Loop(u64),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(u64, u64),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Sorted neighbour lists.
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            n,
            adj: vec![Vec::new(); n],
        })
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => self.adj[u].insert(pos, v),
        }
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        Ok(())
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        Self::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `i j`
    /// with one-based labels. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            kind: ParseErrorKind::MissingHeader,
        })?;
        let [n, m] = parse_pair(header_line, header)?;
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let n = n as usize;
        let declared = m as usize;
        let mut g = Self::empty(n)?;
        let mut found = 0;
        for (line, text) in lines {
            let [i, j] = parse_pair(line, text)?;
            let err = |kind| GraphError::Parse { line, kind };
            for v in [i, j] {
                if v == 0 || v > n as u64 {
                    return Err(err(ParseErrorKind::VertexOutOfRange { vertex: v, n }));
                }
            }
            if i == j {
                return Err(err(ParseErrorKind::Loop(i)));
            }
            if g.is_adjacent(i as usize - 1, j as usize - 1) {
                return Err(err(ParseErrorKind::DuplicateEdge(i.min(j), i.max(j))));
            }
            g.add_edge(i as usize - 1, j as usize - 1)?;
            found += 1;
        }
        if found != declared {
            return Err(GraphError::Parse {
                line: header_line,
                kind: ParseErrorKind::EdgeCountMismatch { declared, found },
            });
        }
        Ok(g)
    }

    /// The edge-list text format, edges sorted, `i < j`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn neighbors(&self, v: usize) -> Result<&[usize], GraphError> {
        self.check_vertex(v)?;
        Ok(&self.adj[v])
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.neighbors(v).map(<[usize]>::len)
    }

    /// Unchecked neighbour access for internal loops.
    pub(crate) fn nbrs(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj
            .get(u)
            .is_some_and(|ns| ns.binary_search(&v).is_ok())
    }

    /// 0/1 adjacency matrix reduced into `field`.
    pub fn adjacency_matrix(&self, field: FieldSpec) -> Matrix {
        Matrix::from_fn(field, self.n, self.n, |i, j| {
            if self.is_adjacent(i, j) {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertex(source)?;
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0)
            .expect("graphs have at least one vertex")
            .iter()
            .all(Option::is_some)
    }

    pub fn distance(&self, from: usize, to: usize) -> Result<usize, GraphError> {
        self.check_vertex(to)?;
        self.bfs_distances(from)?[to].ok_or(GraphError::Unreachable { from, to })
    }

    /// True iff some component is not 2-colourable.
    pub fn has_odd_cycle(&self) -> bool {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].expect("coloured");
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return true,
                        Some(_) => {}
                    }
                }
            }
        }
        false
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        check_permutation(perm, self.n)?;
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub fn twin_partition(&self) -> TwinPartition {
        TwinPartition::new(self)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

fn parse_pair(line: usize, text: &str) -> Result<[u64; 2], GraphError> {
    let malformed = || GraphError::Parse {
        line,
        kind: ParseErrorKind::Malformed(text.to_string()),
    };
    let mut it = text.split_whitespace();
    let a = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(malformed)?;
    let b = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(malformed)?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok([a, b])
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<(), GraphError> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(GraphError::InvalidPermutation(n));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(GraphError::InvalidPermutation(n));
        }
    }
    Ok(())
}

/// Partition of the vertices into twin classes (identical neighbour sets).
///
/// Classes are ordered by their smallest vertex and list members in
/// ascending order. `sigma` relabels vertices so that class `k` occupies
/// the positions `offsets[k]..offsets[k + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    sigma: Vec<usize>,
    offsets: Vec<usize>,
}

impl TwinPartition {
    fn new(g: &Graph) -> Self {
        let mut by_neighbourhood: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for v in 0..g.n {
            by_neighbourhood.entry(g.nbrs(v)).or_default().push(v);
        }
        let mut classes: Vec<Vec<usize>> = by_neighbourhood.into_values().collect();
        classes.sort_by_key(|c| c[0]);

        let mut class_of = vec![0; g.n];
        let mut sigma = vec![0; g.n];
        let mut offsets = Vec::with_capacity(classes.len() + 1);
        offsets.push(0);
        let mut next = 0;
        for (k, class) in classes.iter().enumerate() {
            for &v in class {
                class_of[v] = k;
                sigma[v] = next;
                next += 1;
            }
            offsets.push(next);
        }
        Self {
            classes,
            class_of,
            sigma,
            offsets,
        }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Smallest vertex of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class_members(&self, v: usize) -> &[usize] {
        &self.classes[self.class_of[v]]
    }

    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        self.class_of[u] == self.class_of[v]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_twin_free(&self) -> bool {
        self.max_class_size() <= 1
    }

    /// Prefix sums `t_0 = 0, t_1, ..., t_m` of the class sizes.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// `sigma[v]` is the new position of vertex `v`.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }
}

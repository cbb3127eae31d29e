//! Graph and forest representation.
//!
//! Vertices are `0..n`. Adjacency is stored in one flat array with per-vertex
//! offsets; lists are sorted, with no loops and no parallel edges. Graphs are
//! immutable once built.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeList", into = "EdgeList")]
pub struct Graph {
    start: Vec<usize>,
    nbrs: Vec<usize>,
}

/// Wire form of a graph: vertex count plus edge list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TryFrom<EdgeList> for Graph {
    type Error = Error;
    fn try_from(e: EdgeList) -> Result<Graph> {
        Graph::from_edges(e.n, &e.edges)
    }
}

impl From<Graph> for EdgeList {
    fn from(g: Graph) -> EdgeList {
        EdgeList { n: g.n(), edges: g.edges() }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { start: vec![0; n + 1], nbrs: Vec::new() }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range ids.
    /// Error line numbers are 1-based edge indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        build(n, edges, |i| i + 1)
    }

    /// Builds from adjacency lists that are already symmetric and loop-free.
    fn from_lists(lists: impl ExactSizeIterator<Item = Vec<usize>>) -> Self {
        let mut start = Vec::with_capacity(lists.len() + 1);
        let mut nbrs = Vec::new();
        start.push(0);
        for mut l in lists {
            l.sort_unstable();
            nbrs.extend(l);
            start.push(nbrs.len());
        }
        Graph { start, nbrs }
    }

    pub fn n(&self) -> usize {
        self.start.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[self.start[v]..self.start[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.start[v + 1] - self.start[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.neighbors(u).iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    /// Subgraph induced on `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        Graph::from_lists(
            keep.iter().map(|&v| self.neighbors(v).iter().filter(|&&w| index[w] != usize::MAX).map(|&w| index[w]).collect()),
        )
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let (k, m) = (self.n(), self.nbrs.len());
        let mut start = self.start.clone();
        start.extend(other.start[1..].iter().map(|&x| x + m));
        let mut nbrs = self.nbrs.clone();
        nbrs.extend(other.nbrs.iter().map(|&v| v + k));
        Graph { start, nbrs }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &y in self.neighbors(x) {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Neighbor bitmasks; only meaningful for `n <= 64`.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        (0..self.n()).map(|x| self.neighbors(x).iter().fold(0u64, |m, &v| m | (1 << v))).collect()
    }

    /// Renders the edge-list text format accepted by [`parse_graph`].
    pub fn to_edge_list_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v`. Blank lines and lines starting with `#` are ignored. Errors carry
/// 1-based line numbers of the input text.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Malformed { line: 1, reason: "missing header".into() })?;
    let nums = parse_pair(hline, header)?;
    let (n, m) = nums;

    let mut edges = Vec::with_capacity(m.min(1 << 20));
    let mut line_of = Vec::with_capacity(m.min(1 << 20));
    for (line, l) in lines {
        edges.push(parse_pair(line, l)?);
        line_of.push(line);
    }
    if edges.len() != m {
        return Err(Error::Malformed { line: hline, reason: format!("header declares {m} edges, found {}", edges.len()) });
    }
    build(n, &edges, |i| line_of[i])
}

/// Counting-sort construction. `line(i)` names edge `i` in error messages.
fn build(n: usize, edges: &[(usize, usize)], line: impl Fn(usize) -> usize) -> Result<Graph> {
    let mut start = vec![0usize; n + 1];
    for (i, &(u, v)) in edges.iter().enumerate() {
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { line: line(i), vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line: line(i), vertex: u });
        }
        start[u + 1] += 1;
        start[v + 1] += 1;
    }
    for x in 0..n {
        start[x + 1] += start[x];
    }
    let mut fill = start.clone();
    let mut nbrs = vec![0; 2 * edges.len()];
    for &(u, v) in edges {
        nbrs[fill[u]] = v;
        fill[u] += 1;
        nbrs[fill[v]] = u;
        fill[v] += 1;
    }
    let mut dup = false;
    for x in 0..n {
        let l = &mut nbrs[start[x]..start[x + 1]];
        l.sort_unstable();
        dup |= l.windows(2).any(|w| w[0] == w[1]);
    }
    if dup {
        let mut seen = HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { line: line(i), u, v });
            }
        }
    }
    Ok(Graph { start, nbrs })
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let bad = |reason: &str| Error::Malformed { line, reason: reason.to_string() };
    let a = it.next().ok_or_else(|| bad("expected two integers"))?;
    let b = it.next().ok_or_else(|| bad("expected two integers"))?;
    if it.next().is_some() {
        return Err(bad("trailing tokens"));
    }
    let a = a.parse().map_err(|_| bad(&format!("not a nonnegative integer: {a:?}")))?;
    let b = b.parse().map_err(|_| bad(&format!("not a nonnegative integer: {b:?}")))?;
    Ok((a, b))
}

/// An acyclic graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Forest(Graph);

impl Forest {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }
}

impl std::ops::Deref for Forest {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl TryFrom<Graph> for Forest {
    type Error = Error;
    fn try_from(g: Graph) -> Result<Forest> {
        validate_forest(g)
    }
}

/// Succeeds iff `g` is acyclic; otherwise returns a witness cycle.
pub fn validate_forest(g: Graph) -> Result<Forest> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if y == parent[x] {
                    continue;
                }
                if depth[y] != usize::MAX {
                    return Err(Error::CycleDetected { cycle: tree_cycle(&parent, &depth, x, y) });
                }
                parent[y] = x;
                depth[y] = depth[x] + 1;
                stack.push(y);
            }
        }
    }
    Ok(Forest(g))
}

/// Cycle closed by the non-tree edge `x-y` in a DFS/BFS forest.
fn tree_cycle(parent: &[usize], depth: &[usize], x: usize, y: usize) -> Vec<usize> {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// A vertex with at least one leaf neighbor and at most one non-leaf neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stem {
    pub v: usize,
    /// Leaf neighbors, sorted.
    pub leaves: Vec<usize>,
    /// The non-leaf neighbor, if any.
    pub attach: Option<usize>,
}

impl Stem {
    pub fn r(&self) -> usize {
        self.leaves.len()
    }
}

/// Lowest-id stem of the forest, or `None` iff it has no edges.
pub fn find_stem(f: &Forest) -> Option<Stem> {
    let live = vec![true; f.n()];
    find_stem_live(f.graph(), &live)
}

/// Lowest-id stem of the subforest induced on `live`.
pub fn find_stem_live(g: &Graph, live: &[bool]) -> Option<Stem> {
    let deg = |x: usize| g.neighbors(x).iter().filter(|&&y| live[y]).count();
    (0..g.n()).filter(|&v| live[v]).find_map(|v| stem_at(g, live, v, &deg))
}

/// The stem structure at `v` in the live subforest, if `v` is a stem.
pub fn stem_at(g: &Graph, live: &[bool], v: usize, deg: &dyn Fn(usize) -> usize) -> Option<Stem> {
    let mut leaves = Vec::new();
    let mut attach = None;
    for &y in g.neighbors(v).iter().filter(|&&y| live[y]) {
        if deg(y) == 1 {
            leaves.push(y);
        } else if attach.replace(y).is_some() {
            return None;
        }
    }
    if leaves.is_empty() {
        return None;
    }
    Some(Stem { v, leaves, attach })
}

/// A bipartition `(A, B)` with its crossing edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub crossing: Vec<(usize, usize)>,
}

pub fn cut_edges(g: &Graph, a: &[usize]) -> Cut {
    let mut in_a = vec![false; g.n()];
    for &x in a {
        in_a[x] = true;
    }
    let a: Vec<usize> = (0..g.n()).filter(|&x| in_a[x]).collect();
    let b: Vec<usize> = (0..g.n()).filter(|&x| !in_a[x]).collect();
    let crossing = g.edges().into_iter().filter(|&(u, v)| in_a[u] != in_a[v]).collect();
    Cut { a, b, crossing }
}

/// Standard graph families.
pub mod families {
    use super::{Forest, Graph};

    fn forest(n: usize, edges: &[(usize, usize)]) -> Forest {
        Forest(Graph::from_edges(n, edges).expect("family edges are valid"))
    }

    pub fn edgeless(n: usize) -> Forest {
        forest(n, &[])
    }

    pub fn path(n: usize) -> Forest {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        forest(n, &edges)
    }

    /// `K_{1,n-1}` with center 0.
    pub fn star(n: usize) -> Forest {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        forest(n, &edges)
    }

    /// Double-star `S_{a,b}`: centers 0 and 1, then `a` leaves on 0 and `b` on 1.
    pub fn double_star(a: usize, b: usize) -> Forest {
        let mut edges = vec![(0, 1)];
        edges.extend((0..a).map(|i| (0, 2 + i)));
        edges.extend((0..b).map(|i| (1, 2 + a + i)));
        forest(a + b + 2, &edges)
    }

    /// Subdivided double-star `S'_{a,b}`: centers 0 and 1 joined through 2.
    pub fn subdivided_double_star(a: usize, b: usize) -> Forest {
        let mut edges = vec![(0, 2), (2, 1)];
        edges.extend((0..a).map(|i| (0, 3 + i)));
        edges.extend((0..b).map(|i| (1, 3 + a + i)));
        forest(a + b + 3, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).expect("valid")
    }

    /// Disjoint union of forests.
    pub fn union(a: &Forest, b: &Forest) -> Forest {
        Forest(a.graph().disjoint_union(b.graph()))
    }
}

//! Free-tree enumeration and canonical encodings.
//!
//! Rooted trees are produced as canonical level sequences in reverse
//! lexicographic order; every rooted tree whose root is a center is kept and
//! deduplicated by its center-rooted AHU code, which leaves one
//! representative per isomorphism class.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Forest, Graph};

pub const MAX_TREE_N: usize = 18;
pub const MAX_FOREST_N: usize = 14;

/// Streams one tree per isomorphism class of `n`-vertex trees.
pub fn enumerate_trees(n: usize) -> Result<TreeIter> {
    if !(1..=MAX_TREE_N).contains(&n) {
        return Err(Error::OutOfRange { n, min: 1, max: MAX_TREE_N });
    }
    Ok(TreeIter { levels: Some((0..n).collect()), seen: HashSet::new() })
}

pub struct TreeIter {
    levels: Option<Vec<usize>>,
    seen: HashSet<String>,
}

impl Iterator for TreeIter {
    type Item = Forest;

    fn next(&mut self) -> Option<Forest> {
        loop {
            let levels = self.levels.take()?;
            self.levels = next_level_sequence(&levels);
            let parent = parents_of(&levels);
            if !root_is_center(&levels, &parent) {
                continue;
            }
            let g = tree_from_parents(&parent);
            if self.seen.insert(ahu_code(&g)) {
                return Some(Forest::try_from(g).expect("level sequences encode trees"));
            }
        }
    }
}

/// Successor of a canonical level sequence (root at level 0), or `None` after
/// the star.
fn next_level_sequence(l: &[usize]) -> Option<Vec<usize>> {
    let n = l.len();
    let p = (1..n).rev().find(|&i| l[i] != 1)?;
    let q = (0..p).rev().find(|&i| l[i] == l[p] - 1).expect("parent level exists");
    let mut next = l.to_vec();
    for i in p..n {
        next[i] = next[i - (p - q)];
    }
    Some(next)
}

fn parents_of(l: &[usize]) -> Vec<usize> {
    let mut last_at = vec![0usize; l.len() + 1];
    let mut parent = vec![usize::MAX; l.len()];
    for (i, &lv) in l.iter().enumerate() {
        if lv > 0 {
            parent[i] = last_at[lv - 1];
        }
        last_at[lv] = i;
    }
    parent
}

fn root_is_center(l: &[usize], parent: &[usize]) -> bool {
    // deepest level reached through each child of the root
    let mut branch_depth: Vec<usize> = Vec::new();
    let mut branch = vec![usize::MAX; l.len()];
    for i in 1..l.len() {
        if parent[i] == 0 {
            branch[i] = branch_depth.len();
            branch_depth.push(1);
        } else {
            branch[i] = branch[parent[i]];
            let b = branch[i];
            branch_depth[b] = branch_depth[b].max(l[i]);
        }
    }
    branch_depth.sort_unstable_by(|a, b| b.cmp(a));
    let h1 = branch_depth.first().copied().unwrap_or(0);
    let h2 = branch_depth.get(1).copied().unwrap_or(0);
    h1 <= h2 + 1
}

fn tree_from_parents(parent: &[usize]) -> Graph {
    let edges: Vec<_> = (1..parent.len()).map(|i| (parent[i], i)).collect();
    Graph::from_edges(parent.len(), &edges).expect("parent array is a tree")
}

/// Center vertices (one or two) of a tree, by repeated leaf stripping.
pub fn centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &x in &layer {
            for &y in g.neighbors(x) {
                deg[y] -= 1;
                if deg[y] == 1 {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Centroid vertices (one or two) of a tree.
pub fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let (order, parent) = bfs_order(g, 0);
    let mut size = vec![1usize; n];
    for &x in order.iter().rev() {
        if parent[x] != usize::MAX {
            size[parent[x]] += size[x];
        }
    }
    let worst = |v: usize| {
        let up = n - size[v];
        g.neighbors(v).iter().filter(|&&c| parent[c] == v).map(|&c| size[c]).fold(up, usize::max)
    };
    let best = (0..n).map(worst).min().unwrap();
    (0..n).filter(|&v| worst(v) == best).collect()
}

fn bfs_order(g: &Graph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    let mut order = vec![root];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    (order, parent)
}

fn rooted_ahu(g: &Graph, root: usize) -> String {
    let (order, parent) = bfs_order(g, root);
    let mut code: Vec<String> = vec![String::new(); g.n()];
    for &x in order.iter().rev() {
        let mut kids: Vec<&str> =
            g.neighbors(x).iter().filter(|&&c| parent[c] == x && c != root).map(|&c| code[c].as_str()).collect();
        kids.sort_unstable();
        let s = format!("({})", kids.concat());
        code[x] = s;
    }
    std::mem::take(&mut code[root])
}

/// AHU parenthesis code of a tree rooted at its center (minimum over two
/// centers). Equal codes iff isomorphic trees.
pub fn ahu_code(g: &Graph) -> String {
    centers(g).into_iter().map(|c| rooted_ahu(g, c)).min().unwrap_or_default()
}

fn rooted_levels(g: &Graph, x: usize, parent: usize, depth: usize) -> Vec<usize> {
    let mut kids: Vec<Vec<usize>> =
        g.neighbors(x).iter().filter(|&&c| c != parent).map(|&c| rooted_levels(g, c, x, depth + 1)).collect();
    kids.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![depth];
    for k in kids {
        out.extend(k);
    }
    out
}

/// Canonical (lexicographically largest) level sequence rooted at a centroid.
/// An encoding independent of [`ahu_code`].
pub fn centroid_code(g: &Graph) -> Vec<usize> {
    centroids(g).into_iter().map(|c| rooted_levels(g, c, usize::MAX, 0)).max().unwrap_or_default()
}

/// Labeled-tree oracle: all `n^(n-2)` Prüfer sequences decoded and reduced to
/// distinct AHU codes. Feasible only for small `n`.
pub mod prufer {
    use std::collections::BTreeSet;

    use super::ahu_code;
    use crate::graph::Graph;

    pub fn decode(seq: &[usize]) -> Graph {
        let n = seq.len() + 2;
        let mut degree = vec![1usize; n];
        for &x in seq {
            degree[x] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &x in seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, x));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Distinct isomorphism classes of labeled trees on `n` vertices.
    pub fn classes(n: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        if n <= 2 {
            let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
            out.insert(ahu_code(&Graph::from_edges(n, &edges).unwrap()));
            return out;
        }
        let mut seq = vec![0usize; n - 2];
        loop {
            out.insert(ahu_code(&decode(&seq)));
            let mut i = 0;
            loop {
                if i == seq.len() {
                    return out;
                }
                seq[i] += 1;
                if seq[i] < n {
                    break;
                }
                seq[i] = 0;
                i += 1;
            }
        }
    }
}

/// One forest per isomorphism class on `n` vertices, built as multisets of
/// trees. `n = 0` gives the null graph.
pub fn enumerate_forests(n: usize) -> Result<Vec<Forest>> {
    if n > MAX_FOREST_N {
        return Err(Error::OutOfRange { n, min: 0, max: MAX_FOREST_N });
    }
    let trees: Vec<Vec<Forest>> =
        (0..=n).map(|k| if k == 0 { Ok(vec![]) } else { enumerate_trees(k).map(Iterator::collect) }).collect::<Result<_>>()?;
    let pool: Vec<(usize, usize)> = (1..=n).flat_map(|k| (0..trees[k].len()).map(move |i| (k, i))).collect();

    fn go(pool: &[(usize, usize)], from: usize, left: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for j in from..pool.len() {
            if pool[j].0 <= left {
                acc.push(pool[j]);
                go(pool, j, left - pool[j].0, acc, out);
                acc.pop();
            }
        }
    }
    let mut combos = Vec::new();
    go(&pool, 0, n, &mut Vec::new(), &mut combos);
    Ok(combos
        .into_iter()
        .map(|c| {
            let g = c.iter().fold(Graph::empty(0), |g, &(k, i)| g.disjoint_union(trees[k][i].graph()));
            Forest::try_from(g).expect("union of trees is a forest")
        })
        .collect())
}

//! Random trees and forests for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Forest, Graph};

/// Uniformly random labeled tree on `n` vertices (random Prüfer sequence,
/// linear-time decoding).
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Forest {
    if n <= 1 {
        return Forest::try_from(Graph::empty(n)).expect("edgeless");
    }
    if n == 2 {
        return Forest::try_from(Graph::from_edges(2, &[(0, 1)]).expect("valid")).expect("tree");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    forest_from_edges(n, prufer_edges(n, &seq))
}

/// Random tree grown by attaching each vertex to a uniformly chosen earlier
/// one, then relabeled by a random permutation.
pub fn random_recursive_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Forest {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges = (1..n).map(|i| (perm[rng.gen_range(0..i)], perm[i])).collect();
    forest_from_edges(n, edges)
}

/// Random forest: a uniform random tree with each edge kept with
/// probability `keep`.
pub fn random_forest<R: Rng + ?Sized>(n: usize, keep: f64, rng: &mut R) -> Forest {
    let t = random_tree(n, rng);
    let edges = t.edges().into_iter().filter(|_| rng.gen_bool(keep.clamp(0.0, 1.0))).collect();
    forest_from_edges(n, edges)
}

/// The same forest with vertices renumbered in breadth-first order, one
/// component after another, so that neighbors get nearby labels.
pub fn bfs_relabel(f: &Forest) -> Forest {
    let g = f.graph();
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    Forest::try_from(g.induced(&order)).expect("relabeled forest")
}

fn forest_from_edges(n: usize, edges: Vec<(usize, usize)>) -> Forest {
    Forest::try_from(Graph::from_edges(n, &edges).expect("generated edges are valid")).expect("generated graph is acyclic")
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&i| degree[i] == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

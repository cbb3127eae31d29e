//! List colorability: backtracking for general graphs, a tree DP for forests.

use super::Color;
use crate::graph::Graph;

/// A proper coloring with `φ(v) ∈ L(v)` for every vertex, if one exists.
pub fn is_l_colorable(g: &Graph, lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    let n = g.n();
    if lists.iter().any(|l| l.is_empty()) {
        return None;
    }
    // most constrained first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (lists[x].len(), std::cmp::Reverse(g.degree(x)), x));
    let mut phi: Vec<Option<Color>> = vec![None; n];
    fn go(g: &Graph, lists: &[Vec<Color>], order: &[usize], k: usize, phi: &mut [Option<Color>]) -> bool {
        let Some(&x) = order.get(k) else { return true };
        for &c in &lists[x] {
            if g.neighbors(x).iter().all(|&y| phi[y] != Some(c)) {
                phi[x] = Some(c);
                if go(g, lists, order, k + 1, phi) {
                    return true;
                }
            }
        }
        phi[x] = None;
        false
    }
    go(g, lists, &order, 0, &mut phi).then(|| phi.into_iter().map(|c| c.expect("assigned")).collect())
}

/// List coloring of the forest induced on `live`. With `prefer = (x, keep)`,
/// a coloring with `keep(φ(x))` is returned whenever one exists.
pub fn forest_coloring<'a>(
    g: &Graph,
    live: &[bool],
    lists: &dyn Fn(usize) -> &'a [Color],
    prefer: Option<(usize, &dyn Fn(Color) -> bool)>,
) -> Option<Vec<Option<Color>>> {
    if let Some((x, keep)) = prefer {
        if let Some(phi) = forest_dp(g, live, lists, Some((x, keep))) {
            return Some(phi);
        }
    }
    forest_dp(g, live, lists, None)
}

fn forest_dp<'a>(
    g: &Graph,
    live: &[bool],
    lists: &dyn Fn(usize) -> &'a [Color],
    restrict: Option<(usize, &dyn Fn(Color) -> bool)>,
) -> Option<Vec<Option<Color>>> {
    let n = g.n();
    let allowed = |x: usize, c: Color| restrict.map_or(true, |(y, keep)| y != x || keep(c));
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    for root in 0..n {
        if !live[root] || seen[root] {
            continue;
        }
        seen[root] = true;
        let start = order.len();
        order.push(root);
        let mut k = start;
        while k < order.len() {
            let x = order[k];
            k += 1;
            for &y in g.neighbors(x) {
                if live[y] && !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
    }
    // feasible[x]: colors at x that extend to x's subtree
    let mut feasible: Vec<Vec<Color>> = vec![Vec::new(); n];
    let mut forbidden: Vec<Vec<Color>> = vec![Vec::new(); n];
    for &x in order.iter().rev() {
        let f: Vec<Color> = lists(x).iter().copied().filter(|&c| allowed(x, c) && !forbidden[x].contains(&c)).collect();
        if f.is_empty() {
            return None;
        }
        if parent[x] != usize::MAX && f.len() == 1 {
            forbidden[parent[x]].push(f[0]);
        }
        feasible[x] = f;
    }
    let mut phi = vec![None; n];
    for &x in &order {
        let up = (parent[x] != usize::MAX).then(|| phi[parent[x]]).flatten();
        phi[x] = feasible[x].iter().copied().find(|&c| Some(c) != up);
        phi[x]?;
    }
    Some(phi)
}

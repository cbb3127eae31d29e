//! Extremal trees: which forests reach `⌊3n/2⌋`, and which trees reach the
//! minimum `n + u(n-1)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::enumerate::{ahu_code, enumerate_trees};
use crate::error::{Error, Result};
use crate::graph::Forest;
use crate::math::{is_triangular, u};
use crate::peel::s_forest;

pub const MAX_CENSUS_N: usize = 16;

/// Spanning subforest with every degree 1 or 3, except one vertex of
/// degree 0 or 6 when `n` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub edges: Vec<(usize, usize)>,
    pub exception_vertex: Option<usize>,
}

impl Witness {
    /// Checks the degree conditions against `f`.
    pub fn is_valid_for(&self, f: &Forest) -> bool {
        let mut deg = vec![0usize; f.n()];
        for &(a, b) in &self.edges {
            if !f.has_edge(a, b) {
                return false;
            }
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut uniq = self.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect::<Vec<_>>();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != self.edges.len() || self.exception_vertex.is_some() != (f.n() % 2 == 1) {
            return false;
        }
        (0..f.n()).all(|x| {
            if Some(x) == self.exception_vertex {
                deg[x] == 0 || deg[x] == 6
            } else {
                deg[x] == 1 || deg[x] == 3
            }
        })
    }
}

const CAP: usize = 7;
type Table = [[bool; 2]; CAP + 1];

fn ok_degree(d: usize) -> bool {
    d == 1 || d == 3
}

fn exception_degree(d: usize) -> bool {
    d == 0 || d == 6
}

/// Finds a witness by a rooted DP per component, threading the single
/// exception through the components.
pub fn max_witness(f: &Forest) -> Option<Witness> {
    let n = f.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = Vec::new();
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        roots.push(root);
        let start = order.len();
        order.push(root);
        let mut k = start;
        while k < order.len() {
            let x = order[k];
            k += 1;
            for &y in f.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
    }
    let par = &parent;
    let children = |x: usize| f.neighbors(x).iter().copied().filter(move |&y| par[y] == x);
    // fx[x][p][e]: subtree of x works with parent edge p chosen and e exceptions inside
    let mut fx = vec![[[false; 2]; 2]; n];
    // tabs[x][i]: after the first i children, (chosen child edges, exceptions)
    let mut tabs: Vec<Vec<Table>> = vec![Vec::new(); n];
    for &x in order.iter().rev() {
        let mut t: Table = [[false; 2]; CAP + 1];
        t[0][0] = true;
        let mut hist = vec![t];
        for y in children(x) {
            let mut nt: Table = [[false; 2]; CAP + 1];
            for d in 0..=CAP {
                for e in 0..2 {
                    if !t[d][e] {
                        continue;
                    }
                    for ey in 0..2 - e {
                        if fx[y][1][ey] {
                            nt[(d + 1).min(CAP)][e + ey] = true;
                        }
                        if fx[y][0][ey] {
                            nt[d][e + ey] = true;
                        }
                    }
                }
            }
            t = nt;
            hist.push(t);
        }
        for p in 0..2 {
            for d in 0..CAP {
                for e in 0..2 {
                    if t[d][e] {
                        if ok_degree(d + p) {
                            fx[x][p][e] = true;
                        }
                        if exception_degree(d + p) && e == 0 {
                            fx[x][p][1] = true;
                        }
                    }
                }
            }
        }
        tabs[x] = hist;
    }
    // exception budget across components
    let need = n % 2;
    let mut reach = vec![[false; 2]; roots.len() + 1];
    reach[0][0] = true;
    for (i, &rt) in roots.iter().enumerate() {
        for e in 0..2 {
            if reach[i][e] {
                for er in 0..2 - e {
                    if fx[rt][0][er] {
                        reach[i + 1][e + er] = true;
                    }
                }
            }
        }
    }
    if !reach[roots.len()][need] {
        return None;
    }
    let mut w = Witness { edges: Vec::new(), exception_vertex: None };
    let mut left = need;
    let mut jobs: Vec<(usize, usize, usize)> = Vec::new();
    for i in (0..roots.len()).rev() {
        let rt = roots[i];
        let er = (0..=left).rev().find(|&er| fx[rt][0][er] && reach[i][left - er]).expect("consistent table");
        jobs.push((rt, 0, er));
        left -= er;
    }
    while let Some((x, p, e)) = jobs.pop() {
        let hist = &tabs[x];
        let kids: Vec<usize> = children(x).collect();
        let last = hist[kids.len()];
        // pick final (d, e_children) and whether x is the exception
        let (mut d, mut ec) = (0..CAP)
            .flat_map(|d| (0..2).map(move |ec| (d, ec)))
            .find(|&(d, ec)| last[d][ec] && ((ok_degree(d + p) && ec == e) || (exception_degree(d + p) && ec == 0 && e == 1)))
            .expect("consistent table");
        if !ok_degree(d + p) {
            w.exception_vertex = Some(x);
        }
        for i in (0..kids.len()).rev() {
            let y = kids[i];
            let prev = hist[i];
            let mut found = None;
            'search: for ey in 0..=ec {
                if d > 0 && fx[y][1][ey] {
                    // d may be capped; any predecessor count that maps to d works
                    for pd in (0..=d).rev() {
                        if (pd + 1).min(CAP) == d && prev[pd][ec - ey] {
                            found = Some((1, ey, pd));
                            break 'search;
                        }
                    }
                }
                if fx[y][0][ey] && prev[d][ec - ey] {
                    found = Some((0, ey, d));
                    break 'search;
                }
            }
            let (py, ey, pd) = found.expect("consistent table");
            if py == 1 {
                w.edges.push((x.min(y), x.max(y)));
            }
            jobs.push((y, py, ey));
            d = pd;
            ec -= ey;
        }
    }
    w.edges.sort_unstable();
    Some(w)
}

/// Shape of a tree relevant to the minimum-cost characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TreeShape {
    /// `K_{1,n-1}` on `n` vertices.
    Star(usize),
    /// Two adjacent centers with `a <= b` leaves.
    DoubleStar(usize, usize),
    /// Centers with `a <= b` leaves joined through one middle vertex.
    SubdividedDoubleStar(usize, usize),
    Other,
}

impl TreeShape {
    /// `S_{a,b}`, with degenerate parameters folded into the shape they denote.
    pub fn double_star(a: usize, b: usize) -> Self {
        let (a, b) = (a.min(b), a.max(b));
        if a == 0 {
            TreeShape::Star(b + 2)
        } else {
            TreeShape::DoubleStar(a, b)
        }
    }

    /// `S'_{a,b}`, normalized the same way.
    pub fn subdivided_double_star(a: usize, b: usize) -> Self {
        let (a, b) = (a.min(b), a.max(b));
        match (a, b) {
            (0, 0) => TreeShape::Star(3),
            (0, b) => TreeShape::double_star(1, b),
            _ => TreeShape::SubdividedDoubleStar(a, b),
        }
    }
}

pub fn classify_shape(t: &Forest) -> Result<TreeShape> {
    if !t.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = t.n();
    let inner: Vec<usize> = (0..n).filter(|&x| t.degree(x) >= 2).collect();
    let leaves_at = |x: usize| t.neighbors(x).iter().filter(|&&y| t.degree(y) == 1).count();
    Ok(match inner.as_slice() {
        [] | [_] => TreeShape::Star(n),
        &[a, b] => TreeShape::double_star(leaves_at(a), leaves_at(b)),
        &[a, b, c] => {
            let mid = [a, b, c].into_iter().find(|&m| t.degree(m) == 2 && t.neighbors(m).iter().all(|&y| t.degree(y) >= 2));
            match mid {
                Some(m) => {
                    let ends: Vec<usize> = [a, b, c].into_iter().filter(|&x| x != m).collect();
                    TreeShape::subdivided_double_star(leaves_at(ends[0]), leaves_at(ends[1]))
                }
                None => TreeShape::Other,
            }
        }
        _ => TreeShape::Other,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Minimizers {
    All,
    Shapes(BTreeSet<TreeShape>),
}

impl Minimizers {
    pub fn contains(&self, s: TreeShape) -> bool {
        match self {
            Minimizers::All => true,
            Minimizers::Shapes(set) => set.contains(&s),
        }
    }
}

/// Trees on `n >= 4` vertices attaining `n + u(n-1)`.
pub fn expected_minimizers(n: usize) -> Result<Minimizers> {
    if n < 4 {
        return Err(Error::OutOfRange { n, min: 4, max: usize::MAX });
    }
    if n == 7 {
        return Ok(Minimizers::All);
    }
    let mut set = BTreeSet::from([TreeShape::Star(n)]);
    if is_triangular(n as u64 - 1) || is_triangular(n as u64 - 2) {
        set.insert(TreeShape::double_star(1, n - 3));
        set.insert(TreeShape::double_star(2, n - 4));
        set.insert(TreeShape::subdivided_double_star(1, n - 4));
        if n == 11 {
            set.insert(TreeShape::double_star(4, 5));
            set.insert(TreeShape::subdivided_double_star(4, 4));
        }
    }
    Ok(Minimizers::Shapes(set))
}

pub fn max_value(n: usize) -> u64 {
    3 * n as u64 / 2
}

pub fn min_tree_value(n: usize) -> u64 {
    n as u64 + u(n as u64 - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub canonical_code: String,
    pub s: u64,
    pub is_max: bool,
    pub has_witness: bool,
    pub shape: TreeShape,
    pub is_min: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub trees: usize,
    pub max_count: usize,
    pub min_count: usize,
    pub violations: Vec<String>,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        let verdict = if self.ok() { "ok".to_string() } else { format!("{} violations", self.violations.len()) };
        format!(
            "n={} trees={} max={} (at {} trees) min={} (at {} trees): {}",
            self.n,
            self.trees,
            max_value(self.n),
            self.max_count,
            if self.n >= 1 { min_tree_value(self.n) } else { 0 },
            self.min_count,
            verdict
        )
    }
}

/// Evaluates every tree on `n` vertices and checks both characterizations.
pub fn census(n: usize) -> Result<CensusReport> {
    if !(1..=MAX_CENSUS_N).contains(&n) {
        return Err(Error::OutOfRange { n, min: 1, max: MAX_CENSUS_N });
    }
    let expected = if n >= 4 { Some(expected_minimizers(n)?) } else { None };
    let (hi, lo) = (max_value(n), min_tree_value(n));
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for t in enumerate_trees(n)? {
        let s = s_forest(&t);
        let code = ahu_code(&t);
        let witness = max_witness(&t);
        if let Some(w) = &witness {
            if !w.is_valid_for(&t) {
                violations.push(format!("{code}: invalid witness"));
            }
        }
        let shape = classify_shape(&t)?;
        let row = CensusRow {
            n,
            canonical_code: code.clone(),
            s,
            is_max: s == hi,
            has_witness: witness.is_some(),
            shape,
            is_min: s == lo,
        };
        if s > hi || s < lo {
            violations.push(format!("{code}: s={s} outside [{lo}, {hi}]"));
        }
        if row.is_max != row.has_witness {
            violations.push(format!("{code}: is_max={} but has_witness={}", row.is_max, row.has_witness));
        }
        if let Some(exp) = &expected {
            if row.is_min != exp.contains(shape) {
                violations.push(format!("{code}: is_min={} but shape {shape:?}", row.is_min));
            }
        }
        rows.push(row);
    }
    Ok(CensusReport {
        n,
        trees: rows.len(),
        max_count: rows.iter().filter(|r| r.is_max).count(),
        min_count: rows.iter().filter(|r| r.is_min).count(),
        violations,
        rows,
    })
}

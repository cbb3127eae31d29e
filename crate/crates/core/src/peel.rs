//! Linear-time sum-color cost of forests.
//!
//! Repeatedly removes a stem `v` with leaf set `R` (`r = |R|`):
//! - `r + 1` not triangular: delete `R ∪ {v}`, add `r + 1 + u(r)`;
//! - `r + 1` triangular: delete `R` only, add `r + u(r)`.
//!
//! An edgeless remainder costs one per vertex. Per-vertex degree and
//! leaf-neighbor counts are maintained incrementally, and a worklist holds
//! every vertex whose stem status may have changed, so the total work is
//! linear in the size of the forest.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{Forest, Graph};
use crate::math::{is_triangular, u};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub stem: usize,
    pub leaves: Vec<usize>,
    /// The stem's non-leaf neighbor at the time of the step.
    pub attach: Option<usize>,
    pub triangular_case: bool,
    pub deleted: Vec<usize>,
    pub cost_added: u64,
}

impl PeelStep {
    pub fn r(&self) -> usize {
        self.leaves.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelTrace {
    pub steps: Vec<PeelStep>,
    pub residual_isolated: u64,
    pub total: u64,
}

impl PeelTrace {
    /// Line-oriented report: one line per step, then the residual and total.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, st) in self.steps.iter().enumerate() {
            let _ = writeln!(
                s,
                "step {} stem={} r={} case={} deleted={:?} cost=+{}",
                i + 1,
                st.stem,
                st.r(),
                if st.triangular_case { "triangular" } else { "split" },
                st.deleted,
                st.cost_added
            );
        }
        let _ = writeln!(s, "residual isolated={}", self.residual_isolated);
        let _ = writeln!(s, "total={}", self.total);
        s
    }

    /// Replays the trace on `g`, checking that every step removes a genuine
    /// stem with exactly its leaf set, that costs follow the recurrence, and
    /// that the total adds up.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let mut live = vec![true; g.n()];
        let deg = |live: &[bool], x: usize| g.neighbors(x).iter().filter(|&&y| live[y]).count();
        let mut sum = 0;
        for (i, st) in self.steps.iter().enumerate() {
            let v = st.stem;
            if !live[v] {
                return Err(format!("step {i}: stem {v} already deleted"));
            }
            let found = crate::graph::stem_at(g, &live, v, &|x| deg(&live, x))
                .ok_or_else(|| format!("step {i}: {v} is not a stem"))?;
            if found.leaves != st.leaves || found.attach != st.attach {
                return Err(format!("step {i}: leaf set mismatch at {v}"));
            }
            let r = st.r() as u64;
            let tri = is_triangular(r + 1);
            let (cost, mut del) =
                if tri { (r + u(r), st.leaves.clone()) } else { (r + 1 + u(r), [st.leaves.clone(), vec![v]].concat()) };
            del.sort_unstable();
            let mut got = st.deleted.clone();
            got.sort_unstable();
            if tri != st.triangular_case || cost != st.cost_added || del != got {
                return Err(format!("step {i}: case or cost mismatch"));
            }
            for x in del {
                live[x] = false;
            }
            sum += cost;
        }
        for x in 0..g.n() {
            if live[x] && deg(&live, x) > 0 {
                return Err(format!("residual vertex {x} still has edges"));
            }
        }
        let residual = live.iter().filter(|&&b| b).count() as u64;
        if residual != self.residual_isolated || sum + residual != self.total {
            return Err("totals do not add up".into());
        }
        Ok(())
    }
}

/// Sum-color cost of a forest.
pub fn s_forest(f: &Forest) -> u64 {
    Peeler::run(f.graph(), None, false).total
}

pub fn s_forest_trace(f: &Forest) -> PeelTrace {
    Peeler::run(f.graph(), None, true).into_trace()
}

/// Sum-color cost of the subforest of `g` induced on `live`. The caller
/// guarantees that this subgraph is acyclic.
pub fn s_forest_live(g: &Graph, live: &[bool]) -> u64 {
    Peeler::run(g, Some(live), false).total
}

pub fn s_forest_trace_live(g: &Graph, live: &[bool]) -> PeelTrace {
    Peeler::run(g, Some(live), true).into_trace()
}

/// Cost plus the number of elementary operations performed (worklist pops and
/// adjacency entries scanned); used to check linear scaling.
pub fn s_forest_counted(f: &Forest) -> (u64, u64) {
    let out = Peeler::run(f.graph(), None, false);
    (out.total, out.ops)
}

struct PeelOutput {
    steps: Vec<PeelStep>,
    residual: u64,
    total: u64,
    ops: u64,
}

impl PeelOutput {
    fn into_trace(self) -> PeelTrace {
        PeelTrace { steps: self.steps, residual_isolated: self.residual, total: self.total }
    }
}

/// Per-vertex peel state, packed so a visit touches one cache line.
#[derive(Clone, Copy)]
struct Slot {
    /// Live degree, or `DEAD`.
    deg: u32,
    leaf_nbrs: u32,
}

const DEAD: u32 = u32::MAX;

struct Peeler<'g> {
    g: &'g Graph,
    st: Vec<Slot>,
    work: Vec<usize>,
    ops: u64,
}

impl<'g> Peeler<'g> {
    fn run(g: &'g Graph, live: Option<&[bool]>, record: bool) -> PeelOutput {
        let n = g.n();
        let mut p = Peeler { g, st: Vec::with_capacity(n), work: Vec::new(), ops: 0 };
        match live {
            None => {
                p.st.extend((0..n).map(|x| Slot { deg: g.degree(x) as u32, leaf_nbrs: 0 }));
                p.ops += 2 * g.edge_count() as u64;
            }
            Some(live) => {
                p.st.extend((0..n).map(|x| Slot {
                    deg: if live[x] { g.neighbors(x).iter().filter(|&&y| live[y]).count() as u32 } else { DEAD },
                    leaf_nbrs: 0,
                }));
                p.ops += (0..n).filter(|&x| live[x]).map(|x| g.degree(x) as u64).sum::<u64>();
            }
        }
        for x in 0..n {
            if p.st[x].deg == 1 {
                let y = p.live_neighbor(x);
                p.st[y].leaf_nbrs += 1;
            }
        }

        let mut out = PeelOutput { steps: Vec::new(), residual: 0, total: 0, ops: 0 };
        let mut leaves = Vec::new();
        // Scanning vertices in order and draining the worklist after each
        // one visits the same sequence as a stack seeded with 0..n.
        for x in 0..n {
            p.step(x, record, &mut leaves, &mut out);
            while let Some(v) = p.work.pop() {
                p.step(v, record, &mut leaves, &mut out);
            }
        }
        out.residual = p.st.iter().filter(|s| s.deg != DEAD).count() as u64;
        debug_assert!(p.st.iter().all(|s| s.deg == DEAD || s.deg == 0));
        out.total += out.residual;
        out.ops = p.ops;
        out
    }

    fn live(&self, x: usize) -> bool {
        self.st[x].deg != DEAD
    }

    fn step(&mut self, v: usize, record: bool, leaves: &mut Vec<usize>, out: &mut PeelOutput) {
        self.ops += 1;
        if !self.is_stem(v) {
            return;
        }
        let g = self.g;
        leaves.clear();
        let mut attach = None;
        for &y in g.neighbors(v) {
            self.ops += 1;
            match self.st[y].deg {
                DEAD => {}
                1 => leaves.push(y),
                _ => attach = Some(y),
            }
        }
        let r = leaves.len() as u64;
        let tri = is_triangular(r + 1);
        let cost = if tri { r + u(r) } else { r + 1 + u(r) };
        out.total += cost;
        for &y in leaves.iter() {
            self.delete(y);
        }
        if !tri {
            self.delete(v);
        } else {
            self.work.push(v);
        }
        if record {
            let mut deleted = leaves.clone();
            if !tri {
                deleted.push(v);
            }
            out.steps.push(PeelStep { stem: v, leaves: leaves.clone(), attach, triangular_case: tri, deleted, cost_added: cost });
        }
    }

    fn is_stem(&self, v: usize) -> bool {
        let s = self.st[v];
        s.deg != DEAD && s.leaf_nbrs >= 1 && s.deg - s.leaf_nbrs <= 1
    }

    fn live_neighbor(&mut self, x: usize) -> usize {
        let nb = self.g.neighbors(x);
        if nb.len() == 1 {
            self.ops += 1;
            return nb[0];
        }
        for &y in nb {
            self.ops += 1;
            if self.live(y) {
                return y;
            }
        }
        unreachable!("vertex of degree one has a live neighbor")
    }

    fn delete(&mut self, y: usize) {
        let was_leaf = self.st[y].deg == 1;
        self.st[y].deg = DEAD;
        for &z in self.g.neighbors(y) {
            self.ops += 1;
            let s = &mut self.st[z];
            if s.deg == DEAD {
                continue;
            }
            if was_leaf {
                s.leaf_nbrs -= 1;
            }
            if s.deg == 1 {
                // z was a leaf hanging on y; it is now isolated
                s.deg = 0;
                continue;
            }
            s.deg -= 1;
            let now_leaf = s.deg == 1;
            self.work.push(z);
            if now_leaf {
                let u = self.live_neighbor(z);
                self.st[u].leaf_nbrs += 1;
                self.work.push(u);
            }
        }
    }
}

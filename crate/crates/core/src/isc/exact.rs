//! Exact values of the interactive sum choice game on small graphs.
//!
//! States are lists up to renaming of colors, encoded as the sorted multiset
//! of color classes. Supplier's options at `v` reduce to adding `v` to one
//! existing class that misses it, or opening a fresh class. Requester never
//! gains by asking at a vertex whose list already exceeds its degree, so
//! such requests are skipped.

use std::collections::HashMap;

use super::{CanonicalListState, Color, ListState, RequesterStrategy, SupplierStrategy};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Mask;

pub const DEFAULT_ISC_CAP: usize = 6;
pub const HARD_ISC_CAP: usize = 10;

#[derive(Debug, Clone)]
pub struct IscSolver {
    n: usize,
    nbr: Vec<Mask>,
    deg: Vec<u32>,
    memo: HashMap<CanonicalListState, u32>,
}

impl IscSolver {
    pub fn new(g: &Graph, cap: usize) -> Result<Self> {
        let cap = cap.min(HARD_ISC_CAP);
        if g.n() > cap {
            return Err(Error::SizeCapExceeded { n: g.n(), cap });
        }
        Ok(IscSolver {
            n: g.n(),
            nbr: g.neighbor_masks(),
            deg: (0..g.n()).map(|x| g.degree(x) as u32).collect(),
            memo: HashMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Remaining rounds under optimal play from lists given as color classes.
    pub fn value(&mut self, classes: &[Mask]) -> u32 {
        let key = CanonicalListState::from_masks(classes.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let val = if self.colorable(classes) {
            0
        } else {
            let mut best = u32::MAX;
            for v in 0..self.n {
                if self.list_len(classes, v) > self.deg[v] {
                    continue;
                }
                let mut worst = 0;
                for next in self.options(classes, v) {
                    worst = worst.max(self.value(&next));
                    if worst + 1 >= best {
                        break;
                    }
                }
                best = best.min(worst + 1);
            }
            best
        };
        self.memo.insert(key, val);
        val
    }

    pub fn state_value(&mut self, state: &ListState) -> u32 {
        let classes: Vec<Mask> = state.color_classes().into_iter().map(|(_, m)| m).collect();
        self.value(&classes)
    }

    fn list_len(&self, classes: &[Mask], v: usize) -> u32 {
        classes.iter().filter(|&&m| m >> v & 1 == 1).count() as u32
    }

    /// Successor class lists after Supplier answers a request at `v`; the
    /// fresh class comes last.
    fn options(&self, classes: &[Mask], v: usize) -> Vec<Vec<Mask>> {
        let bit = 1 << v;
        let mut out = Vec::new();
        let mut tried: Vec<Mask> = Vec::new();
        for (j, &m) in classes.iter().enumerate() {
            if m & bit == 0 && !tried.contains(&m) {
                tried.push(m);
                let mut next = classes.to_vec();
                next[j] |= bit;
                out.push(next);
            }
        }
        let mut next = classes.to_vec();
        next.push(bit);
        out.push(next);
        out
    }

    fn colorable(&self, classes: &[Mask]) -> bool {
        let mut used = vec![0 as Mask; classes.len()];
        self.assign(classes, 0, &mut used)
    }

    fn assign(&self, classes: &[Mask], x: usize, used: &mut [Mask]) -> bool {
        if x == self.n {
            return true;
        }
        for j in 0..classes.len() {
            if classes[j] >> x & 1 == 1 && used[j] & self.nbr[x] == 0 {
                used[j] |= 1 << x;
                if self.assign(classes, x + 1, used) {
                    return true;
                }
                used[j] &= !(1 << x);
            }
        }
        false
    }

    /// Every vertex whose request is optimal, ascending.
    pub fn optimal_requests(&mut self, state: &ListState) -> Result<Vec<usize>> {
        let classes: Vec<Mask> = state.color_classes().into_iter().map(|(_, m)| m).collect();
        let target = self.value(&classes);
        if target == 0 {
            return Err(Error::GameOver);
        }
        let mut out = Vec::new();
        for v in 0..self.n {
            if self.list_len(&classes, v) > self.deg[v] {
                continue;
            }
            let worst = self.options(&classes, v).iter().map(|next| self.value(next)).max().unwrap_or(0);
            if worst + 1 == target {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Lowest vertex whose request is optimal.
    pub fn best_request(&mut self, state: &ListState) -> Result<usize> {
        Ok(self.optimal_requests(state)?[0])
    }

    /// Color that keeps the remaining game longest; existing colors are
    /// preferred over a fresh one on ties.
    pub fn best_supply(&mut self, state: &ListState, v: usize) -> Color {
        let classes = state.color_classes();
        let bit = 1 << v;
        let masks: Vec<Mask> = classes.iter().map(|&(_, m)| m).collect();
        let mut best: Option<(u32, Color)> = None;
        for (j, &(c, m)) in classes.iter().enumerate() {
            if m & bit != 0 {
                continue;
            }
            let mut next = masks.clone();
            next[j] |= bit;
            let val = self.value(&next);
            if best.map_or(true, |(b, _)| val > b) {
                best = Some((val, c));
            }
        }
        let mut next = masks;
        next.push(bit);
        let val = self.value(&next);
        match best {
            Some((b, c)) if b >= val => c,
            _ => state.fresh_color(),
        }
    }
}

/// `χ_ISC(g)` by exhaustive search.
pub fn isc_exact(g: &Graph, cap: usize) -> Result<u32> {
    Ok(IscSolver::new(g, cap)?.value(&[]))
}

/// Exact-engine player for either side of the game.
#[derive(Debug, Clone)]
pub struct ExactIscPlayer {
    cap: usize,
    solver: Option<IscSolver>,
}

impl ExactIscPlayer {
    pub fn new(cap: usize) -> Self {
        ExactIscPlayer { cap, solver: None }
    }

    fn solver(&mut self, g: &Graph) -> Result<&mut IscSolver> {
        if self.solver.as_ref().map_or(true, |s| s.n() != g.n()) {
            self.solver = Some(IscSolver::new(g, self.cap)?);
        }
        Ok(self.solver.as_mut().expect("just built"))
    }
}

impl RequesterStrategy for ExactIscPlayer {
    fn name(&self) -> &str {
        "exact"
    }
    fn request(&mut self, g: &Graph, state: &ListState) -> Result<usize> {
        self.solver(g)?.best_request(state)
    }
}

impl SupplierStrategy for ExactIscPlayer {
    fn name(&self) -> &str {
        "exact"
    }
    fn supply(&mut self, g: &Graph, state: &ListState, x: usize) -> Result<Color> {
        Ok(self.solver(g)?.best_supply(state, x))
    }
}

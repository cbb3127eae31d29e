//! Exact minimax for the slow-coloring game on small graphs.
//!
//! The value of a position depends only on the uncolored vertex set, so the
//! memo is a table indexed by the live bitmask. Lister is restricted to
//! connected marked sets and Painter to maximal independent subsets of the
//! marked set; neither restriction changes the game value. Values are
//! additive over connected components, which the solver exploits.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{mask_vertices, Mask};

pub const DEFAULT_CAP: usize = 12;
pub const HARD_CAP: usize = 20;
/// Largest graph accepted by the unrestricted self-check solver.
pub const UNRESTRICTED_CAP: usize = 8;

const UNSOLVED: u16 = u16::MAX;

/// A live vertex set of a base graph.
#[derive(Debug, Clone, Copy)]
pub struct Position<'g> {
    pub base: &'g Graph,
    pub live: Mask,
}

impl<'g> Position<'g> {
    pub fn start(base: &'g Graph) -> Self {
        Position { base, live: full_mask(base.n()) }
    }
}

pub fn full_mask(n: usize) -> Mask {
    if n == 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

/// Optimal Lister moves at a position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListerMoves {
    pub value: u32,
    /// Optimal connected marked sets, in lexicographic vertex order.
    pub connected: Vec<Mask>,
    /// Every optimal marked set, connected or not; present when requested.
    pub all: Option<Vec<Mask>>,
}

impl ListerMoves {
    pub fn has_disconnected_optimal(&self) -> Option<bool> {
        self.all.as_ref().map(|all| all.len() > self.connected.len())
    }
}

/// Memoized solver over the positions of one base graph.
#[derive(Debug, Clone)]
pub struct Solver {
    n: usize,
    nbr: Arc<[Mask]>,
    memo: Vec<u16>,
}

impl Solver {
    pub fn new(g: &Graph, cap: usize) -> Result<Self> {
        let cap = cap.min(HARD_CAP);
        if g.n() > cap {
            return Err(Error::SizeCapExceeded { n: g.n(), cap });
        }
        let mut memo = vec![UNSOLVED; 1 << g.n()];
        memo[0] = 0;
        Ok(Solver { n: g.n(), nbr: g.neighbor_masks().into(), memo })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Mask {
        full_mask(self.n)
    }

    /// Sum-color cost of the subgraph induced on `live`.
    pub fn value(&mut self, live: Mask) -> u32 {
        let cached = self.memo[live as usize];
        if cached != UNSOLVED {
            return cached as u32;
        }
        let comp = component_of(&self.nbr, live, live & live.wrapping_neg());
        let v = if comp != live {
            self.value(comp) + self.value(live & !comp)
        } else {
            self.solve_connected(live)
        };
        self.memo[live as usize] = v as u16;
        v
    }

    fn solve_connected(&mut self, live: Mask) -> u32 {
        let mut best = 0u32;
        let nbr = self.nbr.clone();
        for_each_connected_subset(&nbr, live, |m| {
            let size = m.count_ones();
            let mut worst = u32::MAX;
            for_each_maximal_independent(&nbr, m, |i| {
                if worst.saturating_add(size) > best {
                    worst = worst.min(self.value(live & !i));
                }
            });
            best = best.max(size + worst);
        });
        best
    }

    /// Lister's score `|M| + min over Painter responses` for marked set `m`.
    pub fn mark_value(&mut self, live: Mask, m: Mask) -> u32 {
        let nbr = self.nbr.clone();
        let mut worst = u32::MAX;
        for_each_maximal_independent(&nbr, m, |i| worst = worst.min(self.value(live & !i)));
        m.count_ones() + worst
    }

    pub fn optimal_lister_moves(&mut self, live: Mask, exhaustive: bool) -> Result<ListerMoves> {
        if live == 0 {
            return Err(Error::EmptyPosition);
        }
        let value = self.value(live);
        let nbr = self.nbr.clone();
        let mut connected = Vec::new();
        for_each_connected_subset(&nbr, live, |m| {
            if self.mark_value(live, m) == value {
                connected.push(m);
            }
        });
        sort_lex(&mut connected);
        let all = exhaustive.then(|| {
            let mut all = Vec::new();
            let mut m = live;
            while m != 0 {
                if self.mark_value(live, m) == value {
                    all.push(m);
                }
                m = (m - 1) & live;
            }
            sort_lex(&mut all);
            all
        });
        Ok(ListerMoves { value, connected, all })
    }

    /// All maximal independent subsets of `mark` that minimize the value of
    /// the residual position.
    pub fn optimal_painter_responses(&mut self, live: Mask, mark: Mask) -> Result<Vec<Mask>> {
        check_mark(live, mark)?;
        let nbr = self.nbr.clone();
        let mut cands = Vec::new();
        for_each_maximal_independent(&nbr, mark, |i| cands.push((self.value(live & !i), i)));
        let best = cands.iter().map(|c| c.0).min().expect("nonempty mark has a maximal independent subset");
        let mut out: Vec<Mask> = cands.into_iter().filter(|c| c.0 == best).map(|c| c.1).collect();
        sort_lex(&mut out);
        Ok(out)
    }

    /// Deterministic engine move: lexicographically smallest optimal connected mark.
    pub fn best_lister_move(&mut self, live: Mask) -> Result<Mask> {
        Ok(self.optimal_lister_moves(live, false)?.connected[0])
    }

    pub fn best_painter_response(&mut self, live: Mask, mark: Mask) -> Result<Mask> {
        Ok(self.optimal_painter_responses(live, mark)?[0])
    }

    /// All solved positions as `(live vertices, value)` pairs.
    pub fn solved_table(&self) -> Vec<(Vec<usize>, u32)> {
        self.memo
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != UNSOLVED)
            .map(|(m, &v)| (mask_vertices(m as Mask), v as u32))
            .collect()
    }

    pub fn dump_json(&self) -> serde_json::Value {
        let rows: Vec<_> =
            self.solved_table().into_iter().map(|(live, value)| serde_json::json!({"live": live, "value": value})).collect();
        serde_json::json!({ "n": self.n, "positions": rows })
    }
}

pub(crate) fn check_mark(live: Mask, mark: Mask) -> Result<()> {
    if mark == 0 {
        return Err(Error::EmptyMark);
    }
    if mark & !live != 0 {
        return Err(Error::MarkOutsideLive(mask_vertices(mark & !live)));
    }
    Ok(())
}

/// Sorts vertex sets lexicographically by their ascending vertex lists.
pub fn sort_lex(sets: &mut [Mask]) {
    sets.sort_by_cached_key(|&m| mask_vertices(m));
}

/// Sum-color cost of `g` by exhaustive minimax.
pub fn s_exact(g: &Graph, cap: usize) -> Result<u32> {
    let mut s = Solver::new(g, cap)?;
    Ok(s.value(s.full()))
}

pub fn optimal_lister_moves(p: &Position<'_>, cap: usize, exhaustive: bool) -> Result<ListerMoves> {
    Solver::new(p.base, cap)?.optimal_lister_moves(p.live, exhaustive)
}

pub fn optimal_painter_responses(p: &Position<'_>, mark: Mask, cap: usize) -> Result<Vec<Mask>> {
    Solver::new(p.base, cap)?.optimal_painter_responses(p.live, mark)
}

/// Minimax with no move restrictions: every nonempty marked set against
/// every nonempty independent subset. Self-check for small graphs only.
pub fn s_exact_unrestricted(g: &Graph) -> Result<u32> {
    if g.n() > UNRESTRICTED_CAP {
        return Err(Error::SizeCapExceeded { n: g.n(), cap: UNRESTRICTED_CAP });
    }
    let nbr = g.neighbor_masks();
    let mut memo = vec![UNSOLVED; 1 << g.n()];
    memo[0] = 0;
    fn go(nbr: &[Mask], memo: &mut [u16], live: Mask) -> u32 {
        if memo[live as usize] != UNSOLVED {
            return memo[live as usize] as u32;
        }
        let mut best = 0;
        let mut m = live;
        while m != 0 {
            let mut worst = u32::MAX;
            let mut i = m;
            while i != 0 {
                if is_independent(nbr, i) {
                    worst = worst.min(go(nbr, memo, live & !i));
                }
                i = (i - 1) & m;
            }
            best = best.max(m.count_ones() + worst);
            m = (m - 1) & live;
        }
        memo[live as usize] = best as u16;
        best
    }
    Ok(go(&nbr, &mut memo, full_mask(g.n())))
}

pub fn is_independent(nbr: &[Mask], set: Mask) -> bool {
    let mut m = set;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        if nbr[v] & set != 0 {
            return false;
        }
        m &= m - 1;
    }
    true
}

pub fn is_connected_set(nbr: &[Mask], set: Mask) -> bool {
    set == 0 || component_of(nbr, set, set & set.wrapping_neg()) == set
}

/// Vertices of `within` reachable from `seed` inside `within`.
pub fn component_of(nbr: &[Mask], within: Mask, seed: Mask) -> Mask {
    let mut comp = seed;
    let mut frontier = seed;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = nbr[v] & within & !comp;
        comp |= new;
        frontier |= new;
    }
    comp
}

/// Calls `f` once for every nonempty subset of `live` inducing a connected
/// subgraph. Each set is grown from its minimum vertex; branching vertices
/// are excluded from later siblings, so nothing is produced twice.
pub fn for_each_connected_subset(nbr: &[Mask], live: Mask, mut f: impl FnMut(Mask)) {
    fn grow(nbr: &[Mask], live: Mask, set: Mask, ext: Mask, excluded: Mask, f: &mut dyn FnMut(Mask)) {
        f(set);
        let mut ext = ext;
        let mut excluded = excluded;
        while ext != 0 {
            let w = ext & ext.wrapping_neg();
            ext &= !w;
            let wv = w.trailing_zeros() as usize;
            let next_ext = (ext | nbr[wv]) & live & !set & !excluded & !w;
            grow(nbr, live, set | w, next_ext, excluded, f);
            excluded |= w;
        }
    }
    let mut rest = live;
    while rest != 0 {
        let root = rest & rest.wrapping_neg();
        let rv = root.trailing_zeros() as usize;
        let lower = root - 1;
        let excluded = lower | root;
        grow(nbr, live, root, nbr[rv] & live & !excluded, excluded, &mut f);
        rest &= !root;
    }
}

/// Calls `f` for every maximal independent subset of `set` (Bron-Kerbosch on
/// the complement, with pivoting).
pub fn for_each_maximal_independent(nbr: &[Mask], set: Mask, mut f: impl FnMut(Mask)) {
    fn bk(nbr: &[Mask], set: Mask, r: Mask, p: Mask, x: Mask, f: &mut dyn FnMut(Mask)) {
        if p == 0 && x == 0 {
            f(r);
            return;
        }
        // pivot maximizing |P ∩ non-neighbors|
        let px = p | x;
        let mut pivot = px.trailing_zeros() as usize;
        let mut best = 0;
        let mut it = px;
        while it != 0 {
            let u = it.trailing_zeros() as usize;
            it &= it - 1;
            let c = (p & !nbr[u] & !(1 << u)).count_ones() + 1;
            if c > best {
                best = c;
                pivot = u;
            }
        }
        let mut cand = p & (nbr[pivot] | (1 << pivot));
        let (mut p, mut x) = (p, x);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let bit = 1 << v;
            cand &= !bit;
            let keep = set & !nbr[v] & !bit;
            bk(nbr, set, r | bit, p & keep, x & keep, f);
            p &= !bit;
            x |= bit;
        }
    }
    bk(nbr, set, 0, set, 0, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::mask_of;

    #[test]
    fn small_values() {
        assert_eq!(s_exact(&Graph::empty(1), DEFAULT_CAP).unwrap(), 1);
        assert_eq!(s_exact(path(2).graph(), DEFAULT_CAP).unwrap(), 3);
        assert_eq!(s_exact(&cycle(4), DEFAULT_CAP).unwrap(), 6);
        assert_eq!(s_exact(&Graph::empty(0), DEFAULT_CAP).unwrap(), 0);
    }

    #[test]
    fn complete_graphs_cost_triangular() {
        // each round colors at most one vertex of a clique
        for n in 1..=7 {
            assert_eq!(s_exact(&complete(n), DEFAULT_CAP).unwrap() as u64, crate::triangular(n as u64).unwrap());
        }
    }

    #[test]
    fn cap_enforced() {
        let g = path(13);
        assert_eq!(s_exact(g.graph(), 12), Err(Error::SizeCapExceeded { n: 13, cap: 12 }));
        assert_eq!(s_exact(path(21).graph(), 64), Err(Error::SizeCapExceeded { n: 21, cap: 20 }));
    }

    #[test]
    fn connected_subsets_match_brute_force() {
        for g in [cycle(6), path(5).into_graph(), complete(4), double_star(2, 2).into_graph()] {
            let nbr = g.neighbor_masks();
            let live = full_mask(g.n()) & !2;
            let mut got = Vec::new();
            for_each_connected_subset(&nbr, live, |m| got.push(m));
            let mut want = Vec::new();
            let mut m = live;
            while m != 0 {
                if is_connected_set(&nbr, m) {
                    want.push(m);
                }
                m = (m - 1) & live;
            }
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn maximal_independent_match_brute_force() {
        for g in [cycle(7), star(5).into_graph(), complete(4), path(6).into_graph()] {
            let nbr = g.neighbor_masks();
            let set = full_mask(g.n());
            let mut got = Vec::new();
            for_each_maximal_independent(&nbr, set, |m| got.push(m));
            let mut want = Vec::new();
            for m in 1..=set {
                let maximal = (0..g.n()).all(|v| m & (1 << v) != 0 || nbr[v] & m != 0);
                if is_independent(&nbr, m) && maximal {
                    want.push(m);
                }
            }
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn lister_move_examples() {
        let one = Graph::empty(1);
        let mv = optimal_lister_moves(&Position::start(&one), DEFAULT_CAP, false).unwrap();
        assert_eq!(mv.connected, vec![1]);

        let k2 = path(2);
        let mv = optimal_lister_moves(&Position::start(k2.graph()), DEFAULT_CAP, true).unwrap();
        assert_eq!(mv.value, 3);
        assert!(mv.connected.contains(&0b11));

        let k13 = star(4);
        let mv = optimal_lister_moves(&Position::start(k13.graph()), DEFAULT_CAP, true).unwrap();
        // center plus two leaves; no leaves-only move is optimal since r - t_{u_r} = 0
        assert_eq!(mv.value, 6);
        assert!(mv.all.as_ref().unwrap().iter().all(|&m| m & 1 == 1 && m.count_ones() == 3));
        assert_eq!(mv.all.unwrap().len(), 3);
    }

    #[test]
    fn painter_response_examples() {
        let k16 = star(7);
        let p = Position::start(k16.graph());
        let resp = optimal_painter_responses(&p, mask_of(&[0, 1, 2, 3]), DEFAULT_CAP).unwrap();
        assert_eq!(resp, vec![mask_of(&[0]), mask_of(&[1, 2, 3])]);

        let k15 = star(6);
        let p = Position::start(k15.graph());
        let resp = optimal_painter_responses(&p, mask_of(&[0, 1, 2]), DEFAULT_CAP).unwrap();
        assert_eq!(resp, vec![mask_of(&[0])]);

        let e = Graph::empty(4);
        let p = Position::start(&e);
        assert_eq!(optimal_painter_responses(&p, 0b1011, DEFAULT_CAP).unwrap(), vec![0b1011]);
    }

    #[test]
    fn painter_errors() {
        let k2 = path(2);
        let p = Position { base: k2.graph(), live: 0b01 };
        assert_eq!(optimal_painter_responses(&p, 0, DEFAULT_CAP), Err(Error::EmptyMark));
        assert_eq!(optimal_painter_responses(&p, 0b10, DEFAULT_CAP), Err(Error::MarkOutsideLive(vec![1])));
        let p = Position { base: k2.graph(), live: 0 };
        assert_eq!(optimal_lister_moves(&p, DEFAULT_CAP, false), Err(Error::EmptyPosition));
    }

    #[test]
    fn unrestricted_agrees_on_cycles() {
        for n in 3..=6 {
            let g = cycle(n);
            assert_eq!(s_exact_unrestricted(&g).unwrap(), s_exact(&g, DEFAULT_CAP).unwrap());
        }
    }
}

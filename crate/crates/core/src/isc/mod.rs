//! The interactive sum choice game.
//!
//! Each round Requester names a vertex and Supplier adds a color not yet in
//! that vertex's list; the game ends once the graph is colorable from the
//! lists. On forests the number of rounds under optimal play obeys the same
//! stem recurrence as the slow-coloring game.

mod colorability;
pub mod exact;
pub mod requester;
pub mod supplier;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Forest, Graph};
use crate::Mask;

pub use colorability::{forest_coloring, is_l_colorable};
pub use exact::{isc_exact, IscSolver};
pub use requester::{requester_play, ConstructiveRequester};
pub use supplier::{supplier_play, ConstructiveSupplier};

/// Colors are opaque integers; only equality matters.
pub type Color = u32;

/// Lists built up during a game, with the order in which colors arrived.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListState {
    lists: Vec<Vec<Color>>,
    log: Vec<(usize, Color)>,
}

impl ListState {
    pub fn new(n: usize) -> Self {
        ListState { lists: vec![Vec::new(); n], log: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn list(&self, x: usize) -> &[Color] {
        &self.lists[x]
    }

    /// Requests answered so far, in order.
    pub fn log(&self) -> &[(usize, Color)] {
        &self.log
    }

    pub fn request_count(&self) -> usize {
        self.log.len()
    }

    /// Records color `c` supplied at `x`; a color already in `L(x)` is an
    /// illegal move.
    pub fn add(&mut self, x: usize, c: Color) -> Result<()> {
        if x >= self.n() {
            return Err(Error::IllegalMove(format!("vertex {x} does not exist")));
        }
        if self.lists[x].contains(&c) {
            return Err(Error::IllegalMove(format!("color {c} already in the list at {x}")));
        }
        self.lists[x].push(c);
        self.log.push((x, c));
        Ok(())
    }

    /// A color appearing in no list.
    pub fn fresh_color(&self) -> Color {
        self.log.iter().map(|&(_, c)| c + 1).max().unwrap_or(0)
    }

    /// Vertex set holding each color, one mask per distinct color, in order
    /// of first appearance.
    pub fn color_classes(&self) -> Vec<(Color, Mask)> {
        let mut order: Vec<Color> = Vec::new();
        let mut masks: HashMap<Color, Mask> = HashMap::new();
        for &(x, c) in &self.log {
            let m = masks.entry(c).or_insert_with(|| {
                order.push(c);
                0
            });
            *m |= 1 << x;
        }
        order.into_iter().map(|c| (c, masks[&c])).collect()
    }

    pub fn canonical(&self) -> CanonicalListState {
        CanonicalListState::from_masks(self.color_classes().into_iter().map(|(_, m)| m).collect())
    }

    /// Colors renamed to `0, 1, ...` in order of first appearance.
    pub fn canonical_ids(&self) -> HashMap<Color, Color> {
        let mut ids = HashMap::new();
        for &(_, c) in &self.log {
            let next = ids.len() as Color;
            ids.entry(c).or_insert(next);
        }
        ids
    }
}

/// Lists up to renaming of colors: the sorted multiset of color classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalListState(pub Vec<Mask>);

impl CanonicalListState {
    pub fn from_masks(mut masks: Vec<Mask>) -> Self {
        masks.sort_unstable();
        CanonicalListState(masks)
    }
}

/// `χ_ISC` of a forest: the stem recurrence, evaluated by the peeling engine.
pub fn isc_forest(f: &Forest) -> u64 {
    crate::peel::s_forest(f)
}

/// Requests that free color `c` at stem `v`: one at each leaf in `leaves`
/// whose list is exactly `{c}`.
pub fn free_color(state: &ListState, v: usize, c: Color, leaves: &[usize]) -> Result<Vec<usize>> {
    if !state.list(v).contains(&c) {
        return Err(Error::ColorNotAtVertex { vertex: v, color: c });
    }
    Ok(leaves.iter().copied().filter(|&x| state.list(x) == [c]).collect())
}

pub trait RequesterStrategy {
    fn name(&self) -> &str;
    fn request(&mut self, g: &Graph, state: &ListState) -> Result<usize>;
}

pub trait SupplierStrategy {
    fn name(&self) -> &str;
    fn supply(&mut self, g: &Graph, state: &ListState, x: usize) -> Result<Color>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IscRound {
    pub index: usize,
    pub vertex: usize,
    /// Color renamed in order of first appearance.
    pub color: Color,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IscOutcome {
    pub rounds: usize,
    pub transcript: Vec<IscRound>,
    pub state: ListState,
    /// A proper coloring from the final lists.
    pub coloring: Vec<Color>,
}

impl IscOutcome {
    fn finish(g: &Graph, state: ListState) -> Result<Self> {
        let coloring = colorable(g, state.lists()).ok_or_else(|| Error::IllegalMove("lists are not colorable".into()))?;
        let ids = state.canonical_ids();
        let transcript = state
            .log()
            .iter()
            .enumerate()
            .map(|(i, &(x, c))| IscRound { index: i + 1, vertex: x, color: ids[&c], count: i + 1 })
            .collect();
        Ok(IscOutcome { rounds: state.request_count(), transcript, state, coloring })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.transcript {
            let _ = writeln!(s, "round {} request={} color={} count={}", r.index, r.vertex, r.color, r.count);
        }
        s
    }

    /// Requests made at `x`.
    pub fn requests_at(&self, x: usize) -> usize {
        self.transcript.iter().filter(|r| r.vertex == x).count()
    }
}

/// Colorability check, using the forest DP when `g` is acyclic.
pub fn colorable(g: &Graph, lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    if g.edge_count() + g.components().len() == g.n() {
        let live = vec![true; g.n()];
        let phi = forest_coloring(g, &live, &|x| lists[x].as_slice(), None)?;
        Some(phi.into_iter().map(|c| c.expect("every vertex colored")).collect())
    } else {
        is_l_colorable(g, lists)
    }
}

/// Safety bound on game length; no sensible play comes near it.
pub fn round_limit(g: &Graph) -> usize {
    4 * (g.n() + 2 * g.edge_count()) + 16
}

/// Plays the interactive sum choice game on `g` to the end.
pub fn run_isc(g: &Graph, requester: &mut dyn RequesterStrategy, supplier: &mut dyn SupplierStrategy) -> Result<IscOutcome> {
    let mut state = ListState::new(g.n());
    while colorable(g, state.lists()).is_none() {
        if state.request_count() >= round_limit(g) {
            return Err(Error::IllegalMove(format!("{} exceeded the round limit", requester.name())));
        }
        let x = requester.request(g, &state)?;
        if x >= g.n() {
            return Err(Error::IllegalMove(format!("request at missing vertex {x}")));
        }
        let c = supplier.supply(g, &state, x)?;
        state.add(x, c)?;
    }
    IscOutcome::finish(g, state)
}

/// Supplies a color never used anywhere.
#[derive(Debug, Clone, Default)]
pub struct FreshSupplier;

impl SupplierStrategy for FreshSupplier {
    fn name(&self) -> &str {
        "fresh"
    }
    fn supply(&mut self, _g: &Graph, state: &ListState, _x: usize) -> Result<Color> {
        Ok(state.fresh_color())
    }
}

/// Supplies a uniformly random color among those already in play and one
/// fresh color.
#[derive(Debug, Clone)]
pub struct RandomSupplier {
    rng: rand::rngs::StdRng,
}

impl RandomSupplier {
    pub fn new(seed: u64) -> Self {
        use rand::SeedableRng;
        RandomSupplier { rng: rand::rngs::StdRng::seed_from_u64(seed) }
    }
}

impl SupplierStrategy for RandomSupplier {
    fn name(&self) -> &str {
        "random"
    }
    fn supply(&mut self, _g: &Graph, state: &ListState, x: usize) -> Result<Color> {
        use rand::seq::SliceRandom;
        let mut options: Vec<Color> =
            state.color_classes().into_iter().map(|(c, _)| c).filter(|c| !state.list(x).contains(c)).collect();
        options.push(state.fresh_color());
        Ok(*options.choose(&mut self.rng).expect("nonempty"))
    }
}

/// Requests at the lowest vertex whose list is shorter than its degree plus
/// one, so it keeps hitting one vertex until that vertex is saturated.
#[derive(Debug, Clone, Default)]
pub struct RepeatRequester;

impl RequesterStrategy for RepeatRequester {
    fn name(&self) -> &str {
        "repeat"
    }
    fn request(&mut self, g: &Graph, state: &ListState) -> Result<usize> {
        (0..g.n()).find(|&x| state.list(x).len() <= g.degree(x)).ok_or(Error::GameOver)
    }
}

/// Requests at a uniformly random unsaturated vertex.
#[derive(Debug, Clone)]
pub struct RandomRequester {
    rng: rand::rngs::StdRng,
}

impl RandomRequester {
    pub fn new(seed: u64) -> Self {
        use rand::SeedableRng;
        RandomRequester { rng: rand::rngs::StdRng::seed_from_u64(seed) }
    }
}

impl RequesterStrategy for RandomRequester {
    fn name(&self) -> &str {
        "random"
    }
    fn request(&mut self, g: &Graph, state: &ListState) -> Result<usize> {
        use rand::seq::SliceRandom;
        let open: Vec<usize> = (0..g.n()).filter(|&x| state.list(x).len() <= g.degree(x)).collect();
        open.choose(&mut self.rng).copied().ok_or(Error::GameOver)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn add_rejects_duplicates() {
        let mut s = ListState::new(2);
        s.add(0, 5).unwrap();
        assert!(matches!(s.add(0, 5), Err(Error::IllegalMove(_))));
        s.add(1, 5).unwrap();
        assert_eq!(s.request_count(), 2);
        assert_eq!(s.fresh_color(), 6);
    }

    #[test]
    fn canonical_ignores_names() {
        let mut a = ListState::new(3);
        let mut b = ListState::new(3);
        for (x, c) in [(0, 1), (1, 1), (2, 7), (0, 7)] {
            a.add(x, c).unwrap();
        }
        for (x, c) in [(0, 9), (1, 9), (2, 3), (0, 3)] {
            b.add(x, c).unwrap();
        }
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn free_color_examples() {
        let mut s = ListState::new(4);
        for (x, c) in [(0, 1), (1, 1), (2, 1), (3, 1), (3, 2)] {
            s.add(x, c).unwrap();
        }
        assert_eq!(free_color(&s, 0, 1, &[1, 2, 3]).unwrap(), vec![1, 2]);
        assert_eq!(free_color(&s, 0, 1, &[3]).unwrap(), Vec::<usize>::new());
        assert_eq!(free_color(&s, 0, 2, &[1]), Err(Error::ColorNotAtVertex { vertex: 0, color: 2 }));
    }

    #[test]
    fn isc_forest_examples() {
        assert_eq!(isc_forest(&edgeless(5)), 5);
        assert_eq!(isc_forest(&path(6)), 9);
        for r in 1..20u64 {
            assert_eq!(isc_forest(&star(r as usize + 1)), crate::math::star_cost(r));
        }
    }

    #[test]
    fn repeat_requester_on_k2() {
        let k2 = path(2);
        let out = run_isc(k2.graph(), &mut RepeatRequester, &mut FreshSupplier).unwrap();
        assert_eq!(out.rounds, 3);
        assert_eq!(out.requests_at(0), 2);
    }
}

//! Constructive Lister and Painter strategies on forests, plus a match
//! harness for pitting any two strategies against each other.
//!
//! Both constructive strategies are stateless apart from bookkeeping: each
//! round they re-derive their move from the peel trace of the residual
//! forest, so they stay optimal after off-script opponent moves.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::exact::Solver;
use crate::graph::{find_stem_live, Forest, Graph};
use crate::math::{is_triangular, star_cost, u};
use crate::peel::s_forest_trace_live;
use crate::{mask_of, mask_vertices};

fn s_star(r: usize) -> u64 {
    star_cost(r as u64)
}

fn ur(r: usize) -> usize {
    u(r as u64) as usize
}

pub(crate) fn check_mark(g: &Graph, live: &[bool], mark: &[usize]) -> Result<()> {
    if mark.is_empty() {
        return Err(Error::EmptyMark);
    }
    let outside: BTreeSet<usize> = mark.iter().copied().filter(|&x| x >= g.n() || !live[x]).collect();
    if !outside.is_empty() {
        return Err(Error::MarkOutsideLive(outside.into_iter().collect()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StepPlan {
    Leaves,
    Center,
    /// Leaves unless the cut edge to `attach` would cost an extra round.
    LeavesOrCenter { p: usize },
    /// Leaves unless the stem itself gets colored further down the trace.
    Case3,
}

/// Painter's reply to `mark` in the forest induced on `live`, together with
/// the cut edges `(stem, attach)` whose token was spent this round.
pub fn painter_response(g: &Graph, live: &[bool], mark: &[usize]) -> Result<(Vec<usize>, Vec<(usize, usize)>)> {
    check_mark(g, live, mark)?;
    let trace = s_forest_trace_live(g, live);
    let mut marked = vec![false; g.n()];
    for &x in mark {
        marked[x] = true;
    }
    let mut gone = vec![false; g.n()];
    let mut spent = Vec::new();
    let mut plans = Vec::with_capacity(trace.steps.len());
    for st in &trace.steps {
        let (v, r) = (st.stem, st.r());
        let p = st.leaves.iter().filter(|&&x| marked[x]).count();
        let plan = match (st.triangular_case, marked[v]) {
            (false, true) => {
                if (p + 1) as u64 + s_star(r - p) > s_star(r) {
                    if let Some(w) = st.attach {
                        if marked[w] {
                            marked[w] = false;
                            spent.push((v, w));
                        }
                    }
                    StepPlan::Center
                } else {
                    StepPlan::LeavesOrCenter { p }
                }
            }
            (true, true) if p > ur(r) => {
                marked[v] = false;
                StepPlan::Leaves
            }
            (true, true) => StepPlan::Case3,
            (_, false) => StepPlan::Leaves,
        };
        plans.push(plan);
        for &x in &st.deleted {
            gone[x] = true;
        }
    }
    let mut colored = vec![false; g.n()];
    for x in 0..g.n() {
        colored[x] = live[x] && !gone[x] && marked[x];
    }
    for (st, plan) in trace.steps.iter().zip(plans).rev() {
        let (v, r) = (st.stem, st.r());
        let leaves_side = match plan {
            StepPlan::Leaves => true,
            StepPlan::Center => false,
            StepPlan::LeavesOrCenter { p } => {
                let cut_free = st.attach.map_or(true, |w| colored[w]);
                cut_free || !is_triangular((r - p) as u64 + 1) || (p + 2) as u64 + s_star(r - p) <= s_star(r)
            }
            StepPlan::Case3 => !colored[v],
        };
        if leaves_side {
            for &x in &st.leaves {
                colored[x] = marked[x];
            }
        } else {
            colored[v] = true;
        }
    }
    let out = (0..g.n()).filter(|&x| colored[x]).collect();
    Ok((out, spent))
}

/// Lister's next marked set in the forest induced on `live`: a stem with
/// `u_r + 1` of its leaves when `r + 1` is triangular, else with `u_r`
/// leaves; the lowest vertex when no edges remain.
pub fn lister_move(g: &Graph, live: &[bool]) -> Result<Vec<usize>> {
    match find_stem_live(g, live) {
        Some(st) => {
            let r = st.r();
            let p = if is_triangular(r as u64 + 1) { ur(r) + 1 } else { ur(r) };
            let mut m = vec![st.v];
            m.extend_from_slice(&st.leaves[..p]);
            m.sort_unstable();
            Ok(m)
        }
        None => live.iter().position(|&b| b).map(|x| vec![x]).ok_or(Error::GameOver),
    }
}

/// Constructive Painter with its cut-edge token ledger.
#[derive(Debug, Clone, Default, Serialize)]
pub struct PainterPlan {
    pub spent_tokens: BTreeSet<(usize, usize)>,
}

impl PainterPlan {
    pub fn respond(&mut self, g: &Graph, live: &[bool], mark: &[usize]) -> Result<Vec<usize>> {
        let (colored, spent) = painter_response(g, live, mark)?;
        for e in spent {
            let fresh = self.spent_tokens.insert(e);
            debug_assert!(fresh, "cut edge {e:?} charged twice");
        }
        Ok(colored)
    }
}

/// Constructive Lister.
#[derive(Debug, Clone, Default)]
pub struct ListerPlan;

impl ListerPlan {
    pub fn next_move(&self, g: &Graph, live: &[bool]) -> Result<Vec<usize>> {
        lister_move(g, live)
    }
}

pub trait ListerStrategy {
    fn name(&self) -> &str;
    fn mark(&mut self, g: &Graph, live: &[bool]) -> Result<Vec<usize>>;
}

pub trait PainterStrategy {
    fn name(&self) -> &str;
    fn respond(&mut self, g: &Graph, live: &[bool], mark: &[usize]) -> Result<Vec<usize>>;
}

impl ListerStrategy for ListerPlan {
    fn name(&self) -> &str {
        "constructive"
    }
    fn mark(&mut self, g: &Graph, live: &[bool]) -> Result<Vec<usize>> {
        self.next_move(g, live)
    }
}

impl PainterStrategy for PainterPlan {
    fn name(&self) -> &str {
        "constructive"
    }
    fn respond(&mut self, g: &Graph, live: &[bool], mark: &[usize]) -> Result<Vec<usize>> {
        PainterPlan::respond(self, g, live, mark)
    }
}

fn live_mask(live: &[bool]) -> u64 {
    live.iter().enumerate().filter(|(_, &b)| b).fold(0, |m, (i, _)| m | (1 << i))
}

/// Exact-engine player; solves lazily on the first move.
#[derive(Debug, Clone)]
pub struct ExactPlayer {
    cap: usize,
    solver: Option<Solver>,
}

impl ExactPlayer {
    pub fn new(cap: usize) -> Self {
        ExactPlayer { cap, solver: None }
    }

    fn solver(&mut self, g: &Graph) -> Result<&mut Solver> {
        if self.solver.as_ref().map_or(true, |s| s.n() != g.n()) {
            self.solver = Some(Solver::new(g, self.cap)?);
        }
        Ok(self.solver.as_mut().expect("just built"))
    }
}

impl ListerStrategy for ExactPlayer {
    fn name(&self) -> &str {
        "exact"
    }
    fn mark(&mut self, g: &Graph, live: &[bool]) -> Result<Vec<usize>> {
        let live = live_mask(live);
        Ok(mask_vertices(self.solver(g)?.best_lister_move(live)?))
    }
}

impl PainterStrategy for ExactPlayer {
    fn name(&self) -> &str {
        "exact"
    }
    fn respond(&mut self, g: &Graph, live: &[bool], mark: &[usize]) -> Result<Vec<usize>> {
        check_mark(g, live, mark)?;
        let live = live_mask(live);
        Ok(mask_vertices(self.solver(g)?.best_painter_response(live, mask_of(mark))?))
    }
}

/// Uniformly random nonempty marks; random maximal independent responses.
#[derive(Debug, Clone)]
pub struct RandomPlayer {
    rng: StdRng,
}

impl RandomPlayer {
    pub fn new(seed: u64) -> Self {
        RandomPlayer { rng: StdRng::seed_from_u64(seed) }
    }
}

impl ListerStrategy for RandomPlayer {
    fn name(&self) -> &str {
        "random"
    }
    fn mark(&mut self, _g: &Graph, live: &[bool]) -> Result<Vec<usize>> {
        let pool: Vec<usize> = (0..live.len()).filter(|&x| live[x]).collect();
        let first = *pool.choose(&mut self.rng).ok_or(Error::GameOver)?;
        let mut m: Vec<usize> = pool.into_iter().filter(|&x| x == first || self.rng.gen_bool(0.5)).collect();
        m.sort_unstable();
        Ok(m)
    }
}

impl PainterStrategy for RandomPlayer {
    fn name(&self) -> &str {
        "random"
    }
    fn respond(&mut self, g: &Graph, live: &[bool], mark: &[usize]) -> Result<Vec<usize>> {
        check_mark(g, live, mark)?;
        let mut order = mark.to_vec();
        order.shuffle(&mut self.rng);
        Ok(greedy_independent(g, &order))
    }
}

/// Marks every uncolored vertex; colors marked vertices greedily by fewest
/// marked neighbors.
#[derive(Debug, Clone, Default)]
pub struct GreedyPlayer;

impl ListerStrategy for GreedyPlayer {
    fn name(&self) -> &str {
        "greedy"
    }
    fn mark(&mut self, _g: &Graph, live: &[bool]) -> Result<Vec<usize>> {
        let m: Vec<usize> = (0..live.len()).filter(|&x| live[x]).collect();
        if m.is_empty() {
            return Err(Error::GameOver);
        }
        Ok(m)
    }
}

impl PainterStrategy for GreedyPlayer {
    fn name(&self) -> &str {
        "greedy"
    }
    fn respond(&mut self, g: &Graph, live: &[bool], mark: &[usize]) -> Result<Vec<usize>> {
        check_mark(g, live, mark)?;
        let in_mark: BTreeSet<usize> = mark.iter().copied().collect();
        let mut order = mark.to_vec();
        order.sort_by_key(|&x| (g.neighbors(x).iter().filter(|y| in_mark.contains(y)).count(), x));
        Ok(greedy_independent(g, &order))
    }
}

fn greedy_independent(g: &Graph, order: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for &x in order {
        if chosen.iter().all(|&y| !g.has_edge(x, y)) {
            chosen.push(x);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Strategy families selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    Constructive,
    Exact,
    Random,
    Greedy,
}

impl std::str::FromStr for StrategyKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "constructive" => Ok(Self::Constructive),
            "exact" => Ok(Self::Exact),
            "random" => Ok(Self::Random),
            "greedy" => Ok(Self::Greedy),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

pub fn make_lister(kind: StrategyKind, seed: u64, cap: usize) -> Box<dyn ListerStrategy + Send> {
    match kind {
        StrategyKind::Constructive => Box::new(ListerPlan),
        StrategyKind::Exact => Box::new(ExactPlayer::new(cap)),
        StrategyKind::Random => Box::new(RandomPlayer::new(seed)),
        StrategyKind::Greedy => Box::new(GreedyPlayer),
    }
}

pub fn make_painter(kind: StrategyKind, seed: u64, cap: usize) -> Box<dyn PainterStrategy + Send> {
    match kind {
        StrategyKind::Constructive => Box::new(PainterPlan::default()),
        StrategyKind::Exact => Box::new(ExactPlayer::new(cap)),
        StrategyKind::Random => Box::new(RandomPlayer::new(seed)),
        StrategyKind::Greedy => Box::new(GreedyPlayer),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub index: usize,
    pub marked: Vec<usize>,
    pub colored: Vec<usize>,
    pub score: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub rounds: Vec<Round>,
}

impl Transcript {
    pub fn score(&self) -> u64 {
        self.rounds.last().map_or(0, |r| r.score)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rounds {
            let _ = writeln!(s, "round {} marked={:?} colored={:?} score={}", r.index, r.marked, r.colored, r.score);
        }
        s
    }
}

/// A match stopped by an illegal move; carries the rounds played so far.
#[derive(Debug, Clone, ThisError)]
#[error("{side} made an illegal move in round {round}: {reason}")]
pub struct MatchAbort {
    pub side: &'static str,
    pub round: usize,
    pub reason: String,
    pub transcript: Transcript,
}

/// Plays the slow-coloring game on `f` to the end.
pub fn play_match(
    f: &Forest,
    lister: &mut dyn ListerStrategy,
    painter: &mut dyn PainterStrategy,
) -> std::result::Result<Transcript, MatchAbort> {
    play_on_graph(f.graph(), lister, painter)
}

/// As [`play_match`] on an arbitrary graph; the constructive strategies
/// require the graph to be a forest.
pub fn play_on_graph(
    g: &Graph,
    lister: &mut dyn ListerStrategy,
    painter: &mut dyn PainterStrategy,
) -> std::result::Result<Transcript, MatchAbort> {
    let mut live = vec![true; g.n()];
    let mut left = g.n();
    let mut t = Transcript::default();
    let mut score = 0u64;
    while left > 0 {
        let round = t.rounds.len() + 1;
        let abort = |side, reason: String, t: &Transcript| MatchAbort { side, round, reason, transcript: t.clone() };
        let mut m = lister.mark(g, &live).map_err(|e| abort("lister", e.to_string(), &t))?;
        m.sort_unstable();
        m.dedup();
        check_mark(g, &live, &m).map_err(|e| abort("lister", e.to_string(), &t))?;
        let mut i = painter.respond(g, &live, &m).map_err(|e| abort("painter", e.to_string(), &t))?;
        i.sort_unstable();
        i.dedup();
        if let Err(reason) = check_response(g, &m, &i) {
            return Err(abort("painter", reason, &t));
        }
        score += m.len() as u64;
        for &x in &i {
            live[x] = false;
        }
        left -= i.len();
        t.rounds.push(Round { index: round, marked: m, colored: i, score });
    }
    Ok(t)
}

/// Checks that `colored` is a nonempty independent subset of `mark`.
pub fn check_response(g: &Graph, mark: &[usize], colored: &[usize]) -> std::result::Result<(), String> {
    if colored.is_empty() {
        return Err("empty coloring".into());
    }
    if let Some(x) = colored.iter().find(|x| !mark.contains(x)) {
        return Err(format!("vertex {x} colored but not marked"));
    }
    for (k, &x) in colored.iter().enumerate() {
        if let Some(&y) = colored[k + 1..].iter().find(|&&y| g.has_edge(x, y)) {
            return Err(format!("not independent: {x} and {y} are adjacent"));
        }
    }
    Ok(())
}

//! Interactive game sessions: one human player against an engine.
//!
//! A session is fully determined by its creation request and the sequence of
//! human moves; engine replies are deterministic, so replaying the human
//! moves rebuilds the same state.

use serde::{Deserialize, Serialize};
use slowcolor::exact::{Solver, DEFAULT_CAP};
use slowcolor::graph::EdgeList;
use slowcolor::isc::exact::{ExactIscPlayer, IscSolver, DEFAULT_ISC_CAP};
use slowcolor::isc::requester::ConstructiveRequester;
use slowcolor::isc::supplier::ConstructiveSupplier;
use slowcolor::isc::{colorable, isc_forest, Color, ListState, RequesterStrategy, SupplierStrategy};
use slowcolor::peel::s_forest_live;
use slowcolor::strategy::{
    check_response, lister_move, painter_response, ExactPlayer, ListerPlan, ListerStrategy, PainterPlan,
    PainterStrategy,
};
use slowcolor::{mask_of, mask_vertices, parse_graph, validate_forest, Error, Forest, Graph};

/// Largest live set for which hints list every optimal Lister move, not only
/// the connected ones.
const EXHAUSTIVE_HINT_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Slow,
    Isc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Lister,
    Painter,
    Requester,
    Supplier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Exact,
    Constructive,
}

/// Either the edge-list text format or `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Text(String),
    Edges(EdgeList),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CreateGame {
    pub graph: GraphSpec,
    pub variant: Variant,
    pub human_role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineKind>,
}

/// A move. ISC colors are canonical ids: colors are numbered in order of
/// first appearance, and the next unused id asks for a new color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    Mark(Vec<usize>),
    Color(Vec<usize>),
    Request(usize),
    Supply(Color),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub by: Role,
    pub human: bool,
    #[serde(flatten)]
    pub mv: Move,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SessionError {
    /// Malformed request or illegal move.
    BadRequest(String),
    NotFound(String),
    OutOfTurn(String),
    TooLarge(String),
    Internal(String),
}

impl std::fmt::Display for SessionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SessionError::BadRequest(s)
            | SessionError::NotFound(s)
            | SessionError::OutOfTurn(s)
            | SessionError::TooLarge(s)
            | SessionError::Internal(s) => f.write_str(s),
        }
    }
}

type SResult<T> = std::result::Result<T, SessionError>;

fn internal(e: Error) -> SessionError {
    SessionError::Internal(format!("engine failure: {e}"))
}

enum Game {
    Slow {
        live: Vec<bool>,
        colored_round: Vec<Option<usize>>,
        score: u64,
        round: usize,
        pending: Option<Vec<usize>>,
        lister: Option<Box<dyn ListerStrategy + Send>>,
        painter: Option<Box<dyn PainterStrategy + Send>>,
        solver: Option<Solver>,
    },
    Isc {
        state: ListState,
        finished: bool,
        pending: Option<usize>,
        requester: Option<Box<dyn RequesterStrategy + Send>>,
        supplier: Option<Box<dyn SupplierStrategy + Send>>,
        solver: Option<IscSolver>,
    },
}

pub struct Session {
    pub id: String,
    pub request: CreateGame,
    graph: Graph,
    forest: Option<Forest>,
    engine: EngineKind,
    history: Vec<MoveRecord>,
    game: Game,
}

#[derive(Debug, Clone, Serialize)]
pub struct SlowView {
    pub score: u64,
    pub round: usize,
    /// Round in which each vertex was colored.
    pub colored: Vec<Option<usize>>,
    pub pending_mark: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IscView {
    pub rounds: usize,
    pub lists: Vec<Vec<Color>>,
    pub pending_request: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionView {
    pub id: String,
    pub variant: Variant,
    pub human_role: Role,
    pub engine: EngineKind,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub status: &'static str,
    pub turn: Option<Role>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slow: Option<SlowView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isc: Option<IscView>,
    pub history: Vec<MoveRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Hint {
    pub role: Role,
    /// Optimal moves; all of them when `exact`, otherwise one.
    pub moves: Vec<Move>,
    /// Value of the rest of the game after the hinted move, counting only
    /// future marks (slow) or requests (isc). Absent when unknown.
    pub value: Option<u64>,
    pub exact: bool,
}

fn build_graph(spec: &GraphSpec) -> SResult<Graph> {
    let g = match spec {
        GraphSpec::Text(t) => parse_graph(t),
        GraphSpec::Edges(e) => Graph::from_edges(e.n, &e.edges),
    };
    g.map_err(|e| SessionError::BadRequest(e.to_string()))
}

fn canonical_lists(state: &ListState) -> Vec<Vec<Color>> {
    let ids = state.canonical_ids();
    state.lists().iter().map(|l| l.iter().map(|c| ids[c]).collect()).collect()
}

impl Session {
    pub fn new(id: String, request: CreateGame) -> SResult<Self> {
        let graph = build_graph(&request.graph)?;
        let forest = validate_forest(graph.clone()).ok();
        let engine = match (request.engine, forest.is_some()) {
            (Some(EngineKind::Constructive), false) => {
                return Err(SessionError::BadRequest(
                    "the constructive engine needs a forest; use engine \"exact\" for graphs with cycles".into(),
                ))
            }
            (Some(e), _) => e,
            (None, true) => EngineKind::Constructive,
            (None, false) => EngineKind::Exact,
        };
        let cap = match request.variant {
            Variant::Slow => DEFAULT_CAP,
            Variant::Isc => DEFAULT_ISC_CAP,
        };
        if engine == EngineKind::Exact && graph.n() > cap {
            return Err(SessionError::TooLarge(format!(
                "graph has {} vertices; the exact engine is capped at {cap}",
                graph.n()
            )));
        }
        let human = request.human_role;
        let game = match (request.variant, human) {
            (Variant::Slow, Role::Lister | Role::Painter) => {
                let (lister, painter): (Option<Box<dyn ListerStrategy + Send>>, Option<Box<dyn PainterStrategy + Send>>) =
                    match (human, engine) {
                        (Role::Lister, EngineKind::Exact) => (None, Some(Box::new(ExactPlayer::new(cap)))),
                        (Role::Lister, _) => (None, Some(Box::new(PainterPlan::default()))),
                        (_, EngineKind::Exact) => (Some(Box::new(ExactPlayer::new(cap))), None),
                        _ => (Some(Box::new(ListerPlan)), None),
                    };
                Game::Slow {
                    live: vec![true; graph.n()],
                    colored_round: vec![None; graph.n()],
                    score: 0,
                    round: 0,
                    pending: None,
                    lister,
                    painter,
                    solver: None,
                }
            }
            (Variant::Isc, Role::Requester | Role::Supplier) => {
                let (requester, supplier): (
                    Option<Box<dyn RequesterStrategy + Send>>,
                    Option<Box<dyn SupplierStrategy + Send>>,
                ) = match (human, engine, &forest) {
                    (Role::Requester, EngineKind::Exact, _) => (None, Some(Box::new(ExactIscPlayer::new(cap)))),
                    (Role::Requester, _, Some(f)) => (None, Some(Box::new(ConstructiveSupplier::new(f)))),
                    (_, EngineKind::Exact, _) => (Some(Box::new(ExactIscPlayer::new(cap))), None),
                    _ => (Some(Box::new(ConstructiveRequester)), None),
                };
                let state = ListState::new(graph.n());
                let finished = colorable(&graph, state.lists()).is_some();
                Game::Isc { state, finished, pending: None, requester, supplier, solver: None }
            }
            (v, r) => {
                return Err(SessionError::BadRequest(format!("role {r:?} does not play the {v:?} game").to_lowercase()))
            }
        };
        let mut s = Session { id, request, graph, forest, engine, history: Vec::new(), game };
        s.engine_turn()?;
        Ok(s)
    }

    pub fn human_moves(&self) -> Vec<Move> {
        self.history.iter().filter(|r| r.human).map(|r| r.mv.clone()).collect()
    }

    pub fn finished(&self) -> bool {
        match &self.game {
            Game::Slow { live, .. } => !live.contains(&true),
            Game::Isc { finished, .. } => *finished,
        }
    }

    /// Whose move it is, or `None` once the game is over.
    pub fn turn(&self) -> Option<Role> {
        if self.finished() {
            return None;
        }
        Some(match &self.game {
            Game::Slow { pending: Some(_), .. } => Role::Painter,
            Game::Slow { .. } => Role::Lister,
            Game::Isc { pending: Some(_), .. } => Role::Supplier,
            Game::Isc { .. } => Role::Requester,
        })
    }

    pub fn view(&self) -> SessionView {
        let (slow, isc) = match &self.game {
            Game::Slow { colored_round, score, round, pending, .. } => (
                Some(SlowView { score: *score, round: *round, colored: colored_round.clone(), pending_mark: pending.clone() }),
                None,
            ),
            Game::Isc { state, pending, .. } => (
                None,
                Some(IscView { rounds: state.request_count(), lists: canonical_lists(state), pending_request: *pending }),
            ),
        };
        SessionView {
            id: self.id.clone(),
            variant: self.request.variant,
            human_role: self.request.human_role,
            engine: self.engine,
            n: self.graph.n(),
            edges: self.graph.edges(),
            status: if self.finished() { "finished" } else { "active" },
            turn: self.turn(),
            slow,
            isc,
            history: self.history.clone(),
        }
    }

    /// Applies a human move and the engine's reply; returns the engine moves.
    pub fn apply(&mut self, mv: Move) -> SResult<Vec<MoveRecord>> {
        let human = self.request.human_role;
        let turn = self.turn().ok_or_else(|| SessionError::OutOfTurn("the game is finished".into()))?;
        let kind = match mv {
            Move::Mark(_) => Role::Lister,
            Move::Color(_) => Role::Painter,
            Move::Request(_) => Role::Requester,
            Move::Supply(_) => Role::Supplier,
        };
        if kind != human {
            return Err(SessionError::OutOfTurn(format!("you play {human:?}; this move belongs to {kind:?}").to_lowercase()));
        }
        if turn != human {
            return Err(SessionError::OutOfTurn(format!("it is the {turn:?}'s turn").to_lowercase()));
        }
        let n = self.graph.n();
        match (&mut self.game, &mv) {
            (Game::Slow { live, score, pending, .. }, Move::Mark(m)) => {
                let m = check_vertex_set(m, n)?;
                if m.is_empty() {
                    return Err(SessionError::BadRequest("empty mark: Lister must mark at least one vertex".into()));
                }
                if let Some(x) = m.iter().find(|&&x| !live[x]) {
                    return Err(SessionError::BadRequest(format!("vertex {x} is already colored")));
                }
                *score += m.len() as u64;
                *pending = Some(m);
            }
            (Game::Slow { pending, .. }, Move::Color(c)) => {
                let c = check_vertex_set(c, n)?;
                let mark = pending.as_ref().expect("painter's turn has a pending mark");
                check_response(&self.graph, mark, &c).map_err(SessionError::BadRequest)?;
                self.color(&c);
            }
            (Game::Isc { pending, .. }, Move::Request(v)) => {
                if *v >= n {
                    return Err(SessionError::BadRequest(format!("vertex {v} out of range for n = {n}")));
                }
                *pending = Some(*v);
            }
            (Game::Isc { state, pending, .. }, Move::Supply(id)) => {
                let v = pending.expect("supplier's turn has a pending request");
                let ids = state.canonical_ids();
                let color = if (*id as usize) == ids.len() {
                    state.fresh_color()
                } else {
                    *ids.iter()
                        .find(|(_, &k)| k == *id)
                        .ok_or_else(|| SessionError::BadRequest(format!("unknown color id {id}; next new color is {}", ids.len())))?
                        .0
                };
                if state.list(v).contains(&color) {
                    return Err(SessionError::BadRequest(format!("color {id} already in the list of vertex {v}")));
                }
                self.supply(color);
            }
            _ => return Err(SessionError::BadRequest("move does not belong to this game".into())),
        }
        // a human supply is recorded by `supply`
        if !matches!(mv, Move::Supply(_)) {
            self.history.push(MoveRecord { by: human, human: true, mv });
        }
        let before = self.history.len();
        self.engine_turn()?;
        Ok(self.history[before..].to_vec())
    }

    fn color(&mut self, c: &[usize]) {
        if let Game::Slow { live, colored_round, round, pending, .. } = &mut self.game {
            *round += 1;
            for &x in c {
                live[x] = false;
                colored_round[x] = Some(*round);
            }
            // uncolored marked vertices simply stay in the game
            *pending = None;
        }
    }

    /// Adds `color` at the pending vertex and records the supply.
    fn supply(&mut self, color: Color) {
        let human = self.request.human_role == Role::Supplier;
        if let Game::Isc { state, finished, pending, .. } = &mut self.game {
            let v = pending.take().expect("pending request");
            state.add(v, color).expect("checked legal");
            let id = state.canonical_ids()[&color];
            *finished = colorable(&self.graph, state.lists()).is_some();
            self.history.push(MoveRecord { by: Role::Supplier, human, mv: Move::Supply(id) });
        }
    }

    /// Lets the engine move while it is the engine's turn.
    fn engine_turn(&mut self) -> SResult<()> {
        let human = self.request.human_role;
        while let Some(turn) = self.turn() {
            if turn == human {
                break;
            }
            let g = &self.graph;
            match &mut self.game {
                Game::Slow { live, score, pending: pending @ None, lister: Some(l), .. } => {
                    let m = l.mark(g, live).map_err(internal)?;
                    *score += m.len() as u64;
                    *pending = Some(m.clone());
                    self.history.push(MoveRecord { by: Role::Lister, human: false, mv: Move::Mark(m) });
                }
                Game::Slow { live, pending: Some(m), painter: Some(p), .. } => {
                    let c = p.respond(g, live, m).map_err(internal)?;
                    check_response(g, m, &c).map_err(SessionError::Internal)?;
                    self.history.push(MoveRecord { by: Role::Painter, human: false, mv: Move::Color(c.clone()) });
                    self.color(&c);
                }
                Game::Isc { state, pending: pending @ None, requester: Some(r), .. } => {
                    let v = r.request(g, state).map_err(internal)?;
                    *pending = Some(v);
                    self.history.push(MoveRecord { by: Role::Requester, human: false, mv: Move::Request(v) });
                }
                Game::Isc { state, pending: Some(v), supplier: Some(s), .. } => {
                    let c = s.supply(g, state, *v).map_err(internal)?;
                    if state.list(*v).contains(&c) {
                        return Err(SessionError::Internal(format!("engine repeated color at {v}")));
                    }
                    self.supply(c);
                }
                _ => unreachable!("the engine owns the other role"),
            }
        }
        Ok(())
    }

    pub fn hint(&mut self) -> SResult<Hint> {
        let role = self.turn().ok_or_else(|| SessionError::OutOfTurn("the game is finished".into()))?;
        let g = &self.graph;
        let n = g.n();
        match &mut self.game {
            Game::Slow { live, pending, solver, .. } => {
                let live_mask = mask_of(&(0..n).filter(|&x| live[x]).collect::<Vec<_>>());
                if n <= DEFAULT_CAP {
                    let s = match solver {
                        Some(s) => s,
                        None => solver.insert(Solver::new(g, DEFAULT_CAP).map_err(internal)?),
                    };
                    if let Some(m) = pending {
                        let resp = s.optimal_painter_responses(live_mask, mask_of(m)).map_err(internal)?;
                        let value = resp.iter().map(|&x| s.value(live_mask & !x)).min().map(u64::from);
                        let moves = resp.into_iter().map(|x| Move::Color(mask_vertices(x))).collect();
                        return Ok(Hint { role, moves, value, exact: true });
                    }
                    let exhaustive = live_mask.count_ones() as usize <= EXHAUSTIVE_HINT_N;
                    let lm = s.optimal_lister_moves(live_mask, exhaustive).map_err(internal)?;
                    let sets = lm.all.clone().unwrap_or_else(|| lm.connected.clone());
                    let moves = sets.into_iter().map(|x| Move::Mark(mask_vertices(x))).collect();
                    return Ok(Hint { role, moves, value: Some(u64::from(lm.value)), exact: true });
                }
                // beyond the exact cap only forests are allowed
                if let Some(m) = pending {
                    let (c, _) = painter_response(g, live, m).map_err(internal)?;
                    let mut rest = live.clone();
                    for &x in &c {
                        rest[x] = false;
                    }
                    let value = s_forest_live(g, &rest);
                    return Ok(Hint { role, moves: vec![Move::Color(c)], value: Some(value), exact: false });
                }
                let m = lister_move(g, live).map_err(internal)?;
                Ok(Hint { role, moves: vec![Move::Mark(m)], value: Some(s_forest_live(g, live)), exact: false })
            }
            Game::Isc { state, pending, solver, .. } => {
                if n <= DEFAULT_ISC_CAP {
                    let s = match solver {
                        Some(s) => s,
                        None => solver.insert(IscSolver::new(g, DEFAULT_ISC_CAP).map_err(internal)?),
                    };
                    if let Some(v) = *pending {
                        let c = s.best_supply(state, v);
                        let mut next = state.clone();
                        next.add(v, c).map_err(internal)?;
                        let value = u64::from(s.state_value(&next));
                        let id = next.canonical_ids()[&c];
                        return Ok(Hint { role, moves: vec![Move::Supply(id)], value: Some(value), exact: true });
                    }
                    let value = u64::from(s.state_value(state));
                    let moves = s.optimal_requests(state).map_err(internal)?.into_iter().map(Move::Request).collect();
                    return Ok(Hint { role, moves, value: Some(value), exact: true });
                }
                let f = self.forest.as_ref().expect("large sessions are forests");
                if let Some(v) = *pending {
                    // replay a fresh constructive Supplier over the log
                    let mut sup = ConstructiveSupplier::new(f);
                    let mut replay = ListState::new(n);
                    for &(x, c) in state.log() {
                        sup.supply(g, &replay, x).map_err(internal)?;
                        replay.add(x, c).map_err(internal)?;
                    }
                    let mut c = sup.supply(g, &replay, v).map_err(internal)?;
                    if state.list(v).contains(&c) {
                        c = state.fresh_color();
                    }
                    let mut next = state.clone();
                    next.add(v, c).map_err(internal)?;
                    let id = next.canonical_ids()[&c];
                    return Ok(Hint { role, moves: vec![Move::Supply(id)], value: None, exact: false });
                }
                let v = ConstructiveRequester.request(g, state).map_err(internal)?;
                let value = (state.request_count() == 0).then(|| isc_forest(f));
                Ok(Hint { role, moves: vec![Move::Request(v)], value, exact: false })
            }
        }
    }
}

/// Sorted, deduplicated vertex set; rejects out-of-range and repeated ids.
fn check_vertex_set(v: &[usize], n: usize) -> SResult<Vec<usize>> {
    let mut s = v.to_vec();
    s.sort_unstable();
    if let Some(&x) = s.iter().find(|&&x| x >= n) {
        return Err(SessionError::BadRequest(format!("vertex {x} out of range for n = {n}")));
    }
    if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
        return Err(SessionError::BadRequest(format!("vertex {} listed twice", w[0])));
    }
    Ok(s)
}

//! Constructive Requester on forests.
//!
//! For a stem `v` with leaves `R` and non-leaf neighbor `w`: request once at
//! every vertex of `R ∪ {v}`, keep requesting at `v` while the leaves whose
//! first color matches the newest color at `v` are too many, then either free
//! that color and play the rest of the forest, or play the rest first and
//! fall back to more requests at `v` if the coloring found there clashes.
//! The fallback may settle on any color at `v` except the clashing one,
//! including colors that arrived at `v` while the rest was being played.
//! Subgames run through a request channel that can hide one color at `w` or
//! pre-answer the first request at `v`.

use std::collections::HashMap;

use super::{colorable, round_limit, Color, IscOutcome, ListState, RequesterStrategy, SupplierStrategy};
use crate::error::{Error, Result};
use crate::graph::{find_stem_live, Forest, Graph};
use crate::math::{is_triangular, u};

pub(crate) enum Stop {
    /// The real lists became colorable.
    Finished,
    /// Replay ran out of recorded answers at this request.
    Pending(usize),
    Failed(String),
}

type Ask<'a> = dyn FnMut(usize) -> std::result::Result<Color, Stop> + 'a;
type View = HashMap<usize, Vec<Color>>;

fn req(ask: &mut Ask<'_>, view: &mut View, x: usize) -> std::result::Result<Color, Stop> {
    let c = ask(x)?;
    view.entry(x).or_default().push(c);
    Ok(c)
}

fn free(ask: &mut Ask<'_>, view: &mut View, c: Color, leaves: &[usize]) -> std::result::Result<(), Stop> {
    for &x in leaves {
        if view.get(&x).map(Vec::as_slice) == Some(&[c][..]) {
            req(ask, view, x)?;
        }
    }
    Ok(())
}

/// Runs the strategy on the forest induced on `live`, returning the lists it
/// saw through `ask`; the forest is colorable from them.
pub(crate) fn play(g: &Graph, live: &[bool], ask: &mut Ask<'_>) -> std::result::Result<View, Stop> {
    let mut view = View::new();
    let Some(st) = find_stem_live(g, live) else {
        for x in (0..g.n()).filter(|&x| live[x]) {
            req(ask, &mut view, x)?;
        }
        return Ok(view);
    };
    let (v, leaves) = (st.v, st.leaves.clone());
    let r = leaves.len();
    let ur = u(r as u64) as i64;
    req(ask, &mut view, v)?;
    for &x in &leaves {
        req(ask, &mut view, x)?;
    }
    let alpha: Vec<Color> = leaves.iter().map(|x| view[x][0]).collect();
    let s_of = |c: Color| alpha.iter().filter(|&&a| a == c).count() as i64;
    let mut cs = vec![view[&v][0]];
    while s_of(cs[cs.len() - 1]) > ur - cs.len() as i64 + 1 {
        cs.push(req(ask, &mut view, v)?);
    }
    let i_star = cs.len() as i64;
    let c = cs[cs.len() - 1];
    let tight = s_of(c) == ur - i_star + 1;
    let mut rest = live.to_vec();
    for &x in &leaves {
        rest[x] = false;
    }
    let fallback = match st.attach {
        None => {
            free(ask, &mut view, c, &leaves)?;
            rest[v] = false;
            play(g, &rest, &mut |x| req(ask, &mut view, x))?;
            false
        }
        Some(w) if !tight => {
            free(ask, &mut view, c, &leaves)?;
            rest[v] = false;
            // a copy of c at w is set aside and re-requested
            play(g, &rest, &mut |x| {
                let a = req(ask, &mut view, x)?;
                if x == w && a == c {
                    req(ask, &mut view, x)
                } else {
                    Ok(a)
                }
            })?;
            false
        }
        Some(w) if !is_triangular(r as u64 + 1) => {
            rest[v] = false;
            let sub = play(g, &rest, &mut |x| req(ask, &mut view, x))?;
            let phi = color_view(g, &rest, &sub, w, &|col| col != c)?;
            phi[w] == Some(c)
        }
        Some(_) => {
            // v stays; its first request in the subgame is answered by c
            let mut credited = false;
            let sub = play(g, &rest, &mut |x| {
                if x == v && !credited {
                    credited = true;
                    Ok(c)
                } else {
                    req(ask, &mut view, x)
                }
            })?;
            let phi = color_view(g, &rest, &sub, v, &|col| col == c)?;
            phi[v] != Some(c)
        }
    };
    if !fallback {
        if st.attach.is_some() && tight {
            free(ask, &mut view, c, &leaves)?;
        }
        return Ok(view);
    }
    // Any color at v other than c works once freed; colors that reached v
    // inside the subgame are already paid for there.
    let mut extra = 0i64;
    loop {
        let budget = ur + 1 - i_star - extra;
        let pick = view[&v].iter().copied().find(|&d| d != c && s_of(d) <= budget);
        if let Some(d) = pick {
            free(ask, &mut view, d, &leaves)?;
            return Ok(view);
        }
        if budget < 0 {
            return Err(Stop::Failed(format!("too many requests at stem {v}")));
        }
        req(ask, &mut view, v)?;
        extra += 1;
    }
}

fn color_view(
    g: &Graph,
    live: &[bool],
    view: &View,
    x: usize,
    keep: &dyn Fn(Color) -> bool,
) -> std::result::Result<Vec<Option<Color>>, Stop> {
    let empty: &[Color] = &[];
    super::forest_coloring(g, live, &|y| view.get(&y).map_or(empty, Vec::as_slice), Some((x, keep)))
        .ok_or_else(|| Stop::Failed("subgame lists are not colorable".into()))
}

/// Plays the constructive Requester against `supplier` on `f`.
pub fn requester_play(f: &Forest, supplier: &mut dyn SupplierStrategy) -> Result<IscOutcome> {
    let g = f.graph();
    let mut state = ListState::new(g.n());
    if colorable(g, state.lists()).is_none() {
        let live = vec![true; g.n()];
        let limit = round_limit(g);
        let res = play(g, &live, &mut |x| {
            if state.request_count() >= limit {
                return Err(Stop::Failed("round limit exceeded".into()));
            }
            let c = supplier.supply(g, &state, x).map_err(|e| Stop::Failed(e.to_string()))?;
            state.add(x, c).map_err(|e| Stop::Failed(e.to_string()))?;
            if colorable(g, state.lists()).is_some() {
                return Err(Stop::Finished);
            }
            Ok(c)
        });
        match res {
            Err(Stop::Finished) | Ok(_) => {}
            Err(Stop::Failed(s)) => return Err(Error::IllegalMove(s)),
            Err(Stop::Pending(_)) => unreachable!("direct play never pends"),
        }
    }
    IscOutcome::finish(g, state)
}

/// The constructive Requester as a turn-by-turn strategy: each call replays
/// the recorded answers and returns the next request.
#[derive(Debug, Clone, Default)]
pub struct ConstructiveRequester;

impl RequesterStrategy for ConstructiveRequester {
    fn name(&self) -> &str {
        "constructive"
    }

    fn request(&mut self, g: &Graph, state: &ListState) -> Result<usize> {
        let log = state.log();
        let mut k = 0;
        let live = vec![true; g.n()];
        let res = play(g, &live, &mut |x| match log.get(k) {
            Some(&(y, c)) if y == x => {
                k += 1;
                Ok(c)
            }
            Some(&(y, _)) => Err(Stop::Failed(format!("recorded request at {y}, strategy asks at {x}"))),
            None => Err(Stop::Pending(x)),
        });
        match res {
            Err(Stop::Pending(x)) => Ok(x),
            Ok(_) | Err(Stop::Finished) => Err(Error::GameOver),
            Err(Stop::Failed(s)) => Err(Error::IllegalMove(s)),
        }
    }
}

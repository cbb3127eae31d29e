//! Constructive Supplier on forests.
//!
//! The forest is peeled into a chain of layers, one per stem step, ending in
//! an edgeless remainder that always receives fresh colors.
//!
//! - A split step (star `R ∪ {v}` cut off) plans colors `c_1..c_{u_r}` for
//!   `v`; leaves get first colors so that `c_i` covers `u_r + 1 - i` of them,
//!   with the surplus on `c_1`.
//! - A triangular step (only `R` cut off) wraps the strategy for the rest.
//!   Its first color at `v` is whatever the inner strategy would answer to a
//!   request at `v` made up front. The second request at `v` is passed
//!   inward, but the answer given is the planned `c_2`. Later requests at `v`
//!   get the remaining planned colors, then fresh ones. Leaves get first
//!   color `c_1` on `u_r` of them and `c_i` on `u_r - i + 2` for
//!   `2 <= i <= u_r + 1`.
//!
//! Every later request at a leaf gets a fresh color.

use std::collections::HashSet;

use super::{Color, IscOutcome, ListState, RequesterStrategy, SupplierStrategy};
use crate::error::{Error, Result};
use crate::graph::{Forest, Graph};
use crate::math::{triangular, u};
use crate::peel::s_forest_trace;

#[derive(Debug, Clone)]
struct Layer {
    v: usize,
    leaves: HashSet<usize>,
    triangular: bool,
    planned: Vec<Color>,
    /// Leaves still to receive each planned color as their first color.
    quota: Vec<usize>,
    v_requests: usize,
    seen: HashSet<usize>,
}

#[derive(Debug, Clone)]
pub struct ConstructiveSupplier {
    n: usize,
    layers: Vec<Layer>,
    next: Color,
}

enum Action {
    Give(Color),
    /// Answer with the color but also tell the inner layers about a request at `v`.
    ForwardThenGive(usize, Color),
    Fresh,
    Pass,
}

impl ConstructiveSupplier {
    pub fn new(f: &Forest) -> Self {
        let trace = s_forest_trace(f);
        let mut s = ConstructiveSupplier { n: f.n(), layers: Vec::new(), next: 0 };
        for st in &trace.steps {
            let r = st.r();
            let ur = u(r as u64) as usize;
            let (planned_len, quota) = if st.triangular_case {
                let mut q = vec![ur];
                q.extend((2..=ur + 1).map(|i| ur + 2 - i));
                (ur + 1, q)
            } else {
                let surplus = r - triangular(ur as u64).expect("small") as usize;
                let mut q: Vec<usize> = (1..=ur).map(|i| ur + 1 - i).collect();
                q[0] += surplus;
                (ur, q)
            };
            debug_assert_eq!(quota.iter().sum::<usize>(), r);
            // triangular layers take c_1 from the inner strategy below
            let own = if st.triangular_case { planned_len - 1 } else { planned_len };
            let mut planned: Vec<Color> = (0..own).map(|_| s.mint()).collect();
            if st.triangular_case {
                planned.insert(0, Color::MAX);
            }
            s.layers.push(Layer {
                v: st.stem,
                leaves: st.leaves.iter().copied().collect(),
                triangular: st.triangular_case,
                planned,
                quota,
                v_requests: 0,
                seen: HashSet::new(),
            });
        }
        for k in (0..s.layers.len()).rev() {
            if s.layers[k].triangular {
                let v = s.layers[k].v;
                let c1 = s.supply_from(k + 1, v);
                s.layers[k].planned[0] = c1;
            }
        }
        s
    }

    fn mint(&mut self) -> Color {
        self.next += 1;
        self.next - 1
    }

    fn supply_from(&mut self, start: usize, x: usize) -> Color {
        for k in start..self.layers.len() {
            let action = {
                let l = &mut self.layers[k];
                if l.leaves.contains(&x) {
                    if l.seen.insert(x) {
                        match l.quota.iter().position(|&q| q > 0) {
                            Some(i) => {
                                l.quota[i] -= 1;
                                Action::Give(l.planned[i])
                            }
                            None => Action::Fresh,
                        }
                    } else {
                        Action::Fresh
                    }
                } else if x == l.v {
                    l.v_requests += 1;
                    let i = l.v_requests - 1;
                    match (l.triangular, l.planned.get(i)) {
                        (true, Some(&c)) if i == 1 => Action::ForwardThenGive(x, c),
                        (_, Some(&c)) => Action::Give(c),
                        (_, None) => Action::Fresh,
                    }
                } else {
                    Action::Pass
                }
            };
            match action {
                Action::Give(c) => return c,
                Action::ForwardThenGive(v, c) => {
                    self.supply_from(k + 1, v);
                    return c;
                }
                Action::Fresh => return self.mint(),
                Action::Pass => {}
            }
        }
        self.mint()
    }
}

impl SupplierStrategy for ConstructiveSupplier {
    fn name(&self) -> &str {
        "constructive"
    }
    fn supply(&mut self, _g: &Graph, state: &ListState, x: usize) -> Result<Color> {
        if x >= self.n {
            return Err(Error::IllegalMove(format!("request at missing vertex {x}")));
        }
        let c = self.supply_from(0, x);
        debug_assert!(!state.list(x).contains(&c), "color {c} repeated at {x}");
        Ok(c)
    }
}

/// Plays the constructive Supplier against `requester` on `f`.
pub fn supplier_play(f: &Forest, requester: &mut dyn RequesterStrategy) -> Result<IscOutcome> {
    super::run_isc(f.graph(), requester, &mut ConstructiveSupplier::new(f))
}

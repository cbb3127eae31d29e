//! Subcommand bodies. Each returns its report text; `main` prints it.

use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;
use slowcolor::exact::Solver;
use slowcolor::extremal::census;
use slowcolor::generate::{bfs_relabel, random_forest};
use slowcolor::graph::families::{path, star};
use slowcolor::isc::exact::IscSolver;
use slowcolor::isc::{isc_forest, ListState};
use slowcolor::{mask_vertices, parse_graph, s_forest, s_forest_trace, u, validate_forest, Error, Graph};

/// Largest growth factor allowed when `n` doubles.
pub const GROWTH_BOUND: f64 = 2.5;
const BENCH_MIN_N: usize = 100_000;
const BENCH_REPS: usize = 7;

fn read_graph(file: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", file.display()))
}

pub fn compute(file: &Path, trace: bool, as_json: bool) -> Result<String> {
    let g = read_graph(file)?;
    let f = match validate_forest(g) {
        Ok(f) => f,
        Err(e @ Error::CycleDetected { .. }) => {
            bail!("{e}\nthe formula needs a forest; use `slowcolor exact {}` for small general graphs", file.display())
        }
        Err(e) => return Err(e.into()),
    };
    let s = s_forest(&f);
    let isc = isc_forest(&f);
    if as_json {
        let mut v = json!({ "n": f.n(), "m": f.graph().edge_count(), "s": s, "isc": isc });
        if trace {
            v["trace"] = serde_json::to_value(s_forest_trace(&f))?;
        }
        return Ok(serde_json::to_string_pretty(&v)? + "\n");
    }
    let mut out = String::new();
    if trace {
        out += &s_forest_trace(&f).to_text();
    }
    out += &format!("s={s}\nisc={isc}\n");
    Ok(out)
}

pub fn exact(file: &Path, cap: usize, isc: bool, moves: bool) -> Result<String> {
    let g = read_graph(file)?;
    let mut out = String::new();
    if isc {
        let mut s = IscSolver::new(&g, cap)?;
        out += &format!("isc={}\n", s.value(&[]));
        if moves {
            let start = ListState::new(g.n());
            let reqs = if g.n() == 0 { Vec::new() } else { s.optimal_requests(&start)? };
            out += &format!("optimal first requests: {reqs:?}\n");
        }
    } else {
        let mut s = Solver::new(&g, cap)?;
        let full = s.full();
        out += &format!("s={}\n", s.value(full));
        if moves && g.n() > 0 {
            let lm = s.optimal_lister_moves(full, false)?;
            out += "optimal connected first moves:\n";
            for m in lm.connected {
                out += &format!("  {:?}\n", mask_vertices(m));
            }
        }
    }
    Ok(out)
}

/// Census report text, the JSON rows, and whether every check held.
pub fn run_census(n: usize, out: Option<&Path>) -> Result<(String, bool)> {
    let r = census(n)?;
    if let Some(p) = out {
        let v = json!({ "n": r.n, "trees": r.trees, "violations": r.violations, "rows": r.rows });
        std::fs::write(p, serde_json::to_string_pretty(&v)? + "\n").with_context(|| format!("writing {}", p.display()))?;
    }
    let mut text = r.summary() + "\n";
    for v in &r.violations {
        text += &format!("violation: {v}\n");
    }
    Ok((text, r.ok()))
}

/// Best time per forest over `reps` rounds; each round times every forest
/// once, so a burst of machine noise cannot land on a single size.
fn best_times(reps: usize, forests: &[slowcolor::Forest]) -> Vec<f64> {
    let mut best = vec![f64::INFINITY; forests.len()];
    for _ in 0..reps {
        for (b, f) in best.iter_mut().zip(forests) {
            let t = Instant::now();
            std::hint::black_box(s_forest(std::hint::black_box(f)));
            *b = b.min(t.elapsed().as_secs_f64());
        }
    }
    best
}

/// Timing table over doubling `n`; false when growth exceeds the bound or a
/// formula check fails.
pub fn bench(max_n: usize, seed: u64) -> Result<(String, bool)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut sizes = Vec::new();
    let mut n = BENCH_MIN_N.min(max_n);
    while n <= max_n {
        sizes.push(n);
        n *= 2;
    }
    let raw: Vec<_> = sizes.iter().map(|&n| random_forest(n, 0.9, &mut rng)).collect();
    // Growth is measured on BFS-labeled forests; random labels are timed too
    // but only reported, since their cost is dominated by cache misses.
    let bfs: Vec<_> = raw.iter().map(bfs_relabel).collect();
    let times = best_times(BENCH_REPS, &bfs);
    let raw_times = best_times(BENCH_REPS, &raw);
    let mut out = format!("{:>10} {:>12} {:>10} {:>8} {:>14}\n", "n", "time", "ns/vertex", "growth", "random labels");
    let mut ok = true;
    for (i, &n) in sizes.iter().enumerate() {
        let t = times[i];
        let growth = i.checked_sub(1).map(|j| t / times[j]);
        if growth.is_some_and(|g| g > GROWTH_BOUND) {
            ok = false;
        }
        out += &format!(
            "{n:>10} {:>10.2}ms {:>10.1} {:>8} {:>12.2}ms\n",
            t * 1e3,
            t * 1e9 / n as f64,
            growth.map_or("-".into(), |g| format!("{g:.2}x")),
            raw_times[i] * 1e3
        );
    }
    let p = s_forest(&path(max_n));
    let s = s_forest(&star(max_n));
    let (pw, sw) = (3 * max_n as u64 / 2, max_n as u64 + u(max_n as u64 - 1));
    out += &format!("path n={max_n}: s={p} (expected {pw})\nstar n={max_n}: s={s} (expected {sw})\n");
    ok &= p == pw && s == sw;
    out += &format!("growth bound {GROWTH_BOUND}x per doubling: {}\n", if ok { "ok" } else { "VIOLATED" });
    Ok((out, ok))
}

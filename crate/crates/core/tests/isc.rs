use std::collections::HashMap;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use slowcolor::enumerate::enumerate_trees;
use slowcolor::graph::families::*;
use slowcolor::isc::exact::{ExactIscPlayer, DEFAULT_ISC_CAP};
use slowcolor::isc::*;
use slowcolor::{generate, Forest, Graph};

fn forests(n: usize) -> Vec<Forest> {
    slowcolor::enumerate::enumerate_forests(n).unwrap()
}

#[test]
fn forest_classes_counted() {
    // OEIS A005195
    let counts: Vec<usize> = (1..=6).map(|n| forests(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 6, 10, 20]);
}

#[test]
fn exact_matches_formula_on_small_forests() {
    for n in 0..=6 {
        for f in forests(n) {
            assert_eq!(isc_exact(f.graph(), DEFAULT_ISC_CAP).unwrap() as u64, isc_forest(&f), "{f:?}");
        }
    }
}

/// Reference solver with no symmetry reduction: Supplier may give any of
/// `2n` concrete colors and Requester may ask anywhere.
fn isc_unreduced(g: &Graph) -> u32 {
    let k = 2 * g.n() as u32;
    fn go(g: &Graph, k: u32, lists: &mut Vec<Vec<u32>>, memo: &mut HashMap<Vec<Vec<u32>>, u32>) -> u32 {
        if is_l_colorable(g, lists).is_some() {
            return 0;
        }
        let mut key = lists.clone();
        for l in key.iter_mut() {
            l.sort_unstable();
        }
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut best = u32::MAX;
        for v in 0..g.n() {
            if lists[v].len() as u32 >= k {
                continue;
            }
            let mut worst = 0;
            for c in 0..k {
                if lists[v].contains(&c) {
                    continue;
                }
                lists[v].push(c);
                worst = worst.max(go(g, k, lists, memo));
                lists[v].pop();
            }
            best = best.min(worst + 1);
        }
        memo.insert(key, best);
        best
    }
    go(g, k, &mut vec![Vec::new(); g.n()], &mut HashMap::new())
}

#[test]
fn reduction_agrees_with_unreduced_search() {
    let mut graphs: Vec<Graph> = Vec::new();
    for n in 1..=3 {
        graphs.extend(forests(n).into_iter().map(Forest::into_graph));
    }
    graphs.push(cycle(3));
    for g in graphs {
        assert_eq!(isc_exact(&g, DEFAULT_ISC_CAP).unwrap(), isc_unreduced(&g), "{g:?}");
    }
}

#[test]
fn even_cycle_separates_the_games() {
    assert_eq!(isc_exact(&cycle(4), DEFAULT_ISC_CAP).unwrap(), 7);
    assert_eq!(slowcolor::exact::s_exact(&cycle(4), 12).unwrap(), 6);
}

#[test]
fn requester_bounded_against_exact_supplier() {
    for n in 1..=6 {
        for t in enumerate_trees(n).unwrap() {
            let out = requester_play(&t, &mut ExactIscPlayer::new(DEFAULT_ISC_CAP)).unwrap();
            assert_eq!(out.rounds as u64, isc_forest(&t), "{t:?}\n{}", out.to_text());
        }
    }
}

#[test]
fn supplier_forces_value_against_exact_requester() {
    for n in 1..=6 {
        for t in enumerate_trees(n).unwrap() {
            let out = supplier_play(&t, &mut ExactIscPlayer::new(DEFAULT_ISC_CAP)).unwrap();
            assert_eq!(out.rounds as u64, isc_forest(&t), "{t:?}\n{}", out.to_text());
        }
    }
}

#[test]
fn constructive_sides_meet() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..150 {
        let n = rng.gen_range(1..=30);
        let f = generate::random_forest(n, 0.85, &mut rng);
        let out = requester_play(&f, &mut ConstructiveSupplier::new(&f)).unwrap();
        assert_eq!(out.rounds as u64, isc_forest(&f), "{f:?}\n{}", out.to_text());
        let replayed = supplier_play(&f, &mut ConstructiveRequester).unwrap();
        assert_eq!(replayed.state, out.state);
    }
}

#[test]
fn star_center_request_budget() {
    for r in 1..=20usize {
        let f = star(r + 1);
        let ur = slowcolor::u(r as u64) as usize;
        for mut sup in [
            Box::new(FreshSupplier) as Box<dyn SupplierStrategy>,
            Box::new(ConstructiveSupplier::new(&f)),
            Box::new(RandomSupplier::new(r as u64)),
        ] {
            let out = requester_play(&f, sup.as_mut()).unwrap();
            assert!(out.requests_at(0) <= 1 + ur);
            assert!(out.rounds as u64 <= isc_forest(&f));
        }
    }
}

#[test]
fn documented_examples() {
    let k15 = star(6);
    assert_eq!(requester_play(&k15, &mut ExactIscPlayer::new(6)).unwrap().rounds, 8);
    assert!(requester_play(&k15, &mut FreshSupplier).unwrap().rounds <= 8);
    let p4 = path(4);
    assert_eq!(requester_play(&p4, &mut ExactIscPlayer::new(6)).unwrap().rounds, 6);
    let k12 = star(3);
    assert_eq!(supplier_play(&k12, &mut ExactIscPlayer::new(6)).unwrap().rounds, 4);
    let k2 = path(2);
    assert!(supplier_play(&k2, &mut RepeatRequester).unwrap().rounds >= 3);
}

#[test]
fn witness_coloring_is_proper() {
    let mut rng = StdRng::seed_from_u64(4);
    let f = generate::random_forest(25, 0.9, &mut rng);
    let out = requester_play(&f, &mut RandomSupplier::new(3)).unwrap();
    for (a, b) in f.edges() {
        assert_ne!(out.coloring[a], out.coloring[b]);
    }
    for x in 0..f.n() {
        assert!(out.state.list(x).contains(&out.coloring[x]));
    }
}

#[test]
fn illegal_supplier_rejected() {
    struct Stubborn;
    impl SupplierStrategy for Stubborn {
        fn name(&self) -> &str {
            "stubborn"
        }
        fn supply(&mut self, _: &Graph, _: &ListState, _: usize) -> slowcolor::Result<Color> {
            Ok(0)
        }
    }
    let k13 = star(4);
    assert!(matches!(requester_play(&k13, &mut Stubborn), Err(slowcolor::Error::IllegalMove(_))));
}

#[test]
fn cut_sandwich_on_random_graphs() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..100 {
        let n = rng.gen_range(2..=5);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let a: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let b: Vec<usize> = (0..n).filter(|x| !a.contains(x)).collect();
        let cut = slowcolor::cut_edges(&g, &a);
        let whole = isc_exact(&g, 6).unwrap();
        let sa = isc_exact(&g.induced(&a), 6).unwrap();
        let sb = isc_exact(&g.induced(&b), 6).unwrap();
        assert!(sa + sb <= whole && whole <= sa + sb + cut.crossing.len() as u32);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_encoding_invariant_under_renaming(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..8);
        let mut a = ListState::new(n);
        for _ in 0..rng.gen_range(0..15) {
            let x = rng.gen_range(0..n);
            let c = rng.gen_range(0..6);
            let _ = a.add(x, c);
        }
        let perm: Vec<u32> = {
            let mut p: Vec<u32> = (100..106).collect();
            rand::seq::SliceRandom::shuffle(&mut p[..], &mut rng);
            p
        };
        let mut b = ListState::new(n);
        for &(x, c) in a.log() {
            b.add(x, perm[c as usize]).unwrap();
        }
        prop_assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn forest_dp_agrees_with_backtracking(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = generate::random_forest(rng.gen_range(1..9), 0.8, &mut rng);
        let lists: Vec<Vec<u32>> = (0..f.n()).map(|_| (0..3).filter(|_| rng.gen_bool(0.5)).collect()).collect();
        let live = vec![true; f.n()];
        let dp = forest_coloring(f.graph(), &live, &|x| lists[x].as_slice(), None);
        prop_assert_eq!(dp.is_some(), is_l_colorable(f.graph(), &lists).is_some());
    }

    #[test]
    fn requester_never_exceeds_value(seed in any::<u64>(), n in 1usize..40) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = generate::random_forest(n, 0.85, &mut rng);
        let out = requester_play(&f, &mut RandomSupplier::new(seed)).unwrap();
        prop_assert!(out.rounds as u64 <= isc_forest(&f));
        let out = requester_play(&f, &mut FreshSupplier).unwrap();
        prop_assert!(out.rounds as u64 <= isc_forest(&f));
    }

    #[test]
    fn supplier_never_below_value(seed in any::<u64>(), n in 1usize..40) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = generate::random_forest(n, 0.85, &mut rng);
        let out = supplier_play(&f, &mut RandomRequester::new(seed)).unwrap();
        prop_assert!(out.rounds as u64 >= isc_forest(&f));
    }
}

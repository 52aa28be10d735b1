mod common;

use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use surfcut::balance::{rat, rat_int, Rational};
use surfcut::solver::{cut_sigma, evaluate_chain};
use surfcut::{
    brute_force_cut, cut_chain, generate, parse_embedding, solve_detailed, BalanceFunction,
    EmbeddedGraph, IntegerChain, SurfaceInstance,
};

fn embedding(n: usize, extra: usize, genus: usize, seed: u64) -> EmbeddedGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let m = n - 1 + 2 * genus + extra;
    generate::random_embedding(n, m, genus, &mut rng)
}

fn arb_embedding(max_n: usize, max_genus: usize) -> impl Strategy<Value = EmbeddedGraph> {
    (2..=max_n, 0..=3usize, 0..=max_genus, any::<u64>())
        .prop_map(|(n, extra, genus, seed)| embedding(n, extra, genus, seed))
}

/// Random concave increasing breakpoints on `[0, 1/2]`.
fn arb_balance() -> impl Strategy<Value = BalanceFunction> {
    (
        prop::collection::btree_set(1..12i64, 1..4),
        prop::collection::vec(0..8i64, 4),
        0..3i64,
    )
        .prop_map(|(xs, mut slopes, y0)| {
            slopes.sort_unstable_by(|a, b| b.cmp(a));
            let mut points = vec![(rat(0, 1), rat_int(y0))];
            let mut prev = rat(0, 1);
            let mut y = rat_int(y0);
            for (x, slope) in xs
                .into_iter()
                .map(|x| rat(x, 24))
                .chain([rat(1, 2)])
                .zip(slopes)
            {
                y += (&x - &prev) * rat_int(slope);
                points.push((x.clone(), y.clone()));
                prev = x;
            }
            BalanceFunction::custom(points).unwrap()
        })
}

fn side_strategy(n: usize) -> impl Strategy<Value = BTreeSet<usize>> {
    prop::collection::btree_set(0..n, 1..n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip_and_mirror_genus(g in arb_embedding(8, 2)) {
        let back = parse_embedding(&g.to_text()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(g.mirror().genus().unwrap(), g.genus().unwrap());
        let faces = g.trace_faces();
        let total: usize = faces.facial_walks.iter().map(Vec::len).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn cut_chains_add_over_disjoint_unions(
        (g, a, b) in arb_embedding(8, 2).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), prop::collection::vec(0..3u8, n), Just(()))
        }).prop_map(|(g, labels, ())| {
            let a: BTreeSet<usize> = (0..labels.len()).filter(|&v| labels[v] == 1).collect();
            let b: BTreeSet<usize> = (0..labels.len()).filter(|&v| labels[v] == 2).collect();
            (g, a, b)
        })
    ) {
        // the empty and the full side have no proper cut; their chain is zero
        let chain = |s: &BTreeSet<usize>| {
            if s.is_empty() || s.len() == g.vertex_count() {
                IntegerChain::zero(g.edge_count())
            } else {
                cut_chain(&g, s).unwrap()
            }
        };
        let union: BTreeSet<usize> = a.union(&b).copied().collect();
        let lhs = chain(&union);
        let rhs = &chain(&a) + &chain(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn duality_and_dual_invariants(g in arb_embedding(8, 2)) {
        let inst = SurfaceInstance::new(g.clone(), 0).unwrap();
        let dual = &inst.dual;
        for d in 0..g.dart_count() {
            prop_assert_eq!(dual.d_map(EmbeddedGraph::twin(d)), EmbeddedGraph::twin(dual.d_map(d)));
            prop_assert!(inst.weight.what(dual, &IntegerChain::from_darts(g.edge_count(), [d])).unsigned_abs() as usize <= g.vertex_count());
        }
        for v in 0..g.vertex_count() {
            let sigma = dual.dual_chain(&cut_chain(&g, &BTreeSet::from([v])).unwrap());
            let into_v = EmbeddedGraph::twin(g.darts_at(v)[0]);
            let face = dual.faces.face_of[dual.d_map(into_v)];
            prop_assert_eq!(sigma, -dual.facial_chain(face));
        }
    }

    #[test]
    fn cut_images_are_boundaries_with_expected_weight(
        (g, side) in arb_embedding(8, 2).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), side_strategy(n))
        })
    ) {
        let inst = SurfaceInstance::new(g.clone(), 0).unwrap();
        let n = g.vertex_count() as i64;
        let in_s: Vec<bool> = (0..g.vertex_count()).map(|v| side.contains(&v)).collect();
        let sigma = cut_sigma(&inst, &in_s);
        prop_assert!(inst.theta(&sigma).iter().all(|&x| x == 0));
        let s = side.len() as i64;
        let expected = if in_s[0] { n - s } else { -s };
        prop_assert_eq!(inst.what(&sigma), expected);
    }

    #[test]
    fn single_vertex_cuts_are_covered(g in arb_embedding(7, 1)) {
        let inst = SurfaceInstance::new(g.clone(), 0).unwrap();
        let table = inst.walk_table().unwrap();
        let zero = vec![0; inst.loops.dimension()];
        for v in 0..g.vertex_count() {
            let in_s: Vec<bool> = (0..g.vertex_count()).map(|u| u == v).collect();
            let k = inst.what(&cut_sigma(&inst, &in_s));
            let stored = table.get(k, &zero);
            prop_assert!(stored.is_some_and(|w| w.length() <= g.degree(v)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_matches_oracle_for_random_concave_f(g in arb_embedding(7, 1), f in arb_balance()) {
        let (report, inst, _) = solve_detailed(&g, &f, 0).unwrap();
        let oracle = brute_force_cut(&g, &f).unwrap();
        prop_assert_eq!(&report.cut.value, &oracle.best.value);
        prop_assert!(report.cut.value <= evaluate_chain(&inst, &report.combination.sigma, &f));
        prop_assert!(report.cut.value <= report.combination.value);
        if let Some(witness) = &oracle.minimal_witness {
            prop_assert_eq!(&witness.value, &oracle.best.value);
        }
    }

    #[test]
    fn root_choice_does_not_change_the_value(g in arb_embedding(7, 1), root in 0..7usize) {
        let f = BalanceFunction::quotient();
        let root = root % g.vertex_count();
        let a = solve_detailed(&g, &f, 0).unwrap().0.cut;
        let b = solve_detailed(&g, &f, root).unwrap().0.cut;
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn averaging(
        triples in prop::collection::vec((0..20i64, 0..20i64, 1..20i64), 1..6)
    ) {
        let a_sum: i64 = triples.iter().map(|t| t.0).sum();
        prop_assume!(a_sum > 0);
        let num: Rational = triples.iter().map(|&(a, p, _)| rat_int(a * p)).sum();
        let den: Rational = triples.iter().map(|&(a, _, q)| rat_int(a * q)).sum();
        let min = triples.iter().map(|&(_, p, q)| rat(p, q)).min().unwrap();
        prop_assert!(min <= num / den);
    }

    #[test]
    fn custom_functions_are_subadditive(
        f in arb_balance(),
        xs in prop::collection::vec(-24..=24i64, 1..6)
    ) {
        let xs: Vec<Rational> = xs.into_iter().map(|x| rat(x, 24)).collect();
        let sum: Rational = xs.iter().sum();
        prop_assume!(sum.abs() <= rat(1, 1));
        let rhs: Rational = xs.iter().map(|x| f.eval(&x.abs())).sum();
        prop_assert!(f.eval(&sum.abs()) <= rhs);
    }
}

#[test]
fn custom_breakpoint_file_matches_helper() {
    let parsed = BalanceFunction::parse_custom(common::CUSTOM_F).unwrap();
    assert_eq!(parsed, common::custom_f());
}

#[test]
fn corpus_parses_deterministically() {
    for entry in common::load_corpus() {
        let text = std::fs::read_to_string(&entry.path).unwrap();
        let again = parse_embedding(&text).unwrap();
        assert_eq!(again, entry.graph, "{}", entry.name);
        assert_eq!(
            again.trace_faces(),
            entry.graph.trace_faces(),
            "{}",
            entry.name
        );
        assert_eq!(
            entry.graph.mirror().genus().unwrap(),
            entry.declared_genus,
            "{}",
            entry.name
        );
    }
}

#[test]
fn oracle_values_are_complement_symmetric_on_corpus() {
    let f = BalanceFunction::density();
    for entry in common::load_corpus()
        .into_iter()
        .filter(|e| e.graph.vertex_count() <= 6)
    {
        let n = entry.graph.vertex_count();
        let report = brute_force_cut(&entry.graph, &f).unwrap();
        for (side, value) in &report.all_values {
            let comp: BTreeSet<usize> = (0..n).filter(|v| !side.contains(v)).collect();
            let c = surfcut::CutResult::from_side(&entry.graph, &comp, &f).unwrap();
            assert_eq!(&c.value, value, "{}", entry.name);
        }
    }
}

use std::collections::BTreeSet;

use cutsparse::connectivity::{KappaAssignment, KappaSource};
use cutsparse::corpus::counting_corpus;
use cutsparse::generators::random_connected;
use cutsparse::sampling::{sparsify, SamplingConfig};
use cutsparse::verify::{
    bad_event_flags, bad_event_flags_with_q, chernoff_bounds, claim_bad_event_bound, concentrate_holds,
    connectivity_classes, count_cut_induced_sets, cut_class_error_decomposition,
    cut_induced_sets, enumerate_cuts, g_fn, g_inv, h_fn, max_cut_error_exact,
    max_cut_error_sampled, q_value, sampled_cut_family, tree_lb_probability, BlackEdgeSet,
    CutInducedSet,
};
use cutsparse::{cut_weight, generate, GraphFamily, Multigraph, Sparsifier};
use proptest::prelude::*;

fn fam(f: GraphFamily) -> Multigraph {
    generate(&f, 0).unwrap()
}

#[test]
fn enumeration_examples() {
    let mut w: Vec<f64> = enumerate_cuts(&fam(GraphFamily::Path { n: 3 }))
        .unwrap()
        .map(|(_, w)| w)
        .collect();
    w.sort_by(f64::total_cmp);
    assert_eq!(w, vec![1.0, 1.0, 2.0]);

    let mut w: Vec<f64> = enumerate_cuts(&fam(GraphFamily::Complete { n: 4 }))
        .unwrap()
        .map(|(_, w)| w)
        .collect();
    w.sort_by(f64::total_cmp);
    assert_eq!(w, vec![3.0, 3.0, 3.0, 3.0, 4.0, 4.0, 4.0]);

    for n in 2..12 {
        let g = fam(GraphFamily::Cycle { n: n.max(3) });
        let n = g.vertex_count();
        assert_eq!(enumerate_cuts(&g).unwrap().count(), (1 << (n - 1)) - 1);
    }
    assert!(enumerate_cuts(&fam(GraphFamily::Path { n: 30 })).is_err());
}

#[test]
fn error_report_examples() {
    let g = random_connected(9, 0.4, 3, 2).unwrap();
    let sp = Sparsifier::from_multigraph(&g);
    assert_eq!(max_cut_error_exact(&g, &sp).unwrap().max_relative_error, 0.0);
    let r = max_cut_error_exact(&g, &sp.scaled(1.3)).unwrap();
    assert!((r.max_relative_error - 0.3).abs() < 1e-12);
    assert!(!r.sampled);
    let other = Sparsifier::from_multigraph(&fam(GraphFamily::Path { n: 4 }));
    assert!(max_cut_error_exact(&g, &other).is_err());
}

#[test]
fn sampled_report_is_the_max_over_its_family() {
    let g = random_connected(14, 0.3, 2, 8).unwrap();
    let kappa = KappaAssignment::compute(&g, KappaSource::ExactConnectivity).unwrap();
    let sp = sparsify(&g, &kappa, &SamplingConfig::new(0.5).with_seed(4)).unwrap();
    let sampled = max_cut_error_sampled(&g, &sp, 17).unwrap();
    assert!(sampled.sampled);
    let direct = sampled_cut_family(&g, 17)
        .unwrap()
        .iter()
        .map(|c| {
            let u = cut_weight(&g, c).unwrap();
            (u - cut_weight(&sp, c).unwrap()).abs() / u
        })
        .fold(0.0, f64::max);
    assert!((sampled.max_relative_error - direct).abs() < 1e-12);
    let exact = max_cut_error_exact(&g, &sp).unwrap();
    assert!(exact.max_relative_error >= sampled.max_relative_error - 1e-12);
}

#[test]
fn class_examples() {
    let c5 = connectivity_classes(&fam(GraphFamily::Cycle { n: 5 })).unwrap();
    assert_eq!(c5.classes.len(), 1);
    assert_eq!(c5.classes[&1].len(), 5);

    let f8 = fam(GraphFamily::Figure1 { n: 8 });
    let classes = connectivity_classes(&f8).unwrap();
    let st = f8.edges().iter().find(|e| (e.a, e.b) == (0, 1)).unwrap().id;
    assert_eq!(classes.class_of(&f8, st), Some(2));
    assert_eq!(classes.classes[&1].len(), 12);
    let total: usize = classes.classes.values().map(BTreeSet::len).sum();
    assert_eq!(total, f8.edge_count());
}

#[test]
fn q_value_examples() {
    let f5 = fam(GraphFamily::Figure1 { n: 5 });
    let st = f5.edges().iter().find(|e| (e.a, e.b) == (0, 1)).unwrap().id;
    let b: BTreeSet<u64> = [st].into();
    assert_eq!(q_value(&f5, &b, &CutInducedSet::new([st]).unwrap()).unwrap(), 4);

    let c4 = fam(GraphFamily::Cycle { n: 4 });
    let all: BTreeSet<u64> = c4.edges().iter().map(|e| e.id).collect();
    let ids: Vec<u64> = c4.edges().iter().map(|e| e.id).collect();
    let opposite = CutInducedSet::new([ids[0], ids[2]]).unwrap();
    assert_eq!(q_value(&c4, &all, &opposite).unwrap(), 2);
    let one = CutInducedSet::new([ids[0]]).unwrap();
    assert!(q_value(&c4, &all, &one).is_err());
}

#[test]
fn q_is_at_most_any_inducing_cut_and_at_least_the_class_floor() {
    for c in counting_corpus().unwrap().iter().filter(|c| c.graph.vertex_count() <= 10) {
        let g = &c.graph;
        let classes = connectivity_classes(g).unwrap();
        for (&i, set) in &classes.classes {
            let b = BlackEdgeSet::new(g, set.iter().copied()).unwrap();
            let sets = cut_induced_sets(g, &b).unwrap();
            for (f, &q) in &sets {
                assert!(q >= 1 << i, "{}: q = {q} < 2^{i}", c.name);
                assert_eq!(q_value(g, set, f).unwrap(), q);
            }
            for (cut, w) in enumerate_cuts(g).unwrap() {
                let crossing: Vec<u64> = g
                    .edges()
                    .iter()
                    .filter(|e| set.contains(&e.id) && cut.contains(e.a) != cut.contains(e.b))
                    .map(|e| e.id)
                    .collect();
                if let Ok(f) = CutInducedSet::new(crossing) {
                    assert!(sets[&f] as f64 <= w);
                }
            }
        }
        assert!(classes.validate_fsmall(g).unwrap(), "{}", c.name);
    }
}

#[test]
fn counting_examples() {
    let c6 = fam(GraphFamily::Cycle { n: 6 });
    assert_eq!(
        count_cut_induced_sets(&c6, &BlackEdgeSet::all(&c6), 2.0, Some(2)).unwrap(),
        15
    );
    assert_eq!(
        count_cut_induced_sets(&c6, &BlackEdgeSet::default(), 2.0, None).unwrap(),
        0
    );
    let f6 = fam(GraphFamily::Figure1 { n: 6 });
    let st = f6.edges().iter().find(|e| (e.a, e.b) == (0, 1)).unwrap().id;
    let b = BlackEdgeSet::new(&f6, [st]).unwrap();
    assert_eq!(count_cut_induced_sets(&f6, &b, 5.0, Some(5)).unwrap(), 1);

    let all = BlackEdgeSet::all(&f6);
    let err = count_cut_induced_sets(&f6, &all, 5.0, Some(5)).unwrap_err().to_string();
    assert!(err.contains("black edge") && err.contains("< K = 5"), "{err}");
}

#[test]
fn bad_events_vanish_without_deviation() {
    let g = random_connected(8, 0.5, 2, 3).unwrap();
    let classes = connectivity_classes(&g).unwrap();
    let sp = Sparsifier::from_multigraph(&g);
    for (&i, set) in &classes.classes {
        let b = BlackEdgeSet::new(&g, set.iter().copied()).unwrap();
        for f in cut_induced_sets(&g, &b).unwrap().keys() {
            let flags = bad_event_flags(&g, &sp, &classes, f, i, 0.3).unwrap();
            assert!(!flags.a && !flags.b && !flags.c);
        }
    }
    let one = Multigraph::from_weighted_edges(1, []).unwrap();
    let one_classes = connectivity_classes(&one).unwrap();
    let f = CutInducedSet::new([0]).unwrap();
    assert!(bad_event_flags(&one, &Sparsifier::from_multigraph(&one), &one_classes, &f, 0, 0.3).is_err());
}

#[test]
fn inflated_set_raises_a() {
    let c6 = fam(GraphFamily::Cycle { n: 6 });
    let classes = connectivity_classes(&c6).unwrap();
    let eps = 0.2;
    let ids: Vec<u64> = c6.edges().iter().map(|e| e.id).collect();
    let weights: Vec<f64> = c6
        .edges()
        .iter()
        .map(|e| if e.id == ids[0] || e.id == ids[3] { 1.0 + 2.0 * eps } else { 1.0 })
        .collect();
    let sp = Sparsifier::from_aligned_weights(&c6, &weights);
    let f = CutInducedSet::new([ids[0], ids[3]]).unwrap();
    let flags = bad_event_flags(&c6, &sp, &classes, &f, 1, eps).unwrap();
    assert!(flags.q as f64 <= flags.size as f64 * 6f64.ln());
    assert!(flags.a);
}

#[test]
fn bad_event_frequency_stays_below_the_claim() {
    let eps = 0.4;
    let trials = 400u64;
    for c in counting_corpus().unwrap().iter().filter(|c| c.graph.vertex_count() >= 3).take(8) {
        let g = &c.graph;
        let n = g.vertex_count();
        let classes = connectivity_classes(g).unwrap();
        let kappa = KappaAssignment::compute(g, KappaSource::ExactConnectivity).unwrap();
        let cfg = SamplingConfig::new(eps);
        let d_claim = cfg.rho(n) as f64 / (n as f64).ln().powi(2);
        let sps: Vec<Sparsifier> = (0..trials)
            .map(|s| sparsify(g, &kappa, &cfg.with_seed(s)).unwrap())
            .collect();
        for (&i, set) in &classes.classes {
            let b = BlackEdgeSet::new(g, set.iter().copied()).unwrap();
            for (f, &q) in &cut_induced_sets(g, &b).unwrap() {
                assert_eq!(bad_event_flags(g, &sps[0], &classes, f, i, eps).unwrap().q, q);
                let mut hits = 0u64;
                let mut alpha = 0.0;
                for sp in &sps {
                    let flags = bad_event_flags_with_q(g, sp, f, i, q, eps).unwrap();
                    alpha = flags.alpha;
                    hits += flags.a as u64;
                }
                let bound = 10.0 * claim_bad_event_bound(n, d_claim, alpha, eps);
                let freq = hits as f64 / trials as f64;
                assert!(freq <= bound, "{} class {i}: {freq} > {bound}", c.name);
            }
        }
    }
}

#[test]
fn decomposition_examples() {
    let g = random_connected(9, 0.5, 3, 6).unwrap();
    let exact = cut_class_error_decomposition(&g, &Sparsifier::from_multigraph(&g)).unwrap();
    assert!(exact.class_deviations.iter().all(|c| c.deviation == 0.0));

    let kappa = KappaAssignment::compute(&g, KappaSource::ExactConnectivity).unwrap();
    let sp = sparsify(&g, &kappa, &SamplingConfig::new(0.5).with_seed(2)).unwrap();
    let r = cut_class_error_decomposition(&g, &sp).unwrap();
    let dev: f64 = r.class_deviations.iter().map(|c| c.deviation).sum();
    assert!((dev - (r.argmax_sampled_weight - r.argmax_true_weight)).abs() < 1e-9);
    let tw: f64 = r.class_deviations.iter().map(|c| c.true_weight).sum();
    assert_eq!(tw, r.argmax_true_weight);
}

#[test]
fn concentrate_holds_on_the_corpus() {
    for c in counting_corpus().unwrap() {
        let classes = connectivity_classes(&c.graph).unwrap();
        for d in 0..=3 {
            assert!(concentrate_holds(&c.graph, &classes, d).unwrap(), "{} d={d}", c.name);
        }
    }
}

#[test]
fn analytic_examples() {
    assert_eq!(g_fn(0.0).unwrap(), 0.0);
    assert_eq!(g_inv(0.0).unwrap(), 0.0);
    assert_eq!(h_fn(0.0).unwrap(), 0.0);
    assert!(g_fn(-1.0).is_err() && g_inv(-1.0).is_err() && h_fn(-1.0).is_err());
    assert!((g_inv(1.0).unwrap() - (std::f64::consts::E - 1.0)).abs() < 1e-9);

    let b = chernoff_bounds(10.0, 1.0, 1.0).unwrap();
    assert!((b.two_sided - 2.0 * (-3.75f64).exp()).abs() < 1e-12);
    assert!((b.two_sided - 0.04704).abs() < 1e-5);
    let tiny = chernoff_bounds(10.0, 1e-9, 1.0).unwrap();
    assert!((tiny.two_sided - 2.0).abs() < 1e-6 && tiny.upper_g > 0.999);
    assert!(chernoff_bounds(0.0, 1.0, 1.0).is_err());

    assert!((tree_lb_probability(1.0, 1.0, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert!((tree_lb_probability(2.0, 1.0, 2.0).unwrap() - 17.0 / 81.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn g_inv_inverts_g(x in 0.0f64..1000.0) {
        let y = g_inv(g_fn(x).unwrap()).unwrap();
        prop_assert!((y - x).abs() <= 1e-9 * x.max(1.0), "{} -> {}", x, y);
    }

    #[test]
    fn g_inv_below_h(lx in -6.0f64..6.0) {
        let x = 10f64.powf(lx);
        prop_assert!(g_inv(x).unwrap() <= h_fn(x).unwrap());
    }
}

use cutsparse::generators::random_connected;
use cutsparse::io::{parse_graph, parse_sparsifier, serialize_graph, serialize_sparsifier};
use cutsparse::verify::enumerate_cuts;
use cutsparse::{cut_weight, generate, GraphFamily, Multigraph, Sparsifier, VertexCut};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = Multigraph> {
    (2usize..10, 0.1f64..0.9, 1u64..5, any::<u64>()).prop_map(|(n, p, w, seed)| {
        generate(&GraphFamily::RandomGnp { n, p }, seed)
            .unwrap()
            .scaled(w)
            .unwrap()
    })
}

fn cut_of(n: usize) -> impl Strategy<Value = VertexCut> {
    (1u64..(1u64 << n) - 1).prop_map(move |mask| VertexCut::from_mask(n, mask))
}

proptest! {
    #[test]
    fn cut_weight_is_symmetric((g, s) in small_graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), cut_of(n))
    })) {
        let a = cut_weight(&g, &s).unwrap();
        let b = cut_weight(&g, &s.complement()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cut_weight_is_additive(n in 3usize..9, s1 in any::<u64>(), s2 in any::<u64>(), mask in any::<u64>()) {
        let g1 = generate(&GraphFamily::RandomGnp { n, p: 0.5 }, s1).unwrap();
        let g2 = generate(&GraphFamily::RandomGnp { n, p: 0.5 }, s2).unwrap();
        let union = Multigraph::from_weighted_edges(
            n,
            g1.edges().iter().chain(g2.edges()).map(|e| (e.a, e.b, e.weight)),
        )
        .unwrap();
        let mask = mask % ((1 << n) - 2) + 1;
        let s = VertexCut::from_mask(n, mask);
        prop_assert_eq!(
            cut_weight(&union, &s).unwrap(),
            cut_weight(&g1, &s).unwrap() + cut_weight(&g2, &s).unwrap()
        );
    }

    #[test]
    fn contracted_cuts_match_original(g in small_graph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.edge_count() > 0);
        let id = g.edges()[pick.index(g.edge_count())].id;
        let (h, map) = g.contract_edge(id).unwrap();
        prop_assume!(h.vertex_count() >= 2);
        for (cut, w) in enumerate_cuts(&h).unwrap() {
            let side: Vec<bool> = map.iter().map(|&v| cut.contains(v)).collect();
            let lifted = VertexCut::from_side(side);
            prop_assert_eq!(cut_weight(&g, &lifted).unwrap(), w);
        }
    }

    #[test]
    fn sparsifier_text_round_trips(g in small_graph(), scale in 0.01f64..10.0) {
        let sp = Sparsifier::from_multigraph(&g).scaled(scale);
        let back = parse_sparsifier(&serialize_sparsifier(&sp)).unwrap();
        prop_assert_eq!(back.edge_count(), sp.edge_count());
        for (x, y) in back.edges().iter().zip(sp.edges()) {
            prop_assert_eq!((x.a, x.b), (y.a, y.b));
            prop_assert!((x.weight - y.weight).abs() <= 1e-11 * y.weight);
        }
    }
}

#[test]
fn hundred_random_graphs_round_trip() {
    for seed in 0..100 {
        let g = random_connected(3 + seed as usize % 20, 0.3, 7, seed).unwrap();
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g, "seed {seed}");
        assert_eq!(serialize_graph(&back), text);
    }
}

#[test]
fn text_format_examples() {
    let p3 = parse_graph("3 2\n0 1 1\n1 2 1").unwrap();
    assert_eq!(p3, generate(&GraphFamily::Path { n: 3 }, 0).unwrap());
    assert_eq!(serialize_graph(&p3).trim_end(), "3 2\n0 1 1\n1 2 1");

    let merged = parse_graph("2 2\n0 1 2\n0 1 3").unwrap();
    assert_eq!(merged.edge_count(), 1);
    assert_eq!(merged.edges()[0].weight, 5);

    let err = parse_graph("2 1\n0 2 1").unwrap_err().to_string();
    assert!(err.contains("vertex index out of range") && err.contains("line 2"), "{err}");

    let sp = Sparsifier::new(2, vec![cutsparse::SparseEdge { id: 0, a: 0, b: 1, weight: 1.5 }]).unwrap();
    assert!(serialize_sparsifier(&sp).lines().any(|l| l == "0 1 1.5"));

    let commented = parse_graph("# a comment\n3 1 # trailing\n\n0 2 4\n").unwrap();
    assert_eq!(commented.edges()[0].weight, 4);
}

#[test]
fn generator_examples() {
    let f1 = generate(&GraphFamily::Figure1 { n: 6 }, 0).unwrap();
    assert_eq!(f1.vertex_count(), 6);
    assert_eq!(f1.total_weight(), 9);
    assert_eq!(cut_weight(&f1, &VertexCut::from_members(6, &[0]).unwrap()).unwrap(), 5.0);

    let f2 = generate(&GraphFamily::Figure2 { n: 5 }, 0).unwrap();
    assert_eq!(f2.total_weight(), 17);

    let lb = generate(&GraphFamily::TreeLowerBound { n: 1, k: 1 }, 0).unwrap();
    assert_eq!(lb.vertex_count(), 3);
    assert_eq!(lb.total_weight(), 3);

    let k4 = generate(&GraphFamily::Complete { n: 4 }, 0).unwrap();
    assert_eq!(cut_weight(&k4, &VertexCut::from_members(4, &[1, 3]).unwrap()).unwrap(), 4.0);

    assert!(generate(&GraphFamily::Figure1 { n: 2 }, 0).is_err());
    assert!(generate(&GraphFamily::TreeLowerBound { n: 0, k: 1 }, 0).is_err());
}

#[test]
fn contraction_examples() {
    let p3 = generate(&GraphFamily::Path { n: 3 }, 0).unwrap();
    let (h, _) = p3.contract_edge(0).unwrap();
    assert_eq!(h.vertex_count(), 2);
    assert_eq!(h.total_weight(), 1);

    let tri = generate(&GraphFamily::Cycle { n: 3 }, 0).unwrap();
    let (h, _) = tri.contract_edge(0).unwrap();
    assert_eq!(h.vertex_count(), 2);
    assert_eq!(h.edge_count(), 2);
    assert!(h.edges().iter().all(|e| e.weight == 1));

    let mut t = random_connected(9, 0.0, 1, 4).unwrap();
    while t.edge_count() > 0 {
        let id = t.edges()[0].id;
        t = t.contract_edge(id).unwrap().0;
    }
    assert_eq!(t.vertex_count(), 1);

    assert!(p3.contract_edge(99).is_err());
}

#[test]
fn empty_and_full_cuts_are_rejected() {
    let g = generate(&GraphFamily::Path { n: 3 }, 0).unwrap();
    assert!(cut_weight(&g, &VertexCut::from_mask(3, 0)).is_err());
    assert!(cut_weight(&g, &VertexCut::from_mask(3, 0b111)).is_err());
}

#[test]
fn generation_is_deterministic() {
    let f = GraphFamily::RandomGnp { n: 30, p: 0.2 };
    assert_eq!(generate(&f, 5).unwrap(), generate(&f, 5).unwrap());
    assert_ne!(generate(&f, 5).unwrap(), generate(&f, 6).unwrap());
}

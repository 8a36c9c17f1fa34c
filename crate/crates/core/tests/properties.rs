use dmlab::canon::canonical_certificate;
use dmlab::construct::check_segment_ranges;
use dmlab::labeling::{block_labels, check_block_recurrence, check_rung_blocks};
use dmlab::linalg::Matrix;
use dmlab::qw::segments;
use dmlab::spectral::nullspace_verdict;
use dmlab::*;
use num_rational::BigRational;
use proptest::prelude::*;

fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn permuted(g: Graph) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    let n = g.order();
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |p| (g.clone(), p))
}

fn odd_parts(max_parts: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(
        prop_oneof![Just(3usize), Just(5), Just(7), Just(9), Just(11)],
        1..=max_parts,
    )
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph_strategy(40)) {
        let text = write_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn certificate_is_relabeling_invariant((g, perm) in graph_strategy(12).prop_flat_map(permuted)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_certificate(&g).unwrap(), canonical_certificate(&h).unwrap());
    }

    #[test]
    fn certificate_separates_edge_counts(a in graph_strategy(8), b in graph_strategy(8)) {
        if a.order() != b.order() || a.size() != b.size() {
            prop_assert_ne!(canonical_certificate(&a).unwrap(), canonical_certificate(&b).unwrap());
        }
    }

    #[test]
    fn qw_graphs_are_connected_tetravalent(parts in proptest::collection::vec(2usize..9, 1..6)) {
        prop_assume!(parts.iter().sum::<usize>() >= 3);
        let s = SegmentProfile::new(parts.clone()).unwrap().to_sequence();
        let g = build_qw(&s);
        prop_assert_eq!(g.order(), 2 * s.len());
        prop_assert!(g.is_regular(4));
        prop_assert!(g.is_connected());
        prop_assert_eq!(s.profile().parts().to_vec(), parts.clone());
        let lens: Vec<usize> = segments(&s).iter().map(|seg| seg.len).collect();
        prop_assert_eq!(lens, parts);
    }

    #[test]
    fn constructed_labelings_verify(parts in odd_parts(6)) {
        let s = SegmentProfile::new(parts).unwrap().to_sequence();
        match construct_labeling(&s) {
            Ok(lab) => {
                prop_assert!(classify(&s).is_distance_magic());
                prop_assert!(verify(&build_qw(&s), &lab).unwrap().passed());
                let bl = block_labels(&s, &lab).unwrap();
                prop_assert!(check_block_recurrence(&s, &bl));
                prop_assert!(check_rung_blocks(&s, &bl));
                prop_assert!(check_segment_ranges(&s, &construct_tilde_labeling(&s).unwrap()));
                // negation is again distance magic
                prop_assert!(verify(&build_qw(&s), &lab.negated()).unwrap().passed());
            }
            Err(_) => prop_assert!(!classify(&s).is_distance_magic()),
        }
    }

    #[test]
    fn standard_conversion_round_trip(k in 3usize..60) {
        let lab = wreath_labeling(k).unwrap();
        let std = to_standard(&lab).unwrap();
        prop_assert!(verify_standard(&build_wreath(k).unwrap(), &std).unwrap().passed());
        prop_assert_eq!(from_standard(&std), lab);
    }

    #[test]
    fn labeling_json_round_trip(perm in Just((0..64i64).collect::<Vec<_>>()).prop_shuffle()) {
        let lab = CenteredLabeling::new(perm.iter().map(|i| 2 * i - 63).collect()).unwrap();
        let json = LabelingDocument::centered(&lab).to_json();
        let back = LabelingDocument::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
        prop_assert_eq!(back.into_centered().unwrap(), lab);
    }

    #[test]
    fn filter_verdict_survives_recombination(
        parts in proptest::collection::vec(2usize..6, 1..4),
        coeffs in proptest::collection::vec(-4i64..=4, 64),
    ) {
        prop_assume!(parts.iter().sum::<usize>() >= 3);
        let g = build_qw(&SegmentProfile::new(parts).unwrap().to_sequence());
        let basis = nullspace_basis(&adjacency_matrix(&g));
        let k = basis.len();
        prop_assume!(k > 0 && k * k <= coeffs.len());
        let m: Matrix<BigRational> = Matrix::from_fn(k, k, |r, c| BigRational::from_integer(coeffs[r * k + c].into()));
        prop_assume!(m.rank() == k);
        let before = nullspace_verdict(&basis);
        let after = nullspace_verdict(&basis.recombine(&m));
        prop_assert_eq!(before.is_candidate(), after.is_candidate());
    }
}

#[test]
fn labeled_graphs_are_never_ruled_out() {
    for m in 3..=7 {
        for p in SegmentProfile::all_with_total(m) {
            let g = build_qw(&p.to_sequence());
            let found = find_labeling(&g, &SearchOptions::find()).unwrap();
            if let Some(lab) = found.labeling() {
                assert!(dmlab::spectral::is_kernel_labeling(&g, lab).unwrap());
                assert!(nullspace_filter(&g).unwrap().is_candidate(), "{p}");
            }
        }
    }
}

#[test]
fn dot_export_of_constructed_labeling() {
    let s = SegmentProfile::new(vec![3, 3]).unwrap().to_sequence();
    let lab = construct_labeling(&s).unwrap();
    let doc = export_dot(&build_qw(&s), Some(&lab), Some(6));
    assert_eq!(doc.matches(" -- ").count(), 24);
    assert_eq!(doc.matches("rank=same").count(), 2);
}

#[test]
fn expansions_of_small_qw_graphs() {
    let mut expanded = 0;
    for m in 3..=10 {
        for p in SegmentProfile::all_with_total(m) {
            let s = p.to_sequence();
            let Ok(lab) = construct_labeling(&s) else { continue };
            let g = build_qw(&s);
            for c in find_zero_antipodal_cycles(&g, &lab).unwrap() {
                let (h, l) = expand(&g, &lab, &c).unwrap();
                assert_eq!(h.order(), 2 * m + 2);
                assert!(h.is_regular(4) && h.is_connected(), "{p} {c}");
                assert!(l.is_bijective() && verify(&h, &l).unwrap().passed(), "{p} {c}");
                expanded += 1;
            }
        }
    }
    assert!(expanded > 0);
}

#[test]
fn tetravalent_counts_regression() {
    let counts: Vec<usize> = (5..=10)
        .map(|n| enumerate_regular(&EnumerationTask::tetravalent(n)).unwrap().len())
        .collect();
    assert_eq!(counts, [1, 1, 2, 6, 16, 59]);
}

#[test]
fn pruning_rules_do_not_change_verdicts() {
    use dmlab::search::PruneRules;
    let mut graphs = Vec::new();
    for n in [6, 8, 10] {
        graphs.extend(enumerate_regular(&EnumerationTask::tetravalent(n)).unwrap());
    }
    for m in 3..=5 {
        graphs.extend(
            SegmentProfile::all_with_total(m)
                .iter()
                .map(|p| build_qw(&p.to_sequence())),
        );
    }
    let all = PruneRules::default();
    let variants = [
        PruneRules {
            zero_sum_closure: false,
            ..all
        },
        PruneRules { interval: false, ..all },
        PruneRules {
            sign_symmetry: false,
            ..all
        },
    ];
    for g in &graphs {
        let base = find_labeling(g, &SearchOptions::find()).unwrap().labeling().is_some();
        for rules in variants {
            let opts = SearchOptions {
                rules,
                ..SearchOptions::find()
            };
            let found = find_labeling(g, &opts).unwrap().labeling().is_some();
            assert_eq!(found, base, "{} with {rules:?}", write_graph6(g).unwrap());
        }
    }
}

use hjoin::exact::IntPoly;
use hjoin::join::{assoc_matrix, JoinAnalysis};
use hjoin::lexpow::{
    lex_charpoly, lex_power_explicit, lex_power_regular, lex_spec, mixed_extension,
};
use hjoin::spectral::{matching_distance, sym_eigenvalues};
use hjoin::{
    hjoin_charpoly, hjoin_explicit, hjoin_spectrum, reconstruct_eigvecs, regular_quotient, Graph,
    JoinSpec, Tolerances,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn spec(max_p: usize, max_n: usize) -> impl Strategy<Value = JoinSpec> {
    graph(max_p).prop_flat_map(move |h| {
        let p = h.order();
        proptest::collection::vec(graph(max_n), p)
            .prop_map(move |comps| JoinSpec::new(h.clone(), comps).unwrap())
    })
}

fn regular() -> impl Strategy<Value = Graph> {
    prop_oneof![
        (3usize..=7).prop_map(|n| Graph::cycle(n).unwrap()),
        (1usize..=6).prop_map(Graph::complete),
        (1usize..=6).prop_map(Graph::empty),
        (4usize..=9, any::<u8>()).prop_map(|(n, mask)| {
            let jumps: Vec<usize> = (1..=n / 2).filter(|k| mask >> k & 1 == 1).collect();
            Graph::circulant(n, &jumps).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn charpoly_matches_explicit_join(s in spec(4, 6)) {
        let f = hjoin_charpoly(&s).unwrap();
        let g = hjoin_explicit(&s);
        prop_assert_eq!(f.degree(), Some(g.order()));
        prop_assert!(f.is_monic());
        prop_assert_eq!(f, g.adjacency().charpoly_exact().unwrap());
    }

    #[test]
    fn spectrum_matches_explicit_join(s in spec(4, 6)) {
        let tol = Tolerances::default();
        let ours = hjoin_spectrum(&s, &tol).unwrap();
        let oracle = sym_eigenvalues(&hjoin_explicit(&s).adjacency_f64()).unwrap();
        prop_assert_eq!(ours.total_multiplicity(), BigUint::from(s.order()));
        prop_assert!(matching_distance(&ours.expand(), &oracle).unwrap() < 1e-8);
    }

    #[test]
    fn assoc_spectrum_is_contained_in_join_spectrum(s in spec(4, 6)) {
        let a = JoinAnalysis::new(&s, &Tolerances::default()).unwrap();
        let direct = a.assoc_eigenvalues_direct(&Tolerances::default()).unwrap();
        let sym = a.assoc_eigenvalues().unwrap();
        prop_assert!(matching_distance(&direct, &sym).unwrap() < 1e-7);
        let mut oracle = sym_eigenvalues(&hjoin_explicit(&s).adjacency_f64()).unwrap();
        // remove a nearest match for every eigenvalue of W
        for w in sym {
            let (k, d) = oracle
                .iter()
                .enumerate()
                .map(|(k, v)| (k, (v - w).abs()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            prop_assert!(d < 1e-7, "{} not in the join spectrum", w);
            oracle.remove(k);
        }
    }

    #[test]
    fn embedded_vectors_are_orthogonal_to_reconstructed(s in spec(4, 6)) {
        let b = reconstruct_eigvecs(&s, &Tolerances::default()).unwrap();
        prop_assert_eq!(b.len(), s.order());
        prop_assert!(b.max_cross_inner_product() <= 1e-8);
        for e in &b.embedded {
            prop_assert!(e.local.sum().abs() < 1e-9);
        }
    }

    #[test]
    fn regular_quotient_is_similar_to_assoc(
        (h, comps) in graph(5).prop_flat_map(|h| {
            let p = h.order();
            (Just(h), proptest::collection::vec(regular(), p))
        })
    ) {
        let s = JoinSpec::new(h, comps).unwrap();
        let w = assoc_matrix(&s).unwrap().matrix.charpoly_exact().unwrap();
        let roots = sym_eigenvalues(&regular_quotient(&s).unwrap()).unwrap();
        prop_assert_eq!(w.degree(), Some(s.components().len()));
        for r in roots {
            let scale = 1.0 + r.abs().powi(w.degree().unwrap() as i32);
            prop_assert!(w.eval_f64(r).abs() / scale < 1e-8);
        }
    }

    #[test]
    fn lex_charpoly_specialises_general_formula(h in graph(4), g in graph(4)) {
        let f = lex_charpoly(&h, &g).unwrap();
        prop_assert_eq!(&f, &hjoin_charpoly(&lex_spec(&h, &g).unwrap()).unwrap());
        prop_assert_eq!(f.degree(), Some(h.order() * g.order()));
    }

    #[test]
    fn mixed_extensions_have_few_nontrivial_eigenvalues(
        h in graph(6),
        sizes in proptest::collection::vec((1i64..=5, any::<bool>()), 6),
    ) {
        let a: Vec<i64> = sizes.iter().take(h.order()).map(|&(m, neg)| if neg { -m } else { m }).collect();
        let s = mixed_extension(&h, &a).unwrap();
        let sp = hjoin_spectrum(&s, &Tolerances::default()).unwrap();
        let outside = hjoin::lexpow::count_outside_trivial(&sp, 1e-7);
        prop_assert!(outside <= BigUint::from(h.order()));
    }
}

#[test]
fn lex_charpoly_examples() {
    let k4 = Graph::complete(4).adjacency().charpoly_exact().unwrap();
    let f = lex_charpoly(&Graph::complete(2), &Graph::complete(2)).unwrap();
    assert_eq!(f, k4);
    let expect = &IntPoly::linear(3.into()) * &IntPoly::linear((-1).into()).pow(3);
    assert_eq!(f, expect);
    let g = Graph::petersen();
    assert_eq!(
        lex_charpoly(&Graph::complete(1), &g).unwrap(),
        g.adjacency().charpoly_exact().unwrap()
    );
}

#[test]
fn lexicographic_powers_of_small_regular_graphs() {
    for h in [
        Graph::cycle(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::complete(3),
        Graph::complete_bipartite(2, 2),
        Graph::circulant(6, &[1, 3]).unwrap(),
    ] {
        for k in 1..=2 {
            let s = lex_power_regular(&h, k).unwrap();
            let oracle =
                sym_eigenvalues(&lex_power_explicit(&h, k).unwrap().adjacency_f64()).unwrap();
            assert!(matching_distance(&s.to_spectrum().expand(), &oracle).unwrap() < 1e-8);
        }
        for k in [10, 50, 100] {
            let s = lex_power_regular(&h, k).unwrap();
            assert_eq!(s.multiplicity_sum(), BigUint::from(h.order()).pow(k));
        }
    }
}

#[test]
fn lexicographic_product_is_associative() {
    let tol = Tolerances::default();
    for h in [Graph::cycle(3).unwrap(), Graph::complete(2), Graph::path(3)] {
        let h2 = hjoin_explicit(&lex_spec(&h, &h).unwrap());
        let left = hjoin_spectrum(&lex_spec(&h2, &h).unwrap(), &tol).unwrap();
        let right = hjoin_spectrum(&lex_spec(&h, &h2).unwrap(), &tol).unwrap();
        assert!(matching_distance(&left.expand(), &right.expand()).unwrap() < 1e-8);
        let a = hjoin_explicit(&lex_spec(&h2, &h).unwrap());
        let b = hjoin_explicit(&lex_spec(&h, &h2).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn mixed_extension_examples() {
    let p3 = mixed_extension(&Graph::path(3), &[1, 1, 1]).unwrap();
    assert_eq!(hjoin_explicit(&p3), Graph::path(3));
    let k4 = mixed_extension(&Graph::complete(2), &[2, 2]).unwrap();
    assert_eq!(hjoin_explicit(&k4), Graph::complete(4));
}

#[test]
fn schur_stall_regression() {
    // unshifted QR on this associated matrix never converges
    let doc = r#"{"components":[{"edges":[[0,1]],"n":2},{"edges":[],"n":1},{"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[1,4],[1,5],[2,3],[2,4],[2,5],[3,4],[3,5],[4,5]],"n":6},{"edges":[[0,1],[0,2],[0,3],[0,4],[0,5],[1,2],[1,3],[1,4],[2,3],[2,4],[2,5],[3,5],[4,5]],"n":6}],"h":{"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]],"n":4}}"#;
    // Schur on W stalls here too; eigenvectors must not depend on it
    let doc2 = r#"{"components":[{"edges":[[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[2,4],[3,4]],"n":5},{"edges":[[0,1],[1,2]],"n":3},{"edges":[[0,1],[0,2],[0,3],[0,4],[0,5],[0,6],[1,2],[1,3],[2,3],[2,4],[2,5],[2,6],[2,7],[3,4],[3,5],[3,6],[3,7],[4,5],[4,6],[5,6],[5,7],[6,7]],"n":8},{"edges":[[0,1],[0,3],[0,6],[1,2],[1,3],[1,4],[1,5],[2,5],[3,4],[3,5],[4,5],[4,6],[5,6]],"n":7},{"edges":[],"n":1}],"h":{"edges":[[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"n":5}}"#;
    for d in [doc, doc2] {
        let s = hjoin::io::spec_from_json(d).unwrap();
        let r = hjoin::verify_against_oracle(&s, &Tolerances::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

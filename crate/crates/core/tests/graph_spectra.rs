mod common;

use latin_equitable::graph::{
    build_graph, build_mols_graph, closed_form_spectrum, verify_strong_regularity, StrongRegularity,
};
use latin_equitable::LatinSquare;
use proptest::prelude::*;

#[test]
fn small_graphs() {
    let k4 = build_graph(&LatinSquare::cyclic(2));
    assert_eq!(k4.num_vertices(), 4);
    assert_eq!(k4.edges().count(), 6);
    let single = build_graph(&LatinSquare::cyclic(1));
    assert_eq!(single.num_vertices(), 1);
    assert_eq!(single.edges().count(), 0);
    let g = build_graph(&LatinSquare::cyclic(4));
    assert_eq!(g.num_vertices(), 16);
    assert!((0..16).all(|v| g.degree(v) == 9));
}

#[test]
fn closed_forms() {
    assert_eq!(closed_form_spectrum(4).entries, vec![(9, 1), (1, 9), (-3, 6)]);
    assert_eq!(closed_form_spectrum(2).entries, vec![(3, 1), (-1, 3)]);
    assert_eq!(closed_form_spectrum(5).entries, vec![(12, 1), (2, 12), (-3, 12)]);
    assert_eq!(closed_form_spectrum(1).entries, vec![(0, 1)]);
}

#[test]
fn characteristic_polynomial_matches_closed_form() {
    let squares = [
        LatinSquare::cyclic(2),
        LatinSquare::cyclic(3),
        LatinSquare::cyclic(4),
        common::klein(),
        LatinSquare::cyclic(5),
        common::non_cyclic5(),
    ];
    for sq in &squares {
        let g = build_graph(sq);
        let poly = common::char_poly(&g.adjacency_matrix().to_rows());
        assert_eq!(
            poly,
            common::poly_from_roots(&closed_form_spectrum(sq.order()).entries),
            "{sq:?}"
        );
    }
}

fn common_neighbour_count(g: &latin_equitable::LatinSquareGraph, u: usize, v: usize) -> usize {
    (0..g.num_vertices())
        .filter(|&w| g.is_adjacent(u, w) && g.is_adjacent(v, w))
        .count()
}

#[test]
fn strong_regularity_parameters() {
    assert_eq!(
        verify_strong_regularity(&build_graph(&LatinSquare::cyclic(2))).unwrap(),
        StrongRegularity::Complete {
            vertices: 4,
            valency: 3
        }
    );
    for n in 3..=5 {
        let g = build_graph(&LatinSquare::cyclic(n));
        // (0,0)-(0,1) share a row; (0,0)-(1,2) share nothing when n > 3
        let lambda = common_neighbour_count(&g, 0, 1);
        let far = (0..n * n).find(|&v| v != 0 && !g.is_adjacent(0, v)).unwrap();
        let mu = common_neighbour_count(&g, 0, far);
        assert_eq!(
            verify_strong_regularity(&g).unwrap(),
            StrongRegularity::Parameters {
                vertices: n * n,
                valency: 3 * (n - 1),
                lambda,
                mu
            }
        );
        assert_eq!((lambda, mu), (n, 6));
    }
}

#[test]
fn mols_graphs() {
    let single = build_mols_graph(&[LatinSquare::cyclic(5)]).unwrap();
    assert_eq!(single.valency(), 12);
    assert_eq!(
        single.adjacency_matrix(),
        build_graph(&LatinSquare::cyclic(5)).adjacency_matrix()
    );

    let a = LatinSquare::cyclic(3);
    let b = LatinSquare::validate(&[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
    let g = build_mols_graph(&[a.clone(), b]).unwrap();
    assert_eq!(g.valency(), 8);
    assert_eq!(g.edges().count(), 36);
    assert!(build_mols_graph(&[a.clone(), a]).is_err());

    let latin = common::klein();
    let mate =
        LatinSquare::validate(&[vec![0, 1, 2, 3], vec![2, 3, 0, 1], vec![3, 2, 1, 0], vec![1, 0, 3, 2]]).unwrap();
    assert!(latin.is_orthogonal_to(&mate));
    let g = build_mols_graph(&[latin, mate]).unwrap();
    assert_eq!(g.valency(), 12);
    assert_eq!(g.eigenvalues(), (12, 0, -4));
    let poly = common::char_poly(&g.adjacency_matrix().to_rows());
    // trace 0 forces multiplicities 1, 12, 3
    assert_eq!(poly, common::poly_from_roots(&[(12, 1), (0, 12), (-4, 3)]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_square_graph_identities(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = common::rng(seed);
        let sq = common::random_latin_square(n, &mut rng);
        let g = build_graph(&sq);
        let k = 3 * (n - 1);
        let a = g.adjacency_matrix();
        prop_assert_eq!(&a, &a.transpose());
        prop_assert_eq!(a.trace(), 0);
        prop_assert!((0..n * n).all(|v| g.degree(v) == k));
        let a2 = &a * &a;
        prop_assert_eq!(a2.trace(), (n * n * k) as i64);
        let spec = closed_form_spectrum(n);
        let tr2: i64 = spec.entries.iter().map(|&(e, m)| e * e * m as i64).sum();
        prop_assert_eq!(tr2, a2.trace());
        prop_assert_eq!(spec.total(), n * n);
        if n >= 3 {
            prop_assert!(g.annihilator_vanishes());
        }
        prop_assert_eq!(g.exact_spectrum().unwrap(), spec);
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use proptest::prelude::*;

use walkdet_core::exactlinalg::IntMatrix;
use walkdet_core::graphs::adjacency;
use walkdet_core::poly::sylvester_resultant;
use walkdet_core::walk::walk_det_matrix;
use walkdet_core::{h_poly, interpolate_exact, matrix_of, rooted_product, Graph, IntPoly, MatrixKind, RootedGraph};

fn cofactor_det(m: &IntMatrix) -> BigInt {
    let n = m.order();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor = IntMatrix::from_fn(n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
        let t = m.get(0, j) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    total
}

fn matrix(max: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max).prop_flat_map(move |n| {
        prop::collection::vec(-range..=range, n * n)
            .prop_map(move |v| IntMatrix::from_fn(n, |i, j| BigInt::from(v[i * n + j])))
    })
}

fn poly(min_deg: usize, max_deg: usize) -> impl Strategy<Value = IntPoly> {
    (min_deg..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-6i64..=6, d), prop_oneof![-4i64..=-1, 1i64..=4]).prop_map(|(mut c, lead)| {
            c.push(lead);
            IntPoly::from_i64s(&c)
        })
    })
}

fn graph(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        g.add_edge(i, j).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn rooted(min: usize, max: usize) -> impl Strategy<Value = RootedGraph> {
    graph(min, max).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), 0..n).prop_map(|(g, r)| RootedGraph::new(g, r).unwrap())
    })
}

fn kind() -> impl Strategy<Value = MatrixKind> {
    prop_oneof![
        Just(MatrixKind::Adjacency),
        Just(MatrixKind::SignlessLaplacian),
        (1u32..5, 0u32..5).prop_map(|(q, p)| format!("aalpha={}/{}", p % q, q).parse().unwrap()),
    ]
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn has_nontrivial_automorphism(g: &Graph) -> bool {
    let n = g.order();
    let mut p: Vec<usize> = (0..n).collect();
    while next_permutation(&mut p) {
        if g.edges().iter().all(|&(u, w)| g.has_edge(p[u], p[w])) {
            return true;
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in matrix(6, 9)) {
        prop_assert_eq!(m.det(), cofactor_det(&m));
    }

    #[test]
    fn charpoly_evaluates_to_det_of_shifted_matrix(m in matrix(6, 5), t in -2i64..=2) {
        let n = m.order();
        let shifted = IntMatrix::identity(n).scale(&BigInt::from(t)).add_scaled(&m, &BigInt::from(-1)).unwrap();
        prop_assert_eq!(m.charpoly().eval_i64(t), shifted.det());
    }

    #[test]
    fn charpoly_constant_term_is_signed_det(m in matrix(6, 5)) {
        let sign = if m.order() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(m.charpoly().coeff(0), sign * m.det());
    }

    #[test]
    fn kronecker_det(a in matrix(3, 4), b in matrix(3, 4)) {
        let expected = Pow::pow(a.det(), b.order() as u32) * Pow::pow(b.det(), a.order() as u32);
        prop_assert_eq!(a.kron(&b).det(), expected);
    }

    #[test]
    fn resultant_antisymmetry(f in poly(0, 5), g in poly(0, 5)) {
        let d = f.degree().unwrap() * g.degree().unwrap();
        let r = sylvester_resultant(&g, &f).unwrap();
        let expected = if d % 2 == 0 { r } else { -r };
        prop_assert_eq!(sylvester_resultant(&f, &g).unwrap(), expected);
    }

    #[test]
    fn resultant_multiplicative(f in poly(0, 4), g in poly(0, 3), h in poly(0, 3)) {
        let lhs = sylvester_resultant(&f, &(&g * &h)).unwrap();
        prop_assert_eq!(lhs, sylvester_resultant(&f, &g).unwrap() * sylvester_resultant(&f, &h).unwrap());
    }

    #[test]
    fn resultant_shift_invariance(f in poly(1, 6), g in poly(0, 5), t in -3i64..=3) {
        prop_assume!(g.degree() < f.degree());
        let shifted = &f + &g.scalar_mul(&BigInt::from(t));
        prop_assert_eq!(sylvester_resultant(&shifted, &g).unwrap(), sylvester_resultant(&f, &g).unwrap());
    }

    #[test]
    fn interpolation_round_trip(p in poly(0, 8), offset in -5i64..=5) {
        let d = p.degree().unwrap();
        let pts: Vec<_> = (0..=d as i64).map(|i| (BigInt::from(i + offset), p.eval_i64(i + offset))).collect();
        prop_assert_eq!(interpolate_exact(&pts, d).unwrap(), p);
    }

    #[test]
    fn resultant_with_charpoly_is_det_of_matrix_polynomial(m in matrix(4, 3), g in poly(0, 3)) {
        prop_assert_eq!(sylvester_resultant(&m.charpoly(), &g).unwrap(), m.eval_poly(&g).det());
    }

    #[test]
    fn rooted_product_shape(g in graph(1, 5), h in rooted(1, 5)) {
        let p = rooted_product(&g, &h);
        prop_assert_eq!(p.order(), g.order() * h.order());
        prop_assert_eq!(p.edge_count(), g.order() * h.graph().edge_count() + g.edge_count());
    }

    #[test]
    fn rooted_product_kronecker_identity(g in graph(1, 5), h in rooted(1, 5), kind in kind()) {
        let (mg, _) = matrix_of(&g, &kind);
        let (mh, _) = matrix_of(h.graph(), &kind);
        let d = IntMatrix::unit_diagonal(h.order(), h.root()).unwrap();
        let expected = mh.kron(&IntMatrix::identity(g.order())).add_scaled(&d.kron(&mg), &BigInt::one()).unwrap();
        prop_assert_eq!(matrix_of(&rooted_product(&g, &h), &kind).0, expected);
    }

    #[test]
    fn adjacency_deletion_commutes(h in rooted(1, 7)) {
        let deleted = adjacency(h.graph()).delete_row_col(h.root()).unwrap();
        prop_assert_eq!(deleted, adjacency(&h.graph().remove_vertex(h.root()).unwrap()));
    }

    #[test]
    fn charpoly_of_root_perturbation(h in rooted(1, 6), t in -3i64..=3) {
        for kind in [MatrixKind::Adjacency, MatrixKind::SignlessLaplacian] {
            let (mh, _) = matrix_of(h.graph(), &kind);
            let d = IntMatrix::unit_diagonal(h.order(), h.root()).unwrap();
            let b = mh.add_scaled(&d, &BigInt::from(t)).unwrap();
            let phi_v = mh.delete_row_col(h.root()).unwrap().charpoly();
            prop_assert_eq!(b.charpoly(), &mh.charpoly() - &phi_v.scalar_mul(&BigInt::from(t)));
        }
    }

    #[test]
    fn walk_determinant_two_adic(g in graph(1, 10)) {
        let p = BigInt::one() << (g.order() / 2);
        prop_assert!(walk_det_matrix(&adjacency(&g)).is_multiple_of(&p));
    }

    #[test]
    fn symmetric_graphs_are_uncontrollable(g in graph(2, 7)) {
        if has_nontrivial_automorphism(&g) {
            for kind in [MatrixKind::Adjacency, MatrixKind::SignlessLaplacian] {
                prop_assert!(walk_det_matrix(&matrix_of(&g, &kind).0).is_zero());
            }
        }
    }

    #[test]
    fn h_degree_bound(h in rooted(1, 6)) {
        let m = h.order();
        let p = h_poly(&h, &MatrixKind::Adjacency).unwrap();
        prop_assert!(p.degree().is_none_or(|d| d <= m * (m - 1) / 2));
    }

    #[test]
    fn unimodular_root_condition_gives_unimodular_product(g in graph(1, 5), h in rooted(1, 5)) {
        let a = adjacency(&g);
        let ah = adjacency(h.graph());
        let pair = (ah.det(), ah.delete_row_col(h.root()).unwrap().det());
        let unit = |x: &BigInt| x.abs().is_one();
        let ok = (unit(&pair.0) && pair.1.is_zero()) || (pair.0.is_zero() && unit(&pair.1));
        if unit(&a.det()) && ok {
            prop_assert!(unit(&adjacency(&rooted_product(&g, &h)).det()));
        }
    }
}

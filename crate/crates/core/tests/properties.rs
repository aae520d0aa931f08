use g2_core::cayley::{cx_mul, from_complex_model, to_complex_model};
use g2_core::derivation::{automorphism_residual, exp_derivation_numeric, orthogonality_residual};
use g2_core::linalg::{format_rational, parse_rational, ratio};
use g2_core::roots::vanishing_roots;
use g2_core::{
    cartan_element, classify, weyl_reflect, CartanElement, Derivation, G2Basis, Matrix, Octonion, Rational, RootSystem,
};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn octonion() -> impl Strategy<Value = Octonion> {
    proptest::array::uniform8(small_rational()).prop_map(Octonion::new)
}

fn int_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(|x| ratio(x, 1)).collect()))
    })
}

fn tau() -> impl Strategy<Value = CartanElement> {
    (-6i64..=6, -6i64..=6).prop_map(|(a, b)| CartanElement::from_integers([a, b, -a - b]).unwrap())
}

fn coords14() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-3i64..=3).prop_map(|x| ratio(x, 1)), 14)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in int_matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_basis_is_canonical_under_row_operations(m in int_matrix(), c in 1i64..=5, shift in 0usize..5) {
        let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let n_rows = rows.len();
        rows.rotate_left(shift % n_rows);
        let scale = ratio(c, 1);
        for x in rows[0].iter_mut() {
            *x = &*x * &scale;
        }
        let n = Matrix::from_rows(rows);
        prop_assert_eq!(n.rank(), m.rank());
        prop_assert_eq!(n.kernel_basis(), m.kernel_basis());
    }

    #[test]
    fn solve_returns_a_solution(m in int_matrix(), x in proptest::collection::vec(-3i64..=3, 6)) {
        let x: Vec<Rational> = x[..m.cols()].iter().map(|&v| ratio(v, 1)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn rational_strings_round_trip(q in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn alternativity(x in octonion(), y in octonion()) {
        prop_assert_eq!(&x * &(&x * &y), &(&x * &x) * &y);
        prop_assert_eq!(&(&y * &x) * &x, &y * &(&x * &x));
    }

    #[test]
    fn composition_and_conjugation(x in octonion(), y in octonion()) {
        let xy = &x * &y;
        prop_assert_eq!(xy.norm(), x.norm() * y.norm());
        prop_assert_eq!(xy.conj(), &y.conj() * &x.conj());
    }

    #[test]
    fn involutions_are_automorphisms(x in octonion(), y in octonion()) {
        prop_assert_eq!((&x * &y).gamma(), &x.gamma() * &y.gamma());
        prop_assert_eq!((&x * &y).gamma1(), &x.gamma1() * &y.gamma1());
    }

    #[test]
    fn complex_model_agrees(x in octonion(), y in octonion()) {
        let u = to_complex_model(&x);
        prop_assert_eq!(from_complex_model(&u), x.clone());
        prop_assert_eq!(from_complex_model(&cx_mul(&u, &to_complex_model(&y))), &x * &y);
    }

    #[test]
    fn brackets_of_derivations_are_derivations(a in coords14(), b in coords14()) {
        let g = G2Basis::shared();
        let (x, y) = (g.combine(&a), g.combine(&b));
        let z = x.bracket(&y);
        prop_assert!(Derivation::new(z.matrix().clone()).is_ok());
        prop_assert_eq!(g.coordinates(&z).unwrap(), g.bracket_coords(&a, &b));
    }

    #[test]
    fn killing_form_is_ad_invariant(a in coords14(), b in coords14(), c in coords14()) {
        let g = G2Basis::shared();
        let (x, y, z) = (g.combine(&a), g.combine(&b), g.combine(&c));
        let lhs = g.killing_form(&z.bracket(&x), &y).unwrap();
        let rhs = g.killing_form(&x, &z.bracket(&y)).unwrap();
        prop_assert!((lhs + rhs).is_zero());
        if !x.is_zero() {
            prop_assert!(g.killing_form(&x, &x).unwrap() < Rational::zero());
        }
    }

    #[test]
    fn cartan_element_is_linear(s in tau(), t in tau(), c in small_rational()) {
        prop_assert_eq!(cartan_element(&s.add(&t)), cartan_element(&s).add(&cartan_element(&t)));
        prop_assert_eq!(cartan_element(&s.scale(&c)), cartan_element(&s).scale(&c));
    }

    #[test]
    fn vanishing_sets_have_expected_sizes(t in tau()) {
        let n = vanishing_roots(&t, RootSystem::shared().roots()).len();
        prop_assert!([0, 2, 12].contains(&n), "{} vanishing roots", n);
        prop_assert_eq!(n == 12, t.is_zero());
    }

    #[test]
    fn classification_is_weyl_invariant(t in tau(), k in 0usize..12) {
        let r = &RootSystem::shared().roots()[k];
        let s = weyl_reflect(r, &t);
        prop_assert_eq!(weyl_reflect(r, &s), t.clone());
        let a = classify(&t).unwrap();
        let b = classify(&s).unwrap();
        prop_assert_eq!(a.orbit_type, b.orbit_type);
        prop_assert_eq!(a.stabilizer_dim, b.stabilizer_dim);
    }

    #[test]
    fn classification_is_scale_invariant(t in tau(), p in -5i64..=5, q in 1i64..=4) {
        prop_assume!(p != 0);
        let a = classify(&t).unwrap();
        let b = classify(&t.scale(&ratio(p, q))).unwrap();
        prop_assert_eq!(a.orbit_type, b.orbit_type);
    }

    #[test]
    fn exponential_is_an_orthogonal_automorphism(
        a in coords14(),
        t in -2.0f64..2.0,
        x in octonion(),
        y in octonion(),
    ) {
        let d = G2Basis::shared().combine(&a);
        let alpha = exp_derivation_numeric(&d, t);
        let f = |o: &Octonion| -> [f64; 8] { std::array::from_fn(|k| o.coords()[k].to_f64().unwrap()) };
        prop_assert!(orthogonality_residual(&alpha) < 1e-9);
        let scale = 1.0 + x.norm().to_f64().unwrap() * y.norm().to_f64().unwrap();
        prop_assert!(automorphism_residual(&alpha, &f(&x), &f(&y)) / scale < 1e-9);
    }
}

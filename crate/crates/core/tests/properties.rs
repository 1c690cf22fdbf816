use gsr_core::algebra::GradedAlgebraSpec;
use gsr_core::character::{dyn_extend_orbit, sl2_act, ExtendOptions, Sl2Character, Sl2Kind};
use gsr_core::io::{matrix_from_json, matrix_to_json, scalar_from_json, scalar_to_json, spec_from_json, spec_to_json};
use gsr_core::matrix::SparseMatrix;
use gsr_core::scalar::{q, qi, qr};
use gsr_core::word::{GradedWord, Letter, NCPolynomial};
use gsr_core::Scalar;
use proptest::prelude::*;

/// Gaussian rationals, optionally times √2 or √3.
fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=5, -6i64..=6, 1i64..=5, 0usize..3).prop_map(|(a, b, c, d, r)| {
        let base = Scalar::from_qi(qi(qr(a, b), qr(c, d)));
        match r {
            0 => base,
            k => &base * &Scalar::int(k as i64 + 1).sqrt().unwrap(),
        }
    })
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

fn small_matrix(n: usize) -> impl Strategy<Value = SparseMatrix> {
    proptest::collection::vec((0..n, 0..n, scalar()), 0..2 * n).prop_map(move |es| {
        let mut m = SparseMatrix::zeros(n, n);
        for (i, j, v) in es {
            m.set(i, j, v);
        }
        m
    })
}

fn word(n_gens: usize, star: bool) -> impl Strategy<Value = GradedWord> {
    proptest::collection::vec((0..n_gens, any::<bool>()), 0..8)
        .prop_map(move |ls| GradedWord::new(ls.into_iter().map(|(g, s)| Letter { gen: g, star: s && star }).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverses_are_exact(a in nonzero_scalar()) {
        let inv = a.inverse().unwrap();
        prop_assert!(inv.is_exact());
        prop_assert_eq!(&a * &inv, Scalar::one());
    }

    #[test]
    fn scalar_json_round_trip(a in scalar()) {
        let back = scalar_from_json(&scalar_to_json(&a), "x").unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn matrix_json_round_trip(m in small_matrix(4)) {
        let back = matrix_from_json(&matrix_to_json(&m), 4, "m").unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn adjoint_reverses_products(a in small_matrix(3), b in small_matrix(3)) {
        prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn degree_is_multiplicative(u in word(3, true), v in word(3, true)) {
        let spec = GradedAlgebraSpec::su2();
        let (du, dv) = (spec.degree_of(&u).unwrap(), spec.degree_of(&v).unwrap());
        prop_assert_eq!(spec.degree_of(&u.concat(&v)).unwrap(), spec.group.mul(&du, &dv));
        let star = spec.involute(&NCPolynomial::word(u.clone()));
        for (w, _) in star.terms() {
            prop_assert_eq!(spec.degree_of(w).unwrap(), spec.group.inv(&du));
        }
    }

    #[test]
    fn finite_degrees_follow_the_group_law(u in word(6, false), v in word(6, false)) {
        let (spec, _) = GradedAlgebraSpec::s3_over_a3();
        let (du, dv) = (spec.degree_of(&u).unwrap(), spec.degree_of(&v).unwrap());
        prop_assert_eq!(spec.degree_of(&u.concat(&v)).unwrap(), spec.group.mul(&du, &dv));
    }

    #[test]
    fn sl2_action_composes(s in -12i64..12, t in -8i64..8, g in -6i64..6, h in -6i64..6) {
        let chi = Sl2Character::new(Sl2Kind::Su11, q(s), q(t));
        let id = sl2_act(&chi, 0);
        prop_assume!(id.is_ok(), "not a positive character");
        prop_assert_eq!(id.unwrap(), Some(chi.clone()));
        if let Some(y) = sl2_act(&chi, g).unwrap() {
            prop_assert_eq!(sl2_act(&y, -g).unwrap(), Some(chi.clone()));
            if let Some(z) = sl2_act(&y, h).unwrap() {
                prop_assert_eq!(sl2_act(&chi, g + h).unwrap(), Some(z));
            }
        }
    }

    #[test]
    fn dyn_shift_composes(seed in 0i64..8, g in -5i64..5, h in -5i64..5) {
        let f = "t+1".parse().unwrap();
        let o = dyn_extend_orbit(&f, &Scalar::int(seed), &ExtendOptions::steps(30, 30)).unwrap().remove(0);
        if let Some(y) = o.shifted(g).unwrap() {
            let back = y.shifted(-g).unwrap().unwrap();
            prop_assert_eq!(back.values(), o.values());
            if let Some(z) = y.shifted(h).unwrap() {
                let direct = o.shifted(g + h).unwrap().unwrap();
                prop_assert_eq!(direct.values(), z.values());
            }
        }
    }
}

#[test]
fn spec_json_round_trips() {
    let (s3, _) = GradedAlgebraSpec::s3_over_a3();
    for spec in [
        GradedAlgebraSpec::weyl(),
        GradedAlgebraSpec::su2(),
        GradedAlgebraSpec::su11(),
        GradedAlgebraSpec::dynamical("1-t".parse().unwrap()),
        GradedAlgebraSpec::quantum_disk(qr(1, 2), qr(1, 3)).unwrap(),
        s3,
    ] {
        let j = spec_to_json(&spec);
        let back = spec_from_json(&j).unwrap();
        assert_eq!(spec_to_json(&back), j);
    }
}

use isogate::modfield::PrimeModulus;
use isogate::ratcurves::cubic::{rational_roots, shape, Cubic};
use isogate::ratcurves::*;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = ExactRational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| ExactRational::new(n, d))
}

fn nonzero() -> impl Strategy<Value = ExactRational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn short_cubic(e: &CurveModel) -> Cubic {
    let [_, _, _, a4, a6] = e.coefficients();
    [a6.clone(), a4.clone(), ExactRational::zero(), ExactRational::one()]
}

#[test]
fn special_j_round_trip() {
    for j in [0i64, 1728] {
        let j = ExactRational::from(j);
        assert_eq!(curve_from_j(&j).j_invariant(), j);
    }
    assert!(matches!(disc_square_class_of_j(&1728.into()), Err(CurveError::Undefined(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn disc_class_matches_model(j in rational()) {
        let e = curve_from_j(&j);
        prop_assert_eq!(e.j_invariant(), j.clone());
        if !j.is_zero() && j != ExactRational::from(1728) {
            let from_model = squarefree_part(&discriminant(&e).unwrap()).unwrap();
            prop_assert_eq!(disc_square_class_of_j(&j).unwrap(), from_model);
        }
    }

    #[test]
    fn family_roots_contain_parameter(t in nonzero()) {
        let j = two_torsion_family_j(&t).unwrap();
        let roots = family_membership(&j);
        prop_assert!(roots.contains(&t));
        for s in &roots {
            prop_assert_eq!(two_torsion_family_j(s).unwrap(), j.clone());
        }
    }

    #[test]
    fn twist_preserves_class_and_shape(j in rational(), d in nonzero()) {
        let e = curve_from_j(&j).short_form();
        let t = e.quadratic_twist(&d).unwrap();
        prop_assert_eq!(t.j_invariant(), e.j_invariant());
        let (de, dt) = (discriminant(&e).unwrap(), discriminant(&t).unwrap());
        prop_assert_eq!(&dt / &de, d.pow(6));
        prop_assert_eq!(squarefree_part(&de).unwrap(), squarefree_part(&dt).unwrap());
        let (ce, ct) = (short_cubic(&e), short_cubic(&t));
        prop_assert_eq!(shape(&ce, &rational_roots(&ce)), shape(&ct, &rational_roots(&ct)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn twist_preserves_verdict(j in -3000i64..3000, d in prop_oneof![-30i64..-1, 2i64..30]) {
        prop_assume!(j != 0 && j != 1728);
        let e = curve_from_j(&j.into());
        let t = e.quadratic_twist(&d.into()).unwrap();
        for p in [11, 13] {
            let r = PrimeModulus::new(p).unwrap();
            let a = surjectivity_certificate(&e, r, 2000).unwrap().verdict;
            let b = surjectivity_certificate(&t, r, 2000).unwrap().verdict;
            prop_assert_eq!(a, b, "j = {}, d = {}, r = {}", j, d, p);
        }
    }
}

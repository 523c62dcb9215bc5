use isogate::modcurve::*;
use isogate::modfield::{is_prime_u64, PrimeModulus};
use isogate::ratcurves::CurveModel;
use proptest::prelude::*;

const CASES: [(&str, i64); 3] = [("X0(14)", 7), ("X0(20)", 5), ("X0(11)", 11)];

/// Counts by scanning y and solving the cubic in x, independent of the
/// x-scan used by the library.
fn count_by_y(a: [i64; 5], q: u64) -> u64 {
    let q = q as i64;
    let m = |v: i64| v.rem_euclid(q);
    let mut n = 1;
    for y in 0..q {
        for x in 0..q {
            let lhs = m(y * y + a[0] * x * y + a[2] * y);
            let rhs = m(m(m(x * x) * x) + m(a[1] * m(x * x)) + a[3] * x + a[4]);
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

fn ints(e: &CurveModel) -> [i64; 5] {
    e.integer_coefficients().unwrap().map(|c| i64::try_from(c).unwrap())
}

#[test]
fn counts_agree_between_scans() {
    for (label, r) in CASES {
        let c = named_curve(label).unwrap();
        let qs = default_primes(&c.model, PrimeModulus::new(r).unwrap(), 5).unwrap();
        for q in qs {
            assert_eq!(count_points(&c.model, q).unwrap(), count_by_y(ints(&c.model), q), "{label} at {q}");
            let (a, b) = group_structure(&c.model, q).unwrap();
            assert_eq!(a * b, count_by_y(ints(&c.model), q));
            assert_eq!(b % a, 0);
        }
    }
}

#[test]
fn default_bounds_and_sandwich() {
    let expected = [(12, 6), (6, 6), (5, 5)];
    for ((label, r), (bound, found)) in CASES.into_iter().zip(expected) {
        let c = named_curve(label).unwrap();
        let r = PrimeModulus::new(r).unwrap();
        let qs = default_primes(&c.model, r, DEFAULT_PRIME_COUNT).unwrap();
        let rep = torsion_bound_cyclotomic(c, r, &qs, DEFAULT_HEIGHT_BOUND).unwrap();
        assert_eq!(rep.bound, bound, "{label}");
        assert_eq!(rep.rational_points_found, found, "{label}");
        assert_eq!(rep.bound % rep.rational_points_found, 0);
        assert_eq!(rep.count_gcd % rep.bound, 0);
        assert!(rep.primes.iter().all(|q| q % r.get() as u64 == 1));
        assert_eq!(rep.flag, UPPER_BOUND_FLAG);
    }
}

#[test]
fn named_curve_validation() {
    for c in named_curves() {
        let pts = rational_point_search(&c.model, 50).unwrap();
        let orders: Vec<_> = pts.iter().filter_map(|p| point_order(&c.model, p, 16)).collect();
        assert!(orders.contains(&c.expected_rational_torsion), "{}", c.label);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hasse(a4 in -50i64..50, a6 in -50i64..50, a1 in 0i64..2, q in 5u64..2000) {
        prop_assume!(is_prime_u64(q));
        let Ok(e) = CurveModel::from_ints([a1, 0, 0, a4, a6]) else { return Ok(()) };
        if let Ok(n) = count_points(&e, q) {
            let d = n as i64 - q as i64 - 1;
            prop_assert!(d * d <= 4 * q as i64);
        }
    }

    #[test]
    fn more_primes_never_raise_the_bound(k in 1usize..8, extra in 1usize..4, which in 0usize..3) {
        let (label, r) = CASES[which];
        let c = named_curve(label).unwrap();
        let r = PrimeModulus::new(r).unwrap();
        let qs = default_primes(&c.model, r, k + extra).unwrap();
        let short = torsion_bound_cyclotomic(c, r, &qs[..k], 30).unwrap();
        let long = torsion_bound_cyclotomic(c, r, &qs, 30).unwrap();
        prop_assert_eq!(short.bound % long.bound, 0);
        prop_assert_eq!(short.count_gcd % long.count_gcd, 0);
    }
}

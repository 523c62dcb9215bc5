//! Acceptance criteria 1 to 14. Each criterion prints one line; the process
//! exits nonzero if any of them fails or overruns its time limit.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use isogate::cyclo::{full_two_torsion_over_cyclotomic, is_square_in_cyclotomic, TwoTorsionVerdict};
use isogate::gatefinder::{exhaustive_gate_groups, find_gate_groups, same_classes};
use isogate::linaction::{acts_freely, fixed_lines, orbits, projective_image, ProjectiveClass};
use isogate::matgroup::{gl2_order, sl2_part, Mat2, MatrixGroup};
use isogate::modcurve::{default_primes, named_curve, rational_point_search, torsion_bound_cyclotomic, two_division_shape};
use isogate::modfield::PrimeModulus;
use isogate::ratcurves::surjectivity::certificate_soundness_oracle;
use isogate::ratcurves::{
    curve_from_j, disc_square_class_of_j, discriminant, family_membership, has_rational_two_torsion, squarefree_part,
    surjectivity_certificate, two_division_cubic, CubicShape, ExactRational, SurjectivityVerdict,
};
use isogate::stdgroups::{standard_group, StandardGroupKind::*};
use isogate_cli::claims::{criteria_coverage, run_all};
use isogate_cli::config::Config;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

const FAMILY_J: [&str; 18] = [
    "-2^2*7^3", "-2^4*3^3", "-2^6", "2^7", "2^4*5^3", "2^11", "2^2*3^6", "2^7*3^3", "17^3",
    "2^5*7^3", "2^5*3^6", "2^4*17^3", "2^3*31^3", "2^2*3^6*7^3", "2^2*5^3*13^3", "2*127^3",
    "2*3^3*43^3", "257^3",
];

fn p(v: i64) -> PrimeModulus {
    PrimeModulus::new(v).unwrap()
}

fn q(s: &str) -> ExactRational {
    s.parse().unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Order, freeness, uniform orbit size and fixed lines of S(G).
fn uniform_free_action(g: &MatrixGroup, size: usize, what: &str) -> Check {
    let s = sl2_part(g);
    let n = g.modulus().get() as usize;
    ensure!(s.order() == size, "{what}: |S| = {} != {size}", s.order());
    ensure!(acts_freely(&s), "{what}: action not free");
    let counts = orbits(&s).size_counts();
    ensure!(counts == BTreeMap::from([(size, (n * n - 1) / size)]), "{what}: orbit sizes {counts:?}");
    let fl = fixed_lines(&s).len();
    ensure!(fl == 0, "{what}: {fl} fixed lines");
    Ok(())
}

fn c1() -> Check {
    let rs = PrimeModulus::range(3, 37);
    ensure!(rs.len() == 11, "expected 11 odd primes up to 37");
    for r in rs {
        let n = r.get() as usize;
        uniform_free_action(&standard_group(SplitCartanNormalizer, r).map_err(err)?, 2 * (n - 1), &format!("Cs+({n})"))?;
        uniform_free_action(&standard_group(NonsplitCartanNormalizer, r).map_err(err)?, 2 * (n + 1), &format!("Cns+({n})"))?;
    }
    Ok(())
}

fn c2() -> Check {
    let mut failures = Vec::new();
    for n in [5usize, 11, 17, 23, 29] {
        let g = standard_group(G3, p(n as i64)).map_err(err)?;
        if let Err(e) = uniform_free_action(&g, 2 * (n + 1) / 3, &format!("G3({n})")) {
            failures.push(e);
        }
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(())
}

fn c3() -> Check {
    let expect: [(i64, &[u64]); 4] = [(5, &[]), (7, &[56, 112]), (11, &[132, 264]), (13, &[182, 546])];
    for (n, want) in expect {
        let t = Instant::now();
        let res = find_gate_groups(p(n)).map_err(err)?;
        let idx: BTreeSet<u64> = res.indices.iter().copied().collect();
        if n == 5 {
            ensure!(res.groups.len() == 1, "r = 5: {} classes", res.groups.len());
        } else {
            ensure!(res.groups.len() == 2, "r = {n}: {} classes", res.groups.len());
            ensure!(idx == want.iter().copied().collect(), "r = {n}: indices {idx:?}");
        }
        for (g, &i) in res.groups.iter().zip(&res.indices) {
            ensure!(i * g.order() as u64 == gl2_order(p(n)), "r = {n}: index arithmetic");
        }
        if n == 7 {
            let (big, small) = if res.groups[0].order() > res.groups[1].order() {
                (&res.groups[0], &res.groups[1])
            } else {
                (&res.groups[1], &res.groups[0])
            };
            let minus = Mat2::new([-1, 0, 0, -1], p(7)).map_err(err)?;
            ensure!(small.join(&[minus]).elements() == big.elements(), "r = 7: larger class is not <-I, smaller>");
        }
        if n == 13 {
            ensure!(t.elapsed() < Duration::from_secs(600), "r = 13 took {:?}", t.elapsed());
        }
    }
    Ok(())
}

fn c4() -> Check {
    for n in [5, 7] {
        let oracle = exhaustive_gate_groups(p(n), 3).map_err(err)?;
        let search = find_gate_groups(p(n)).map_err(err)?;
        ensure!(
            same_classes(&search.groups, &oracle.gate_groups),
            "r = {n}: oracle found {} classes, search {}",
            oracle.gate_groups.len(),
            search.groups.len()
        );
    }
    Ok(())
}

fn c5() -> Check {
    for n in [7, 13, 19, 31, 37] {
        let s = sl2_part(&standard_group(CubeSplit, p(n)).map_err(err)?);
        let fl = fixed_lines(&s).len();
        ensure!(fl == 0, "r = {n}: {fl} fixed lines");
    }
    Ok(())
}

fn c6() -> Check {
    let r = p(13);
    let gens: Vec<Mat2> = [[2, 0, 0, 2], [2, 0, 0, 3], [0, -1, 1, 0], [1, 1, -1, 1]]
        .into_iter()
        .map(|e| Mat2::new(e, r))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let g = MatrixGroup::close(&gens).map_err(err)?;
    ensure!(g.elements() == standard_group(G7_13, r).map_err(err)?.elements(), "G7 differs from its constructor");
    let s = sl2_part(&g);
    let orb = orbits(&s);
    ensure!(orb.len() == 7, "{} orbits", orb.len());
    ensure!(orb.sizes().iter().all(|&x| x == 24), "orbit sizes {:?}", orb.size_counts());
    Ok(())
}

fn c7() -> Check {
    let img = projective_image(&standard_group(G95_5, p(5)).map_err(err)?);
    ensure!(img.order == 24 && img.class == ProjectiveClass::S4, "got {img:?}");
    Ok(())
}

fn c8() -> Check {
    let cases = [
        ("-3^3*5^3", -7),
        ("3^3*5^3*17^3", 7),
        ("-17*373^3/2^17", -10),
        ("-17^2*101^3/2", -10),
        ("-7*11^3", -5),
        ("-7*137^3*2083^3", -5),
    ];
    for (j, d) in cases {
        let c = disc_square_class_of_j(&q(j)).map_err(err)?;
        ensure!(c.to_i64() == Some(d), "j = {j}: class {c}, want {d}");
    }
    Ok(())
}

fn c9() -> Check {
    let cases = [(-7, 7, true), (7, 7, false), (-5, 17, false), (-10, 17, false), (-5, 37, false), (-10, 37, false)];
    for (d, r, want) in cases {
        let got = is_square_in_cyclotomic(&ExactRational::from(d), p(r)).map_err(err)?;
        ensure!(got == want, "({d}, {r}): {got}");
    }
    Ok(())
}

fn c10() -> Check {
    use TwoTorsionVerdict::*;
    let cases = [("-3^3*5^3", 7, Yes), ("3^3*5^3*17^3", 7, No), ("-11^2", 11, No)];
    for (j, r, want) in cases {
        let got = full_two_torsion_over_cyclotomic(&q(j), p(r)).map_err(err)?.verdict;
        ensure!(got == want, "({j}, {r}): {got:?}");
    }
    Ok(())
}

/// Reduces a rational with denominator prime to `m`.
fn reduce(x: &ExactRational, m: u64) -> Option<u64> {
    let m = BigInt::from(m);
    let d = x.denom().mod_floor(&m);
    if d.is_zero() {
        return None;
    }
    let inv = d.modpow(&(&m - 2), &m);
    (x.numer().mod_floor(&m) * inv).mod_floor(&m).to_u64()
}

fn c11() -> Check {
    for j in FAMILY_J {
        let jv = q(j);
        let ts = family_membership(&jv);
        ensure!(!ts.is_empty(), "j = {j}: no t found");
        for t in &ts {
            let sixteen = ExactRational::from(16);
            let v = (t + &sixteen).pow(3) / t.clone();
            ensure!(v == jv, "j = {j}: t = {t} gives {v}");
        }
    }
    let exceptional = [
        "2^4*5*13^4*17^3/3^13",
        "-2^12*5^3*11*13^4/3^13",
        "2^18*3^3*13^4*127^3*139^3*157^3*283^3*929/(5^13*61^13)",
        "-17*373^3/2^17",
        "-17^2*101^3/2",
        "-7*11^3",
        "-7*137^3*2083^3",
    ];
    for j in exceptional {
        let jv = q(j);
        ensure!(!has_rational_two_torsion(&jv).map_err(err)?, "j = {j}: rational 2-torsion");
        let witness = two_division_cubic(&jv).map_err(err)?.root_free_prime;
        let Some(w) = witness else { return Err(format!("j = {j}: no witness prime")) };
        // y² = x³ + Ax + B with A = 3j(1728 − j), B = 2j(1728 − j)²
        let k = ExactRational::from(1728) - jv.clone();
        let a = ExactRational::from(3) * jv.clone() * k.clone();
        let b = ExactRational::from(2) * jv.clone() * k.clone() * k;
        let (Some(a), Some(b)) = (reduce(&a, w), reduce(&b, w)) else {
            return Err(format!("j = {j}: witness {w} divides a denominator"));
        };
        let rooted = (0..w).any(|x| (x * x % w * x % w + a * x % w + b) % w == 0);
        ensure!(!rooted, "j = {j}: cubic has a root mod {w}");
    }
    Ok(())
}

fn c12() -> Check {
    for j in FAMILY_J {
        let e = curve_from_j(&q(j));
        ensure!(e.integer_coefficients().is_ok(), "j = {j}: model not integral");
        for r in [11, 13, 17, 19] {
            let v = surjectivity_certificate(&e, p(r), 10_000).map_err(err)?.verdict;
            ensure!(v == SurjectivityVerdict::CertifiedSurjective, "j = {j}, r = {r}: {v:?}");
        }
    }
    let x011 = &named_curve("X0(11)").map_err(err)?.model;
    let v = surjectivity_certificate(x011, p(5), 10_000).map_err(err)?.verdict;
    ensure!(v == SurjectivityVerdict::Inconclusive, "X0(11) at 5: {v:?}");
    let v = surjectivity_certificate(&curve_from_j(&q("1728")), p(7), 10_000).map_err(err)?.verdict;
    ensure!(v == SurjectivityVerdict::Inconclusive, "j = 1728 at 7: {v:?}");
    for r in [5, 7, 11, 13] {
        let rep = certificate_soundness_oracle(p(r), 2).map_err(err)?;
        ensure!(rep.violations.is_empty(), "r = {r}: {} proper subgroups pass", rep.violations.len());
    }
    Ok(())
}

fn c13() -> Check {
    const FLAG: &str = "upper bound only — rank not verified";
    for (label, r, bound, points) in [("X0(14)", 7, 12, 6), ("X0(20)", 5, 6, 6), ("X0(11)", 11, 5, 5)] {
        let c = named_curve(label).map_err(err)?;
        let qs = default_primes(&c.model, p(r), 8).map_err(err)?;
        ensure!(qs.iter().all(|&x| x % r as u64 == 1), "{label}: default primes {qs:?}");
        let rep = torsion_bound_cyclotomic(c, p(r), &qs, 1000).map_err(err)?;
        ensure!(rep.bound == bound, "{label}: bound {}", rep.bound);
        ensure!(rep.flag == FLAG, "{label}: flag {:?}", rep.flag);
        let found = rational_point_search(&c.model, 1000).map_err(err)?.len() as u64 + 1;
        ensure!(found == points, "{label}: {found} rational points");
        ensure!(rep.rational_points_found == points, "{label}: report says {}", rep.rational_points_found);
    }
    let s = two_division_shape(&named_curve("X0(14)").map_err(err)?.model).map_err(err)?;
    ensure!(s.shape == CubicShape::OneRationalRoot, "X0(14) 2-division shape {:?}", s.shape);
    ensure!(s.disc_class.to_i64() == Some(-7), "X0(14) 2-division class {}", s.disc_class);
    Ok(())
}

fn c14() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_101);
    let mut n = 0;
    while n < 200 {
        let j = ExactRational::new(rng.gen_range(-10_000_000i64..10_000_000), rng.gen_range(1i64..100_000));
        if j.is_zero() || j == ExactRational::from(1728) {
            continue;
        }
        n += 1;
        let direct = squarefree_part(&discriminant(&curve_from_j(&j)).map_err(err)?).map_err(err)?;
        let closed = disc_square_class_of_j(&j).map_err(err)?;
        ensure!(direct == closed, "j = {j}: {direct} vs {closed}");
    }
    let cov = criteria_coverage();
    ensure!(cov.keys().copied().eq(1..=14), "criteria without a claim: {:?}", cov.keys().collect::<Vec<_>>());
    let strip = |c: &Config| {
        let mut v = serde_json::to_value(run_all(c)).unwrap();
        for r in v.as_array_mut().unwrap() {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    let config = Config::default();
    ensure!(strip(&config) == strip(&config), "run_all differs between runs");
    Ok(())
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, Option<Duration>, fn() -> Check);
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 14] = [
        (1, "Cartan normalizers act freely without fixed lines", secs(5), c1),
        (2, "S(G3(r)) orbits", secs(5), c2),
        (3, "gate search classes and indices", secs(600), c3),
        (4, "gate search matches exhaustive enumeration", secs(900), c4),
        (5, "cube split Cartan fixes no line", secs(5), c5),
        (6, "S(G7) has 7 orbits of size 24", None, c6),
        (7, "projective image of G95 is S4", None, c7),
        (8, "discriminant square classes", Some(Duration::from_secs(1)), c8),
        (9, "squares in cyclotomic fields", None, c9),
        (10, "full 2-torsion decisions", None, c10),
        (11, "family membership and exceptional 2-torsion", secs(10), c11),
        (12, "surjectivity certificates and soundness", secs(300), c12),
        (13, "torsion bounds, rational points, 2-division shape", secs(30), c13),
        (14, "disc identity, claim coverage, run_all determinism", None, c14),
    ];
    let mut failed = 0;
    for (k, name, limit, check) in criteria {
        let t = Instant::now();
        let mut res = check();
        let dt = t.elapsed();
        if let (Ok(()), Some(l)) = (&res, limit) {
            if dt > l {
                res = Err(format!("took {dt:.2?}, limit {l:?}"));
            }
        }
        match res {
            Ok(()) => println!("criterion {k:>2}: PASS  {name} ({dt:.2?})"),
            Err(e) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL  {name} ({dt:.2?}): {e}");
            }
        }
    }
    println!("{} of 14 criteria passed", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

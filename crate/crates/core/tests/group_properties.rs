use std::collections::BTreeSet;

use isogate::linaction::*;
use isogate::matgroup::*;
use isogate::modfield::PrimeModulus;
use isogate::stdgroups::{standard_group, StandardGroupKind, StandardGroupKind::*};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(v: i64) -> PrimeModulus {
    PrimeModulus::new(v).unwrap()
}

fn random_mat<R: Rng>(rng: &mut R, p: PrimeModulus) -> Mat2 {
    let n = p.get() as i64;
    loop {
        let e = [0; 4].map(|_| rng.gen_range(0..n));
        if let Ok(m) = Mat2::new(e, p) {
            return m;
        }
    }
}

fn random_group<R: Rng>(rng: &mut R, p: PrimeModulus, gens: usize) -> MatrixGroup {
    let gs: Vec<Mat2> = (0..gens).map(|_| random_mat(rng, p)).collect();
    MatrixGroup::close(&gs).unwrap()
}

fn valid_kinds(p: u32) -> Vec<StandardGroupKind> {
    let mut ks = vec![Borel, SplitCartan, SplitCartanNormalizer, NonsplitCartan, NonsplitCartanNormalizer, G3];
    if p % 3 == 1 {
        ks.push(CubeSplit);
    }
    match p {
        5 => ks.push(G95_5),
        13 => ks.push(G7_13),
        _ => {}
    }
    ks
}

fn check_action(g: &MatrixGroup) -> Result<(), TestCaseError> {
    let n = g.modulus().get() as usize;
    let orb = orbits(g);
    let sizes = orb.sizes();
    prop_assert_eq!(sizes.iter().sum::<usize>(), n * n - 1);
    prop_assert!(sizes.iter().all(|s| g.order() % s == 0));
    prop_assert_eq!(acts_freely(g), sizes.iter().all(|&s| s == g.order()));
    if !fixed_lines(g).is_empty() {
        prop_assert!(sizes.iter().any(|&s| s < n));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lagrange_and_sl2_part(seed in any::<u64>(), p in prop::sample::select(vec![5i64, 7, 11, 13]), k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = r(p);
        let gens: Vec<Mat2> = (0..k).map(|_| random_mat(&mut rng, p)).collect();
        let g = MatrixGroup::close(&gens).unwrap();
        prop_assert_eq!(gl2_order(p) % g.order() as u64, 0);
        let s = sl2_part(&g);
        let ss = sl2_part(&s);
        prop_assert_eq!(ss.elements(), s.elements());
        let h = MatrixGroup::close(&gens[..1]).unwrap();
        prop_assert!(h.is_subgroup_of(&g));
        prop_assert!(sl2_part(&h).is_subgroup_of(&s));
    }

    #[test]
    fn action_invariants_on_random_groups(seed in any::<u64>(), p in prop::sample::select(vec![5i64, 7, 11, 13]), k in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_group(&mut rng, r(p), k);
        check_action(&g)?;
        check_action(&sl2_part(&g))?;
    }

    #[test]
    fn conjugation_moves_fixed_lines(seed in any::<u64>(), p in prop::sample::select(vec![5i64, 7, 11])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = r(p);
        // a cyclic group generated by a random element, often reducible
        let g = random_group(&mut rng, p, 1);
        let m = random_mat(&mut rng, p);
        let c = g.conjugate(&m);
        prop_assert_eq!(c.order(), g.order());
        let moved: BTreeSet<ProjectivePoint> = fixed_lines(&g).into_iter().map(|l| l.image(&m)).collect();
        let direct: BTreeSet<ProjectivePoint> = fixed_lines(&c).into_iter().collect();
        prop_assert_eq!(moved, direct);
        prop_assert_eq!(is_applicable(&g), is_applicable(&c));
        prop_assert_eq!(is_applicable(&g.join(&[m])), is_applicable(&g.join(&[m]).conjugate(&m)));
    }
}

#[test]
fn action_invariants_on_standard_groups() {
    for p in PrimeModulus::range(3, 37) {
        for k in valid_kinds(p.get()) {
            let g = standard_group(k, p).unwrap();
            for h in [&g, &sl2_part(&g)] {
                check_action(h).unwrap_or_else(|e| panic!("{k} at r = {}: {e}", p.get()));
            }
        }
    }
}

#[test]
fn conjugacy_prefilter_agrees_with_full_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    let mut conjugate_pairs = 0;
    for i in 0..1000 {
        let p = if i % 2 == 0 { r(5) } else { r(7) };
        let g = random_group(&mut rng, p, 1 + i % 2);
        let h = if i % 3 == 0 { random_group(&mut rng, p, 1 + i % 2) } else { g.conjugate(&random_mat(&mut rng, p)) };
        let fast = are_conjugate(&g, &h);
        let slow = conjugating_element(&g, &h);
        assert_eq!(fast.is_some(), slow.is_some(), "pair {i}");
        if let Some(m) = fast {
            conjugate_pairs += 1;
            assert_eq!(g.conjugate(&m).elements(), h.elements());
            let back = are_conjugate(&h, &g).unwrap();
            assert_eq!(h.conjugate(&back).elements(), g.elements());
            assert_eq!(g.fingerprint(), h.fingerprint());
        }
    }
    assert!(conjugate_pairs >= 600);
}

/// S₄ acts faithfully on its four Sylow 3-subgroups; a group of order 24
/// whose conjugation action on four order-3 subgroups is faithful is S₄.
fn is_s4_by_sylow_action(perms: &[Perm]) -> bool {
    if perms.len() != 24 {
        return false;
    }
    let id: Perm = (0..perms[0].len() as u16).collect();
    let inverse = |p: &Perm| {
        let mut q = p.clone();
        for (i, &v) in p.iter().enumerate() {
            q[v as usize] = i as u16;
        }
        q
    };
    let mut sylow: Vec<BTreeSet<Perm>> = Vec::new();
    for p in perms.iter().filter(|p| perm_order(p) == 3) {
        let s = BTreeSet::from([id.clone(), p.clone(), perm_compose(p, p)]);
        if !sylow.contains(&s) {
            sylow.push(s);
        }
    }
    if sylow.len() != 4 {
        return false;
    }
    let kernel = perms
        .iter()
        .filter(|g| {
            let gi = inverse(g);
            sylow.iter().all(|s| {
                let moved: BTreeSet<Perm> = s.iter().map(|x| perm_compose(g, &perm_compose(x, &gi))).collect();
                moved == *s
            })
        })
        .count();
    kernel == 1
}

#[test]
fn s4_recognition_matches_sylow_model() {
    let g95 = standard_group(G95_5, r(5)).unwrap();
    let g7 = standard_group(G7_13, r(13)).unwrap();
    for g in [&g95, &g7] {
        let perms = projective_permutations(g);
        assert!(is_s4_by_sylow_action(&perms));
        assert_eq!(projective_image(g).class, ProjectiveClass::S4);
        assert_eq!(perms.iter().filter(|p| perm_order(p) == 2).count(), 9);
    }
    // dihedral of order 24
    let cnsp = standard_group(NonsplitCartanNormalizer, r(11)).unwrap();
    let perms = projective_permutations(&cnsp);
    assert_eq!(perms.len(), 24);
    assert!(!is_s4_by_sylow_action(&perms));
    assert_ne!(projective_image(&cnsp).class, ProjectiveClass::S4);
}

#[test]
fn g3_at_five_is_split() {
    // |S(G₃(5))| = 4, so it is cyclic with a generator of order 4; its
    // characteristic polynomial x² + 1 splits mod 5 as (x − 2)(x − 3)
    let s = sl2_part(&standard_group(G3, r(5)).unwrap());
    assert_eq!(s.order(), 4);
    let gen = s.elements().iter().find(|m| m.order() == 4).unwrap();
    let mut eigenlines = BTreeSet::new();
    for x in 0..5u32 {
        for y in 0..5u32 {
            if (x, y) == (0, 0) {
                continue;
            }
            let (a, b) = gen.apply((x, y));
            for lambda in [2, 3] {
                if (a, b) == ((lambda * x) % 5, (lambda * y) % 5) {
                    eigenlines.insert(ProjectivePoint::normalize((x, y), r(5)));
                }
            }
        }
    }
    assert_eq!(eigenlines.len(), 2);
    assert_eq!(fixed_lines(&s).into_iter().collect::<BTreeSet<_>>(), eigenlines);
    // the orbit-length argument needs 2(r + 1)/3 ≠ r − 1, which fails only at 5
    for p in [11, 17, 23, 29] {
        assert!(fixed_lines(&sl2_part(&standard_group(G3, r(p)).unwrap())).is_empty());
    }
}

//! Search for applicable subgroups G ≤ GL₂(F_r) that act irreducibly while
//! S(G) = G ∩ SL₂(F_r) fixes a line.
//!
//! Since det: G → F_r^× is onto with kernel S(G), every such G is
//! `⟨H, g⟩` for a reducible H ≤ SL₂ and a single g whose determinant
//! generates F_r^×. H is taken up to conjugacy inside a fixed reducible
//! reference group, and g runs over one determinant coset only.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::linaction::fixed_lines;
use crate::matgroup::{
    are_conjugate, gl2_elements, gl2_order, is_applicable, sl2_part, CodeSet, ConjugacyClassifier,
    Mat2, MatrixGroup,
};
use crate::modfield::PrimeModulus;

/// Largest modulus the exhaustive searches accept.
pub const MAX_SEARCH_MODULUS: u32 = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("search is limited to r <= {MAX_SEARCH_MODULUS}, got {0}")]
    RangeExceeded(u32),
    #[error("groups live over different fields (F_{0} vs F_{1})")]
    ModulusMismatch(u32, u32),
}

fn check_range(r: PrimeModulus) -> Result<(), GateError> {
    if r.get() > MAX_SEARCH_MODULUS {
        Err(GateError::RangeExceeded(r.get()))
    } else {
        Ok(())
    }
}

/// Upper-triangular matrices of determinant 1, of order r(r − 1).
pub fn sl2_borel(r: PrimeModulus) -> MatrixGroup {
    let g = r.primitive_root();
    let gens = [
        Mat2::new([1, 1, 0, 1], r).unwrap(),
        Mat2::diag(g, g.inverse().unwrap()).unwrap(),
    ];
    MatrixGroup::close(&gens).unwrap()
}

/// Every subgroup of a small group, as literal element sets.
pub fn all_subgroups(ambient: &MatrixGroup) -> Vec<MatrixGroup> {
    let r = ambient.modulus();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let trivial = MatrixGroup::trivial(r);
    seen.insert(codes(&trivial));
    let mut out = vec![trivial];
    let mut i = 0;
    while i < out.len() {
        let k = out[i].clone();
        for x in ambient.elements() {
            if k.contains(x) {
                continue;
            }
            let j = k.join(&[*x]);
            if seen.insert(codes(&j)) {
                out.push(j);
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    out
}

fn codes(g: &MatrixGroup) -> Vec<u32> {
    g.elements().iter().map(Mat2::code).collect()
}

/// Subgroups of SL₂(F_r) that fix a line, one per GL₂(F_r)-conjugacy class.
pub fn reducible_sl2_candidates(r: PrimeModulus) -> Result<Vec<MatrixGroup>, GateError> {
    check_range(r)?;
    Ok(candidates_in(&sl2_borel(r)))
}

fn candidates_in(reference: &MatrixGroup) -> Vec<MatrixGroup> {
    let mut cls = ConjugacyClassifier::new();
    for h in all_subgroups(reference) {
        cls.insert(h);
    }
    cls.into_reps()
}

/// Proper, applicable, irreducible, with reducible SL₂-part.
pub fn is_gate_group(g: &MatrixGroup) -> bool {
    (g.order() as u64) < gl2_order(g.modulus())
        && is_applicable(g)
        && fixed_lines(g).is_empty()
        && !fixed_lines(&sl2_part(g)).is_empty()
}

#[derive(Debug, Clone)]
pub struct GateGroupResult {
    pub r: PrimeModulus,
    pub groups: Vec<MatrixGroup>,
    pub indices: Vec<u64>,
    /// `(i, j)` with `groups[i] = ⟨−I, groups[j]⟩`.
    pub plus_minus_pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateGroupSummary {
    pub order: usize,
    pub index: u64,
    pub sl2_order: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateSearchSummary {
    pub r: u32,
    pub groups: Vec<GateGroupSummary>,
    pub plus_minus_pairs: Vec<(usize, usize)>,
}

impl GateGroupResult {
    pub fn summary(&self) -> GateSearchSummary {
        GateSearchSummary {
            r: self.r.get(),
            groups: self
                .groups
                .iter()
                .zip(&self.indices)
                .map(|(g, &index)| GateGroupSummary {
                    order: g.order(),
                    index,
                    sl2_order: sl2_part(g).order(),
                    generators: g.generators().iter().map(Mat2::to_string).collect(),
                })
                .collect(),
            plus_minus_pairs: self.plus_minus_pairs.clone(),
        }
    }
}

/// The full search, with reducible subgroups taken inside the upper
/// triangular determinant-1 group.
pub fn find_gate_groups(r: PrimeModulus) -> Result<GateGroupResult, GateError> {
    check_range(r)?;
    Ok(search_from(r, candidates_in(&sl2_borel(r))))
}

/// Same search, but with `m·B·m⁻¹` as the reducibility reference.
pub fn find_gate_groups_with_reference(r: PrimeModulus, m: &Mat2) -> Result<GateGroupResult, GateError> {
    check_range(r)?;
    if m.modulus() != r {
        return Err(GateError::ModulusMismatch(r.get(), m.modulus().get()));
    }
    Ok(search_from(r, candidates_in(&sl2_borel(r).conjugate(m))))
}

fn search_from(r: PrimeModulus, candidates: Vec<MatrixGroup>) -> GateGroupResult {
    let a = r.primitive_root();
    let coset: Vec<Mat2> = gl2_elements(r).into_iter().filter(|g| g.det() == a).collect();
    let mut cls = ConjugacyClassifier::new();
    for h in &candidates {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let hs = h.code_set();
        for g in &coset {
            if !hs.contains(&g.pow(r.get() as u64 - 1)) || !h.is_normalized_by(g) {
                continue;
            }
            let big = h.join(&[*g]);
            if !seen.insert(codes(&big)) {
                continue;
            }
            if sl2_part(&big) == *h && is_gate_group(&big) {
                cls.insert(big);
            }
        }
    }
    let mut groups = cls.into_reps();
    groups.sort_by(|x, y| y.order().cmp(&x.order()).then_with(|| x.elements().cmp(y.elements())));

    // make ± relations hold literally, not just up to conjugacy
    let minus = Mat2::scalar(r.element(-1));
    let mut plus_minus_pairs = Vec::new();
    for j in 0..groups.len() {
        if groups[j].contains(&minus) {
            continue;
        }
        let pm = groups[j].join(&[minus]);
        for i in 0..groups.len() {
            if i != j && are_conjugate(&groups[i], &pm).is_some() {
                groups[i] = pm.clone();
                plus_minus_pairs.push((i, j));
            }
        }
    }
    let indices = groups.iter().map(|g| g.index()).collect();
    GateGroupResult { r, groups, indices, plus_minus_pairs }
}

/// Whether `g` is literally the closure of `h ∪ {−I}`.
pub fn plus_minus_related(g: &MatrixGroup, h: &MatrixGroup) -> Result<bool, GateError> {
    if g.modulus() != h.modulus() {
        return Err(GateError::ModulusMismatch(g.modulus().get(), h.modulus().get()));
    }
    let minus = Mat2::scalar(g.modulus().element(-1));
    Ok(*g == h.join(&[minus]))
}

/// Conjugacy classes of subgroups of GL₂(F_r) generated by few elements.
#[derive(Debug, Clone)]
pub struct SubgroupClasses {
    pub reps: Vec<MatrixGroup>,
    /// Number of classes generated by at most k elements, for k = 1, 2, ...
    pub classes_per_level: Vec<usize>,
    /// The last level added nothing, so `reps` is every subgroup.
    pub stabilized: bool,
}

/// Enumerates subgroups of GL₂(F_r) up to conjugacy by adjoining one
/// element at a time to each class found at the previous level, stopping
/// when a level adds no new class or after `max_level` levels.
pub fn subgroup_classes(r: PrimeModulus, max_level: usize) -> Result<SubgroupClasses, GateError> {
    check_range(r)?;
    let gl = gl2_elements(r);
    let half = gl.len() / 2;
    let mut cls = ConjugacyClassifier::new();
    cls.insert(MatrixGroup::trivial(r));
    let (whole, _) = cls.insert(MatrixGroup::gl2(r));
    let mut frontier = vec![0usize];
    let mut classes_per_level = Vec::new();
    let mut stabilized = false;
    for _ in 0..max_level {
        let mut next = Vec::new();
        for &ki in frontier.iter().filter(|&&ki| ki != whole) {
            let k = cls.reps()[ki].clone();
            let mut seen = HashSet::new();
            for x in join_orbit_reps(&k, &gl) {
                let mut gens = k.effective_generators().to_vec();
                gens.push(x);
                // past index 2 the closure is everything, already recorded
                let Some(g) = MatrixGroup::close_bounded(&gens, half) else {
                    continue;
                };
                if seen.insert(codes(&g)) {
                    let (idx, new) = cls.insert(g);
                    if new {
                        next.push(idx);
                    }
                }
            }
        }
        classes_per_level.push(cls.len());
        if next.is_empty() {
            stabilized = true;
            break;
        }
        frontier = next;
    }
    Ok(SubgroupClasses { reps: cls.into_reps(), classes_per_level, stabilized })
}

/// Outcome of the exhaustive cross-check of [`find_gate_groups`].
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub r: PrimeModulus,
    pub classes_per_level: Vec<usize>,
    pub stabilized: bool,
    pub gate_groups: Vec<MatrixGroup>,
}

/// Filters gate groups out of the generator-level enumeration, which does
/// not use the H-and-coset factorization of [`find_gate_groups`].
pub fn exhaustive_gate_groups(r: PrimeModulus, max_level: usize) -> Result<OracleReport, GateError> {
    let all = subgroup_classes(r, max_level)?;
    let gate_groups = all.reps.into_iter().filter(is_gate_group).collect();
    Ok(OracleReport { r, classes_per_level: all.classes_per_level, stabilized: all.stabilized, gate_groups })
}

/// One x from each class of `{n·k·x·k'·n⁻¹}` (n normalizing K, k, k' in K)
/// outside K; `⟨K, x⟩` is constant up to conjugacy on each class.
fn join_orbit_reps(k: &MatrixGroup, gl: &[Mat2]) -> Vec<Mat2> {
    let r = k.modulus();
    let normalizer: Vec<Mat2> = gl.iter().copied().filter(|n| k.is_normalized_by(n)).collect();
    let ngens = MatrixGroup::from_elements(r, normalizer).expect("normalizer is a group");
    let conj: Vec<(Mat2, Mat2)> = ngens.generators().iter().map(|n| (*n, n.inverse())).collect();
    let kgens = k.effective_generators();
    let mut seen = k.code_set();
    let mut reps = Vec::new();
    for x in gl {
        if !seen.insert(x) {
            continue;
        }
        reps.push(*x);
        let mut stack = vec![*x];
        while let Some(y) = stack.pop() {
            let mut push = |z: Mat2, seen: &mut CodeSet| {
                if seen.insert(&z) {
                    stack.push(z);
                }
            };
            for (n, ni) in &conj {
                push(y.conjugate_by(n, ni), &mut seen);
            }
            for kk in kgens {
                push(kk.mul(&y), &mut seen);
                push(y.mul(kk), &mut seen);
            }
        }
    }
    reps
}

/// Pairs up two lists of groups by conjugacy; true iff they describe the
/// same set of classes.
pub fn same_classes(a: &[MatrixGroup], b: &[MatrixGroup]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = BTreeSet::new();
    a.iter().all(|g| {
        match (0..b.len()).find(|j| !used.contains(j) && are_conjugate(g, &b[*j]).is_some()) {
            Some(j) => {
                used.insert(j);
                true
            }
            None => false,
        }
    })
}

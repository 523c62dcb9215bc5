//! 2×2 matrices over F_r and finite subgroups of GL₂(F_r).
//!
//! A [`MatrixGroup`] stores its full element list, sorted by the packed
//! entry code (which orders matrices lexicographically by
//! `(a11, a12, a21, a22)`), together with a small generating set. Groups in
//! this crate never exceed |GL₂(F_97)| elements and in practice stay far
//! below, so materializing everything keeps every predicate a direct scan.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use thiserror::Error;

use crate::modfield::{FieldElement, PrimeModulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("matrices live over different fields (F_{0} vs F_{1})")]
    ModulusMismatch(u32, u32),
    #[error("matrix is singular")]
    Singular,
    #[error("a group needs at least one generator")]
    EmptyGenerators,
    #[error("element set is not closed under multiplication")]
    NotClosed,
    #[error("cannot parse matrix {0:?}: expected \"[[a,b],[c,d]] mod r\"")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] crate::modfield::FieldError),
}

/// An invertible 2×2 matrix over F_r.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Mat2 {
    e: [u8; 4],
    r: PrimeModulus,
}

impl Mat2 {
    /// Builds `[[a, b], [c, d]]` reduced mod r; fails if the determinant is 0.
    pub fn new(entries: [i64; 4], r: PrimeModulus) -> Result<Mat2, GroupError> {
        let n = r.get() as i64;
        let e = entries.map(|x| x.rem_euclid(n) as u8);
        let m = Mat2 { e, r };
        if m.det_raw() == 0 {
            return Err(GroupError::Singular);
        }
        Ok(m)
    }

    #[inline]
    fn from_raw(e: [u8; 4], r: PrimeModulus) -> Mat2 {
        Mat2 { e, r }
    }

    pub fn identity(r: PrimeModulus) -> Mat2 {
        Mat2::from_raw([1, 0, 0, 1], r)
    }

    /// The scalar matrix `s·I`; `s` must be a unit.
    pub fn scalar(s: FieldElement) -> Mat2 {
        assert!(!s.is_zero(), "scalar matrix needs a unit");
        let v = s.value() as u8;
        Mat2::from_raw([v, 0, 0, v], s.modulus())
    }

    pub fn diag(a: FieldElement, b: FieldElement) -> Result<Mat2, GroupError> {
        Mat2::new([a.value() as i64, 0, 0, b.value() as i64], a.modulus())
    }

    pub fn antidiag(a: FieldElement, b: FieldElement) -> Result<Mat2, GroupError> {
        Mat2::new([0, a.value() as i64, b.value() as i64, 0], a.modulus())
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.r
    }

    /// Entries in row-major order as field elements.
    pub fn entries(&self) -> [FieldElement; 4] {
        self.e.map(|x| self.r.element(x as i64))
    }

    #[inline]
    pub fn raw(&self) -> [u8; 4] {
        self.e
    }

    /// Packed index in `[0, r⁴)`; ordering by code is lexicographic on entries.
    #[inline]
    pub fn code(&self) -> u32 {
        let n = self.r.get();
        let [a, b, c, d] = self.e.map(u32::from);
        ((a * n + b) * n + c) * n + d
    }

    pub fn from_code(code: u32, r: PrimeModulus) -> Mat2 {
        let n = r.get();
        let d = code % n;
        let c = (code / n) % n;
        let b = (code / (n * n)) % n;
        let a = code / (n * n * n);
        Mat2::from_raw([a as u8, b as u8, c as u8, d as u8], r)
    }

    #[inline]
    fn det_raw(&self) -> u32 {
        let n = self.r.get();
        let [a, b, c, d] = self.e.map(u32::from);
        (a * d + n * n - (b * c) % (n * n)) % n
    }

    #[inline]
    pub fn det(&self) -> FieldElement {
        self.r.element(self.det_raw() as i64)
    }

    #[inline]
    pub fn trace(&self) -> FieldElement {
        self.r.element(self.e[0] as i64 + self.e[3] as i64)
    }

    /// `(trace, det)` as raw residues.
    #[inline]
    pub fn trace_det(&self) -> (u8, u8) {
        let n = self.r.get();
        (((self.e[0] as u32 + self.e[3] as u32) % n) as u8, self.det_raw() as u8)
    }

    #[inline]
    pub fn mul(&self, o: &Mat2) -> Mat2 {
        debug_assert_eq!(self.r, o.r);
        let n = self.r.get();
        let [a, b, c, d] = self.e.map(u32::from);
        let [e, f, g, h] = o.e.map(u32::from);
        Mat2::from_raw(
            [
                ((a * e + b * g) % n) as u8,
                ((a * f + b * h) % n) as u8,
                ((c * e + d * g) % n) as u8,
                ((c * f + d * h) % n) as u8,
            ],
            self.r,
        )
    }

    pub fn try_mul(&self, o: &Mat2) -> Result<Mat2, GroupError> {
        if self.r != o.r {
            return Err(GroupError::ModulusMismatch(self.r.get(), o.r.get()));
        }
        Ok(self.mul(o))
    }

    pub fn inverse(&self) -> Mat2 {
        let n = self.r.get();
        let di = self.det().inverse().expect("Mat2 is always invertible").value();
        let [a, b, c, d] = self.e.map(u32::from);
        Mat2::from_raw(
            [
                (d * di % n) as u8,
                ((n - b) * di % n) as u8,
                ((n - c) * di % n) as u8,
                (a * di % n) as u8,
            ],
            self.r,
        )
    }

    pub fn pow(&self, mut k: u64) -> Mat2 {
        let mut acc = Mat2::identity(self.r);
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let id = Mat2::identity(self.r);
        let mut x = *self;
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// `m · self · m⁻¹`.
    #[inline]
    pub fn conjugate_by(&self, m: &Mat2, m_inv: &Mat2) -> Mat2 {
        m.mul(self).mul(m_inv)
    }

    pub fn transpose(&self) -> Mat2 {
        let [a, b, c, d] = self.e;
        Mat2::from_raw([a, c, b, d], self.r)
    }

    pub fn is_scalar(&self) -> bool {
        self.e[1] == 0 && self.e[2] == 0 && self.e[0] == self.e[3]
    }

    /// Applies the matrix to a column vector.
    #[inline]
    pub fn apply(&self, v: (u32, u32)) -> (u32, u32) {
        let n = self.r.get();
        let [a, b, c, d] = self.e.map(u32::from);
        ((a * v.0 + b * v.1) % n, (c * v.0 + d * v.1) % n)
    }
}

impl PartialOrd for Mat2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.r, self.e).cmp(&(other.r, other.e))
    }
}

impl Hash for Mat2 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.r.get().hash(state);
        self.e.hash(state);
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.e;
        write!(f, "[[{a},{b}],[{c},{d}]] mod {}", self.r)
    }
}

impl FromStr for Mat2 {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GroupError::Parse(s.to_string());
        let (body, modulus) = s.rsplit_once("mod").ok_or_else(err)?;
        let r: i64 = modulus.trim().parse().map_err(|_| err())?;
        let r = PrimeModulus::new(r)?;
        let cleaned: String = body
            .chars()
            .map(|c| if c == '−' { '-' } else { c })
            .filter(|c| !c.is_whitespace() && *c != '[' && *c != ']')
            .collect();
        let nums: Vec<i64> = cleaned
            .split(',')
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| err())?;
        let entries: [i64; 4] = nums.try_into().map_err(|_| err())?;
        Mat2::new(entries, r)
    }
}

/// Every element of GL₂(F_r), in code order.
pub fn gl2_elements(r: PrimeModulus) -> Vec<Mat2> {
    let n = r.get() as u8;
    let mut out = Vec::with_capacity(gl2_order(r) as usize);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let m = Mat2::from_raw([a, b, c, d], r);
                    if m.det_raw() != 0 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// |GL₂(F_r)| = (r² − 1)(r² − r).
pub fn gl2_order(r: PrimeModulus) -> u64 {
    let n = r.get() as u64;
    (n * n - 1) * (n * n - n)
}

/// Dense membership set over the r⁴ possible matrix codes.
#[derive(Clone)]
pub struct CodeSet {
    bits: Vec<u64>,
}

impl CodeSet {
    pub fn new(r: PrimeModulus) -> CodeSet {
        let n = r.get() as usize;
        CodeSet { bits: vec![0; (n * n * n * n).div_ceil(64)] }
    }

    #[inline]
    pub fn contains(&self, m: &Mat2) -> bool {
        let c = m.code() as usize;
        self.bits[c >> 6] >> (c & 63) & 1 == 1
    }

    /// Inserts and reports whether the element was new.
    #[inline]
    pub fn insert(&mut self, m: &Mat2) -> bool {
        let c = m.code() as usize;
        let w = &mut self.bits[c >> 6];
        let bit = 1u64 << (c & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }
}

/// Closes a generating set, giving up once more than `limit` elements appear.
pub fn closure_bounded(gens: &[Mat2], r: PrimeModulus, limit: usize) -> Option<Vec<Mat2>> {
    let mut seen = CodeSet::new(r);
    let id = Mat2::identity(r);
    seen.insert(&id);
    let mut list = vec![id];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for g in gens {
            let y = x.mul(g);
            if seen.insert(&y) {
                list.push(y);
                if list.len() > limit {
                    return None;
                }
            }
        }
        i += 1;
    }
    list.sort_unstable();
    Some(list)
}

/// Conjugacy-invariant summary used to bucket groups before a full test:
/// the order and the multiset of `(trace, det)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub trace_det: Vec<((u8, u8), u32)>,
}

/// A finite subgroup of GL₂(F_r).
#[derive(Clone)]
pub struct MatrixGroup {
    modulus: PrimeModulus,
    elements: Vec<Mat2>,
    generators: Vec<Mat2>,
}

impl MatrixGroup {
    /// Smallest subgroup containing `generators`.
    pub fn close(generators: &[Mat2]) -> Result<MatrixGroup, GroupError> {
        let first = generators.first().ok_or(GroupError::EmptyGenerators)?;
        let r = first.modulus();
        if let Some(bad) = generators.iter().find(|g| g.modulus() != r) {
            return Err(GroupError::ModulusMismatch(r.get(), bad.modulus().get()));
        }
        let elements = closure_bounded(generators, r, usize::MAX).expect("unbounded closure");
        let mut gens: Vec<Mat2> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        Ok(MatrixGroup { modulus: r, elements, generators: gens })
    }

    /// Like [`MatrixGroup::close`] but returns `None` past `limit` elements.
    pub fn close_bounded(generators: &[Mat2], limit: usize) -> Option<MatrixGroup> {
        let r = generators.first()?.modulus();
        let elements = closure_bounded(generators, r, limit)?;
        Some(MatrixGroup { modulus: r, elements, generators: generators.to_vec() })
    }

    pub fn trivial(r: PrimeModulus) -> MatrixGroup {
        MatrixGroup { modulus: r, elements: vec![Mat2::identity(r)], generators: vec![] }
    }

    pub fn gl2(r: PrimeModulus) -> MatrixGroup {
        MatrixGroup::from_elements(r, gl2_elements(r)).expect("GL2 is a group")
    }

    /// Builds a group from an explicit element list, checking closure and
    /// extracting a small generating set along the way.
    pub fn from_elements(r: PrimeModulus, mut elements: Vec<Mat2>) -> Result<MatrixGroup, GroupError> {
        if elements.iter().any(|m| m.modulus() != r) {
            return Err(GroupError::ModulusMismatch(r.get(), 0));
        }
        elements.sort_unstable();
        elements.dedup();
        let mut target = CodeSet::new(r);
        for m in &elements {
            target.insert(m);
        }
        if !target.contains(&Mat2::identity(r)) {
            return Err(GroupError::NotClosed);
        }
        let mut gens: Vec<Mat2> = Vec::new();
        let mut current = CodeSet::new(r);
        current.insert(&Mat2::identity(r));
        let mut size = 1;
        // Try high-order elements first so the generating set stays short.
        let mut by_order: Vec<(u64, Mat2)> = elements.iter().map(|m| (m.order(), *m)).collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, m) in by_order {
            if size == elements.len() {
                break;
            }
            if current.contains(&m) {
                continue;
            }
            gens.push(m);
            let closed = closure_bounded(&gens, r, elements.len()).ok_or(GroupError::NotClosed)?;
            current = CodeSet::new(r);
            for x in &closed {
                if !target.contains(x) {
                    return Err(GroupError::NotClosed);
                }
                current.insert(x);
            }
            size = closed.len();
        }
        if size != elements.len() {
            return Err(GroupError::NotClosed);
        }
        Ok(MatrixGroup { modulus: r, elements, generators: gens })
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    /// Index in GL₂(F_r).
    pub fn index(&self) -> u64 {
        gl2_order(self.modulus) / self.order() as u64
    }

    #[inline]
    pub fn contains(&self, m: &Mat2) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn code_set(&self) -> CodeSet {
        let mut s = CodeSet::new(self.modulus);
        for m in &self.elements {
            s.insert(m);
        }
        s
    }

    pub fn is_subgroup_of(&self, other: &MatrixGroup) -> bool {
        self.modulus == other.modulus && self.elements.iter().all(|m| other.contains(m))
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut counts: BTreeMap<(u8, u8), u32> = BTreeMap::new();
        for m in &self.elements {
            *counts.entry(m.trace_det()).or_default() += 1;
        }
        Fingerprint { order: self.order(), trace_det: counts.into_iter().collect() }
    }

    /// Distinct determinant values, sorted.
    pub fn determinants(&self) -> Vec<u32> {
        let mut seen = vec![false; self.modulus.get() as usize];
        for m in &self.elements {
            seen[m.det().value() as usize] = true;
        }
        (0..self.modulus.get()).filter(|&d| seen[d as usize]).collect()
    }

    /// `m · G · m⁻¹`.
    pub fn conjugate(&self, m: &Mat2) -> MatrixGroup {
        let mi = m.inverse();
        let mut elements: Vec<Mat2> = self.elements.iter().map(|g| g.conjugate_by(m, &mi)).collect();
        elements.sort_unstable();
        let generators = self.generators.iter().map(|g| g.conjugate_by(m, &mi)).collect();
        MatrixGroup { modulus: self.modulus, elements, generators }
    }

    /// Generators for the closure: the stored set, or all elements if the
    /// group was built without one.
    pub(crate) fn effective_generators(&self) -> &[Mat2] {
        if self.generators.is_empty() && self.order() > 1 {
            &self.elements
        } else {
            &self.generators
        }
    }

    /// Whether `m` normalizes this group.
    pub fn is_normalized_by(&self, m: &Mat2) -> bool {
        let mi = m.inverse();
        self.effective_generators().iter().all(|g| self.contains(&g.conjugate_by(m, &mi)))
    }

    /// The closure of this group together with extra elements.
    pub fn join(&self, extra: &[Mat2]) -> MatrixGroup {
        let mut gens = self.effective_generators().to_vec();
        gens.extend_from_slice(extra);
        if gens.is_empty() {
            return MatrixGroup::trivial(self.modulus);
        }
        MatrixGroup::close(&gens).expect("shared modulus")
    }
}

impl PartialEq for MatrixGroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.elements == other.elements
    }
}

impl Eq for MatrixGroup {}

impl Hash for MatrixGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.get().hash(state);
        self.order().hash(state);
        for m in &self.elements {
            m.code().hash(state);
        }
    }
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("r", &self.modulus.get())
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// `S(G) = G ∩ SL₂(F_r)`.
pub fn sl2_part(g: &MatrixGroup) -> MatrixGroup {
    let one = g.modulus().element(1);
    let elements: Vec<Mat2> = g.elements().iter().copied().filter(|m| m.det() == one).collect();
    MatrixGroup::from_elements(g.modulus(), elements).expect("kernel of det is a subgroup")
}

/// Searches GL₂(F_r) for `m` with `m·G·m⁻¹ = H`.
pub fn are_conjugate(g: &MatrixGroup, h: &MatrixGroup) -> Option<Mat2> {
    if g.modulus() != h.modulus() || g.order() != h.order() {
        return None;
    }
    if g.fingerprint() != h.fingerprint() {
        return None;
    }
    conjugating_element(g, h)
}

/// The full scan behind [`are_conjugate`], without the invariant prefilter.
pub fn conjugating_element(g: &MatrixGroup, h: &MatrixGroup) -> Option<Mat2> {
    if g.modulus() != h.modulus() || g.order() != h.order() {
        return None;
    }
    let r = g.modulus();
    let gens = g.effective_generators();
    let hset = h.code_set();
    let n = r.get() as u8;
    // scalars act trivially, so the top row can be taken as (1, b) or (0, 1)
    let tops = (0..n).map(|b| (1, b)).chain(std::iter::once((0, 1)));
    for (a, b) in tops {
        for c in 0..n {
            for d in 0..n {
                let m = Mat2::from_raw([a, b, c, d], r);
                if m.det_raw() == 0 {
                    continue;
                }
                let mi = m.inverse();
                if gens.iter().all(|x| hset.contains(&x.conjugate_by(&m, &mi))) {
                    return Some(m);
                }
            }
        }
    }
    None
}

/// Full determinant image and an element of trace 0, determinant −1.
pub fn is_applicable(g: &MatrixGroup) -> bool {
    let r = g.modulus();
    let minus_one = r.element(-1);
    let zero = r.element(0);
    g.determinants().len() == (r.get() - 1) as usize
        && g.elements().iter().any(|m| m.trace() == zero && m.det() == minus_one)
}

/// Buckets groups by fingerprint and keeps one representative per
/// GL₂(F_r)-conjugacy class.
#[derive(Default)]
pub struct ConjugacyClassifier {
    buckets: BTreeMap<Fingerprint, Vec<usize>>,
    reps: Vec<MatrixGroup>,
}

impl ConjugacyClassifier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `g` unless a conjugate is already present; returns the index of
    /// its class representative and whether it was new.
    pub fn insert(&mut self, g: MatrixGroup) -> (usize, bool) {
        let fp = g.fingerprint();
        let bucket = self.buckets.entry(fp).or_default();
        for &i in bucket.iter() {
            if self.reps[i] == g || conjugating_element(&g, &self.reps[i]).is_some() {
                return (i, false);
            }
        }
        let idx = self.reps.len();
        bucket.push(idx);
        self.reps.push(g);
        (idx, true)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[MatrixGroup] {
        &self.reps
    }

    pub fn into_reps(self) -> Vec<MatrixGroup> {
        self.reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    fn m(e: [i64; 4], n: i64) -> Mat2 {
        Mat2::new(e, r(n)).unwrap()
    }

    #[test]
    fn algebra_examples() {
        let x = m([3, 1, 4, 1], 7);
        let id = Mat2::identity(r(7));
        assert_eq!(id.mul(&x), x);
        assert_eq!(m([0, 1, -1, 0], 7).trace().value(), 0);
        assert_eq!(m([2, 0, 0, 3], 13).det().value(), 6);
        assert_eq!(x.mul(&x.inverse()), id);
        assert_eq!(
            x.try_mul(&m([1, 0, 0, 1], 5)),
            Err(GroupError::ModulusMismatch(7, 5))
        );
        assert_eq!(Mat2::new([1, 2, 2, 4], r(7)), Err(GroupError::Singular));
    }

    #[test]
    fn parse_and_display() {
        let x: Mat2 = "[[1,-1],[2,3]] mod 7".parse().unwrap();
        assert_eq!(x.to_string(), "[[1,6],[2,3]] mod 7");
        assert_eq!(x.to_string().parse::<Mat2>().unwrap(), x);
        assert!("[[1,2],[3]] mod 7".parse::<Mat2>().is_err());
        assert!("[[1,0],[0,1]] mod 9".parse::<Mat2>().is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(MatrixGroup::close(&[Mat2::identity(r(7))]).unwrap().order(), 1);
        assert_eq!(MatrixGroup::close(&[m([0, 1, -1, 0], 5)]).unwrap().order(), 4);
        let g = r(5).primitive_root().value() as i64;
        let full = MatrixGroup::close(&[m([1, 1, 0, 1], 5), m([g, 0, 0, 1], 5)]).unwrap();
        // unipotent part times one diagonal torus factor; the swap fills the rest
        assert_eq!(full.order(), 20);
        let full = full.join(&[m([0, 1, 1, 0], 5)]);
        assert_eq!(full.order() as u64, gl2_order(r(5)));
        assert_eq!(MatrixGroup::close(&[]), Err(GroupError::EmptyGenerators));
        assert!(MatrixGroup::close(&[m([1, 1, 0, 1], 5), m([1, 1, 0, 1], 7)]).is_err());
    }

    #[test]
    fn sl2_and_applicability() {
        let gl = MatrixGroup::gl2(r(5));
        assert_eq!(sl2_part(&gl).order(), 120);
        assert!(is_applicable(&MatrixGroup::gl2(r(7))));
        assert!(!is_applicable(&sl2_part(&MatrixGroup::gl2(r(7)))));
    }

    #[test]
    fn conjugacy_examples() {
        let diag: Vec<Mat2> = gl2_elements(r(5)).into_iter().filter(|x| x.raw()[1] == 0 && x.raw()[2] == 0).collect();
        let cs = MatrixGroup::from_elements(r(5), diag).unwrap();
        let transposed =
            MatrixGroup::from_elements(r(5), cs.elements().iter().map(Mat2::transpose).collect()).unwrap();
        assert!(are_conjugate(&cs, &transposed).is_some());
        let x = m([2, 1, 1, 1], 5);
        let conj = cs.conjugate(&x);
        let w = are_conjugate(&cs, &conj).unwrap();
        assert_eq!(cs.conjugate(&w), conj);
        let upper = MatrixGroup::close(&[m([1, 1, 0, 1], 5)]).unwrap();
        let scal = MatrixGroup::close(&[m([2, 0, 0, 2], 5)]).unwrap();
        assert!(are_conjugate(&upper, &scal).is_none());
    }

    #[test]
    fn from_elements_rejects_non_groups() {
        let set = vec![Mat2::identity(r(5)), m([1, 1, 0, 1], 5)];
        assert_eq!(MatrixGroup::from_elements(r(5), set).unwrap_err(), GroupError::NotClosed);
    }
}

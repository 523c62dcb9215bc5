//! Certifying that a mod-r image is all of GL₂(F_r) from Frobenius data.
//!
//! Each good prime q ≠ r contributes the pair `(a_q mod r, q mod r)`, the
//! trace and determinant of a Frobenius element. The image is certified
//! surjective once the samples contain
//!
//! 1. an element with tr ≠ 0 and tr² − 4det a nonzero non-square,
//! 2. an element with tr ≠ 0 and tr² − 4det a nonzero square,
//! 3. an element with u = tr²/det outside {0, 1, 2, 4} and u² − 3u + 1 ≠ 0,
//!
//! and the determinants generate F_r^×. The first two rule out Borel and
//! Cartan normalizers; the third rules out images whose projective image
//! is A₄, S₄ or A₅, since u encodes the projective order of the element.

use std::collections::BTreeSet;

use serde::Serialize;

use super::curve::{trace_from_ints, CurveModel};
use super::CurveError;
use crate::gatefinder::subgroup_classes;
use crate::matgroup::{gl2_order, MatrixGroup};
use crate::modfield::{is_prime_u64, is_square, PrimeModulus};

pub const DEFAULT_SAMPLE_BOUND: u64 = 10_000;

/// Which of the certification conditions a set of `(trace, det)` pairs meets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CriteriaFlags {
    pub nonsplit_element: bool,
    pub split_element: bool,
    pub non_exceptional_element: bool,
    pub determinants_generate: bool,
}

impl CriteriaFlags {
    pub fn certifies(&self) -> bool {
        self.nonsplit_element && self.split_element && self.non_exceptional_element && self.determinants_generate
    }

    /// The weaker rule without the projective-order condition.
    pub fn certifies_without_exceptional_check(&self) -> bool {
        self.nonsplit_element && self.split_element && self.determinants_generate
    }
}

/// Incremental evaluation of the conditions over samples mod r.
#[derive(Debug, Clone)]
pub struct CriteriaTracker {
    r: PrimeModulus,
    flags: CriteriaFlags,
    det_subgroup: BTreeSet<u32>,
}

impl CriteriaTracker {
    pub fn new(r: PrimeModulus) -> Self {
        CriteriaTracker { r, flags: CriteriaFlags::default(), det_subgroup: BTreeSet::from([1]) }
    }

    pub fn flags(&self) -> CriteriaFlags {
        self.flags
    }

    /// Records one pair; returns which previously unmet conditions it meets.
    pub fn add(&mut self, trace: u32, det: u32) -> CriteriaFlags {
        let r = self.r;
        let n = r.get();
        let (t, d) = (r.element(trace as i64), r.element(det as i64));
        let before = self.flags;
        if d.is_zero() {
            return CriteriaFlags::default();
        }
        let disc = t * t - r.element(4) * d;
        if !t.is_zero() && !disc.is_zero() {
            if is_square(disc) {
                self.flags.split_element = true;
            } else {
                self.flags.nonsplit_element = true;
            }
        }
        let u = t * t * d.inverse().unwrap();
        let bad = [0, 1, 2, 4].contains(&u.value()) || (u * u - r.element(3) * u + r.element(1)).is_zero();
        if !bad {
            self.flags.non_exceptional_element = true;
        }
        if !self.det_subgroup.contains(&d.value()) {
            // close the subgroup of F_r^× under multiplication by d
            let mut frontier: Vec<u32> = self.det_subgroup.iter().copied().collect();
            while let Some(x) = frontier.pop() {
                let y = (x as u64 * d.value() as u64 % n as u64) as u32;
                if self.det_subgroup.insert(y) {
                    frontier.push(y);
                }
            }
        }
        self.flags.determinants_generate = self.det_subgroup.len() == (n - 1) as usize;
        CriteriaFlags {
            nonsplit_element: self.flags.nonsplit_element && !before.nonsplit_element,
            split_element: self.flags.split_element && !before.split_element,
            non_exceptional_element: self.flags.non_exceptional_element && !before.non_exceptional_element,
            determinants_generate: self.flags.determinants_generate && !before.determinants_generate,
        }
    }
}

pub fn criteria_for_pairs(r: PrimeModulus, pairs: impl IntoIterator<Item = (u32, u32)>) -> CriteriaFlags {
    let mut t = CriteriaTracker::new(r);
    for (a, b) in pairs {
        t.add(a, b);
    }
    t.flags()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurjectivityVerdict {
    CertifiedSurjective,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurjectivityCertificate {
    pub r: u32,
    pub verdict: SurjectivityVerdict,
    pub flags: CriteriaFlags,
    /// Good primes examined.
    pub samples: usize,
    /// The primes whose Frobenius pairs first met each condition, in the
    /// order nonsplit, split, non-exceptional, determinants.
    pub witnesses: [Option<u64>; 4],
}

/// Scans good primes q ≤ `sample_bound`, q ≠ r, stopping at the first
/// prime that completes the certificate.
pub fn surjectivity_certificate(
    e: &CurveModel,
    r: PrimeModulus,
    sample_bound: u64,
) -> Result<SurjectivityCertificate, CurveError> {
    if r.get() < 5 {
        return Err(CurveError::ModulusTooSmall(r.get()));
    }
    let ints = e.integer_coefficients()?;
    let disc = e.discriminant()?;
    let mut tracker = CriteriaTracker::new(r);
    let mut witnesses = [None; 4];
    let mut samples = 0;
    let n = r.get() as i64;
    for q in (3..=sample_bound).filter(|&q| is_prime_u64(q) && q != n as u64) {
        let Some(a) = trace_from_ints(&ints, disc.numer(), q) else {
            continue;
        };
        samples += 1;
        let fresh = tracker.add(a.rem_euclid(n) as u32, (q as i64 % n) as u32);
        let news = [fresh.nonsplit_element, fresh.split_element, fresh.non_exceptional_element, fresh.determinants_generate];
        for (w, new) in witnesses.iter_mut().zip(news) {
            if new {
                *w = Some(q);
            }
        }
        if tracker.flags().certifies() {
            break;
        }
    }
    if samples == 0 {
        return Err(CurveError::InsufficientSamples(sample_bound));
    }
    let flags = tracker.flags();
    let verdict = if flags.certifies() {
        SurjectivityVerdict::CertifiedSurjective
    } else {
        SurjectivityVerdict::Inconclusive
    };
    Ok(SurjectivityCertificate { r: r.get(), verdict, flags, samples, witnesses })
}

/// Brute-force check of the rule: no proper subgroup among the classes
/// generated by at most `max_generators` elements has a `(trace, det)` set
/// meeting all conditions.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    pub r: PrimeModulus,
    pub classes_checked: usize,
    /// Proper subgroups passing the full rule (should be empty).
    pub violations: Vec<MatrixGroup>,
    /// Proper subgroups passing the rule without the projective-order
    /// condition.
    pub violations_without_exceptional_check: Vec<MatrixGroup>,
}

pub fn certificate_soundness_oracle(r: PrimeModulus, max_generators: usize) -> Result<SoundnessReport, CurveError> {
    let classes = subgroup_classes(r, max_generators).map_err(|e| CurveError::Undefined(e.to_string()))?;
    let full = gl2_order(r) as usize;
    let mut violations = Vec::new();
    let mut weak = Vec::new();
    let mut checked = 0;
    for g in classes.reps.into_iter().filter(|g| g.order() < full) {
        checked += 1;
        let pairs: BTreeSet<(u8, u8)> = g.elements().iter().map(|m| m.trace_det()).collect();
        let flags = criteria_for_pairs(r, pairs.into_iter().map(|(t, d)| (t as u32, d as u32)));
        if flags.certifies() {
            violations.push(g.clone());
        }
        if flags.certifies_without_exceptional_check() {
            weak.push(g);
        }
    }
    Ok(SoundnessReport { r, classes_checked: checked, violations, violations_without_exceptional_check: weak })
}

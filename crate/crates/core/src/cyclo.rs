//! Quadratic and cubic subfields of Q(ζ_p), the rational CM j-invariants,
//! and the decisions built on them: full 2-torsion over Q(ζ_r) and
//! CM r-isogenies.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::modfield::{is_prime_u64, PrimeModulus};
use crate::ratcurves::cubic::{clear_denominators, Cubic, CubicShape};
use crate::ratcurves::{curve_from_j, squarefree_part, two_division_cubic, CubicFactorType, CurveError, ExactRational};

const CM_TABLE: &str = include_str!("../data/cm_table.txt");
const CM_TABLE_SHA256: &str = "716859f66ba9be3b2e6616ea58a8459b34e4996196c18589c8fe4a4e3d9c4d37";

/// Primes scanned for a Frobenius mismatch in the cyclic cubic case.
pub const CYCLIC_SAMPLE_BOUND: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("j = {0} has no complex multiplication")]
    NotCmCurve(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CyclotomicContext {
    pub p: u32,
    /// `(−1)^((p−1)/2)·p`, so that Q(√pstar) ⊂ Q(ζ_p).
    pub pstar: i64,
}

impl CyclotomicContext {
    pub fn new(p: PrimeModulus) -> Self {
        let v = p.get();
        let pstar = if v % 4 == 1 { v as i64 } else { -(v as i64) };
        CyclotomicContext { p: v, pstar }
    }
}

pub fn quadratic_subfield(p: PrimeModulus) -> i64 {
    CyclotomicContext::new(p).pstar
}

/// Whether `q` becomes a square in Q(ζ_p): its class must be 1 or p*.
pub fn is_square_in_cyclotomic(q: &ExactRational, p: PrimeModulus) -> Result<bool, CycloError> {
    let ctx = CyclotomicContext::new(p);
    let d = squarefree_part(q)?;
    Ok(d.is_trivial() || d.to_i64() == Some(ctx.pstar))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoTorsionVerdict {
    Yes,
    No,
    UndeterminedCyclicCubic,
}

/// Splitting of the 2-division cubic at one prime q ≡ 1 (mod r).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitSample {
    pub q: u64,
    pub roots: u8,
}

/// Evidence gathered when the 2-division field is cyclic cubic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicCubicDiagnostics {
    pub cubic_discriminant: ExactRational,
    /// First few good primes q ≡ 1 (mod r); all must split completely if
    /// the field lies in Q(ζ_r).
    pub one_mod_r_samples: Vec<SplitSample>,
    /// A good prime whose splitting in the cubic field differs from its
    /// splitting in the cubic subfield of Q(ζ_r).
    pub mismatch_prime: Option<u64>,
    pub primes_scanned: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullTwoTorsion {
    pub verdict: TwoTorsionVerdict,
    pub cubic: CubicFactorType,
    pub diagnostics: Option<CyclicCubicDiagnostics>,
}

/// Whether E[2] ⊂ E(Q(ζ_r)) for curves with invariant `j`.
pub fn full_two_torsion_over_cyclotomic(j: &ExactRational, r: PrimeModulus) -> Result<FullTwoTorsion, CycloError> {
    let ctx = CyclotomicContext::new(r);
    let cubic = two_division_cubic(j)?;
    let square_disc = cubic.disc_class.is_trivial();
    let (verdict, diagnostics) = match cubic.shape {
        CubicShape::ThreeRationalRoots => (TwoTorsionVerdict::Yes, None),
        CubicShape::OneRationalRoot => {
            let d = cubic.disc_class.to_i64();
            (if d == Some(ctx.pstar) { TwoTorsionVerdict::Yes } else { TwoTorsionVerdict::No }, None)
        }
        // an S₃ extension is not abelian
        CubicShape::Irreducible if !square_disc => (TwoTorsionVerdict::No, None),
        // Q(ζ_r) has a cubic subfield only when 3 | r − 1
        CubicShape::Irreducible if (ctx.p - 1) % 3 != 0 => (TwoTorsionVerdict::No, None),
        CubicShape::Irreducible => {
            let diag = cyclic_cubic_diagnostics(j, r, CYCLIC_SAMPLE_BOUND);
            let v = if diag.mismatch_prime.is_some() {
                TwoTorsionVerdict::No
            } else {
                TwoTorsionVerdict::UndeterminedCyclicCubic
            };
            (v, Some(diag))
        }
    };
    Ok(FullTwoTorsion { verdict, cubic, diagnostics })
}

/// Compares the splitting of the cyclic cubic 2-division field with that of
/// the unique cubic subfield of Q(ζ_r), where q splits iff q is a cube mod r.
/// Any disagreement shows the two fields differ.
fn cyclic_cubic_diagnostics(j: &ExactRational, r: PrimeModulus, bound: u64) -> CyclicCubicDiagnostics {
    let e = curve_from_j(j);
    let [_, _, _, a4, a6] = e.coefficients();
    let c: Cubic = [a6.clone(), a4.clone(), ExactRational::zero(), ExactRational::one()];
    let z = clear_denominators(&c);
    let disc = cubic_discriminant(&z);
    let n = r.get() as u64;
    let mut samples = Vec::new();
    let mut mismatch = None;
    let mut scanned = 0;
    for q in (2..=bound).filter(|&q| is_prime_u64(q) && q != n) {
        let qb = BigInt::from(q);
        if (&z[3] % &qb).is_zero() || (&disc % &qb).is_zero() {
            continue;
        }
        scanned += 1;
        let roots = roots_mod(&z, q);
        let cube = r.element(q as i64).pow((n - 1) / 3).value() == 1;
        if q % n == 1 && samples.len() < 10 {
            samples.push(SplitSample { q, roots });
        }
        if (roots == 3) != cube {
            mismatch = Some(q);
            break;
        }
    }
    CyclicCubicDiagnostics {
        cubic_discriminant: ExactRational::from_int(disc),
        one_mod_r_samples: samples,
        mismatch_prime: mismatch,
        primes_scanned: scanned,
    }
}

/// `b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd` for `[d, c, b, a]`.
fn cubic_discriminant(z: &[BigInt; 4]) -> BigInt {
    let (d, c, b, a) = (&z[0], &z[1], &z[2], &z[3]);
    b * b * c * c - BigInt::from(4) * a * c * c * c - BigInt::from(4) * b * b * b * d - BigInt::from(27) * a * a * d * d
        + BigInt::from(18) * a * b * c * d
}

fn roots_mod(z: &[BigInt; 4], q: u64) -> u8 {
    let qb = BigInt::from(q);
    let red: Vec<u128> = z.iter().map(|x| x.mod_floor(&qb).to_u64().unwrap() as u128).collect();
    let q = q as u128;
    (0..q).filter(|&x| (((red[3] * x + red[2]) % q * x + red[1]) % q * x + red[0]) % q == 0).count() as u8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmRecord {
    pub j: ExactRational,
    /// Discriminant −D of the CM field.
    pub field_discriminant: i64,
}

fn sha256_hex(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_cm_table(text: &str) -> Result<Vec<CmRecord>, String> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [j, d] = fields[..] else {
            return Err(format!("line {}: expected two fields", no + 1));
        };
        let j: ExactRational = j.parse().map_err(|e| format!("line {}: {e}", no + 1))?;
        let d: i64 = d.parse().map_err(|e| format!("line {}: {e}", no + 1))?;
        out.push(CmRecord { j, field_discriminant: d });
    }
    Ok(out)
}

/// The shipped table, verified against its checksum on first use.
pub fn cm_table() -> &'static [CmRecord] {
    static TABLE: OnceLock<Vec<CmRecord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        assert_eq!(sha256_hex(CM_TABLE), CM_TABLE_SHA256, "cm_table.txt does not match its checksum");
        parse_cm_table(CM_TABLE).expect("cm_table.txt is well formed")
    })
}

pub fn cm_field_discriminant(j: &ExactRational) -> Option<i64> {
    cm_table().iter().find(|rec| rec.j == *j).map(|rec| rec.field_discriminant)
}

/// For a CM invariant, whether the curve has an r-isogeny over Q(ζ_r),
/// which happens exactly when r divides D.
pub fn cm_isogeny_over_cyclotomic(j: &ExactRational, r: PrimeModulus) -> Result<bool, CycloError> {
    let d = cm_field_discriminant(j).ok_or_else(|| CycloError::NotCmCurve(j.to_string()))?;
    Ok(d.unsigned_abs() % r.get() as u64 == 0)
}

//! Long Weierstrass models over Q and the j-invariant families.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::cubic::{rational_roots, root_free_prime, shape, Cubic, CubicShape};
use super::factor::{squarefree_part, SquareClass};
use super::rational::ExactRational;
use super::CurveError;

/// Default search bound for root-free witness primes.
pub const WITNESS_BOUND: u64 = 10_000;

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CurveModel {
    pub a1: ExactRational,
    pub a2: ExactRational,
    pub a3: ExactRational,
    pub a4: ExactRational,
    pub a6: ExactRational,
}

impl CurveModel {
    /// Rejects singular models.
    pub fn new(a: [ExactRational; 5]) -> Result<CurveModel, CurveError> {
        let [a1, a2, a3, a4, a6] = a;
        let e = CurveModel { a1, a2, a3, a4, a6 };
        e.discriminant()?;
        Ok(e)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<CurveModel, CurveError> {
        CurveModel::new(a.map(ExactRational::from))
    }

    /// `y² = x³ + A·x + B`.
    pub fn short(a: ExactRational, b: ExactRational) -> Result<CurveModel, CurveError> {
        let z = ExactRational::zero;
        CurveModel::new([z(), z(), z(), a, b])
    }

    pub fn coefficients(&self) -> [&ExactRational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients().iter().all(|a| a.is_integer())
    }

    pub fn b_invariants(&self) -> [ExactRational; 4] {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + a2 * 4i64;
        let b4 = a1 * a3 + a4 * 2i64;
        let b6 = a3 * a3 + a6 * 4i64;
        let b8 = a1 * a1 * a6 + a2 * a6 * 4i64 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn c4(&self) -> ExactRational {
        let [b2, b4, _, _] = self.b_invariants();
        &b2 * &b2 - b4 * 24i64
    }

    pub fn c6(&self) -> ExactRational {
        let [b2, b4, b6, _] = self.b_invariants();
        -(&b2 * &b2 * &b2) + &b2 * &b4 * 36i64 - b6 * 216i64
    }

    fn raw_discriminant(&self) -> ExactRational {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - &b4 * &b4 * &b4 * 8i64 - &b6 * &b6 * 27i64 + &b2 * &b4 * &b6 * 9i64
    }

    pub fn discriminant(&self) -> Result<ExactRational, CurveError> {
        let d = self.raw_discriminant();
        if d.is_zero() {
            Err(CurveError::SingularCurve)
        } else {
            Ok(d)
        }
    }

    pub fn j_invariant(&self) -> ExactRational {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / &self.raw_discriminant()
    }

    /// The isomorphic short model `y² = x³ − 27c4·x − 54c6`.
    pub fn short_form(&self) -> CurveModel {
        CurveModel::short(self.c4() * -27i64, self.c6() * -54i64).expect("isomorphic to a smooth model")
    }

    /// Quadratic twist by `d` of the short form: `(d²A, d³B)`.
    pub fn quadratic_twist(&self, d: &ExactRational) -> Result<CurveModel, CurveError> {
        if d.is_zero() {
            return Err(CurveError::ZeroParameter);
        }
        let s = if self.is_short() { self.clone() } else { self.short_form() };
        CurveModel::short(&s.a4 * &(d * d), &s.a6 * &(d * &(d * d)))
    }

    /// Integer coefficients, if the model is integral.
    pub fn integer_coefficients(&self) -> Result<[BigInt; 5], CurveError> {
        if !self.is_integral() {
            return Err(CurveError::NonIntegralModel);
        }
        Ok(self.coefficients().map(|a| a.numer().clone()))
    }

    /// `a_q = q + 1 − #E(F_q)` for an odd prime `q` of good reduction of an
    /// integral model; `None` at bad primes.
    pub fn frobenius_trace(&self, q: u64) -> Result<Option<i64>, CurveError> {
        let ints = self.integer_coefficients()?;
        let disc = self.discriminant()?;
        Ok(trace_from_ints(&ints, disc.numer(), q))
    }

    /// `#E(F_q)` including the point at infinity, at a good odd prime.
    pub fn count_points(&self, q: u64) -> Result<Option<u64>, CurveError> {
        Ok(self.frobenius_trace(q)?.map(|a| (q as i64 + 1 - a) as u64))
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Frobenius trace from integer coefficients by summing Legendre symbols of
/// `4x³ + b2x² + 2b4x + b6` over F_q (q odd).
pub(crate) fn trace_from_ints(a: &[BigInt; 5], disc: &BigInt, q: u64) -> Option<i64> {
    if q < 3 || disc.mod_floor(&BigInt::from(q)).is_zero() {
        return None;
    }
    let qb = BigInt::from(q);
    let r = |x: &BigInt| x.mod_floor(&qb).to_u64().unwrap();
    let [a1, a2, a3, a4, a6] = [r(&a[0]), r(&a[1]), r(&a[2]), r(&a[3]), r(&a[4])];
    let b2 = (a1 * a1 + 4 * a2) % q;
    let b4 = (a1 * a3 + 2 * a4) % q;
    let b6 = (a3 * a3 + 4 * a6) % q;
    Some(-legendre_sum(q, [b6, (2 * b4) % q, b2, 4 % q]))
}

/// `Σ_x χ(c3x³ + c2x² + c1x + c0)` over F_q, with χ the quadratic character.
pub(crate) fn legendre_sum(q: u64, c: [u64; 4]) -> i64 {
    let n = q as usize;
    let mut chi = vec![-1i8; n];
    chi[0] = 0;
    for x in 1..n {
        chi[x * x % n] = 1;
    }
    let mut s = 0i64;
    for x in 0..q {
        let v = (((c[3] * x + c[2]) % q * x + c[1]) % q * x + c[0]) % q;
        s += chi[v as usize] as i64;
    }
    s
}

/// `y² = x³ + Ax + B` with `A = 3j(1728 − j)`, `B = 2j(1728 − j)²`, or the
/// usual models at j = 0 and 1728.
pub fn curve_from_j(j: &ExactRational) -> CurveModel {
    let k = ExactRational::from(1728);
    if j.is_zero() {
        return CurveModel::short(ExactRational::zero(), ExactRational::one()).unwrap();
    }
    if *j == k {
        return CurveModel::short(ExactRational::one(), ExactRational::zero()).unwrap();
    }
    let m = &k - j;
    let a = j * &m * 3i64;
    let b = j * &m * &m * 2i64;
    CurveModel::short(a, b).expect("nonsingular away from 0 and 1728")
}

pub fn discriminant(e: &CurveModel) -> Result<ExactRational, CurveError> {
    e.discriminant()
}

/// Square class of the discriminant of any curve with invariant `j`:
/// `Δ = −2¹²·3⁶·j²(1728 − j)³` for the model above, so the class is that
/// of `j − 1728`.
pub fn disc_square_class_of_j(j: &ExactRational) -> Result<SquareClass, CurveError> {
    let d = j - 1728i64;
    if d.is_zero() {
        return Err(CurveError::Undefined("the discriminant class is not determined by j = 1728".into()));
    }
    squarefree_part(&d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicFactorType {
    pub shape: CubicShape,
    pub disc_class: SquareClass,
    pub rational_roots: Vec<ExactRational>,
    /// A prime modulo which the cubic has no root; present when irreducible.
    pub root_free_prime: Option<u64>,
}

/// Factorization shape of the 2-division cubic `x³ + Ax + B` of
/// [`curve_from_j`], searching witness primes up to `bound`.
pub fn two_division_cubic_with_bound(j: &ExactRational, bound: u64) -> Result<CubicFactorType, CurveError> {
    let e = curve_from_j(j);
    let c: Cubic = [e.a6.clone(), e.a4.clone(), ExactRational::zero(), ExactRational::one()];
    let roots = rational_roots(&c);
    let shape = shape(&c, &roots);
    // cubic discriminant −4A³ − 27B² = Δ/16
    let disc = e.discriminant()?;
    let disc_class = if j.is_zero() || *j == ExactRational::from(1728) {
        squarefree_part(&disc)?
    } else {
        disc_square_class_of_j(j)?
    };
    let mut witness = None;
    if shape == CubicShape::Irreducible {
        witness = root_free_prime(&c, bound);
        if witness.is_none() {
            return Err(CurveError::Undecided(format!("no root and no root-free prime up to {bound} for j = {j}")));
        }
    }
    Ok(CubicFactorType { shape, disc_class, rational_roots: roots, root_free_prime: witness })
}

pub fn two_division_cubic(j: &ExactRational) -> Result<CubicFactorType, CurveError> {
    two_division_cubic_with_bound(j, WITNESS_BOUND)
}

pub fn has_rational_two_torsion(j: &ExactRational) -> Result<bool, CurveError> {
    Ok(two_division_cubic(j)?.shape != CubicShape::Irreducible)
}

/// `(t + 16)³ / t`.
pub fn two_torsion_family_j(t: &ExactRational) -> Result<ExactRational, CurveError> {
    if t.is_zero() {
        return Err(CurveError::ZeroParameter);
    }
    let s = t + 16i64;
    Ok(&s * &s * &s / t)
}

/// Every rational t with `(t + 16)³ / t = j`, i.e. the rational roots of
/// `t³ + 48t² + (768 − j)t + 4096`.
pub fn family_membership(j: &ExactRational) -> Vec<ExactRational> {
    let c: Cubic = [ExactRational::from(4096), ExactRational::from(768) - j, ExactRational::from(48), ExactRational::one()];
    rational_roots(&c)
}

fn poly(t: &ExactRational, coeffs: &[i64]) -> ExactRational {
    // highest degree first
    coeffs.iter().fold(ExactRational::zero(), |acc, &c| acc * t + c)
}

/// The rational function whose values are the j-invariants with mod-5
/// image in the exceptional group attached to r ≡ 2 (mod 3) at r = 5.
pub fn g3_family_j(t: &ExactRational) -> Result<ExactRational, CurveError> {
    let d1 = poly(t, &[1, 5, 5]);
    let d2 = poly(t, &[1, 5, 15, 25, 25]);
    if d1.is_zero() || d2.is_zero() {
        return Err(CurveError::PoleAtParameter(t.to_string()));
    }
    let n = ExactRational::from(625)
        * t.pow(3)
        * poly(t, &[1, 5, 10]).pow(3)
        * poly(t, &[2, 5, 5]).pow(3)
        * poly(t, &[4, 30, 95, 150, 100]).pow(3);
    Ok(n / (d1.pow(5) * d2.pow(5)))
}

//! Arithmetic in the prime field F_r for small odd primes r.
//!
//! Residue questions (squares, cubes) are answered by enumerating the
//! multiplicative group; with r capped at 97 this is both fast and obviously
//! correct.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest modulus accepted by [`PrimeModulus::new`].
pub const MAX_MODULUS: u32 = 97;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime in [3, {MAX_MODULUS}]")]
    CompositeModulus(i64),
    #[error("zero has no cube class")]
    ZeroInput,
    #[error("elements live in different fields (F_{0} vs F_{1})")]
    ModulusMismatch(u32, u32),
}

/// A validated odd prime `r` with `3 <= r <= 97`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u32")]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(r: i64) -> Result<Self, FieldError> {
        if !(3..=MAX_MODULUS as i64).contains(&r) || r % 2 == 0 || !is_prime_u64(r as u64) {
            return Err(FieldError::CompositeModulus(r));
        }
        Ok(PrimeModulus(r as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Every odd prime in `[lo, hi]` that is a valid modulus.
    pub fn range(lo: u32, hi: u32) -> Vec<PrimeModulus> {
        (lo..=hi.min(MAX_MODULUS))
            .filter_map(|r| PrimeModulus::new(r as i64).ok())
            .collect()
    }

    pub fn element(self, v: i64) -> FieldElement {
        FieldElement::new(v, self)
    }

    /// The smallest generator of F_r^×.
    pub fn primitive_root(self) -> FieldElement {
        let r = self.0;
        (2..r)
            .map(|g| self.element(g as i64))
            .find(|g| g.multiplicative_order() == r - 1)
            .unwrap_or_else(|| self.element(1))
    }

    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.0).map(move |v| FieldElement { value: v, modulus: self })
    }

    pub fn units(self) -> impl Iterator<Item = FieldElement> {
        (1..self.0).map(move |v| FieldElement { value: v, modulus: self })
    }
}

impl TryFrom<i64> for PrimeModulus {
    type Error = FieldError;
    fn try_from(r: i64) -> Result<Self, Self::Error> {
        PrimeModulus::new(r)
    }
}

impl From<PrimeModulus> for u32 {
    fn from(r: PrimeModulus) -> u32 {
        r.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial-division primality test, fine for the small moduli
/// and sample primes used throughout the crate.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of F_r, stored as its least non-negative residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    modulus: PrimeModulus,
}

impl FieldElement {
    pub fn new(v: i64, modulus: PrimeModulus) -> Self {
        let r = modulus.0 as i64;
        FieldElement { value: v.rem_euclid(r) as u32, modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: FieldElement) -> Result<(), FieldError> {
        if self.modulus != other.modulus {
            return Err(FieldError::ModulusMismatch(self.modulus.0, other.modulus.0));
        }
        Ok(())
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn pow(self, mut e: u64) -> FieldElement {
        let r = self.modulus.0 as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % r;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % r;
            }
            base = base * base % r;
            e >>= 1;
        }
        FieldElement { value: acc as u32, modulus: self.modulus }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<FieldElement> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus.0 as u64 - 2))
        }
    }

    /// Order in F_r^×; 0 for the zero element.
    pub fn multiplicative_order(self) -> u32 {
        if self.value == 0 {
            return 0;
        }
        let r = self.modulus.0;
        let mut x = self.value;
        let mut k = 1;
        while x != 1 {
            x = x * self.value % r;
            k += 1;
        }
        k
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, o: FieldElement) -> FieldElement {
        debug_assert_eq!(self.modulus, o.modulus);
        FieldElement { value: (self.value + o.value) % self.modulus.0, modulus: self.modulus }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, o: FieldElement) -> FieldElement {
        debug_assert_eq!(self.modulus, o.modulus);
        let r = self.modulus.0;
        FieldElement { value: (self.value + r - o.value) % r, modulus: self.modulus }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, o: FieldElement) -> FieldElement {
        debug_assert_eq!(self.modulus, o.modulus);
        FieldElement { value: self.value * o.value % self.modulus.0, modulus: self.modulus }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let r = self.modulus.0;
        FieldElement { value: (r - self.value) % r, modulus: self.modulus }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// True iff `a` is a square in F_r (zero counts as a square).
pub fn is_square(a: FieldElement) -> bool {
    a.is_zero() || a.modulus().units().any(|x| x * x == a)
}

/// The non-residue used to build non-split Cartan subgroups: −1 when
/// r ≡ 3 (mod 4), otherwise the smallest non-residue ε ≥ 2.
pub fn epsilon(r: PrimeModulus) -> FieldElement {
    if r.get() % 4 == 3 {
        return r.element(-1);
    }
    r.units()
        .skip(1)
        .find(|&e| !is_square(e))
        .expect("every odd prime field has a non-residue")
}

/// True iff the nonzero element `a` lies in (F_r^×)^3. Always true when
/// 3 does not divide r − 1.
pub fn is_cube(a: FieldElement) -> Result<bool, FieldError> {
    if a.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    Ok(a.modulus().units().any(|x| x * x * x == a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(r(7).get(), 7);
        assert_eq!(PrimeModulus::new(9), Err(FieldError::CompositeModulus(9)));
        assert_eq!(PrimeModulus::new(2), Err(FieldError::CompositeModulus(2)));
        assert!(PrimeModulus::new(101).is_err());
        assert!(PrimeModulus::new(-7).is_err());
        assert_eq!(PrimeModulus::range(3, 37).len(), 11);
    }

    #[test]
    fn squares() {
        assert!(is_square(r(5).element(1)));
        assert!(!is_square(r(5).element(2)));
        assert!(is_square(r(17).element(2)));
        assert!(is_square(r(11).element(0)));
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(r(7)).value(), 6);
        assert_eq!(epsilon(r(5)).value(), 2);
        assert_eq!(epsilon(r(13)).value(), 2);
        assert_eq!(epsilon(r(17)).value(), 3);
    }

    #[test]
    fn cubes() {
        assert!(is_cube(r(13).element(8)).unwrap());
        assert!(!is_cube(r(13).element(2)).unwrap());
        assert!(is_cube(r(5).element(3)).unwrap());
        assert_eq!(is_cube(r(5).element(0)), Err(FieldError::ZeroInput));
    }

    #[test]
    fn mismatched_moduli() {
        let a = r(5).element(2);
        let b = r(7).element(2);
        assert_eq!(a.try_mul(b), Err(FieldError::ModulusMismatch(5, 7)));
        assert_eq!(a.try_add(r(5).element(4)).unwrap().value(), 1);
    }

    #[test]
    fn residue_counts_for_all_moduli() {
        for m in PrimeModulus::range(3, MAX_MODULUS) {
            let n = m.get();
            let squares = m.units().filter(|&a| is_square(a)).count() as u32;
            assert_eq!(squares, (n - 1) / 2, "r = {n}");
            let eps = epsilon(m);
            assert!(!is_square(eps));
            if n % 4 == 3 {
                assert_eq!(eps.value(), n - 1);
            }
            let cubes = m.units().filter(|&a| is_cube(a).unwrap()).count() as u32;
            if (n - 1) % 3 != 0 {
                assert_eq!(cubes, n - 1);
            } else {
                assert_eq!(cubes, (n - 1) / 3);
            }
            assert_eq!(m.primitive_root().multiplicative_order(), n - 1);
        }
    }
}

//! Square classes in Q^×/(Q^×)² and the factoring needed to find them.
//!
//! Pipeline: trial division up to [`TRIAL_BOUND`]; then each leftover
//! cofactor is dropped if it is a perfect square, kept if it is a
//! (probable) prime, and split with Pollard rho otherwise. Rho on cofactors
//! wider than a word gives up after [`RHO_BIG_STEPS`] iterations per
//! polynomial; such cofactors are reported as incomplete.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::rational::{mulmod, ExactRational};
use super::CurveError;

pub const TRIAL_BOUND: u64 = 1_000_000;
/// Iteration budget per polynomial for multi-word Pollard rho.
pub const RHO_BIG_STEPS: u64 = 1 << 18;

/// A squarefree nonzero integer standing for its coset in Q^×/(Q^×)².
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn one() -> SquareClass {
        SquareClass(BigInt::one())
    }

    /// Small classes such as −7 or 10; checks squarefreeness by trial division.
    pub fn from_i64(d: i64) -> Option<SquareClass> {
        if d == 0 {
            return None;
        }
        let a = d.unsigned_abs();
        let mut k = 2u64;
        while k * k <= a {
            if a % (k * k) == 0 {
                return None;
            }
            k += 1;
        }
        Some(SquareClass(BigInt::from(d)))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    /// Product of classes: `ab / gcd(a, b)²`.
    pub fn mul(&self, o: &SquareClass) -> SquareClass {
        let g = self.0.gcd(&o.0);
        SquareClass(&self.0 * &o.0 / (&g * &g))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.collect_str(&self.0),
        }
    }
}

/// The squarefree integer `d` with `q / d` a nonzero rational square.
pub fn squarefree_part(q: &ExactRational) -> Result<SquareClass, CurveError> {
    if q.is_zero() {
        return Err(CurveError::ZeroInput);
    }
    let n = squarefree_of_natural(q.numer().magnitude())?;
    let d = squarefree_of_natural(q.denom().magnitude())?;
    let mut v = n.mul(&d);
    if q.is_negative() {
        v.0 = -v.0;
    }
    Ok(v)
}

fn squarefree_of_natural(n: &BigUint) -> Result<SquareClass, CurveError> {
    let mut rest = n.clone();
    let mut acc = 1u128;
    let mut cls = SquareClass::one();
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        if let Some(small) = rest.to_u64() {
            // finish in machine words
            let mut r = small;
            while p <= TRIAL_BOUND && p * p <= r {
                let mut e = 0u32;
                while r % p == 0 {
                    r /= p;
                    e += 1;
                }
                if e % 2 == 1 {
                    acc = push_prime(acc, p, &mut cls);
                }
                p += if p == 2 { 1 } else { 2 };
            }
            rest = BigUint::from(r);
            break;
        }
        let mut e = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            acc = push_prime(acc, p, &mut cls);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let cls = cls.mul(&SquareClass(BigInt::from(acc)));
    Ok(cls.mul(&squarefree_of_cofactor(&rest)?))
}

/// Multiplies a distinct prime into a word-sized accumulator, spilling into
/// `cls` before it would overflow.
fn push_prime(acc: u128, p: u64, cls: &mut SquareClass) -> u128 {
    match acc.checked_mul(p as u128) {
        Some(v) if v < 1 << 100 => v,
        _ => {
            *cls = cls.mul(&SquareClass(BigInt::from(acc)));
            p as u128
        }
    }
}

/// Squarefree part of a number with no prime factor below the trial bound
/// (or of a number that is already 1 or prime).
fn squarefree_of_cofactor(m: &BigUint) -> Result<SquareClass, CurveError> {
    if m.is_one() {
        return Ok(SquareClass::one());
    }
    let s = m.sqrt();
    if &s * &s == *m {
        return Ok(SquareClass::one());
    }
    if is_probable_prime(m) {
        return Ok(SquareClass(BigInt::from_biguint(Sign::Plus, m.clone())));
    }
    let split = match m.to_u64() {
        Some(small) => pollard_rho(small).map(BigUint::from),
        None => pollard_rho_big(m, RHO_BIG_STEPS),
    };
    if let Some(d) = split {
        let a = squarefree_of_cofactor(&d)?;
        let b = squarefree_of_cofactor(&(m / &d))?;
        return Ok(a.mul(&b));
    }
    Err(CurveError::FactorizationIncomplete(m.to_string()))
}

/// Miller–Rabin with the first twelve prime bases; exact below 3.3·10²⁴.
pub fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &b in &BASES {
        if (n % b).is_zero() {
            return *n == BigUint::from(b);
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of an odd composite `n`, by Brent's variant.
pub fn pollard_rho(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..50u64 {
        let f = |x: u64| ((mulmod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut steps = 0u64;
        while d == 1 && steps < 5_000_000 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
            steps += 1;
        }
        if d != 1 && d != n {
            return Some(d);
        }
    }
    None
}

/// Brent's rho on a multi-word odd composite, with gcds batched over 128
/// steps. `None` when `max_steps` runs out for every polynomial tried.
pub fn pollard_rho_big(n: &BigUint, max_steps: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for c in 1..4u32 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let (mut x, mut ys) = (y.clone(), y.clone());
        let mut acc = one.clone();
        let (mut g, mut len, mut steps) = (one.clone(), 1u64, 0u64);
        while g.is_one() && steps < max_steps {
            x = y.clone();
            for _ in 0..len {
                y = f(&y);
            }
            let mut k = 0;
            while k < len && g.is_one() {
                ys = y.clone();
                for _ in 0..128.min(len - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    acc = acc * diff % n;
                }
                g = acc.gcd(n);
                k += 128;
            }
            steps += 2 * len;
            len *= 2;
        }
        if g == *n {
            // the batch overshot; replay one step at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// Sign-aware squarefree part of an integer, for callers holding a BigInt.
pub fn squarefree_part_int(n: &BigInt) -> Result<SquareClass, CurveError> {
    squarefree_part(&ExactRational::from_int(n.clone()))
}

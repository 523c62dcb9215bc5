//! Rational roots of cubics with rational coefficients.
//!
//! Roots are found exactly: the cubic is scaled to a monic integer cubic,
//! whose integer roots are located by bisection on the (at most three)
//! intervals where it is monotone. Absence of roots is separately
//! witnessed by a prime modulo which the cubic has no root.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::rational::{mulmod, ExactRational};
use crate::modfield::is_prime_u64;

/// Coefficients `[c0, c1, c2, c3]` of `c3·x³ + c2·x² + c1·x + c0`.
pub type Cubic = [ExactRational; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicShape {
    ThreeRationalRoots,
    OneRationalRoot,
    Irreducible,
}

/// Integer coefficients with the same roots.
pub fn clear_denominators(c: &Cubic) -> [BigInt; 4] {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * &ExactRational::from_int(l.clone())).numer().clone()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    [&ints[0] / &g, &ints[1] / &g, &ints[2] / &g, &ints[3] / &g]
}

fn eval(c: &[BigInt; 4], y: &BigInt) -> BigInt {
    ((&c[3] * y + &c[2]) * y + &c[1]) * y + &c[0]
}

/// Integer roots of a monic integer cubic `[s, q, p, 1]`.
pub fn monic_integer_roots(c: &[BigInt; 4]) -> Vec<BigInt> {
    assert!(c[3].is_one(), "cubic must be monic");
    let bound = c[..3].iter().map(|x| x.abs()).max().unwrap() + BigInt::one();
    let mut roots = Vec::new();
    // derivative 3y² + 2py + q; its real roots split the monotone pieces
    let disc: BigInt = &c[2] * &c[2] * BigInt::from(4) - &c[1] * BigInt::from(12);
    let mut pieces = Vec::new();
    if disc.is_negative() {
        pieces.push((-&bound, bound.clone()));
    } else {
        let s: BigInt = Roots::sqrt(&disc);
        let six = BigInt::from(6);
        let p2: BigInt = -(&c[2] * BigInt::from(2));
        let lo = (&p2 - &s).div_floor(&six);
        let hi = (&p2 + &s).div_floor(&six);
        // each estimate is within 1 of the critical point; test a window
        // around it directly and bisect strictly outside
        let two = BigInt::from(2);
        for w in [&lo, &hi] {
            let mut y = w - &two;
            while y <= w + &two {
                if eval(c, &y).is_zero() {
                    roots.push(y.clone());
                }
                y += 1;
            }
        }
        pieces.push((-&bound, &lo - 3));
        pieces.push((&lo + 3, &hi - 3));
        pieces.push((&hi + 3, bound.clone()));
    }
    for (a, b) in pieces {
        if let Some(y) = bisect(c, a, b) {
            roots.push(y);
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn bisect(c: &[BigInt; 4], mut lo: BigInt, mut hi: BigInt) -> Option<BigInt> {
    if lo > hi {
        return None;
    }
    let flo = eval(c, &lo);
    let fhi = eval(c, &hi);
    if flo.is_zero() {
        return Some(lo);
    }
    if fhi.is_zero() {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let slo = flo.signum();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        let fm = eval(c, &mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

/// All distinct rational roots, ascending. `c[3]` must be nonzero.
pub fn rational_roots(c: &Cubic) -> Vec<ExactRational> {
    assert!(!c[3].is_zero(), "leading coefficient must be nonzero");
    let z = clear_denominators(c);
    // y = c3·x turns c3²·f(x) into a monic integer cubic in y
    let lead = z[3].clone();
    let monic = [&z[0] * &lead * &lead, &z[1] * &lead, z[2].clone(), BigInt::one()];
    monic_integer_roots(&monic)
        .into_iter()
        .map(|y| ExactRational::new(y, lead.clone()))
        .collect()
}

/// Shape of the factorization over Q, given the rational roots.
pub fn shape(c: &Cubic, roots: &[ExactRational]) -> CubicShape {
    match roots.len() {
        0 => CubicShape::Irreducible,
        1 => {
            // a repeated rational root forces the remaining one to be rational
            let x = &roots[0];
            let sum = -(&c[2] / &c[3]);
            let other = &sum - &(x * 2i64);
            let f = |t: &ExactRational| ((&c[3] * t + &c[2]) * t + &c[1]) * t + &c[0];
            let deriv = (&c[3] * &(x * 3i64) + &c[2] * 2i64) * x + &c[1];
            if deriv.is_zero() && f(&other).is_zero() {
                CubicShape::ThreeRationalRoots
            } else {
                CubicShape::OneRationalRoot
            }
        }
        _ => CubicShape::ThreeRationalRoots,
    }
}

/// Smallest prime q ≤ `bound`, not dividing the leading coefficient, for
/// which the cubic has no root mod q. Such a prime rules out rational roots.
pub fn root_free_prime(c: &Cubic, bound: u64) -> Option<u64> {
    let z = clear_denominators(c);
    (2..=bound).filter(|&q| is_prime_u64(q)).find(|&q| {
        let qb = BigInt::from(q);
        let red: Vec<u64> = z.iter().map(|x| x.mod_floor(&qb).to_u64().unwrap()).collect();
        if red[3] == 0 {
            return false;
        }
        (0..q).all(|x| {
            let v = (mulmod((mulmod(red[3], x, q) + red[2]) % q, x, q) + red[1]) % q;
            (mulmod(v, x, q) + red[0]) % q != 0
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(c: [i64; 4]) -> Cubic {
        c.map(ExactRational::from)
    }

    #[test]
    fn integer_roots() {
        // (x − 1)(x + 2)(x − 100)
        let r = rational_roots(&cubic([200, -102, -99, 1]));
        assert_eq!(r, vec![(-2).into(), 1.into(), 100.into()]);
        // x³ + x
        assert_eq!(rational_roots(&cubic([0, 1, 0, 1])), vec![0.into()]);
        assert!(rational_roots(&cubic([-2, 0, 0, 1])).is_empty());
    }

    #[test]
    fn fractional_roots() {
        // (2x − 1)(3x + 4)(x − 5)
        let c = cubic([20, -29, -25, 6]);
        let r = rational_roots(&c);
        assert_eq!(r, vec![ExactRational::new(-4, 3), ExactRational::new(1, 2), 5.into()]);
        assert_eq!(shape(&c, &r), CubicShape::ThreeRationalRoots);
    }

    #[test]
    fn repeated_roots() {
        // (x + 16)³
        let c = cubic([4096, 768, 48, 1]);
        let r = rational_roots(&c);
        assert_eq!(r, vec![(-16).into()]);
        assert_eq!(shape(&c, &r), CubicShape::ThreeRationalRoots);
        // (x − 3)²(x + 1)
        let c = cubic([9, 3, -5, 1]);
        let r = rational_roots(&c);
        assert_eq!(r.len(), 2);
        assert_eq!(shape(&c, &r), CubicShape::ThreeRationalRoots);
    }

    #[test]
    fn shapes_and_witnesses() {
        let c = cubic([0, 1, 0, 1]);
        assert_eq!(shape(&c, &rational_roots(&c)), CubicShape::OneRationalRoot);
        let c = cubic([-2, 0, 0, 1]);
        assert_eq!(shape(&c, &rational_roots(&c)), CubicShape::Irreducible);
        // x³ − 2 has no root mod 7
        assert_eq!(root_free_prime(&c, 100), Some(7));
        assert_eq!(root_free_prime(&cubic([0, 1, 0, 1]), 1000), None);
    }

    #[test]
    fn huge_coefficients() {
        let big: BigInt = BigInt::from(10).pow(40u32) + 7;
        let r = ExactRational::from_int(big.clone());
        // (x − big)(x² + 1) = x³ − big x² + x − big
        let c = [-r.clone(), ExactRational::one(), -r.clone(), ExactRational::one()];
        assert_eq!(rational_roots(&c), vec![r]);
    }
}

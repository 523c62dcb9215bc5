//! Reduction-based torsion bounds for X₀(11), X₀(14) and X₀(20) over
//! Q(ζ_r), with rational points found by search as a lower bound.
//!
//! For a prime q ≡ 1 (mod r) of good reduction, q splits completely in
//! Q(ζ_r) with residue field F_q, and the torsion of E(Q(ζ_r)) injects into
//! E(F_q). The torsion is therefore a subgroup of every E(F_q) ≅ Z/a × Z/b
//! (a | b), so its order divides gcd(#E(F_q)) and also gcd(a)·gcd(b). The
//! second bound is sharper and is the one reported as `bound`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use serde::Serialize;
use thiserror::Error;

use crate::modfield::{is_prime_u64, PrimeModulus};
use crate::ratcurves::cubic::{rational_roots, root_free_prime, shape, Cubic, CubicShape};
use crate::ratcurves::curve::WITNESS_BOUND;
use crate::ratcurves::{squarefree_part, CubicFactorType, CurveError, CurveModel, ExactRational};

const CURVES: &str = include_str!("../data/curves.txt");

pub const MAX_COUNT_PRIME: u64 = 1_000_000;
pub const DEFAULT_PRIME_COUNT: usize = 8;
pub const DEFAULT_HEIGHT_BOUND: i64 = 1000;
pub const UPPER_BOUND_FLAG: &str = "upper bound only — rank not verified";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModCurveError {
    #[error("q = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("q = {0} exceeds the point-counting limit")]
    PrimeTooLarge(u64),
    #[error("bad reduction at q = {0}")]
    BadReduction(u64),
    #[error("q = {q} is not 1 mod r = {r}")]
    NotSplit { q: u64, r: u32 },
    #[error("no usable primes")]
    NoValidPrimes,
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("invalid curve data: {0}")]
    InvalidData(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedCurve {
    pub label: String,
    pub model: CurveModel,
    pub expected_rational_torsion: u64,
}

/// An affine point `(x, y)` over Q.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AffinePoint {
    pub x: ExactRational,
    pub y: ExactRational,
}

fn check_prime(q: u64) -> Result<(), ModCurveError> {
    if q < 3 || !is_prime_u64(q) {
        return Err(ModCurveError::NotOddPrime(q));
    }
    if q > MAX_COUNT_PRIME {
        return Err(ModCurveError::PrimeTooLarge(q));
    }
    Ok(())
}

/// `#E(F_q)` including infinity, for an integral model with good reduction at q.
pub fn count_points(e: &CurveModel, q: u64) -> Result<u64, ModCurveError> {
    check_prime(q)?;
    e.count_points(q)?.ok_or(ModCurveError::BadReduction(q))
}

/// Reduction of an integral model mod q with affine group law.
#[derive(Debug, Clone, Copy)]
struct ReducedCurve {
    q: u64,
    a: [u64; 5],
}

type Pt = Option<(u64, u64)>;

impl ReducedCurve {
    fn new(e: &CurveModel, q: u64) -> Result<ReducedCurve, ModCurveError> {
        let ints = e.integer_coefficients()?;
        let qb = BigInt::from(q);
        let a = ints.map(|c| u64::try_from(c.mod_floor(&qb)).unwrap());
        Ok(ReducedCurve { q, a })
    }

    fn inv(&self, v: u64) -> u64 {
        let mut out = 1u64;
        let (mut b, mut e) = (v % self.q, self.q - 2);
        while e > 0 {
            if e & 1 == 1 {
                out = out * b % self.q;
            }
            b = b * b % self.q;
            e >>= 1;
        }
        out
    }

    fn add(&self, p: Pt, r: Pt) -> Pt {
        let q = self.q;
        let [a1, a2, a3, a4, _] = self.a;
        let (Some((x1, y1)), Some((x2, y2))) = (p, r) else {
            return p.or(r);
        };
        let lambda = if x1 == x2 {
            // P = −R or a 2-torsion point doubled
            if (y1 + y2 + a1 * x2 + a3) % q == 0 {
                return None;
            }
            let num = (3 * x1 % q * x1 + 2 * a2 * x1 + a4 + q * q - a1 * y1 % q) % q;
            num * self.inv((2 * y1 + a1 * x1 + a3) % q) % q
        } else {
            (y2 + q - y1) % q * self.inv((x2 + q - x1) % q) % q
        };
        let nu = (y1 + q * q - lambda * x1 % q) % q;
        let x3 = (lambda * lambda + a1 * lambda + 3 * q - a2 - x1 - x2) % q;
        let y3 = (2 * q * q - (lambda + a1) % q * x3 % q - nu - a3) % q;
        Some((x3, y3))
    }

    fn mul(&self, p: Pt, mut k: u64) -> Pt {
        let (mut acc, mut base) = (None, p);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    fn affine_points(&self) -> Vec<(u64, u64)> {
        let q = self.q;
        let [a1, a2, a3, a4, a6] = self.a;
        let mut root = vec![u64::MAX; q as usize];
        for y in 0..q {
            root[(y * y % q) as usize] = y;
        }
        let half = self.inv(2);
        let mut out = Vec::new();
        for x in 0..q {
            // (2y + a1x + a3)² = 4f(x) + (a1x + a3)²
            let l = (a1 * x + a3) % q;
            let f = ((x * x % q * x) + a2 * x % q * x + a4 * x + a6) % q;
            let d = (4 * f + l * l) % q;
            let s = root[d as usize];
            if s == u64::MAX {
                continue;
            }
            for t in if s == 0 { vec![0] } else { vec![s, q - s] } {
                out.push((x, (t + q - l) % q * half % q));
            }
        }
        out
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariants `(a, b)` with `E(F_q) ≅ Z/a × Z/b` and `a | b`.
pub fn group_structure(e: &CurveModel, q: u64) -> Result<(u64, u64), ModCurveError> {
    let n = count_points(e, q)?;
    let red = ReducedCurve::new(e, q)?;
    let primes = prime_factors(n);
    let mut exponent = 1u64;
    for p in red.affine_points() {
        let mut ord = n;
        for &l in &primes {
            while ord % l == 0 && red.mul(Some(p), ord / l).is_none() {
                ord /= l;
            }
        }
        exponent = exponent.lcm(&ord);
        if exponent == n {
            break;
        }
    }
    Ok((n / exponent, exponent))
}

/// The first `count` good primes q ≡ 1 (mod r).
pub fn default_primes(e: &CurveModel, r: PrimeModulus, count: usize) -> Result<Vec<u64>, ModCurveError> {
    let disc = e.discriminant()?;
    let step = r.get() as u64;
    let mut out = Vec::new();
    let mut q = step + 1;
    while out.len() < count {
        if is_prime_u64(q) && disc.mod_prime(q).is_some_and(|d| d != 0) {
            out.push(q);
        }
        q += step;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionBoundReport {
    pub label: String,
    pub r: u32,
    pub primes: Vec<u64>,
    pub counts: Vec<u64>,
    pub structures: Vec<(u64, u64)>,
    /// gcd of the counts.
    pub count_gcd: u64,
    /// gcd(a)·gcd(b) over the structures Z/a × Z/b; the torsion order divides it.
    pub bound: u64,
    /// Rational points (with infinity) found by search.
    pub rational_points_found: u64,
    pub flag: &'static str,
}

pub fn torsion_bound_cyclotomic(
    c: &NamedCurve,
    r: PrimeModulus,
    qs: &[u64],
    height_bound: i64,
) -> Result<TorsionBoundReport, ModCurveError> {
    if qs.is_empty() {
        return Err(ModCurveError::NoValidPrimes);
    }
    let mut counts = Vec::new();
    let mut structures = Vec::new();
    for &q in qs {
        check_prime(q)?;
        if q % r.get() as u64 != 1 {
            return Err(ModCurveError::NotSplit { q, r: r.get() });
        }
        let s = group_structure(&c.model, q)?;
        counts.push(s.0 * s.1);
        structures.push(s);
    }
    let count_gcd = counts.iter().fold(0, |g: u64, &n| g.gcd(&n));
    let ga = structures.iter().fold(0, |g: u64, s| g.gcd(&s.0));
    let gb = structures.iter().fold(0, |g: u64, s| g.gcd(&s.1));
    let found = rational_point_search(&c.model, height_bound)?.len() as u64 + 1;
    Ok(TorsionBoundReport {
        label: c.label.clone(),
        r: r.get(),
        primes: qs.to_vec(),
        counts,
        structures,
        count_gcd,
        bound: ga * gb,
        rational_points_found: found,
        flag: UPPER_BOUND_FLAG,
    })
}

/// All affine points with `x = a/b²`, `y = c/b³`, `gcd(a, b) = 1` and
/// `|a|, |b|, |c| ≤ height_bound`, sorted.
pub fn rational_point_search(e: &CurveModel, height_bound: i64) -> Result<Vec<AffinePoint>, ModCurveError> {
    let ints = e.integer_coefficients()?;
    let a: Vec<i128> = ints.iter().map(|c| i128::try_from(c).map_err(|_| ModCurveError::InvalidData(c.to_string()))).collect::<Result<_, _>>()?;
    let h = height_bound as i128;
    let mut out = Vec::new();
    for b in 1..=h {
        let (b2, b3) = (b * b, b * b * b);
        let b4 = b2 * b2;
        let b6 = b3 * b3;
        for x in -h..=h {
            if x.gcd(&b) != 1 {
                continue;
            }
            // c² + (a1·x·b + a3·b³)c = x³ + a2x²b² + a4xb⁴ + a6b⁶
            let l = a[0] * x * b + a[2] * b3;
            let rhs = x * x * x + a[1] * x * x * b2 + a[3] * x * b4 + a[4] * b6;
            let d = l * l + 4 * rhs;
            if d < 0 {
                continue;
            }
            let s = d.sqrt();
            if s * s != d {
                continue;
            }
            for t in if s == 0 { vec![0] } else { vec![s, -s] } {
                let num = t - l;
                if num % 2 != 0 {
                    continue;
                }
                let c = num / 2;
                if c.abs() > h {
                    continue;
                }
                out.push(AffinePoint { x: ExactRational::new(x, b2), y: ExactRational::new(c, b3) });
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Sum of points over Q; `None` is the point at infinity.
pub fn add_points(e: &CurveModel, p: Option<&AffinePoint>, r: Option<&AffinePoint>) -> Option<AffinePoint> {
    let [a1, a2, a3, a4, _] = e.coefficients();
    let (Some(p), Some(r)) = (p, r) else {
        return p.or(r).cloned();
    };
    let lambda = if p.x == r.x {
        let denom = &(&(&p.y + &r.y) + &(a1 * &r.x)) + a3;
        if denom.is_zero() {
            return None;
        }
        let num = &(&(&(&p.x * &p.x) * 3i64) + &(&(a2 * &p.x) * 2i64)) + &(a4 - &(a1 * &p.y));
        &num / &(&(&(&p.y * 2i64) + &(a1 * &p.x)) + a3)
    } else {
        &(&r.y - &p.y) / &(&r.x - &p.x)
    };
    let nu = &p.y - &(&lambda * &p.x);
    let x3 = &(&(&(&lambda * &lambda) + &(a1 * &lambda)) - a2) - &(&p.x + &r.x);
    let y3 = -(&(&(&(&lambda + a1) * &x3) + &nu) + a3);
    Some(AffinePoint { x: x3, y: y3 })
}

/// Order of a rational point, if at most `limit`.
pub fn point_order(e: &CurveModel, p: &AffinePoint, limit: u64) -> Option<u64> {
    let mut acc = Some(p.clone());
    for k in 1..=limit {
        match acc {
            None => return Some(k),
            Some(ref a) => acc = add_points(e, Some(a), Some(p)),
        }
    }
    None
}

fn parse_curves(text: &str) -> Result<Vec<NamedCurve>, ModCurveError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(ModCurveError::InvalidData(line.to_string()));
        }
        let nums: Vec<i64> = fields[1..]
            .iter()
            .map(|f| f.parse().map_err(|_| ModCurveError::InvalidData(line.to_string())))
            .collect::<Result<_, _>>()?;
        let model = CurveModel::from_ints([nums[0], nums[1], nums[2], nums[3], nums[4]])?;
        let c = NamedCurve { label: fields[0].to_string(), model, expected_rational_torsion: nums[5] as u64 };
        validate(&c)?;
        out.push(c);
    }
    Ok(out)
}

/// A point of the expected order exists, and small counts respect Hasse.
fn validate(c: &NamedCurve) -> Result<(), ModCurveError> {
    let pts = rational_point_search(&c.model, 50)?;
    if !pts.iter().any(|p| point_order(&c.model, p, 16) == Some(c.expected_rational_torsion)) {
        return Err(ModCurveError::InvalidData(format!("{}: no point of order {}", c.label, c.expected_rational_torsion)));
    }
    for q in (3..100).filter(|&q| is_prime_u64(q)) {
        if let Some(n) = c.model.count_points(q)? {
            if (n as i64 - q as i64 - 1).pow(2) > 4 * q as i64 {
                return Err(ModCurveError::InvalidData(format!("{}: count {n} at {q}", c.label)));
            }
        }
    }
    Ok(())
}

pub fn named_curves() -> &'static [NamedCurve] {
    static CACHE: OnceLock<Vec<NamedCurve>> = OnceLock::new();
    CACHE.get_or_init(|| parse_curves(CURVES).expect("curves.txt is valid"))
}

pub fn named_curve(label: &str) -> Result<&'static NamedCurve, ModCurveError> {
    let norm = |s: &str| s.to_ascii_lowercase().replace(['_', ' '], "");
    named_curves()
        .iter()
        .find(|c| norm(&c.label) == norm(label))
        .ok_or_else(|| ModCurveError::UnknownCurve(label.to_string()))
}

/// Shape of `4x³ + b2x² + 2b4x + b6`, the 2-division cubic after completing
/// the square, with the square class of its discriminant (that of Δ).
pub fn two_division_shape(e: &CurveModel) -> Result<CubicFactorType, ModCurveError> {
    let [b2, b4, b6, _] = e.b_invariants();
    let c: Cubic = [b6, &b4 * 2i64, b2, ExactRational::from(4)];
    let roots = rational_roots(&c);
    let sh = shape(&c, &roots);
    let witness = if sh == CubicShape::Irreducible { root_free_prime(&c, WITNESS_BOUND) } else { None };
    Ok(CubicFactorType {
        shape: sh,
        disc_class: squarefree_part(&e.discriminant()?)?,
        rational_roots: roots,
        root_free_prime: witness,
    })
}

//! Arbitrary-precision rationals and a small expression syntax for them.
//!
//! Accepted input: integers, `+ - * / ^`, parentheses, unary minus, with
//! `−` (U+2212), `·` and `×` as aliases. `^` binds tighter than unary minus,
//! so `-3^3` is −27, and takes an integer exponent.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CurveError;

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// `n / d`; panics if `d` is zero.
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> ExactRational {
        ExactRational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_int(n: impl Into<BigInt>) -> ExactRational {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> ExactRational {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> ExactRational {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> ExactRational {
        ExactRational(self.0.abs())
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i32) -> ExactRational {
        ExactRational(num_traits::Pow::pow(&self.0, e))
    }

    pub fn recip(&self) -> ExactRational {
        ExactRational(self.0.recip())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }

    /// Reduction mod a prime `q` not dividing the denominator.
    pub fn mod_prime(&self, q: u64) -> Option<u64> {
        let qb = BigInt::from(q);
        let d = self.denom().mod_floor(&qb).to_u64()?;
        if d == 0 {
            return None;
        }
        let n = self.numer().mod_floor(&qb).to_u64()?;
        Some(mulmod(n, powmod(d, q - 2, q), q))
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

impl From<BigRational> for ExactRational {
    fn from(q: BigRational) -> Self {
        ExactRational(q)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        ExactRational::from_int(n)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $m(self, o: ExactRational) -> ExactRational {
                ExactRational(self.0.$m(o.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $m(self, o: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$m(&o.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, o: &'a ExactRational) -> ExactRational {
                ExactRational(self.0.$m(&o.0))
            }
        }
        impl $tr<i64> for &ExactRational {
            type Output = ExactRational;
            fn $m(self, o: i64) -> ExactRational {
                ExactRational((&self.0).$m(BigRational::from_integer(o.into())))
            }
        }
        impl $tr<i64> for ExactRational {
            type Output = ExactRational;
            fn $m(self, o: i64) -> ExactRational {
                ExactRational(self.0.$m(BigRational::from_integer(o.into())))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for ExactRational {
    type Err = CurveError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(CurveError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, CurveError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else if d == '_' {
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(digits.parse().expect("ascii digits")));
            }
            '+' | '*' | '/' | '^' | '(' | ')' | '-' => {
                out.push(Tok::Op(c));
                chars.next();
            }
            '−' => {
                out.push(Tok::Op('-'));
                chars.next();
            }
            '·' | '×' => {
                out.push(Tok::Op('*'));
                chars.next();
            }
            _ => return Err(CurveError::Parse(format!("unexpected character {c:?}"))),
        }
    }
    if out.is_empty() {
        return Err(CurveError::Parse("empty expression".into()));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<ExactRational, CurveError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExactRational, CurveError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = acc * rhs;
            } else {
                if rhs.is_zero() {
                    return Err(CurveError::Parse("division by zero".into()));
                }
                acc = acc / rhs;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ExactRational, CurveError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExactRational, CurveError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.unary()?;
        let e = e
            .to_integer()
            .and_then(|e| e.to_i32())
            .filter(|e| e.unsigned_abs() <= 100_000)
            .ok_or_else(|| CurveError::Parse(format!("exponent {e} is not a small integer")))?;
        if e < 0 && base.is_zero() {
            return Err(CurveError::Parse("zero to a negative power".into()));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<ExactRational, CurveError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(ExactRational::from_int(n))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(CurveError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(t) => Err(CurveError::Parse(format!("unexpected token {t:?}"))),
            None => Err(CurveError::Parse("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(q("12"), ExactRational::from(12));
        assert_eq!(q("-7/9"), ExactRational::new(-7, 9));
        assert_eq!(q("−3^3·5^3"), ExactRational::from(-3375));
        assert_eq!(q("-17*373^3/2^17"), ExactRational::new(-17 * 373i64.pow(3), 1i64 << 17));
        assert_eq!(q("((2))"), ExactRational::from(2));
        assert_eq!(q("2^-2"), ExactRational::new(1, 4));
        assert_eq!(q("1 + 2*3"), ExactRational::from(7));
        assert_eq!(q("6/4"), ExactRational::new(3, 2));
        assert_eq!(q("10/-4"), ExactRational::new(-5, 2));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "1/0", "2^(1/2)", "3 4", "(1", "x", "0^-1"] {
            assert!(bad.parse::<ExactRational>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "-5", "3/7", "-884736000"] {
            assert_eq!(q(s).to_string(), s);
        }
        let json = serde_json::to_string(&q("-7/9")).unwrap();
        assert_eq!(json, "\"-7/9\"");
        assert_eq!(serde_json::from_str::<ExactRational>(&json).unwrap(), q("-7/9"));
    }

    #[test]
    fn reduction_mod_prime() {
        assert_eq!(q("1/2").mod_prime(7), Some(4));
        assert_eq!(q("-1").mod_prime(5), Some(4));
        assert_eq!(q("1/7").mod_prime(7), None);
    }
}

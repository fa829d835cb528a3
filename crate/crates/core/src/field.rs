//! Exact scalars in `Q` or a real quadratic field `Q(sqrt(d))`.
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with rational `a`, `b` and a square-free
//! radicand `d`. Values are kept in a canonical form: whenever `b == 0` the
//! radicand is stored as `0`, so two scalars are equal exactly when their
//! representations are equal and the derived `Eq`/`Hash` are sound.
//!
//! Arithmetic between two irrational scalars with different radicands is a
//! programming error and panics; instance parsing rejects such inputs before
//! any arithmetic happens.
//!
//! Text syntax (used in instance files):
//!
//! ```text
//! scalar  := ['+'|'-'] term (('+'|'-') term)*
//! term    := number ['*'] surd ['/' integer]
//!          | surd ['/' integer]
//!          | number
//! number  := integer ['/' integer] | decimal
//! surd    := 'sqrt(' integer ')' | '√' integer | '√(' integer ')'
//! ```
//!
//! Whitespace between tokens is ignored. Non-square-free radicands are
//! normalized (`sqrt(8)` is read as `2*sqrt(2)`).

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest radicand accepted by the parser; square-freeness is checked by
/// trial division.
pub const MAX_RADICAND: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn of_rational(r: &BigRational) -> Sign {
        match r.numer().sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Exact value `rational + surd * sqrt(radicand)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: BigRational,
    surd: BigRational,
    radicand: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty scalar")]
    Empty,
    #[error("unexpected {found:?} at byte {at} in {input:?}")]
    Unexpected { input: String, at: usize, found: String },
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("radicand {0} is out of range (at most {MAX_RADICAND})")]
    RadicandTooLarge(String),
    #[error("scalar {input:?} mixes sqrt({first}) and sqrt({second})")]
    MixedRadicands { input: String, first: u64, second: u64 },
}

/// Splits `n` into `(s, f)` with `n = s^2 * f` and `f` square-free.
pub fn square_free_part(n: u64) -> (u64, u64) {
    if n < 4 {
        return (1, n);
    }
    let mut rest = n;
    let mut square = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
            square *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, rest)
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    /// Builds `rational + surd * sqrt(radicand)`, normalizing the radicand to
    /// its square-free part and collapsing rational values.
    pub fn new(rational: BigRational, surd: BigRational, radicand: u64) -> Scalar {
        let (square, free) = square_free_part(radicand);
        let surd = surd * BigRational::from_integer(BigInt::from(square));
        match free {
            0 => Scalar::from_rational(rational),
            1 => Scalar::from_rational(rational + surd),
            _ if surd.is_zero() => Scalar::from_rational(rational),
            _ => Scalar {
                rational,
                surd,
                radicand: free,
            },
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar {
            rational: r,
            surd: BigRational::zero(),
            radicand: 0,
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(big(n))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    pub fn ratio(numer: i64, denom: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// `coefficient * sqrt(radicand)`.
    pub fn sqrt_of(radicand: u64, coefficient: BigRational) -> Scalar {
        Scalar::new(BigRational::zero(), coefficient, radicand)
    }

    pub fn zero() -> Scalar {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    /// Square-free radicand, `0` for plain rationals.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.radicand == 0 && self.rational.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.rational.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.rational.to_integer())
    }

    /// Exact sign of `a + b*sqrt(d)`.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of_rational(&self.rational);
        if self.radicand == 0 {
            return sa;
        }
        let sb = Sign::of_rational(&self.surd);
        match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (a, b) if a == b => a,
            (a, b) => {
                // opposite signs: the larger of a^2 and d*b^2 wins
                let a2 = &self.rational * &self.rational;
                let db2 = &self.surd * &self.surd * big(self.radicand as i64);
                match a2.cmp(&db2) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    Ordering::Equal => unreachable!("sqrt of a square-free radicand is irrational"),
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() == Sign::Negative {
            -self
        } else {
            self.clone()
        }
    }

    /// Conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Scalar {
        Scalar {
            rational: self.rational.clone(),
            surd: -&self.surd,
            radicand: self.radicand,
        }
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> BigRational {
        &self.rational * &self.rational - &self.surd * &self.surd * big(self.radicand as i64)
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero scalar");
        if self.is_rational() {
            return Scalar::from_rational(self.rational.recip());
        }
        let n = self.norm();
        Scalar::new(&self.rational / &n, -&self.surd / &n, self.radicand)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.rational.floor().to_integer();
        }
        // |b| sqrt(d) = sqrt(p^2 d) / q with b = p/q, bracketed by integer square roots.
        let p = self.surd.numer().abs();
        let q = self.surd.denom().clone();
        let root = (&p * &p * BigInt::from(self.radicand)).sqrt();
        let (lo, hi) = if self.surd.is_positive() {
            (
                &self.rational + BigRational::new(root.clone(), q.clone()),
                &self.rational + BigRational::new(root + 1, q),
            )
        } else {
            (
                &self.rational - BigRational::new(root.clone() + 1, q.clone()),
                &self.rational - BigRational::new(root, q),
            )
        };
        let lo = lo.floor().to_integer();
        let hi = hi.floor().to_integer();
        if lo == hi {
            return lo;
        }
        // the interval has width <= 1 so at most one integer candidate separates them
        if (self - &Scalar::from_bigint(hi.clone())).sign() != Sign::Negative {
            hi
        } else {
            lo
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Nearest `f64`; for rendering and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.radicand == 0 {
            return a;
        }
        a + self.surd.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    /// Nearest `f64` together with a bound on the magnitude of its parts,
    /// `|a| + |b|√d`. The float error is a tiny multiple of the bound even
    /// when `a` and `b√d` nearly cancel.
    pub fn to_f64_with_scale(&self) -> (f64, f64) {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.radicand == 0 {
            return (a, a.abs());
        }
        let b = self.surd.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt();
        (a + b, a.abs() + b.abs())
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    fn common_radicand(&self, other: &Scalar) -> u64 {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("cannot combine sqrt({d}) and sqrt({e})"),
        }
    }

    /// `true` when `self` and `other` can appear in the same expression.
    pub fn compatible(&self, other: &Scalar) -> bool {
        self.radicand == 0 || other.radicand == 0 || self.radicand == other.radicand
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.is_rational() && other.is_rational() {
            return self.rational.cmp(&other.rational);
        }
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rational: -&self.rational,
            surd: -&self.surd,
            radicand: self.radicand,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.radicand == 0 && rhs.radicand == 0 {
            return Scalar::from_rational(&self.rational + &rhs.rational);
        }
        let d = self.common_radicand(rhs);
        Scalar::new(&self.rational + &rhs.rational, &self.surd + &rhs.surd, d)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.radicand == 0 && rhs.radicand == 0 {
            return Scalar::from_rational(&self.rational - &rhs.rational);
        }
        let d = self.common_radicand(rhs);
        Scalar::new(&self.rational - &rhs.rational, &self.surd - &rhs.surd, d)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self.radicand, rhs.radicand) {
            (0, 0) => Scalar::from_rational(&self.rational * &rhs.rational),
            (0, d) => Scalar::new(&self.rational * &rhs.rational, &self.rational * &rhs.surd, d),
            (d, 0) => Scalar::new(&self.rational * &rhs.rational, &self.surd * &rhs.rational, d),
            _ => {
                let d = self.common_radicand(rhs);
                let rational = &self.rational * &rhs.rational + &self.surd * &rhs.surd * big(d as i64);
                let surd = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
                Scalar::new(rational, surd, d)
            }
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.is_rational() {
            assert!(!rhs.rational.is_zero(), "division by zero scalar");
            return Scalar::new(
                &self.rational / &rhs.rational,
                &self.surd / &rhs.rational,
                self.radicand,
            );
        }
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 0 {
            return write_rational(f, &self.rational);
        }
        let has_rational = !self.rational.is_zero();
        if has_rational {
            write_rational(f, &self.rational)?;
            f.write_str(if self.surd.is_negative() { "-" } else { "+" })?;
        } else if self.surd.is_negative() {
            f.write_str("-")?;
        }
        let coefficient = self.surd.abs();
        if !coefficient.is_one() {
            write_rational(f, &coefficient)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn error(&self) -> ParseScalarError {
        let found = self.input[self.pos..]
            .chars()
            .next()
            .map_or("end of input".to_string(), |c| c.to_string());
        ParseScalarError::Unexpected {
            input: self.input.to_string(),
            at: self.pos,
            found,
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.input[start..self.pos])
    }

    fn integer(&mut self) -> Result<BigInt, ParseScalarError> {
        let d = self.digits().ok_or_else(|| self.error())?;
        Ok(d.parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Option<BigRational>, ParseScalarError> {
        let Some(whole) = self.digits() else {
            return Ok(None);
        };
        let whole: BigInt = whole.parse().expect("ascii digits");
        if self.peek() == Some('.') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let frac = &self.input[start..self.pos];
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac: BigInt = if frac.is_empty() {
                BigInt::zero()
            } else {
                frac.parse().expect("ascii digits")
            };
            return Ok(Some(BigRational::new(whole * &scale + frac, scale)));
        }
        let save = self.pos;
        if self.eat('/') {
            // "/" followed by a surd is not a fraction
            if let Some(den) = self.digits() {
                let den: BigInt = den.parse().expect("ascii digits");
                if den.is_zero() {
                    return Err(ParseScalarError::ZeroDenominator(self.input.to_string()));
                }
                return Ok(Some(BigRational::new(whole, den)));
            }
            self.pos = save;
        }
        Ok(Some(BigRational::from_integer(whole)))
    }

    fn surd(&mut self) -> Result<Option<u64>, ParseScalarError> {
        let radicand = if self.eat_str("sqrt") {
            if !self.eat('(') {
                return Err(self.error());
            }
            let n = self.integer()?;
            if !self.eat(')') {
                return Err(self.error());
            }
            n
        } else if self.eat('√') {
            if self.eat('(') {
                let n = self.integer()?;
                if !self.eat(')') {
                    return Err(self.error());
                }
                n
            } else {
                self.integer()?
            }
        } else {
            return Ok(None);
        };
        match radicand.to_u64() {
            Some(r) if r <= MAX_RADICAND => Ok(Some(r)),
            _ => Err(ParseScalarError::RadicandTooLarge(radicand.to_string())),
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseScalarError> {
        let coefficient = self.number()?;
        let had_star = coefficient.is_some() && self.eat('*');
        match self.surd()? {
            Some(radicand) => {
                let mut coefficient = coefficient.unwrap_or_else(BigRational::one);
                if self.eat('/') {
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(ParseScalarError::ZeroDenominator(self.input.to_string()));
                    }
                    coefficient /= BigRational::from_integer(den);
                }
                Ok(Scalar::sqrt_of(radicand, coefficient))
            }
            None if had_star => Err(self.error()),
            None => coefficient.map(Scalar::from_rational).ok_or_else(|| self.error()),
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(ParseScalarError::Empty);
        }
        let mut cur = Cursor { input: s, pos: 0 };
        let mut total = Scalar::zero();
        let mut first = true;
        loop {
            let negative = if cur.eat('-') {
                true
            } else if cur.eat('+') || first {
                false
            } else {
                break;
            };
            let term = cur.term()?;
            if !total.compatible(&term) {
                return Err(ParseScalarError::MixedRadicands {
                    input: s.to_string(),
                    first: total.radicand,
                    second: term.radicand,
                });
            }
            total = if negative { total - term } else { total + term };
            first = false;
        }
        cur.skip_ws();
        if cur.pos != s.len() {
            return Err(cur.error());
        }
        Ok(total)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an exact scalar string such as \"3/4\" or \"1/2*sqrt(2)\", or an integer")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Scalar, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::from_int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Scalar, E> {
                Ok(Scalar::from_bigint(BigInt::from(v)))
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Scalar, E> {
                Err(E::custom(format!(
                    "floating-point value {v} is not exact; write it as a string"
                )))
            }
        }
        deserializer.deserialize_any(Visitor)
    }
}

/// Least common multiple of the denominators of two rationals.
pub(crate) fn denominator_lcm(a: &BigRational, b: &BigRational) -> BigInt {
    a.denom().lcm(b.denom())
}

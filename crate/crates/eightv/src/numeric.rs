//! Exact arithmetic in the cyclotomic field Q(ζ₈), with an approximate
//! complex fallback for weights that live outside the field.
//!
//! An element is stored as `c0 + c1·ζ + c2·ζ² + c3·ζ³` with rational
//! coefficients and ζ⁴ = −1. In this basis `i = ζ²`, `α = ζ` and
//! `√2 = ζ − ζ³`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("value is approximate but an exact value is required")]
    NotExact,
}

/// Reduced fraction of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, NumericError> {
        let den = den.into();
        if den.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn recip(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || NumericError::Parse(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            Rational::new(n, d)
        } else {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational(BigRational::from_integer(n)))
        }
    }
}

macro_rules! forward_rational_op {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
    };
}
forward_rational_op!(Add, add);
forward_rational_op!(Sub, sub);
forward_rational_op!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Element of Q(ζ₈) in the power basis (1, ζ, ζ², ζ³).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclo8 {
    c: [Rational; 4],
}

impl Cyclo8 {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Cyclo8 { c: [c0, c1, c2, c3] }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Cyclo8 { c: c.map(Rational::from_int) }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo8::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Cyclo8::from_rational(Rational::from_int(n))
    }

    /// `p + q·i`.
    pub fn gaussian(p: Rational, q: Rational) -> Self {
        Cyclo8::new(p, Rational::zero(), q, Rational::zero())
    }

    pub fn zero() -> Self {
        Cyclo8::default()
    }

    pub fn one() -> Self {
        Cyclo8::from_int(1)
    }

    pub fn i() -> Self {
        Cyclo8::from_ints([0, 0, 1, 0])
    }

    pub fn zeta() -> Self {
        Cyclo8::from_ints([0, 1, 0, 0])
    }

    /// α, the square root of i equal to ζ.
    pub fn alpha() -> Self {
        Cyclo8::zeta()
    }

    pub fn sqrt2() -> Self {
        Cyclo8::from_ints([0, 1, 0, -1])
    }

    /// ζᵏ for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Cyclo8::from_ints(c)
    }

    /// iᵏ for any integer k.
    pub fn i_pow(k: i64) -> Self {
        Cyclo8::zeta_pow(2 * k)
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(Rational::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Image under the Galois automorphism ζ ↦ ζᵏ, k odd.
    pub fn galois(&self, k: i64) -> Self {
        let mut out: [Rational; 4] = Default::default();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let e = (j as i64 * k).rem_euclid(8) as usize;
            if e < 4 {
                out[e] = &out[e] + cj;
            } else {
                out[e - 4] = &out[e - 4] - cj;
            }
        }
        Cyclo8 { c: out }
    }

    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// Field norm down to Q: the product of all four Galois conjugates.
    pub fn norm(&self) -> Rational {
        let p = self * &self.galois(3);
        let q = &p * &p.galois(5);
        q.c[0].clone()
    }

    pub fn inv(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let rest = &(&self.galois(3) * &self.galois(5)) * &self.galois(7);
        let n = (self * &rest).c[0].recip()?;
        Ok(rest.scale(&n))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, NumericError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclo8 { c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r] }
    }

    /// Multiplication by ζᵏ, which only permutes and negates coefficients.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut out: [Rational; 4] = Default::default();
        for (j, cj) in self.c.iter().enumerate() {
            let e = j + k;
            let e8 = e % 8;
            if e8 < 4 {
                out[e8] = cj.clone();
            } else {
                out[e8 - 4] = -cj;
            }
        }
        Cyclo8 { c: out }
    }

    pub fn mul_i_pow(&self, k: i64) -> Self {
        self.mul_zeta_pow(2 * k)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo8::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    pub fn powi(&self, e: i64) -> Result<Self, NumericError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn unit_modulus(&self) -> bool {
        (self * &self.conj()).is_one()
    }

    /// `Some(k)` with `self = iᵏ`, k in 0..4.
    pub fn as_power_of_i(&self) -> Option<u8> {
        (0..4u8).find(|&k| *self == Cyclo8::i_pow(k as i64))
    }

    /// `Some(k)` with `self = ζᵏ`, k in 0..8.
    pub fn as_power_of_zeta(&self) -> Option<u8> {
        (0..8u8).find(|&k| *self == Cyclo8::zeta_pow(k as i64))
    }

    /// Multiplicative order when the element is a root of unity.
    /// The roots of unity in Q(ζ₈) are exactly the powers of ζ.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let k = self.as_power_of_zeta()? as u32;
        Some(8 / num_integer::gcd(k, 8))
    }

    /// A square root inside Q(ζ₈), when one exists.
    pub fn sqrt(&self) -> Option<Cyclo8> {
        if self.is_zero() {
            return Some(Cyclo8::zero());
        }
        // Split self = D0 + ζ·D1 with D0, D1 Gaussian and look for
        // u + ζ·v, which squares to (u² + i·v²) + ζ·(2uv).
        let d0 = Cyclo8::gaussian(self.c[0].clone(), self.c[2].clone());
        let d1 = Cyclo8::gaussian(self.c[1].clone(), self.c[3].clone());
        let two = Cyclo8::from_int(2);
        let candidates: Vec<Cyclo8> = if d1.is_zero() {
            let mut out = Vec::new();
            if let Some(u) = gaussian_sqrt(&d0) {
                out.push(u);
            }
            if let Some(v) = gaussian_sqrt(&(&d0 * &Cyclo8::i_pow(3))) {
                out.push(&v * &Cyclo8::zeta());
            }
            out
        } else {
            let disc = &(&d0 * &d0) - &(&Cyclo8::i() * &(&d1 * &d1));
            let mut out = Vec::new();
            if let Some(s) = gaussian_sqrt(&disc) {
                for u2 in [&d0 + &s, &d0 - &s] {
                    let u2 = u2.div(&two).expect("two");
                    if let Some(u) = gaussian_sqrt(&u2) {
                        if !u.is_zero() {
                            let v = d1.div(&(&two * &u)).expect("nonzero");
                            out.push(&u + &(&v * &Cyclo8::zeta()));
                        }
                    }
                }
            }
            out
        };
        candidates.into_iter().find(|y| &(y * y) == self)
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c: Vec<f64> = self.c.iter().map(Rational::to_f64).collect();
        (c[0] + h * (c[1] - c[3]), c[2] + h * (c[1] + c[3]))
    }

    pub fn to_approx(&self) -> ComplexApprox {
        let (re, im) = self.to_complex();
        ComplexApprox::new(re, im)
    }
}

impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

impl fmt::Debug for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Cyclo8 {
    /// Human-oriented form such as `1/2 + 3i` or `2 - a^3`.
    pub fn pretty(&self) -> String {
        const UNITS: [&str; 4] = ["", "a", "i", "a^3"];
        let mut out = String::new();
        for (k, ck) in self.c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let neg = ck.is_negative();
            let mag = if neg { -ck } else { ck.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(UNITS[k]);
            } else if mag.is_integer() {
                out.push_str(&format!("{}{}", mag, UNITS[k]));
            } else {
                out.push_str(&format!("({}){}", mag, UNITS[k]));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Parses one of the accepted spellings:
/// the coefficient list `c0,c1,c2,c3` (optionally in parentheses or brackets),
/// or a signed sum of terms `[r][*]unit` with unit among `i`, `a`, `a^k`, `z^k`.
impl FromStr for Cyclo8 {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || NumericError::Parse(s.to_string());
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
            .unwrap_or(t);
        if inner.contains(',') {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 4 {
                return Err(bad());
            }
            let mut c: [Rational; 4] = Default::default();
            for (k, p) in parts.iter().enumerate() {
                c[k] = p.parse().map_err(|_| bad())?;
            }
            return Ok(Cyclo8 { c });
        }
        parse_sum(inner).ok_or_else(bad)
    }
}

fn parse_sum(s: &str) -> Option<Cyclo8> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for k in 1..bytes.len() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^' {
            terms.push(&s[start..k]);
            start = k;
        }
    }
    terms.push(&s[start..]);
    let mut acc = Cyclo8::zero();
    for term in terms {
        acc += parse_term(term)?;
    }
    Some(acc)
}

fn parse_term(t: &str) -> Option<Cyclo8> {
    let (neg, body) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    if body.is_empty() {
        return None;
    }
    let split = body.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(body.len());
    let (coef, unit) = body.split_at(split);
    let coef = coef.strip_suffix('*').unwrap_or(coef);
    let coef = coef.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coef);
    let r: Rational = if coef.is_empty() {
        if unit.is_empty() {
            return None;
        }
        Rational::one()
    } else {
        coef.parse().ok()?
    };
    let zeta_exp = match unit {
        "" => 0,
        "i" => 2,
        "a" | "z" | "zeta" => 1,
        u => {
            let (base, e) = u.split_once('^')?;
            if !matches!(base, "a" | "z" | "zeta" | "i") {
                return None;
            }
            let e: i64 = e.parse().ok()?;
            if base == "i" {
                2 * e
            } else {
                e
            }
        }
    };
    let v = Cyclo8::zeta_pow(zeta_exp).scale(&r);
    Some(if neg { -v } else { v })
}

impl<'a> Add<&'a Cyclo8> for &'a Cyclo8 {
    type Output = Cyclo8;
    fn add(self, rhs: &'a Cyclo8) -> Cyclo8 {
        Cyclo8 {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl<'a> Sub<&'a Cyclo8> for &'a Cyclo8 {
    type Output = Cyclo8;
    fn sub(self, rhs: &'a Cyclo8) -> Cyclo8 {
        Cyclo8 {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl<'a> Mul<&'a Cyclo8> for &'a Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: &'a Cyclo8) -> Cyclo8 {
        let mut out: [Rational; 4] = Default::default();
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let e = j + k;
                if e < 4 {
                    out[e] = &out[e] + &p;
                } else {
                    out[e - 4] = &out[e - 4] - &p;
                }
            }
        }
        Cyclo8 { c: out }
    }
}

impl Add for Cyclo8 {
    type Output = Cyclo8;
    fn add(self, rhs: Cyclo8) -> Cyclo8 {
        &self + &rhs
    }
}

impl Sub for Cyclo8 {
    type Output = Cyclo8;
    fn sub(self, rhs: Cyclo8) -> Cyclo8 {
        &self - &rhs
    }
}

impl Mul for Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: Cyclo8) -> Cyclo8 {
        &self * &rhs
    }
}

impl AddAssign for Cyclo8 {
    fn add_assign(&mut self, rhs: Cyclo8) {
        *self = &*self + &rhs;
    }
}

impl<'a> AddAssign<&'a Cyclo8> for Cyclo8 {
    fn add_assign(&mut self, rhs: &'a Cyclo8) {
        *self = &*self + rhs;
    }
}

impl SubAssign for Cyclo8 {
    fn sub_assign(&mut self, rhs: Cyclo8) {
        *self = &*self - &rhs;
    }
}

impl MulAssign for Cyclo8 {
    fn mul_assign(&mut self, rhs: Cyclo8) {
        *self = &*self * &rhs;
    }
}

impl<'a> MulAssign<&'a Cyclo8> for Cyclo8 {
    fn mul_assign(&mut self, rhs: &'a Cyclo8) {
        *self = &*self * rhs;
    }
}

impl Neg for Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        Cyclo8 { c: self.c.map(|r| -r) }
    }
}

impl Neg for &Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        Cyclo8 { c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]] }
    }
}

impl From<i64> for Cyclo8 {
    fn from(n: i64) -> Self {
        Cyclo8::from_int(n)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Cyclo8 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Cyclo8 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Floating-point complex number with a comparison tolerance.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    pub eps: f64,
}

pub const DEFAULT_EPS: f64 = 1e-9;

impl ComplexApprox {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexApprox { re, im, eps: DEFAULT_EPS }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexApprox { re: self.re + o.re, im: self.im + o.im, eps: self.eps.max(o.eps) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexApprox { re: self.re - o.re, im: self.im - o.im, eps: self.eps.max(o.eps) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexApprox {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
            eps: self.eps.max(o.eps),
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, NumericError> {
        let n = o.re * o.re + o.im * o.im;
        if n == 0.0 {
            return Err(NumericError::DivisionByZero);
        }
        Ok(ComplexApprox {
            re: (self.re * o.re + self.im * o.im) / n,
            im: (self.im * o.re - self.re * o.im) / n,
            eps: self.eps.max(o.eps),
        })
    }

    /// e^{re + i·im}.
    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        ComplexApprox { re: m * self.im.cos(), im: m * self.im.sin(), eps: self.eps }
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        let eps = self.eps.max(o.eps);
        (self.re - o.re).abs() <= eps && (self.im - o.im).abs() <= eps
    }

    pub fn is_zero(&self) -> bool {
        self.re.abs() <= self.eps && self.im.abs() <= self.eps
    }
}

impl PartialEq for ComplexApprox {
    fn eq(&self, o: &Self) -> bool {
        self.approx_eq(o)
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A value that is either exact or approximate. Combining the two
/// demotes to approximate; `is_exact` reports which one a result is.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Cyclo8),
    Approx(ComplexApprox),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Cyclo8::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Cyclo8::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(Cyclo8::from_int(n))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn exact(&self) -> Result<&Cyclo8, NumericError> {
        match self {
            Scalar::Exact(c) => Ok(c),
            Scalar::Approx(_) => Err(NumericError::NotExact),
        }
    }

    pub fn to_approx(&self) -> ComplexApprox {
        match self {
            Scalar::Exact(c) => c.to_approx(),
            Scalar::Approx(a) => *a,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Approx(a) => a.is_zero(),
        }
    }

    fn combine(
        &self,
        o: &Self,
        exact: impl Fn(&Cyclo8, &Cyclo8) -> Cyclo8,
        approx: impl Fn(&ComplexApprox, &ComplexApprox) -> ComplexApprox,
    ) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Approx(approx(&self.to_approx(), &o.to_approx())),
        }
    }

    pub fn add(&self, o: &Self) -> Scalar {
        self.combine(o, |a, b| a + b, ComplexApprox::add)
    }

    pub fn sub(&self, o: &Self) -> Scalar {
        self.combine(o, |a, b| a - b, ComplexApprox::sub)
    }

    pub fn mul(&self, o: &Self) -> Scalar {
        self.combine(o, |a, b| a * b, ComplexApprox::mul)
    }

    pub fn div(&self, o: &Self) -> Result<Scalar, NumericError> {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.div(b)?)),
            _ => Ok(Scalar::Approx(self.to_approx().div(&o.to_approx())?)),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Cyclo8> for Scalar {
    fn from(c: Cyclo8) -> Self {
        Scalar::Exact(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => write!(f, "{}", c.pretty()),
            Scalar::Approx(a) => write!(f, "~{}", a),
        }
    }
}

/// Exact text goes through [`Cyclo8`]; a leading `~` marks an
/// approximate value written as `re+imi` with decimal parts.
impl FromStr for Scalar {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('~') {
            return parse_approx(rest).map(Scalar::Approx).ok_or_else(|| NumericError::Parse(s.into()));
        }
        t.parse().map(Scalar::Exact)
    }
}

fn parse_approx(s: &str) -> Option<ComplexApprox> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = s.strip_suffix('i') {
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|&(k, c)| (c == '+' || c == '-') && !body[..k].ends_with(['e', 'E']))
            .map(|(k, _)| k)
            .last();
        match cut {
            Some(k) => {
                let re: f64 = body[..k].parse().ok()?;
                let im_s = &body[k..];
                let im: f64 = match im_s {
                    "+" => 1.0,
                    "-" => -1.0,
                    x => x.parse().ok()?,
                };
                Some(ComplexApprox::new(re, im))
            }
            None => {
                let im: f64 = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    x => x.parse().ok()?,
                };
                Some(ComplexApprox::new(0.0, im))
            }
        }
    } else {
        Some(ComplexApprox::new(s.parse().ok()?, 0.0))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(c) => s.serialize_str(&c.to_string()),
            Scalar::Approx(a) => s.serialize_str(&format!("~{}", a)),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Scalar::int(n)),
        }
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::from(BigRational::new(sn, sd)))
    } else {
        None
    }
}

/// Square root of a Gaussian rational p + qi, returned as a Gaussian rational.
fn gaussian_sqrt(g: &Cyclo8) -> Option<Cyclo8> {
    let (p, q) = (&g.c[0], &g.c[2]);
    if q.is_zero() {
        return match rational_sqrt(p) {
            Some(r) => Some(Cyclo8::from_rational(r)),
            None => rational_sqrt(&-p).map(|r| Cyclo8::gaussian(Rational::zero(), r)),
        };
    }
    let n = rational_sqrt(&(p.clone() * p.clone() + q.clone() * q.clone()))?;
    let half = Rational::new(1, 2).expect("nonzero");
    let x = rational_sqrt(&((p.clone() + n) * half.clone()))?;
    if x.is_zero() {
        return None;
    }
    let y = q.clone() * half * x.recip().expect("nonzero");
    Some(Cyclo8::gaussian(x, y))
}

//! Exact arithmetic in a single real quadratic field.
//!
//! [`QuadraticNumber`] is `p + q·√d` with rational `p`, `q` and square-free
//! `d ≥ 1`. Values are always kept canonical: `q = 0` forces `d = 1`, and a
//! square factor of the radicand is pulled out into `q`. Two values are equal
//! exactly when their canonical triples are equal, which is what the derived
//! `PartialEq`/`Hash` test. An irrational element of `Q(√d)` can never equal an
//! element of `Q(√d')` for a different square-free `d'`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type BigRational = num_rational::BigRational;

/// Split `√m` as `outside · √d` with `d` square-free.
pub fn sqrt_canonical(m: &BigInt) -> Result<(BigInt, BigInt)> {
    if !m.is_positive() {
        return Err(Error::domain(format!("sqrt_canonical requires m >= 1, got {m}")));
    }
    if let Some(small) = m.to_u64() {
        let (o, d) = square_free_split(small);
        return Ok((BigInt::from(o), BigInt::from(d)));
    }
    let mut rest = m.clone();
    let mut outside = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut odd = false;
        while (&rest % &p).is_zero() {
            rest /= &p;
            if odd {
                outside *= &p;
            }
            odd = !odd;
        }
        if odd {
            core *= &p;
        }
        p += 1u32;
    }
    Ok((outside, core * rest))
}

/// Trial-division split of `m = outside² · d`.
pub fn square_free_split(m: u64) -> (u64, u64) {
    assert!(m >= 1);
    let mut rest = m;
    let mut outside = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            outside *= p;
        }
        if e % 2 == 1 {
            core *= p;
        }
        p += 1;
    }
    (outside, core * rest)
}

/// Canonical `p + q·√d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticNumber {
    p: BigRational,
    q: BigRational,
    d: BigInt,
}

// Fractions are always in lowest terms, so hashing the raw parts agrees with
// Eq and skips `Ratio`'s continued-fraction hash.
impl Hash for QuadraticNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.numer().hash(state);
        self.p.denom().hash(state);
        self.q.numer().hash(state);
        self.q.denom().hash(state);
        self.d.hash(state);
    }
}

impl QuadraticNumber {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(p: BigRational) -> Self {
        QuadraticNumber { p, q: BigRational::zero(), d: BigInt::one() }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn fraction(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        Ok(Self::rational(BigRational::new(num.into(), den)))
    }

    /// `√m` for a positive integer `m`.
    pub fn sqrt(m: impl Into<BigInt>) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), m.into())
    }

    /// `p + q·√m`, canonicalised. `m` need not be square-free.
    pub fn new(p: BigRational, q: BigRational, m: BigInt) -> Result<Self> {
        let (outside, d) = sqrt_canonical(&m)?;
        Ok(Self::canonical(p, q * BigRational::from_integer(outside), d))
    }

    /// `p + q·√d` for an already square-free `d`.
    pub(crate) fn from_square_free(p: BigRational, q: BigRational, d: BigInt) -> Self {
        debug_assert!(d.is_positive());
        Self::canonical(p, q, d)
    }

    // `d` must already be square-free.
    fn canonical(p: BigRational, q: BigRational, d: BigInt) -> Self {
        if q.is_zero() {
            QuadraticNumber { p, q, d: BigInt::one() }
        } else if d.is_one() {
            QuadraticNumber { p: p + q, q: BigRational::zero(), d }
        } else {
            QuadraticNumber { p, q, d }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.p
    }

    pub fn radical_coefficient(&self) -> &BigRational {
        &self.q
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.p)
    }

    fn field_with(&self, other: &Self) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::FieldMismatch(self.d.clone(), other.d.clone())),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        Ok(Self::canonical(&self.p + &other.p, &self.q + &other.q, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        let dr = BigRational::from_integer(d.clone());
        let p = &self.p * &other.p + &self.q * &other.q * dr;
        let q = &self.p * &other.q + &self.q * &other.p;
        Ok(Self::canonical(p, q, d))
    }

    /// Division, rationalised through the conjugate of the divisor.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        self.field_with(other)?;
        let norm = other.norm();
        let inv_norm = norm.recip();
        let conj = other.conjugate();
        let scaled = Self::canonical(&conj.p * &inv_norm, &conj.q * &inv_norm, conj.d);
        self.try_mul(&scaled)
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber { p: -&self.p, q: -&self.q, d: self.d.clone() }
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber { p: self.p.clone(), q: -&self.q, d: self.d.clone() }
    }

    /// Field norm `p² − q²·d`; nonzero for nonzero values since `d` is square-free.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(self.d.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::canonical(&self.p * c, &self.q * c, self.d.clone())
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sp = self.p.numer().sign();
        let sq = self.q.numer().sign();
        match (sp, sq) {
            (s, Sign::NoSign) => sign_to_ord(s),
            (Sign::NoSign, s) => sign_to_ord(s),
            (a, b) if a == b => sign_to_ord(a),
            (a, _) => {
                // Opposite signs: whichever of p² and q²d is larger decides.
                let p2 = &self.p * &self.p;
                let q2d = &self.q * &self.q * BigRational::from_integer(self.d.clone());
                match p2.cmp(&q2d) {
                    Ordering::Greater => sign_to_ord(a),
                    Ordering::Less => sign_to_ord(a).reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Exact comparison of two values in the same field (or rationals).
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.signum())
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return p;
        }
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        p + q * d.sqrt()
    }

    /// Decimal string with exactly `digits` fractional digits.
    ///
    /// Correctly rounded, with ties (only possible for rationals) going to the
    /// even neighbour. There is never an exponent.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let n = self.round_scaled(&scale);
        render_fixed(&n, digits)
    }

    // round(self · scale) to the nearest integer, ties to even.
    fn round_scaled(&self, scale: &BigInt) -> BigInt {
        let s = BigRational::from_integer(scale.clone());
        let p = &self.p * &s;
        if self.is_rational() {
            return round_half_even(&p);
        }
        // x = (A + B·√d) / C with C > 0. x is irrational, so no ties.
        let q = &self.q * &s;
        let c = p.denom().lcm(q.denom());
        let a = p.numer() * (&c / p.denom());
        let b = q.numer() * (&c / q.denom());
        // round(x) = floor((2A + C + 2B√d) / (2C))
        let num_int: BigInt = &a * 2 + &c;
        let rad = floor_mul_sqrt(&(&b * 2), &self.d);
        (num_int + rad).div_floor(&(&c * 2))
    }
}

fn sign_to_ord(s: Sign) -> Ordering {
    match s {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

// floor(b·√d) for square-free d > 1, where b√d is irrational unless b = 0.
fn floor_mul_sqrt(b: &BigInt, d: &BigInt) -> BigInt {
    let root = (b * b * d).sqrt();
    if b.is_negative() {
        -root - 1
    } else {
        root
    }
}

fn round_half_even(x: &BigRational) -> BigInt {
    let fl = x.numer().div_floor(x.denom());
    let rem = x - BigRational::from_integer(fl.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match rem.cmp(&half) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal if fl.is_even() => fl,
        Ordering::Equal => fl + 1,
    }
}

fn render_fixed(n: &BigInt, digits: usize) -> String {
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let split = s.len() - digits;
    let (whole, frac) = s.split_at(split);
    let mut out = String::with_capacity(s.len() + 2);
    if neg {
        out.push('-');
    }
    out.push_str(whole);
    if digits > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}

impl fmt::Display for QuadraticNumber {
    /// `p` for rationals, otherwise `p + q*sqrt(d)` (or `p - |q|*sqrt(d)`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.p);
        }
        let op = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt({})", self.p, op, self.q.abs(), self.d)
    }
}

impl From<BigRational> for QuadraticNumber {
    fn from(p: BigRational) -> Self {
        Self::rational(p)
    }
}

//! Log-domain scalars and half-integer gamma values.
//!
//! A [`LogScaled`] stores a sign and the natural logarithm of the magnitude.
//! The logarithm is kept as an unevaluated double-double `hi + lo`, so its
//! absolute error stays near one unit of `f64` precision even when the
//! magnitude is `10^(±10^6)`. Relative error of the represented value equals
//! absolute error of its log, so this is what keeps `Ω_N` accurate for large
//! `N`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use crate::{Error, Result};

pub(crate) const LN_2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
pub(crate) const LN_PI: Dd = Dd::new(1.1447298858494002, 1.0265951162707826e-17);
pub(crate) const LN_2PI: Dd = Dd::new(1.8378770664093456, -7.756588316134483e-17);
const LN_10: Dd = Dd::new(std::f64::consts::LN_10, -2.1707562233822494e-16);

/// Unevaluated sum `hi + lo`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub(crate) hi: f64,
    pub(crate) lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd::new(0.0, 0.0);

    pub(crate) const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub(crate) fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Natural log of a positive finite double.
    ///
    /// `lo` is the first-order correction `(x - e^hi) / e^hi`. It is left
    /// unnormalised so that [`Dd::exp_f64`] reproduces `x` exactly.
    pub(crate) fn ln_of(x: f64) -> Self {
        debug_assert!(x > 0.0 && x.is_finite());
        let hi = x.ln();
        let e = hi.exp();
        if !e.is_finite() || e == 0.0 {
            return Dd { hi, lo: 0.0 };
        }
        // Sterbenz: x and e agree to within a few ulps, so the difference is exact.
        Dd { hi, lo: (x - e) / e }
    }

    /// `e^(hi + lo)` rounded to a double (may be 0 or +inf).
    pub(crate) fn exp_f64(self) -> f64 {
        let e = self.hi.exp();
        if !e.is_finite() {
            return e;
        }
        e.mul_add(self.lo, e)
    }

    pub(crate) fn value(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub(crate) fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub(crate) fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub(crate) fn scale(self, c: f64) -> Dd {
        let (p, e) = two_prod(self.hi, c);
        let (hi, lo) = fast_two_sum(p, e + self.lo * c);
        Dd { hi, lo }
    }

    pub(crate) fn cmp(self, other: Dd) -> Ordering {
        let d = self.sub(other);
        d.hi.partial_cmp(&0.0)
            .unwrap_or(Ordering::Equal)
            .then(d.lo.partial_cmp(&0.0).unwrap_or(Ordering::Equal))
    }

    /// Split `self / ln 10` into an integer exponent and a fractional part in `[0, 1)`.
    fn log10_split(self) -> (i64, f64) {
        let q = self.hi / LN_10.hi;
        let (p, pe) = two_prod(q, LN_10.hi);
        let r = ((self.hi - p) - pe) + self.lo - q * LN_10.lo;
        let lo = r / LN_10.hi;
        let whole = q.floor();
        let mut frac = (q - whole) + lo;
        let mut exp = whole as i64;
        if frac < 0.0 {
            frac += 1.0;
            exp -= 1;
        } else if frac >= 1.0 {
            frac -= 1.0;
            exp += 1;
        }
        (exp, frac)
    }
}

/// Sign of a [`LogScaled`] value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Conversion of a log-domain value to an ordinary double.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Plain {
    Value(f64),
    /// Magnitude is below the smallest normal double.
    Underflow,
    /// Magnitude exceeds `f64::MAX`.
    Overflow,
}

/// A real number stored as sign and natural-log magnitude.
#[derive(Clone, Copy, Debug)]
pub struct LogScaled {
    sign: Sign,
    ln: Dd,
}

#[allow(clippy::should_implement_trait)]
impl LogScaled {
    pub const ZERO: LogScaled = LogScaled { sign: Sign::Zero, ln: Dd::ZERO };
    pub const ONE: LogScaled = LogScaled { sign: Sign::Positive, ln: Dd::ZERO };

    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain(format!("cannot take log of {x}")));
        }
        if x == 0.0 {
            return Ok(Self::ZERO);
        }
        let sign = if x > 0.0 { Sign::Positive } else { Sign::Negative };
        Ok(LogScaled { sign, ln: Dd::ln_of(x.abs()) })
    }

    /// Positive value `e^ln`.
    pub fn from_ln(ln: f64) -> Self {
        LogScaled { sign: Sign::Positive, ln: Dd::from_f64(ln) }
    }

    pub(crate) fn positive(ln: Dd) -> Self {
        LogScaled { sign: Sign::Positive, ln }
    }

    pub(crate) fn ln_dd(&self) -> Dd {
        self.ln
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.ln.value()
        }
    }

    /// The log magnitude as an unevaluated sum `hi + lo`.
    pub fn ln_parts(&self) -> (f64, f64) {
        (self.ln.hi, self.ln.lo)
    }

    pub fn log10(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (e, frac) = self.ln.log10_split();
        e as f64 + frac
    }

    pub fn abs(self) -> Self {
        match self.sign {
            Sign::Negative => LogScaled { sign: Sign::Positive, ..self },
            _ => self,
        }
    }

    pub fn neg(self) -> Self {
        let sign = match self.sign {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        };
        LogScaled { sign, ..self }
    }

    pub fn mul(self, other: LogScaled) -> LogScaled {
        let sign = self.sign.times(other.sign);
        if sign == Sign::Zero {
            return Self::ZERO;
        }
        LogScaled { sign, ln: self.ln.add(other.ln) }
    }

    pub fn div(self, other: LogScaled) -> Result<LogScaled> {
        Ok(self.mul(other.recip()?))
    }

    pub fn recip(self) -> Result<LogScaled> {
        if self.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(LogScaled { sign: self.sign, ln: self.ln.neg() })
    }

    /// `self^e` for real `e`.
    ///
    /// A negative base needs an integral exponent. Zero needs `e > 0`.
    pub fn pow(self, e: f64) -> Result<LogScaled> {
        if !e.is_finite() {
            return Err(Error::domain(format!("non-finite exponent {e}")));
        }
        match self.sign {
            Sign::Zero if e > 0.0 => Ok(Self::ZERO),
            Sign::Zero => Err(Error::domain(format!("0^{e} is undefined"))),
            Sign::Positive => Ok(Self::positive(self.ln.scale(e))),
            Sign::Negative => {
                if e.fract() != 0.0 {
                    return Err(Error::domain(format!(
                        "negative base with non-integer exponent {e}"
                    )));
                }
                let odd = (e / 2.0).fract() != 0.0;
                let sign = if odd { Sign::Negative } else { Sign::Positive };
                Ok(LogScaled { sign, ln: self.ln.scale(e) })
            }
        }
    }

    /// Total order consistent with the represented reals.
    pub fn compare(&self, other: &LogScaled) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                Sign::Zero => Ordering::Equal,
                Sign::Positive => self.ln.cmp(other.ln),
                Sign::Negative => other.ln.cmp(self.ln),
            },
            ord => ord,
        }
    }

    /// Nearest double; 0 on underflow and ±inf on overflow.
    pub fn to_f64(&self) -> f64 {
        let mag = self.ln.exp_f64();
        match self.sign {
            Sign::Zero => 0.0,
            Sign::Positive => mag,
            Sign::Negative => -mag,
        }
    }

    /// Like [`to_f64`](Self::to_f64), but flags values that a double cannot hold
    /// at full precision instead of silently returning 0 or inf.
    pub fn to_plain(&self) -> Plain {
        if self.is_zero() {
            return Plain::Value(0.0);
        }
        if self.ln.hi < f64::MIN_POSITIVE.ln() {
            return Plain::Underflow;
        }
        let v = self.to_f64();
        if v.is_infinite() {
            Plain::Overflow
        } else {
            Plain::Value(v)
        }
    }

    /// Scientific notation `d.ddd…e±x` computed from the log, so it never
    /// under- or overflows.
    pub fn to_scientific(&self, digits: usize) -> String {
        let sign = match self.sign {
            Sign::Zero => return format!("{:.*}e0", digits, 0.0),
            Sign::Negative => "-",
            Sign::Positive => "",
        };
        let (mut exp, frac) = self.ln.log10_split();
        let mut mantissa = format!("{:.*}", digits, 10f64.powf(frac));
        if mantissa.starts_with("10") {
            exp += 1;
            mantissa = format!("{:.*}", digits, 1.0);
        }
        format!("{sign}{mantissa}e{exp}")
    }

    /// Fixed-point with `digits` decimals when `|x|` is in `[1e-6, 1e6)`,
    /// scientific otherwise.
    pub fn format(&self, digits: usize) -> String {
        if self.is_zero() {
            return format!("{:.*}", digits, 0.0);
        }
        let l = self.log10();
        if (-6.0..6.0).contains(&l) {
            format!("{:.*}", digits, self.to_f64())
        } else {
            self.to_scientific(digits)
        }
    }
}

impl Mul for LogScaled {
    type Output = LogScaled;

    fn mul(self, rhs: LogScaled) -> LogScaled {
        LogScaled::mul(self, rhs)
    }
}

impl PartialEq for LogScaled {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for LogScaled {}

impl PartialOrd for LogScaled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogScaled {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for LogScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(f.precision().unwrap_or(10)))
    }
}

/// `Γ(n/2)` by the exact half-integer recurrence.
///
/// Even `n = 2m` gives `(m-1)!`; odd `n = 2m+1` gives `√π · Π_{j<m} (j + 1/2)`.
/// The logs of the factors are summed in double-double, so the relative
/// error is a small multiple of machine epsilon times `√n`.
pub fn lgamma_half(n: u64) -> Result<LogScaled> {
    if n == 0 {
        return Err(Error::domain("lgamma_half requires n >= 1"));
    }
    let m = n / 2;
    let acc = if n.is_multiple_of(2) {
        (2..m).fold(Dd::ZERO, |acc, j| acc.add(Dd::ln_of(j as f64)))
    } else {
        (0..m).fold(LN_PI.scale(0.5), |acc, j| acc.add(Dd::ln_of(j as f64 + 0.5)))
    };
    Ok(LogScaled::positive(acc))
}

/// The classical Stirling approximant `(x-1)^(x-1) e^-(x-1) √(2π(x-1))` to `Γ(x)`,
/// with no higher-order correction.
pub fn stirling_gamma(x: f64) -> Result<LogScaled> {
    if !(x.is_finite() && x > 1.0) {
        return Err(Error::domain(format!("stirling_gamma requires finite x > 1, got {x}")));
    }
    let m = x - 1.0;
    let ln_m = Dd::ln_of(m);
    let ln = ln_m
        .scale(m)
        .sub(Dd::from_f64(m))
        .add(LN_2PI.add(ln_m).scale(0.5));
    Ok(LogScaled::positive(ln))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn ls(x: f64) -> LogScaled {
        LogScaled::from_f64(x).unwrap()
    }

    #[test]
    fn small_products_round_trip() {
        let six = ls(2.0).mul(ls(3.0));
        assert_eq!(six.sign(), Sign::Positive);
        assert!((six.ln() - 6f64.ln()).abs() < 1e-15);
        assert_eq!(six.to_f64(), 6.0);
    }

    #[test]
    fn huge_power_stays_finite() {
        let v = ls(10.0).pow(1e6).unwrap();
        assert_eq!(v.sign(), Sign::Positive);
        assert!(rel(v.ln(), 1e6 * std::f64::consts::LN_10) < 1e-15);
        assert_eq!(v.to_plain(), Plain::Overflow);
        assert_eq!(v.to_scientific(3), "1.000e1000000");
    }

    #[test]
    fn division_by_zero_is_domain_error() {
        assert!(matches!(ls(1.0).div(LogScaled::ZERO), Err(Error::Domain(_))));
    }

    #[test]
    fn pow_domain() {
        assert!(ls(-2.0).pow(0.5).is_err());
        assert!(rel(ls(-2.0).pow(3.0).unwrap().to_f64(), -8.0) < 4.0 * f64::EPSILON);
        assert!(rel(ls(-2.0).pow(2.0).unwrap().to_f64(), 4.0) < 4.0 * f64::EPSILON);
        assert!(LogScaled::ZERO.pow(0.0).is_err());
        assert!(LogScaled::ZERO.pow(2.0).unwrap().is_zero());
    }

    #[test]
    fn zeros_compare_equal() {
        let a = LogScaled { sign: Sign::Zero, ln: Dd::new(5.0, 0.0) };
        assert_eq!(a, LogScaled::ZERO);
        assert!(ls(-1.0) < LogScaled::ZERO);
        assert!(ls(-3.0) < ls(-2.0));
        assert!(ls(2.0) < ls(3.0));
    }

    #[test]
    fn round_trip_is_exact() {
        for &x in &[1.0, 0.1, 6.0, 1e-300, 3.7e299, -42.5, 1.0 + f64::EPSILON, 123456.789] {
            assert_eq!(ls(x).to_f64(), x, "round trip of {x}");
        }
    }

    #[test]
    fn underflow_is_flagged() {
        let tiny = LogScaled::from_ln(-800.0);
        assert_eq!(tiny.to_plain(), Plain::Underflow);
        assert_eq!(tiny.to_f64(), 0.0);
        assert_eq!(tiny.to_scientific(4), "3.6679e-348");
    }

    #[test]
    fn gamma_half_integers() {
        assert_eq!(lgamma_half(2).unwrap().to_f64(), 1.0);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!(rel(lgamma_half(1).unwrap().to_f64(), sqrt_pi) < 1e-15);
        // Γ(7/2) = 15√π/8
        assert!(rel(lgamma_half(7).unwrap().to_f64(), 3.3233509704478426) < 1e-15);
        assert!(lgamma_half(0).is_err());
    }

    #[test]
    fn stirling_values() {
        assert!(rel(stirling_gamma(2.0).unwrap().to_f64(), 0.9221370088957891) < 1e-14);
        let s11 = stirling_gamma(11.0).unwrap().to_f64();
        assert!(rel(s11, 3598695.618741036) < 1e-14);
        assert!(rel(s11 / 3628800.0, 0.9917040395560615) < 1e-14);
        assert!(stirling_gamma(1.0).is_err());
        assert!(stirling_gamma(f64::NAN).is_err());
    }

    #[test]
    fn stirling_ratio_increases_toward_one() {
        let mut prev = 0.0;
        for x in 2..=200u64 {
            let ratio = stirling_gamma(x as f64)
                .unwrap()
                .div(lgamma_half(2 * x).unwrap())
                .unwrap()
                .to_f64();
            assert!(ratio > prev && ratio < 1.0, "x={x} ratio={ratio}");
            prev = ratio;
        }
        assert!(prev > 0.999);
    }

    #[test]
    fn scientific_rounding_carries() {
        assert_eq!(ls(9.99999).to_scientific(2), "1.00e1");
        assert_eq!(ls(-0.00025).to_scientific(1), "-2.5e-4");
        assert_eq!(ls(4.18879020478639).format(10), "4.1887902048");
    }
}

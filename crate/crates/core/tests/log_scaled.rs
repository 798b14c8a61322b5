use hdgeom::scaled::{lgamma_half, LogScaled, Plain};
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

const EPS: f64 = f64::EPSILON;

fn ulps_apart(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    assert_eq!(a.signum(), b.signum(), "{a} vs {b}");
    (a.abs().to_bits() as i64 - b.abs().to_bits() as i64).unsigned_abs()
}

fn magnitude() -> impl Strategy<Value = f64> {
    (-300.0f64..300.0, prop::bool::ANY).prop_map(|(e, neg)| {
        let x = 10f64.powf(e / 3.0);
        if neg { -x } else { x }
    })
}

proptest! {
    #[test]
    fn round_trip_is_exact(x in magnitude()) {
        prop_assert_eq!(LogScaled::from_f64(x).unwrap().to_f64(), x);
    }

    #[test]
    fn product_is_commutative(a in magnitude(), b in magnitude()) {
        let (x, y) = (LogScaled::from_f64(a).unwrap(), LogScaled::from_f64(b).unwrap());
        prop_assert_eq!(x.mul(y).compare(&y.mul(x)), std::cmp::Ordering::Equal);
    }

    #[test]
    fn product_is_associative(a in magnitude(), b in magnitude(), c in magnitude()) {
        let [x, y, z] = [a, b, c].map(|v| LogScaled::from_f64(v).unwrap());
        let l = x.mul(y).mul(z);
        let r = x.mul(y.mul(z));
        match (l.to_plain(), r.to_plain()) {
            (Plain::Value(u), Plain::Value(v)) if u.abs() >= f64::MIN_POSITIVE => {
                prop_assert!(ulps_apart(u, v) <= 4, "{u} vs {v}");
            }
            _ => prop_assert!((l.ln() - r.ln()).abs() <= 4.0 * EPS * l.ln().abs().max(1.0)),
        }
    }

    #[test]
    fn product_matches_float(a in -1e100f64..1e100, b in -1e100f64..1e100) {
        prop_assume!(a != 0.0 && b != 0.0 && (a * b).abs() > f64::MIN_POSITIVE);
        let got = LogScaled::from_f64(a).unwrap().mul(LogScaled::from_f64(b).unwrap()).to_f64();
        prop_assert!(ulps_apart(got, a * b) <= 2);
    }

    #[test]
    fn quotient_inverts_product(a in magnitude(), b in magnitude()) {
        let (x, y) = (LogScaled::from_f64(a).unwrap(), LogScaled::from_f64(b).unwrap());
        let back = x.mul(y).div(y).unwrap().to_f64();
        prop_assert!(ulps_apart(back, a) <= 2);
    }
}

#[test]
fn extremes_are_reported_not_flushed() {
    let tiny = LogScaled::from_ln(-2000.0);
    assert_eq!(tiny.to_plain(), Plain::Underflow);
    assert!(!tiny.is_zero());
    assert_eq!(LogScaled::from_ln(2000.0).to_plain(), Plain::Overflow);
    assert!(tiny.to_scientific(4).ends_with("e-869"));
}

// ln of a big integer via its top 64 bits plus a shift, in double-double.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn dd_add((ah, al): (f64, f64), (bh, bl): (f64, f64)) -> (f64, f64) {
    let (s, e) = two_sum(ah, bh);
    two_sum(s, e + al + bl)
}

const LN2: (f64, f64) = (std::f64::consts::LN_2, 2.3190468138462996e-17);
const HALF_LN_PI: (f64, f64) = (0.5723649429247001, 5.132975581353913e-18);

fn dd_ln2_times(k: f64) -> (f64, f64) {
    let p = LN2.0 * k;
    let e = LN2.0.mul_add(k, -p);
    two_sum(p, e + LN2.1 * k)
}

fn ln_big(x: &BigUint) -> (f64, f64) {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top: u64 = (x >> shift).try_into().unwrap();
    let t = top as f64;
    let h = t.ln();
    // first-order correction for the f64 rounding of `top` and of `ln`
    let lo = ((top as i128 - t as i128) as f64) / t + (t - h.exp()) / h.exp();
    dd_add((h, lo), dd_ln2_times(shift as f64))
}

#[test]
fn half_integer_gamma_matches_integer_products() {
    // Γ(m) = (m−1)!  and  Γ(m + ½) = √π · (2m−1)!! / 2^m
    let mut fact = BigUint::one();
    let mut dfact = BigUint::one();
    let mut worst = 0.0f64;
    for n in 1..=10_000u64 {
        let m = n / 2;
        let reference = if n % 2 == 0 {
            if m >= 2 {
                fact *= m - 1;
            }
            ln_big(&fact)
        } else {
            if m >= 1 {
                dfact *= 2 * m - 1;
            }
            let base = dd_add(ln_big(&dfact), HALF_LN_PI);
            dd_add(base, {
                let (h, l) = dd_ln2_times(m as f64);
                (-h, -l)
            })
        };
        let (hi, lo) = lgamma_half(n).unwrap().ln_parts();
        let diff = (hi - reference.0) + (lo - reference.1);
        worst = worst.max(diff.abs());
        assert!(diff.abs() < 1e-12, "n={n}: diff {diff}");
        assert!(diff.abs() <= 10.0 * n as f64 * EPS, "n={n}: diff {diff}");
    }
    assert!(worst < 1e-13, "worst {worst}");
}

//! Double-double reals.
//!
//! A [`Real`] is an unevaluated sum `hi + lo` of two `f64` with
//! `|lo| <= ulp(hi) / 2`, giving about 106 significand bits. Addition and
//! multiplication carry their rounding error forward (two-sum / FMA
//! two-product), so every accumulation through [`Real`] is compensated.
//!
//! Trigonometric functions only accept rational multiples of pi. The
//! rational is reduced modulo 2 exactly before any floating-point work, so
//! large arguments like `j (n - 2i) pi / 2^p` lose no accuracy.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Real {
    hi: f64,
    lo: f64,
}

const PI: Real = Real {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Real {
    pub const ZERO: Real = Real { hi: 0.0, lo: 0.0 };
    pub const ONE: Real = Real { hi: 1.0, lo: 0.0 };

    pub fn new(value: f64) -> Self {
        Real { hi: value, lo: 0.0 }
    }

    pub fn from_i64(value: i64) -> Self {
        let hi = value as f64;
        // the remainder is exact: |value - hi| < 2^11
        let lo = (value as i128 - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Real { hi, lo }
    }

    pub fn from_bigint(value: &BigInt) -> Self {
        let hi = value.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return Real::new(hi);
        }
        let rest = value - float_to_bigint(hi);
        let lo = rest.to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Real { hi, lo }
    }

    pub fn from_biguint(value: &BigUint) -> Self {
        Self::from_bigint(&BigInt::from_biguint(Sign::Plus, value.clone()))
    }

    /// `2^exp`, exact.
    pub fn pow2(exp: i32) -> Self {
        Real::new(2f64.powi(exp))
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    /// -1, 0 or 1.
    pub fn signum(self) -> i32 {
        match self.partial_cmp(&Real::ZERO) {
            Some(Ordering::Greater) => 1,
            Some(Ordering::Less) => -1,
            _ => 0,
        }
    }

    /// Multiply by `2^exp`; exact unless the result leaves the normal range.
    pub fn ldexp(self, exp: i32) -> Self {
        let s = 2f64.powi(exp);
        Real {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn powi(self, mut exp: u32) -> Self {
        let mut base = self;
        let mut acc = Real::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Nearest integer, ties away from zero.
    pub fn round(self) -> BigInt {
        if self.hi.fract() == 0.0 {
            return float_to_bigint(self.hi) + float_to_bigint(self.lo.round());
        }
        let floor = self.hi.floor();
        let r = if self.hi - floor == 0.5 {
            // a tie in hi is broken by lo
            let up = if self.lo != 0.0 { self.lo > 0.0 } else { self.hi > 0.0 };
            if up {
                floor + 1.0
            } else {
                floor
            }
        } else {
            self.hi.round()
        };
        float_to_bigint(r)
    }

    /// `|self - exact|`.
    pub fn abs_error_to(self, exact: &BigInt) -> f64 {
        (self - Real::from_bigint(exact)).abs().to_f64()
    }

    /// `pi * num / den`.
    pub fn pi_frac(num: i64, den: u64) -> Self {
        PI * Real::from_i64(num) / Real::from_i64(den as i64)
    }

    /// `(sin(pi * num / den), cos(pi * num / den))`.
    ///
    /// Multiples of `pi / 2` come out exact.
    pub fn sin_cos_pi_frac(num: i64, den: u64) -> (Real, Real) {
        assert!(den > 0, "zero denominator");
        let den = den as i128;
        let m = (num as i128).rem_euclid(2 * den);
        let quadrant = (2 * m) / den;
        let rem = (2 * m) % den;
        // angle = quadrant * pi/2 + pi * rem / (2 den), with rem / (2 den) in [0, 1/2)
        let (s, c) = if 2 * rem <= den {
            sin_cos_reduced(rem, 2 * den)
        } else {
            let (s, c) = sin_cos_reduced(den - rem, 2 * den);
            (c, s)
        };
        match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin_pi_frac(num: i64, den: u64) -> Self {
        Self::sin_cos_pi_frac(num, den).0
    }

    pub fn cos_pi_frac(num: i64, den: u64) -> Self {
        Self::sin_cos_pi_frac(num, den).1
    }
}

fn float_to_bigint(x: f64) -> BigInt {
    // x is integral here
    if x.abs() < 9.0e15 {
        BigInt::from(x as i64)
    } else {
        let (mantissa, exp, sign) = num_traits::float::FloatCore::integer_decode(x);
        let mag = BigInt::from(mantissa);
        let mag = if exp >= 0 {
            mag << exp as usize
        } else {
            mag >> (-exp) as usize
        };
        if sign < 0 {
            -mag
        } else {
            mag
        }
    }
}

/// Sine and cosine of `pi * a / b` for `0 <= a / b <= 1/4` by Taylor series.
fn sin_cos_reduced(a: i128, b: i128) -> (Real, Real) {
    if a == 0 {
        return (Real::ZERO, Real::ONE);
    }
    let x = PI * Real::from_i64(a as i64) / Real::from_i64(b as i64);
    let x2 = x * x;

    let mut sin = x;
    let mut term = x;
    let mut k = 1.0;
    loop {
        term = -(term * x2) / Real::new((2.0 * k) * (2.0 * k + 1.0));
        sin += term;
        if term.hi.abs() < 1e-36 {
            break;
        }
        k += 1.0;
    }

    let mut cos = Real::ONE;
    let mut term = Real::ONE;
    let mut k = 1.0;
    loop {
        term = -(term * x2) / Real::new((2.0 * k - 1.0) * (2.0 * k));
        cos += term;
        if term.hi.abs() < 1e-36 {
            break;
        }
        k += 1.0;
    }
    (sin, cos)
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Real { hi, lo }
    }
}

impl AddAssign for Real {
    fn add_assign(&mut self, rhs: Real) {
        *self = *self + rhs;
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        self + (-rhs)
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Real { hi, lo }
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Real::new(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Real::new(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Real { hi, lo } + Real::new(q3)
    }
}

impl Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::ZERO, |acc, x| acc + x)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl From<f64> for Real {
    fn from(value: f64) -> Self {
        Real::new(value)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.*}", p, self.to_f64()),
            None => write!(f, "{}", self.to_f64()),
        }
    }
}

//! Scans over the weights of `X(d, n)` and trigonometric closed forms for
//! the weight when `d` has two or three binary ones.
//!
//! Scan verdicts always come from exact weights. The closed forms are
//! evaluated in double-double arithmetic and only ever compared against the
//! exact values.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::exactnum::{pow2, Real};
use crate::symfun::weight_elem;

/// Largest `n_max` accepted by [`scan_conjecture1`].
pub const SCAN1_MAX_N: u64 = 256;
/// Largest `n_max` accepted by [`scan_conjecture2`].
pub const SCAN2_MAX_N: u64 = 1024;
/// Threshold, relative to `(2 cos(pi / 2^(t+1)))^(m-1)`, under which the
/// wt(d)=2 correction counts as zero.
pub const T_ZERO_REL: f64 = 1e-6;

/// One `(d, n)` cell of a weight scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanCell {
    pub d: u64,
    pub n: u64,
    pub weight: BigUint,
    pub balanced: bool,
    /// `d = 1`, or `d = 2^t` and `n = 2^(t+1) l - 1`.
    pub predicted: bool,
}

impl ScanCell {
    pub fn new(d: u64, n: u64) -> Self {
        let weight = weight_elem(d, n);
        let balanced = n >= 1 && weight == pow2(n - 1);
        ScanCell {
            d,
            n,
            weight,
            balanced,
            predicted: predicted_balanced(d, n),
        }
    }

    pub fn agrees(&self) -> bool {
        self.balanced == self.predicted
    }
}

/// Membership in the known balanced family.
pub fn predicted_balanced(d: u64, n: u64) -> bool {
    if d == 1 {
        return n >= 1;
    }
    if !d.is_power_of_two() {
        return false;
    }
    let period = 2 * d;
    (n + 1).is_multiple_of(period)
}

/// All cells `2 <= d <= n` of row `n`, ordered by `d`.
pub fn scan_conjecture1_row(n: u64) -> Vec<ScanCell> {
    (2..=n).into_par_iter().map(|d| ScanCell::new(d, n)).collect()
}

/// All cells `2 <= d <= n <= n_max`, ordered by `(n, d)`.
pub fn scan_conjecture1(n_max: u64) -> Result<Vec<ScanCell>> {
    if n_max > SCAN1_MAX_N {
        return Err(Error::Budget(format!("scan capped at n = {SCAN1_MAX_N}")));
    }
    Ok((2..=n_max).flat_map(scan_conjecture1_row).collect())
}

/// Whether `wt(X(2^t + 1, 2^(t+1) l)) = 2^(n-2)`.
pub fn quarter_weight_check(t: u32, l: u64) -> Result<bool> {
    if t == 0 || l == 0 {
        return Err(invalid("need t >= 1 and l >= 1"));
    }
    if t > 20 {
        return Err(Error::Budget(format!("t = {t}")));
    }
    let n = (1u64 << (t + 1)) * l;
    Ok(weight_elem((1 << t) + 1, n) == pow2(n - 2))
}

/// The wt(d)=2 closed form and its correction sum.
#[derive(Clone, Copy, Debug)]
pub struct Wt2Trig {
    /// `2^(m-2) + 2^(-t) T`.
    pub value: Real,
    /// `T = sum_{a odd} (2 cos A)^(m-1) sin(r A) / sin A`, `A = a pi / 2^(t+1)`.
    pub t_sum: Real,
}

/// Weight of `X(2^t + 1, m)` for `m >= 2^(t+1)`, with `r = m - 2^(t+1)`.
pub fn weight_wt2_trig(t: u32, m: u64) -> Result<Wt2Trig> {
    if t == 0 || t > 24 {
        return Err(invalid(format!("need 1 <= t <= 24, got {t}")));
    }
    let base = 1u64 << (t + 1);
    if m < base {
        return Err(invalid(format!("need m >= 2^(t+1) = {base}, got {m}")));
    }
    let r = (m - base) as i64;
    let exp = u32::try_from(m - 1).map_err(|_| Error::Budget(format!("m = {m}")))?;
    let t_sum: Real = (1..base / 2)
        .step_by(2)
        .map(|a| {
            let a = a as i64;
            let (sin_a, cos_a) = Real::sin_cos_pi_frac(a, base);
            let sin_ra = Real::sin_pi_frac(a * r, base);
            (cos_a.ldexp(1)).powi(exp) * sin_ra / sin_a
        })
        .sum();
    let value = Real::pow2(m as i32 - 2) + t_sum.ldexp(-(t as i32));
    Ok(Wt2Trig { value, t_sum })
}

/// Weight of `X(1 + 2^s + 2^t, n)` by its closed form, `1 <= s < t`.
pub fn weight_wt3_trig(s: u32, t: u32, n: u64) -> Result<Real> {
    if s == 0 || s >= t || t > 24 {
        return Err(invalid(format!("need 1 <= s < t <= 24, got s={s}, t={t}")));
    }
    if n == 0 {
        return Err(invalid("need n >= 1"));
    }
    let exp = u32::try_from(n - 1).map_err(|_| Error::Budget(format!("n = {n}")))?;
    let n_i = n as i64;
    let two_s = 1i64 << s;
    let den_t = 1u64 << (t + 1);
    let first: Real = (1..(1i64 << t))
        .step_by(2)
        .map(|j| {
            let (sin_a, cos_a) = Real::sin_cos_pi_frac(j, den_t);
            let num = Real::sin_pi_frac((n_i - two_s) * j, den_t) * Real::sin_pi_frac(two_s * j, den_t);
            let den = sin_a * Real::sin_pi_frac(2 * two_s * j, den_t);
            cos_a.ldexp(1).powi(exp) * num / den
        })
        .sum();
    let den_s = 1u64 << (s + 1);
    let second: Real = (1..two_s)
        .step_by(2)
        .map(|k| {
            let (sin_b, cos_b) = Real::sin_cos_pi_frac(k, den_s);
            cos_b.ldexp(1).powi(exp) * Real::sin_pi_frac(n_i * k, den_s) / sin_b
        })
        .sum();
    Ok(Real::pow2(n as i32 - 3) - first.ldexp(-(t as i32)) - second.ldexp(-(s as i32) - 1))
}

/// Sign of `sin(r pi / 2^(t+1))`, exactly.
fn sin_sign(t: u32, r: u64) -> i32 {
    let half = 1u64 << (t + 1);
    match r % (2 * half) {
        0 => 0,
        x if x == half => 0,
        x if x < half => 1,
        _ => -1,
    }
}

/// The correction sum of [`weight_wt2_trig`] at `m = 2^(t+1) + r` has the
/// sign of `sin(r pi / 2^(t+1))`, and vanishes only when `2^(t+1) | r`.
pub fn t_sign_check(t: u32, r: u64) -> Result<bool> {
    let m = (1u64 << (t + 1)) + r;
    let tt = weight_wt2_trig(t, m)?.t_sum;
    // the a = 1 term sets the size of T
    let lead = 2.0 * Real::cos_pi_frac(1, 1u64 << (t + 1)).to_f64();
    let scale = T_ZERO_REL * lead.powf(m as f64 - 1.0);
    if tt.abs().to_f64() < scale {
        return Ok(r.is_multiple_of(1u64 << (t + 1)));
    }
    Ok(tt.signum() == sin_sign(t, r))
}

/// A cell of the high-weight scan, with `deficit = weight - 2^(n-2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficitCell {
    pub cell: ScanCell,
    pub deficit: BigInt,
}

impl DeficitCell {
    pub fn new(d: u64, n: u64) -> Self {
        let cell = ScanCell::new(d, n);
        let deficit = BigInt::from(cell.weight.clone()) - BigInt::from(pow2(n - 2));
        DeficitCell { cell, deficit }
    }

    /// `weight < 2^(n-2)`.
    pub fn holds(&self) -> bool {
        self.deficit < BigInt::zero()
    }
}

/// Cells of row `n` with `wt(d) >= 6` and `2 (d - 1) <= n`, ordered by `d`.
pub fn scan_conjecture2_row(n: u64) -> Vec<DeficitCell> {
    let d_max = n / 2 + 1;
    (63..=d_max)
        .into_par_iter()
        .filter(|d| d.count_ones() >= 6)
        .map(|d| DeficitCell::new(d, n))
        .collect()
}

/// All high-weight cells with `n <= n_max`, ordered by `(n, d)`.
pub fn scan_conjecture2(n_max: u64) -> Result<Vec<DeficitCell>> {
    if n_max > SCAN2_MAX_N {
        return Err(Error::Budget(format!("scan capped at n = {SCAN2_MAX_N}")));
    }
    Ok((2..=n_max).flat_map(scan_conjecture2_row).collect())
}

/// `(d, m)` with `d = 2^t + 1`, `t <= t_max`, `2^(t+1) < m <= m_max`,
/// `r = m - 2^(t+1)` not a multiple of `2^(t+1)`, where
/// `wt(X(d, m)) = 2^(m-2)` nevertheless.
pub fn wt2_quarter_violations(t_max: u32, m_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for t in 1..=t_max {
        let base = 1u64 << (t + 1);
        let d = (1u64 << t) + 1;
        for m in base + 1..=m_max {
            if !(m - base).is_multiple_of(base) && weight_elem(d, m) == pow2(m - 2) {
                out.push((d, m));
            }
        }
    }
    out
}

/// `(j, n)` with odd `2^t + 1 < j < 2^(t+1) + 1`, `n = 2^(t+1) l`,
/// `1 <= l <= l_max`, where `wt(X(j, n)) >= 2^(n-2)`.
pub fn between_odd_violations(t_max: u32, l_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for t in 1..=t_max {
        let base = 1u64 << (t + 1);
        for l in 1..=l_max {
            let n = base * l;
            for j in ((1u64 << t) + 3..base + 1).step_by(2) {
                if weight_elem(j, n) >= pow2(n - 2) {
                    out.push((j, n));
                }
            }
        }
    }
    out
}

/// `(d, n)` with odd `2^t + 1 < d <= 2^(t+1) - 1`, `n = 2^(t+1) l + r`,
/// `l` even, `0 <= r < 2^(t+1) + 2^t`, `2 <= n <= n_max`, where
/// `wt(X(d, n)) = 2^(n-2)`.
pub fn even_block_violations(t_max: u32, n_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for t in 1..=t_max {
        let base = 1u64 << (t + 1);
        let r_end = base + (1u64 << t);
        for d in ((1u64 << t) + 3..base).step_by(2) {
            for l in (0..).step_by(2).take_while(|&l| base * l <= n_max) {
                for r in 0..r_end {
                    let n = base * l + r;
                    if (2..=n_max).contains(&n) && weight_elem(d, n) == pow2(n - 2) {
                        out.push((d, n));
                    }
                }
            }
        }
    }
    out
}

/// `|wt(X(d, n)) - 2^(n-2)| / 2^(n-2)`, the relative size of the
/// trigonometric corrections.
pub fn relative_correction(d: u64, n: u64) -> f64 {
    let deficit = BigInt::from(weight_elem(d, n)) - BigInt::from(pow2(n - 2));
    let r = Real::from_bigint(&deficit).ldexp(-(n as i32 - 2));
    r.abs().to_f64()
}

/// Bound on `|wt(X(2^t + 1, m)) - 2^(m-2)| / 2^(m-2)` from the absolute
/// values of the terms of the wt(d)=2 closed form.
pub fn wt2_correction_envelope(t: u32, m: u64) -> f64 {
    let base = 1u64 << (t + 1);
    let sum: f64 = (1..base / 2)
        .step_by(2)
        .map(|a| {
            let (s, c) = Real::sin_cos_pi_frac(a as i64, base);
            (2.0 * c.to_f64()).abs().powf(m as f64 - 1.0) / s.to_f64().abs()
        })
        .sum();
    sum * (-(t as f64) - (m as f64 - 2.0)).exp2()
}

/// Bound on `|wt(X(1 + 2^s + 2^t, n)) - 2^(n-3)| / 2^(n-3)` from the
/// absolute values of the terms of the wt(d)=3 closed form.
pub fn wt3_correction_envelope(s: u32, t: u32, n: u64) -> f64 {
    let pw = n as f64 - 1.0;
    let den_t = 1u64 << (t + 1);
    let two_s = 1i64 << s;
    let first: f64 = (1..(1i64 << t))
        .step_by(2)
        .map(|j| {
            let (sa, ca) = Real::sin_cos_pi_frac(j, den_t);
            let num = Real::sin_pi_frac(two_s * j, den_t).to_f64().abs();
            let den = sa.to_f64().abs() * Real::sin_pi_frac(2 * two_s * j, den_t).to_f64().abs();
            (2.0 * ca.to_f64()).abs().powf(pw) * num / den
        })
        .sum();
    let den_s = 1u64 << (s + 1);
    let second: f64 = (1..two_s)
        .step_by(2)
        .map(|k| {
            let (sb, cb) = Real::sin_cos_pi_frac(k, den_s);
            (2.0 * cb.to_f64()).abs().powf(pw) / sb.to_f64().abs()
        })
        .sum();
    (first * (-(t as f64)).exp2() + second * (-(s as f64) - 1.0).exp2()) * (3.0 - n as f64).exp2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelopes_bound_the_corrections() {
        for m in 4..40 {
            let exact = relative_correction(3, m);
            assert!(exact <= wt2_correction_envelope(1, m) * (1.0 + 1e-12), "m={m}");
        }
        assert!(wt2_correction_envelope(2, 30) < wt2_correction_envelope(2, 20));
        assert!(wt3_correction_envelope(1, 2, 30) < wt3_correction_envelope(1, 2, 20));
    }

    fn balanced_set(cells: &[ScanCell]) -> Vec<(u64, u64)> {
        cells.iter().filter(|c| c.balanced).map(|c| (c.d, c.n)).collect()
    }

    #[test]
    fn scan1_examples() {
        let c8 = scan_conjecture1(8).unwrap();
        assert_eq!(balanced_set(&c8), vec![(2, 3), (2, 7), (4, 7)]);
        assert!(c8.iter().all(ScanCell::agrees));
        assert_eq!(balanced_set(&scan_conjecture1(4).unwrap()), vec![(2, 3)]);
        assert!(c8.windows(2).all(|w| (w[0].n, w[0].d) < (w[1].n, w[1].d)));
    }

    #[test]
    fn prediction_family() {
        assert!(predicted_balanced(1, 5));
        assert!(predicted_balanced(2, 11));
        assert!(predicted_balanced(8, 15));
        assert!(!predicted_balanced(8, 7));
        assert!(!predicted_balanced(3, 7));
    }

    #[test]
    fn quarter_weight_examples() {
        assert!(quarter_weight_check(1, 1).unwrap());
        assert!(quarter_weight_check(1, 2).unwrap());
        assert!(quarter_weight_check(2, 1).unwrap());
        assert!(quarter_weight_check(0, 1).is_err());
    }

    #[test]
    fn wt2_examples() {
        let w = weight_wt2_trig(1, 6).unwrap();
        assert_eq!(w.t_sum.round(), BigInt::from(8));
        assert!(w.t_sum.abs_error_to(&BigInt::from(8)) < 1e-25);
        assert_eq!(w.value.round(), BigInt::from(20));
        let w = weight_wt2_trig(1, 8).unwrap();
        assert!(w.t_sum.abs().to_f64() < 1e-20);
        assert_eq!(w.value.round(), BigInt::from(64));
        let w = weight_wt2_trig(2, 10).unwrap();
        assert_eq!(w.value.round(), BigInt::from(weight_elem(5, 10)));
        assert!(weight_wt2_trig(2, 7).is_err());
    }

    #[test]
    fn wt3_examples() {
        assert_eq!(weight_wt3_trig(1, 2, 12).unwrap().round(), BigInt::from(792));
        assert_eq!(
            weight_wt3_trig(1, 2, 14).unwrap().round(),
            BigInt::from(weight_elem(7, 14))
        );
        assert_eq!(
            weight_wt3_trig(2, 3, 16).unwrap().round(),
            BigInt::from(weight_elem(13, 16))
        );
        assert!(weight_wt3_trig(2, 2, 16).is_err());
    }

    #[test]
    fn sign_examples() {
        assert!(t_sign_check(1, 2).unwrap());
        assert!(t_sign_check(1, 4).unwrap());
        assert!(t_sign_check(2, 3).unwrap());
        assert_eq!(sin_sign(2, 3), 1);
        assert_eq!(sin_sign(2, 12), -1);
        assert_eq!(sin_sign(2, 16), 0);
    }

    #[test]
    fn scan2_examples() {
        for (d, n) in [(63, 124), (63, 125), (95, 188)] {
            assert!(DeficitCell::new(d, n).holds(), "d={d} n={n}");
        }
        let cells = scan_conjecture2(130).unwrap();
        assert!(cells.iter().all(|c| c.cell.d == 63));
        assert_eq!(cells.len(), 130 - 124 + 1);
    }

    #[test]
    fn violation_lists_are_empty_on_small_ranges() {
        assert!(wt2_quarter_violations(3, 40).is_empty());
        assert!(between_odd_violations(3, 2).is_empty());
        assert!(even_block_violations(2, 40).is_empty());
    }
}

//! Exact integer combinatorics and lacunary binomial sums.

mod real;

pub use real::Real;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// Rows above this size are computed on demand and not cached.
const ROW_CACHE_MAX_N: u64 = 4096;

fn row_cache() -> &'static RwLock<HashMap<u64, Arc<[BigUint]>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<[BigUint]>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn compute_row(n: u64) -> Arc<[BigUint]> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row.into()
}

/// Row `n` of Pascal's triangle, `C(n, 0..=n)`.
///
/// Rows are memoized process-wide; the cache is safe to hit from several
/// threads at once.
pub fn binom_row(n: u64) -> Arc<[BigUint]> {
    if n > ROW_CACHE_MAX_N {
        return compute_row(n);
    }
    if let Some(row) = row_cache().read().unwrap().get(&n) {
        return Arc::clone(row);
    }
    let row = compute_row(n);
    row_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(row)
        .clone()
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    binom_row(n)[k as usize].clone()
}

/// `C(n, k)` for small arguments where the value fits in a `u64`.
pub(crate) fn binom_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(c).expect("binomial overflows u64")
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn pow2(exp: u64) -> BigUint {
    BigUint::one() << exp
}

/// `a / b`, failing unless `b` divides `a`.
pub fn exact_div(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    if b.is_zero() {
        return Err(invalid("division by zero"));
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(invalid(format!("{b} does not divide {a}")));
    }
    Ok(q)
}

/// `n! / (parts[0]! parts[1]! ...)`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigUint> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(invalid(format!("parts sum to {total}, expected {n}")));
    }
    // product of binomials avoids the n! intermediate
    let mut acc = BigUint::one();
    let mut filled = 0u64;
    for &part in parts {
        filled += part;
        acc *= binom(filled, part as i64);
    }
    Ok(acc)
}

/// Trial division; inputs here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3u64;
    while q.saturating_mul(q) <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `C(n, k) mod p` via Lucas' theorem: the product of `C(a_i, b_i)` over
/// the base-`p` digits of `n` and `k`.
pub fn binom_mod_p(n: u64, k: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    if p == 2 {
        return Ok(u64::from(k & n == k));
    }
    let (mut n, mut k) = (n, k);
    let mut acc: u128 = 1;
    while k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return Ok(0);
        }
        acc = acc * (small_binom_mod(a, b, p) as u128) % p as u128;
        n /= p;
        k /= p;
    }
    Ok(acc as u64)
}

fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    // a, b < p: C(a, b) = prod (a - i) / (i + 1), inverse by Fermat
    let p128 = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..b {
        num = num * ((a - i) as u128) % p128;
        den = den * ((i + 1) as u128) % p128;
    }
    let inv = mod_pow(den, p128 - 2, p128);
    (num * inv % p128) as u64
}

fn mod_pow(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// One period of `j -> C(j, d) mod 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityWord {
    pub d: u64,
    pub period: u64,
    pub bits: Vec<bool>,
}

impl ParityWord {
    pub fn new(d: u64) -> Result<Self> {
        let period = parity_period(d)?;
        let bits = (0..period).map(|j| j & d == d).collect();
        Ok(ParityWord { d, period, bits })
    }

    /// The period tiled out to `len` bits.
    pub fn tile(&self, len: usize) -> Vec<bool> {
        (0..len).map(|j| self.bits[j % self.bits.len()]).collect()
    }
}

/// Least period of `C(j, d) mod 2` in `j`, namely `2^(floor(log2 d) + 1)`.
///
/// Only defined for `d >= 2`; `d = 1` gives `0101...`, period 2, and is
/// left to the caller.
pub fn parity_period(d: u64) -> Result<u64> {
    if d < 2 {
        return Err(invalid(format!("parity period needs d >= 2, got {d}")));
    }
    let bits = 64 - d.leading_zeros() as u64;
    let period = 1u64
        .checked_shl(bits as u32)
        .ok_or_else(|| Error::Budget(format!("period of d={d} overflows")))?;
    let half = period / 2;
    // the half period must fail somewhere (j = d is one such place)
    let half_fails = (0..half).any(|j| (j & d == d) != ((j + half) & d == d));
    if !half_fails {
        return Err(Error::Invariant(format!(
            "half period {half} also a period for d={d}"
        )));
    }
    Ok(period)
}

/// Bits `C(j, d) mod 2` for `0 <= j < len`.
pub fn parity_sequence(d: u64, len: usize) -> Result<Vec<bool>> {
    if d < 2 {
        return Err(invalid(format!("parity sequence needs d >= 2, got {d}")));
    }
    (0..len as u64)
        .map(|j| binom_mod_p(j, d, 2).map(|b| b == 1))
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn check_residue(power: u32, i: u64) -> Result<u64> {
    if power == 0 || power > 62 {
        return Err(invalid(format!("modulus exponent must be in 1..=62, got {power}")));
    }
    let modulus = 1u64 << power;
    if i >= modulus {
        return Err(invalid(format!("residue {i} not below 2^{power}")));
    }
    Ok(modulus)
}

/// `sum C(n, j)` over `0 <= j <= n` with `j = i (mod 2^power)`.
pub fn lacunary_exact(n: u64, power: u32, i: u64) -> Result<BigUint> {
    let modulus = check_residue(power, i)?;
    let row = binom_row(n);
    Ok((i..=n).step_by(modulus as usize).map(|j| &row[j as usize]).sum())
}

/// Trigonometric closed form of [`lacunary_exact`]:
///
/// `2^(n-p) + 2^(1-p) sum_{j=1}^{2^(p-1)-1} (2 cos(j pi / 2^p))^n cos(j (n - 2i) pi / 2^p)`.
///
/// The `j = 2^(p-1)` term of the underlying root-of-unity filter is
/// `0^n cos(i pi)`, which only matters for `n = 0` and is included so the
/// formula stays exact there too.
pub fn lacunary_trig(n: u64, power: u32, i: u64) -> Result<Real> {
    let modulus = check_residue(power, i)?;
    let n_i = i64::try_from(n).map_err(|_| invalid("n too large"))?;
    let n_exp = u32::try_from(n).map_err(|_| invalid("n too large"))?;
    let p = power as i32;
    let mut acc = Real::pow2(n_exp as i32 - p);
    let shift = n_i - 2 * i as i64;
    let half = modulus / 2;
    let sum: Real = (1..half)
        .map(|j| {
            let base = Real::cos_pi_frac(j as i64, modulus).ldexp(1);
            base.powi(n_exp) * Real::cos_pi_frac(j as i64 * shift, modulus)
        })
        .sum();
    acc += sum.ldexp(1 - p);
    if n == 0 {
        let sign = if i.is_multiple_of(2) { Real::ONE } else { -Real::ONE };
        acc += sign.ldexp(-p);
    }
    Ok(acc)
}

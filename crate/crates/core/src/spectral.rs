//! Walsh spectra of symmetric Boolean functions.
//!
//! For a symmetric `f` the Walsh value `W_f(w)` depends only on `y = wt(w)`.
//! Grouping the Walsh sum by `k = wt(x)` gives
//!
//! `W_f(w) = sum_k (-1)^v(k) P_k(y, n)`
//!
//! with `P_k` the Krawtchouk polynomial, so a full spectrum costs `O(n^2)`
//! exact integer operations. Brute-force versions over all `2^n` inputs are
//! kept alongside as oracles for small `n`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::exactnum::{binom, binom_row, pow2};
use crate::symfun::{elem_values, is_balanced_elem, WeightFunction};

/// Largest `n` accepted by [`walsh_bruteforce`].
pub const WALSH_BRUTE_MAX_N: u64 = 20;
/// Largest `n` accepted by the full-spectrum checks.
pub const FULL_SPECTRUM_MAX_N: u64 = 16;

/// `P_k(y, n) = sum_j (-1)^j C(y, j) C(n - y, k - j)`.
pub fn krawtchouk(k: u64, y: u64, n: u64) -> BigInt {
    assert!(k <= n && y <= n, "krawtchouk needs k, y <= n");
    let mut acc = BigInt::zero();
    for j in 0..=k.min(y) {
        let term = BigInt::from(binom(y, j as i64) * binom(n - y, (k - j) as i64));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// All `P_k(y, n)` for `0 <= k, y <= n`, indexed `[k][y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawtchoukTable {
    pub n: u64,
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(n: u64) -> Self {
        let values = (0..=n)
            .map(|k| (0..=n).map(|y| krawtchouk(k, y, n)).collect())
            .collect();
        KrawtchoukTable { n, values }
    }

    pub fn get(&self, k: u64, y: u64) -> &BigInt {
        &self.values[k as usize][y as usize]
    }
}

/// Walsh values of a symmetric Boolean function, by `wt(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub n: u64,
    pub by_weight: Vec<BigInt>,
}

impl WalshSpectrum {
    pub fn of(f: &WeightFunction) -> Self {
        let table = KrawtchoukTable::new(f.n);
        let by_weight = (0..=f.n)
            .map(|y| walsh_from_table(f, &table, y))
            .collect();
        WalshSpectrum { n: f.n, by_weight }
    }

    /// `W_f(w)` for a concrete mask `w`.
    pub fn at(&self, w: u64) -> &BigInt {
        &self.by_weight[w.count_ones() as usize]
    }

    /// `sum_w W_f(w)^2 = sum_y C(n, y) W(y)^2`.
    pub fn energy(&self) -> BigInt {
        let row = binom_row(self.n);
        self.by_weight
            .iter()
            .zip(row.iter())
            .map(|(w, c)| w * w * BigInt::from(c.clone()))
            .sum()
    }

    /// Parseval: the energy equals `2^(2n)`.
    pub fn parseval_holds(&self) -> bool {
        self.energy() == BigInt::from(pow2(2 * self.n))
    }
}

fn walsh_from_table(f: &WeightFunction, table: &KrawtchoukTable, y: u64) -> BigInt {
    f.v.iter().enumerate().fold(BigInt::zero(), |acc, (k, &bit)| {
        let p = table.get(k as u64, y);
        if bit {
            acc - p
        } else {
            acc + p
        }
    })
}

/// `W_f(w)` for any `w` of weight `y`.
pub fn walsh_symmetric(f: &WeightFunction, y: u64) -> Result<BigInt> {
    if y > f.n {
        return Err(invalid(format!("weight {y} exceeds n = {}", f.n)));
    }
    Ok((0..=f.n).fold(BigInt::zero(), |acc, k| {
        let p = krawtchouk(k, y, f.n);
        if f.v[k as usize] {
            acc - p
        } else {
            acc + p
        }
    }))
}

/// `sum_x (-1)^(f(x) + x.w)` over all `2^n` inputs.
pub fn walsh_bruteforce(f: &WeightFunction, w: u64) -> Result<i64> {
    if f.n > WALSH_BRUTE_MAX_N {
        return Err(Error::Budget(format!(
            "brute-force Walsh capped at n = {WALSH_BRUTE_MAX_N}, got {}",
            f.n
        )));
    }
    if f.n < 64 && w >> f.n != 0 {
        return Err(invalid(format!("mask {w:#x} has bits beyond n = {}", f.n)));
    }
    let mut acc = 0i64;
    for x in 0..(1u64 << f.n) {
        let odd = f.eval(x) ^ ((x & w).count_ones() % 2 == 1);
        acc += if odd { -1 } else { 1 };
    }
    Ok(acc)
}

/// `X(d, n)` satisfies the avalanche criterion iff `X(d-1, n-1)` is
/// balanced.
pub fn is_sac_elem(d: u64, n: u64) -> Result<bool> {
    if d < 2 || d > n {
        return Err(invalid(format!("need 2 <= d <= n, got d={d}, n={n}")));
    }
    is_balanced_elem(d - 1, n - 1)
}

/// Flipping any single input bit changes `f` on exactly half the inputs.
pub fn is_sac_bruteforce(f: &WeightFunction) -> Result<bool> {
    if f.n == 0 || f.n > FULL_SPECTRUM_MAX_N {
        return Err(Error::Budget(format!(
            "brute-force SAC needs 1 <= n <= {FULL_SPECTRUM_MAX_N}, got {}",
            f.n
        )));
    }
    let half = 1u64 << (f.n - 1);
    for bit in 0..f.n {
        let a = 1u64 << bit;
        let changed = (0..(1u64 << f.n))
            .filter(|&x| f.eval(x) != f.eval(x ^ a))
            .count() as u64;
        if changed != half {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For odd `d`: `W(w) = -W(complement of w)` for every `w` other than
/// `0` and `1`, i.e. `W(y) = -W(n - y)` for `0 < y < n`.
pub fn check_antisymmetry(d: u64, n: u64) -> Result<bool> {
    if d.is_multiple_of(2) {
        return Err(invalid(format!("antisymmetry needs odd d, got {d}")));
    }
    let spectrum = WalshSpectrum::of(&elem_values(d, n)?);
    Ok((1..n).all(|y| {
        spectrum.by_weight[y as usize] == -&spectrum.by_weight[(n - y) as usize]
    }))
}

/// Both halves of the spectrum split on the last coordinate of `w`
/// (`w_n = 0` and `w_n = 1`), exact.
pub fn half_sums(f: &WeightFunction) -> Result<(BigInt, BigInt)> {
    if f.n == 0 || f.n > FULL_SPECTRUM_MAX_N {
        return Err(Error::Budget(format!(
            "half sums need 1 <= n <= {FULL_SPECTRUM_MAX_N}, got {}",
            f.n
        )));
    }
    let spectrum = WalshSpectrum::of(f);
    let top = 1u64 << (f.n - 1);
    let mut low = BigInt::zero();
    let mut high = BigInt::zero();
    for w in 0..(1u64 << f.n) {
        let v = spectrum.at(w);
        if w & top == 0 {
            low += v * v;
        } else {
            high += v * v;
        }
    }
    Ok((low, high))
}

/// Whether both half sums equal `2^(2n-1)`; true for every SAC function.
pub fn check_half_sums(f: &WeightFunction) -> Result<bool> {
    let (low, high) = half_sums(f)?;
    let target = BigInt::from(pow2(2 * f.n - 1));
    Ok(low == target && high == target)
}

/// `sum_{k even} P_k(y, n)`, the signed count of even-weight `x` against `w`.
pub fn even_krawtchouk_sum(y: u64, n: u64) -> BigInt {
    (0..=n).step_by(2).map(|k| krawtchouk(k, y, n)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn krawtchouk_examples() {
        for n in 0..=16u64 {
            for y in 0..=n {
                if n >= 1 {
                    assert_eq!(krawtchouk(1, y, n), bi(n as i64 - 2 * y as i64));
                }
            }
            for k in 0..=n {
                assert_eq!(krawtchouk(k, 0, n), BigInt::from(binom(n, k as i64)));
            }
        }
        // C(1,0)C(3,2) - C(1,1)C(3,1) = 3 - 3
        assert_eq!(krawtchouk(2, 1, 4), bi(0));
    }

    #[test]
    fn krawtchouk_by_enumeration() {
        // P_k(y, n) = sum over wt(x) = k of (-1)^(x.w) with wt(w) = y
        for n in 1..=8u64 {
            for y in 0..=n {
                let w = (1u64 << y) - 1;
                for k in 0..=n {
                    let direct: i64 = (0..(1u64 << n))
                        .filter(|x| x.count_ones() as u64 == k)
                        .map(|x| if (x & w).count_ones().is_multiple_of(2) { 1 } else { -1 })
                        .sum();
                    assert_eq!(krawtchouk(k, y, n), bi(direct), "P_{k}({y},{n})");
                }
            }
        }
    }

    #[test]
    fn walsh_examples() {
        let x23 = elem_values(2, 3).unwrap();
        assert_eq!(walsh_symmetric(&x23, 0).unwrap(), bi(0));
        let zero = WeightFunction::constant(5, false);
        assert_eq!(walsh_symmetric(&zero, 0).unwrap(), bi(32));
        for w in 0..8u64 {
            let brute = walsh_bruteforce(&x23, w).unwrap();
            let sym = walsh_symmetric(&x23, w.count_ones() as u64).unwrap();
            assert_eq!(sym, bi(brute), "w={w:03b}");
        }
        assert!(walsh_symmetric(&x23, 4).is_err());
    }

    #[test]
    fn walsh_brute_examples() {
        assert_eq!(walsh_bruteforce(&WeightFunction::constant(4, false), 0).unwrap(), 16);
        assert_eq!(walsh_bruteforce(&WeightFunction::parity(4), 0b1111).unwrap(), 16);
        let x23 = elem_values(2, 3).unwrap();
        assert_eq!(
            bi(walsh_bruteforce(&x23, 0b011).unwrap()),
            walsh_symmetric(&x23, 2).unwrap()
        );
        assert!(walsh_bruteforce(&WeightFunction::constant(21, false), 0).is_err());
        assert!(walsh_bruteforce(&x23, 0b1000).is_err());
    }

    #[test]
    fn walsh_endpoints() {
        let f = elem_values(3, 7).unwrap();
        let w0 = walsh_symmetric(&f, 0).unwrap();
        let weight = BigInt::from(f.weight());
        assert_eq!(w0, BigInt::from(pow2(7)) - 2 * &weight);
        let wn = walsh_symmetric(&f, 7).unwrap();
        let row = binom_row(7);
        let direct: BigInt = (0..=7usize)
            .map(|k| {
                let c = BigInt::from(row[k].clone());
                if f.v[k] ^ (k % 2 == 1) {
                    -c
                } else {
                    c
                }
            })
            .sum();
        assert_eq!(wn, direct);
    }

    #[test]
    fn sac_examples() {
        assert!(is_sac_elem(3, 4).unwrap());
        assert!(is_sac_elem(2, 4).unwrap());
        assert!(!is_sac_elem(4, 6).unwrap());
        assert!(is_sac_elem(1, 4).is_err());

        assert!(is_sac_bruteforce(&elem_values(3, 4).unwrap()).unwrap());
        assert!(is_sac_bruteforce(&elem_values(2, 4).unwrap()).unwrap());
        for n in 1..6 {
            assert!(!is_sac_bruteforce(&WeightFunction::constant(n, false)).unwrap());
        }
        assert!(is_sac_bruteforce(&WeightFunction::constant(17, false)).is_err());
    }

    #[test]
    fn antisymmetry_examples() {
        assert!(check_antisymmetry(3, 6).unwrap());
        assert!(check_antisymmetry(5, 9).unwrap());
        assert!(check_antisymmetry(1, 4).unwrap());
        assert!(check_antisymmetry(2, 4).is_err());
    }

    #[test]
    fn half_sum_examples() {
        assert!(check_half_sums(&elem_values(3, 4).unwrap()).unwrap());
        assert!(check_half_sums(&elem_values(2, 4).unwrap()).unwrap());
        assert!(!check_half_sums(&WeightFunction::constant(3, false)).unwrap());
        assert!(check_half_sums(&WeightFunction::constant(17, false)).is_err());
    }

    #[test]
    fn spectrum_parseval_small() {
        let f = elem_values(2, 6).unwrap();
        let s = WalshSpectrum::of(&f);
        assert!(s.parseval_holds());
        assert_eq!(s.energy(), BigInt::from(pow2(12)));
    }
}

//! Symmetric functions over GF(p) and elementary symmetric Boolean
//! polynomials.
//!
//! A symmetric function on `GF(p)^n` only sees how many times each symbol
//! occurs in its input, so it is stored as one value per count vector
//! `(i_0, ..., i_{p-1})` with `i_0 + ... + i_{p-1} = n`. Count vectors are
//! kept in lexicographic order; that order fixes the class indices.
//!
//! For `p = 2` the count vector is determined by the Hamming weight and we
//! use the weight-indexed [`WeightFunction`] instead.

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Zero};

use crate::error::{invalid, Error, Result};
use crate::exactnum::{binom, binom_mod_p, binom_row, binom_u64, multinomial, pow2, require_prime};

/// The representative of one permutation class of `GF(p)^n`: symbol `j`
/// occurs `counts[j]` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetClass {
    pub p: u64,
    pub n: u64,
    pub counts: Vec<u64>,
}

impl MultisetClass {
    pub fn new(p: u64, counts: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if counts.len() as u64 != p {
            return Err(invalid(format!("expected {p} counts, got {}", counts.len())));
        }
        let n = counts.iter().sum();
        Ok(MultisetClass { p, n, counts })
    }

    /// The class of a concrete input vector.
    pub fn of_input(p: u64, x: &[u64]) -> Result<Self> {
        let mut counts = vec![0u64; p as usize];
        for &xi in x {
            if xi >= p {
                return Err(invalid(format!("symbol {xi} outside GF({p})")));
            }
            counts[xi as usize] += 1;
        }
        Self::new(p, counts)
    }

    /// Number of input vectors in the class: the multinomial coefficient.
    pub fn size(&self) -> BigUint {
        multinomial(self.n, &self.counts).expect("counts sum to n by construction")
    }

    /// `sum_j j * i_j`, the value of `x_1 + ... + x_n` as an integer.
    pub fn symbol_sum(&self) -> u64 {
        self.counts.iter().enumerate().map(|(j, &c)| j as u64 * c).sum()
    }

    /// Position of this class in [`enumerate_classes`] order.
    pub fn index(&self) -> usize {
        class_rank(self.p, &self.counts)
    }
}

/// Number of count vectors of length `parts` summing to `total`.
fn compositions(total: u64, parts: u64) -> u64 {
    if parts == 0 {
        return u64::from(total == 0);
    }
    binom_u64(total + parts - 1, parts - 1)
}

fn class_rank(p: u64, counts: &[u64]) -> usize {
    let mut remaining: u64 = counts.iter().sum();
    let mut rank = 0u64;
    for (pos, &c) in counts.iter().enumerate() {
        let later = p - pos as u64 - 1;
        if later == 0 {
            break;
        }
        for v in 0..c {
            rank += compositions(remaining - v, later);
        }
        remaining -= c;
    }
    rank as usize
}

/// Every count vector of length `p` summing to `n`, lexicographically.
/// There are `C(p + n - 1, n)` of them.
pub fn enumerate_classes(p: u64, n: u64) -> Result<Vec<MultisetClass>> {
    require_prime(p)?;
    let total = binom_u64(p + n - 1, n);
    if total > 50_000_000 {
        return Err(Error::Budget(format!("{total} classes for p={p}, n={n}")));
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut counts = vec![0u64; p as usize];
    fill_classes(p, n, 0, n, &mut counts, &mut out);
    Ok(out)
}

fn fill_classes(
    p: u64,
    n: u64,
    pos: usize,
    remaining: u64,
    counts: &mut Vec<u64>,
    out: &mut Vec<MultisetClass>,
) {
    if pos as u64 == p - 1 {
        counts[pos] = remaining;
        out.push(MultisetClass {
            p,
            n,
            counts: counts.clone(),
        });
        return;
    }
    for c in 0..=remaining {
        counts[pos] = c;
        fill_classes(p, n, pos + 1, remaining - c, counts, out);
    }
}

/// A GF(p)-valued symmetric function, one value per class in
/// [`enumerate_classes`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricFunction {
    pub p: u64,
    pub n: u64,
    pub values: Vec<u64>,
}

impl SymmetricFunction {
    pub fn new(p: u64, n: u64, values: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        let expected = binom_u64(p + n - 1, n);
        if values.len() as u64 != expected {
            return Err(invalid(format!(
                "expected {expected} class values, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= p) {
            return Err(invalid(format!("value {v} outside GF({p})")));
        }
        Ok(SymmetricFunction { p, n, values })
    }

    /// `a (x_1 + ... + x_n) + b` over GF(p).
    pub fn affine(p: u64, n: u64, a: u64, b: u64) -> Result<Self> {
        let values = enumerate_classes(p, n)?
            .iter()
            .map(|c| (a % p * (c.symbol_sum() % p) + b) % p)
            .collect();
        Self::new(p, n, values)
    }

    pub fn eval(&self, x: &[u64]) -> Result<u64> {
        if x.len() as u64 != self.n {
            return Err(invalid(format!("expected {} inputs, got {}", self.n, x.len())));
        }
        let class = MultisetClass::of_input(self.p, x)?;
        Ok(self.values[class.index()])
    }

    /// How many inputs map to each value of GF(p).
    pub fn histogram(&self) -> Result<Vec<BigUint>> {
        let classes = enumerate_classes(self.p, self.n)?;
        let mut buckets = vec![BigUint::zero(); self.p as usize];
        for (class, &v) in classes.iter().zip(&self.values) {
            buckets[v as usize] += class.size();
        }
        Ok(buckets)
    }

    /// Every value of GF(p) is taken on exactly `p^(n-1)` inputs.
    pub fn is_balanced(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(invalid("balancedness undefined for n = 0"));
        }
        let target = BigUint::from(self.p).pow(self.n - 1);
        let buckets = self.histogram()?;
        Ok(buckets.iter().all(|b| *b == target))
    }
}

/// `j ⪯ i`: every binary digit of `j` is at most the matching digit of `i`.
pub fn dominated(j: u64, i: u64) -> bool {
    j & i == j
}

/// A symmetric Boolean function by weight: `f(x) = v[wt(x)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    pub n: u64,
    pub v: Vec<bool>,
}

impl WeightFunction {
    pub fn new(v: Vec<bool>) -> Result<Self> {
        if v.is_empty() {
            return Err(invalid("weight vector needs n + 1 >= 1 entries"));
        }
        Ok(WeightFunction {
            n: v.len() as u64 - 1,
            v,
        })
    }

    pub fn constant(n: u64, value: bool) -> Self {
        WeightFunction {
            n,
            v: vec![value; n as usize + 1],
        }
    }

    /// `x_1 + ... + x_n`.
    pub fn parity(n: u64) -> Self {
        WeightFunction {
            n,
            v: (0..=n).map(|j| j % 2 == 1).collect(),
        }
    }

    pub fn from_bits(bits: &str) -> Result<Self> {
        let v = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(invalid(format!("bad bit {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }

    /// Value on the input whose bits are the low `n` bits of `x`.
    pub fn eval(&self, x: u64) -> bool {
        self.v[x.count_ones() as usize]
    }

    /// Number of inputs with value 1: `sum_{v(j)=1} C(n, j)`.
    pub fn weight(&self) -> BigUint {
        let row = binom_row(self.n);
        self.v
            .iter()
            .zip(row.iter())
            .filter(|(&b, _)| b)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.n > 0 && self.weight() == pow2(self.n - 1)
    }

    /// The same function as a [`SymmetricFunction`] over GF(2).
    pub fn to_symmetric(&self) -> SymmetricFunction {
        // class (i_0, i_1) has weight i_1 = n - i_0, and i_0 ascends
        let values = (0..=self.n)
            .map(|i0| u64::from(self.v[(self.n - i0) as usize]))
            .collect();
        SymmetricFunction {
            p: 2,
            n: self.n,
            values,
        }
    }
}

/// ANF coefficients `lambda(0..=n)` of a symmetric Boolean function:
/// `f = XOR_d lambda(d) X(d, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnfVector {
    pub n: u64,
    pub lambda: Vec<bool>,
}

impl AnfVector {
    pub fn new(lambda: Vec<bool>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(invalid("ANF vector needs n + 1 >= 1 entries"));
        }
        Ok(AnfVector {
            n: lambda.len() as u64 - 1,
            lambda,
        })
    }

    /// The single term `X(d, n)`.
    pub fn monomial(d: u64, n: u64) -> Result<Self> {
        if d > n {
            return Err(invalid(format!("degree {d} exceeds n = {n}")));
        }
        let mut lambda = vec![false; n as usize + 1];
        lambda[d as usize] = true;
        Ok(AnfVector { n, lambda })
    }
}

fn dominance_transform(src: &[bool]) -> Vec<bool> {
    (0..src.len() as u64)
        .map(|i| {
            (0..=i)
                .filter(|&j| dominated(j, i))
                .fold(false, |acc, j| acc ^ src[j as usize])
        })
        .collect()
}

/// `v(i) = XOR_{j ⪯ i} lambda(j)`.
pub fn values_from_anf(anf: &AnfVector) -> WeightFunction {
    WeightFunction {
        n: anf.n,
        v: dominance_transform(&anf.lambda),
    }
}

/// `lambda(i) = XOR_{j ⪯ i} v(j)`; inverse of [`values_from_anf`].
pub fn anf_from_values(f: &WeightFunction) -> AnfVector {
    AnfVector {
        n: f.n,
        lambda: dominance_transform(&f.v),
    }
}

fn check_degree(d: u64, n: u64) -> Result<()> {
    if d == 0 || d > n {
        return Err(invalid(format!("need 1 <= d <= n, got d={d}, n={n}")));
    }
    Ok(())
}

/// Values of `X(d, n)` by input weight: `v(j) = C(j, d) mod 2`.
pub fn elem_values(d: u64, n: u64) -> Result<WeightFunction> {
    check_degree(d, n)?;
    let v = (0..=n)
        .map(|j| binom_mod_p(j, d, 2).map(|b| b == 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightFunction { n, v })
}

/// `wt(X(d, n)) = sum_{d ⪯ i <= n} C(n, i)`.
///
/// Defined for every `d`: it is `2^n` at `d = 0` and zero for `d > n`.
pub fn weight_elem(d: u64, n: u64) -> BigUint {
    let row = binom_row(n);
    dominating_indices(d, n).map(|i| &row[i as usize]).sum()
}

/// All `i <= n` with `d ⪯ i`, ascending.
pub fn dominating_indices(d: u64, n: u64) -> impl Iterator<Item = u64> {
    // i = d | s for s a submask of !d; walk them in increasing order
    let free = !d;
    let mut next = Some(d);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur > n {
            next = None;
            return None;
        }
        // increment the free bits: cur = ((cur | d_mask) + 1) & free | d
        let bumped = ((cur | d) + 1) & free;
        next = if bumped == 0 { None } else { Some(bumped | d) };
        Some(cur)
    })
}

/// `sum_j C(n, j) (-1)^C(j, d)`; zero exactly when `X(d, n)` is balanced.
pub fn signed_sum_elem(d: u64, n: u64) -> BigInt {
    let row = binom_row(n);
    row.iter().enumerate().fold(BigInt::zero(), |acc, (j, c)| {
        if dominated(d, j as u64) {
            acc - BigInt::from(c.clone())
        } else {
            acc + BigInt::from(c.clone())
        }
    })
}

/// Balancedness of `X(d, n)` by weight, cross-checked against the signed
/// binomial sum.
pub fn is_balanced_elem(d: u64, n: u64) -> Result<bool> {
    check_degree(d, n)?;
    let by_weight = weight_elem(d, n) == pow2(n - 1);
    let by_signed_sum = signed_sum_elem(d, n).is_zero();
    if by_weight != by_signed_sum {
        return Err(Error::Invariant(format!(
            "weight and signed-sum balancedness disagree for X({d},{n})"
        )));
    }
    Ok(by_weight)
}

/// `p^C(p + n - 1, n)` symmetric functions exist; `C(p + n - 1, n)` is the
/// class count.
pub fn class_count(p: u64, n: u64) -> BigUint {
    binom(p + n - 1, n as i64)
}

//! Counting symmetric and balanced functions over GF(p).
//!
//! Classes whose count vectors are permutations of each other have the same
//! size, so they form an orbit described by an [`MVector`]: `m[l]` is how many
//! symbols occur exactly `l` times. Splitting every orbit into `p` groups of
//! equal cardinality and giving each group its own output value always yields
//! a balanced function. The number of such splits is the lower bound computed
//! by [`lower_bound_balanced`].

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::exactnum::{binom, exact_div, factorial, require_prime};
use crate::symfun::{class_count, enumerate_classes, MultisetClass, SymmetricFunction};

/// Largest `p^n` accepted by [`count_balanced_all`].
pub const BALANCED_ALL_MAX_INPUTS: u64 = 1 << 16;
/// Largest number of assignments `p^classes` tried by
/// [`brute_count_balanced_symmetric`].
pub const BRUTE_MAX_ASSIGNMENTS: u64 = 1 << 26;
/// State cap for [`dp_count_balanced_symmetric`].
pub const DP_MAX_STATES: usize = 1 << 22;

/// `p^C(p+n-1, n)`, the number of symmetric functions.
pub fn count_symmetric(p: u64, n: u64) -> Result<BigUint> {
    require_prime(p)?;
    let exp = class_count(p, n);
    let exp = exp
        .to_u32()
        .filter(|&e| u64::from(e) * 64 < (1u64 << 34))
        .ok_or_else(|| Error::Budget(format!("exponent {exp} too large")))?;
    Ok(BigUint::from(p).pow(exp))
}

fn p_pow(p: u64, n: u64) -> Option<u64> {
    u32::try_from(n).ok().and_then(|n| p.checked_pow(n))
}

/// `(p^n)! / ((p^(n-1))!)^p`, the number of balanced functions.
pub fn count_balanced_all(p: u64, n: u64) -> Result<BigUint> {
    require_prime(p)?;
    if n == 0 {
        return Err(invalid("balancedness needs n >= 1"));
    }
    let inputs = p_pow(p, n)
        .filter(|&q| q <= BALANCED_ALL_MAX_INPUTS)
        .ok_or_else(|| Error::Budget(format!("{p}^{n} inputs exceed {BALANCED_ALL_MAX_INPUTS}")))?;
    let a = inputs / p;
    equal_parts_multinomial(p, a)
}

/// `(p a)! / (a!)^p`.
pub fn equal_parts_multinomial(p: u64, a: u64) -> Result<BigUint> {
    let denom = factorial(a).pow(p as u32);
    exact_div(&factorial(p * a), &denom)
}

/// `prod_{k=0}^{p-1} C((k+1) a, a)`, the same number built from binomials.
pub fn equal_parts_binomial_product(p: u64, a: u64) -> BigUint {
    (0..p)
        .map(|k| binom((k + 1) * a, a as i64))
        .product()
}

/// Multiplicities of part sizes: `m[l]` symbols occur `l` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MVector {
    pub p: u64,
    pub n: u64,
    pub m: Vec<u64>,
}

impl MVector {
    /// `m` has length `n + 1`, `sum m = p` and `sum l * m[l] = n`.
    pub fn new(p: u64, n: u64, m: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if m.len() as u64 != n + 1 {
            return Err(invalid(format!("expected {} multiplicities, got {}", n + 1, m.len())));
        }
        let parts: u64 = m.iter().sum();
        let weighted: u64 = m.iter().enumerate().map(|(l, &c)| l as u64 * c).sum();
        if parts != p || weighted != n {
            return Err(invalid(format!(
                "multiplicities sum to {parts} (need {p}) with weighted sum {weighted} (need {n})"
            )));
        }
        Ok(MVector { p, n, m })
    }

    pub fn orbit_size(&self) -> BigUint {
        let denom: BigUint = self.m.iter().map(|&c| factorial(c)).product();
        exact_div(&factorial(self.p), &denom).expect("multinomial coefficient")
    }

    /// Whether `p` divides the orbit size.
    pub fn check_divisibility(&self) -> bool {
        (self.orbit_size() % self.p).is_zero()
    }

    /// Some symbol count is shared by all `p` symbols.
    pub fn has_full_part(&self) -> bool {
        self.m.iter().any(|&c| c >= self.p)
    }

    /// `o! / ((o/p)!)^p` for orbit size `o`: ways to split the orbit into
    /// `p` labelled groups of equal size.
    pub fn split_count(&self) -> Result<BigUint> {
        let o = self.orbit_size();
        let (q, rem) = o.div_rem(&BigUint::from(self.p));
        if !rem.is_zero() {
            return Err(Error::Invariant(format!("orbit of size {o} does not split into {} groups", self.p)));
        }
        let q = q.to_u64().ok_or_else(|| Error::Budget(format!("orbit of size {o}")))?;
        equal_parts_multinomial(self.p, q)
    }
}

pub fn mvector_of(class: &MultisetClass) -> MVector {
    let mut m = vec![0u64; class.n as usize + 1];
    for &c in &class.counts {
        m[c as usize] += 1;
    }
    MVector {
        p: class.p,
        n: class.n,
        m,
    }
}

pub fn orbit_size(mv: &MVector) -> BigUint {
    mv.orbit_size()
}

pub fn check_divisibility(mv: &MVector) -> bool {
    mv.check_divisibility()
}

/// Every valid [`MVector`] for `(p, n)`, in lexicographic order of `m`.
pub fn enumerate_mvectors(p: u64, n: u64) -> Result<Vec<MVector>> {
    require_prime(p)?;
    let mut out = Vec::new();
    let mut m = vec![0u64; n as usize + 1];
    mvector_dfs(p, n, 0, p, n, &mut m, &mut out);
    Ok(out)
}

fn mvector_dfs(
    p: u64,
    n: u64,
    l: usize,
    parts_left: u64,
    weight_left: u64,
    m: &mut Vec<u64>,
    out: &mut Vec<MVector>,
) {
    if l as u64 == n {
        // the last slot is forced by both constraints at once
        let need = weight_left.checked_div(n).unwrap_or(weight_left);
        if (n == 0 && weight_left == 0) || (n > 0 && need * n == weight_left && need == parts_left) {
            m[l] = parts_left;
            out.push(MVector {
                p,
                n,
                m: m.clone(),
            });
            m[l] = 0;
        }
        return;
    }
    let max = if l == 0 {
        parts_left
    } else {
        parts_left.min(weight_left / l as u64)
    };
    for c in 0..=max {
        m[l] = c;
        mvector_dfs(p, n, l + 1, parts_left - c, weight_left - c * l as u64, m, out);
    }
    m[l] = 0;
}

/// The lower bound holds when no orbit is a single class: every
/// [`MVector`] has all `m[l] < p`, or `gcd(n, p) = 1`.
pub fn bound_hypothesis_holds(p: u64, n: u64) -> Result<bool> {
    if n.gcd(&p) == 1 {
        return Ok(true);
    }
    Ok(enumerate_mvectors(p, n)?.iter().all(|mv| !mv.has_full_part()))
}

fn require_hypothesis(p: u64, n: u64) -> Result<()> {
    if bound_hypothesis_holds(p, n)? {
        Ok(())
    } else {
        Err(Error::HypothesisViolated { p, n })
    }
}

/// Product over all orbits of the number of equal splits.
pub fn lower_bound_balanced(p: u64, n: u64) -> Result<BigUint> {
    require_prime(p)?;
    require_hypothesis(p, n)?;
    enumerate_mvectors(p, n)?
        .iter()
        .map(MVector::split_count)
        .product()
}

/// The `p (p - 1)` balanced members of the affine family `a sum x + b`.
pub fn affine_balanced_count(p: u64) -> u64 {
    p * (p - 1)
}

/// Balanced functions obtained by splitting orbits, in a fixed order.
///
/// Each orbit lists its classes in enumeration order and starts from the
/// split into consecutive runs. Successive outputs advance the first orbit
/// through the distinct permutations of its value word, carrying into the
/// next orbit when it wraps.
pub struct BalancedGenerator {
    p: u64,
    n: u64,
    class_total: usize,
    orbits: Vec<Vec<usize>>,
    words: Vec<Vec<u64>>,
    done: bool,
}

impl BalancedGenerator {
    pub fn new(p: u64, n: u64) -> Result<Self> {
        require_prime(p)?;
        require_hypothesis(p, n)?;
        let classes = enumerate_classes(p, n)?;
        let mut slot: HashMap<MVector, usize> = HashMap::new();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for (idx, class) in classes.iter().enumerate() {
            let key = mvector_of(class);
            let o = *slot.entry(key).or_insert_with(|| {
                orbits.push(Vec::new());
                orbits.len() - 1
            });
            orbits[o].push(idx);
        }
        let words = orbits
            .iter()
            .map(|members| {
                let len = members.len() as u64;
                if !len.is_multiple_of(p) {
                    return Err(Error::Invariant(format!("orbit of size {len} not divisible by {p}")));
                }
                Ok((0..len).map(|k| k / (len / p)).collect())
            })
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Ok(BalancedGenerator {
            p,
            n,
            class_total: classes.len(),
            orbits,
            words,
            done: false,
        })
    }

    fn current(&self) -> SymmetricFunction {
        let mut values = vec![0u64; self.class_total];
        for (members, word) in self.orbits.iter().zip(&self.words) {
            for (&idx, &v) in members.iter().zip(word) {
                values[idx] = v;
            }
        }
        SymmetricFunction {
            p: self.p,
            n: self.n,
            values,
        }
    }

    fn advance(&mut self) {
        for word in &mut self.words {
            if next_permutation(word) {
                return;
            }
            // wrapped back to the sorted word; carry
        }
        self.done = true;
    }
}

impl Iterator for BalancedGenerator {
    type Item = SymmetricFunction;

    fn next(&mut self) -> Option<SymmetricFunction> {
        if self.done {
            return None;
        }
        let f = self.current();
        self.advance();
        Some(f)
    }
}

/// Next distinct permutation in lexicographic order; on the last one the
/// slice is reset to sorted order and `false` is returned.
fn next_permutation(v: &mut [u64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Up to `limit` distinct balanced symmetric functions.
pub fn generate_balanced(p: u64, n: u64, limit: usize) -> Result<std::iter::Take<BalancedGenerator>> {
    Ok(BalancedGenerator::new(p, n)?.take(limit))
}

/// Class sizes as machine integers, with the per-value target `p^(n-1)`.
fn small_sizes(p: u64, n: u64) -> Result<(Vec<u64>, u64)> {
    if n == 0 {
        return Err(invalid("balancedness needs n >= 1"));
    }
    let target = p_pow(p, n - 1).ok_or_else(|| Error::Budget(format!("{p}^{n} overflows")))?;
    let sizes = enumerate_classes(p, n)?
        .iter()
        .map(|c| c.size().to_u64().expect("bounded by p^n"))
        .collect();
    Ok((sizes, target))
}

/// Exhaustive count of balanced symmetric functions over all
/// `p^classes` value assignments.
pub fn brute_count_balanced_symmetric(p: u64, n: u64) -> Result<BigUint> {
    require_prime(p)?;
    let classes = class_count(p, n);
    let fits = classes
        .to_u32()
        .and_then(|c| p.checked_pow(c))
        .is_some_and(|a| a <= BRUTE_MAX_ASSIGNMENTS);
    if !fits {
        return Err(Error::Budget(format!(
            "{p}^{classes} assignments exceed {BRUTE_MAX_ASSIGNMENTS}"
        )));
    }
    let (sizes, target) = small_sizes(p, n)?;
    let pu = p as usize;
    // mixed-radix odometer over values; buckets track each value's mass
    let mut digits = vec![0usize; sizes.len()];
    let mut buckets = vec![0u64; pu];
    buckets[0] = sizes.iter().sum();
    let mut count = 0u64;
    loop {
        if buckets.iter().all(|&b| b == target) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(BigUint::from(count));
            }
            let s = sizes[pos];
            buckets[digits[pos]] -= s;
            if digits[pos] + 1 < pu {
                digits[pos] += 1;
                buckets[digits[pos]] += s;
                break;
            }
            digits[pos] = 0;
            buckets[0] += s;
            pos += 1;
        }
    }
}

/// Count of balanced symmetric functions by dynamic programming over the
/// vector of per-value masses; reaches sizes beyond the exhaustive cap.
pub fn dp_count_balanced_symmetric(p: u64, n: u64) -> Result<BigUint> {
    require_prime(p)?;
    let (sizes, target) = small_sizes(p, n)?;
    let mut states: HashMap<Vec<u64>, BigUint> = HashMap::new();
    states.insert(vec![0u64; p as usize], BigUint::one());
    for &s in &sizes {
        let mut next: HashMap<Vec<u64>, BigUint> = HashMap::with_capacity(states.len());
        for (masses, ways) in &states {
            for v in 0..p as usize {
                if masses[v] + s > target {
                    continue;
                }
                let mut m = masses.clone();
                m[v] += s;
                *next.entry(m).or_insert_with(BigUint::zero) += ways;
            }
        }
        if next.len() > DP_MAX_STATES {
            return Err(Error::Budget(format!("{} mass states exceed {DP_MAX_STATES}", next.len())));
        }
        states = next;
    }
    Ok(states
        .remove(&vec![target; p as usize])
        .unwrap_or_else(BigUint::zero))
}

//! Signed bisections of a row of Pascal's triangle.
//!
//! A sign vector `delta in {-1, +1}^(n+1)` is a solution when
//! `sum_i delta_i C(n, i) = 0`. The trivial solutions are the two
//! alternating vectors for even `n` and the `2^((n+1)/2)` vectors with
//! `delta_{n-i} = -delta_i` for odd `n`.
//!
//! [`find_all_solutions`] counts solutions by meet-in-the-middle: partial
//! sums over the low and high index halves are enumerated separately,
//! the high half is sorted, and every low sum `s` is joined against the
//! multiplicity of `-s`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::exactnum::{binom_row, pow2};
use crate::symfun::dominated;

/// Largest row accepted by [`find_all_solutions`].
pub const MAX_N: u64 = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    signs: Vec<i8>,
}

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(invalid("sign vector needs n + 1 >= 1 entries"));
        }
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(invalid(format!("sign {s} is not +1 or -1")));
        }
        Ok(SignVector { signs })
    }

    /// Parse a `+`/`-` string such as `"+-+-+"`.
    pub fn parse(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(invalid(format!("bad sign {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(signs)
    }

    /// `+1` at bit `i` of `mask`, `-1` elsewhere.
    fn from_mask(n: u64, mask: u64) -> Self {
        SignVector {
            signs: (0..=n)
                .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                .collect(),
        }
    }

    /// `(+, -, +, ...)` of length `n + 1`.
    pub fn alternating(n: u64) -> Self {
        SignVector {
            signs: (0..=n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect(),
        }
    }

    /// `delta_j = (-1)^C(j, d)`, the sign pattern of `X(d, n)`.
    pub fn from_elem(d: u64, n: u64) -> Self {
        SignVector {
            signs: (0..=n)
                .map(|j| if dominated(d, j) { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn n(&self) -> u64 {
        self.signs.len() as u64 - 1
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

impl std::ops::Neg for SignVector {
    type Output = SignVector;
    fn neg(self) -> SignVector {
        SignVector {
            signs: self.signs.into_iter().map(|s| -s).collect(),
        }
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// `sum_i delta_i C(n, i)`, exact.
pub fn signed_sum(delta: &SignVector) -> BigInt {
    let row = binom_row(delta.n());
    delta
        .signs
        .iter()
        .zip(row.iter())
        .fold(BigInt::zero(), |acc, (&s, c)| {
            if s > 0 {
                acc + BigInt::from(c.clone())
            } else {
                acc - BigInt::from(c.clone())
            }
        })
}

fn require_solution(delta: &SignVector) -> Result<()> {
    let sum = signed_sum(delta);
    if sum.is_zero() {
        Ok(())
    } else {
        Err(Error::NotASolution(sum.to_string()))
    }
}

/// Whether a solution belongs to the trivial family.
pub fn is_trivial(delta: &SignVector) -> Result<bool> {
    require_solution(delta)?;
    Ok(is_trivial_unchecked(delta))
}

fn is_trivial_unchecked(delta: &SignVector) -> bool {
    let n = delta.n() as usize;
    let s = &delta.signs;
    if n.is_multiple_of(2) {
        
        (0..=n).all(|i| s[i] == if i % 2 == 0 { s[0] } else { -s[0] })
    } else {
        (0..=n).all(|i| s[n - i] == -s[i])
    }
}

/// `2` for even `n`, `2^((n+1)/2)` for odd `n`, for `n >= 1`.
pub fn count_trivial(n: u64) -> BigUint {
    if n.is_multiple_of(2) {
        BigUint::from(2u32)
    } else {
        pow2(n.div_ceil(2))
    }
}

/// Every trivial solution of row `n`, as sign vectors.
pub fn trivial_solutions(n: u64) -> Vec<SignVector> {
    if n.is_multiple_of(2) {
        let alt = SignVector::alternating(n);
        vec![alt.clone(), -alt]
    } else {
        let half = n.div_ceil(2);
        (0..(1u64 << half))
            .map(|mask| {
                let mut signs = vec![0i8; n as usize + 1];
                for i in 0..half as usize {
                    let s = if mask >> i & 1 == 1 { 1 } else { -1 };
                    signs[i] = s;
                    signs[n as usize - i] = -s;
                }
                SignVector { signs }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub n: u64,
    pub total: BigUint,
    pub trivial: BigUint,
    pub nontrivial: BigUint,
    /// Nontrivial solutions in lexicographic order (`-1 < +1`), when
    /// enumeration was requested.
    pub witnesses: Option<Vec<SignVector>>,
}

/// One half of the index range: partial sums for every sign choice, sorted.
struct HalfSums {
    /// `(sum, mask)` pairs sorted by sum then mask.
    entries: Vec<(i64, u64)>,
}

impl HalfSums {
    fn new(coeffs: &[i64]) -> Self {
        let len = coeffs.len();
        let mut entries: Vec<(i64, u64)> = (0..(1u64 << len))
            .into_par_iter()
            .map(|mask| {
                let sum = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| if mask >> i & 1 == 1 { c } else { -c })
                    .sum();
                (sum, mask)
            })
            .collect();
        entries.par_sort_unstable();
        HalfSums { entries }
    }

    fn matching(&self, sum: i64) -> &[(i64, u64)] {
        let lo = self.entries.partition_point(|&(s, _)| s < sum);
        let hi = self.entries.partition_point(|&(s, _)| s <= sum);
        &self.entries[lo..hi]
    }
}

/// All solutions of row `n`: exact counts, and optionally every
/// nontrivial witness.
pub fn find_all_solutions(n: u64, enumerate: bool) -> Result<SolutionReport> {
    if n == 0 {
        return Err(invalid("row 0 has no signed bisection"));
    }
    if n > MAX_N {
        return Err(Error::Budget(format!("bisection search capped at n = {MAX_N}, got {n}")));
    }
    let row = binom_row(n);
    // |partial sums| <= 2^n, well inside i64 for n <= 32
    let coeffs: Vec<i64> = row
        .iter()
        .map(|c| i64::try_from(c).expect("C(n, k) fits i64 for n <= 32"))
        .collect();
    let split = n.div_ceil(2) as usize;
    let low = HalfSums::new(&coeffs[..split]);
    let high = HalfSums::new(&coeffs[split..]);

    // runs of equal sums on the low side share one lookup
    let total: u64 = low
        .entries
        .par_chunk_by(|a, b| a.0 == b.0)
        .map(|run| run.len() as u64 * high.matching(-run[0].0).len() as u64)
        .sum();
    let total = BigUint::from(total);

    let trivial_family = trivial_solutions(n);
    for t in &trivial_family {
        if !signed_sum(t).is_zero() {
            return Err(Error::Invariant(format!("trivial vector {t} is not a solution")));
        }
    }
    let trivial = BigUint::from(trivial_family.len());
    if trivial != count_trivial(n) {
        return Err(Error::Invariant(format!(
            "trivial family has {} members, expected {}",
            trivial,
            count_trivial(n)
        )));
    }
    if total < trivial {
        return Err(Error::Invariant(format!(
            "{total} solutions found but {trivial} are trivial"
        )));
    }
    let nontrivial = &total - &trivial;

    let witnesses = if enumerate {
        let shift = split as u32;
        let mut all: Vec<SignVector> = low
            .entries
            .par_iter()
            .flat_map_iter(|&(s, lmask)| {
                high.matching(-s)
                    .iter()
                    .map(move |&(_, hmask)| SignVector::from_mask(n, lmask | hmask << shift))
            })
            .collect();
        if BigUint::from(all.len()) != total {
            return Err(Error::Invariant(format!(
                "join produced {} vectors, counted {total}",
                all.len()
            )));
        }
        all.retain(|v| !is_trivial_unchecked(v));
        if BigUint::from(all.len()) != nontrivial {
            return Err(Error::Invariant(format!(
                "{} nontrivial vectors classified, counted {nontrivial}",
                all.len()
            )));
        }
        all.par_sort_unstable();
        Some(all)
    } else {
        None
    };

    Ok(SolutionReport {
        n,
        total,
        trivial,
        nontrivial,
        witnesses,
    })
}

/// The two index sets of a solution and their common sum `2^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisection {
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
    pub half: BigUint,
}

pub fn bisection_from_solution(delta: &SignVector) -> Result<Bisection> {
    require_solution(delta)?;
    let n = delta.n();
    let (plus, minus): (Vec<u64>, Vec<u64>) = (0..=n).partition(|&i| delta.signs[i as usize] > 0);
    let row = binom_row(n);
    let sum = |idx: &[u64]| -> BigUint { idx.iter().map(|&i| &row[i as usize]).sum() };
    let (a, b) = (sum(&plus), sum(&minus));
    if a != b || a != pow2(n) >> 1u32 {
        return Err(Error::Invariant(format!("bisection sides {a} and {b} differ")));
    }
    Ok(Bisection {
        plus,
        minus,
        half: a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SignVector {
        SignVector::parse(s).unwrap()
    }

    #[test]
    fn signed_sum_examples() {
        assert_eq!(signed_sum(&sv("+-+-+")), BigInt::zero());
        assert_eq!(signed_sum(&sv("+++")), BigInt::from(4));
        assert_eq!(signed_sum(&sv("++--")), BigInt::zero());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(SignVector::parse("+x-").is_err());
        assert!(SignVector::parse("").is_err());
        assert!(SignVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn trivial_examples() {
        assert!(is_trivial(&sv("+-+-+")).unwrap());
        assert!(is_trivial(&sv("-+-+-")).unwrap());
        assert!(is_trivial(&sv("++--")).unwrap());
        assert!(matches!(is_trivial(&sv("+++")), Err(Error::NotASolution(_))));
    }

    #[test]
    fn trivial_counts() {
        assert_eq!(count_trivial(4), BigUint::from(2u32));
        assert_eq!(count_trivial(5), BigUint::from(8u32));
        assert_eq!(count_trivial(13), BigUint::from(128u32));
        for n in 1..14 {
            assert_eq!(BigUint::from(trivial_solutions(n).len()), count_trivial(n));
        }
    }

    #[test]
    fn search_examples() {
        assert_eq!(find_all_solutions(7, false).unwrap().nontrivial, BigUint::zero());
        let r8 = find_all_solutions(8, true).unwrap();
        assert!(r8.nontrivial > BigUint::zero());
        let w = r8.witnesses.unwrap();
        assert_eq!(BigUint::from(w.len()), r8.nontrivial);
        for v in &w {
            assert!(!is_trivial(v).unwrap());
        }
        assert!(w.windows(2).all(|p| p[0] < p[1]));
        assert!(find_all_solutions(33, false).is_err());
        assert!(find_all_solutions(0, false).is_err());
    }

    #[test]
    fn search_counts_are_symmetric_under_negation() {
        let r = find_all_solutions(13, true).unwrap();
        let w = r.witnesses.unwrap();
        for v in &w {
            assert!(w.binary_search(&(-v.clone())).is_ok());
        }
    }

    #[test]
    fn bisection_examples() {
        let b = bisection_from_solution(&sv("++--")).unwrap();
        assert_eq!(b.plus, vec![0, 1]);
        assert_eq!(b.half, BigUint::from(4u32));
        let b = bisection_from_solution(&sv("+-+-+")).unwrap();
        assert_eq!(b.plus, vec![0, 2, 4]);
        assert_eq!(b.minus, vec![1, 3]);
        assert_eq!(b.half, BigUint::from(8u32));
        assert!(bisection_from_solution(&sv("+++")).is_err());
    }

    #[test]
    fn balanced_elem_gives_solution() {
        assert!(signed_sum(&SignVector::from_elem(2, 7)).is_zero());
        assert!(!signed_sum(&SignVector::from_elem(3, 5)).is_zero());
    }
}

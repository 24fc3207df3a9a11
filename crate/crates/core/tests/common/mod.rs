//! Slow, direct oracles shared by the integration tests. Nothing here calls
//! into the library's combinatorics.
#![allow(dead_code)]

/// `C(n, k)` by the multiplicative formula.
pub fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Truth table of `X(d, n)` over all `2^n` inputs. Up to `n = 12` the
/// degree-`d` monomials contained in each input are counted one by one.
pub fn elem_truth_table(d: u64, n: u64) -> Vec<bool> {
    (0u64..1 << n)
        .map(|x| {
            if n <= 12 {
                let mut hits = 0u32;
                let mut sub = x;
                loop {
                    if u64::from(sub.count_ones()) == d {
                        hits += 1;
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & x;
                }
                hits % 2 == 1
            } else {
                binom_u128(u64::from(x.count_ones()), d) % 2 == 1
            }
        })
        .collect()
}

pub fn table_weight(table: &[bool]) -> u64 {
    table.iter().filter(|&&b| b).count() as u64
}

/// Walsh values `W(w)` for every mask by the fast Walsh-Hadamard transform.
pub fn fwht(table: &[bool]) -> Vec<i64> {
    let mut a: Vec<i64> = table.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let mut h = 1;
    while h < a.len() {
        for i in (0..a.len()).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (a[j], a[j + h]);
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
    a
}

/// Flipping each bit changes the function on exactly half the inputs.
pub fn sac_from_table(table: &[bool], n: u64) -> bool {
    (0..n).all(|bit| {
        let a = 1usize << bit;
        let changed = (0..table.len()).filter(|&x| table[x] != table[x ^ a]).count();
        changed == table.len() / 2
    })
}

/// `(total, trivial)` solutions of `sum delta_i C(n, i) = 0` by trying all
/// `2^(n+1)` sign vectors.
pub fn exhaustive_bisections(n: u64) -> (u64, u64) {
    let row: Vec<i128> = (0..=n).map(|k| binom_u128(n, k) as i128).collect();
    let len = n as usize + 1;
    let mut total = 0;
    let mut trivial = 0;
    for mask in 0u64..1 << len {
        let sign = |i: usize| if mask >> i & 1 == 1 { 1i128 } else { -1 };
        let sum: i128 = (0..len).map(|i| sign(i) * row[i]).sum();
        if sum != 0 {
            continue;
        }
        total += 1;
        let is_trivial = if n.is_multiple_of(2) {
            (1..len).all(|i| sign(i) == -sign(i - 1))
        } else {
            (0..len).all(|i| sign(n as usize - i) == -sign(i))
        };
        if is_trivial {
            trivial += 1;
        }
    }
    (total, trivial)
}

/// Calls `visit` with every function `GF(p)^n -> GF(p)` as a table indexed
/// by the base-`p` reading of the input.
fn for_each_function(p: u64, n: u64, mut visit: impl FnMut(&[u64])) {
    let inputs = p.pow(n as u32) as usize;
    let mut table = vec![0u64; inputs];
    loop {
        visit(&table);
        let mut pos = 0;
        loop {
            if pos == inputs {
                return;
            }
            table[pos] += 1;
            if table[pos] < p {
                break;
            }
            table[pos] = 0;
            pos += 1;
        }
    }
}

fn digits(p: u64, n: u64, mut x: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = x as u64 % p;
            x /= p as usize;
            d
        })
        .collect()
}

fn index_of(p: u64, ds: &[u64]) -> usize {
    ds.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

fn is_balanced_table(p: u64, table: &[u64]) -> bool {
    let target = table.len() as u64 / p;
    (0..p).all(|v| table.iter().filter(|&&t| t == v).count() as u64 == target)
}

fn is_symmetric_table(p: u64, n: u64, table: &[u64]) -> bool {
    (0..table.len()).all(|x| {
        let ds = digits(p, n, x);
        (0..n as usize).all(|i| {
            (i + 1..n as usize).all(|j| {
                let mut sw = ds.clone();
                sw.swap(i, j);
                table[index_of(p, &sw)] == table[x]
            })
        })
    })
}

/// Balanced functions among all `p^(p^n)` functions.
pub fn balanced_all_exhaustive(p: u64, n: u64) -> u64 {
    let mut count = 0;
    for_each_function(p, n, |t| {
        if is_balanced_table(p, t) {
            count += 1;
        }
    });
    count
}

/// Balanced functions that are also permutation invariant, among all
/// `p^(p^n)` functions.
pub fn symmetric_balanced_exhaustive(p: u64, n: u64) -> u64 {
    let mut count = 0;
    for_each_function(p, n, |t| {
        if is_balanced_table(p, t) && is_symmetric_table(p, n, t) {
            count += 1;
        }
    });
    count
}

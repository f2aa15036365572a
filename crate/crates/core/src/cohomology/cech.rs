//! Čech cohomology of `O(k)` on `P^{n-1}` over the standard cover by the
//! `n` charts `{x_i ≠ 0}`.
//!
//! Sections of `O(k)` on `U_I` are spanned by Laurent monomials `x^a` with
//! `|a| = k` whose negative exponents lie in `I`. The Čech differential
//! preserves the multidegree `a`, so the complex is the direct sum over `a`
//! of the complexes spanned by the subsets `I ⊇ neg(a)`. We enumerate every
//! multidegree in a window `a_i >= -B`, build each block's differential and
//! take exact ranks. The window contains every multidegree that can carry
//! cohomology, plus a margin of acyclic ones.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};

use super::CohomologyDims;
use crate::arith::{binomial, IntMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CechLimits {
    /// Maximum number of multidegrees enumerated.
    pub max_multidegrees: u128,
}

impl Default for CechLimits {
    fn default() -> Self {
        Self {
            max_multidegrees: 2_000_000,
        }
    }
}

/// Lower exponent bound `B`. Multidegrees with every exponent negative
/// satisfy `a_i >= k + n - 1`, so `B = max(0, 1 - n - k) + 1` covers them.
pub(crate) fn window_bound(n: u32, k: i64) -> i64 {
    (1 - n as i64 - k).max(0) + 1
}

fn window_size(n: u32, k: i64, bound: i64) -> u128 {
    let shifted = k + n as i64 * bound;
    if shifted < 0 {
        return 0;
    }
    let count = binomial(shifted as u64 + n as u64 - 1, n as u64 - 1);
    u128::try_from(count).unwrap_or(u128::MAX)
}

/// Calls `f` on every `a ∈ Z^n` with `Σ a = k` and `a_i >= -bound`.
pub(crate) fn for_each_multidegree(n: u32, k: i64, bound: i64, mut f: impl FnMut(&[i64])) {
    fn rec(a: &mut Vec<i64>, n: usize, remaining: i64, bound: i64, f: &mut dyn FnMut(&[i64])) {
        if a.len() + 1 == n {
            a.push(remaining);
            f(a);
            a.pop();
            return;
        }
        let slots_after = (n - a.len() - 1) as i64;
        let max = remaining + slots_after * bound;
        for v in -bound..=max {
            a.push(v);
            rec(a, n, remaining - v, bound, f);
            a.pop();
        }
    }
    if k + n as i64 * bound < 0 {
        return;
    }
    rec(&mut Vec::with_capacity(n as usize), n as usize, k, bound, &mut f);
}

/// Bitmask of the coordinates with negative exponent.
pub(crate) fn negative_support(a: &[i64]) -> u32 {
    a.iter()
        .enumerate()
        .filter(|(_, &v)| v < 0)
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// Subsets of `{0..n}` of size `size` containing `required`, in increasing
/// bitmask order.
pub(crate) fn chart_subsets(n: u32, size: u32, required: u32) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|&s| s.count_ones() == size && s & required == required)
        .collect()
}

/// Block of `δ: C^p → C^{p+1}` on one multidegree with negative support
/// `required`. Columns are the `(p+1)`-subsets, rows the `(p+2)`-subsets;
/// the entry for `I = J \ {j_r}` is `(-1)^r`.
pub(crate) fn cech_differential(n: u32, required: u32, p: u32) -> IntMatrix {
    let cols = chart_subsets(n, p + 1, required);
    let rows = chart_subsets(n, p + 2, required);
    let mut mat = IntMatrix::zeros(rows.len(), cols.len());
    let col_index: HashMap<u32, usize> = cols.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    for (r, &big) in rows.iter().enumerate() {
        let mut pos = 0;
        for bit in 0..n {
            if big & (1 << bit) == 0 {
                continue;
            }
            if let Some(&c) = col_index.get(&(big & !(1 << bit))) {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                mat.set(r, c, BigInt::from(sign));
            }
            pos += 1;
        }
    }
    mat
}

/// Čech cohomology of `O(k)` on `P^{n-1}` with the default limits.
pub fn cech_cohomology_oracle(n: u32, k: i64) -> Result<CohomologyDims> {
    cech_cohomology_with(n, k, CechLimits::default())
}

pub fn cech_cohomology_with(n: u32, k: i64, limits: CechLimits) -> Result<CohomologyDims> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    assert!(n <= 16, "Čech oracle supports at most 16 charts");
    let bound = window_bound(n, k);
    let required = window_size(n, k, bound);
    if required > limits.max_multidegrees {
        return Err(Error::WindowTooLarge {
            required,
            limit: limits.max_multidegrees,
        });
    }

    let top = n as usize;
    // Per negative-support pattern: (dim C^p, rank δ^p) for p in 0..n.
    let mut cache: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    let mut dims = vec![0u128; top];
    let mut ranks = vec![0u128; top];
    for_each_multidegree(n, k, bound, |a| {
        let neg = negative_support(a);
        let block = cache.entry(neg).or_insert_with(|| {
            (0..n)
                .map(|p| {
                    let dim = chart_subsets(n, p + 1, neg).len();
                    let rank = if p + 1 < n {
                        cech_differential(n, neg, p).rank()
                    } else {
                        0
                    };
                    (dim, rank)
                })
                .collect()
        });
        for (p, &(dim, rank)) in block.iter().enumerate() {
            dims[p] += dim as u128;
            ranks[p] += rank as u128;
        }
    });

    let h = (0..top)
        .map(|p| {
            let incoming = if p == 0 { 0 } else { ranks[p - 1] };
            BigUint::from(dims[p] - ranks[p] - incoming)
        })
        .collect();
    Ok(CohomologyDims(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(cech_cohomology_oracle(2, 1).unwrap(), CohomologyDims::from(vec![2, 0]));
        assert_eq!(cech_cohomology_oracle(3, -3).unwrap(), CohomologyDims::from(vec![0, 0, 1]));
        assert_eq!(cech_cohomology_oracle(2, 0).unwrap(), CohomologyDims::from(vec![1, 0]));
        assert_eq!(cech_cohomology_oracle(1, -4).unwrap(), CohomologyDims::from(vec![1]));
    }

    #[test]
    fn differential_squares_to_zero() {
        for n in 2..=5u32 {
            for req in [0u32, 1, 0b11] {
                for p in 0..n.saturating_sub(2) {
                    let a = cech_differential(n, req, p);
                    let b = cech_differential(n, req, p + 1);
                    for i in 0..b.nrows() {
                        for j in 0..a.ncols() {
                            let s: BigInt = (0..a.nrows()).map(|k| b.get(i, k) * a.get(k, j)).sum();
                            assert_eq!(s, BigInt::from(0), "n={n} req={req} p={p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn window_contains_all_multidegrees_with_cohomology() {
        // Every multidegree with all exponents negative must be enumerated.
        for n in 1..=4u32 {
            for k in -10..=3i64 {
                let bound = window_bound(n, k);
                let mut all_negative = 0u64;
                let mut total = 0u128;
                for_each_multidegree(n, k, bound, |a| {
                    total += 1;
                    if a.iter().all(|&v| v < 0) {
                        all_negative += 1;
                    }
                });
                assert_eq!(total, window_size(n, k, bound));
                let expect = if k <= -(n as i64) { binomial((-k - 1) as u64, n as u64 - 1) } else { BigUint::from(0u32) };
                assert_eq!(BigUint::from(all_negative), expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn oversized_window_is_rejected() {
        let err = cech_cohomology_with(5, -12, CechLimits { max_multidegrees: 10 }).unwrap_err();
        assert!(matches!(err, Error::WindowTooLarge { limit: 10, .. }));
    }
}

//! Exact integer helpers: binomials, the signed Euler polynomial of `O(k)`,
//! and fraction-free elimination for ranks and determinants.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `C(m, r)` for `m, r >= 0`.
pub fn binomial(m: u64, r: u64) -> BigUint {
    if r > m {
        return BigUint::zero();
    }
    let r = r.min(m - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Number of monomials of total degree `k` in `vars` variables, zero for
/// negative `k`.
pub fn monomial_count(vars: u32, k: i64) -> BigUint {
    if k < 0 || vars == 0 {
        return if k == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(k as u64 + vars as u64 - 1, vars as u64 - 1)
}

/// `C(x + r, r)` read as the polynomial `(x+1)(x+2)...(x+r) / r!` in the
/// integer `x`, so negative arguments yield signed values.
pub fn signed_binomial(x: i64, r: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=r as i64 {
        num *= BigInt::from(x + i);
        den *= BigInt::from(i);
    }
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    q
}

/// Dense matrix over the integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[BigInt]>::to_vec).collect()
    }

    /// Bareiss elimination in place; returns the rank and the sign of the
    /// row permutation used.
    fn bareiss(&mut self) -> (usize, bool) {
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        let mut swapped = false;
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(pivot) = (rank..m).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..n {
                    self.data.swap(pivot * n + j, rank * n + j);
                }
                swapped = !swapped;
            }
            let p = self.get(rank, col).clone();
            for r in rank + 1..m {
                let f = self.get(r, col).clone();
                for j in col..n {
                    let v = (&p * self.get(r, j) - &f * self.get(rank, j)) / &prev;
                    self.set(r, j, v);
                }
            }
            prev = p;
            rank += 1;
        }
        (rank, swapped)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().bareiss().0
    }

    /// Determinant of a square matrix. The last Bareiss pivot equals the
    /// determinant up to the permutation sign.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return BigInt::one();
        }
        let mut work = self.clone();
        let (rank, swapped) = work.bareiss();
        if rank < self.rows {
            return BigInt::zero();
        }
        let det = work.get(self.rows - 1, self.cols - 1).clone();
        if swapped {
            -det
        } else {
            det
        }
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_one() && (0..i).all(|j| self.get(i, j).is_zero())
            })
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(BigInt::abs).max().unwrap_or_default()
    }
}

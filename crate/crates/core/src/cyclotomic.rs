//! Exact arithmetic with d-th roots of unity.
//!
//! Elements are stored in the group ring `Z[x]/(x^d - 1)`, where `x` plays
//! the role of a primitive root `ζ`. The ring map to `Z[ζ]` is reduction
//! modulo the cyclotomic polynomial `Φ_d`; [`GroupRingElem::to_cyclotomic`]
//! performs it and yields the canonical coordinates over `1, ζ, …, ζ^{φ(d)-1}`.

use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Integer polynomial, coefficients in increasing degree.
pub type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Division by a monic polynomial; returns (quotient, remainder).
fn poly_divrem_monic(num: &[BigInt], den: &[BigInt]) -> (IntPoly, IntPoly) {
    let mut rem: IntPoly = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i - dd + j] -= &c * dj;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// The d-th cyclotomic polynomial, by dividing `x^d - 1` by `Φ_e` for every
/// proper divisor `e` of `d`.
pub fn cyclotomic_polynomial(d: u32) -> IntPoly {
    assert!(d >= 1);
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = -BigInt::one();
    p[d as usize] = BigInt::one();
    for e in (1..d).filter(|&e| d.is_multiple_of(e)) {
        let (q, r) = poly_divrem_monic(&p, &cyclotomic_polynomial(e));
        debug_assert!(r.is_empty());
        p = q;
    }
    p
}

/// Element of `Z[x]/(x^d - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    coeffs: Vec<BigInt>,
}

impl GroupRingElem {
    pub fn zero(d: u32) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); d as usize],
        }
    }

    /// `ζ^e` with `e` taken mod d.
    pub fn root_power(d: u32, e: i64) -> Self {
        let mut out = Self::zero(d);
        out.coeffs[e.rem_euclid(d as i64) as usize] = BigInt::one();
        out
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Multiplication by `ζ^e` is a cyclic rotation of coordinates.
    pub fn rotate(&self, e: i64) -> Self {
        let d = self.coeffs.len() as i64;
        let mut out = vec![BigInt::zero(); d as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(i as i64 + e).rem_euclid(d) as usize] = c.clone();
        }
        Self { coeffs: out }
    }

    /// Canonical coordinates in `Z[ζ]` over the basis `1, ζ, …, ζ^{φ(d)-1}`.
    pub fn to_cyclotomic(&self) -> Vec<BigInt> {
        let phi = cyclotomic_polynomial(self.order());
        let (_, mut rem) = poly_divrem_monic(&self.coeffs, &phi);
        rem.resize(phi.len() - 1, BigInt::zero());
        rem
    }

    /// The rational integer this element equals in `Z[ζ]`, or `None` when
    /// its image is not in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        let c = self.to_cyclotomic();
        if c.iter().skip(1).all(Zero::is_zero) {
            Some(c.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }
}

impl AddAssign<&GroupRingElem> for GroupRingElem {
    fn add_assign(&mut self, rhs: &GroupRingElem) {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        let d = self.coeffs.len();
        assert_eq!(d, rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[(i + j) % d] += a * b;
            }
        }
        GroupRingElem { coeffs: out }
    }
}

/// Truncated power series `Σ c_k t^k` with group-ring coefficients.
#[derive(Debug, Clone)]
pub struct RootSeries {
    pub terms: Vec<GroupRingElem>,
}

impl RootSeries {
    /// `1 / (1 - ζ^e t)` up to `t^n`.
    pub fn geometric(d: u32, e: i64, n: usize) -> Self {
        Self {
            terms: (0..=n)
                .map(|k| GroupRingElem::root_power(d, e * k as i64))
                .collect(),
        }
    }

    pub fn one(d: u32, n: usize) -> Self {
        let mut terms = vec![GroupRingElem::zero(d); n + 1];
        terms[0] = GroupRingElem::root_power(d, 0);
        Self { terms }
    }

    pub fn truncated_mul(&self, other: &Self) -> Self {
        let n = self.terms.len().min(other.terms.len());
        let d = self.terms[0].order();
        let mut terms = vec![GroupRingElem::zero(d); n];
        for (i, a) in self.terms.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.terms.iter().enumerate().take(n - i) {
                terms[i + j] += &(a * b);
            }
        }
        Self { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    #[test]
    fn divisor_product_is_x_to_the_d_minus_one() {
        for d in 1..=15u32 {
            let prod = (1..=d)
                .filter(|e| d % e == 0)
                .fold(vec![BigInt::one()], |acc, e| poly_mul(&acc, &cyclotomic_polynomial(e)));
            let mut expect = vec![BigInt::zero(); d as usize + 1];
            expect[0] = -BigInt::one();
            expect[d as usize] = BigInt::one();
            assert_eq!(prod, expect, "d = {d}");
        }
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for d in 2..=9u32 {
            let mut s = GroupRingElem::zero(d);
            for j in 0..d {
                s += &GroupRingElem::root_power(d, j as i64);
            }
            assert_eq!(s.as_integer(), Some(BigInt::zero()), "d = {d}");
        }
    }

    #[test]
    fn character_orthogonality() {
        // Σ_j ζ^{jm} = d if d | m, else 0.
        for d in 1..=8u32 {
            for m in -10..=10i64 {
                let mut s = GroupRingElem::zero(d);
                for j in 0..d as i64 {
                    s += &GroupRingElem::root_power(d, j * m);
                }
                let expect = if m.rem_euclid(d as i64) == 0 { d as i64 } else { 0 };
                assert_eq!(s.as_integer(), Some(BigInt::from(expect)), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn primitive_root_is_not_an_integer() {
        assert_eq!(GroupRingElem::root_power(5, 1).as_integer(), None);
        assert_eq!(GroupRingElem::root_power(2, 1).as_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn rotation_matches_multiplication() {
        let a = &GroupRingElem::root_power(6, 1) + &GroupRingElem::root_power(6, 4);
        assert_eq!(a.rotate(3), &a * &GroupRingElem::root_power(6, 3));
    }
}

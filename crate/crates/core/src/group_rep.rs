//! Diagonal actions of `Z/d` on `C^n` and their character-level invariant
//! theory.
//!
//! The generator acts on the coordinate `x_i` by `ζ^{w_i}`. A monomial
//! `x^a` then lies in the isotypic component of the character with index
//! `Σ a_i w_i mod d`. For the scalar action this index is the degree mod d.

use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{GroupRingElem, RootSeries};
use crate::error::{Error, Result};

/// A cyclic group `Z/d` acting diagonally on `C^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicAction {
    order: u32,
    weights: Vec<u32>,
}

impl CyclicAction {
    /// Weights are reduced into `[0, d)`.
    pub fn new(order: u32, weights: &[i64]) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        if weights.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let weights = weights
            .iter()
            .map(|w| w.rem_euclid(order as i64) as u32)
            .collect();
        Ok(Self { order, weights })
    }

    /// The generator acts as `ζ · Id` on `C^n`.
    pub fn scalar(order: u32, n: u32) -> Result<Self> {
        Self::new(order, &vec![1; n as usize])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> u32 {
        self.weights.len() as u32
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_scalar(&self) -> bool {
        let one = 1 % self.order;
        self.weights.iter().all(|&w| w == one)
    }

    /// All characters `χ_0, …, χ_{d-1}`; the rank of the representation ring.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order).map(|i| Character {
            index: i,
            order: self.order,
        })
    }

    /// Smallest `j ≠ 0` whose group element fixes a hyperplane pointwise,
    /// i.e. `j·w_i ≡ 0 (mod d)` for all coordinates but exactly one.
    pub fn pseudo_reflection(&self) -> Option<u32> {
        (1..self.order).find(|&j| {
            self.weights
                .iter()
                .filter(|&&w| !(j as u64 * w as u64).is_multiple_of(self.order as u64))
                .count()
                == 1
        })
    }
}

impl fmt::Display for CyclicAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{} with weights {:?}", self.order, self.weights)
    }
}

/// A character `χ_j` of `Z/d`, `j` taken mod d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    index: u32,
    order: u32,
}

impl Character {
    pub fn new(index: i64, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self {
            index: index.rem_euclid(order as i64) as u32,
            order,
        })
    }

    pub fn trivial(order: u32) -> Result<Self> {
        Self::new(0, order)
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn is_trivial(self) -> bool {
        self.index == 0
    }

    pub fn checked_add(self, other: Character) -> Result<Character> {
        if self.order != other.order {
            return Err(Error::CharacterOrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(Character {
            index: (self.index + other.index) % self.order,
            order: self.order,
        })
    }

    pub fn inverse(self) -> Character {
        Character {
            index: (self.order - self.index) % self.order,
            order: self.order,
        }
    }
}

impl Add for Character {
    type Output = Character;

    /// Panics on mismatched orders; use [`Character::checked_add`] otherwise.
    fn add(self, rhs: Character) -> Character {
        self.checked_add(rhs).expect("character orders differ")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ_{}", self.index)
    }
}

/// Truncated graded dimensions `c_0, …, c_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    coefficients: Vec<BigUint>,
}

impl HilbertSeries {
    /// `coefficients` must be nonempty: it carries the truncation bound.
    pub fn new(coefficients: Vec<BigUint>) -> Self {
        assert!(!coefficients.is_empty(), "Hilbert series needs c_0");
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> Option<&BigUint> {
        self.coefficients.get(k)
    }

    /// Coefficients as `u64`, when they all fit.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coefficients.iter().map(ToPrimitive::to_u64).collect()
    }

    /// First index where the two series differ, comparing up to the shorter
    /// truncation.
    pub fn first_mismatch(&self, other: &HilbertSeries) -> Option<usize> {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .position(|(a, b)| a != b)
    }
}

impl From<Vec<u64>> for HilbertSeries {
    fn from(v: Vec<u64>) -> Self {
        Self::new(v.into_iter().map(BigUint::from).collect())
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_character(action: &CyclicAction, chi: Character) -> Result<()> {
    if chi.order() != action.order() {
        return Err(Error::CharacterOrderMismatch {
            left: action.order(),
            right: chi.order(),
        });
    }
    Ok(())
}

/// Dimension of the `chi`-isotypic part of `C[x_1..x_n]` in each degree
/// `0..=max_degree`, by counting monomials per (degree, weight residue).
pub fn covariant_hilbert(
    action: &CyclicAction,
    chi: Character,
    max_degree: usize,
) -> Result<HilbertSeries> {
    check_character(action, chi)?;
    let d = action.order() as usize;
    // table[k][r]: monomials of degree k in the variables seen so far with
    // weight sum ≡ r.
    let mut table = vec![vec![BigUint::zero(); d]; max_degree + 1];
    table[0][0] = BigUint::from(1u32);
    for &w in action.weights() {
        let w = w as usize;
        for k in 1..=max_degree {
            for r in 0..d {
                let prev = table[k - 1][(r + d - w) % d].clone();
                table[k][r] += prev;
            }
        }
    }
    Ok(HilbertSeries::new(
        table
            .into_iter()
            .map(|mut row| row.swap_remove(chi.index() as usize))
            .collect(),
    ))
}

/// The same series as [`covariant_hilbert`], computed as the Molien average
/// `(1/d) Σ_j ζ^{-j·chi} Π_i (1 - ζ^{j w_i} t)^{-1}` in exact cyclotomic
/// arithmetic.
pub fn molien_series(
    action: &CyclicAction,
    chi: Character,
    max_degree: usize,
) -> Result<HilbertSeries> {
    check_character(action, chi)?;
    let d = action.order();
    let mut total = vec![GroupRingElem::zero(d); max_degree + 1];
    for j in 0..d as i64 {
        let series = action
            .weights()
            .iter()
            .fold(RootSeries::one(d, max_degree), |acc, &w| {
                acc.truncated_mul(&RootSeries::geometric(d, j * w as i64, max_degree))
            });
        let shift = -j * chi.index() as i64;
        for (slot, term) in total.iter_mut().zip(&series.terms) {
            *slot += &term.rotate(shift);
        }
    }
    let order = BigInt::from(d);
    let coefficients = total
        .iter()
        .map(|elem| {
            let sum = elem
                .as_integer()
                .expect("Molien sum must be a rational integer");
            let (q, r) = sum.div_rem(&order);
            assert!(r.is_zero(), "Molien sum {sum} not divisible by {d}");
            q.to_biguint().expect("Molien coefficient must be nonnegative")
        })
        .collect();
    Ok(HilbertSeries::new(coefficients))
}

/// The determinant character `χ_{Σ w_i}`; trivial iff the action lies in
/// `SL(V)`.
pub fn det_character(action: &CyclicAction) -> Character {
    let sum: u64 = action.weights().iter().map(|&w| w as u64).sum();
    Character {
        index: (sum % action.order() as u64) as u32,
        order: action.order(),
    }
}

/// Which criterion decided [`is_gorenstein`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GorensteinBranch {
    /// Scalar action: Gorenstein iff `d | n`.
    ScalarDivisibility,
    /// General diagonal action: Gorenstein iff the determinant character is
    /// trivial. Extrapolated beyond the scalar statement.
    DeterminantCharacter,
}

impl GorensteinBranch {
    pub fn label(self) -> &'static str {
        match self {
            Self::ScalarDivisibility => "scalar: d divides n",
            Self::DeterminantCharacter => {
                "determinant character trivial (extrapolated beyond the scalar criterion)"
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GorensteinCertificate {
    pub gorenstein: bool,
    pub branch: GorensteinBranch,
    /// `Σ w_i mod d`.
    pub weight_sum_mod_d: u32,
    /// A group element fixing a hyperplane, if any. When present the
    /// criterion is not claimed valid.
    pub pseudo_reflection: Option<u32>,
}

pub fn is_gorenstein(action: &CyclicAction) -> GorensteinCertificate {
    let det = det_character(action);
    let (gorenstein, branch) = if action.is_scalar() {
        (
            action.dim().is_multiple_of(action.order()),
            GorensteinBranch::ScalarDivisibility,
        )
    } else {
        (det.is_trivial(), GorensteinBranch::DeterminantCharacter)
    };
    GorensteinCertificate {
        gorenstein,
        branch,
        weight_sum_mod_d: det.index(),
        pseudo_reflection: action.pseudo_reflection(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(d: u32, w: &[i64]) -> CyclicAction {
        CyclicAction::new(d, w).unwrap()
    }

    fn chi(j: i64, d: u32) -> Character {
        Character::new(j, d).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(CyclicAction::new(0, &[1]), Err(Error::ZeroOrder));
        assert_eq!(CyclicAction::new(3, &[]), Err(Error::ZeroDimension));
        assert_eq!(act(3, &[-1, 4, 3]).weights(), &[2, 1, 0]);
        assert!(act(1, &[5, 7]).is_scalar());
        assert!(act(4, &[5, 1]).is_scalar());
        assert!(!act(4, &[1, 3]).is_scalar());
    }

    #[test]
    fn character_group_law() {
        let a = chi(2, 5);
        let b = chi(4, 5);
        assert_eq!((a + b).index(), 1);
        assert!((a + a.inverse()).is_trivial());
        assert!(a.checked_add(chi(1, 3)).is_err());
        assert_eq!(chi(-1, 4).index(), 3);
    }

    #[test]
    fn covariant_examples() {
        let s = |d, w: &[i64], j, n| covariant_hilbert(&act(d, w), chi(j, d), n).unwrap();
        assert_eq!(s(2, &[1, 1], 0, 4), HilbertSeries::from(vec![1, 0, 3, 0, 5]));
        assert_eq!(s(1, &[1], 0, 3), HilbertSeries::from(vec![1, 1, 1, 1]));
        assert_eq!(s(2, &[1, 1], 1, 4), HilbertSeries::from(vec![0, 2, 0, 4, 0]));
    }

    #[test]
    fn molien_examples() {
        let s = |d, w: &[i64], j, n| molien_series(&act(d, w), chi(j, d), n).unwrap();
        assert_eq!(s(2, &[1, 1], 0, 4), HilbertSeries::from(vec![1, 0, 3, 0, 5]));
        assert_eq!(
            s(3, &[1, 1, 1], 0, 6),
            HilbertSeries::from(vec![1, 0, 0, 10, 0, 0, 28])
        );
        assert_eq!(s(1, &[1, 1], 0, 2), HilbertSeries::from(vec![1, 2, 3]));
    }

    #[test]
    fn mismatched_character_is_rejected() {
        assert!(covariant_hilbert(&act(3, &[1]), chi(0, 2), 3).is_err());
        assert!(molien_series(&act(3, &[1]), chi(0, 2), 3).is_err());
    }

    #[test]
    fn determinant_character() {
        assert!(det_character(&act(2, &[1, 1])).is_trivial());
        assert_eq!(det_character(&act(2, &[1, 1, 1])).index(), 1);
        assert!(det_character(&act(4, &[1, 3])).is_trivial());
    }

    #[test]
    fn gorenstein_examples() {
        let c = is_gorenstein(&act(2, &[1, 1, 1, 1]));
        assert!(c.gorenstein);
        assert_eq!(c.branch, GorensteinBranch::ScalarDivisibility);
        assert!(!is_gorenstein(&act(2, &[1, 1, 1])).gorenstein);
        assert!(is_gorenstein(&act(1, &[1])).gorenstein);

        let c = is_gorenstein(&act(3, &[1, 1, 2]));
        assert!(!c.gorenstein);
        assert_eq!(c.branch, GorensteinBranch::DeterminantCharacter);
        assert_eq!(c.weight_sum_mod_d, 1);
    }

    #[test]
    fn pseudo_reflections() {
        assert_eq!(act(2, &[1, 0]).pseudo_reflection(), Some(1));
        assert_eq!(act(2, &[1, 1]).pseudo_reflection(), None);
        // g^3 acts as diag(1, 1, -1) for weights (2, 4, 3) mod 6.
        assert_eq!(act(6, &[2, 4, 3]).pseudo_reflection(), Some(3));
        assert_eq!(act(1, &[0, 0]).pseudo_reflection(), None);
    }
}

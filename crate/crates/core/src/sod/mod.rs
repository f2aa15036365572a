//! Semi-orthogonal decomposition of `D^b(X̃)` into pushed-forward blocks
//! `i_*(B ⊗ O_E(kE))` and the residual component `T_0`.
//!
//! Convention: in `⟨A_1, …, A_r⟩`, `Hom(A_i, A_j) = 0` whenever `i > j`.
//! `O_E(kE)` is recorded as `O_E(-k·d)`.

mod koszul;

pub use koszul::{koszul_ext_oracle, koszul_ext_oracle_with};

use num_bigint::{BigInt, BigUint};

use crate::arith::{signed_binomial, IntMatrix};
use crate::cohomology::{bott_cohomology, CohomologyDims, LineBundle, ProjSpace};
use crate::error::{Error, Result};
use crate::quotient::ScalarQuotient;

/// Line bundles `O(k_1), …, O(k_r)` on `P^{n-1}`, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalCollection {
    pub space: ProjSpace,
    pub degrees: Vec<i64>,
}

impl ExceptionalCollection {
    pub fn new(n: u32, degrees: Vec<i64>) -> Result<Self> {
        Ok(Self {
            space: ProjSpace::new(n)?,
            degrees,
        })
    }

    /// `O(1-n), …, O(-1), O`.
    pub fn beilinson(n: u32) -> Result<Self> {
        Self::new(n, (1 - n as i64..=0).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollectionFailure {
    /// `Ext^•(O(k), O(k))` is not `C` in degree 0.
    NotExceptional { index: usize, degree: usize, dim: BigUint },
    /// `Ext^degree(right, left) ≠ 0`.
    NotSemiOrthogonal {
        left: usize,
        right: usize,
        degree: usize,
        dim: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollectionCheck {
    pub exceptional: bool,
    pub failure: Option<CollectionFailure>,
}

pub fn exceptional_collection_check(c: &ExceptionalCollection) -> Result<CollectionCheck> {
    if c.degrees.is_empty() {
        return Err(Error::EmptyCollection);
    }
    let self_ext = bott_cohomology(c.space, LineBundle::new(0));
    if let Some((degree, dim)) = self_ext
        .0
        .iter()
        .enumerate()
        .find(|&(i, v)| *v != BigUint::from((i == 0) as u32))
    {
        return Ok(CollectionCheck {
            exceptional: false,
            failure: Some(CollectionFailure::NotExceptional {
                index: 0,
                degree,
                dim: dim.clone(),
            }),
        });
    }
    for (left, &kl) in c.degrees.iter().enumerate() {
        for (right, &kr) in c.degrees.iter().enumerate().skip(left + 1) {
            let ext = bott_cohomology(c.space, LineBundle::new(kl - kr));
            if let Some((degree, dim)) = ext.first_nonzero() {
                return Ok(CollectionCheck {
                    exceptional: false,
                    failure: Some(CollectionFailure::NotSemiOrthogonal {
                        left,
                        right,
                        degree,
                        dim,
                    }),
                });
            }
        }
    }
    Ok(CollectionCheck {
        exceptional: true,
        failure: None,
    })
}

/// Gram matrix of the Euler pairing over a collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerMatrix(pub IntMatrix);

impl EulerMatrix {
    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.0.get(i, j)
    }

    pub fn determinant(&self) -> BigInt {
        self.0.determinant()
    }
}

/// `χ(O(k_i), O(k_j)) = C(k_j - k_i + n - 1, n - 1)` as a polynomial.
pub fn euler_matrix(c: &ExceptionalCollection) -> EulerMatrix {
    let r = c.degrees.len();
    let mut m = IntMatrix::zeros(r, r);
    for (i, &ki) in c.degrees.iter().enumerate() {
        for (j, &kj) in c.degrees.iter().enumerate() {
            m.set(i, j, signed_binomial(kj - ki, c.space.dim()));
        }
    }
    EulerMatrix(m)
}

/// `Ext^p_X̃(i_*O_E(a), i_*O_E(b))` for `p = 0..=n`:
/// `H^p(E, O(b-a)) ⊕ H^{p-1}(E, O(b-a-d))`.
///
/// The derived restriction `Li^* i_* F` has cohomology `F` in degree 0 and
/// `F ⊗ O_E(-E) = F(d)` in degree -1, and splits because `E` is the zero
/// section of a line bundle. Validated against [`koszul_ext_oracle`].
pub fn pushforward_ext(n: u32, d: u32, a: i64, b: i64) -> Result<CohomologyDims> {
    if d == 0 {
        return Err(Error::ZeroOrder);
    }
    let e = ProjSpace::new(n)?;
    let head = bott_cohomology(e, LineBundle::new(b - a));
    let tail = bott_cohomology(e, LineBundle::new(b - a - d as i64));
    Ok(CohomologyDims(
        (0..=n as usize)
            .map(|p| head.get(p) + if p == 0 { BigUint::default() } else { tail.get(p - 1) })
            .collect(),
    ))
}

/// One member `i_*(O_E(-l) ⊗ O_E(kE)) = i_*O_E(-l - k·d)` of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockMember {
    pub l: u32,
    pub twist: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SodBlock {
    /// `k` in `O_E(kE)`, in `1..=n/d - 1`.
    pub level: u32,
    /// Left to right, in the order of `B = ⟨O(1-d), …, O(-1), O⟩`.
    pub members: Vec<BlockMember>,
}

impl SodBlock {
    fn new(level: u32, d: u32) -> Self {
        Self {
            level,
            members: (0..d)
                .rev()
                .map(|l| BlockMember {
                    l,
                    twist: -(l as i64) - level as i64 * d as i64,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityFailure {
    pub left_twist: i64,
    pub right_twist: i64,
    pub degree: usize,
    pub dim: BigUint,
}

/// `Ext^•(t^*O(-j), i_*O_E(twist)) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T0Failure {
    pub j: u32,
    pub block_twist: i64,
    pub degree: usize,
    pub dim: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Accounting {
    pub n: u32,
    pub block_count: u32,
    pub block_size: u32,
    pub residual: u32,
    pub representation_rank: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SodReport {
    pub quotient: ScalarQuotient,
    pub blocks: Vec<SodBlock>,
    /// `B` is an exceptional collection on `E`.
    pub block_collection: CollectionCheck,
    pub semi_orthogonal: bool,
    pub semi_failure: Option<OrthogonalityFailure>,
    /// The same test with the member order reversed inside every block.
    pub reversed_members_semi_orthogonal: bool,
    pub t0_orthogonal: bool,
    pub t0_failure: Option<T0Failure>,
    pub k0: K0Accounting,
    /// `d = n`: no blocks, `T_0 = D^b(X̃)`.
    pub t0_is_everything: bool,
}

impl SodReport {
    pub fn passed(&self) -> bool {
        self.block_collection.exceptional && self.semi_orthogonal && self.t0_orthogonal && self.k0.holds
    }

    /// Objects left to right with their `(k, l)` labels.
    pub fn ordered_objects(&self) -> Vec<(u32, BlockMember)> {
        self.blocks
            .iter()
            .flat_map(|b| b.members.iter().map(move |m| (b.level, *m)))
            .collect()
    }

    pub fn member_order(&self) -> &'static str {
        match (self.semi_orthogonal, self.reversed_members_semi_orthogonal) {
            (true, true) => "both member orders are semi-orthogonal",
            (true, false) => "increasing twists (B order) is semi-orthogonal; reversed is not",
            (false, true) => "only the reversed member order is semi-orthogonal",
            (false, false) => "neither member order is semi-orthogonal",
        }
    }

    pub fn statement(&self) -> String {
        if self.t0_is_everything {
            "T_0 = D^b(X~)".into()
        } else {
            format!(
                "D^b(X~) = <{} block(s) of {} objects, T_0>",
                self.blocks.len(),
                self.quotient.d()
            )
        }
    }
}

fn first_right_to_left_ext(n: u32, d: u32, twists: &[i64]) -> Result<Option<OrthogonalityFailure>> {
    for (i, &left) in twists.iter().enumerate() {
        for &right in &twists[i + 1..] {
            let ext = pushforward_ext(n, d, right, left)?;
            if let Some((degree, dim)) = ext.first_nonzero() {
                return Ok(Some(OrthogonalityFailure {
                    left_twist: left,
                    right_twist: right,
                    degree,
                    dim,
                }));
            }
        }
    }
    Ok(None)
}

pub fn kuznetsov_sod_check(q: ScalarQuotient) -> Result<SodReport> {
    let q = q.require_gorenstein()?;
    let (n, d) = (q.n(), q.d());
    let block_count = n / d - 1;
    // Leftmost block carries the largest k.
    let blocks: Vec<SodBlock> = (1..=block_count).rev().map(|k| SodBlock::new(k, d)).collect();

    let e = ProjSpace::new(n)?;
    let block_collection = exceptional_collection_check(&ExceptionalCollection {
        space: e,
        degrees: (1 - d as i64..=0).collect(),
    })?;

    let twists: Vec<i64> = blocks.iter().flat_map(|b| b.members.iter().map(|m| m.twist)).collect();
    let semi_failure = first_right_to_left_ext(n, d, &twists)?;
    let reversed: Vec<i64> = blocks
        .iter()
        .flat_map(|b| b.members.iter().rev().map(|m| m.twist))
        .collect();
    let reversed_failure = first_right_to_left_ext(n, d, &reversed)?;

    // T_0 sits to the right and is generated by the summands t^*O(-j) of A;
    // Ext(t^*O(-j), i_*O_E(τ)) = H^•(E, O(τ + j)) by adjunction.
    let mut t0_failure = None;
    'outer: for j in 0..d {
        for &tau in &twists {
            let ext = bott_cohomology(e, LineBundle::new(tau + j as i64));
            if let Some((degree, dim)) = ext.first_nonzero() {
                t0_failure = Some(T0Failure {
                    j,
                    block_twist: tau,
                    degree,
                    dim,
                });
                break 'outer;
            }
        }
    }

    let representation_rank = q.action().characters().count() as u32;
    let k0 = K0Accounting {
        n,
        block_count,
        block_size: d,
        residual: d,
        representation_rank,
        holds: n == block_count * d + d && representation_rank == d,
    };

    Ok(SodReport {
        quotient: q,
        t0_is_everything: blocks.is_empty(),
        blocks,
        block_collection,
        semi_orthogonal: semi_failure.is_none(),
        semi_failure,
        reversed_members_semi_orthogonal: reversed_failure.is_none(),
        t0_orthogonal: t0_failure.is_none(),
        t0_failure,
        k0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coll(n: u32, degrees: &[i64]) -> ExceptionalCollection {
        ExceptionalCollection::new(n, degrees.to_vec()).unwrap()
    }

    fn rows(m: &EulerMatrix) -> Vec<Vec<i64>> {
        m.0.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn collection_examples() {
        assert!(exceptional_collection_check(&coll(4, &[-1, 0])).unwrap().exceptional);
        let c = exceptional_collection_check(&coll(2, &[0, 0])).unwrap();
        assert!(!c.exceptional);
        assert_eq!(
            c.failure,
            Some(CollectionFailure::NotSemiOrthogonal {
                left: 0,
                right: 1,
                degree: 0,
                dim: BigUint::from(1u32)
            })
        );
        assert!(exceptional_collection_check(&coll(4, &[-3, -2, -1, 0])).unwrap().exceptional);
        assert!(!exceptional_collection_check(&coll(3, &[0, -1])).unwrap().exceptional);
        assert_eq!(exceptional_collection_check(&coll(3, &[])), Err(Error::EmptyCollection));
    }

    #[test]
    fn euler_matrix_examples() {
        assert_eq!(rows(&euler_matrix(&coll(2, &[0, 1]))), vec![vec![1, 2], vec![0, 1]]);
        assert_eq!(
            rows(&euler_matrix(&coll(3, &[-2, -1, 0]))),
            vec![vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]
        );
        assert_eq!(rows(&euler_matrix(&coll(2, &[0]))), vec![vec![1]]);
    }

    #[test]
    fn pushforward_ext_examples() {
        assert_eq!(pushforward_ext(2, 2, 0, 0).unwrap(), CohomologyDims::from(vec![1, 0, 1]));
        assert!(pushforward_ext(4, 2, 0, -1).unwrap().vanishes());
        assert_eq!(pushforward_ext(4, 2, 0, -1).unwrap().len(), 5);
        assert_eq!(pushforward_ext(2, 2, 0, 1).unwrap(), CohomologyDims::from(vec![2, 0, 0]));
    }

    #[test]
    fn sod_examples() {
        let q = |n, d| ScalarQuotient::new(n, d).unwrap();

        let r = kuznetsov_sod_check(q(2, 2)).unwrap();
        assert!(r.passed());
        assert!(r.blocks.is_empty() && r.t0_is_everything);
        assert_eq!(r.statement(), "T_0 = D^b(X~)");

        let r = kuznetsov_sod_check(q(4, 2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.blocks.len(), 1);
        let twists: Vec<i64> = r.blocks[0].members.iter().map(|m| m.twist).collect();
        assert_eq!(twists, vec![-3, -2]);
        assert!(!r.reversed_members_semi_orthogonal);
        assert_eq!((r.k0.block_count * r.k0.block_size + r.k0.residual), 4);

        let r = kuznetsov_sod_check(q(6, 3)).unwrap();
        assert!(r.passed());
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].members.len(), 3);

        assert!(matches!(kuznetsov_sod_check(q(3, 2)), Err(Error::NotGorenstein { .. })));
    }

    #[test]
    fn blocks_are_listed_with_decreasing_level() {
        let r = kuznetsov_sod_check(ScalarQuotient::new(8, 2).unwrap()).unwrap();
        let levels: Vec<u32> = r.blocks.iter().map(|b| b.level).collect();
        assert_eq!(levels, vec![3, 2, 1]);
        let twists: Vec<i64> = r.ordered_objects().iter().map(|(_, m)| m.twist).collect();
        assert_eq!(twists, vec![-7, -6, -5, -4, -3, -2]);
        assert!(r.passed());
    }
}

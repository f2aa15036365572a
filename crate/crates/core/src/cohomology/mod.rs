//! Line-bundle cohomology on `P^{n-1}` and on the total space
//! `X̃ = Tot(O_{P^{n-1}}(-d))`.
//!
//! Grading convention shared by every module: the fiber degree `m` counts
//! symmetric powers of `O(d)`, the dual of `O(-d)`, so
//! `t_* t^*O(j) = ⊕_{m ≥ 0} O(j + m·d)`.

mod cech;

pub use cech::{cech_cohomology_oracle, cech_cohomology_with, CechLimits};
pub(crate) use cech::{cech_differential, chart_subsets, for_each_multidegree, negative_support, window_bound};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::arith::{binomial, signed_binomial};
use crate::error::{Error, Result};

/// `P^{n-1}`, stored by its number of homogeneous coordinates `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjSpace {
    n: u32,
}

impl ProjSpace {
    /// `n = 1` is the point `P^0`.
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { n })
    }

    pub fn coords(self) -> u32 {
        self.n
    }

    pub fn dim(self) -> u32 {
        self.n - 1
    }
}

impl fmt::Display for ProjSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P^{}", self.n - 1)
    }
}

/// `O(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LineBundle {
    pub twist: i64,
}

impl LineBundle {
    pub fn new(twist: i64) -> Self {
        Self { twist }
    }
}

/// `t^*O(j)` on `Tot(O_{P^{n-1}}(-d))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TotalSpaceBundle {
    pub base: ProjSpace,
    pub d: u32,
    pub twist: i64,
}

impl TotalSpaceBundle {
    pub fn new(n: u32, d: u32, twist: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self {
            base: ProjSpace::new(n)?,
            d,
            twist,
        })
    }
}

/// Dimensions `h^0, …, h^{top}` of a graded cohomology computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohomologyDims(pub Vec<BigUint>);

impl CohomologyDims {
    pub fn zero(len: usize) -> Self {
        Self(vec![BigUint::zero(); len])
    }

    pub fn get(&self, i: usize) -> BigUint {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vanishes(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// First degree with nonzero dimension.
    pub fn first_nonzero(&self) -> Option<(usize, BigUint)> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let v = BigInt::from(v.clone());
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.0.iter().map(num_traits::ToPrimitive::to_u64).collect()
    }
}

impl From<Vec<u64>> for CohomologyDims {
    fn from(v: Vec<u64>) -> Self {
        Self(v.into_iter().map(BigUint::from).collect())
    }
}

impl fmt::Display for CohomologyDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `h^i(P^{n-1}, O(k))` for `i = 0..n-1` in closed form.
pub fn bott_cohomology(space: ProjSpace, bundle: LineBundle) -> CohomologyDims {
    let n = space.coords();
    let k = bundle.twist;
    let mut dims = CohomologyDims::zero(n as usize);
    if n == 1 {
        dims.0[0] = BigUint::from(1u32);
        return dims;
    }
    let top = (n - 1) as u64;
    if k >= 0 {
        dims.0[0] = binomial(k as u64 + top, top);
    }
    if k <= -(n as i64) {
        dims.0[n as usize - 1] = binomial((-k - 1) as u64, top);
    }
    dims
}

/// `χ(P^{n-1}, O(k)) = C(k + n - 1, n - 1)` read as a polynomial in `k`.
pub fn euler_characteristic(space: ProjSpace, bundle: LineBundle) -> BigInt {
    signed_binomial(bundle.twist, space.dim())
}

/// Cohomology of `t^*O(j)` on `X̃`, split by fiber degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub bundle: TotalSpaceBundle,
    pub max_fiber_degree: usize,
    /// `rows[i][m] = h^i(P^{n-1}, O(j + m·d))`.
    rows: Vec<Vec<BigUint>>,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, m: usize) -> BigUint {
        self.rows
            .get(i)
            .and_then(|row| row.get(m))
            .cloned()
            .unwrap_or_default()
    }

    pub fn row(&self, i: usize) -> &[BigUint] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }
}

pub fn total_space_cohomology(bundle: TotalSpaceBundle, max_fiber_degree: usize) -> CohomologyTable {
    let n = bundle.base.coords() as usize;
    let mut rows = vec![Vec::with_capacity(max_fiber_degree + 1); n];
    for m in 0..=max_fiber_degree {
        let twist = bundle.twist + m as i64 * bundle.d as i64;
        let dims = bott_cohomology(bundle.base, LineBundle::new(twist));
        for (row, v) in rows.iter_mut().zip(dims.0) {
            row.push(v);
        }
    }
    CohomologyTable {
        bundle,
        max_fiber_degree,
        rows,
    }
}

/// Outcome of the `R^i q_* t^*O(j) = 0, i > 0` test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VanishingWitness {
    pub vanishes: bool,
    /// Smallest offending `(i, m)` with `h^i(O(j + m·d)) ≠ 0`, `i > 0`.
    pub offending: Option<(u32, u32)>,
}

/// Decides whether `t^*O(j)` has no higher cohomology on `X̃`, exactly and
/// without a fiber-degree cutoff.
///
/// Only `h^{n-1}(O(k))` can be nonzero above degree 0, and only for
/// `k <= -n`. Since `j + m·d` increases with `m`, the answer is decided at
/// `m = 0`.
pub fn pushforward_vanishing(n: u32, d: u32, twist: i64) -> Result<VanishingWitness> {
    let bundle = TotalSpaceBundle::new(n, d, twist)?;
    if n == 1 || twist > -(n as i64) {
        return Ok(VanishingWitness {
            vanishes: true,
            offending: None,
        });
    }
    debug_assert!(!bott_cohomology(bundle.base, LineBundle::new(twist)).get(n as usize - 1).is_zero());
    Ok(VanishingWitness {
        vanishes: false,
        offending: Some((n - 1, 0)),
    })
}

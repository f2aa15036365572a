//! Canonical-bundle bookkeeping on the blow-up `X̃ = Tot(O_{P^{n-1}}(-d))`.
//!
//! Line bundles on `X̃` are pulled back from `P^{n-1}` and recorded by their
//! twist. `O_X̃(E) = t^*O(-d)` since `E` is the zero section of `O(-d)`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group_rep::{det_character, CyclicAction};
use crate::quotient::ScalarQuotient;

/// Twist `c` with `ω_X̃ = t^*O(c)`, by adjunction for the total space of a
/// line bundle `L`: `ω = t^*(ω_{P^{n-1}} ⊗ L^∨)`.
pub fn canonical_of_total_space(q: ScalarQuotient) -> Result<i64> {
    if q.n() < 2 {
        return Err(Error::DimensionTooSmall {
            what: "canonical bundle of the blow-up",
            n: q.n(),
            min: 2,
        });
    }
    let base_canonical = -(q.n() as i64);
    let dual_of_l = q.d() as i64;
    Ok(base_canonical + dual_of_l)
}

/// Twist of `O_X̃(E)`.
pub fn exceptional_divisor_twist(q: ScalarQuotient) -> i64 {
    -(q.d() as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    /// `a` in `K_X̃ = q^*K_X + a·E`.
    pub value: Ratio<i64>,
    pub canonical_twist: i64,
    pub divisor_twist: i64,
    /// False when `d ∤ n`; `value` is then fractional and only exploratory.
    pub gorenstein: bool,
    pub trace: Vec<String>,
}

impl Discrepancy {
    pub fn is_zero(&self) -> bool {
        *self.value.numer() == 0
    }
}

/// Discrepancy of `E`, computed whether or not `d | n`.
pub fn explore_discrepancy(q: ScalarQuotient) -> Result<Discrepancy> {
    let canonical_twist = canonical_of_total_space(q)?;
    let divisor_twist = exceptional_divisor_twist(q);
    // q^*K_X is trivial on the affine toric X; solve t^*O(c) = O_X̃(E)^{⊗a}.
    let value = Ratio::new(canonical_twist, divisor_twist);
    let gorenstein = q.is_gorenstein();
    let mut trace = vec![
        format!("omega_X~ = t*O({canonical_twist})  [= t*(O(-{}) (x) O({}))]", q.n(), q.d()),
        format!("O_X~(E) = t*O({divisor_twist})"),
        format!("K_X~ = a E  =>  a = {canonical_twist}/{divisor_twist} = {value}"),
    ];
    if !gorenstein {
        trace.push(format!("d = {} does not divide n = {}: fractional, X is not Gorenstein", q.d(), q.n()));
    }
    Ok(Discrepancy {
        value,
        canonical_twist,
        divisor_twist,
        gorenstein,
        trace,
    })
}

/// Discrepancy of `E` under the standing hypothesis `d | n`.
pub fn discrepancy(q: ScalarQuotient) -> Result<Discrepancy> {
    q.require_gorenstein()?;
    explore_discrepancy(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeakCrepancy {
    /// `ω_V` is equivariantly locally trivial, i.e. the determinant character
    /// is trivial.
    pub holds: bool,
    pub pseudo_reflection: Option<u32>,
}

pub fn weak_crepancy_hypothesis(action: &CyclicAction) -> WeakCrepancy {
    WeakCrepancy {
        holds: det_character(action).is_trivial(),
        pseudo_reflection: action.pseudo_reflection(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalReport {
    pub omega_total_space_twist: i64,
    pub discrepancy: Ratio<i64>,
    pub gorenstein: bool,
    pub crepant_blowup: bool,
    pub equivariantly_trivial_canonical: bool,
}

pub fn canonical_report(q: ScalarQuotient) -> Result<CanonicalReport> {
    let disc = explore_discrepancy(q)?;
    Ok(CanonicalReport {
        omega_total_space_twist: disc.canonical_twist,
        crepant_blowup: disc.gorenstein && disc.is_zero(),
        discrepancy: disc.value,
        gorenstein: disc.gorenstein,
        equivariantly_trivial_canonical: weak_crepancy_hypothesis(&q.action()).holds,
    })
}

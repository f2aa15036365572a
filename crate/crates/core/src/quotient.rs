use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group_rep::CyclicAction;

/// `C^n / Z_d` with the scalar action: the generator is `ζ · Id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScalarQuotient {
    n: u32,
    d: u32,
}

impl ScalarQuotient {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if d == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self { n, d })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn d(self) -> u32 {
        self.d
    }

    pub fn is_gorenstein(self) -> bool {
        self.n.is_multiple_of(self.d)
    }

    /// Errors unless `d | n`.
    pub fn require_gorenstein(self) -> Result<Self> {
        if self.is_gorenstein() {
            Ok(self)
        } else {
            Err(Error::NotGorenstein {
                n: self.n,
                d: self.d,
                discrepancy: Ratio::new(self.n as i64 - self.d as i64, self.d as i64)
                    .to_string(),
            })
        }
    }

    pub fn action(self) -> CyclicAction {
        CyclicAction::scalar(self.d, self.n).expect("validated on construction")
    }
}

impl fmt::Display for ScalarQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C^{}/Z_{}", self.n, self.d)
    }
}

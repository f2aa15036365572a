//! Exact checks for the categorical crepant resolution of the scalar cyclic
//! quotient singularity `C^n / Z_d` and its blow-up
//! `X̃ = Tot(O_{P^{n-1}}(-d))`.

pub mod arith;
pub mod cohomology;
pub mod crepancy;
pub mod cyclotomic;
pub mod error;
pub mod group_rep;
pub mod quotient;
pub mod report;
pub mod sod;
pub mod tilting;

pub use error::{Error, Result};
pub use quotient::ScalarQuotient;

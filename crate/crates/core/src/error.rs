use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order must be positive")]
    ZeroOrder,

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("{what} requires n >= {min}, got n = {n}")]
    DimensionTooSmall { what: &'static str, n: u32, min: u32 },

    #[error("character index {index} is out of range for Z/{order}")]
    CharacterOutOfRange { index: u32, order: u32 },

    #[error("characters of Z/{left} and Z/{right} cannot be combined")]
    CharacterOrderMismatch { left: u32, right: u32 },

    #[error("action with weights {weights:?} mod {order} is not scalar")]
    NotScalar { order: u32, weights: Vec<u32> },

    #[error("d = {d} does not divide n = {n}: C^{n}/Z_{d} is not Gorenstein (discrepancy would be {discrepancy})")]
    NotGorenstein { n: u32, d: u32, discrepancy: String },

    #[error("exceptional collection must contain at least one object")]
    EmptyCollection,

    #[error("Cech support window of {required} multidegrees exceeds the limit of {limit}")]
    WindowTooLarge { required: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

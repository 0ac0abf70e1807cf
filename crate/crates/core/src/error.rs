use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("{0:?} is not a root of the root system")]
    NotARoot(Vec<i64>),
    #[error("element is not a Coxeter element (reflection length {found}, expected {expected})")]
    NotCoxeter { found: usize, expected: usize },
    #[error("element does not lie below the Coxeter element in absolute order")]
    NotNoncrossing,
    #[error("noncrossing elements were built over different Coxeter elements")]
    CoxeterMismatch,
    #[error("operation requires a type A root system, got {0}")]
    NotTypeA(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operation requires a finite field, got {0}")]
    InfiniteField(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("enumeration would produce at least {count} members, above the size guard of {cap}")]
    SizeGuard { count: u128, cap: u128 },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("complex is not a complex: d∘d ≠ 0 at degree {0}")]
    NotAComplex(i64),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

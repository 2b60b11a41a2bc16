use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameters must be nonzero")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("modulus {0} must be odd and positive")]
    BadJacobiModulus(i64),
    #[error("modulus {0} must be at least 2")]
    BadModulus(i64),
    #[error("{a} and {m} are not coprime")]
    NotCoprime { a: i64, m: i64 },
    #[error("{p} divides {a}")]
    Divisible { a: i64, p: i64 },
    #[error("{q} does not divide {p} - 1; the power-residue criterion is undefined here")]
    NoRootsOfUnity { q: i64, p: i64 },
    #[error("residue characteristic {0} is wild for this symbol")]
    WildPlace(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("value {0} is outside the supported range")]
    OutOfRange(i128),
    #[error("{0} is a square in the base field; the extension is degenerate")]
    SquareParameter(i64),
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("element of Q(zeta_{found}) used where Q(zeta_{expected}) was expected")]
    FieldMismatch { expected: u32, found: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

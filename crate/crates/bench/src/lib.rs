//! Inputs shared by the criterion benchmarks.

use quatsym_core::AlgebraSpec;

/// Quaternion pairs over `Q(i)` from the worked examples, split and division.
pub const QI_PAIRS: &[(i64, i64)] = &[(5, 29), (10, 29), (33, 29), (7, 43), (15, 17), (-1, 3), (2, 5)];

/// Symbol algebras `(q, alpha, p)`.
pub const SYMBOLS: &[(i64, i64, i64)] = &[(3, 7, 29), (3, 7, 43), (3, 7, 19), (5, 11, 31), (5, 3, 11)];

pub fn specs() -> Vec<AlgebraSpec> {
    QI_PAIRS
        .iter()
        .map(|&(a, b)| AlgebraSpec::QuaternionQi { a, b })
        .chain(SYMBOLS.iter().map(|&(q, alpha, p)| AlgebraSpec::Symbol { q, alpha, p }))
        .collect()
}

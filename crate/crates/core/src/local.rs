//! Local symbols.
//!
//! Quadratic Hilbert symbols over `Q` at every place, quadratic Hasse
//! invariants of `(a, b)` over `Q(i)` at Gaussian primes, and triviality of
//! the degree-`q` tame norm-residue symbol at unramified primes of
//! `Q(zeta_q)`. The dyadic place of `Q(i)` is never computed directly: it is
//! the product of all odd-place invariants.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gaussian::{self, GaussianInt, GaussianPrime, PrimeKind};
use crate::rational::{self, mod_inverse, pow_mod_u64, reduce, require_odd_prime, squarefree_part};

/// A completion of `Q`, `Q(i)` or `Q(zeta_q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    QOdd(i64),
    QTwo,
    QReal,
    QiOdd(GaussianPrime),
    /// The prime `1+i`.
    QiDyadic,
    /// All primes of `Q(zeta_q)` above the rational prime `ell != q`; `f` is
    /// the residue degree, the order of `ell` modulo `q`.
    Cyclo {
        q: i64,
        ell: i64,
        f: u32,
    },
}

impl Place {
    pub fn cyclo(q: i64, ell: i64) -> Result<Self> {
        require_odd_prime(q)?;
        if !rational::is_prime(ell) {
            return Err(Error::NotPrime(ell));
        }
        if ell == q {
            return Err(Error::WildPlace(q));
        }
        let f = rational::multiplicative_order(ell, q)? as u32;
        Ok(Place::Cyclo { q, ell, f })
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Place::QReal)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::QOdd(p) => write!(f, "p={p}"),
            Place::QTwo => write!(f, "p=2"),
            Place::QReal => write!(f, "real"),
            Place::QiOdd(pi) => write!(f, "pi={}", pi.element),
            Place::QiDyadic => write!(f, "pi=1+i"),
            Place::Cyclo { ell, f: deg, .. } => write!(f, "ell={ell},f={deg}"),
        }
    }
}

/// A quadratic symbol value, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadSymbol(i8);

impl QuadSymbol {
    pub const PLUS: Self = QuadSymbol(1);
    pub const MINUS: Self = QuadSymbol(-1);

    fn from_parity(odd: bool) -> Self {
        if odd {
            Self::MINUS
        } else {
            Self::PLUS
        }
    }

    pub fn value(self) -> i8 {
        self.0
    }

    pub fn is_trivial(self) -> bool {
        self.0 == 1
    }
}

impl Mul for QuadSymbol {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        QuadSymbol(self.0 * rhs.0)
    }
}

impl std::iter::Product for QuadSymbol {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::PLUS, Mul::mul)
    }
}

impl fmt::Display for QuadSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

/// Triviality of a degree-`q` norm-residue symbol at the primes above `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QTriviality {
    pub trivial: bool,
    /// `t^((ell^f - 1)/q) mod ell` where `t` is the tame symbol argument.
    pub witness: i64,
}

fn nonzero(a: i64, b: i64) -> Result<()> {
    if a == 0 || b == 0 {
        Err(Error::Zero)
    } else {
        Ok(())
    }
}

/// `(a, b)_p` at an odd prime by the tame formula on square-free parts:
/// with `a = p^s u`, `b = p^t v`, the symbol is
/// `(-1)^(st(p-1)/2) (u/p)^t (v/p)^s`.
pub fn hilbert_odd(a: i64, b: i64, p: i64) -> Result<QuadSymbol> {
    nonzero(a, b)?;
    let p_u = require_odd_prime(p)?;
    let (s, u) = rational::valuation(squarefree_part(a)?, p);
    let (t, v) = rational::valuation(squarefree_part(b)?, p);
    let mut value = if s * t % 2 == 1 && p_u % 4 == 3 { -1 } else { 1 };
    if t % 2 == 1 {
        value *= rational::legendre_unchecked(u, p_u);
    }
    if s % 2 == 1 {
        value *= rational::legendre_unchecked(v, p_u);
    }
    Ok(QuadSymbol(value))
}

/// `(a, b)_2`: with `a = 2^s u`, `b = 2^t v`, the symbol is
/// `(-1)^(e(u)e(v) + s w(v) + t w(u))`, `e(u) = (u-1)/2`, `w(u) = (u^2-1)/8`.
pub fn hilbert_two(a: i64, b: i64) -> Result<QuadSymbol> {
    nonzero(a, b)?;
    let (s, u) = rational::valuation(a, 2);
    let (t, v) = rational::valuation(b, 2);
    let eps = |x: i64| x.rem_euclid(4) == 3;
    let omega = |x: i64| matches!(x.rem_euclid(8), 3 | 5);
    let parity = (eps(u) && eps(v)) ^ (s % 2 == 1 && omega(v)) ^ (t % 2 == 1 && omega(u));
    Ok(QuadSymbol::from_parity(parity))
}

pub fn hilbert_real(a: i64, b: i64) -> Result<QuadSymbol> {
    nonzero(a, b)?;
    Ok(QuadSymbol::from_parity(a < 0 && b < 0))
}

/// Hilbert symbol at any place of `Q`.
pub fn hilbert(a: i64, b: i64, place: Place) -> Result<QuadSymbol> {
    match place {
        Place::QOdd(p) => hilbert_odd(a, b, p),
        Place::QTwo => hilbert_two(a, b),
        Place::QReal => hilbert_real(a, b),
        other => Err(Error::Parse(format!("{other} is not a place of Q"))),
    }
}

/// `(-1)^(mn) x^n y^(-m) mod p` for the unit parts of `a = p^m x`, `b = p^n y`.
fn tame_argument(m: u32, x: i64, n: u32, y: i64, p: u64) -> Result<i64> {
    let p_i = p as i64;
    let sign = if m * n % 2 == 1 { p - 1 } else { 1 };
    let xn = pow_mod_u64(reduce(x, p), n as u64, p);
    let y_inv = mod_inverse(y, p_i)? as u64;
    let ym = pow_mod_u64(y_inv, m as u64, p);
    Ok(rational::mul_mod(rational::mul_mod(sign, xn, p), ym, p) as i64)
}

/// Quadratic Hasse invariant of `(a, b)` over `Q(i)` at an odd Gaussian
/// prime: the residue symbol of the tame argument modulo `pi`.
pub fn hasse_qi_odd(a: i64, b: i64, pi: &GaussianPrime) -> Result<QuadSymbol> {
    nonzero(a, b)?;
    if pi.residue_char == 2 || pi.kind == PrimeKind::Ramified {
        return Err(Error::WildPlace(2));
    }
    let (m, x) = gaussian::rational_valuation(squarefree_part(a)?, pi);
    let (n, y) = gaussian::rational_valuation(squarefree_part(b)?, pi);
    let t = tame_argument(m, x, n, y, pi.residue_char as u64)?;
    Ok(QuadSymbol(gaussian::gaussian_legendre(GaussianInt::from_int(t), pi)?))
}

/// Odd Gaussian primes dividing `a * b` for rational `a, b`, sorted.
pub(crate) fn odd_gaussian_primes_dividing(a: i64, b: i64) -> Result<Vec<GaussianPrime>> {
    let mut primes: Vec<i64> = rational::factor(a)?.primes().chain(rational::factor(b)?.primes()).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::new();
    for p in primes.into_iter().filter(|&p| p != 2) {
        out.extend(gaussian::split_prime(p)?.into_iter().map(|(pi, _)| pi));
    }
    out.sort();
    Ok(out)
}

/// Invariant at `1+i`, forced by the product formula (the complex place of
/// `Q(i)` is trivial).
pub fn hasse_qi_dyadic(a: i64, b: i64) -> Result<QuadSymbol> {
    nonzero(a, b)?;
    let (a, b) = (squarefree_part(a)?, squarefree_part(b)?);
    odd_gaussian_primes_dividing(a, b)?.iter().map(|pi| hasse_qi_odd(a, b, pi)).product()
}

/// Triviality of the degree-`q` tame symbol of `(alpha, p)` at the primes of
/// `Q(zeta_q)` above `ell`.
///
/// With `f` the order of `ell` mod `q`, `m = v_ell(alpha)`, `n = v_ell(p)`
/// and `t = (-1)^(mn) alpha^n p^(-m) mod ell`, the symbol is trivial iff
/// `t^((ell^f - 1)/q) = 1 (mod ell)`. Since `t` is rational this decides
/// every prime above `ell` at once.
pub fn tame_q_symbol(alpha: i64, p: i64, q: i64, ell: i64) -> Result<QTriviality> {
    if alpha == 0 {
        return Err(Error::Zero);
    }
    let q_u = require_odd_prime(q)?;
    if !rational::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !rational::is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if ell == q {
        return Err(Error::WildPlace(q));
    }
    if alpha % q == 0 {
        return Err(Error::Divisible { a: alpha, p: q });
    }
    if rational::gcd(alpha, p) != 1 {
        return Err(Error::NotCoprime { a: alpha, m: p });
    }
    let ell_u = ell as u64;
    let (m, x) = rational::valuation(alpha, ell);
    let (n, y) = rational::valuation(p, ell);
    if m == 0 && n == 0 {
        return Ok(QTriviality { trivial: true, witness: 1 });
    }
    let f = rational::multiplicative_order(ell, q)? as u32;
    let t = tame_argument(m, x, n, y, ell_u)?;
    // exponent (ell^f - 1)/q, reduced modulo the group order ell - 1
    let big_ell = BigUint::from(ell_u);
    let exponent = (big_ell.pow(f) - 1u32) / BigUint::from(q_u) % (big_ell - 1u32);
    let exponent = exponent.to_u64().expect("reduced below ell - 1");
    let witness = pow_mod_u64(t as u64, exponent, ell_u) % ell_u;
    let witness = if ell_u == 2 { 1 } else { witness };
    Ok(QTriviality { trivial: witness == 1, witness: witness as i64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::split_prime;
    use proptest::prelude::*;

    fn gp(p: i64, re: i64, im: i64) -> GaussianPrime {
        split_prime(p).unwrap().into_iter().map(|(pi, _)| pi).find(|pi| pi.element == GaussianInt::new(re, im)).unwrap()
    }

    #[test]
    fn hilbert_odd_examples() {
        assert_eq!(hilbert_odd(10, 29, 29), Ok(QuadSymbol::MINUS));
        assert_eq!(hilbert_odd(10, 29, 7), Ok(QuadSymbol::PLUS));
        assert_eq!(hilbert_odd(33, 29, 3), Ok(QuadSymbol::MINUS));
        assert_eq!(hilbert_odd(33, 29, 11), Ok(QuadSymbol::MINUS));
        assert_eq!(hilbert_odd(33, 29, 29), Ok(QuadSymbol::PLUS));
        assert_eq!(hilbert_odd(0, 29, 29), Err(Error::Zero));
        assert_eq!(hilbert_odd(3, 29, 9), Err(Error::NotOddPrime(9)));
        // p | a and p | b: (p, p)_p = (-1/p)
        assert_eq!(hilbert_odd(3, 3, 3), Ok(QuadSymbol::MINUS));
        assert_eq!(hilbert_odd(5, 5, 5), Ok(QuadSymbol::PLUS));
    }

    #[test]
    fn hilbert_two_and_real_examples() {
        assert_eq!(hilbert_two(-1, -1), Ok(QuadSymbol::MINUS));
        assert_eq!(hilbert_two(1, 12345), Ok(QuadSymbol::PLUS));
        assert_eq!(hilbert_two(33, 29), Ok(QuadSymbol::PLUS));
        assert_eq!(hilbert_two(2, 3), Ok(QuadSymbol::MINUS));
        assert_eq!(hilbert_two(2, 7), Ok(QuadSymbol::PLUS));
        assert_eq!(hilbert_real(-1, -1), Ok(QuadSymbol::MINUS));
        assert_eq!(hilbert_real(10, 29), Ok(QuadSymbol::PLUS));
        assert_eq!(hilbert_real(-5, 3), Ok(QuadSymbol::PLUS));
        assert_eq!(hilbert_real(0, 3), Err(Error::Zero));
    }

    #[test]
    fn hasse_qi_examples() {
        assert_eq!(hasse_qi_odd(10, 29, &gp(29, 5, 2)), Ok(QuadSymbol::MINUS));
        assert_eq!(hasse_qi_odd(33, 29, &gp(29, 5, 2)), Ok(QuadSymbol::PLUS));
        assert_eq!(hasse_qi_odd(10, 3, &gp(5, 2, 1)), Ok(QuadSymbol::MINUS));
        let two = split_prime(2).unwrap()[0].0;
        assert_eq!(hasse_qi_odd(10, 3, &two), Err(Error::WildPlace(2)));
        assert_eq!(hasse_qi_dyadic(5, 29), Ok(QuadSymbol::PLUS));
        assert_eq!(hasse_qi_dyadic(10, 29), Ok(QuadSymbol::PLUS));
        assert_eq!(hasse_qi_dyadic(1, 77), Ok(QuadSymbol::PLUS));
        // symbols at 5+-2i are -1, at 2+-i are +1
        assert_eq!(hasse_qi_odd(10, 29, &gp(29, 2, 5)), Ok(QuadSymbol::MINUS));
        assert_eq!(hasse_qi_odd(10, 29, &gp(5, 2, 1)), Ok(QuadSymbol::PLUS));
        assert_eq!(hasse_qi_odd(10, 29, &gp(5, 1, 2)), Ok(QuadSymbol::PLUS));
    }

    #[test]
    fn tame_q_examples() {
        assert_eq!(tame_q_symbol(7, 29, 3, 29), Ok(QTriviality { trivial: true, witness: 1 }));
        assert_eq!(tame_q_symbol(7, 43, 3, 43), Ok(QTriviality { trivial: false, witness: 6 }));
        let at7 = tame_q_symbol(7, 19, 3, 7).unwrap();
        assert!(!at7.trivial);
        // t = 19^-1 = 3 (mod 7), 3^2 = 2
        assert_eq!(at7.witness, 2);
        assert!(tame_q_symbol(7, 19, 3, 19).unwrap().trivial);
        assert_eq!(tame_q_symbol(7, 19, 3, 5), Ok(QTriviality { trivial: true, witness: 1 }));
        assert_eq!(tame_q_symbol(7, 19, 3, 3), Err(Error::WildPlace(3)));
        assert_eq!(tame_q_symbol(6, 19, 3, 19), Err(Error::Divisible { a: 6, p: 3 }));
        assert_eq!(tame_q_symbol(38, 19, 3, 19), Err(Error::NotCoprime { a: 38, m: 19 }));
    }

    #[test]
    fn places_display() {
        assert_eq!(Place::QOdd(3).to_string(), "p=3");
        assert_eq!(Place::QTwo.to_string(), "p=2");
        assert_eq!(Place::QReal.to_string(), "real");
        assert_eq!(Place::QiOdd(gp(29, 5, 2)).to_string(), "pi=5+2i");
        assert_eq!(Place::QiDyadic.to_string(), "pi=1+i");
        assert_eq!(Place::cyclo(3, 7).unwrap().to_string(), "ell=7,f=1");
        assert_eq!(Place::cyclo(5, 19).unwrap(), Place::Cyclo { q: 5, ell: 19, f: 2 });
        assert_eq!(Place::cyclo(3, 3), Err(Error::WildPlace(3)));
    }

    fn nz() -> impl Strategy<Value = i64> {
        (-5000i64..5000).prop_filter("nonzero", |a| *a != 0)
    }

    fn odd_primes() -> Vec<i64> {
        (3..200).filter(|&p| rational::is_prime(p)).collect()
    }

    proptest! {
        #[test]
        fn inert_places_are_trivial_on_units(a in nz(), b in nz(), idx in 0usize..40) {
            let p = odd_primes().into_iter().filter(|p| p % 4 == 3).nth(idx % 20).unwrap();
            prop_assume!(a % p != 0 && b % p != 0);
            let pi = split_prime(p).unwrap()[0].0;
            prop_assert_eq!(hasse_qi_odd(a, b, &pi).unwrap(), QuadSymbol::PLUS);
        }

        #[test]
        fn split_places_match_rational_hilbert(a in nz(), b in nz(), idx in 0usize..20) {
            let p = odd_primes().into_iter().filter(|p| p % 4 == 1).nth(idx).unwrap();
            for (pi, _) in split_prime(p).unwrap() {
                prop_assert_eq!(hasse_qi_odd(a, b, &pi).unwrap(), hilbert_odd(a, b, p).unwrap());
            }
        }

        #[test]
        fn off_residue_degree_one_is_trivial(alpha in nz(), idx in 0usize..40, qi in 0usize..3) {
            let q = [3i64, 5, 7][qi];
            let p = odd_primes()[idx];
            prop_assume!(p != q && alpha % q != 0 && alpha % p != 0);
            let f = rational::multiplicative_order(p, q).unwrap();
            prop_assume!(f >= 2);
            prop_assert!(tame_q_symbol(alpha, p, q, p).unwrap().trivial);
        }
    }
}

//! Gaussian integers: Euclidean division, canonical associates, splitting
//! of rational primes and the quadratic residue symbol modulo a Gaussian
//! prime.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{self, legendre_unchecked, mod_inverse, reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: Self = Self { re: 0, im: 0 };
    pub const ONE: Self = Self { re: 1, im: 0 };
    pub const I: Self = Self { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub const fn from_int(n: i64) -> Self {
        Self { re: n, im: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    /// `re^2 + im^2`; exact for every pair of `i64` components.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.re as i128, self.im as i128);
        a * a + b * b
    }

    fn from_wide(re: i128, im: i128) -> Result<Self> {
        Ok(Self {
            re: i64::try_from(re).map_err(|_| Error::Overflow)?,
            im: i64::try_from(im).map_err(|_| Error::Overflow)?,
        })
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Self::from_wide(self.re as i128 + rhs.re as i128, self.im as i128 + rhs.im as i128)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Self::from_wide(self.re as i128 - rhs.re as i128, self.im as i128 - rhs.im as i128)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let (a, b, c, d) = (self.re as i128, self.im as i128, rhs.re as i128, rhs.im as i128);
        // |a*c| < 2^126, so each difference/sum fits in i128
        Self::from_wide(a * c - b * d, a * d + b * c)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Self::from_wide(-(self.re as i128), -(self.im as i128))
    }

    pub fn checked_pow(self, mut e: u32) -> Result<Self> {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplication by `i`.
    fn rotate(self) -> Self {
        Self { re: -self.im, im: self.re }
    }

    /// Whether `self` divides `other` exactly.
    pub fn divides(self, other: Self) -> Result<bool> {
        Ok(divmod(other, self)?.1.is_zero())
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coef = |n: i64| match n {
            1 => String::new(),
            -1 => "-".to_string(),
            n => n.to_string(),
        };
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{}i", coef(im)),
            (re, im) if im > 0 => write!(f, "{re}+{}i", coef(im)),
            (re, im) => write!(f, "{re}-{}i", coef(-im)),
        }
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi` (no spaces; `i` alone means `1i`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a Gaussian integer: {s:?}"));
        let s = s.trim();
        if s.is_empty() {
            return Err(bad());
        }
        let parse_int = |t: &str| t.parse::<i64>().map_err(|_| bad());
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::from_int(parse_int(s)?));
        };
        // split at the last sign that is not the leading one
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(k, _)| k).last();
        let (re, im) = match split {
            Some(k) => (parse_int(&body[..k])?, &body[k..]),
            None => (0, body),
        };
        let im = match im {
            "" | "+" => 1,
            "-" => -1,
            t => parse_int(t.strip_prefix('+').unwrap_or(t))?,
        };
        Ok(Self::new(re, im))
    }
}

fn round_div(n: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    let q = n.div_euclid(d);
    let r = n.rem_euclid(d);
    if r > d - r {
        q + 1
    } else {
        q
    }
}

/// Euclidean division rounding each coordinate of `a / b` to the nearest
/// integer, so that `norm(r) <= norm(b) / 2`.
pub fn divmod(a: GaussianInt, b: GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (ar, ai, br, bi) = (a.re as i128, a.im as i128, b.re as i128, b.im as i128);
    let n = b.norm();
    let num_re = ar.checked_mul(br).and_then(|x| x.checked_add(ai.checked_mul(bi)?)).ok_or(Error::Overflow)?;
    let num_im = ai.checked_mul(br).and_then(|x| x.checked_sub(ar.checked_mul(bi)?)).ok_or(Error::Overflow)?;
    let q = GaussianInt::from_wide(round_div(num_re, n), round_div(num_im, n))?;
    let r = a.checked_sub(q.checked_mul(b)?)?;
    Ok((q, r))
}

/// The associate with `re > 0` and `im >= 0`.
pub fn normalize_associate(z: GaussianInt) -> Result<GaussianInt> {
    if z.is_zero() {
        return Err(Error::Zero);
    }
    let mut w = z;
    for _ in 0..4 {
        if w.re > 0 && w.im >= 0 {
            return Ok(w);
        }
        if w.re == i64::MIN || w.im == i64::MIN {
            return Err(Error::Overflow);
        }
        w = w.rotate();
    }
    unreachable!("one of the four associates lies in the first quadrant")
}

pub fn gcd(a: GaussianInt, b: GaussianInt) -> Result<GaussianInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Zero);
    }
    let (mut x, mut y) = (a, b);
    while !y.is_zero() {
        let (_, r) = divmod(x, y)?;
        x = y;
        y = r;
    }
    normalize_associate(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for PrimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeKind::Split => "split",
            PrimeKind::Inert => "inert",
            PrimeKind::Ramified => "ramified",
        })
    }
}

/// A prime of `Z[i]` in canonical associate form, with the data of the
/// rational prime below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussianPrime {
    pub element: GaussianInt,
    pub residue_char: i64,
    pub kind: PrimeKind,
    pub residue_degree: u8,
}

impl GaussianPrime {
    pub fn norm(&self) -> i128 {
        self.element.norm()
    }

    fn sort_key(&self) -> (i64, i64, i64) {
        (self.residue_char, self.element.re, self.element.im)
    }
}

impl Ord for GaussianPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for GaussianPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GaussianPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.element.fmt(f)
    }
}

/// Decomposition of the rational prime `p` in `Z[i]`.
///
/// `p = 2` ramifies as `-i(1+i)^2`, `p = 3 (mod 4)` stays inert and
/// `p = 1 (mod 4)` splits into two conjugate primes found as
/// `gcd(p, r + i)` with `r^2 = -1 (mod p)`.
pub fn split_prime(p: i64) -> Result<Vec<(GaussianPrime, u32)>> {
    if !rational::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        let element = GaussianInt::new(1, 1);
        return Ok(vec![(GaussianPrime { element, residue_char: 2, kind: PrimeKind::Ramified, residue_degree: 1 }, 2)]);
    }
    if p % 4 == 3 {
        let element = GaussianInt::from_int(p);
        return Ok(vec![(GaussianPrime { element, residue_char: p, kind: PrimeKind::Inert, residue_degree: 2 }, 1)]);
    }
    let r = rational::sqrt_mod(-1, p)?.expect("-1 is a square modulo p = 1 (mod 4)");
    let g = gcd(GaussianInt::from_int(p), GaussianInt::new(r, 1))?;
    let mut primes = [g, normalize_associate(g.conj())?]
        .map(|element| (GaussianPrime { element, residue_char: p, kind: PrimeKind::Split, residue_degree: 1 }, 1));
    primes.sort();
    Ok(primes.to_vec())
}

/// Factors `z` as `unit * prod(pi^e)` with canonical, sorted primes.
pub fn factor_gaussian(z: GaussianInt) -> Result<(GaussianInt, Vec<(GaussianPrime, u32)>)> {
    if z.is_zero() {
        return Err(Error::Zero);
    }
    let n = z.norm();
    let n = i64::try_from(n).map_err(|_| Error::OutOfRange(n))?;
    let mut rest = z;
    let mut out = Vec::new();
    for p in rational::factor(n)?.primes() {
        for (pi, _) in split_prime(p)? {
            let mut e = 0;
            loop {
                let (q, r) = divmod(rest, pi.element)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((pi, e));
            }
        }
    }
    debug_assert!(rest.is_unit());
    out.sort();
    Ok((rest, out))
}

fn require_odd(pi: &GaussianPrime) -> Result<u64> {
    if pi.residue_char == 2 {
        return Err(Error::WildPlace(2));
    }
    Ok(pi.residue_char as u64)
}

/// Reduction of `z` modulo `pi` (remainder of Euclidean division).
pub fn reduce_mod(z: GaussianInt, pi: GaussianInt) -> Result<GaussianInt> {
    Ok(divmod(z, pi)?.1)
}

fn pow_mod_prime(mut base: GaussianInt, mut e: u128, pi: GaussianInt) -> Result<GaussianInt> {
    let mut acc = GaussianInt::ONE;
    base = reduce_mod(base, pi)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = reduce_mod(acc.checked_mul(base)?, pi)?;
        }
        base = reduce_mod(base.checked_mul(base)?, pi)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Quadratic residue symbol `[a / pi]` for an odd Gaussian prime `pi`:
/// Euler's criterion `a^((N(pi)-1)/2) = +-1 (mod pi)`.
pub fn gaussian_legendre(a: GaussianInt, pi: &GaussianPrime) -> Result<i8> {
    let p = require_odd(pi)?;
    match pi.kind {
        PrimeKind::Split => {
            // x + yi = 0 (mod pi) gives i = -x/y in the residue field F_p
            let (x, y) = (pi.element.re, pi.element.im);
            let i_image = reduce(-(x as i128 * mod_inverse(y, p as i64)? as i128 % p as i128) as i64, p);
            let value = (a.re as i128 + a.im as i128 * i_image as i128).rem_euclid(p as i128);
            Ok(legendre_unchecked(value as i64, p))
        }
        PrimeKind::Inert => {
            let pi_elt = pi.element;
            if reduce_mod(a, pi_elt)?.is_zero() {
                return Ok(0);
            }
            if reduce(a.im, p) == 0 {
                // F_p^* sits inside the squares of F_{p^2}^*
                return Ok(1);
            }
            let exp = (p as u128 * p as u128 - 1) / 2;
            let r = pow_mod_prime(a, exp, pi_elt)?;
            if reduce_mod(r.checked_sub(GaussianInt::ONE)?, pi_elt)?.is_zero() {
                Ok(1)
            } else {
                debug_assert!(reduce_mod(r.checked_add(GaussianInt::ONE)?, pi_elt)?.is_zero());
                Ok(-1)
            }
        }
        PrimeKind::Ramified => Err(Error::WildPlace(2)),
    }
}

/// `v_pi(n)` for a rational integer `n`: equals `v_p(n)` since `p` is
/// unramified at odd `pi`.
pub(crate) fn rational_valuation(n: i64, pi: &GaussianPrime) -> (u32, i64) {
    rational::valuation(n, pi.residue_char)
}

//! Rational integer arithmetic: primality, factorisation, modular
//! exponentiation and the quadratic / q-th power residue machinery.
//!
//! Everything works on `i64` at the public surface with `u128`
//! intermediates, so no operation can silently overflow.

use std::fmt;

use crate::error::{Error, Result};

/// Signed prime factorisation `sign * prod(p^e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInt {
    pub sign: i8,
    /// Strictly increasing primes with exponents >= 1.
    pub factors: Vec<(i64, u32)>,
}

impl FactoredInt {
    /// Reconstructs the factored value.
    pub fn value(&self) -> i128 {
        self.factors.iter().fold(self.sign as i128, |acc, &(p, e)| acc * (p as i128).pow(e))
    }

    pub fn primes(&self) -> impl Iterator<Item = i64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: i64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.sign);
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces `a` into `[0, m)`.
#[inline]
pub(crate) fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn gcd(a: i64, b: i64) -> u64 {
    num_integer::Integer::gcd(&a.unsigned_abs(), &b.unsigned_abs())
}

// Deterministic for every n < 3.3 * 10^24, so for all of u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic Miller-Rabin. Negative inputs are not prime.
pub fn is_prime(n: i64) -> bool {
    n >= 2 && is_prime_u64(n as u64)
}

fn require_prime(p: i64) -> Result<u64> {
    if is_prime(p) {
        Ok(p as u64)
    } else {
        Err(Error::NotPrime(p))
    }
}

pub(crate) fn require_odd_prime(p: i64) -> Result<u64> {
    if p != 2 && is_prime(p) {
        Ok(p as u64)
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Brent's variant of Pollard rho; `n` must be odd and composite.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys);
        let mut g;
        let m = 128u64;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            loop {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = num_integer::Integer::gcd(&q, &n);
                k += m;
                if k >= r || g != 1 {
                    break;
                }
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = num_integer::Integer::gcd(&x.abs_diff(ys), &n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

const TRIAL_LIMIT: u64 = 1_000_000;

pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    };
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && p * p <= n {
        while n.is_multiple_of(p) {
            push(p, &mut out);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if n < p * p || is_prime_u64(n) {
            push(n, &mut out);
        } else {
            let mut rest = Vec::new();
            factor_into(n, &mut rest);
            for q in rest {
                push(q, &mut out);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Signed prime factorisation: trial division to 10^6, then Pollard rho.
pub fn factor(n: i64) -> Result<FactoredInt> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let factors = factor_u64(n.unsigned_abs()).into_iter().map(|(p, e)| (p as i64, e)).collect();
    Ok(FactoredInt { sign: if n < 0 { -1 } else { 1 }, factors })
}

/// `a^e mod m` in `[0, m)`.
pub fn mod_pow(a: i64, e: u64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let m = m as u64;
    Ok(pow_mod_u64(reduce(a, m), e, m) as i64)
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let (mut old_r, mut r) = (reduce(a, m as u64) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    Ok(old_s.rem_euclid(m as i128) as i64)
}

/// Euler's criterion: `a^((p-1)/2) mod p`, mapped to {-1, 0, 1}.
pub fn legendre(a: i64, p: i64) -> Result<i8> {
    let p = require_odd_prime(p)?;
    Ok(legendre_unchecked(a, p))
}

pub(crate) fn legendre_unchecked(a: i64, p: u64) -> i8 {
    let a = reduce(a, p);
    if a == 0 {
        return 0;
    }
    if pow_mod_u64(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Jacobi symbol through the reciprocity recursion. Independent of
/// [`legendre`], which uses Euler's criterion.
pub fn jacobi(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadJacobiModulus(n));
    }
    let mut n = n as u64;
    let mut a = reduce(a, n);
    let mut t = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// Tonelli-Shanks square root modulo an odd prime. The returned root is
/// `min(r, p - r)`; `None` when `a` is a non-residue.
pub fn sqrt_mod(a: i64, p: i64) -> Result<Option<i64>> {
    let p = require_odd_prime(p)?;
    let a = reduce(a, p);
    if a == 0 {
        return Ok(Some(0));
    }
    if pow_mod_u64(a, (p - 1) / 2, p) != 1 {
        return Ok(None);
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod_u64(z, (p - 1) / 2, p) == p - 1).expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod_u64(z, q, p);
    let mut t = pow_mod_u64(a, q, p);
    let mut r = pow_mod_u64(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod_u64(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Ok(Some(r.min(p - r) as i64))
}

/// Whether `alpha mod p` lies in `(F_p^*)^q`, by `alpha^((p-1)/q) == 1`.
pub fn qth_power_residue(alpha: i64, p: i64, q: i64) -> Result<bool> {
    let p_u = require_prime(p)?;
    let q_u = require_odd_prime(q)?;
    if reduce(alpha, p_u) == 0 {
        return Err(Error::Divisible { a: alpha, p });
    }
    if (p_u - 1) % q_u != 0 {
        return Err(Error::NoRootsOfUnity { q, p });
    }
    Ok(pow_mod_u64(reduce(alpha, p_u), (p_u - 1) / q_u, p_u) == 1)
}

/// Least `k >= 1` with `a^k == 1 (mod m)`.
pub fn multiplicative_order(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    if gcd(a, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    let m_u = m as u64;
    let a_u = reduce(a, m_u);
    let phi = factor_u64(m_u).into_iter().fold(1u64, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1));
    let mut order = phi;
    for (p, _) in factor_u64(phi) {
        while order % p == 0 && pow_mod_u64(a_u, order / p, m_u) == 1 {
            order /= p;
        }
    }
    Ok(order as i64)
}

/// Splits `n = p^k * rest` with `p` not dividing `rest`.
pub fn valuation(n: i64, p: i64) -> (u32, i64) {
    debug_assert!(n != 0 && p >= 2);
    let mut n = n;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (k, n)
}

/// Representative of the square class of `n`: the sign times the product
/// of primes dividing `n` to an odd power.
pub fn squarefree_part(n: i64) -> Result<i64> {
    power_free_part(n, 2)
}

/// `n` with every prime exponent reduced modulo `k` (sign kept).
pub fn power_free_part(n: i64, k: u32) -> Result<i64> {
    let f = factor(n)?;
    Ok(f.factors.iter().fold(f.sign as i64, |acc, &(p, e)| acc * p.pow(e % k)))
}

pub(crate) fn is_perfect_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u128) as i128;
    (r * r == n).then_some(r)
}

pub(crate) fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

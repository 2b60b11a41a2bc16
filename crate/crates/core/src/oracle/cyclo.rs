//! Exact arithmetic in `Q(zeta_q)` and in `Q(zeta_q)[b]`, plus relative norms
//! from Kummer extensions `Q(zeta_q)(b)`, `b^q = a`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::is_prime;

/// `c_0 + c_1 zeta + ... + c_{q-2} zeta^{q-2}` in `Q(zeta_q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElt {
    q: u32,
    coeffs: Vec<BigRational>,
}

fn check_q(q: u32) -> Result<()> {
    if q < 3 || !is_prime(q as i64) {
        return Err(Error::NotOddPrime(q as i64));
    }
    Ok(())
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycloElt {
    pub fn zero(q: u32) -> Result<Self> {
        check_q(q)?;
        Ok(CycloElt { q, coeffs: vec![BigRational::zero(); q as usize - 1] })
    }

    pub fn from_rational(q: u32, c: BigRational) -> Result<Self> {
        let mut z = Self::zero(q)?;
        z.coeffs[0] = c;
        Ok(z)
    }

    pub fn from_int(q: u32, c: i64) -> Result<Self> {
        Self::from_rational(q, rat(c))
    }

    /// The primitive root `zeta_q`.
    pub fn zeta(q: u32) -> Result<Self> {
        let mut z = Self::zero(q)?;
        z.coeffs[1] = BigRational::one();
        Ok(z)
    }

    /// Builds from coefficients of `1, zeta, zeta^2, ...`; any length is
    /// accepted and reduced.
    pub fn from_coeffs(q: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        check_q(q)?;
        Ok(Self::reduce(q, coeffs))
    }

    fn reduce(q: u32, raw: Vec<BigRational>) -> Self {
        let q = q as usize;
        let mut folded = vec![BigRational::zero(); q];
        for (k, c) in raw.into_iter().enumerate() {
            folded[k % q] += c;
        }
        let top = folded.pop().expect("q >= 3");
        let coeffs = folded.into_iter().map(|c| c - &top).collect();
        CycloElt { q: q as u32, coeffs }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|c| c.is_one())
    }

    /// The value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::FieldMismatch { expected: self.q, found: other.q });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloElt { q: self.q, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycloElt { q: self.q, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        CycloElt { q: self.q, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let n = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Ok(Self::reduce(self.q, raw))
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::from_int(self.q, 1)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse, by solving `self * y = 1` over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.coeffs.len();
        // column j is self * zeta^j
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let zeta = Self::zeta(self.q)?;
        for _ in 0..n {
            cols.push(cur.coeffs.clone());
            cur = cur.mul(&zeta)?;
        }
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(CycloElt { q: self.q, coeffs: m.into_iter().map(|row| row[n].clone()).collect() })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// Signed monomials `(negative, |c|, power of zeta)`, highest power first.
    fn monomials(&self) -> Vec<(bool, BigRational, usize)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.is_negative(), c.abs(), k))
            .collect()
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_power(var: &str, k: usize) -> Option<String> {
    match k {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{k}")),
    }
}

fn fmt_product(abs: &BigRational, parts: &[String]) -> String {
    let mut out: Vec<String> = Vec::new();
    if !abs.is_one() || parts.is_empty() {
        out.push(fmt_rational(abs));
    }
    out.extend(parts.iter().cloned());
    out.join("*")
}

/// Joins signed terms as `a - b + c`.
fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}

impl CycloElt {
    fn terms(&self, suffix: Option<&str>) -> Vec<(bool, String)> {
        let zeta = format!("zeta_{}", self.q);
        self.monomials()
            .into_iter()
            .map(|(neg, abs, k)| {
                let parts: Vec<String> = fmt_power(&zeta, k).into_iter().chain(suffix.map(String::from)).collect();
                (neg, fmt_product(&abs, &parts))
            })
            .collect()
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(&self.terms(None)))
    }
}

/// Polynomial in `b` with `Q(zeta_q)` coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPoly {
    q: u32,
    coeffs: Vec<CycloElt>,
}

impl CycloPoly {
    pub fn new(q: u32, mut coeffs: Vec<CycloElt>) -> Result<Self> {
        check_q(q)?;
        if let Some(c) = coeffs.iter().find(|c| c.q != q) {
            return Err(Error::FieldMismatch { expected: q, found: c.q });
        }
        while coeffs.last().is_some_and(CycloElt::is_zero) {
            coeffs.pop();
        }
        Ok(CycloPoly { q, coeffs })
    }

    pub fn constant(c: CycloElt) -> Self {
        let q = c.q;
        CycloPoly::new(q, vec![c]).expect("validated element")
    }

    /// The variable `b`.
    pub fn var(q: u32) -> Result<Self> {
        CycloPoly::new(q, vec![CycloElt::zero(q)?, CycloElt::from_int(q, 1)?])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[CycloElt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &CycloElt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = CycloElt::zero(self.q)?;
        let coeffs = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&zero).add(other.coeffs.get(k).unwrap_or(&zero)))
            .collect::<Result<_>>()?;
        CycloPoly::new(self.q, coeffs)
    }

    pub fn neg(&self) -> Self {
        CycloPoly { q: self.q, coeffs: self.coeffs.iter().map(CycloElt::neg).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::FieldMismatch { expected: self.q, found: other.q });
        }
        if self.is_zero() || other.is_zero() {
            return CycloPoly::new(self.q, vec![]);
        }
        let mut coeffs = vec![CycloElt::zero(self.q)?; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        CycloPoly::new(self.q, coeffs)
    }

    pub fn scale(&self, c: &CycloElt) -> Result<Self> {
        CycloPoly::new(self.q, self.coeffs.iter().map(|x| x.mul(c)).collect::<Result<_>>()?)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = CycloPoly::constant(CycloElt::from_int(self.q, 1)?);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Remainder of division by `d` over the field `Q(zeta_q)`.
    pub fn rem(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv_lead = d.lead().inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let f = r[top].mul(&inv_lead)?;
            for (k, c) in d.coeffs.iter().enumerate() {
                r[top - dd + k] = r[top - dd + k].sub(&f.mul(c)?)?;
            }
            r.pop();
            while r.last().is_some_and(CycloElt::is_zero) {
                r.pop();
            }
        }
        CycloPoly::new(self.q, r)
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let power = fmt_power("b", k);
            match (power, c.monomials().len()) {
                (None, _) => terms.extend(c.terms(None)),
                (Some(p), 1) => terms.extend(c.terms(Some(&p))),
                (Some(p), _) => terms.push((false, format!("({c})*{p}"))),
            }
        }
        f.write_str(&join_terms(&terms))
    }
}

/// `Res(a, b)` over `Q(zeta_q)` by the Euclidean remainder sequence.
fn resultant(a: &CycloPoly, b: &CycloPoly) -> Result<CycloElt> {
    let q = a.q;
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return CycloElt::zero(q);
    };
    if n == 0 {
        return b.lead().pow(m as u32);
    }
    if m == 0 {
        return a.lead().pow(n as u32);
    }
    let r = a.rem(b)?;
    let Some(k) = r.degree() else {
        return CycloElt::zero(q);
    };
    let mut out = b.lead().pow((m - k) as u32)?.mul(&resultant(b, &r)?)?;
    if m * n % 2 == 1 {
        out = out.neg();
    }
    Ok(out)
}

/// `N(f(b))` for `b^q = a` over `Q(zeta_q)`, i.e. `Res(x^q - a, f)`.
pub fn kummer_norm_eval(q: u32, a: i64, f: &CycloPoly) -> Result<CycloElt> {
    check_q(q)?;
    if f.q != q {
        return Err(Error::FieldMismatch { expected: q, found: f.q });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut modulus = vec![CycloElt::zero(q)?; q as usize + 1];
    modulus[0] = CycloElt::from_int(q, -a)?;
    modulus[q as usize] = CycloElt::from_int(q, 1)?;
    let modulus = CycloPoly::new(q, modulus)?;
    let reduced = f.rem(&modulus)?;
    if reduced.is_zero() {
        return CycloElt::zero(q);
    }
    resultant(&modulus, &reduced)
}

/// Parses a polynomial in `b` (or `x`) with coefficients built from integers
/// and `zeta_q` (or bare `zeta`) using `+ - * / ^` and parentheses.
pub fn parse_poly(q: u32, src: &str) -> Result<CycloPoly> {
    check_q(q)?;
    let mut p = Parser { q, src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    q: u32,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CycloPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                let c = match d.degree() {
                    Some(0) => &d.coeffs[0],
                    None => return Err(Error::DivisionByZero),
                    Some(_) => return Err(self.err("division by a non-constant")),
                };
                acc = acc.scale(&c.inv()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycloPoly> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.primary()?;
        if self.eat(b'^') {
            let e = self.number()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn primary(&mut self) -> Result<CycloPoly> {
        let q = self.q;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let c = BigRational::from_integer(BigInt::from(n));
                Ok(CycloPoly::constant(CycloElt::from_rational(q, c)?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let name = self.ident();
                match name.as_str() {
                    "b" | "x" => CycloPoly::var(q),
                    "zeta" => Ok(CycloPoly::constant(CycloElt::zeta(q)?)),
                    _ => match name.strip_prefix("zeta_").map(str::parse::<u32>) {
                        Some(Ok(n)) if n == q => Ok(CycloPoly::constant(CycloElt::zeta(q)?)),
                        Some(Ok(n)) => Err(Error::FieldMismatch { expected: q, found: n }),
                        _ => {
                            self.pos = at;
                            Err(self.err(&format!("unknown symbol '{name}'")))
                        }
                    },
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

//! Brute-force certificates, independent of the local-symbol machinery.
//!
//! A returned witness is always re-verified with exact arithmetic. An absent
//! result means only that nothing was found within the bound; it never
//! certifies a division algebra.

mod cyclo;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use cyclo::{kummer_norm_eval, parse_poly, CycloElt, CycloPoly};

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::rational::{is_perfect_square, isqrt};

/// Base field of a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Qi,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Q => "q",
            Field::Qi => "qi",
        })
    }
}

/// Largest absolute value allowed for any coordinate (each component of a
/// Gaussian coordinate).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBound(u32);

impl SearchBound {
    pub const DEFAULT_Q: SearchBound = SearchBound(100);
    pub const DEFAULT_QI: SearchBound = SearchBound(30);

    pub fn new(height: u32) -> Result<Self> {
        if height == 0 {
            return Err(Error::Parse("search bound must be at least 1".into()));
        }
        Ok(SearchBound(height))
    }

    pub fn default_for(field: Field) -> Self {
        match field {
            Field::Q => Self::DEFAULT_Q,
            Field::Qi => Self::DEFAULT_QI,
        }
    }

    pub fn height(self) -> u32 {
        self.0
    }
}

/// `a1^2 + alpha a2^2 + beta a3^2 + alpha beta a4^2`, the reduced norm of the
/// quaternion algebra whose generators square to `-alpha` and `-beta`.
pub fn quaternion_norm(coords: &[BigRational; 4], alpha: i64, beta: i64) -> BigRational {
    let (al, be) = (BigRational::from_integer(BigInt::from(alpha)), BigRational::from_integer(BigInt::from(beta)));
    let sq = |x: &BigRational| x * x;
    sq(&coords[0]) + &al * sq(&coords[1]) + &be * sq(&coords[2]) + &al * &be * sq(&coords[3])
}

/// Coordinates for the squared variables: one representative of each pair
/// `{x, -x}`, sorted by (norm, re, im). Over `Q` this is `0, 1, 2, ...`.
fn square_representatives(field: Field, bound: SearchBound) -> Vec<GaussianInt> {
    let h = bound.height() as i64;
    match field {
        Field::Q => (0..=h).map(GaussianInt::from_int).collect(),
        Field::Qi => {
            let mut v: Vec<GaussianInt> = (0..=h)
                .flat_map(|re| (-h..=h).map(move |im| GaussianInt::new(re, im)))
                .filter(|z| z.re > 0 || z.im >= 0)
                .collect();
            v.sort_by_key(|z| (z.norm(), z.re, z.im));
            v
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Wide {
    re: i128,
    im: i128,
}

impl Wide {
    fn of(z: GaussianInt) -> Self {
        Wide { re: z.re as i128, im: z.im as i128 }
    }
    fn square(self) -> Self {
        Wide { re: self.re * self.re - self.im * self.im, im: 2 * self.re * self.im }
    }
    fn scale(self, k: i128) -> Self {
        Wide { re: self.re * k, im: self.im * k }
    }
    fn add(self, o: Self) -> Self {
        Wide { re: self.re + o.re, im: self.im + o.im }
    }
}

/// Exact square root in `Q` (when `field` is `Q`) or `Z[i]`, returned as the
/// representative with `re > 0`, or `re == 0 && im >= 0`.
fn exact_sqrt(w: Wide, field: Field) -> Option<GaussianInt> {
    let root = match field {
        Field::Q => {
            if w.im != 0 {
                return None;
            }
            Wide { re: is_perfect_square(w.re)?, im: 0 }
        }
        Field::Qi => {
            // (u + vi)^2 = A + Bi  =>  u^2 = (N + A)/2, v^2 = (N - A)/2, N = |A + Bi|
            let (ar, ai) = (w.re.unsigned_abs(), w.im.unsigned_abs());
            let n2 = ar.checked_mul(ar)?.checked_add(ai.checked_mul(ai)?)?;
            let n = isqrt(n2);
            if n * n != n2 {
                return None;
            }
            let n = n as i128;
            if (n + w.re) % 2 != 0 {
                return None;
            }
            let u = is_perfect_square((n + w.re) / 2)?;
            let mut v = is_perfect_square((n - w.re) / 2)?;
            if w.im < 0 {
                v = -v;
            }
            let mut r = Wide { re: u, im: v };
            if r.re < 0 || (r.re == 0 && r.im < 0) {
                r = Wide { re: -r.re, im: -r.im };
            }
            r
        }
    };
    debug_assert_eq!(root.square(), w);
    Some(GaussianInt::new(i64::try_from(root.re).ok()?, i64::try_from(root.im).ok()?))
}

fn within(z: GaussianInt, bound: SearchBound) -> bool {
    let h = bound.height() as i64;
    z.re.abs() <= h && z.im.abs() <= h
}

/// Pairs `(i, j)` of candidate ranks in shells of increasing `max(i, j)`.
fn pair_shells(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(|k| (0..=k).map(move |j| (k, j)).chain((0..k).map(move |i| (i, k))))
}

/// A nonzero point of `alpha x^2 + beta y^2 = z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConicPoint {
    pub x: GaussianInt,
    pub y: GaussianInt,
    pub z: GaussianInt,
}

/// Searches `alpha x^2 + beta y^2 = z^2` with every coordinate in the
/// bound. Shells of increasing `max(rank x, rank y)`; first hit wins.
pub fn conic_search(alpha: i64, beta: i64, field: Field, bound: SearchBound) -> Result<Option<ConicPoint>> {
    if alpha == 0 || beta == 0 {
        return Err(Error::Zero);
    }
    let reps = square_representatives(field, bound);
    let sq: Vec<Wide> = reps.iter().map(|&z| Wide::of(z).square()).collect();
    for (i, j) in pair_shells(reps.len()) {
        if i == 0 && j == 0 {
            continue;
        }
        let rhs = sq[i].scale(alpha as i128).add(sq[j].scale(beta as i128));
        if let Some(z) = exact_sqrt(rhs, field).filter(|&z| within(z, bound)) {
            let point = ConicPoint { x: reps[i], y: reps[j], z };
            verify_conic(alpha, beta, &point)?;
            return Ok(Some(point));
        }
    }
    Ok(None)
}

fn verify_conic(alpha: i64, beta: i64, pt: &ConicPoint) -> Result<()> {
    let a = GaussianInt::from_int(alpha).checked_mul(pt.x.checked_pow(2)?)?;
    let b = GaussianInt::from_int(beta).checked_mul(pt.y.checked_pow(2)?)?;
    assert_eq!(a.checked_add(b)?, pt.z.checked_pow(2)?, "conic witness failed verification");
    Ok(())
}

/// `x^2 - alpha y^2 = target` with `x = num_x / denom`, `y = num_y / denom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormWitness {
    pub num_x: GaussianInt,
    pub num_y: GaussianInt,
    pub denom: GaussianInt,
}

fn is_square_in(alpha: i64, field: Field) -> bool {
    let pos = is_perfect_square(alpha as i128).is_some();
    match field {
        Field::Q => pos,
        Field::Qi => pos || is_perfect_square(-(alpha as i128)).is_some(),
    }
}

/// Searches for `target` as a norm from `K(sqrt(alpha))`: solutions of the
/// homogenised equation `X^2 - alpha Y^2 = target Z^2` with `Z != 0`.
pub fn norm_search_quadratic(alpha: i64, target: i64, field: Field, bound: SearchBound) -> Result<Option<NormWitness>> {
    if is_square_in(alpha, field) {
        return Err(Error::SquareParameter(alpha));
    }
    let reps = square_representatives(field, bound);
    let sq: Vec<Wide> = reps.iter().map(|&z| Wide::of(z).square()).collect();
    // (i, j) = (rank of Z, rank of Y); Z is never the zero candidate
    for (i, j) in pair_shells(reps.len()) {
        if i == 0 {
            continue;
        }
        let rhs = sq[i].scale(target as i128).add(sq[j].scale(alpha as i128));
        if let Some(x) = exact_sqrt(rhs, field).filter(|&x| within(x, bound)) {
            let w = NormWitness { num_x: x, num_y: reps[j], denom: reps[i] };
            let lhs =
                x.checked_pow(2)?.checked_sub(GaussianInt::from_int(alpha).checked_mul(w.num_y.checked_pow(2)?)?)?;
            assert_eq!(
                lhs,
                GaussianInt::from_int(target).checked_mul(w.denom.checked_pow(2)?)?,
                "norm witness failed verification"
            );
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Searches a nonzero zero of the reduced norm of the algebra with
/// generators squaring to `alpha` and `beta`, i.e. of
/// `quaternion_norm(., -alpha, -beta) = a1^2 - alpha a2^2 - beta a3^2 + alpha beta a4^2`.
pub fn isotropy_search(alpha: i64, beta: i64, field: Field, bound: SearchBound) -> Result<Option<[GaussianInt; 4]>> {
    if alpha == 0 || beta == 0 {
        return Err(Error::Zero);
    }
    let reps = square_representatives(field, bound);
    let sq: Vec<Wide> = reps.iter().map(|&z| Wide::of(z).square()).collect();
    let ab = (alpha as i128) * (beta as i128);
    for k in 0..reps.len() {
        // triples (i, j, l) with max(i, j, l) == k
        for i in 0..=k {
            for j in 0..=k {
                let l_range = if i == k || j == k { 0..=k } else { k..=k };
                for l in l_range {
                    if (i, j, l) == (0, 0, 0) {
                        continue;
                    }
                    let rhs = sq[i].scale(alpha as i128).add(sq[j].scale(beta as i128)).add(sq[l].scale(-ab));
                    if let Some(a1) = exact_sqrt(rhs, field).filter(|&z| within(z, bound)) {
                        let v = [a1, reps[i], reps[j], reps[l]];
                        verify_isotropic(&v, alpha, beta)?;
                        return Ok(Some(v));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn verify_isotropic(v: &[GaussianInt; 4], alpha: i64, beta: i64) -> Result<()> {
    let c = |k: i64, z: GaussianInt| -> Result<GaussianInt> { GaussianInt::from_int(k).checked_mul(z.checked_pow(2)?) };
    let total = v[0]
        .checked_pow(2)?
        .checked_add(c(-alpha, v[1])?)?
        .checked_add(c(-beta, v[2])?)?
        .checked_add(c(alpha.checked_mul(beta).ok_or(Error::Overflow)?, v[3])?)?;
    assert!(total.is_zero(), "isotropic witness failed verification");
    Ok(())
}

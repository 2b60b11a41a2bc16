//! Global split/division verdicts.
//!
//! A quaternion or prime-degree symbol algebra is either split or a division
//! algebra, and it is split iff every local invariant is trivial. The
//! classifiers below compute the invariant at every place that can ramify
//! and collect the ramified ones. Independently, [`fast_path`] recognises
//! inputs covered by closed-form sufficient conditions; its answer is only
//! recorded as provenance and always agrees with the full computation.

use std::fmt;

use crate::error::{Error, Result};
use crate::local::{self, Place};
use crate::rational::{self, power_free_part, squarefree_part};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    /// `(a, b)` over `Q`: generators with `x^2 = a`, `y^2 = b`.
    QuaternionQ { a: i64, b: i64 },
    /// `(a, b)` over `Q(i)` with rational parameters.
    QuaternionQi { a: i64, b: i64 },
    /// `(alpha, p)` over `Q(zeta_q)`: `x^q = alpha`, `y^q = p`.
    Symbol { q: i64, alpha: i64, p: i64 },
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::QuaternionQ { a, b } => write!(f, "({a},{b})_Q"),
            AlgebraSpec::QuaternionQi { a, b } => write!(f, "({a},{b})_Q(i)"),
            AlgebraSpec::Symbol { q, alpha, p } => write!(f, "({alpha},{p})_Q(zeta_{q})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Split,
    Division,
    Undetermined,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Split => "split",
            Status::Division => "division",
            Status::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Closed-form sufficient conditions for a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FastPath {
    /// `p = 1 (mod 4)` and `alpha` a non-residue mod `p`: division over `Q(i)`.
    NonresidueAtSplitPrime,
    /// `p = 1 (mod 4)`, `alpha` a residue mod `p`, and every prime
    /// `l = 1 (mod 4)` dividing `alpha` oddly a residue mod `p`: split over `Q(i)`.
    ResidueAtSplitPrime,
    /// `alpha` in the class-number-one list, a residue mod the odd prime `p`
    /// (negative `alpha = 1 (mod 4)` only for `p = 1 (mod 4)`): split over `Q(i)`.
    ClassNumberOneResidue,
    /// `p = 1 (mod 4)` and every prime divisor of `alpha` a residue mod `p`:
    /// split over `Q`.
    DivisorsResidueOverQ,
    /// `p = 1 (mod q)` and `alpha` not a `q`-th power mod `p`: division over
    /// `Q(zeta_q)`.
    NonQthPowerResidue,
}

impl FastPath {
    pub fn name(self) -> &'static str {
        match self {
            FastPath::NonresidueAtSplitPrime => "nonresidue-at-split-prime",
            FastPath::ResidueAtSplitPrime => "residue-at-split-prime",
            FastPath::ClassNumberOneResidue => "class-number-one-residue",
            FastPath::DivisorsResidueOverQ => "divisors-residue-over-q",
            FastPath::NonQthPowerResidue => "non-qth-power-residue",
        }
    }

    fn status(self) -> Status {
        match self {
            FastPath::NonresidueAtSplitPrime | FastPath::NonQthPowerResidue => Status::Division,
            _ => Status::Split,
        }
    }
}

impl fmt::Display for FastPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One local computation: `value` is the symbol (`+-1`) for quadratic
/// places and the residue-field witness for cyclotomic ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalEvidence {
    pub place: Place,
    pub trivial: bool,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub spec: AlgebraSpec,
    /// The square-class (quaternion) or q-th-power-class (symbol) reduced spec.
    pub reduced: AlgebraSpec,
    pub status: Status,
    pub ramified: Vec<Place>,
    /// Product of the ramified finite primes; over `Q` only.
    pub discriminant: Option<i128>,
    pub fast_path: Option<FastPath>,
    pub evidence: Vec<LocalEvidence>,
    /// Why the verdict is undetermined.
    pub reason: Option<String>,
}

impl Verdict {
    fn from_evidence(spec: AlgebraSpec, reduced: AlgebraSpec, evidence: Vec<LocalEvidence>) -> Self {
        let ramified: Vec<Place> = evidence.iter().filter(|e| !e.trivial).map(|e| e.place).collect();
        let status = if ramified.is_empty() { Status::Split } else { Status::Division };
        Verdict { spec, reduced, status, ramified, discriminant: None, fast_path: None, evidence, reason: None }
    }

    fn undetermined(spec: AlgebraSpec, reason: String) -> Self {
        Verdict {
            spec,
            reduced: spec,
            status: Status::Undetermined,
            ramified: Vec::new(),
            discriminant: None,
            fast_path: None,
            evidence: Vec::new(),
            reason: Some(reason),
        }
    }

    fn with_fast_path(mut self) -> Self {
        if let Some((path, status)) = fast_path_status(&self.spec) {
            debug_assert_eq!(status, self.status, "fast path {path} disagrees on {}", self.spec);
            if status == self.status {
                self.fast_path = Some(path);
            }
        }
        self
    }
}

fn nonzero(a: i64, b: i64) -> Result<()> {
    if a == 0 || b == 0 {
        Err(Error::Zero)
    } else {
        Ok(())
    }
}

fn prime_support(a: i64, b: i64) -> Result<Vec<i64>> {
    let mut primes: Vec<i64> = rational::factor(a)?.primes().chain(rational::factor(b)?.primes()).collect();
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// `(a, b)` over `Q`: Hilbert symbols at the real place, at 2 and at every
/// odd prime dividing the square-free parts of `a` and `b`.
pub fn classify_quaternion_q(a: i64, b: i64) -> Result<Verdict> {
    nonzero(a, b)?;
    let spec = AlgebraSpec::QuaternionQ { a, b };
    let (ra, rb) = (squarefree_part(a)?, squarefree_part(b)?);
    let mut places = vec![Place::QReal, Place::QTwo];
    places.extend(prime_support(ra, rb)?.into_iter().filter(|&p| p != 2).map(Place::QOdd));
    let evidence = places
        .into_iter()
        .map(|place| {
            let s = local::hilbert(ra, rb, place)?;
            Ok(LocalEvidence { place, trivial: s.is_trivial(), value: s.value() as i64 })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut verdict = Verdict::from_evidence(spec, AlgebraSpec::QuaternionQ { a: ra, b: rb }, evidence);
    let disc = verdict.ramified.iter().try_fold(1i128, |acc, place| match place {
        Place::QOdd(p) => acc.checked_mul(*p as i128),
        Place::QTwo => acc.checked_mul(2),
        _ => Some(acc),
    });
    verdict.discriminant = Some(disc.ok_or(Error::Overflow)?);
    debug_assert!(verdict.ramified.len().is_multiple_of(2));
    Ok(verdict.with_fast_path())
}

/// `(a, b)` over `Q(i)` for rational `a, b`: Hasse invariants at every odd
/// Gaussian prime dividing `ab`, plus the dyadic invariant they force.
pub fn classify_quaternion_qi(a: i64, b: i64) -> Result<Verdict> {
    nonzero(a, b)?;
    let spec = AlgebraSpec::QuaternionQi { a, b };
    let (ra, rb) = (squarefree_part(a)?, squarefree_part(b)?);
    let mut evidence = local::odd_gaussian_primes_dividing(ra, rb)?
        .into_iter()
        .map(|pi| {
            let s = local::hasse_qi_odd(ra, rb, &pi)?;
            Ok(LocalEvidence { place: Place::QiOdd(pi), trivial: s.is_trivial(), value: s.value() as i64 })
        })
        .collect::<Result<Vec<_>>>()?;
    let dyadic: i64 = evidence.iter().map(|e| e.value).product();
    evidence.push(LocalEvidence { place: Place::QiDyadic, trivial: dyadic == 1, value: dyadic });
    let verdict = Verdict::from_evidence(spec, AlgebraSpec::QuaternionQi { a: ra, b: rb }, evidence);
    Ok(verdict.with_fast_path())
}

fn symbol_precondition(q: i64, alpha: i64, p: i64) -> Option<String> {
    if !rational::is_prime(q) || q == 2 {
        return Some(format!("q = {q} is not an odd prime"));
    }
    if !rational::is_prime(p) {
        return Some(format!("p = {p} is not prime"));
    }
    if p == q {
        return Some(format!("p = q = {q}: the place above q is wild"));
    }
    if alpha == 0 {
        return Some("alpha must be nonzero".to_string());
    }
    if alpha % p == 0 {
        return Some(format!("p = {p} divides alpha = {alpha}"));
    }
    if alpha % q == 0 {
        return Some(format!("q = {q} divides alpha = {alpha}"));
    }
    None
}

/// `(alpha, p)` over `Q(zeta_q)`. Division iff the tame symbol is
/// nontrivial above some `ell` in `{p} + primes(alpha)`; the place above
/// `q` is then fixed by reciprocity and the infinite places are complex.
pub fn classify_symbol(q: i64, alpha: i64, p: i64) -> Verdict {
    let spec = AlgebraSpec::Symbol { q, alpha, p };
    if let Some(reason) = symbol_precondition(q, alpha, p) {
        return Verdict::undetermined(spec, reason);
    }
    match classify_symbol_checked(spec, q, alpha, p) {
        Ok(v) => v.with_fast_path(),
        Err(e) => Verdict::undetermined(spec, e.to_string()),
    }
}

fn classify_symbol_checked(spec: AlgebraSpec, q: i64, alpha: i64, p: i64) -> Result<Verdict> {
    // -1 is a q-th power for odd q
    let reduced_alpha = power_free_part(alpha, q as u32)?.abs();
    let mut ells: Vec<i64> = rational::factor(reduced_alpha)?.primes().collect();
    ells.push(p);
    ells.sort_unstable();
    ells.dedup();
    let evidence = ells
        .into_iter()
        .map(|ell| {
            let t = local::tame_q_symbol(reduced_alpha, p, q, ell)?;
            Ok(LocalEvidence { place: Place::cyclo(q, ell)?, trivial: t.trivial, value: t.witness })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::from_evidence(spec, AlgebraSpec::Symbol { q, alpha: reduced_alpha, p }, evidence))
}

pub fn classify(spec: AlgebraSpec) -> Result<Verdict> {
    match spec {
        AlgebraSpec::QuaternionQ { a, b } => classify_quaternion_q(a, b),
        AlgebraSpec::QuaternionQi { a, b } => classify_quaternion_qi(a, b),
        AlgebraSpec::Symbol { q, alpha, p } => Ok(classify_symbol(q, alpha, p)),
    }
}

const CLASS_NUMBER_ONE_MAGNITUDES: [i64; 11] = [2, 3, 5, 7, 11, 13, 19, 37, 43, 67, 163];

/// The 22 values `+-d` with `Q(i, sqrt(-d))` of class number one, sorted.
pub fn brown_parry_alpha_set() -> Vec<i64> {
    let mut set: Vec<i64> = CLASS_NUMBER_ONE_MAGNITUDES.iter().flat_map(|&d| [-d, d]).collect();
    set.sort_unstable();
    set
}

fn is_split_prime_of_zi(p: i64) -> bool {
    p % 4 == 1 && rational::is_prime(p)
}

fn legendre_or_zero(a: i64, p: i64) -> i8 {
    rational::legendre(a, p).unwrap_or(0)
}

fn nonresidue_at_split_prime(alpha: i64, p: i64) -> bool {
    is_split_prime_of_zi(p) && legendre_or_zero(alpha, p) == -1
}

fn residue_at_split_prime(alpha: i64, p: i64) -> bool {
    if !is_split_prime_of_zi(p) || legendre_or_zero(alpha, p) != 1 {
        return false;
    }
    let Ok(f) = rational::factor(alpha) else { return false };
    f.factors.iter().filter(|&&(l, e)| l % 4 == 1 && e % 2 == 1).all(|&(l, _)| legendre_or_zero(l, p) == 1)
}

fn class_number_one_residue(alpha: i64, p: i64) -> bool {
    if p == 2 || !rational::is_prime(p) || !CLASS_NUMBER_ONE_MAGNITUDES.contains(&alpha.abs()) {
        return false;
    }
    if legendre_or_zero(alpha, p) != 1 {
        return false;
    }
    // over Q(i) the sign of alpha is invisible, so (-l, p) = (l, p) needs (l/p) = 1
    !(alpha < 0 && alpha.abs() % 4 == 1 && p % 4 == 3)
}

fn divisors_residue_over_q(alpha: i64, p: i64) -> bool {
    if !is_split_prime_of_zi(p) {
        return false;
    }
    let Ok(f) = rational::factor(alpha) else { return false };
    let all = f.primes().all(|l| legendre_or_zero(l, p) == 1);
    all
}

fn fast_path_status(spec: &AlgebraSpec) -> Option<(FastPath, Status)> {
    let path = match *spec {
        AlgebraSpec::QuaternionQi { a, b } => {
            let both = |test: fn(i64, i64) -> bool| test(a, b) || test(b, a);
            if both(nonresidue_at_split_prime) {
                FastPath::NonresidueAtSplitPrime
            } else if both(residue_at_split_prime) {
                FastPath::ResidueAtSplitPrime
            } else if both(class_number_one_residue) {
                FastPath::ClassNumberOneResidue
            } else {
                return None;
            }
        }
        AlgebraSpec::QuaternionQ { a, b } => {
            if a != 0 && b != 0 && (divisors_residue_over_q(a, b) || divisors_residue_over_q(b, a)) {
                FastPath::DivisorsResidueOverQ
            } else {
                return None;
            }
        }
        AlgebraSpec::Symbol { q, alpha, p } => {
            if symbol_precondition(q, alpha, p).is_some() || (p - 1) % q != 0 {
                return None;
            }
            match rational::qth_power_residue(alpha, p, q) {
                Ok(false) => FastPath::NonQthPowerResidue,
                _ => return None,
            }
        }
    };
    Some((path, path.status()))
}

/// A verdict read off a closed-form sufficient condition, when one applies.
/// The verdict carries no local evidence; [`classify`] is authoritative.
pub fn fast_path(spec: AlgebraSpec) -> Option<Verdict> {
    let (path, status) = fast_path_status(&spec)?;
    Some(Verdict {
        spec,
        reduced: spec,
        status,
        ramified: Vec::new(),
        discriminant: None,
        fast_path: Some(path),
        evidence: Vec::new(),
        reason: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramified_strings(v: &Verdict) -> Vec<String> {
        v.ramified.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn quaternion_q_examples() {
        let v = classify_quaternion_q(33, 29).unwrap();
        assert_eq!(v.status, Status::Division);
        assert_eq!(ramified_strings(&v), ["p=3", "p=11"]);
        assert_eq!(v.discriminant, Some(33));
        let v = classify_quaternion_q(35, 29).unwrap();
        assert_eq!((v.status, v.discriminant), (Status::Split, Some(1)));
        assert_eq!(v.fast_path, Some(FastPath::DivisorsResidueOverQ));
        let v = classify_quaternion_q(-1, -1).unwrap();
        assert_eq!(v.status, Status::Division);
        assert_eq!(ramified_strings(&v), ["real", "p=2"]);
        assert_eq!(v.discriminant, Some(2));
        assert_eq!(classify_quaternion_q(0, 5), Err(Error::Zero));
        let v = classify_quaternion_q(4 * 33, 29 * 49).unwrap();
        assert_eq!(v.reduced, AlgebraSpec::QuaternionQ { a: 33, b: 29 });
        assert_eq!(v.discriminant, Some(33));
    }

    #[test]
    fn quaternion_qi_examples() {
        let v = classify_quaternion_qi(10, 29).unwrap();
        assert_eq!(v.status, Status::Division);
        assert_eq!(ramified_strings(&v), ["pi=2+5i", "pi=5+2i"]);
        assert_eq!(v.fast_path, Some(FastPath::NonresidueAtSplitPrime));
        assert_eq!(classify_quaternion_qi(5, 29).unwrap().status, Status::Split);
        let v = classify_quaternion_qi(33, 29).unwrap();
        assert_eq!(v.status, Status::Split);
        assert!(v.ramified.is_empty());
        assert_eq!(v.fast_path, Some(FastPath::ResidueAtSplitPrime));
        assert_eq!(classify_quaternion_qi(15, 29).unwrap().status, Status::Division);
        assert_eq!(classify_quaternion_qi(35, 29).unwrap().status, Status::Split);
        assert_eq!(classify_quaternion_qi(5, 0), Err(Error::Zero));
    }

    #[test]
    fn residue_alone_does_not_split_over_qi() {
        // (15/17) = +1 yet the invariant at the primes over 5 is (17/5) = -1
        assert_eq!(rational::legendre(15, 17), Ok(1));
        let v = classify_quaternion_qi(15, 17).unwrap();
        assert_eq!(v.status, Status::Division);
        assert_eq!(ramified_strings(&v), ["pi=1+2i", "pi=2+i"]);
        assert_eq!(fast_path(AlgebraSpec::QuaternionQi { a: 15, b: 17 }), None);
        for (a, p) in [(10, 13), (65, 37)] {
            assert_eq!(rational::legendre(a, p), Ok(1));
            assert_eq!(classify_quaternion_qi(a, p).unwrap().status, Status::Division);
        }
        // -5 = 5 up to the square -1 in Q(i); (3/5) = -1
        assert_eq!(rational::legendre(-5, 3), Ok(1));
        assert_eq!(classify_quaternion_qi(-5, 3).unwrap().status, Status::Division);
        assert_eq!(fast_path(AlgebraSpec::QuaternionQi { a: -5, b: 3 }), None);
        assert_eq!(classify_quaternion_qi(5, 3).unwrap().status, Status::Division);
    }

    #[test]
    fn qi_ramified_set_is_conjugation_closed() {
        for a in -40i64..=40 {
            for b in [13i64, 17, 29, 37, 41, 3, 7, 11, -5] {
                if a == 0 {
                    continue;
                }
                let v = classify_quaternion_qi(a, b).unwrap();
                for place in &v.ramified {
                    if let Place::QiOdd(pi) = place {
                        let conj = crate::gaussian::normalize_associate(pi.element.conj()).unwrap();
                        assert!(v.ramified.iter().any(|p| matches!(p, Place::QiOdd(o) if o.element == conj)));
                    }
                }
                assert!(!v.ramified.contains(&Place::QiDyadic));
            }
        }
    }

    #[test]
    fn symbol_examples() {
        let cases = [
            ((3, 7, 29), Status::Split),
            ((3, 7, 43), Status::Division),
            ((3, 7, 13), Status::Division),
            ((3, 7, 19), Status::Division),
            ((5, 19, 37), Status::Split),
            ((5, 19, 11), Status::Division),
            ((5, 19, 31), Status::Division),
        ];
        for ((q, alpha, p), status) in cases {
            assert_eq!(classify_symbol(q, alpha, p).status, status, "({alpha},{p}) over zeta_{q}");
        }
        let v = classify_symbol(3, 7, 19);
        assert_eq!(ramified_strings(&v), ["ell=7,f=1"]);
        assert!(v.evidence.iter().any(|e| e.place == Place::Cyclo { q: 3, ell: 19, f: 1 } && e.trivial));
        assert_eq!(v.fast_path, None);
        assert_eq!(classify_symbol(3, 7, 43).fast_path, Some(FastPath::NonQthPowerResidue));
    }

    #[test]
    fn symbol_preconditions_are_undetermined() {
        for (q, alpha, p) in [(3, 7, 3), (3, 6, 13), (3, 26, 13), (4, 7, 13), (3, 7, 15), (3, 0, 13)] {
            let v = classify_symbol(q, alpha, p);
            assert_eq!(v.status, Status::Undetermined);
            assert!(v.reason.is_some());
        }
    }

    #[test]
    fn symbol_reduces_qth_powers_and_sign() {
        let v = classify_symbol(3, -7 * 8, 43);
        assert_eq!(v.reduced, AlgebraSpec::Symbol { q: 3, alpha: 7, p: 43 });
        assert_eq!(v.status, Status::Division);
        assert_eq!(classify_symbol(3, 8, 43).status, Status::Split);
    }

    #[test]
    fn fast_path_examples() {
        let v = fast_path(AlgebraSpec::QuaternionQi { a: 10, b: 29 }).unwrap();
        assert_eq!((v.status, v.fast_path), (Status::Division, Some(FastPath::NonresidueAtSplitPrime)));
        let v = fast_path(AlgebraSpec::QuaternionQi { a: 33, b: 29 }).unwrap();
        assert_eq!((v.status, v.fast_path), (Status::Split, Some(FastPath::ResidueAtSplitPrime)));
        assert_eq!(fast_path(AlgebraSpec::Symbol { q: 3, alpha: 7, p: 19 }), None);
    }

    #[test]
    fn fast_paths_agree_with_full_classifier() {
        let primes: Vec<i64> = (2..=200).filter(|&p| rational::is_prime(p)).collect();
        let mut hits = std::collections::HashMap::new();
        for alpha in (-200i64..=200).filter(|&a| a != 0) {
            for &p in &primes {
                let mut specs =
                    vec![AlgebraSpec::QuaternionQi { a: alpha, b: p }, AlgebraSpec::QuaternionQ { a: alpha, b: p }];
                for q in [3, 5, 7] {
                    specs.push(AlgebraSpec::Symbol { q, alpha, p });
                }
                for spec in specs {
                    if let Some(fast) = fast_path(spec) {
                        *hits.entry(fast.fast_path.unwrap()).or_insert(0) += 1;
                        let full = classify(spec).unwrap();
                        assert_eq!(fast.status, full.status, "{spec}");
                        assert_eq!(full.fast_path, fast.fast_path);
                    }
                }
            }
        }
        assert_eq!(hits.len(), 5, "every fast path exercised: {hits:?}");
    }

    #[test]
    fn brown_parry_set() {
        let set = brown_parry_alpha_set();
        assert_eq!(set.len(), 22);
        assert!(set.contains(&163) && set.contains(&-163));
        assert!(!set.contains(&6));
        assert!(set.windows(2).all(|w| w[0] < w[1]));
    }
}

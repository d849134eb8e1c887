//! Reduction of `y^2 = x^3 + a x + b` over Q modulo primes and the
//! Dirichlet coefficients of its L-series.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith;
use crate::counting::{count_elliptic, CountError, VarietySpec};
use crate::field::FieldDesc;
use crate::poly::QPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HasseWeilError {
    #[error("curve is singular (discriminant 0)")]
    SingularCurve,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is a bad or excluded prime")]
    BadPrime(u64),
    #[error("no local factor supplied for p = {0}")]
    MissingPrime(u64),
    #[error("s = {0} is outside the region of absolute convergence")]
    OutOfRegion(i64),
    #[error(transparent)]
    Count(#[from] CountError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerCurve {
    pub a: i64,
    pub b: i64,
    pub discriminant: BigInt,
}

impl IntegerCurve {
    pub fn new(a: i64, b: i64) -> Result<Self, HasseWeilError> {
        let (ab, bb) = (BigInt::from(a), BigInt::from(b));
        let discriminant = BigInt::from(-16) * (BigInt::from(4) * &ab * &ab * &ab + BigInt::from(27) * &bb * &bb);
        if discriminant.is_zero() {
            return Err(HasseWeilError::SingularCurve);
        }
        Ok(IntegerCurve { a, b, discriminant })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BadReason {
    DividesDiscriminant,
    ExcludedCharacteristic,
}

impl BadReason {
    pub fn as_str(self) -> &'static str {
        match self {
            BadReason::DividesDiscriminant => "p divides the discriminant",
            BadReason::ExcludedCharacteristic => "characteristic 2 or 3",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Reduction {
    Good(VarietySpec),
    BadSkipped(BadReason),
}

fn bad_reason(curve: &IntegerCurve, p: u64) -> Option<BadReason> {
    if p <= 3 {
        Some(BadReason::ExcludedCharacteristic)
    } else if (&curve.discriminant % BigInt::from(p)).is_zero() {
        Some(BadReason::DividesDiscriminant)
    } else {
        None
    }
}

pub fn reduce_mod_p(curve: &IntegerCurve, p: u64) -> Result<Reduction, HasseWeilError> {
    if !arith::is_prime(p) {
        return Err(HasseWeilError::NotPrime(p));
    }
    if let Some(reason) = bad_reason(curve, p) {
        return Ok(Reduction::BadSkipped(reason));
    }
    let base = FieldDesc::prime(p).map_err(CountError::from)?;
    Ok(Reduction::Good(VarietySpec::weierstrass(curve.a, curve.b, base)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalStatus {
    Good { a_p: i64 },
    BadSkipped(BadReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFactor {
    pub p: u64,
    pub status: LocalStatus,
}

impl LocalFactor {
    pub fn a_p(&self) -> i64 {
        match self.status {
            LocalStatus::Good { a_p } => a_p,
            LocalStatus::BadSkipped(_) => 0,
        }
    }

    pub fn is_good(&self) -> bool {
        matches!(self.status, LocalStatus::Good { .. })
    }

    /// `1 - a_p T + p T^2` for good primes.
    pub fn polynomial(&self) -> Option<QPoly> {
        match self.status {
            LocalStatus::Good { a_p } => Some(QPoly::from_ints(&[1, -a_p, self.p as i64])),
            LocalStatus::BadSkipped(_) => None,
        }
    }
}

/// `a_p = p + 1 - |E(F_p)|` at a good prime.
pub fn local_factor(curve: &IntegerCurve, p: u64) -> Result<LocalFactor, HasseWeilError> {
    if !arith::is_prime(p) {
        return Err(HasseWeilError::NotPrime(p));
    }
    if bad_reason(curve, p).is_some() {
        return Err(HasseWeilError::BadPrime(p));
    }
    let field = FieldDesc::prime(p).map_err(CountError::from)?;
    let n = count_elliptic(curve.a, curve.b, &field)? as i64;
    let a_p = p as i64 + 1 - n;
    assert!(a_p * a_p <= 4 * p as i64, "Hasse bound violated at p = {p}");
    Ok(LocalFactor {
        p,
        status: LocalStatus::Good { a_p },
    })
}

/// Local data for every prime up to `pmax`, bad primes marked as skipped.
pub fn local_factors(curve: &IntegerCurve, pmax: u64) -> Result<Vec<LocalFactor>, HasseWeilError> {
    arith::primes_up_to(pmax)
        .into_iter()
        .map(|p| match bad_reason(curve, p) {
            Some(reason) => Ok(LocalFactor {
                p,
                status: LocalStatus::BadSkipped(reason),
            }),
            None => local_factor(curve, p),
        })
        .collect()
}

/// `a_1, ..., a_n` (index 0 holds `a_1`).
///
/// Prime powers follow `a_{p^{k+1}} = a_p a_{p^k} - p a_{p^{k-1}}` at good
/// primes and vanish at skipped ones; the rest is multiplicative.
pub fn dirichlet_expand(factors: &[LocalFactor], n: usize) -> Result<Vec<i64>, HasseWeilError> {
    let by_prime: BTreeMap<u64, &LocalFactor> = factors.iter().map(|f| (f.p, f)).collect();
    let mut a = vec![0i64; n + 1];
    if n == 0 {
        return Ok(Vec::new());
    }
    a[1] = 1;
    // smallest prime factor sieve
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    for m in 2..=n {
        let p = spf[m];
        let mut rest = m;
        let mut k = 0;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest > 1 {
            a[m] = a[m / rest] * a[rest];
            continue;
        }
        // m = p^k
        let f = by_prime
            .get(&(p as u64))
            .ok_or(HasseWeilError::MissingPrime(p as u64))?;
        a[m] = match f.status {
            LocalStatus::BadSkipped(_) => 0,
            LocalStatus::Good { a_p } if k == 1 => a_p,
            LocalStatus::Good { a_p } => a_p * a[m / p] - p as i64 * a[m / (p * p)],
        };
    }
    a.remove(0);
    Ok(a)
}

/// `Π_{p ≤ pmax good} (1 - a_p p^{-s} + p^{1-2s})^{-1}`, exactly, for integer `s ≥ 2`.
pub fn euler_partial_value(factors: &[LocalFactor], s: i64, pmax: u64) -> Result<BigRational, HasseWeilError> {
    if s < 2 {
        return Err(HasseWeilError::OutOfRegion(s));
    }
    let mut acc = BigRational::one();
    for f in factors.iter().filter(|f| f.p <= pmax) {
        let LocalStatus::Good { a_p } = f.status else {
            continue;
        };
        let p = BigInt::from(f.p);
        let ps = num_traits::pow(p.clone(), s as usize);
        // p^{2s} / (p^{2s} - a_p p^s + p)
        let num = &ps * &ps;
        let den = &num - BigInt::from(a_p) * &ps + &p;
        acc *= BigRational::new(num, den);
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct LSeries {
    pub curve: IntegerCurve,
    pub factors: BTreeMap<u64, LocalFactor>,
    pub coefficients: Vec<i64>,
}

impl LSeries {
    /// Local factors for `p ≤ max(pmax, nmax)` and coefficients `a_1..a_nmax`.
    pub fn compute(curve: IntegerCurve, pmax: u64, nmax: usize) -> Result<Self, HasseWeilError> {
        let list = local_factors(&curve, pmax.max(nmax as u64))?;
        let coefficients = dirichlet_expand(&list, nmax)?;
        Ok(LSeries {
            curve,
            factors: list.into_iter().map(|f| (f.p, f)).collect(),
            coefficients,
        })
    }
}

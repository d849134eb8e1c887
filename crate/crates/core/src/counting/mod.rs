//! Point counting over F_{q^n}.
//!
//! [`count_affine`] and [`count_projective`] enumerate every candidate tuple
//! and are the reference against which everything else is checked. The
//! specialised counters (elliptic, hyperelliptic, diagonal via character
//! sums) and the [`CountMethod::Reduced`] strategy must agree with them.

mod curves;
mod diagonal;
mod enumerate;

pub use curves::{count_elliptic, count_hyperelliptic};
pub use diagonal::count_diagonal_charsum;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::arith;
use crate::field::{FieldDesc, FieldError};

/// Default cap on enumerated candidate tuples.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("enumeration needs {needed} candidate tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("variety is over characteristic {spec} but the field has characteristic {field}")]
    CharacteristicMismatch { spec: u64, field: u64 },
    #[error("equation {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("equation {equation} has a term with {found} exponents, expected {expected}")]
    ArityMismatch {
        equation: usize,
        expected: usize,
        found: usize,
    },
    #[error("curve is singular over F_{0}")]
    SingularCurve(u64),
    #[error("characteristic {0} is not supported by this counter")]
    BadCharacteristic(u64),
    #[error("closed-point count of degree {0} is not an integer")]
    NonIntegralOrbit(usize),
    #[error("count series is empty")]
    EmptySeries,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `coeff * Π x_i^{e_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

impl Term {
    pub fn new(coeff: i64, exponents: Vec<u32>) -> Self {
        Term { coeff, exponents }
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }
}

/// An integer polynomial, read modulo p when counting.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn new(terms: Vec<Term>) -> Self {
        Polynomial { terms }
    }

    pub fn is_homogeneous_mod(&self, p: u64) -> bool {
        let mut degs = self
            .terms
            .iter()
            .filter(|t| t.coeff.rem_euclid(p as i64) != 0)
            .map(Term::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// Affine r-space, r coordinates.
    Affine(usize),
    /// Projective r-space, r + 1 homogeneous coordinates.
    Projective(usize),
}

impl Ambient {
    pub fn num_vars(&self) -> usize {
        match *self {
            Ambient::Affine(r) => r,
            Ambient::Projective(r) => r + 1,
        }
    }

    pub fn dimension(&self) -> usize {
        match *self {
            Ambient::Affine(r) | Ambient::Projective(r) => r,
        }
    }
}

/// A system of integer polynomial equations over a finite base field.
/// Coefficients enter every extension through the prime subfield.
#[derive(Debug, Clone)]
pub struct VarietySpec {
    pub ambient: Ambient,
    pub equations: Vec<Polynomial>,
    pub base: FieldDesc,
    pub label: String,
}

impl VarietySpec {
    pub fn new(
        ambient: Ambient,
        equations: Vec<Polynomial>,
        base: FieldDesc,
        label: impl Into<String>,
    ) -> Result<Self, CountError> {
        let nvars = ambient.num_vars();
        for (i, eq) in equations.iter().enumerate() {
            if let Some(t) = eq.terms.iter().find(|t| t.exponents.len() != nvars) {
                return Err(CountError::ArityMismatch {
                    equation: i,
                    expected: nvars,
                    found: t.exponents.len(),
                });
            }
            if matches!(ambient, Ambient::Projective(_)) && !eq.is_homogeneous_mod(base.p()) {
                return Err(CountError::NotHomogeneous(i));
            }
        }
        Ok(VarietySpec {
            ambient,
            equations,
            base,
            label: label.into(),
        })
    }

    /// Projective closure `y^2 z = x^3 + a x z^2 + b z^3` in P^2, coordinates (x, y, z).
    pub fn weierstrass(a: i64, b: i64, base: FieldDesc) -> Result<Self, CountError> {
        let eq = Polynomial::new(vec![
            Term::new(1, vec![0, 2, 1]),
            Term::new(-1, vec![3, 0, 0]),
            Term::new(-a, vec![1, 0, 2]),
            Term::new(-b, vec![0, 0, 3]),
        ]);
        let label = format!("y^2 z = x^3 + {a} x z^2 + {b} z^3");
        Self::new(Ambient::Projective(2), vec![eq], base, label)
    }

    /// Affine `y^2 = f(x)`, coordinates (x, y), `f` low-to-high.
    pub fn hyperelliptic_affine(f: &[i64], base: FieldDesc) -> Result<Self, CountError> {
        let mut terms = vec![Term::new(1, vec![0, 2])];
        for (i, &c) in f.iter().enumerate() {
            if c != 0 {
                terms.push(Term::new(-c, vec![i as u32, 0]));
            }
        }
        Self::new(
            Ambient::Affine(2),
            vec![Polynomial::new(terms)],
            base,
            "y^2 = f(x)",
        )
    }

    /// Diagonal `Σ a_i X_i^m = 0` in P^r with r + 1 = `coeffs.len()`.
    pub fn fermat(coeffs: &[i64], m: u32, base: FieldDesc) -> Result<Self, CountError> {
        let n = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut e = vec![0; n];
                e[i] = m;
                Term::new(a, e)
            })
            .collect();
        Self::new(
            Ambient::Projective(n - 1),
            vec![Polynomial::new(terms)],
            base,
            format!("diagonal degree {m} in P^{}", n - 1),
        )
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Visit every candidate tuple.
    Exhaustive,
    /// Factor out variables that occur in no equation, and when a single
    /// equation isolates a variable as `c y^m`, count its fibre
    /// `#{y : y^m = t}` instead of enumerating it.
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountConfig {
    pub budget: u64,
    /// Number of contiguous slices of the leading coordinate counted on
    /// separate threads. The result does not depend on it.
    pub partitions: usize,
    pub method: CountMethod,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig {
            budget: DEFAULT_BUDGET,
            partitions: 1,
            method: CountMethod::Exhaustive,
        }
    }
}

impl CountConfig {
    pub fn reduced() -> Self {
        CountConfig {
            method: CountMethod::Reduced,
            ..Self::default()
        }
    }
}

/// N_1, ..., N_k over F_q, F_{q^2}, ....
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSeries {
    pub q: u64,
    pub counts: Vec<BigInt>,
}

impl CountSeries {
    pub fn new(q: u64, counts: Vec<BigInt>) -> Self {
        CountSeries { q, counts }
    }

    pub fn from_ints<I: Into<BigInt> + Copy>(q: u64, counts: &[I]) -> Self {
        CountSeries {
            q,
            counts: counts.iter().map(|&c| c.into()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

fn check_char(spec: &VarietySpec, ext: &FieldDesc) -> Result<(), CountError> {
    if spec.p() != ext.p() {
        return Err(CountError::CharacteristicMismatch {
            spec: spec.p(),
            field: ext.p(),
        });
    }
    Ok(())
}

/// Exact number of points of `spec` in affine space over `ext`, by
/// exhaustive enumeration.
pub fn count_affine(spec: &VarietySpec, ext: &FieldDesc) -> Result<u64, CountError> {
    count_affine_with(spec, ext, &CountConfig::default())
}

pub fn count_affine_with(
    spec: &VarietySpec,
    ext: &FieldDesc,
    config: &CountConfig,
) -> Result<u64, CountError> {
    check_char(spec, ext)?;
    let n = spec.ambient.num_vars();
    let system = enumerate::System::compile(&spec.equations, n, ext);
    let plan = enumerate::plan(system, ext, config.method);
    enumerate::check_budget(plan.candidates(ext.q()), config.budget)?;
    Ok(plan.count(ext, config.partitions))
}

/// Number of points of a homogeneous system in projective space over
/// `ext`; each point is visited once through its representative whose
/// first nonzero coordinate is 1.
pub fn count_projective(spec: &VarietySpec, ext: &FieldDesc) -> Result<u64, CountError> {
    count_projective_with(spec, ext, &CountConfig::default())
}

pub fn count_projective_with(
    spec: &VarietySpec,
    ext: &FieldDesc,
    config: &CountConfig,
) -> Result<u64, CountError> {
    check_char(spec, ext)?;
    let n = spec.ambient.num_vars();
    for (i, eq) in spec.equations.iter().enumerate() {
        if !eq.is_homogeneous_mod(spec.p()) {
            return Err(CountError::NotHomogeneous(i));
        }
    }
    let system = enumerate::System::compile(&spec.equations, n, ext);
    // Chart k: x_0 = ... = x_{k-1} = 0, x_k = 1, the rest free.
    let plans: Vec<_> = (0..n)
        .map(|k| {
            let mut fixed = vec![0; k];
            fixed.push(1);
            enumerate::plan(system.substitute_prefix(&fixed, ext), ext, config.method)
        })
        .collect();
    let needed: u128 = plans.iter().map(|p| p.candidates(ext.q())).sum();
    enumerate::check_budget(needed, config.budget)?;
    Ok(plans.iter().map(|p| p.count(ext, config.partitions)).sum())
}

/// Counts over the ambient-appropriate space.
pub fn count_over(
    spec: &VarietySpec,
    ext: &FieldDesc,
    config: &CountConfig,
) -> Result<u64, CountError> {
    match spec.ambient {
        Ambient::Affine(_) => count_affine_with(spec, ext, config),
        Ambient::Projective(_) => count_projective_with(spec, ext, config),
    }
}

/// N_1..N_k, the n-th count taken over F_{q^n} built as F_{p^{n deg(base)}}.
pub fn count_series(spec: &VarietySpec, k: usize) -> Result<CountSeries, CountError> {
    count_series_with(spec, k, &CountConfig::default())
}

pub fn count_series_with(
    spec: &VarietySpec,
    k: usize,
    config: &CountConfig,
) -> Result<CountSeries, CountError> {
    series_by(spec.base.p(), spec.base.n(), k, |ext| count_over(spec, ext, config))
}

/// Builds each extension of the base and applies `count`.
pub(crate) fn series_by(
    p: u64,
    base_degree: u32,
    k: usize,
    mut count: impl FnMut(&FieldDesc) -> Result<u64, CountError>,
) -> Result<CountSeries, CountError> {
    let q = p.pow(base_degree);
    let mut counts = Vec::with_capacity(k);
    for n in 1..=k as u32 {
        let ext = FieldDesc::new(p, n * base_degree, None)?;
        counts.push(BigInt::from(count(&ext)?));
    }
    Ok(CountSeries { q, counts })
}

/// Number b_e of closed points of each degree e, by Möbius inversion of
/// N_n = Σ_{e | n} e b_e.
pub fn closed_point_degrees(series: &CountSeries) -> Result<Vec<BigInt>, CountError> {
    if series.is_empty() {
        return Err(CountError::EmptySeries);
    }
    (1..=series.len())
        .map(|e| {
            let mut s = BigInt::zero();
            for d in arith::divisors(e as u64) {
                let mu = arith::mobius(e as u64 / d);
                if mu != 0 {
                    s += &series.counts[d as usize - 1] * mu;
                }
            }
            let (quot, rem) = s.div_rem(&BigInt::from(e));
            if rem.is_zero() {
                Ok(quot)
            } else {
                Err(CountError::NonIntegralOrbit(e))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sum_of_two_squares_over_f3() {
        let eq = Polynomial::new(vec![Term::new(1, vec![2, 0]), Term::new(1, vec![0, 2])]);
        let spec = VarietySpec::new(Ambient::Affine(2), vec![eq], f(3), "x^2+y^2").unwrap();
        assert_eq!(count_affine(&spec, &f(3)).unwrap(), 1);
    }

    #[test]
    fn empty_system_is_the_whole_space() {
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let spec = VarietySpec::new(Ambient::Affine(2), vec![], f4.clone(), "A^2").unwrap();
        assert_eq!(count_affine(&spec, &f4).unwrap(), 16);
        for d in 0..=3usize {
            let spec = VarietySpec::new(Ambient::Projective(d), vec![], f(5), "P^d").unwrap();
            let expected: u64 = (0..=d as u32).map(|i| 5u64.pow(i)).sum();
            assert_eq!(count_projective(&spec, &f(5)).unwrap(), expected);
        }
    }

    #[test]
    fn affine_congruent_number_curve_over_f5() {
        let spec = VarietySpec::hyperelliptic_affine(&[0, -1, 0, 1], f(5)).unwrap();
        assert_eq!(count_affine(&spec, &f(5)).unwrap(), 7);
    }

    #[test]
    fn conic_over_f3() {
        let spec = VarietySpec::fermat(&[1, 1, 1], 2, f(3)).unwrap();
        assert_eq!(count_projective(&spec, &f(3)).unwrap(), 4);
    }

    #[test]
    fn fermat_cubic_over_f7_respects_hasse() {
        let spec = VarietySpec::fermat(&[1, 1, 1], 3, f(7)).unwrap();
        let n = count_projective(&spec, &f(7)).unwrap() as i64;
        // frozen by enumeration
        assert_eq!(n, 9);
        assert!((n - 8).pow(2) <= 4 * 7);
    }

    #[test]
    fn series_examples() {
        let p1 = VarietySpec::new(Ambient::Projective(1), vec![], f(2), "P^1").unwrap();
        assert_eq!(count_series(&p1, 4).unwrap().counts, ints(&[3, 5, 9, 17]));
        let pt = VarietySpec::new(Ambient::Affine(0), vec![], f(2), "pt").unwrap();
        assert_eq!(count_series(&pt, 3).unwrap().counts, ints(&[1, 1, 1]));
        let e = VarietySpec::weierstrass(1, 1, f(5)).unwrap();
        let s = count_series(&e, 2).unwrap();
        assert_eq!(s.q, 5);
        assert_eq!(s.counts, ints(&[9, 27]));
    }

    #[test]
    fn series_over_non_prime_base() {
        let f4 = FieldDesc::new(2, 2, None).unwrap();
        let p1 = VarietySpec::new(Ambient::Projective(1), vec![], f4, "P^1/F_4").unwrap();
        let s = count_series(&p1, 3).unwrap();
        assert_eq!(s.q, 4);
        assert_eq!(s.counts, ints(&[5, 17, 65]));
    }

    #[test]
    fn spec_validation() {
        let bad = Polynomial::new(vec![Term::new(1, vec![2, 0, 0]), Term::new(1, vec![1, 0, 0])]);
        assert_eq!(
            VarietySpec::new(Ambient::Projective(2), vec![bad], f(5), "").unwrap_err(),
            CountError::NotHomogeneous(0)
        );
        let short = Polynomial::new(vec![Term::new(1, vec![2])]);
        assert!(matches!(
            VarietySpec::new(Ambient::Affine(2), vec![short], f(5), ""),
            Err(CountError::ArityMismatch { .. })
        ));
        // a term whose coefficient vanishes mod p does not break homogeneity
        let ok = Polynomial::new(vec![Term::new(1, vec![2, 0]), Term::new(5, vec![1, 0])]);
        assert!(VarietySpec::new(Ambient::Projective(1), vec![ok], f(5), "").is_ok());
    }

    #[test]
    fn characteristic_and_budget_errors() {
        let spec = VarietySpec::weierstrass(1, 1, f(5)).unwrap();
        assert!(matches!(
            count_projective(&spec, &f(7)),
            Err(CountError::CharacteristicMismatch { spec: 5, field: 7 })
        ));
        let tight = CountConfig {
            budget: 30,
            ..CountConfig::default()
        };
        assert_eq!(
            count_projective_with(&spec, &f(5), &tight).unwrap_err(),
            CountError::BudgetExceeded {
                needed: 31,
                budget: 30
            }
        );
    }

    #[test]
    fn closed_points() {
        let s = CountSeries::from_ints(2, &[3, 5, 9]);
        assert_eq!(closed_point_degrees(&s).unwrap(), ints(&[3, 1, 2]));
        let pt = CountSeries::from_ints(2, &[1, 1, 1]);
        assert_eq!(closed_point_degrees(&pt).unwrap(), ints(&[1, 0, 0]));
        let bad = CountSeries::from_ints(2, &[3, 4]);
        assert_eq!(closed_point_degrees(&bad).unwrap_err(), CountError::NonIntegralOrbit(2));
        assert_eq!(
            closed_point_degrees(&CountSeries::from_ints::<i64>(2, &[])).unwrap_err(),
            CountError::EmptySeries
        );
    }

    /// Monic irreducibles over F_2 by brute force: the degree-e closed
    /// points of P^1 are those plus the point at infinity in degree 1.
    #[test]
    fn closed_points_of_p1_are_irreducible_polynomials() {
        let p1 = VarietySpec::new(Ambient::Projective(1), vec![], f(2), "P^1").unwrap();
        let s = count_series(&p1, 6).unwrap();
        let b = closed_point_degrees(&s).unwrap();
        for e in 1..=6u32 {
            let irreducibles = (0..(1u64 << e))
                .filter(|&code| {
                    let mut poly: Vec<u64> = (0..e).map(|i| (code >> i) & 1).collect();
                    poly.push(1);
                    crate::field::fpoly::is_irreducible(&poly, 2)
                })
                .count() as i64;
            let expected = irreducibles + if e == 1 { 1 } else { 0 };
            assert_eq!(b[e as usize - 1], BigInt::from(expected), "degree {e}");
        }
    }

    #[test]
    fn projective_affine_gluing() {
        // N_proj = (N_cone - 1) / (q - 1) for a homogeneous system.
        for &(p, m) in &[(5u64, 2u32), (7, 3), (11, 2), (13, 4)] {
            let proj = VarietySpec::fermat(&[1, 2, 3], m, f(p)).unwrap();
            let cone = VarietySpec::new(
                Ambient::Affine(3),
                proj.equations.clone(),
                f(p),
                "cone",
            )
            .unwrap();
            let n_proj = count_projective(&proj, &f(p)).unwrap();
            let n_cone = count_affine(&cone, &f(p)).unwrap();
            assert_eq!(n_proj * (p - 1), n_cone - 1);
        }
    }

    #[test]
    fn partitioning_and_method_do_not_change_counts() {
        let specs = vec![
            VarietySpec::fermat(&[1, 1, 1], 3, f(7)).unwrap(),
            VarietySpec::weierstrass(2, 3, f(11)).unwrap(),
            VarietySpec::fermat(&[1, 2, 3, 4], 2, f(5)).unwrap(),
        ];
        for spec in &specs {
            let ext = FieldDesc::new(spec.p(), 2, None).unwrap();
            let reference = count_projective(spec, &ext).unwrap();
            for parts in [1, 2, 3, 8] {
                for method in [CountMethod::Exhaustive, CountMethod::Reduced] {
                    let cfg = CountConfig {
                        partitions: parts,
                        method,
                        ..CountConfig::default()
                    };
                    assert_eq!(count_projective_with(spec, &ext, &cfg).unwrap(), reference);
                }
            }
        }
    }
}

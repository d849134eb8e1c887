//! Zeta functions of varieties over finite fields: series from counts,
//! rational reconstruction, curve numerators and Weil-factor assembly.

mod exterior;

pub use exterior::{abelian_exterior_factor, abelian_factorization};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::counting::CountSeries;
use crate::linalg;
use crate::poly::{big_rat, rat, QPoly};
use crate::series::PowerSeriesQ;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("need {needed} counts, have {available}")]
    InsufficientCounts { needed: usize, available: usize },
    #[error("no rational function with numerator degree <= {max_num_deg} and denominator degree <= {max_den_deg} fits the counts")]
    NoRationalFit {
        max_num_deg: usize,
        max_den_deg: usize,
    },
    #[error("no integral solution: {0}")]
    NonIntegralSolution(String),
    #[error("counts disagree with the fitted numerator at n = {n}: predicted {predicted}, given {given}")]
    InconsistentCounts {
        n: usize,
        predicted: BigInt,
        given: BigInt,
    },
    #[error("index {r} outside 0..={max}")]
    DegreeOutOfRange { r: usize, max: usize },
    #[error("factor P_{0} missing")]
    MissingFactor(usize),
    #[error("{0}")]
    InvalidInput(String),
}

/// `Z(T) = num / den` in lowest terms with `num(0) = den(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalZeta {
    num: QPoly,
    den: QPoly,
}

impl RationalZeta {
    /// Cancels common factors; `num / den` must equal 1 at `T = 0`.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, ZetaError> {
        let n0 = num.coeff(0);
        if n0.is_zero() || n0 != den.coeff(0) {
            return Err(ZetaError::InvalidInput(
                "numerator and denominator must agree and be nonzero at T = 0".into(),
            ));
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        Ok(RationalZeta {
            num: num.unit_constant().expect("nonzero at 0"),
            den: den.unit_constant().expect("nonzero at 0"),
        })
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self, ZetaError> {
        Self::new(QPoly::from_ints(num), QPoly::from_ints(den))
    }

    pub fn from_bigints(num: &[BigInt], den: &[BigInt]) -> Result<Self, ZetaError> {
        Self::new(QPoly::from_bigints(num), QPoly::from_bigints(den))
    }

    pub fn one() -> Self {
        RationalZeta {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn series(&self, order: usize) -> PowerSeriesQ {
        PowerSeriesQ::from_quotient(&self.num, &self.den, order)
    }
}

impl fmt::Display for RationalZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// `P_0, ..., P_{2d}` for a `d`-dimensional variety over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilFactorization {
    pub d: usize,
    pub q: u64,
    pub factors: BTreeMap<usize, QPoly>,
}

impl WeilFactorization {
    pub fn new(d: usize, q: u64) -> Self {
        WeilFactorization {
            d,
            q,
            factors: BTreeMap::new(),
        }
    }

    pub fn with(mut self, r: usize, p: QPoly) -> Self {
        self.factors.insert(r, p);
        self
    }

    /// Factorization of a curve with numerator `p1`.
    pub fn curve(q: u64, p1: QPoly) -> Self {
        WeilFactorization::new(1, q)
            .with(0, QPoly::from_ints(&[1, -1]))
            .with(1, p1)
            .with(2, QPoly::linear_one_minus(&BigInt::from(q)))
    }

    pub fn get(&self, r: usize) -> Option<&QPoly> {
        self.factors.get(&r)
    }

    /// `B_r = deg P_r` for the factors present.
    pub fn betti(&self) -> BTreeMap<usize, usize> {
        self.factors.iter().map(|(&r, p)| (r, p.deg())).collect()
    }
}

/// Power sums `Σ a_i^n`, `n = 1..=k`, of the inverse roots of `p = Π (1 - a_i T)`.
pub fn inverse_root_power_sums(p: &QPoly, k: usize) -> Vec<BigRational> {
    let c0 = p.coeff(0);
    assert!(!c0.is_zero(), "constant term must be nonzero");
    let p = p.scale(&(BigRational::one() / c0));
    // p_n = -n c_n - Σ_{j=1}^{n-1} c_j p_{n-j}
    let mut s: Vec<BigRational> = Vec::with_capacity(k);
    for n in 1..=k {
        let mut acc = -(p.coeff(n) * rat(n as i64));
        for j in 1..n.min(p.deg() + 1) {
            acc -= p.coeff(j) * &s[n - j - 1];
        }
        s.push(acc);
    }
    s
}

/// `Z = exp(Σ_{n ≤ order} N_n T^n / n)`, truncated at `T^order`.
pub fn zeta_series_from_counts(series: &CountSeries, order: usize) -> Result<PowerSeriesQ, ZetaError> {
    if series.len() < order {
        return Err(ZetaError::InsufficientCounts {
            needed: order,
            available: series.len(),
        });
    }
    let mut g = vec![BigRational::zero()];
    g.extend(
        series.counts[..order]
            .iter()
            .enumerate()
            .map(|(i, n)| big_rat(n) / rat(i as i64 + 1)),
    );
    Ok(PowerSeriesQ::new(g, order).exp().expect("zero constant term"))
}

/// `N_1, ..., N_k` predicted by `z`, via Newton's identities on both sides.
pub fn counts_from_zeta(z: &RationalZeta, k: usize) -> Result<Vec<BigInt>, ZetaError> {
    let den = inverse_root_power_sums(&z.den, k);
    let num = inverse_root_power_sums(&z.num, k);
    den.iter()
        .zip(&num)
        .enumerate()
        .map(|(i, (d, n))| {
            let v = d - n;
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(ZetaError::NonIntegralSolution(format!("N_{} = {v}", i + 1)))
            }
        })
        .collect()
}

/// The rational function of least degree (denominator first, then
/// numerator) whose expansion matches the counts to their full length.
///
/// For candidate degrees `(a, b)` the unknown denominator
/// `1 + d_1 T + ... + d_b T^b` must kill the coefficients of `den · Z` above `T^a`; these
/// linear conditions are solved exactly and the numerator read off.
pub fn reconstruct_rational(
    series: &CountSeries,
    max_num_deg: usize,
    max_den_deg: usize,
) -> Result<RationalZeta, ZetaError> {
    let needed = max_num_deg + max_den_deg + 2;
    if series.len() < needed {
        return Err(ZetaError::InsufficientCounts {
            needed,
            available: series.len(),
        });
    }
    let k = series.len();
    let z = zeta_series_from_counts(series, k)?;
    let zc = z.coeffs();
    let at = |i: isize| -> BigRational {
        if i < 0 {
            BigRational::zero()
        } else {
            zc[i as usize].clone()
        }
    };
    for b in 0..=max_den_deg {
        for a in 0..=max_num_deg {
            // Σ_{j=1}^{b} d_j z_{i-j} = -z_i for i = a+1..=k
            let rows: Vec<usize> = (a + 1..=k).collect();
            let matrix: linalg::Matrix = rows
                .iter()
                .map(|&i| (1..=b).map(|j| at(i as isize - j as isize)).collect())
                .collect();
            let rhs: Vec<BigRational> = rows.iter().map(|&i| -at(i as isize)).collect();
            let Some(d) = linalg::solve(matrix, rhs) else {
                continue;
            };
            let mut den = vec![BigRational::one()];
            den.extend(d);
            let den = QPoly::new(den);
            let num = QPoly::new(
                (0..=a)
                    .map(|i| {
                        (0..=b.min(i))
                            .map(|j| den.coeff(j) * &zc[i - j])
                            .fold(BigRational::zero(), |s, x| s + x)
                    })
                    .collect(),
            );
            let fit = RationalZeta::new(num, den)?;
            debug_assert_eq!(fit.series(k), z);
            return Ok(fit);
        }
    }
    Err(ZetaError::NoRationalFit {
        max_num_deg,
        max_den_deg,
    })
}

/// Numerator `P(T) = 1 + c_1 T + ... + c_{2g} T^{2g}` of a genus-`g` curve
/// from exactly `N_1, ..., N_g`; the upper half comes from
/// `c_{2g-i} = q^{g-i} c_i`.
pub fn curve_numerator_from_counts(g: usize, q: u64, counts: &[BigInt]) -> Result<QPoly, ZetaError> {
    if counts.len() != g {
        return Err(ZetaError::InvalidInput(format!(
            "genus {g} needs exactly {g} counts, got {}",
            counts.len()
        )));
    }
    let qb = BigInt::from(q);
    // s_n = Σ a_i^n = 1 + q^n - N_n
    let s: Vec<BigInt> = counts
        .iter()
        .enumerate()
        .map(|(i, n)| BigInt::one() + num_traits::pow(qb.clone(), i + 1) - n)
        .collect();
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=g {
        let mut acc = s[n - 1].clone();
        for j in 1..n {
            acc += &c[j] * &s[n - j - 1];
        }
        let nb = BigInt::from(n);
        if (&acc % &nb) != BigInt::zero() {
            return Err(ZetaError::NonIntegralSolution(format!(
                "c_{n} = -{acc}/{n} is not an integer"
            )));
        }
        c.push(-(acc / nb));
    }
    let mut full = vec![BigInt::zero(); 2 * g + 1];
    for i in 0..=g {
        full[i] = c[i].clone();
        full[2 * g - i] = &c[i] * num_traits::pow(qb.clone(), g - i);
    }
    Ok(QPoly::from_bigints(&full))
}

/// As [`curve_numerator_from_counts`] from the first `g` counts, then checks
/// every further count against the prediction.
pub fn curve_numerator_checked(g: usize, q: u64, counts: &[BigInt]) -> Result<QPoly, ZetaError> {
    if counts.len() < g {
        return Err(ZetaError::InsufficientCounts {
            needed: g,
            available: counts.len(),
        });
    }
    let p = curve_numerator_from_counts(g, q, &counts[..g])?;
    let z = RationalZeta::new(p.clone(), curve_denominator(q)).expect("normalized");
    let predicted = counts_from_zeta(&z, counts.len())?;
    for (i, (pr, given)) in predicted.iter().zip(counts).enumerate().skip(g) {
        if pr != given {
            return Err(ZetaError::InconsistentCounts {
                n: i + 1,
                predicted: pr.clone(),
                given: given.clone(),
            });
        }
    }
    Ok(p)
}

/// `(1 - T)(1 - q T)`.
pub fn curve_denominator(q: u64) -> QPoly {
    &QPoly::from_ints(&[1, -1]) * &QPoly::linear_one_minus(&BigInt::from(q))
}

/// `Π_{r odd} P_r / Π_{r even} P_r` over `r = 0..=2d`.
pub fn assemble_alternating_product(f: &WeilFactorization) -> Result<RationalZeta, ZetaError> {
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for r in 0..=2 * f.d {
        let p = f.get(r).ok_or(ZetaError::MissingFactor(r))?;
        if r % 2 == 1 {
            num = &num * p;
        } else {
            den = &den * p;
        }
    }
    RationalZeta::new(num, den)
}

/// `#{(a_0, ..., a_r) ∈ {1, ..., m-1}^{r+1} : Σ a_i ≡ 0 mod m}`.
pub fn diagonal_middle_degree(m: u64, r: usize) -> u64 {
    if m < 2 {
        return 0;
    }
    let m = m as usize;
    // ways[s] = tuples so far with sum ≡ s
    let mut ways = vec![0u64; m];
    ways[0] = 1;
    for _ in 0..=r {
        let mut next = vec![0u64; m];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for a in 1..m {
                next[(s + a) % m] += w;
            }
        }
        ways = next;
    }
    ways[0]
}

/// Betti degrees `B_0..B_{2n}` of a smooth diagonal hypersurface of degree
/// `m` in `P^r` (`n = r - 1`): 1 in even degrees, plus `A` in degree `n`.
pub fn diagonal_betti_profile(m: u64, r: usize) -> Vec<usize> {
    let n = r - 1;
    let a = diagonal_middle_degree(m, r) as usize;
    (0..=2 * n)
        .map(|i| usize::from(i % 2 == 0) + if i == n { a } else { 0 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn series_from_counts() {
        let s = zeta_series_from_counts(&CountSeries::from_ints(1, &[1, 1, 1]), 3).unwrap();
        assert_eq!(s, PowerSeriesQ::from_ints(&[1, 1, 1, 1], 3));
        let s = zeta_series_from_counts(&CountSeries::from_ints(2, &[3, 5, 9]), 3).unwrap();
        assert_eq!(s, PowerSeriesQ::from_ints(&[1, 3, 7, 15], 3));
        assert_eq!(
            zeta_series_from_counts(&CountSeries::from_ints(2, &[3, 5]), 3).unwrap_err(),
            ZetaError::InsufficientCounts {
                needed: 3,
                available: 2
            }
        );
    }

    #[test]
    fn counts_from_rational() {
        let z = RationalZeta::from_ints(&[1], &[1, -3, 2]).unwrap();
        assert_eq!(counts_from_zeta(&z, 3).unwrap(), ints(&[3, 5, 9]));
        let z = RationalZeta::from_ints(&[1, 3, 5], &[1, -6, 5]).unwrap();
        assert_eq!(counts_from_zeta(&z, 2).unwrap(), ints(&[9, 27]));
        assert_eq!(counts_from_zeta(&RationalZeta::one(), 4).unwrap(), ints(&[0; 4]));
    }

    #[test]
    fn rational_zeta_normalizes() {
        let z = RationalZeta::from_ints(&[2, -2], &[2, -6, 4]).unwrap();
        assert_eq!(z.num(), &QPoly::one());
        assert_eq!(z.den(), &QPoly::from_ints(&[1, -2]));
        assert!(RationalZeta::from_ints(&[2], &[1]).is_err());
    }

    #[test]
    fn reconstructs_projective_line() {
        let z = reconstruct_rational(&CountSeries::from_ints(2, &[3, 5, 9, 17, 33, 65]), 0, 2).unwrap();
        assert_eq!(z, RationalZeta::from_ints(&[1], &[1, -3, 2]).unwrap());
    }

    #[test]
    fn factorial_counts_have_no_small_fit() {
        assert_eq!(
            reconstruct_rational(&CountSeries::from_ints(1, &[1, 2, 6, 24]), 1, 1).unwrap_err(),
            ZetaError::NoRationalFit {
                max_num_deg: 1,
                max_den_deg: 1
            }
        );
        assert!(matches!(
            reconstruct_rational(&CountSeries::from_ints(1, &[1, 2, 6]), 1, 1),
            Err(ZetaError::InsufficientCounts { .. })
        ));
    }

    #[test]
    fn elliptic_numerator() {
        assert_eq!(curve_numerator_from_counts(0, 7, &[]).unwrap(), QPoly::one());
        assert_eq!(
            curve_numerator_from_counts(1, 5, &ints(&[9])).unwrap(),
            QPoly::from_ints(&[1, 3, 5])
        );
        assert_eq!(
            curve_numerator_checked(1, 5, &ints(&[9, 27])).unwrap(),
            QPoly::from_ints(&[1, 3, 5])
        );
        assert!(matches!(
            curve_numerator_checked(1, 5, &ints(&[9, 28])),
            Err(ZetaError::InconsistentCounts { n: 2, .. })
        ));
    }

    #[test]
    fn non_integral_numerator() {
        // s_1 = 1, s_2 = 0 forces c_2 = -(0 + c_1 s_1)/2 = 1/2
        let q = 3;
        let n1 = 1 + q - 1;
        let n2 = 1 + q * q;
        assert!(matches!(
            curve_numerator_from_counts(2, q as u64, &ints(&[n1, n2])),
            Err(ZetaError::NonIntegralSolution(_))
        ));
    }

    #[test]
    fn assembly() {
        let f = WeilFactorization::curve(5, QPoly::from_ints(&[1, 3, 5]));
        assert_eq!(
            assemble_alternating_product(&f).unwrap(),
            RationalZeta::from_ints(&[1, 3, 5], &[1, -6, 5]).unwrap()
        );
        let mut missing = f.clone();
        missing.factors.remove(&1);
        assert_eq!(assemble_alternating_product(&missing).unwrap_err(), ZetaError::MissingFactor(1));

        // surface with P_2 = (1 - qT)^b
        let (q, b) = (3i64, 2);
        let l = |a: i64| QPoly::from_ints(&[1, -a]);
        let f = WeilFactorization::new(2, q as u64)
            .with(0, l(1))
            .with(1, QPoly::one())
            .with(2, l(q).pow(b))
            .with(3, QPoly::one())
            .with(4, l(q * q));
        let expected = RationalZeta::new(QPoly::one(), &(&l(1) * &l(q).pow(b)) * &l(q * q)).unwrap();
        assert_eq!(assemble_alternating_product(&f).unwrap(), expected);
    }

    #[test]
    fn middle_degrees() {
        assert_eq!(diagonal_middle_degree(3, 2), 2);
        assert_eq!(diagonal_middle_degree(1, 5), 0);
        assert_eq!(diagonal_middle_degree(2, 2), 0);
        assert_eq!(diagonal_middle_degree(2, 3), 1);
        assert_eq!(diagonal_middle_degree(4, 2), 3 * 3 * 3 - diagonal_nonzero_sums(4, 2));
        assert_eq!(diagonal_betti_profile(3, 2), vec![1, 2, 1]);
        assert_eq!(diagonal_betti_profile(2, 3), vec![1, 0, 2, 0, 1]);
    }

    // oracle by brute-force enumeration
    fn diagonal_nonzero_sums(m: u64, r: usize) -> u64 {
        let mut count = 0;
        let total = (m - 1).pow(r as u32 + 1);
        for mut t in 0..total {
            let mut s = 0;
            for _ in 0..=r {
                s += t % (m - 1) + 1;
                t /= m - 1;
            }
            if s % m != 0 {
                count += 1;
            }
        }
        count
    }
}

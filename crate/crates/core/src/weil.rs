//! Checks of rationality, functional equation, integrality, Riemann
//! hypothesis and Betti degrees on computed zeta data.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::counting::CountSeries;
use crate::poly::{big_rat, rat, QPoly};
use crate::sturm::{count_real_roots, count_roots_above};
use crate::zeta::{counts_from_zeta, RationalZeta, WeilFactorization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error("polynomial must be monic with integer coefficients")]
    NotMonic,
    #[error("polynomial vanishes at 0")]
    ZeroRoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhMethod {
    ExactSturm,
}

impl RhMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RhMethod::ExactSturm => "exact-sturm",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhVerdict {
    pub holds: bool,
    pub method: RhMethod,
    pub witness: String,
}

impl RhVerdict {
    fn new(holds: bool, witness: impl Into<String>) -> Self {
        RhVerdict {
            holds,
            method: RhMethod::ExactSturm,
            witness: witness.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalEquation {
    pub holds: bool,
    pub sign: i8,
    pub chi: i64,
    /// `num · den^R - ρ · num^R · den`; zero when the identity holds.
    pub residual: QPoly,
}

/// Tests `Z(1/(q^d T)) = ± q^{dχ/2} T^χ Z(T)` with `χ = deg den - deg num`.
///
/// Writing `f^R(T) = (QT)^{deg f} f(1/(QT))` with `Q = q^d`, the identity is
/// `num · den^R = ρ · num^R · den` with `ρ = ± Q^{χ/2}`; `ρ` is read off at
/// `T = 0` and must then satisfy `ρ^2 = Q^χ`.
pub fn check_functional_equation(z: &RationalZeta, d: u32, q: u64) -> FunctionalEquation {
    let big_q = big_rat(&num_traits::pow(BigInt::from(q), d as usize));
    let a = z.num().deg();
    let b = z.den().deg();
    let chi = b as i64 - a as i64;
    let x = &z.num().reflect(&big_q, a) * z.den();
    let y = z.num() * &z.den().reflect(&big_q, b);
    let rho = y.coeff(0) / x.coeff(0);
    let residual = &y - &x.scale(&rho);
    let target = if chi >= 0 {
        num_traits::pow(big_q.clone(), chi as usize)
    } else {
        BigRational::one() / num_traits::pow(big_q.clone(), (-chi) as usize)
    };
    let holds = residual.is_zero() && &rho * &rho == target;
    FunctionalEquation {
        holds,
        sign: if rho.is_negative() { -1 } else { 1 },
        chi,
        residual,
    }
}

pub fn check_integrality(z: &RationalZeta) -> bool {
    z.num().is_integral() && z.den().is_integral()
}

/// Whether every inverse root of `p` has absolute value `q^{r/2}`.
///
/// With `μ = q^r` and `f` the reversed polynomial (roots = inverse roots of
/// `p`), roots `±√μ` are split off first. What remains must be
/// self-inversive, `x^{2h} f(μ/x) = μ^h f(x)`, so that `f(x) = x^h h(x + μ/x)`.
/// The roots have modulus `√μ` exactly when `h` has only real roots `y` with
/// `y^2 ≤ 4μ`; the latter is tested on `H(u) = h(√u) h(-√u)`, whose roots are
/// the `y^2`, so no irrational endpoint appears.
pub fn check_riemann_hypothesis(p: &QPoly, weight: u32, q: u64) -> RhVerdict {
    if p.is_zero() || !p.coeff(0).is_one() {
        return RhVerdict::new(false, "P(0) != 1");
    }
    let mu_int = num_traits::pow(BigInt::from(q), weight as usize);
    let mu = big_rat(&mu_int);
    let mut f = p.reversed(p.deg());

    let mut stripped = 0;
    let x2_minus_mu = QPoly::new(vec![-mu.clone(), BigRational::zero(), BigRational::one()]);
    while f.deg() >= 2 {
        match f.exact_div(&x2_minus_mu) {
            Some(rest) => {
                f = rest;
                stripped += 2;
            }
            None => break,
        }
    }
    let s = mu_int.sqrt();
    if &s * &s == mu_int {
        for lin in [
            QPoly::new(vec![-big_rat(&s), BigRational::one()]),
            QPoly::new(vec![big_rat(&s), BigRational::one()]),
        ] {
            while f.deg() >= 1 {
                match f.exact_div(&lin) {
                    Some(rest) => {
                        f = rest;
                        stripped += 1;
                    }
                    None => break,
                }
            }
        }
    }
    let n = f.deg();
    if n == 0 {
        return RhVerdict::new(true, format!("all {stripped} roots are ±q^({weight}/2)"));
    }
    if n % 2 == 1 {
        return RhVerdict::new(false, format!("odd-degree remainder {f} has a real root off ±q^({weight}/2)"));
    }
    let h = n / 2;

    // x^{2h} f(μ/x) against μ^h f(x)
    let mut mirrored = vec![BigRational::zero(); n + 1];
    let mut mu_k = BigRational::one();
    for k in 0..=n {
        mirrored[n - k] = f.coeff(k) * &mu_k;
        mu_k *= &mu;
    }
    if QPoly::new(mirrored) != f.scale(&num_traits::pow(mu.clone(), h)) {
        return RhVerdict::new(false, format!("{f} is not self-inversive for modulus^2 = {mu_int}"));
    }

    // h(y) = f_h + Σ_{k ≥ 1} f_{h+k} t_k(y), t_k = x^k + (μ/x)^k
    let y = QPoly::monomial(1);
    let mut t_prev = QPoly::from_ints(&[2]);
    let mut t_cur = y.clone();
    let mut hy = QPoly::constant(f.coeff(h));
    for k in 1..=h {
        hy = &hy + &t_cur.scale(&f.coeff(h + k));
        let next = &(&y * &t_cur) - &t_prev.scale(&mu);
        t_prev = t_cur;
        t_cur = next;
    }
    let sf = hy.squarefree_part();
    let real = count_real_roots(&sf);
    if real != sf.deg() {
        return RhVerdict::new(
            false,
            format!("h(y) = {hy} has {} non-real roots", sf.deg() - real),
        );
    }
    let (e, o) = hy.even_odd_parts();
    let big_h = &(&e * &e) - &(&QPoly::monomial(1) * &(&o * &o));
    let bound = &mu * rat(4);
    let above = count_roots_above(&big_h, &bound);
    if above > 0 {
        return RhVerdict::new(
            false,
            format!("H(u) = {big_h} has {above} roots above 4·{mu_int}"),
        );
    }
    RhVerdict::new(
        true,
        format!("h(y) = {hy}: all roots real with y^2 <= {bound}"),
    )
}

/// `(N_n - q^n - 1)^2 <= 4 g^2 q^n` for every count.
pub fn check_point_bounds(series: &CountSeries, g: usize) -> bool {
    let q = BigInt::from(series.q);
    let g = BigInt::from(g);
    series.counts.iter().enumerate().all(|(i, n)| {
        let qn = num_traits::pow(q.clone(), i + 1);
        let dev = n - &qn - 1;
        &dev * &dev <= BigInt::from(4) * &g * &g * qn
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilNumberVerdict {
    pub polynomial: QPoly,
    pub q: u64,
    pub is_weil: bool,
    pub witness: String,
}

/// Whether the roots of the monic integer polynomial `f` all have
/// absolute value `√q`.
pub fn classify_weil_number(f: &QPoly, q: u64) -> Result<WeilNumberVerdict, WeilError> {
    if f.is_zero() || !f.leading().is_one() || !f.is_integral() {
        return Err(WeilError::NotMonic);
    }
    if f.coeff(0).is_zero() {
        return Err(WeilError::ZeroRoot);
    }
    let v = check_riemann_hypothesis(&f.reversed(f.deg()), 1, q);
    Ok(WeilNumberVerdict {
        polynomial: f.clone(),
        q,
        is_weil: v.holds,
        witness: v.witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiReport {
    /// `B_r = deg P_r` for `r = 0..=2d`; `None` where the factor is absent.
    pub observed: Vec<Option<usize>>,
    pub expected: Option<Vec<usize>>,
    pub agrees: Option<bool>,
}

pub fn betti_profile(f: &WeilFactorization, expected: Option<&[usize]>) -> BettiReport {
    let observed: Vec<Option<usize>> = (0..=2 * f.d).map(|r| f.get(r).map(QPoly::deg)).collect();
    let agrees = expected.map(|e| {
        e.len() == observed.len() && e.iter().zip(&observed).all(|(a, b)| Some(*a) == *b)
    });
    BettiReport {
        observed,
        expected: expected.map(<[usize]>::to_vec),
        agrees,
    }
}

/// Splits `z` assuming only the middle degree carries interesting
/// cohomology: `P_{2i} = 1 - q^i T` off the middle, odd `P_r = 1` off the
/// middle, and `P_d` whatever remains.
pub fn infer_factorization(z: &RationalZeta, d: usize, q: u64) -> Option<WeilFactorization> {
    let qb = BigInt::from(q);
    let line = |i: usize| QPoly::linear_one_minus(&num_traits::pow(qb.clone(), i));
    let mut f = WeilFactorization::new(d, q);
    let mut rest = z.den().clone();
    for r in 0..=2 * d {
        if r == d {
            continue;
        }
        if r % 2 == 0 {
            let l = line(r / 2);
            rest = rest.exact_div(&l)?;
            f = f.with(r, l);
        } else {
            f = f.with(r, QPoly::one());
        }
    }
    if d % 2 == 1 {
        if rest != QPoly::one() {
            return None;
        }
        f = f.with(d, z.num().clone());
    } else {
        if *z.num() != QPoly::one() {
            return None;
        }
        f = f.with(d, rest);
    }
    Some(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalityCheck {
    pub holds: bool,
    pub num_deg: usize,
    pub den_deg: usize,
    /// Counts compared against the zeta's own prediction.
    pub counts_checked: usize,
    pub first_mismatch: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorRh {
    pub r: usize,
    pub factor: QPoly,
    pub verdict: RhVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhCheck {
    pub holds: bool,
    pub factors: Vec<FactorRh>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub counts: Vec<BigInt>,
    pub predicted: Vec<BigInt>,
    pub factorization: &'static str,
    pub point_bounds: Option<bool>,
    /// `(genus, χ == 2 - 2g)` for curves with a known genus.
    pub genus_chi: Option<(usize, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilReport {
    pub w1_rational: RationalityCheck,
    pub w2_functional: FunctionalEquation,
    pub w3_integral: bool,
    pub w4_rh: RhCheck,
    pub w5_betti: BettiReport,
    pub evidence: Evidence,
}

impl WeilReport {
    /// W1 through W4; W5 is informational.
    pub fn all_hold(&self) -> bool {
        self.w1_rational.holds && self.w2_functional.holds && self.w3_integral && self.w4_rh.holds
    }
}

#[derive(Debug, Clone)]
pub struct VerifyInput<'a> {
    pub zeta: &'a RationalZeta,
    pub dim: usize,
    pub q: u64,
    pub counts: Option<&'a CountSeries>,
    pub factors: Option<WeilFactorization>,
    pub genus: Option<usize>,
    pub expected_betti: Option<Vec<usize>>,
}

impl<'a> VerifyInput<'a> {
    pub fn new(zeta: &'a RationalZeta, dim: usize, q: u64) -> Self {
        VerifyInput {
            zeta,
            dim,
            q,
            counts: None,
            factors: None,
            genus: None,
            expected_betti: None,
        }
    }
}

pub fn verify(input: VerifyInput<'_>) -> WeilReport {
    let z = input.zeta;
    let counts: Vec<BigInt> = input.counts.map(|c| c.counts.clone()).unwrap_or_default();
    let predicted = counts_from_zeta(z, counts.len()).unwrap_or_default();
    let first_mismatch = if predicted.len() == counts.len() {
        counts.iter().zip(&predicted).position(|(a, b)| a != b).map(|i| i + 1)
    } else {
        Some(1)
    };
    let w1 = RationalityCheck {
        holds: first_mismatch.is_none(),
        num_deg: z.num().deg(),
        den_deg: z.den().deg(),
        counts_checked: counts.len(),
        first_mismatch,
    };

    let w2 = check_functional_equation(z, input.dim as u32, input.q);
    let (factors, source) = match input.factors {
        Some(f) => (Some(f), "supplied"),
        None => (infer_factorization(z, input.dim, input.q), "inferred"),
    };
    let w3 = check_integrality(z)
        && factors
            .as_ref()
            .is_none_or(|f| f.factors.values().all(QPoly::is_integral));

    let w4 = match &factors {
        None => RhCheck {
            holds: false,
            factors: Vec::new(),
            reason: Some("factorization unavailable".into()),
        },
        Some(f) => {
            let checks: Vec<FactorRh> = f
                .factors
                .iter()
                .map(|(&r, p)| FactorRh {
                    r,
                    factor: p.clone(),
                    verdict: check_riemann_hypothesis(p, r as u32, input.q),
                })
                .collect();
            RhCheck {
                holds: checks.iter().all(|c| c.verdict.holds),
                factors: checks,
                reason: None,
            }
        }
    };
    let w5 = match &factors {
        Some(f) => betti_profile(f, input.expected_betti.as_deref()),
        None => BettiReport {
            observed: Vec::new(),
            expected: input.expected_betti.clone(),
            agrees: input.expected_betti.as_ref().map(|_| false),
        },
    };

    let point_bounds = match (input.genus, input.counts) {
        (Some(g), Some(c)) if input.dim == 1 => Some(check_point_bounds(c, g)),
        _ => None,
    };
    let genus_chi = match input.genus {
        Some(g) if input.dim == 1 => Some((g, w2.chi == 2 - 2 * g as i64)),
        _ => None,
    };
    WeilReport {
        w1_rational: w1,
        w2_functional: w2,
        w3_integral: w3,
        w4_rh: w4,
        w5_betti: w5,
        evidence: Evidence {
            counts,
            predicted,
            factorization: source,
            point_bounds,
            genus_chi,
        },
    }
}

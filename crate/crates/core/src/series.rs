//! Truncated power series over Q.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{rat, QPoly};

/// `Σ_{i ≤ order} c_i T^i`, known exactly up to and including `T^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeriesQ {
    coeffs: Vec<BigRational>,
    order: usize,
}

impl PowerSeriesQ {
    /// Missing coefficients are zero; extra ones are dropped.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeriesQ { coeffs, order }
    }

    pub fn from_ints(c: &[i64], order: usize) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        assert!(i <= self.order, "coefficient T^{i} beyond truncation order {}", self.order);
        &self.coeffs[i]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Expansion of `num / den`; `den(0)` must be nonzero.
    pub fn from_quotient(num: &QPoly, den: &QPoly, order: usize) -> Self {
        let d0 = den.coeff(0);
        assert!(!d0.is_zero(), "denominator vanishes at T = 0");
        let inv = BigRational::one() / d0;
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = num.coeff(n);
            for k in 1..=n.min(den.deg()) {
                acc -= den.coeff(k) * &out[n - k];
            }
            out.push(acc * &inv);
        }
        PowerSeriesQ { coeffs: out, order }
    }

    pub fn mul(&self, other: &PowerSeriesQ) -> PowerSeriesQ {
        let order = self.order.min(other.order);
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeriesQ { coeffs: out, order }
    }

    /// `exp(self)`; needs a zero constant term.
    pub fn exp(&self) -> Option<PowerSeriesQ> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        // n f_n = Σ_{k=1}^{n} k g_k f_{n-k}
        let g = &self.coeffs;
        let mut f: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=self.order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !g[k].is_zero() {
                    acc += &g[k] * rat(k as i64) * &f[n - k];
                }
            }
            f.push(acc / rat(n as i64));
        }
        Some(PowerSeriesQ {
            coeffs: f,
            order: self.order,
        })
    }

    /// `log(self)`; needs constant term 1.
    pub fn log(&self) -> Option<PowerSeriesQ> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        // g_n = f_n - (1/n) Σ_{k=1}^{n-1} k g_k f_{n-k}
        let f = &self.coeffs;
        let mut g: Vec<BigRational> = vec![BigRational::zero()];
        for n in 1..=self.order {
            let mut acc = BigRational::zero();
            for k in 1..n {
                if !g[k].is_zero() {
                    acc += &g[k] * rat(k as i64) * &f[n - k];
                }
            }
            g.push(&f[n] - acc / rat(n as i64));
        }
        Some(PowerSeriesQ {
            coeffs: g,
            order: self.order,
        })
    }
}

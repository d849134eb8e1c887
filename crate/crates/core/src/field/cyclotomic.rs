//! Exact arithmetic in Z[ζ_m] = Z[x]/Φ_m(x).

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Φ_m as integer coefficients, low-to-high.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in arith::divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &phi_d);
    }
    let phi = Arc::new(num);
    phi_cache().lock().unwrap().insert(m, phi.clone());
    phi
}

fn exact_div_monic(a: &[i64], f: &[i64]) -> Vec<i64> {
    let df = f.len() - 1;
    let mut r = a.to_vec();
    let mut quot = vec![0i64; a.len() - df];
    for k in (0..quot.len()).rev() {
        let c = r[k + df];
        quot[k] = c;
        if c != 0 {
            for (i, &fc) in f.iter().enumerate() {
                r[k + i] -= c * fc;
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Remainder modulo a monic integer polynomial.
fn rem_monic(a: &mut Vec<i64>, f: &[i64]) {
    let df = f.len() - 1;
    while a.len() > df {
        let c = a.pop().unwrap();
        if c != 0 {
            let shift = a.len() - df;
            for (i, &fc) in f[..df].iter().enumerate() {
                a[shift + i] -= c * fc;
            }
        }
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// An element of Z[ζ_m], stored reduced modulo Φ_m with trailing zeros
/// trimmed, so structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    m: u64,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(m: u64) -> Self {
        CyclotomicInt { m, coeffs: Vec::new() }
    }

    pub fn from_int(m: u64, c: i64) -> Self {
        Self::from_group_ring(m, &[c])
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    /// ζ_m^k.
    pub fn zeta_pow(m: u64, k: u64) -> Self {
        let mut v = vec![0i64; m as usize];
        v[(k % m) as usize] = 1;
        Self::from_group_ring(m, &v)
    }

    /// Reduces `Σ c_i ζ^i` where `i` may run past `m`.
    pub fn from_group_ring(m: u64, coeffs: &[i64]) -> Self {
        let mut folded = vec![0i64; m as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            folded[i % m as usize] += c;
        }
        rem_monic(&mut folded, &cyclotomic_polynomial(m));
        CyclotomicInt { m, coeffs: folded }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Coordinates in the basis 1, ζ, ..., ζ^{φ(m)-1}; trailing zeros trimmed.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    /// Complex conjugation ζ -> ζ^{-1}.
    pub fn conj(&self) -> Self {
        let m = self.m as usize;
        let mut v = vec![0i64; m];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[(m - i % m) % m] += c;
        }
        Self::from_group_ring(self.m, &v)
    }

    /// Image under Z[ζ_m] -> Z[ζ_M], ζ_m -> ζ_M^{M/m}. Requires `m | big_m`.
    pub fn lift(&self, big_m: u64) -> Self {
        assert_eq!(big_m % self.m, 0, "conductor {} does not divide {}", self.m, big_m);
        let step = (big_m / self.m) as usize;
        let mut v = vec![0i64; big_m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[(i * step) % big_m as usize] += c;
        }
        Self::from_group_ring(big_m, &v)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.m == other.m {
            return (self.clone(), other.clone());
        }
        let m = arith::lcm(self.m, other.m);
        (self.lift(m), other.lift(m))
    }

    /// `self * conj(self)`, which is a nonnegative real element.
    pub fn norm_squared(&self) -> Self {
        self * &self.conj()
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        let (a, b) = self.common(rhs);
        let n = a.coeffs.len().max(b.coeffs.len());
        let v: Vec<i64> = (0..n)
            .map(|i| a.coeffs.get(i).unwrap_or(&0) + b.coeffs.get(i).unwrap_or(&0))
            .collect();
        CyclotomicInt::from_group_ring(a.m, &v)
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        let (a, b) = self.common(rhs);
        if a.is_zero() || b.is_zero() {
            return CyclotomicInt::zero(a.m);
        }
        let mut v = vec![0i64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        CyclotomicInt::from_group_ring(a.m, &v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CyclotomicInt {
            type Output = CyclotomicInt;
            fn $f(self, rhs: CyclotomicInt) -> CyclotomicInt {
                (&self).$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).iter().any(|&c| c == -2));
    }

    #[test]
    fn roots_of_unity_relations() {
        for m in 1..=24u64 {
            let z = CyclotomicInt::zeta_pow(m, 1);
            let mut acc = CyclotomicInt::one(m);
            let mut sum = CyclotomicInt::zero(m);
            for _ in 0..m {
                sum = &sum + &acc;
                acc = &acc * &z;
            }
            assert_eq!(acc, CyclotomicInt::one(m), "ζ^m = 1 for m = {m}");
            let expected = if m == 1 { 1 } else { 0 };
            assert_eq!(sum.as_integer(), Some(expected), "Σ ζ^i for m = {m}");
        }
    }

    #[test]
    fn conjugate_of_zeta_is_inverse() {
        for m in 2..=20u64 {
            for k in 0..m {
                let z = CyclotomicInt::zeta_pow(m, k);
                assert_eq!(z.norm_squared(), CyclotomicInt::one(m));
            }
        }
    }

    #[test]
    fn lift_is_a_ring_map() {
        let a = CyclotomicInt::from_group_ring(3, &[2, -1, 5]);
        let b = CyclotomicInt::from_group_ring(3, &[0, 4]);
        let big = 12;
        assert_eq!((&a * &b).lift(big), &a.lift(big) * &b.lift(big));
        assert_eq!((&a + &b).lift(big), &a.lift(big) + &b.lift(big));
        // mixed conductors add in the common field
        let c = CyclotomicInt::zeta_pow(4, 1);
        assert_eq!((&a + &c).conductor(), 12);
    }
}

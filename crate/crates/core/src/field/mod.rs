//! Finite fields F_{p^n} with enumerable elements.
//!
//! Elements are stored as coordinate vectors in the power basis of a fixed
//! irreducible modulus. Each coordinate vector also has a canonical integer
//! *index* `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`; the counting code works on
//! indices directly, using discrete-log, antilog and Zech tables built once
//! at construction. The tables are shared behind an `Arc`, so cloning a
//! [`FieldDesc`] is cheap and the descriptor is immutable afterwards.

mod character;
mod cyclotomic;
pub(crate) mod fpoly;

pub use character::{jacobi_sum, MultChar};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith;

/// Largest field order for which tables are built.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

/// Raw element index, see the module docs.
pub type ElemIdx = u32;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("modulus must be monic of degree {degree} with coefficients in [0, {p})")]
    MalformedModulus { p: u64, degree: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("field of order {p}^{n} exceeds the enumeration bound {bound}")]
    NoFieldTooLarge { p: u64, n: u32, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("discrete logarithm of zero")]
    ZeroArgument,
    #[error("expected {n} coordinates in [0, {p})")]
    BadCoordinates { p: u64, n: u32 },
    #[error("character order {order} does not divide q - 1 = {q_minus_one}")]
    BadCharacterOrder { order: u64, q_minus_one: u64 },
    #[error("character index {index} is not below its order {order}")]
    BadCharacterIndex { index: u64, order: u64 },
    #[error("trivial character where a nontrivial one is required")]
    TrivialCharacter,
    #[error("a Jacobi sum needs at least two characters")]
    TooFewCharacters,
}

/// Identity of a field, carried by every element so mixed-field
/// operations are caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldTag {
    p: u64,
    n: u32,
    modulus_code: u64,
}

struct Tables {
    /// `exp[k]` is the index of `g^k`, `0 <= k < q - 1`.
    exp: Vec<ElemIdx>,
    /// `log[idx]`; `NONE` at zero.
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`; `NONE` when `1 + g^k = 0`.
    zech: Vec<u32>,
}

/// A finite field F_{p^n} with a verified irreducible modulus and
/// multiplicative generator.
#[derive(Clone)]
pub struct FieldDesc {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: ElemIdx,
    tag: FieldTag,
    tables: Arc<Tables>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator_coeffs())
            .finish()
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag
    }
}

impl Eq for FieldDesc {}

/// An element of a [`FieldDesc`], as power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    tag: FieldTag,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }
}

impl FieldDesc {
    /// Builds F_{p^n}. Without an explicit modulus the first irreducible
    /// monic polynomial is taken, ordering candidates by their lower
    /// coefficients read as a base-p integer (constant term least
    /// significant). `modulus` is given low-to-high and includes the
    /// leading 1.
    pub fn new(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<Self, FieldError> {
        Self::with_bound(p, n, modulus, DEFAULT_FIELD_BOUND)
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    pub fn with_bound(
        p: u64,
        n: u32,
        modulus: Option<&[u64]>,
        bound: u64,
    ) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = match p.checked_pow(n) {
            Some(q) if q <= bound && q <= u32::MAX as u64 => q,
            _ => return Err(FieldError::NoFieldTooLarge { p, n, bound }),
        };

        let modulus = match modulus {
            Some(m) => {
                let well_formed = m.len() == n as usize + 1
                    && m[n as usize] == 1
                    && m.iter().all(|&c| c < p);
                if !well_formed {
                    return Err(FieldError::MalformedModulus { p, degree: n });
                }
                if !fpoly::is_irreducible(m, p) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => first_irreducible(p, n, q),
        };

        let modulus_code = encode(&modulus[..n as usize], p);
        let tag = FieldTag { p, n, modulus_code };
        let generator = find_generator(p, n, q, &modulus);
        let tables = build_tables(p, n, q, &modulus, generator);
        Ok(FieldDesc {
            p,
            n,
            q,
            modulus,
            generator,
            tag,
            tables: Arc::new(tables),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, low-to-high including the leading coefficient.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn generator(&self) -> FieldElement {
        self.to_element(self.generator)
    }

    pub fn generator_idx(&self) -> ElemIdx {
        self.generator
    }

    fn generator_coeffs(&self) -> Vec<u64> {
        decode(self.generator, self.p, self.n)
    }

    pub fn zero(&self) -> FieldElement {
        self.to_element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.to_element(1)
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, c: i64) -> FieldElement {
        self.to_element(self.int_idx(c))
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadCoordinates {
                p: self.p,
                n: self.n,
            });
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
            tag: self.tag,
        })
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as ElemIdx).map(move |i| self.to_element(i))
    }

    pub fn to_element(&self, idx: ElemIdx) -> FieldElement {
        FieldElement {
            coeffs: decode(idx, self.p, self.n),
            tag: self.tag,
        }
    }

    pub fn index_of(&self, x: &FieldElement) -> Result<ElemIdx, FieldError> {
        self.check(x)?;
        Ok(encode(&x.coeffs, self.p) as ElemIdx)
    }

    fn check(&self, x: &FieldElement) -> Result<(), FieldError> {
        if x.tag == self.tag {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.to_element(self.add_idx(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.to_element(self.sub_idx(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.to_element(self.neg_idx(self.index_of(a)?)))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.to_element(self.mul_idx(self.index_of(a)?, self.index_of(b)?)))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        let i = self.inv_idx(self.index_of(a)?).ok_or(FieldError::DivisionByZero)?;
        Ok(self.to_element(i))
    }

    /// `a^e`; negative exponents are inverse powers.
    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        let i = self
            .pow_idx(self.index_of(a)?, e)
            .ok_or(FieldError::DivisionByZero)?;
        Ok(self.to_element(i))
    }

    /// The unique `k` in `[0, q - 1)` with `generator^k = x`.
    pub fn discrete_log(&self, x: &FieldElement) -> Result<u64, FieldError> {
        self.log_idx(self.index_of(x)?)
            .ok_or(FieldError::ZeroArgument)
    }

    // Index-level arithmetic. Callers guarantee `idx < q`.

    #[inline]
    pub fn int_idx(&self, c: i64) -> ElemIdx {
        c.rem_euclid(self.p as i64) as ElemIdx
    }

    #[inline]
    pub fn log_idx(&self, a: ElemIdx) -> Option<u64> {
        match self.tables.log[a as usize] {
            NONE => None,
            l => Some(l as u64),
        }
    }

    /// `generator^k` for any `k >= 0`.
    #[inline]
    pub fn exp_idx(&self, k: u64) -> ElemIdx {
        self.tables.exp[(k % (self.q - 1)) as usize]
    }

    #[inline]
    pub fn add_idx(&self, a: ElemIdx, b: ElemIdx) -> ElemIdx {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let t = &self.tables;
        let qm1 = (self.q - 1) as u32;
        let la = t.log[a as usize];
        let lb = t.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + qm1 - la };
        match t.zech[d as usize] {
            NONE => 0,
            z => {
                let s = la as u64 + z as u64;
                t.exp[(s % qm1 as u64) as usize]
            }
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: ElemIdx) -> ElemIdx {
        if a == 0 || self.p == 2 {
            return a;
        }
        let half = (self.q - 1) / 2;
        let la = self.tables.log[a as usize] as u64;
        self.exp_idx(la + half)
    }

    #[inline]
    pub fn sub_idx(&self, a: ElemIdx, b: ElemIdx) -> ElemIdx {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub fn mul_idx(&self, a: ElemIdx, b: ElemIdx) -> ElemIdx {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.tables;
        self.exp_idx(t.log[a as usize] as u64 + t.log[b as usize] as u64)
    }

    #[inline]
    pub fn inv_idx(&self, a: ElemIdx) -> Option<ElemIdx> {
        let la = self.log_idx(a)?;
        Some(self.exp_idx(self.q - 1 - la))
    }

    pub fn pow_idx(&self, a: ElemIdx, e: i64) -> Option<ElemIdx> {
        if a == 0 {
            return match e.signum() {
                0 => Some(1),
                1 => Some(0),
                _ => None,
            };
        }
        let qm1 = (self.q - 1) as i128;
        let la = self.tables.log[a as usize] as i128;
        let k = (la * e as i128).rem_euclid(qm1);
        Some(self.exp_idx(k as u64))
    }

    /// Quadratic character on an index: 0, 1 or -1. Odd characteristic only.
    #[inline]
    pub fn quadratic_idx(&self, a: ElemIdx) -> i64 {
        match self.log_idx(a) {
            None => 0,
            Some(l) if l % 2 == 0 => 1,
            Some(_) => -1,
        }
    }
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

fn decode(mut idx: ElemIdx, p: u64, n: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(idx as u64 % p);
        idx /= p as ElemIdx;
    }
    out
}

fn first_irreducible(p: u64, n: u32, q: u64) -> Vec<u64> {
    (0..q)
        .map(|code| {
            let mut m = decode(code as ElemIdx, p, n);
            m.push(1);
            m
        })
        .find(|m| fpoly::is_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn find_generator(p: u64, n: u32, q: u64, modulus: &[u64]) -> ElemIdx {
    let order = q - 1;
    let cofactors: Vec<u64> = arith::prime_divisors(order)
        .into_iter()
        .map(|l| order / l)
        .collect();
    (1..q as ElemIdx)
        .find(|&idx| {
            let x = decode(idx, p, n);
            cofactors
                .iter()
                .all(|&e| fpoly::pow_mod(&x, e as u128, modulus, p) != [1])
        })
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(p: u64, n: u32, q: u64, modulus: &[u64], generator: ElemIdx) -> Tables {
    let order = (q - 1) as usize;
    let g = decode(generator, p, n);
    let mut exp = Vec::with_capacity(order);
    let mut log = vec![NONE; q as usize];
    let mut cur: Vec<u64> = vec![1];
    for k in 0..order {
        let mut padded = cur.clone();
        padded.resize(n as usize, 0);
        let idx = encode(&padded, p) as ElemIdx;
        exp.push(idx);
        log[idx as usize] = k as u32;
        cur = fpoly::mul_mod(&cur, &g, modulus, p);
    }
    let zech = exp
        .iter()
        .map(|&v| {
            // Adding 1 only touches the constant coordinate.
            let c0 = v as u64 % p;
            let w = v as u64 - c0 + (c0 + 1) % p;
            log[w as usize]
        })
        .collect();
    Tables { exp, log, zech }
}

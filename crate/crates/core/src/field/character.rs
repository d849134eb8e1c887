//! Multiplicative characters of F_q and Jacobi sums over them.

use super::{CyclotomicInt, ElemIdx, FieldDesc, FieldElement, FieldError};
use crate::arith;

/// A character χ of F_q^* with values in μ_m, `χ(g) = ζ_m^index` for the
/// field's fixed generator `g`, extended by χ(0) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultChar {
    field: FieldDesc,
    order: u64,
    index: u64,
}

impl MultChar {
    pub fn new(field: &FieldDesc, order: u64, index: u64) -> Result<Self, FieldError> {
        let q_minus_one = field.q() - 1;
        if order == 0 || q_minus_one % order != 0 {
            return Err(FieldError::BadCharacterOrder { order, q_minus_one });
        }
        if index >= order {
            return Err(FieldError::BadCharacterIndex { index, order });
        }
        Ok(MultChar {
            field: field.clone(),
            order,
            index,
        })
    }

    /// The quadratic character of an odd-order field.
    pub fn quadratic(field: &FieldDesc) -> Result<Self, FieldError> {
        Self::new(field, 2, 1)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    /// The `m` with values in μ_m (not necessarily the exact order of χ).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    /// `k` with χ(x) = ζ_m^k, or `None` at zero.
    #[inline]
    pub fn exponent_at(&self, x: ElemIdx) -> Option<u64> {
        self.field
            .log_idx(x)
            .map(|l| ((self.index as u128 * l as u128) % self.order as u128) as u64)
    }

    /// Same as [`exponent_at`](Self::exponent_at) but as a power of ζ_big_m.
    #[inline]
    fn exponent_in(&self, x: ElemIdx, big_m: u64) -> Option<u64> {
        self.exponent_at(x).map(|k| k * (big_m / self.order))
    }

    pub fn eval(&self, x: &FieldElement) -> Result<CyclotomicInt, FieldError> {
        let idx = self.field.index_of(x)?;
        Ok(match self.exponent_at(idx) {
            None => CyclotomicInt::zero(self.order),
            Some(k) => CyclotomicInt::zeta_pow(self.order, k),
        })
    }

    /// Pointwise product, valued in μ_lcm.
    pub fn mul(&self, other: &MultChar) -> Result<MultChar, FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        let m = arith::lcm(self.order, other.order);
        let index = (self.index * (m / self.order) + other.index * (m / other.order)) % m;
        MultChar::new(&self.field, m, index)
    }

    pub fn pow(&self, k: u64) -> MultChar {
        MultChar {
            field: self.field.clone(),
            order: self.order,
            index: ((self.index as u128 * k as u128) % self.order as u128) as u64,
        }
    }

    pub fn conj(&self) -> MultChar {
        MultChar {
            field: self.field.clone(),
            order: self.order,
            index: (self.order - self.index) % self.order,
        }
    }
}

fn rotate_add(acc: &mut [i64], src: &[i64], shift: usize) {
    let m = acc.len();
    for (i, &c) in src.iter().enumerate() {
        if c != 0 {
            acc[(i + shift) % m] += c;
        }
    }
}

/// J(χ_1, ..., χ_k) = Σ_{x_1 + ... + x_k = 1} Π χ_i(x_i), summed exactly in
/// Z[ζ_m] with m the lcm of the character orders.
///
/// Two characters are summed directly. For more, the constrained sum is
/// accumulated one coordinate at a time: after `j` characters the table
/// holds Σ_{x_1 + ... + x_j = s} Π χ_i(x_i) for every `s`.
pub fn jacobi_sum(chars: &[MultChar]) -> Result<CyclotomicInt, FieldError> {
    if chars.len() < 2 {
        return Err(FieldError::TooFewCharacters);
    }
    let field = chars[0].field();
    if chars.iter().any(|c| c.field() != field) {
        return Err(FieldError::FieldMismatch);
    }
    if chars.iter().any(MultChar::is_trivial) {
        return Err(FieldError::TrivialCharacter);
    }
    let m = chars.iter().fold(1, |acc, c| arith::lcm(acc, c.order()));
    let q = field.q() as ElemIdx;
    let mu = m as usize;
    let one: ElemIdx = 1;

    if chars.len() == 2 {
        let mut acc = vec![0i64; mu];
        for x in 0..q {
            let y = field.sub_idx(one, x);
            if let (Some(a), Some(b)) = (chars[0].exponent_in(x, m), chars[1].exponent_in(y, m)) {
                acc[((a + b) % m) as usize] += 1;
            }
        }
        return Ok(CyclotomicInt::from_group_ring(m, &acc));
    }

    // partial[s] is a group-ring vector of length m
    let mut partial: Vec<Vec<i64>> = (0..q)
        .map(|s| {
            let mut v = vec![0i64; mu];
            if let Some(k) = chars[0].exponent_in(s, m) {
                v[k as usize] = 1;
            }
            v
        })
        .collect();
    let last = chars.len() - 1;
    for chi in &chars[1..last] {
        let mut next = vec![vec![0i64; mu]; q as usize];
        for x in 1..q {
            let shift = chi.exponent_in(x, m).expect("x is nonzero") as usize;
            for s in 0..q {
                let t = field.add_idx(s, x);
                rotate_add(&mut next[t as usize], &partial[s as usize], shift);
            }
        }
        partial = next;
    }
    let mut acc = vec![0i64; mu];
    for x in 1..q {
        let shift = chars[last].exponent_in(x, m).expect("x is nonzero") as usize;
        let s = field.sub_idx(one, x);
        rotate_add(&mut acc, &partial[s as usize], shift);
    }
    Ok(CyclotomicInt::from_group_ring(m, &acc))
}

//! Affine counts of a_0 X_0^{m_0} + ... + a_r X_r^{m_r} = b by character sums.
//!
//! With m | q - 1, #{x : x^m = c} = Σ_{χ^m = 1} χ(c) (χ_0(0) = 1, χ(0) = 0
//! otherwise). Substituting this for every coordinate turns the count into
//!
//!   Σ_{χ_0..χ_r} Π χ_i(a_i)^{-1} Σ_{u_0 + ... + u_r = b} Π χ_i(u_i),
//!
//! and the inner sum is q^r when every χ_i is trivial, vanishes when only
//! some are, and otherwise reduces to a Jacobi sum:
//!   b != 0:  Π χ_i(b) · J(χ_0, ..., χ_r)
//!   b  = 0:  0 unless Π χ_i is trivial, then χ_r(-1) (q - 1) J(χ_0, ..., χ_{r-1}).
//! A Jacobi sum of a single character is 1.

use std::collections::HashMap;

use super::CountError;
use crate::arith;
use crate::field::{jacobi_sum, CyclotomicInt, ElemIdx, FieldDesc, FieldElement, MultChar};

pub fn count_diagonal_charsum(
    coeffs: &[FieldElement],
    exponents: &[u64],
    b: &FieldElement,
    field: &FieldDesc,
) -> Result<u64, CountError> {
    if coeffs.is_empty() || coeffs.len() != exponents.len() {
        return Err(CountError::InvalidInput(
            "need one exponent per coefficient and at least one variable".into(),
        ));
    }
    if exponents.contains(&0) {
        return Err(CountError::InvalidInput("exponents must be positive".into()));
    }
    let a: Vec<ElemIdx> = coeffs
        .iter()
        .map(|c| field.index_of(c))
        .collect::<Result<_, _>>()?;
    if a.contains(&0) {
        return Err(CountError::InvalidInput("coefficients must be nonzero".into()));
    }
    let b = field.index_of(b)?;

    let q = field.q();
    let qm1 = q - 1;
    // x -> x^m and x -> x^gcd(m, q-1) have the same fibre sizes
    let m: Vec<u64> = exponents.iter().map(|&e| arith::gcd(e, qm1)).collect();
    let big_m = m.iter().fold(1, |acc, &x| arith::lcm(acc, x));
    let r = m.len() - 1;
    let minus_one = field.neg_idx(1);

    // χ_i with index j_i / m_i, written over μ_M.
    let chi = |i: usize, j: u64| -> MultChar {
        MultChar::new(field, big_m, j * (big_m / m[i])).expect("M divides q - 1")
    };
    let exp_at = |c: &MultChar, x: ElemIdx| c.exponent_at(x).expect("nonzero argument");

    let mut jacobi_cache: HashMap<Vec<u64>, CyclotomicInt> = HashMap::new();
    let mut jacobi = |chars: &[MultChar]| -> CyclotomicInt {
        if chars.len() == 1 {
            return CyclotomicInt::one(big_m);
        }
        let key: Vec<u64> = chars.iter().map(MultChar::index).collect();
        jacobi_cache
            .entry(key)
            .or_insert_with(|| jacobi_sum(chars).expect("nontrivial characters"))
            .clone()
    };

    let mut total = CyclotomicInt::from_int(big_m, (q as i64).pow(r as u32));
    let mut idx = vec![1u64; r + 1];
    if m.contains(&1) {
        // some coordinate only admits the trivial character
        return Ok(total.as_integer().expect("integer") as u64);
    }
    loop {
        let chars: Vec<MultChar> = idx.iter().enumerate().map(|(i, &j)| chi(i, j)).collect();
        // weight Π χ_i(a_i)^{-1}
        let weight_exp: u64 = chars
            .iter()
            .zip(&a)
            .map(|(c, &ai)| big_m - exp_at(c, ai))
            .sum();
        let term = if b != 0 {
            let shift: u64 = chars.iter().map(|c| exp_at(c, b)).sum();
            let j = jacobi(&chars);
            Some(&j * &CyclotomicInt::zeta_pow(big_m, weight_exp + shift))
        } else {
            let product_trivial = chars.iter().map(MultChar::index).sum::<u64>() % big_m == 0;
            if r == 0 || !product_trivial {
                None
            } else {
                let j = jacobi(&chars[..r]);
                let sign = exp_at(&chars[r], minus_one);
                let scaled = &j * &CyclotomicInt::from_int(big_m, qm1 as i64);
                Some(&scaled * &CyclotomicInt::zeta_pow(big_m, weight_exp + sign))
            }
        };
        if let Some(t) = term {
            total = &total + &t;
        }

        // next tuple of nontrivial indices
        let mut i = 0;
        loop {
            if i > r {
                let n = total
                    .as_integer()
                    .expect("character-sum count must be a rational integer");
                return Ok(u64::try_from(n).expect("counts are nonnegative"));
            }
            idx[i] += 1;
            if idx[i] < m[i] {
                break;
            }
            idx[i] = 1;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{count_affine, Ambient, Polynomial, Term, VarietySpec};
    use super::*;

    fn oracle(a: &[i64], m: &[u32], b: i64, field: &FieldDesc) -> u64 {
        let n = a.len();
        let mut terms: Vec<Term> = a
            .iter()
            .zip(m)
            .enumerate()
            .map(|(i, (&c, &e))| {
                let mut ex = vec![0; n];
                ex[i] = e;
                Term::new(c, ex)
            })
            .collect();
        terms.push(Term::new(-b, vec![0; n]));
        let base = FieldDesc::prime(field.p()).unwrap();
        let spec =
            VarietySpec::new(Ambient::Affine(n), vec![Polynomial::new(terms)], base, "diag").unwrap();
        count_affine(&spec, field).unwrap()
    }

    fn charsum(a: &[i64], m: &[u32], b: i64, field: &FieldDesc) -> u64 {
        let coeffs: Vec<_> = a.iter().map(|&c| field.from_int(c)).collect();
        let exps: Vec<u64> = m.iter().map(|&e| e as u64).collect();
        count_diagonal_charsum(&coeffs, &exps, &field.from_int(b), field).unwrap()
    }

    #[test]
    fn spec_examples() {
        let f3 = FieldDesc::prime(3).unwrap();
        assert_eq!(charsum(&[1, 1], &[2, 2], 0, &f3), 1);
        let f7 = FieldDesc::prime(7).unwrap();
        assert_eq!(charsum(&[1, 1], &[3, 3], 1, &f7), oracle(&[1, 1], &[3, 3], 1, &f7));
        for q_field in [FieldDesc::prime(11).unwrap(), FieldDesc::new(3, 2, None).unwrap()] {
            let q = q_field.q();
            assert_eq!(charsum(&[1, 2, 1], &[1, 1, 1], 1, &q_field), q * q);
            assert_eq!(charsum(&[1], &[1], 0, &q_field), 1);
        }
    }

    #[test]
    fn exhaustive_two_variable_grid() {
        for &(p, n) in &[(3u64, 1u32), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let f = FieldDesc::new(p, n, None).unwrap();
            let qm1 = f.q() - 1;
            let exps: Vec<u32> = (1..=qm1 as u32 + 1).collect();
            for &m0 in &exps {
                for &m1 in &exps {
                    for &(a0, a1, b) in &[(1, 1, 0), (1, 1, 1), (2, 1, 3), (1, -1, 0), (1, 3, 2)] {
                        if (a0 as i64).rem_euclid(p as i64) == 0 || (a1 as i64).rem_euclid(p as i64) == 0 {
                            continue;
                        }
                        assert_eq!(
                            charsum(&[a0, a1], &[m0, m1], b, &f),
                            oracle(&[a0, a1], &[m0, m1], b, &f),
                            "q = {} m = ({m0}, {m1}) a = ({a0}, {a1}) b = {b}",
                            f.q()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn three_and_four_variables() {
        let f13 = FieldDesc::prime(13).unwrap();
        for &(m, b) in &[([3u32, 4, 6], 0i64), ([12, 12, 12], 5), ([2, 3, 4], 1), ([6, 6, 6], 0)] {
            assert_eq!(charsum(&[1, 2, 5], &m, b, &f13), oracle(&[1, 2, 5], &m, b, &f13));
        }
        let f7 = FieldDesc::prime(7).unwrap();
        assert_eq!(
            charsum(&[1, 1, 1, 1], &[3, 3, 3, 3], 0, &f7),
            oracle(&[1, 1, 1, 1], &[3, 3, 3, 3], 0, &f7)
        );
        assert_eq!(
            charsum(&[1, 3, 1, 2], &[2, 3, 6, 2], 4, &f7),
            oracle(&[1, 3, 1, 2], &[2, 3, 6, 2], 4, &f7)
        );
    }

    #[test]
    fn rejects_bad_input() {
        let f7 = FieldDesc::prime(7).unwrap();
        let z = f7.zero();
        let one = f7.one();
        assert!(count_diagonal_charsum(&[z], &[2], &one, &f7).is_err());
        assert!(count_diagonal_charsum(&[one.clone()], &[0], &one, &f7).is_err());
        assert!(count_diagonal_charsum(&[one.clone()], &[2, 3], &one, &f7).is_err());
        let f5 = FieldDesc::prime(5).unwrap();
        assert!(matches!(
            count_diagonal_charsum(&[f5.one()], &[2], &one, &f7),
            Err(CountError::Field(_))
        ));
    }
}

//! Counters for y^2 = f(x) curves via the quadratic character.

use super::CountError;
use crate::field::{fpoly, ElemIdx, FieldDesc};

/// |E(F)| for `y^2 = x^3 + a x + b`, point at infinity included.
pub fn count_elliptic(a: i64, b: i64, field: &FieldDesc) -> Result<u64, CountError> {
    let p = field.p();
    if p == 2 || p == 3 {
        return Err(CountError::BadCharacteristic(p));
    }
    let pi = p as i128;
    let disc = (4 * (a as i128).pow(3) + 27 * (b as i128).pow(2)).rem_euclid(pi);
    if disc == 0 {
        return Err(CountError::SingularCurve(p));
    }
    let ai = field.int_idx(a);
    let bi = field.int_idx(b);
    let mut affine: i64 = 0;
    for x in 0..field.q() as ElemIdx {
        let x3 = field.mul_idx(field.mul_idx(x, x), x);
        let rhs = field.add_idx(field.add_idx(x3, field.mul_idx(ai, x)), bi);
        affine += 1 + field.quadratic_idx(rhs);
    }
    Ok(affine as u64 + 1)
}

/// Points on the smooth projective model of `y^2 = f(x)`, `f` low-to-high
/// with integer coefficients and squarefree modulo p (odd p only).
///
/// The affine part is summed with the quadratic character; the model has
/// one point at infinity for odd `deg f` and `1 + η(lead)` for even `deg f`.
pub fn count_hyperelliptic(f: &[i64], field: &FieldDesc) -> Result<u64, CountError> {
    let p = field.p();
    if p == 2 {
        return Err(CountError::BadCharacteristic(p));
    }
    let reduced: Vec<u64> = f.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let deg = fpoly::degree(&reduced).ok_or_else(|| {
        CountError::InvalidInput("f vanishes modulo p".to_string())
    })?;
    if deg == 0 {
        return Err(CountError::InvalidInput("f is constant modulo p".to_string()));
    }
    let derivative: Vec<u64> = reduced
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (c * i as u64) % p)
        .collect();
    if fpoly::degree(&fpoly::gcd(&reduced[..=deg], &derivative, p)) != Some(0) {
        return Err(CountError::SingularCurve(p));
    }
    let coeffs: Vec<ElemIdx> = reduced[..=deg].iter().map(|&c| c as ElemIdx).collect();
    let mut affine: i64 = 0;
    for x in 0..field.q() as ElemIdx {
        // Horner
        let v = coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| field.add_idx(field.mul_idx(acc, x), c));
        affine += 1 + field.quadratic_idx(v);
    }
    let at_infinity = if deg % 2 == 1 {
        1
    } else {
        1 + field.quadratic_idx(coeffs[deg])
    };
    Ok((affine + at_infinity) as u64)
}

#[cfg(test)]
mod tests {
    use super::super::{count_affine, count_projective, VarietySpec};
    use super::*;

    #[test]
    fn elliptic_examples_over_f5() {
        let f5 = FieldDesc::prime(5).unwrap();
        assert_eq!(count_elliptic(1, 1, &f5).unwrap(), 9);
        assert_eq!(count_elliptic(-1, 0, &f5).unwrap(), 8);
        assert_eq!(count_elliptic(0, 0, &f5).unwrap_err(), CountError::SingularCurve(5));
    }

    #[test]
    fn elliptic_rejects_small_characteristic() {
        let f3 = FieldDesc::prime(3).unwrap();
        assert_eq!(count_elliptic(1, 1, &f3).unwrap_err(), CountError::BadCharacteristic(3));
    }

    #[test]
    fn elliptic_matches_weierstrass_closure() {
        for p in [5u64, 7, 11, 13] {
            for n in 1..=2u32 {
                let ext = FieldDesc::new(p, n, None).unwrap();
                for a in -2..=2i64 {
                    for b in -2..=2i64 {
                        let Ok(fast) = count_elliptic(a, b, &ext) else {
                            continue;
                        };
                        let spec = VarietySpec::weierstrass(a, b, FieldDesc::prime(p).unwrap())
                            .unwrap();
                        assert_eq!(fast, count_projective(&spec, &ext).unwrap(), "{a} {b} {p}^{n}");
                    }
                }
            }
        }
    }

    #[test]
    fn hyperelliptic_matches_affine_enumeration_plus_infinity() {
        let cases: &[(&[i64], u64)] = &[
            (&[1, 0, 0, 0, 0, 1], 7),
            (&[1, 0, 0, 0, 0, 1], 11),
            (&[0, -1, 0, 1], 5),
            (&[1, 2, 0, 1, 0, 3], 13),
            (&[3, 0, 1, 0, 0, 0, 1], 7),
            (&[1, 0, 0, 0, 0, 0, 3], 5),
        ];
        for &(f, p) in cases {
            let base = FieldDesc::prime(p).unwrap();
            let spec = VarietySpec::hyperelliptic_affine(f, base).unwrap();
            for n in 1..=2u32 {
                let ext = FieldDesc::new(p, n, None).unwrap();
                let affine = count_affine(&spec, &ext).unwrap() as i64;
                let deg = f.len() - 1;
                let lead = ext.int_idx(f[deg]);
                let inf = if deg % 2 == 1 { 1 } else { 1 + ext.quadratic_idx(lead) };
                assert_eq!(count_hyperelliptic(f, &ext).unwrap() as i64, affine + inf);
            }
        }
    }

    #[test]
    fn hyperelliptic_singular_is_rejected() {
        let f7 = FieldDesc::prime(7).unwrap();
        // x^2 (x - 1) has a double root
        assert_eq!(
            count_hyperelliptic(&[0, 0, -1, 1], &f7).unwrap_err(),
            CountError::SingularCurve(7)
        );
    }
}

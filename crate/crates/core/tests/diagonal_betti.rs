use num_bigint::BigInt;

use zetaforge_core::counting::{count_diagonal_charsum, count_series_with, CountConfig, CountSeries, VarietySpec};
use zetaforge_core::field::FieldDesc;
use zetaforge_core::weil::{betti_profile, infer_factorization, verify, VerifyInput};
use zetaforge_core::zeta::{
    curve_numerator_checked, diagonal_betti_profile, diagonal_middle_degree, reconstruct_rational,
};

/// Points of `Σ x_i^m = 0` in `P^r(F_{p^n})` from the affine cone count.
fn projective_fermat_charsum(p: u64, n: u32, m: u64, r: usize) -> BigInt {
    let f = FieldDesc::new(p, n, None).unwrap();
    let coeffs = vec![f.one(); r + 1];
    let exps = vec![m; r + 1];
    let cone = count_diagonal_charsum(&coeffs, &exps, &f.zero(), &f).unwrap();
    BigInt::from((cone - 1) / (f.q() - 1))
}

#[test]
fn fermat_cubic_curve_middle_degree() {
    let spec = VarietySpec::fermat(&[1, 1, 1], 3, FieldDesc::prime(7).unwrap()).unwrap();
    let series = count_series_with(&spec, 6, &CountConfig::reduced()).unwrap();
    for n in 1..=4u32 {
        assert_eq!(series.counts[n as usize - 1], projective_fermat_charsum(7, n, 3, 2));
    }
    let z = reconstruct_rational(&series, 2, 2).unwrap();
    assert_eq!(z.num().deg() as u64, diagonal_middle_degree(3, 2));
    let f = infer_factorization(&z, 1, 7).unwrap();
    let expected = diagonal_betti_profile(3, 2);
    assert_eq!(betti_profile(&f, Some(&expected)).agrees, Some(true));
}

#[test]
fn quadric_surface_betti_profile() {
    // x^2 + y^2 + z^2 + w^2 over F_3: B = 1, 0, 1 + A, 0, 1 with A = 1
    let counts: Vec<BigInt> = (1..=6).map(|n| projective_fermat_charsum(3, n, 2, 3)).collect();
    let spec = VarietySpec::fermat(&[1, 1, 1, 1], 2, FieldDesc::prime(3).unwrap()).unwrap();
    let direct = count_series_with(&spec, 3, &CountConfig::reduced()).unwrap();
    assert_eq!(direct.counts, counts[..3]);
    let series = CountSeries::new(3, counts);
    let z = reconstruct_rational(&series, 0, 4).unwrap();
    assert_eq!(z.den().deg(), 4);
    let expected = diagonal_betti_profile(2, 3);
    assert_eq!(expected, vec![1, 0, 2, 0, 1]);
    let mut input = VerifyInput::new(&z, 2, 3);
    input.counts = Some(&series);
    input.expected_betti = Some(expected);
    let report = verify(input);
    assert!(report.all_hold(), "{report:?}");
    assert_eq!(report.w5_betti.agrees, Some(true));
}

#[test]
fn fermat_quartic_curve_genus_three() {
    let a = diagonal_middle_degree(4, 2);
    assert_eq!(a, 6);
    let counts: Vec<BigInt> = (1..=4).map(|n| projective_fermat_charsum(13, n, 4, 2)).collect();
    let p1 = curve_numerator_checked(3, 13, &counts).unwrap();
    assert_eq!(p1.deg() as u64, a);
    let z = zetaforge_core::zeta::RationalZeta::new(p1, zetaforge_core::zeta::curve_denominator(13)).unwrap();
    let series = CountSeries::new(13, counts);
    let mut input = VerifyInput::new(&z, 1, 13);
    input.counts = Some(&series);
    input.genus = Some(3);
    input.expected_betti = Some(diagonal_betti_profile(4, 2));
    let report = verify(input);
    assert!(report.all_hold(), "{report:?}");
    assert_eq!(report.w2_functional.chi, -4);
    assert_eq!(report.evidence.point_bounds, Some(true));
}

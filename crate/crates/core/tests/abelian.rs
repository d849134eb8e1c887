use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use zetaforge_core::poly::QPoly;
use zetaforge_core::weil::{betti_profile, check_functional_equation, check_riemann_hypothesis};
use zetaforge_core::zeta::{
    abelian_exterior_factor, abelian_factorization, assemble_alternating_product, counts_from_zeta,
};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `P_1 = T^{2g} f(1/T)` with `f(x) = x^g h(x + q/x)`, `h` monic with the given roots.
fn p1_from_real_roots(q: i64, roots: &[i64]) -> QPoly {
    let mut p = QPoly::one();
    for &t in roots {
        p = &p * &QPoly::from_ints(&[1, -t, q]);
    }
    p
}

fn random_p1(rng: &mut StdRng, g: usize) -> (i64, QPoly) {
    let q = [2i64, 3, 4, 5, 7, 8, 9][rng.gen_range(0..7)];
    let bound = (4.0 * q as f64).sqrt().floor() as i64;
    let roots: Vec<i64> = (0..g).map(|_| rng.gen_range(-bound..=bound)).collect();
    (q, p1_from_real_roots(q, &roots))
}

/// Power sums of inverse roots, written independently of the library.
fn power_sums(p: &QPoly, k: usize) -> Vec<BigRational> {
    let c: Vec<BigRational> = (0..=k).map(|i| p.coeff(i)).collect();
    let mut s = vec![BigRational::zero(); k + 1];
    for n in 1..=k {
        // Σ_{j=0}^{n-1} c_j s_{n-j} + n c_n = 0
        let mut acc = &c[n] * BigRational::from_integer(BigInt::from(n));
        for j in 1..n {
            acc += &c[j] * &s[n - j];
        }
        s[n] = -acc;
    }
    s
}

/// Elementary symmetric functions `e_0..e_r` from power sums `p_1..p_r`.
fn elementary(p: &[BigRational], r: usize) -> Vec<BigRational> {
    let mut e = vec![BigRational::one()];
    for k in 1..=r {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    e
}

#[test]
fn exterior_degrees_are_binomial() {
    let mut rng = StdRng::seed_from_u64(11);
    for g in 0..=4usize {
        let (_, p1) = random_p1(&mut rng, g);
        for r in 0..=2 * g {
            let pr = abelian_exterior_factor(&p1, r).unwrap();
            assert_eq!(pr.deg(), binom(2 * g, r), "g = {g}, r = {r}");
            assert!(pr.coeff(0).is_one());
            assert!(pr.is_integral());
        }
    }
}

#[test]
fn exterior_factors_match_power_sum_route() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..12 {
        let g = rng.gen_range(1..=3);
        let (_, p1) = random_p1(&mut rng, g);
        for r in 1..=2 * g {
            let pr = abelian_exterior_factor(&p1, r).unwrap();
            let deg = binom(2 * g, r);
            // Tr(π^n | ∧^r) = e_r(a_1^n, ..., a_{2g}^n)
            let s = power_sums(&p1, deg * 2 * g);
            let traces: Vec<BigRational> = (1..=deg)
                .map(|n| {
                    let pb: Vec<BigRational> = (0..=r).map(|k| if k == 0 { BigRational::zero() } else { s[n * k].clone() }).collect();
                    elementary(&pb, r)[r].clone()
                })
                .collect();
            let mut ps = vec![BigRational::zero()];
            ps.extend(traces);
            // P_r(T) = Σ (-1)^k e_k T^k
            let e = elementary(&ps, deg);
            let oracle = QPoly::new(
                e.iter()
                    .enumerate()
                    .map(|(k, x)| if k % 2 == 0 { x.clone() } else { -x.clone() })
                    .collect(),
            );
            assert_eq!(pr, oracle, "P_1 = {p1}, r = {r}");
        }
    }
}

#[test]
fn assembled_abelian_zeta_counts_group_orders() {
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..20 {
        let g = rng.gen_range(1..=3);
        let (q, p1) = random_p1(&mut rng, g);
        assert!(check_riemann_hypothesis(&p1, 1, q as u64).holds);
        let f = abelian_factorization(q as u64, &p1).unwrap();
        let z = assemble_alternating_product(&f).unwrap();
        let counts = counts_from_zeta(&z, 6).unwrap();
        let s = power_sums(&p1, 6 * 2 * g);
        for n in 1..=6 {
            // |A(F_{q^n})| = Π (1 - a_i^n) = Σ_r (-1)^r e_r(a^n)
            let pb: Vec<BigRational> = (0..=2 * g).map(|k| if k == 0 { BigRational::zero() } else { s[n * k].clone() }).collect();
            let e = elementary(&pb, 2 * g);
            let order = e
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (r, x)| if r % 2 == 0 { acc + x } else { acc - x });
            assert_eq!(BigRational::from_integer(counts[n - 1].clone()), order, "P_1 = {p1}, n = {n}");
        }
        let fe = check_functional_equation(&z, g as u32, q as u64);
        assert!(fe.holds);
        let betti = betti_profile(&f, None);
        let expected: Vec<Option<usize>> = (0..=2 * g).map(|r| Some(binom(2 * g, r))).collect();
        assert_eq!(betti.observed, expected);
    }
}

#[test]
fn elliptic_times_elliptic_profile() {
    let p1 = p1_from_real_roots(5, &[-3, 2]);
    let f = abelian_factorization(5, &p1).unwrap();
    assert_eq!(
        betti_profile(&f, Some(&[1, 4, 6, 4, 1])).agrees,
        Some(true)
    );
    assert_eq!(f.get(4), Some(&QPoly::from_ints(&[1, -25])));
    for (r, p) in &f.factors {
        assert!(check_riemann_hypothesis(p, *r as u32, 5).holds, "P_{r} = {p}");
    }
}

//! Exterior-power factors `P_r` of an abelian variety from `P_1`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{WeilFactorization, ZetaError};
use crate::linalg::{self, Matrix};
use crate::poly::QPoly;

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// r-th compound: the matrix of r×r minors, rows and columns in lexicographic order.
fn compound(m: &Matrix, r: usize) -> Matrix {
    let idx = subsets(m.len(), r);
    idx.iter()
        .map(|rows| {
            idx.iter()
                .map(|cols| {
                    let minor: Matrix = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
                        .collect();
                    linalg::determinant(minor)
                })
                .collect()
        })
        .collect()
}

/// `P_r(T) = Π (1 - a_{i_1} ⋯ a_{i_r} T)` over the r-element subsets of the
/// inverse roots `a_i` of `p1`. Computed as the reversed characteristic
/// polynomial of the r-th compound of the companion matrix of
/// `T^{deg} p1(1/T)`, whose eigenvalues are exactly the `a_i`.
pub fn abelian_exterior_factor(p1: &QPoly, r: usize) -> Result<QPoly, ZetaError> {
    let n = p1.deg();
    if r > n {
        return Err(ZetaError::DegreeOutOfRange { r, max: n });
    }
    if !p1.coeff(0).is_one() {
        return Err(ZetaError::InvalidInput("P_1(0) must be 1".into()));
    }
    if r == 0 {
        return Ok(QPoly::from_ints(&[1, -1]));
    }
    // f(x) = x^n + c_1 x^{n-1} + ... + c_n
    let mut companion: Matrix = vec![vec![BigRational::zero(); n]; n];
    for i in 1..n {
        companion[i][i - 1] = BigRational::one();
    }
    for i in 0..n {
        companion[i][n - 1] = -p1.coeff(n - i);
    }
    let cm = compound(&companion, r);
    let size = cm.len();
    Ok(linalg::charpoly(&cm).reversed(size))
}

/// `P_0, ..., P_{2g}` for an abelian variety of dimension `g` over `F_q`
/// with `deg p1 = 2g`.
pub fn abelian_factorization(q: u64, p1: &QPoly) -> Result<WeilFactorization, ZetaError> {
    let n = p1.deg();
    if n % 2 == 1 {
        return Err(ZetaError::InvalidInput(format!("P_1 has odd degree {n}")));
    }
    let g = n / 2;
    let mut f = WeilFactorization::new(g, q);
    for r in 0..=n {
        f = f.with(r, abelian_exterior_factor(p1, r)?);
    }
    Ok(f)
}

//! Exact linear algebra over Q.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::QPoly;

pub type Matrix = Vec<Vec<BigRational>>;

/// Some solution of `a x = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(mut a: Matrix, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        b.swap(row, pr);
        let inv = BigRational::one() / &a[row][col];
        for c in col..cols {
            a[row][c] *= &inv;
        }
        b[row] *= &inv;
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..cols {
                let t = &f * &a[row][c];
                a[r][c] -= t;
            }
            let t = &f * &b[row];
            b[r] -= t;
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if b[row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = b[r].clone();
    }
    Some(x)
}

pub fn determinant(mut a: Matrix) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pr != col {
            a.swap(pr, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = BigRational::one() / &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// `det(x I - m)` by reduction to upper Hessenberg form.
pub fn charpoly(m: &Matrix) -> QPoly {
    let n = m.len();
    let mut h = m.clone();
    for k in 1..n.saturating_sub(1) {
        let Some(i) = (k..n).find(|&i| !h[i][k - 1].is_zero()) else {
            continue;
        };
        if i != k {
            h.swap(i, k);
            for row in h.iter_mut() {
                row.swap(i, k);
            }
        }
        let inv = BigRational::one() / &h[k][k - 1];
        for i in k + 1..n {
            if h[i][k - 1].is_zero() {
                continue;
            }
            let u = &h[i][k - 1] * &inv;
            for c in 0..n {
                let t = &u * &h[k][c];
                h[i][c] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[k] += t;
            }
        }
    }
    let x = QPoly::monomial(1);
    let mut p = vec![QPoly::one()];
    for k in 0..n {
        let lin = &x - &QPoly::constant(h[k][k].clone());
        let mut next = &lin * &p[k];
        let mut t = BigRational::one();
        for i in 1..=k {
            t *= &h[k - i + 1][k - i];
            if t.is_zero() {
                break;
            }
            let c = &t * &h[k - i][k];
            if !c.is_zero() {
                next = &next - &p[k - i].scale(&c);
            }
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

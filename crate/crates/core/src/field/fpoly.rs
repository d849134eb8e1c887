//! Dense polynomials over a prime field F_p, coefficients low-to-high.
//! Only what field construction needs: reduction, products, gcd, powering.

pub(crate) type Fp = Vec<u64>;

fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod_p(result, base, p);
        }
        base = mul_mod_p(base, base, p);
        e >>= 1;
    }
    result
}

pub(crate) fn trim(a: &mut Fp) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn rem(a: &[u64], f: &[u64], p: u64) -> Fp {
    let mut r: Fp = a.to_vec();
    trim(&mut r);
    let df = degree(f).expect("division by zero polynomial");
    let lead_inv = inv_mod_p(f[df], p);
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let factor = mul_mod_p(r[dr], lead_inv, p);
        let shift = dr - df;
        for (i, &fc) in f.iter().enumerate().take(df + 1) {
            let sub = mul_mod_p(factor, fc, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_p(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Fp {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_mod(base: &[u64], mut e: u128, f: &[u64], p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    rem(&result, f, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut out: Fp = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let mut x: Fp = a.to_vec();
    let mut y: Fp = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test: `f` of degree `n >= 1` is irreducible iff
/// gcd(f, x^(p^i) - x) = 1 for every `1 <= i <= n/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let x: Fp = vec![0, 1];
    let mut power = x.clone();
    for _ in 1..=n / 2 {
        power = pow_mod(&power, p as u128, f, p);
        let g = gcd(f, &sub(&power, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

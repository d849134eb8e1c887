//! JSON encoding of library values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use zetaforge_core::poly::QPoly;
use zetaforge_core::weil::WeilReport;
use zetaforge_core::zeta::RationalZeta;

/// A JSON number when it fits in i64, a decimal string otherwise.
pub fn int(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

/// Integers as [`int`], other rationals as `"a/b"`.
pub fn rational(x: &BigRational) -> Value {
    if x.is_integer() {
        int(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

/// Coefficients low-to-high; the zero polynomial is `[0]`.
pub fn poly(p: &QPoly) -> Value {
    if p.is_zero() {
        return json!([0]);
    }
    Value::Array(p.coeffs().iter().map(rational).collect())
}

pub fn zeta(z: &RationalZeta) -> Value {
    json!({ "num": poly(z.num()), "den": poly(z.den()) })
}

pub fn tool() -> Value {
    json!({ "name": "zetaforge", "version": env!("CARGO_PKG_VERSION") })
}

pub fn weil(r: &WeilReport) -> Value {
    let w1 = &r.w1_rational;
    let w2 = &r.w2_functional;
    let w4 = &r.w4_rh;
    let w5 = &r.w5_betti;
    let ev = &r.evidence;
    json!({
        "all_hold": r.all_hold(),
        "w1_rationality": {
            "holds": w1.holds,
            "num_deg": w1.num_deg,
            "den_deg": w1.den_deg,
            "counts_checked": w1.counts_checked,
            "first_mismatch": w1.first_mismatch,
        },
        "w2_functional_equation": {
            "holds": w2.holds,
            "sign": w2.sign,
            "chi": w2.chi,
            "residual": poly(&w2.residual),
        },
        "w3_integrality": { "holds": r.w3_integral },
        "w4_riemann_hypothesis": {
            "holds": w4.holds,
            "reason": w4.reason,
            "factors": w4.factors.iter().map(|f| json!({
                "r": f.r,
                "factor": poly(&f.factor),
                "holds": f.verdict.holds,
                "method": f.verdict.method.as_str(),
                "witness": f.verdict.witness,
            })).collect::<Vec<_>>(),
        },
        "w5_betti": {
            "observed": w5.observed,
            "expected": w5.expected,
            "agrees": w5.agrees,
        },
        "evidence": {
            "counts": ints(&ev.counts),
            "predicted": ints(&ev.predicted),
            "factorization": ev.factorization,
            "point_bounds": ev.point_bounds,
            "genus": ev.genus_chi.map(|(g, _)| g),
            "chi_matches_genus": ev.genus_chi.map(|(_, ok)| ok),
        },
    })
}

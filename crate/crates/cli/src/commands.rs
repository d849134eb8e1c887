//! The four subcommands. Each returns its report and exit status.

use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use zetaforge_core::counting::{
    closed_point_degrees, count_elliptic, count_hyperelliptic, count_series_with, CountConfig,
    CountError, CountSeries,
};
use zetaforge_core::field::FieldDesc;
use zetaforge_core::hasse_weil::{euler_partial_value, IntegerCurve, LSeries, LocalStatus};
use zetaforge_core::weil::{verify, VerifyInput};
use zetaforge_core::zeta::{
    curve_denominator, curve_numerator_checked, reconstruct_rational, RationalZeta,
    WeilFactorization,
};

use crate::error::{CliError, ExitCode};
use crate::input::{CurveSpec, Document, SpecFile};
use crate::report;

pub struct Outcome {
    pub report: Value,
    pub code: ExitCode,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            code: ExitCode::Ok,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    pub ext_max: Option<usize>,
    pub budget: u64,
    pub threads: usize,
}

/// How the zeta function is to be determined from counts.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZetaOptions {
    pub caps: Option<(usize, usize)>,
    pub genus: Option<usize>,
}

/// N_1..N_k for a spec. Curve descriptions go through the character-sum
/// counters; everything else through reduced enumeration.
pub fn count_spec(spec: &SpecFile, k: usize, opts: &CountOptions) -> Result<(CountSeries, &'static str), CliError> {
    let Some(curve) = &spec.curve else {
        let variety = spec.variety()?;
        let config = CountConfig {
            budget: opts.budget,
            partitions: opts.threads.max(1),
            ..CountConfig::reduced()
        };
        return Ok((count_series_with(&variety, k, &config)?, "enumeration"));
    };
    spec.base_field()?;
    let mut counts = Vec::with_capacity(k);
    for n in 1..=k as u32 {
        let ext = FieldDesc::new(spec.field.p, n * spec.field.n, None)?;
        if ext.q() > opts.budget {
            return Err(CountError::BudgetExceeded {
                needed: ext.q() as u128,
                budget: opts.budget,
            }
            .into());
        }
        let c = match curve {
            CurveSpec::Elliptic { a, b } => count_elliptic(*a, *b, &ext)?,
            CurveSpec::Hyperelliptic { f } => count_hyperelliptic(f, &ext)?,
        };
        counts.push(BigInt::from(c));
    }
    let method = match curve {
        CurveSpec::Elliptic { .. } => "elliptic-character-sum",
        CurveSpec::Hyperelliptic { .. } => "hyperelliptic-character-sum",
    };
    Ok((CountSeries::new(spec.q(), counts), method))
}

pub fn run_count(doc: &Document, opts: &CountOptions) -> Result<Outcome, CliError> {
    let Document::Spec(spec) = doc else {
        return Err(CliError::input("count needs a variety specification"));
    };
    let k = opts.ext_max.unwrap_or(4);
    if k == 0 {
        return Err(CliError::input("--ext-max must be positive"));
    }
    let (series, method) = count_spec(spec, k, opts)?;
    let closed = closed_point_degrees(&series)?;
    Ok(Outcome::ok(json!({
        "command": "count",
        "tool": report::tool(),
        "label": spec.label,
        "q": series.q,
        "method": method,
        "counts": report::ints(&series.counts),
        "closed_points": report::ints(&closed),
    })))
}

struct Fitted {
    label: Option<String>,
    series: CountSeries,
    count_method: Option<&'static str>,
    zeta: RationalZeta,
    fit: &'static str,
    genus: Option<usize>,
    /// Dimension implied by the input, if any.
    dim: Option<usize>,
}

fn fit(doc: &Document, zopts: &ZetaOptions, copts: &CountOptions) -> Result<Fitted, CliError> {
    let (label, hint, dim) = match doc {
        Document::Spec(s) => (Some(s.label.clone()), s.genus, Some(s.dimension()?)),
        Document::Counts(c) => (c.label.clone(), None, c.dim),
        Document::Zeta(_) => return Err(CliError::input("input is already a zeta function")),
    };
    let genus = zopts.genus.or(hint);
    let needed = match (zopts.caps, genus) {
        (Some((a, b)), _) => a + b + 2,
        (None, Some(g)) => g,
        (None, None) => {
            return Err(CliError::input(
                "the genus is not inferred: pass --genus, --num-deg/--den-deg, or a genus hint in the spec file",
            ))
        }
    };
    let k = copts.ext_max.unwrap_or(needed);
    let (series, count_method) = match doc {
        Document::Spec(s) => {
            let (series, m) = count_spec(s, k, copts)?;
            (series, Some(m))
        }
        Document::Counts(c) => {
            let mut series = c.series()?;
            series.counts.truncate(k);
            (series, None)
        }
        Document::Zeta(_) => unreachable!(),
    };
    let (zeta, fit, genus) = match zopts.caps {
        Some((a, b)) => (reconstruct_rational(&series, a, b)?, "rational-fit", None),
        None => {
            let g = genus.expect("checked above");
            let p1 = curve_numerator_checked(g, series.q, &series.counts)?;
            let z = RationalZeta::new(p1, curve_denominator(series.q))?;
            (z, "curve-functional-equation", Some(g))
        }
    };
    let dim = dim.or(genus.map(|_| 1));
    Ok(Fitted {
        label,
        series,
        count_method,
        zeta,
        fit,
        genus,
        dim,
    })
}

pub fn run_zeta(doc: &Document, zopts: &ZetaOptions, copts: &CountOptions) -> Result<Outcome, CliError> {
    let f = fit(doc, zopts, copts)?;
    Ok(Outcome::ok(json!({
        "command": "zeta",
        "tool": report::tool(),
        "label": f.label,
        "q": f.series.q,
        "count_method": f.count_method,
        "method": f.fit,
        "genus": f.genus,
        "counts": report::ints(&f.series.counts),
        "zeta": report::zeta(&f.zeta),
    })))
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub dim: Option<usize>,
    pub expected_betti: Option<Vec<usize>>,
}

fn curve_betti(genus: Option<usize>, dim: usize) -> Option<Vec<usize>> {
    genus.filter(|_| dim == 1).map(|g| vec![1, 2 * g, 1])
}

pub fn run_verify(
    doc: &Document,
    vopts: &VerifyOptions,
    zopts: &ZetaOptions,
    copts: &CountOptions,
) -> Result<Outcome, CliError> {
    let missing_dim = || CliError::input("dimension unknown: pass --dim");
    let (label, q, dim, zeta, series, factors, genus, expected) = match doc {
        Document::Zeta(z) => {
            let zeta = RationalZeta::new(z.num()?, z.den()?)?;
            let dim = vopts.dim.unwrap_or(z.dim);
            let factors = z.factors()?.map(|fs| {
                fs.into_iter()
                    .fold(WeilFactorization::new(dim, z.q), |acc, (r, p)| acc.with(r, p))
            });
            let genus = zopts.genus.or(z.genus);
            let expected = z.expected_betti.clone().or_else(|| curve_betti(genus, dim));
            (z.label.clone(), z.q, dim, zeta, z.series()?, factors, genus, expected)
        }
        _ => {
            let f = fit(doc, zopts, copts)?;
            let dim = vopts.dim.or(f.dim).ok_or_else(missing_dim)?;
            let genus = f.genus.or(zopts.genus);
            let expected = curve_betti(genus, dim);
            (f.label, f.series.q, dim, f.zeta, Some(f.series), None, genus, expected)
        }
    };
    let mut input = VerifyInput::new(&zeta, dim, q);
    input.counts = series.as_ref();
    input.factors = factors;
    input.genus = genus;
    input.expected_betti = vopts.expected_betti.clone().or(expected);
    let weil = verify(input);
    let code = if weil.all_hold() {
        ExitCode::Ok
    } else {
        ExitCode::ConjectureFailed
    };
    Ok(Outcome {
        report: json!({
            "command": "verify",
            "tool": report::tool(),
            "label": label,
            "q": q,
            "dim": dim,
            "zeta": report::zeta(&zeta),
            "weil": report::weil(&weil),
        }),
        code,
    })
}

#[derive(Debug, Clone)]
pub struct LseriesOptions<'a> {
    pub a: i64,
    pub b: i64,
    pub pmax: u64,
    pub nmax: usize,
    pub s: Option<i64>,
    pub csv: Option<&'a Path>,
    pub roots_csv: Option<&'a Path>,
}

pub fn run_lseries(opts: &LseriesOptions<'_>) -> Result<Outcome, CliError> {
    let curve = IntegerCurve::new(opts.a, opts.b)?;
    let l = LSeries::compute(curve, opts.pmax, opts.nmax)?;
    let primes: Vec<Value> = l
        .factors
        .values()
        .map(|f| match f.status {
            LocalStatus::Good { a_p } => json!({
                "p": f.p,
                "status": "good",
                "a_p": a_p,
                "polynomial": report::poly(&f.polynomial().expect("good prime")),
            }),
            LocalStatus::BadSkipped(reason) => json!({
                "p": f.p,
                "status": "bad",
                "reason": reason.as_str(),
            }),
        })
        .collect();
    let euler = match opts.s {
        None => Value::Null,
        Some(s) => {
            let factors: Vec<_> = l.factors.values().copied().collect();
            let v = euler_partial_value(&factors, s, opts.pmax)?;
            json!({
                "s": s,
                "pmax": opts.pmax,
                "value": report::rational(&v),
                "approx": format!("{:.12}", v.to_f64().unwrap_or(f64::NAN)),
            })
        }
    };
    if let Some(path) = opts.csv {
        let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
        w.write_record(["n", "a_n"]).map_err(csv_err)?;
        for (i, a) in l.coefficients.iter().enumerate() {
            w.write_record([(i + 1).to_string(), a.to_string()]).map_err(csv_err)?;
        }
        w.flush()?;
    }
    if let Some(path) = opts.roots_csv {
        let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
        w.write_record(["p", "a_p", "theta"]).map_err(csv_err)?;
        for f in l.factors.values().filter(|f| f.is_good()) {
            let x = f.a_p() as f64 / (2.0 * (f.p as f64).sqrt());
            let theta = x.clamp(-1.0, 1.0).acos();
            w.write_record([f.p.to_string(), f.a_p().to_string(), format!("{theta:.12}")])
                .map_err(csv_err)?;
        }
        w.flush()?;
    }
    Ok(Outcome::ok(json!({
        "command": "lseries",
        "tool": report::tool(),
        "curve": {
            "a": l.curve.a,
            "b": l.curve.b,
            "discriminant": report::int(&l.curve.discriminant),
        },
        "pmax": opts.pmax,
        "nmax": opts.nmax,
        "primes": primes,
        "coefficients": l.coefficients,
        "euler": euler,
    })))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::new(ExitCode::Failure, e.to_string())
}

/// Pretty JSON with a trailing newline.
pub fn write_report(report: &Value, out: &mut dyn Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, report).map_err(|e| CliError::new(ExitCode::Failure, e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

//! Input documents: variety specifications, count series and zeta files.

use std::path::Path;

use jsonschema::JSONSchema;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::Value;

use zetaforge_core::counting::{Ambient, CountSeries, Polynomial, Term, VarietySpec};
use zetaforge_core::field::FieldDesc;
use zetaforge_core::poly::QPoly;

use crate::error::{CliError, ExitCode};

pub const SPEC_SCHEMA: &str = include_str!("../schemas/spec.schema.json");
pub const COUNTS_SCHEMA: &str = include_str!("../schemas/counts.schema.json");
pub const ZETA_SCHEMA: &str = include_str!("../schemas/zeta.schema.json");
pub const REPORT_SCHEMA: &str = include_str!("../schemas/report.schema.json");

/// Validates `doc` against a schema given as JSON text.
pub fn validate(schema: &str, doc: &Value) -> Result<(), CliError> {
    let schema: Value = serde_json::from_str(schema).expect("bundled schema is valid JSON");
    let compiled = JSONSchema::compile(&schema).expect("bundled schema compiles");
    if let Err(errors) = compiled.validate(doc) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{}: {e}", e.instance_path))
            .collect();
        return Err(CliError::input(format!("schema validation failed: {}", msgs.join("; "))));
    }
    Ok(())
}

#[derive(Debug, Clone, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: u32,
    pub modulus: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct AmbientSpec {
    #[serde(rename = "type")]
    pub kind: String,
    pub vars: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TermSpec {
    pub c: i64,
    pub e: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct EquationSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveSpec {
    Elliptic { a: i64, b: i64 },
    Hyperelliptic { f: Vec<i64> },
}

#[derive(Debug, Clone, Deserialize)]
pub struct SpecFile {
    pub label: String,
    pub field: FieldSpec,
    pub ambient: AmbientSpec,
    pub equations: Vec<EquationSpec>,
    pub curve: Option<CurveSpec>,
    pub genus: Option<usize>,
}

impl SpecFile {
    pub fn base_field(&self) -> Result<FieldDesc, CliError> {
        Ok(FieldDesc::new(self.field.p, self.field.n, self.field.modulus.as_deref())?)
    }

    pub fn ambient(&self) -> Result<Ambient, CliError> {
        match self.ambient.kind.as_str() {
            "affine" => Ok(Ambient::Affine(self.ambient.vars)),
            "projective" => Ok(Ambient::Projective(self.ambient.vars - 1)),
            other => Err(CliError::input(format!("unknown ambient type {other:?}"))),
        }
    }

    pub fn variety(&self) -> Result<VarietySpec, CliError> {
        let equations = self
            .equations
            .iter()
            .map(|eq| Polynomial::new(eq.terms.iter().map(|t| Term::new(t.c, t.e.clone())).collect()))
            .collect();
        Ok(VarietySpec::new(self.ambient()?, equations, self.base_field()?, self.label.clone())?)
    }

    /// Curves have dimension 1; otherwise ambient dimension minus the
    /// number of equations.
    pub fn dimension(&self) -> Result<usize, CliError> {
        if self.curve.is_some() {
            return Ok(1);
        }
        Ok(self.ambient()?.dimension().saturating_sub(self.equations.len()))
    }

    pub fn q(&self) -> u64 {
        self.field.p.pow(self.field.n)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    pub fn to_bigint(&self) -> Result<BigInt, CliError> {
        match self {
            IntOrString::Int(i) => Ok(BigInt::from(*i)),
            IntOrString::Str(s) => s.parse().map_err(|_| CliError::input(format!("bad integer {s:?}"))),
        }
    }

    pub fn to_rational(&self) -> Result<BigRational, CliError> {
        match self {
            IntOrString::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            IntOrString::Str(s) => {
                let bad = || CliError::input(format!("bad rational {s:?}"));
                match s.split_once('/') {
                    None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
                    Some((n, d)) => {
                        let d: BigInt = d.parse().map_err(|_| bad())?;
                        if d == BigInt::from(0) {
                            return Err(bad());
                        }
                        Ok(BigRational::new(n.parse().map_err(|_| bad())?, d))
                    }
                }
            }
        }
    }
}

fn bigints(v: &[IntOrString]) -> Result<Vec<BigInt>, CliError> {
    v.iter().map(IntOrString::to_bigint).collect()
}

fn poly(v: &[IntOrString]) -> Result<QPoly, CliError> {
    Ok(QPoly::new(v.iter().map(IntOrString::to_rational).collect::<Result<_, _>>()?))
}

#[derive(Debug, Clone, Deserialize)]
pub struct CountsFile {
    pub label: Option<String>,
    pub q: u64,
    pub dim: Option<usize>,
    pub counts: Vec<IntOrString>,
}

impl CountsFile {
    pub fn series(&self) -> Result<CountSeries, CliError> {
        Ok(CountSeries::new(self.q, bigints(&self.counts)?))
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct ZetaPair {
    pub num: Vec<IntOrString>,
    pub den: Vec<IntOrString>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FactorSpec {
    pub r: usize,
    pub poly: Vec<IntOrString>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ZetaFile {
    pub label: Option<String>,
    pub q: u64,
    pub dim: usize,
    pub zeta: ZetaPair,
    pub factors: Option<Vec<FactorSpec>>,
    pub genus: Option<usize>,
    pub counts: Option<Vec<IntOrString>>,
    pub expected_betti: Option<Vec<usize>>,
}

impl ZetaFile {
    pub fn num(&self) -> Result<QPoly, CliError> {
        poly(&self.zeta.num)
    }

    pub fn den(&self) -> Result<QPoly, CliError> {
        poly(&self.zeta.den)
    }

    pub fn factors(&self) -> Result<Option<Vec<(usize, QPoly)>>, CliError> {
        self.factors
            .as_ref()
            .map(|fs| fs.iter().map(|f| Ok((f.r, poly(&f.poly)?))).collect())
            .transpose()
    }

    pub fn series(&self) -> Result<Option<CountSeries>, CliError> {
        self.counts
            .as_ref()
            .map(|c| Ok(CountSeries::new(self.q, bigints(c)?)))
            .transpose()
    }
}

#[derive(Debug, Clone)]
pub enum Document {
    Spec(SpecFile),
    Counts(CountsFile),
    Zeta(ZetaFile),
}

impl Document {
    /// Classifies by key (`zeta`, then `equations`/`ambient`, then
    /// `counts`), validates against the matching schema and deserializes.
    pub fn from_value(doc: Value) -> Result<Self, CliError> {
        let obj = doc
            .as_object()
            .ok_or_else(|| CliError::input("input must be a JSON object"))?;
        let parse_err = |e: serde_json::Error| CliError::input(e.to_string());
        if obj.contains_key("zeta") {
            validate(ZETA_SCHEMA, &doc)?;
            Ok(Document::Zeta(serde_json::from_value(doc).map_err(parse_err)?))
        } else if obj.contains_key("equations") || obj.contains_key("ambient") {
            validate(SPEC_SCHEMA, &doc)?;
            Ok(Document::Spec(serde_json::from_value(doc).map_err(parse_err)?))
        } else if obj.contains_key("counts") {
            validate(COUNTS_SCHEMA, &doc)?;
            Ok(Document::Counts(serde_json::from_value(doc).map_err(parse_err)?))
        } else {
            Err(CliError::input(
                "unrecognized input: expected a spec, a counts file or a zeta file",
            ))
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new(ExitCode::Failure, format!("{}: {e}", path.display())))?;
        let doc: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        Self::from_value(doc)
    }
}

//! The JSON document every command prints.

use pentagram_core::collineation::CubicPoly;
use pentagram_core::geom::{format_rational, Mat3, Point2, Polygon, Rational, Scalar};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// How a scalar appears in a report: rationals as `"p/q"` strings, floats as
/// JSON numbers.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl ToJson for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

pub trait ReportScalar: Scalar + ToJson {}
impl<S: Scalar + ToJson> ReportScalar for S {}

pub fn point<S: ToJson>(p: &Point2<S>) -> Value {
    json!([p.x.to_json(), p.y.to_json()])
}

pub fn points<S: ToJson>(ps: &[Point2<S>]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

pub fn polygon<S: Scalar + ToJson>(a: &Polygon<S>) -> Value {
    points(a.vertices())
}

pub fn matrix<S: ToJson>(m: &Mat3<S>) -> Value {
    Value::Array(m.rows.iter().map(|r| Value::Array(r.iter().map(ToJson::to_json).collect())).collect())
}

/// Coefficients from the leading 1 down to the constant term.
pub fn charpoly<S: Scalar + ToJson>(p: &CubicPoly<S>) -> Value {
    let mut out = vec![S::one().to_json()];
    out.extend(p.coefficients().iter().map(ToJson::to_json));
    Value::Array(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation: Option<f64>,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, deviation: Option<f64>, detail: impl Into<String>) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        Self { name: name.into(), status, deviation, detail: detail.into() }
    }

    pub fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status: Status::Skipped, deviation: None, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub sha256: String,
    pub vertices: usize,
    pub mode: &'static str,
}

impl InputSummary {
    pub fn new(raw: &[u8], name: Option<String>, vertices: usize, mode: &'static str) -> Self {
        Self { name, sha256: hex::encode(Sha256::digest(raw)), vertices, mode }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Field order is fixed by the struct, and `results` keeps insertion order,
/// so identical runs print identical bytes (unless timing is requested).
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: Value,
    pub input: InputSummary,
    pub results: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ReportDocument {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

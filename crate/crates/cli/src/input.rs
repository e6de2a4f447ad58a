//! Polygon documents: JSON (canonical) or `x,y` / `x y` lines.

use std::fmt;

use pentagram_core::geom::{format_rational, parse_rational, Point2, Polygon, Rational, Scalar};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeHint {
    Exact,
    Float,
}

impl ModeHint {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeHint::Exact => "exact",
            ModeHint::Float => "float",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coord {
    Exact(Rational),
    /// A JSON number with a fraction or exponent, or a token in exponent
    /// notation.
    Float(f64),
}

impl Coord {
    fn to_f64(&self) -> f64 {
        match self {
            Coord::Exact(r) => r.to_f64(),
            Coord::Float(x) => *x,
        }
    }

    /// Decimal literals are read as the decimal they spell, so `0.1` becomes
    /// `1/10` rather than the nearest binary fraction.
    fn to_rational(&self) -> Result<Rational, InputError> {
        match self {
            Coord::Exact(r) => Ok(r.clone()),
            Coord::Float(x) => parse_rational(&x.to_string())
                .or_else(|| Rational::from_f64_exact(*x))
                .ok_or_else(|| InputError(format!("{x} has no exact value"))),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Coord::Exact(r) => Value::String(format_rational(r)),
            Coord::Float(x) => json!(x),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Exact(r) => write!(f, "{}", format_rational(r)),
            Coord::Float(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonDocument {
    pub name: Option<String>,
    pub mode: Option<ModeHint>,
    pub vertices: Vec<[Coord; 2]>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

fn invalid(e: pentagram_core::Error) -> InputError {
    InputError(e.to_string())
}

fn coord_from_json(v: &Value) -> Result<Coord, InputError> {
    match v {
        Value::String(s) => match parse_rational(s) {
            Some(r) => Ok(Coord::Exact(r)),
            None => bad(format!("{s:?} is not a rational (expected \"p/q\", an integer or a decimal)")),
        },
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Coord::Exact(Rational::from_i64(i)))
            } else if let Some(x) = n.as_f64().filter(|x| x.is_finite()) {
                Ok(Coord::Float(x))
            } else {
                bad(format!("{n} is out of range"))
            }
        }
        other => bad(format!("coordinate must be a number or a string, got {other}")),
    }
}

fn coord_from_token(t: &str) -> Result<Coord, InputError> {
    if let Some(r) = parse_rational(t) {
        return Ok(Coord::Exact(r));
    }
    match t.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Coord::Float(x)),
        _ => bad(format!("{t:?} is not a number")),
    }
}

impl PolygonDocument {
    /// JSON if the text starts with `{`, otherwise one vertex per line.
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let doc = if text.trim_start().starts_with('{') {
            Self::parse_json(text)?
        } else {
            Self::parse_lines(text)?
        };
        if doc.vertices.len() < 3 {
            return bad(format!("{} vertices, at least 3 required", doc.vertices.len()));
        }
        Ok(doc)
    }

    fn parse_json(text: &str) -> Result<Self, InputError> {
        let v: Value = serde_json::from_str(text).map_err(|e| InputError(format!("invalid JSON: {e}")))?;
        let obj = v.as_object().ok_or_else(|| InputError("expected a JSON object".into()))?;
        let name = match obj.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(other) => return bad(format!("name must be a string, got {other}")),
        };
        let mode = match obj.get("mode").and_then(Value::as_str) {
            None => None,
            Some("exact") => Some(ModeHint::Exact),
            Some("float") => Some(ModeHint::Float),
            Some(other) => return bad(format!("unknown mode {other:?}")),
        };
        let list = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| InputError("missing \"vertices\" array".into()))?;
        let vertices = list
            .iter()
            .enumerate()
            .map(|(i, p)| match p.as_array().map(Vec::as_slice) {
                Some([x, y]) => Ok([coord_from_json(x)?, coord_from_json(y)?]),
                _ => bad(format!("vertex {i} must be an [x, y] pair")),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { name, mode, vertices })
    }

    fn parse_lines(text: &str) -> Result<Self, InputError> {
        let mut vertices = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> =
                line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
            let [x, y] = tokens.as_slice() else {
                return bad(format!("line {}: expected two coordinates", lineno + 1));
            };
            vertices.push([coord_from_token(x)?, coord_from_token(y)?]);
        }
        Ok(Self { name: None, mode: None, vertices })
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        if let Some(name) = &self.name {
            obj.insert("name".into(), json!(name));
        }
        if let Some(mode) = self.mode {
            obj.insert("mode".into(), json!(mode.as_str()));
        }
        let vertices = self.vertices.iter().map(|[x, y]| json!([x.to_json(), y.to_json()])).collect();
        obj.insert("vertices".into(), Value::Array(vertices));
        Value::Object(obj)
    }

    /// Exact unless a float coordinate appears or the document asks for
    /// floats.
    pub fn resolved_mode(&self) -> ModeHint {
        self.mode.unwrap_or_else(|| {
            let all_exact = self.vertices.iter().flatten().all(|c| matches!(c, Coord::Exact(_)));
            if all_exact { ModeHint::Exact } else { ModeHint::Float }
        })
    }

    pub fn polygon(&self, epsilon: f64) -> Result<AnyPolygon, InputError> {
        match self.resolved_mode() {
            ModeHint::Exact => {
                let pts = self
                    .vertices
                    .iter()
                    .map(|[x, y]| Ok(Point2::new(x.to_rational()?, y.to_rational()?)))
                    .collect::<Result<Vec<_>, InputError>>()?;
                Ok(AnyPolygon::Exact(Polygon::with_epsilon(pts, epsilon).map_err(invalid)?))
            }
            ModeHint::Float => {
                let pts = self.vertices.iter().map(|[x, y]| Point2::new(x.to_f64(), y.to_f64())).collect();
                Ok(AnyPolygon::Float(Polygon::with_epsilon(pts, epsilon).map_err(invalid)?))
            }
        }
    }
}

pub enum AnyPolygon {
    Exact(Polygon<Rational>),
    Float(Polygon<f64>),
}

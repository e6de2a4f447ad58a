use std::fmt;

use pentagram_core::axis_aligned::{collapse_point, detect, la_closed_form, verify_incidence, Phase, DEFAULT_MAX_M};
use pentagram_core::collineation::{
    charpoly, hull_image, verify_conservation, verify_duality, verify_small_n, ConservationReport,
};
use pentagram_core::geom::{Mat3, Point2, Polygon, Rational, Scalar};
use pentagram_core::limit::{limit_point, LimitConfig, LimitResult};
use pentagram_core::pentagram::{iterate, limit_by_iteration, orbit, IterationConfig};
use pentagram_core::sample::{random_hull_point, random_unimodular};
use pentagram_core::{Collineation, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::input::InputError;
use crate::report::{self, Check, ReportScalar, ToJson};
use crate::svg;

/// Deviation allowed between the two limit computations of `limit --method both`.
pub const CROSS_TOL: f64 = 1e-6;

const HULL_SAMPLES: usize = 20;
const CONJUGATIONS: usize = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// 2 for bad input, 3 when no eigenvector can be selected, 4 when iterating
/// the map breaks down.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::IterationFailed { .. } | Error::IterationLimitExceeded { .. } | Error::DegenerateOutput { .. } => 4,
        Error::NoCandidateInHull
        | Error::AmbiguousSelection { .. }
        | Error::NonSimpleEigenvalue { .. }
        | Error::NotAnEigenvalue { .. }
        | Error::EigenvectorAtInfinity { .. } => 3,
        _ => 2,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self { code: exit_code(&e), message: e.to_string() }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        Self::invalid(e.0)
    }
}

pub type Outcome = Result<(Value, Vec<Check>), CliError>;

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

pub fn la<S: ReportScalar>(a: &Polygon<S>, float: bool) -> Outcome {
    let l = Collineation::build(a)?;
    let p = l.charpoly();
    let results = if float {
        let lf = l.to_f64();
        obj(vec![
            ("n", json!(a.len())),
            ("matrix", report::matrix(&lf.matrix)),
            ("trace", lf.trace().to_json()),
            ("charpoly", report::charpoly(&lf.charpoly())),
        ])
    } else {
        obj(vec![
            ("n", json!(a.len())),
            ("matrix", report::matrix(&l.matrix)),
            ("trace", l.trace().to_json()),
            ("charpoly", report::charpoly(&p)),
        ])
    };
    Ok((results, vec![]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Eigen,
    Iterate,
    Both,
}

fn eigen_results<S: ReportScalar>(r: &LimitResult<S>) -> Vec<(&'static str, Value)> {
    let candidates = r
        .candidates
        .iter()
        .map(|c| {
            obj(vec![
                ("eigenvalue", json!(c.eigenvalue)),
                ("point", c.point.as_ref().map_or(Value::Null, report::point)),
                ("in_hull", json!(c.in_hull)),
                ("residual", json!(c.residual)),
                ("failure", c.failure.as_ref().map_or(Value::Null, |e| json!(e.to_string()))),
            ])
        })
        .collect();
    vec![
        ("limit", report::point(&r.limit)),
        ("eigenvalue", json!(r.eigenvalue)),
        ("eigenvalues", json!(r.eigenvalues)),
        ("complex_pair", json!(r.complex_pair)),
        ("largest_root", json!(r.largest_root)),
        ("matrix", report::matrix(&r.matrix)),
        ("charpoly", report::charpoly(&r.charpoly)),
        ("charpoly_residual", json!(r.charpoly_residual)),
        ("eigen_residual", json!(r.residual)),
        ("closed_form", json!(r.closed_form.to_string())),
        ("candidates", Value::Array(candidates)),
    ]
}

pub fn limit<S: ReportScalar>(a: &Polygon<S>, method: Method, tol: f64) -> Outcome {
    let iteration = IterationConfig::with_tol(tol);
    match method {
        Method::Iterate => {
            let p = limit_by_iteration(a, iteration)?;
            Ok((obj(vec![("limit", report::point(&p)), ("tol", json!(tol))]), vec![]))
        }
        Method::Eigen | Method::Both => {
            let cfg = LimitConfig { cross_check: method == Method::Both, iteration };
            let r = limit_point(a, &cfg)?;
            let mut fields = eigen_results(&r);
            let mut checks = vec![];
            if let Some(it) = &r.iteration {
                fields.push(("iteration_limit", report::point(&it.point)));
                fields.push(("cross_deviation", json!(it.deviation)));
                checks.push(Check::new(
                    "cross_deviation",
                    it.deviation < CROSS_TOL,
                    Some(it.deviation),
                    format!("eigenvector and iteration limits within {CROSS_TOL:e}"),
                ));
            }
            Ok((obj(fields), checks))
        }
    }
}

pub fn iterate_cmd<S: ReportScalar>(a: &Polygon<S>, k: usize, exact_steps: Option<usize>) -> Outcome {
    let exact = if S::is_exact() { exact_steps.unwrap_or(k).min(k) } else { k };
    let b = iterate(a, exact)?;
    let mut fields = vec![("k", json!(k)), ("exact_steps", json!(exact))];
    if exact == k {
        fields.push(("vertices", report::polygon(&b)));
        if S::is_exact() {
            fields.push(("approx", report::polygon(&b.to_f64())));
        }
    } else {
        let tail = iterate(&b.to_f64(), k - exact).map_err(|e| match e {
            Error::IterationFailed { step, source } => Error::IterationFailed { step: step + exact, source },
            e => e,
        })?;
        fields.push(("vertices", report::polygon(&tail)));
    }
    Ok((obj(fields), vec![]))
}

pub fn collapse<S: ReportScalar>(a: &Polygon<S>, verify: bool) -> Outcome {
    let s = detect(a)?;
    let phase = match s.phase {
        Phase::VerticalFirst => "vertical-first",
        Phase::HorizontalFirst => "horizontal-first",
    };
    let mut fields = vec![
        ("m", json!(s.m)),
        ("phase", json!(phase)),
        ("offset", json!(s.offset)),
        ("xs", Value::Array(s.xs.iter().map(ToJson::to_json).collect())),
        ("ys", Value::Array(s.ys.iter().map(ToJson::to_json).collect())),
        ("collapse_point", report::point(&collapse_point(&s))),
        ("matrix", report::matrix(&la_closed_form(&s).matrix)),
    ];
    let mut checks = vec![];
    if verify {
        let rep = verify_incidence(&s)?;
        fields.push(("steps", json!(rep.steps)));
        fields.push(("meet", report::point(&rep.meet)));
        checks.push(Check::new(
            "incidence",
            rep.holds,
            Some(rep.max_deviation),
            format!(
                "even vertices collinear: {}, odd vertices collinear: {}, lines meet at the collapse point: {}",
                rep.even_collinear, rep.odd_collinear, rep.meet_matches
            ),
        ));
    }
    Ok((obj(fields), checks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckName {
    Conservation,
    Trace,
    Invariance,
    Hull,
    Smalln,
    Duality,
    Incidence,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::Conservation,
        CheckName::Trace,
        CheckName::Invariance,
        CheckName::Hull,
        CheckName::Smalln,
        CheckName::Duality,
        CheckName::Incidence,
    ];

    fn name(self) -> &'static str {
        match self {
            CheckName::Conservation => "conservation",
            CheckName::Trace => "trace",
            CheckName::Invariance => "invariance",
            CheckName::Hull => "hull",
            CheckName::Smalln => "smalln",
            CheckName::Duality => "duality",
            CheckName::Incidence => "incidence",
        }
    }
}

/// Converts an integer matrix into the polygon's scalar type.
fn convert<S: Scalar>(m: &Mat3<Rational>) -> Mat3<S> {
    Mat3::from_fn(|i, j| S::from_f64_exact(m.get(i, j).to_f64()).expect("small integers are representable"))
}

fn relative_gap<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y.clone()).to_f64().abs() / (1.0 + x.to_f64().abs()))
        .fold(0.0, f64::max)
}

struct Verifier<'a, S> {
    a: &'a Polygon<S>,
    l: Collineation<S>,
    rng: ChaCha8Rng,
    corrupt_la: bool,
}

impl<S: ReportScalar> Verifier<'_, S> {
    fn run(&mut self, which: CheckName) -> Check {
        let name = which.name();
        let result = match which {
            CheckName::Conservation => self.conservation(),
            CheckName::Trace => Ok(self.trace()),
            CheckName::Invariance => self.invariance(),
            CheckName::Hull => self.hull(),
            CheckName::Smalln => self.small_n(),
            CheckName::Duality => self.duality(),
            CheckName::Incidence => self.incidence(),
        };
        match result {
            Ok(Some((pass, deviation, detail))) => Check::new(name, pass, deviation, detail),
            Ok(None) => Check::skipped(name, self.skip_reason(which)),
            Err(e) => Check::new(name, false, None, e.to_string()),
        }
    }

    fn skip_reason(&self, which: CheckName) -> String {
        match which {
            CheckName::Conservation => format!("needs at least 5 vertices, got {}", self.a.len()),
            CheckName::Hull => "polygon is not convex".into(),
            CheckName::Smalln => format!("needs a pentagon or hexagon, got n = {}", self.a.len()),
            CheckName::Incidence => "polygon is not axis-aligned with at most 12 vertices".into(),
            _ => "not applicable".into(),
        }
    }

    fn conservation(&self) -> Result<Option<(bool, Option<f64>, String)>, Error> {
        if self.a.len() < 5 {
            return Ok(None);
        }
        let mut rep = verify_conservation(self.a)?;
        if self.corrupt_la {
            let mut bad = rep.before.clone();
            bad.rows[0][0] = bad.rows[0][0].clone() + S::one();
            rep = ConservationReport::from_matrices(bad, rep.after, self.a.epsilon());
        }
        Ok(Some((rep.holds, Some(rep.max_deviation), "L of T(A) equals L_A".into())))
    }

    fn trace(&self) -> Option<(bool, Option<f64>, String)> {
        let n = self.a.len();
        let gap = (self.l.trace() - S::from_i64(2 * n as i64)).to_f64().abs();
        let pass = if S::is_exact() { gap == 0.0 } else { gap < 1e-9 * (1.0 + self.l.matrix.norm_inf()) };
        Some((pass, Some(gap), format!("trace {} against 2n = {}", self.l.trace(), 2 * n)))
    }

    fn invariance(&mut self) -> Result<Option<(bool, Option<f64>, String)>, Error> {
        let p = self.l.charpoly().coefficients();
        let mut worst: f64 = 0.0;
        let mut done = 0;
        let mut attempts = 0;
        while done < CONJUGATIONS {
            attempts += 1;
            if attempts > 50 * CONJUGATIONS {
                return Err(Error::SingularTransform);
            }
            let psi: Mat3<S> = convert(&random_unimodular(&mut self.rng));
            let Ok(b) = self.a.transform(&psi) else { continue };
            let Ok(lb) = Collineation::build(&b) else { continue };
            worst = worst.max(relative_gap(&p, &lb.charpoly().coefficients()));
            done += 1;
        }
        let pass = if S::is_exact() { worst == 0.0 } else { worst < 1e-9 };
        Ok(Some((pass, Some(worst), format!("{CONJUGATIONS} random unimodular transforms"))))
    }

    fn hull(&mut self) -> Result<Option<(bool, Option<f64>, String)>, Error> {
        if !self.a.is_convex() {
            return Ok(None);
        }
        let mut failures = 0;
        for _ in 0..HULL_SAMPLES {
            let q: Point2<S> = random_hull_point(&mut self.rng, self.a);
            let h = hull_image(self.a, &self.l, &q)?;
            if !(h.positive && h.consistent && h.image_in_hull) {
                failures += 1;
            }
        }
        let detail = format!("{failures} of {HULL_SAMPLES} hull points violate positivity or containment");
        Ok(Some((failures == 0, None, detail)))
    }

    fn small_n(&self) -> Result<Option<(bool, Option<f64>, String)>, Error> {
        if !matches!(self.a.len(), 5 | 6) {
            return Ok(None);
        }
        let rep = verify_small_n(self.a)?;
        let shift = rep.shift.map_or("none".to_string(), |s| s.to_string());
        let detail = format!("(L_A - 3I)(A) against T^{}(A), labeling shift {shift}", rep.steps);
        Ok(Some((rep.matched, None, detail)))
    }

    fn duality(&self) -> Result<Option<(bool, Option<f64>, String)>, Error> {
        let rep = verify_duality(self.a)?;
        let dev = rep.alpha1_deviation.max(rep.alpha2_deviation);
        Ok(Some((rep.holds, Some(dev), "L of both dual line sequences equals the transpose of L_A".into())))
    }

    fn incidence(&self) -> Result<Option<(bool, Option<f64>, String)>, Error> {
        let Ok(s) = detect(self.a) else { return Ok(None) };
        if s.m > DEFAULT_MAX_M {
            return Ok(None);
        }
        let rep = verify_incidence(&s)?;
        let detail = format!("parity classes of T^{}(A) meet at the collapse point", rep.steps);
        Ok(Some((rep.holds, Some(rep.max_deviation), detail)))
    }
}

pub fn verify<S: ReportScalar>(a: &Polygon<S>, checks: &[CheckName], seed: u64, corrupt_la: bool) -> Outcome {
    let l = Collineation::build(a)?;
    let mut v = Verifier { a, l, rng: ChaCha8Rng::seed_from_u64(seed), corrupt_la };
    let results = checks.iter().map(|&c| v.run(c)).collect();
    Ok((obj(vec![("seed", json!(seed)), ("charpoly", report::charpoly(&charpoly(&v.l.matrix)))]), results))
}

pub fn render<S: ReportScalar>(a: &Polygon<S>, k: usize, mark_limit: bool) -> Result<(String, Value), CliError> {
    let polys: Vec<Vec<Point2<f64>>> = orbit(a, k)?
        .iter()
        .map(|p| p.vertices().iter().map(Point2::to_f64).collect())
        .collect();
    let mark = if mark_limit { Some(limit_point(a, &LimitConfig::default())?.limit) } else { None };
    let results = obj(vec![
        ("polygons", json!(polys.len())),
        ("limit", mark.as_ref().map_or(Value::Null, report::point)),
    ]);
    Ok((svg::render(&polys, mark.as_ref()), results))
}

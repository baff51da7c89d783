//! Request and response types shared by the CLI and the HTTP API, and the
//! computations behind them.

use std::str::FromStr;

use horseshoe::continuation::{
    hat_loop_report, monodromy_with, ContinuationError, ContinuationOptions, MonodromyGrade,
    MonodromyStatus, ParamPath,
};
use horseshoe::cx::{c, C64};
use horseshoe::henon::{code_orbit_e, code_orbit_g, orbit_multipliers, per_n, w2_slack, HenonParams};
use horseshoe::scanner::{
    classify_parameter, classify_real_type, ClassifierOptions, RealType, ScanWindow, Verdict,
    Witness,
};
use horseshoe::symbolic::CodePermutation;
use serde::{Deserialize, Serialize};

/// Largest period accepted by `codes` and `loop` (`2^N` orbits).
pub const MAX_PERIOD: usize = 10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ServiceError {
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    NotReady(String),
    #[error("{0}")]
    Internal(String),
}

impl ServiceError {
    pub fn status(&self) -> u16 {
        match self {
            Self::BadRequest(_) => 400,
            Self::Invalid(_) => 422,
            Self::NotFound(_) => 404,
            Self::NotReady(_) => 409,
            Self::Internal(_) => 500,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Self::BadRequest(_) => "bad_request",
            Self::Invalid(_) => "invalid_input",
            Self::NotFound(_) => "not_found",
            Self::NotReady(_) => "not_ready",
            Self::Internal(_) => "internal",
        }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            error: ErrorDetail {
                code: self.code().into(),
                message: self.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: ErrorDetail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub code: String,
    pub message: String,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn finite(name: &str, v: f64) -> Result<f64, ServiceError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ServiceError::Invalid(format!("{name} must be finite")))
    }
}

/// Parse `re`, `re,im`, or `re+imi`.
pub fn parse_complex(s: &str) -> Result<C64, ServiceError> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let bad = || ServiceError::BadRequest(format!("cannot parse {s:?} as a complex number"));
    let z = match s.split_once(',') {
        Some((re, im)) => c(
            re.trim().parse().map_err(|_| bad())?,
            im.trim().parse().map_err(|_| bad())?,
        ),
        None => C64::from_str(s).map_err(|_| bad())?,
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err(ServiceError::Invalid(format!("{s:?} is not finite")))
    }
}

/// Parse `lo,hi`.
pub fn parse_range(s: &str) -> Result<(f64, f64), ServiceError> {
    let bad = || ServiceError::BadRequest(format!("expected lo,hi, got {s:?}"));
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

/// Parse `WxH`.
pub fn parse_size(s: &str) -> Result<(usize, usize), ServiceError> {
    let bad = || ServiceError::BadRequest(format!("expected WIDTHxHEIGHT, got {s:?}"));
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyResponse {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub verdict: Verdict,
    pub witness: Witness,
    /// Present for real parameters.
    pub real_type: Option<RealType>,
}

pub fn classify(params: HenonParams, n_max: usize) -> Result<ClassifyResponse, ServiceError> {
    if n_max == 0 || n_max > MAX_PERIOD {
        return Err(ServiceError::Invalid(format!("n_max must lie in 1..={MAX_PERIOD}")));
    }
    let opts = ClassifierOptions {
        n_max,
        ..ClassifierOptions::default()
    };
    let (class, real_type) = if params.is_real() {
        let r = classify_real_type(params, n_max.min(6), &opts);
        (r.classification, Some(r.real_type))
    } else {
        (classify_parameter(params, &opts), None)
    };
    Ok(ClassifyResponse {
        a: pair(params.a),
        b: pair(params.b),
        verdict: class.verdict,
        witness: class.witness,
        real_type,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodesRow {
    pub word: String,
    /// Absent when a point sits on a sector boundary.
    pub e_code: Option<String>,
    /// Absent outside the three-box region.
    pub g_codes: Option<Vec<String>>,
    pub unstable: usize,
    pub margin: f64,
    pub y: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodesResponse {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub n: usize,
    pub in_w2: bool,
    pub rows: Vec<CodesRow>,
}

/// `Per_N` with the sector coding and, inside the three-box region, the
/// three-box codings of every orbit.
pub fn codes(params: HenonParams, n: usize) -> Result<CodesResponse, ServiceError> {
    if n == 0 || n > MAX_PERIOD {
        return Err(ServiceError::Invalid(format!("N must lie in 1..={MAX_PERIOD}")));
    }
    let orbits = per_n(params, n).map_err(|e| ServiceError::Invalid(e.to_string()))?;
    let in_w2 = w2_slack(params).is_some_and(|s| s > 0.0);
    let rows = orbits
        .iter()
        .map(|o| {
            let info = orbit_multipliers(&o.orbit);
            CodesRow {
                word: o.word.to_string(),
                e_code: code_orbit_e(&o.orbit).ok().map(|w| w.to_string()),
                g_codes: in_w2
                    .then(|| code_orbit_g(&o.orbit).ok())
                    .flatten()
                    .map(|set| set.iter().map(ToString::to_string).collect()),
                unstable: info.unstable,
                margin: info.margin,
                y: o.orbit.y.iter().copied().map(pair).collect(),
            }
        })
        .collect();
    Ok(CodesResponse {
        a: pair(params.a),
        b: pair(params.b),
        n,
        in_w2,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseParams {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

/// A loop in parameter space. The path runs from `base` through the
/// waypoints; `closed` returns it to `base`. With `hat` the open path to a
/// real target is followed by its conjugate traversed backwards.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopRequest {
    pub base: BaseParams,
    pub waypoints: Vec<[f64; 4]>,
    #[serde(default)]
    pub closed: bool,
    #[serde(rename = "N", alias = "n", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub hat: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LoopDiagnostics {
    pub n: usize,
    pub orbits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accepted_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_landing_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grade: Option<MonodromyGrade>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_orbits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_type: Option<RealType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopResponse {
    pub permutation: Vec<[String; 2]>,
    pub cycles: String,
    #[serde(rename = "match")]
    pub automorphism: Option<String>,
    pub status: MonodromyStatus,
    pub diagnostics: LoopDiagnostics,
}

fn params_of(a: [f64; 2], b: [f64; 2]) -> Result<HenonParams, ServiceError> {
    let v = [a[0], a[1], b[0], b[1]];
    for x in v {
        finite("parameter", x)?;
    }
    Ok(HenonParams::new(c(a[0], a[1]), c(b[0], b[1])))
}

impl LoopRequest {
    pub fn from_json(text: &str) -> Result<Self, ServiceError> {
        serde_json::from_str(text).map_err(|e| ServiceError::BadRequest(format!("loop request: {e}")))
    }

    pub fn base_params(&self) -> Result<HenonParams, ServiceError> {
        params_of(self.base.a, self.base.b)
    }

    pub fn path(&self) -> Result<ParamPath, ServiceError> {
        let base = self.base_params()?;
        let mut points = vec![base];
        for w in &self.waypoints {
            let p = params_of([w[0], w[1]], [w[2], w[3]])?;
            if points.last() != Some(&p) {
                points.push(p);
            }
        }
        let invalid = |e: ContinuationError| ServiceError::Invalid(e.to_string());
        if self.hat {
            if self.closed {
                return Err(ServiceError::Invalid("a hat loop is built from an open path".into()));
            }
            ParamPath::new(points, false).map_err(invalid)
        } else if self.closed {
            if points.len() < 3 {
                return Err(ServiceError::Invalid("a loop needs at least two waypoints".into()));
            }
            ParamPath::closed_loop(points).map_err(invalid)
        } else if points.len() > 1 && points.last() == points.first() {
            ParamPath::new(points, true).map_err(invalid)
        } else {
            Err(ServiceError::Invalid(
                "path is not closed: set closed or end at the basepoint".into(),
            ))
        }
    }
}

fn pairs(p: &CodePermutation) -> Vec<[String; 2]> {
    p.pairs().map(|(x, y)| [x.to_string(), y.to_string()]).collect()
}

fn continuation_failure(e: &ContinuationError) -> bool {
    !matches!(
        e,
        ContinuationError::BadPath(_)
            | ContinuationError::Precondition(_)
            | ContinuationError::StartMismatch { .. }
            | ContinuationError::Symbolic(_)
    )
}

fn failed(n: usize, e: &ContinuationError) -> LoopResponse {
    LoopResponse {
        permutation: Vec::new(),
        cycles: String::new(),
        automorphism: None,
        status: MonodromyStatus::from_error(e),
        diagnostics: LoopDiagnostics {
            n,
            error: Some(e.to_string()),
            ..LoopDiagnostics::default()
        },
    }
}

/// Monodromy of `Per_N` around the requested loop. Continuation failures
/// are reported in `status`; malformed loops are errors.
pub fn run_loop(req: &LoopRequest, default_n: usize) -> Result<LoopResponse, ServiceError> {
    let n = req.n.unwrap_or(default_n);
    if n == 0 || n > MAX_PERIOD {
        return Err(ServiceError::Invalid(format!("N must lie in 1..={MAX_PERIOD}")));
    }
    let base = req.base_params()?;
    let path = req.path()?;
    if req.hat {
        return match hat_loop_report(base, &path, n) {
            Ok(r) => Ok(LoopResponse {
                permutation: pairs(&r.permutation),
                cycles: r.permutation.cycle_notation(),
                automorphism: r.automorphism,
                status: MonodromyStatus::Ok,
                diagnostics: LoopDiagnostics {
                    n,
                    orbits: r.total_orbits,
                    order: Some(r.order),
                    real_orbits: Some(r.real_orbits),
                    real_type: Some(r.real_type),
                    consistent: Some(r.consistent),
                    ..LoopDiagnostics::default()
                },
            }),
            Err(e) if continuation_failure(&e) => Ok(failed(n, &e)),
            Err(e) => Err(ServiceError::Invalid(e.to_string())),
        };
    }
    match monodromy_with(base, &path, n, &ContinuationOptions::default()) {
        Ok(r) => Ok(LoopResponse {
            permutation: pairs(&r.permutation),
            cycles: r.permutation.cycle_notation(),
            automorphism: r.automorphism,
            status: r.status,
            diagnostics: LoopDiagnostics {
                n,
                orbits: r.traces.len(),
                order: Some(r.permutation.order()),
                accepted_steps: Some(r.accepted_steps),
                rejected_steps: Some(r.rejected_steps),
                min_margin: r.traces.iter().map(|t| t.min_margin).reduce(f64::min),
                max_landing_distance: r.traces.iter().map(|t| t.landing_distance).reduce(f64::max),
                grade: Some(r.grade),
                ..LoopDiagnostics::default()
            },
        }),
        Err(e) if continuation_failure(&e) => Ok(failed(n, &e)),
        Err(e) => Err(ServiceError::Invalid(e.to_string())),
    }
}

/// Body of `POST /api/scan`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanRequest {
    pub b: [f64; 2],
    pub re: [f64; 2],
    pub im: [f64; 2],
    pub width: usize,
    pub height: usize,
    #[serde(default)]
    pub n_max: Option<usize>,
}

/// Pixel cap for a single scan.
pub const MAX_PIXELS: usize = 4_000_000;

impl ScanRequest {
    pub fn window(&self, default_n_max: usize) -> Result<ScanWindow, ServiceError> {
        let n_max = self.n_max.unwrap_or(default_n_max);
        if n_max == 0 || n_max > MAX_PERIOD {
            return Err(ServiceError::Invalid(format!("n_max must lie in 1..={MAX_PERIOD}")));
        }
        if self.width.saturating_mul(self.height) > MAX_PIXELS {
            return Err(ServiceError::Invalid(format!("at most {MAX_PIXELS} pixels per scan")));
        }
        let w = ScanWindow::new(
            c(self.b[0], self.b[1]),
            (self.re[0], self.re[1]),
            (self.im[0], self.im[1]),
            (self.width, self.height),
        )
        .map_err(|e| ServiceError::Invalid(e.to_string()))?;
        Ok(w.with_options(ClassifierOptions {
            n_max,
            ..ClassifierOptions::default()
        }))
    }
}

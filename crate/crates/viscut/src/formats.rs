//! Instance and point-set files, and the reports the tools emit.
//!
//! Everything on disk is JSON.  An instance file describes one separation
//! problem:
//!
//! ```json
//! {
//!   "n": 2,
//!   "xlp": [2.0, 0.0],
//!   "box": { "lo": [-2.0, -2.0], "hi": [2.0, 2.0] },
//!   "linear": [ { "a": [1.0, 1.0], "sense": "le", "rhs": 3.0 } ],
//!   "g": { "monomials": [ { "c": 1.0, "e": [2, 0] },
//!                         { "c": 1.0, "e": [0, 2] },
//!                         { "c": -1.0, "e": [0, 0] } ] }
//! }
//! ```
//!
//! and a point-set file feeds the polar laboratory:
//!
//! ```json
//! { "xlp": [0.0, 0.0], "points": [[1.0, 0.0], [0.0, 1.0]] }
//! ```
//!
//! Reports are plain data types serialized back to JSON with every real
//! printed to 17 significant digits ([`to_json`]), so emitted files
//! re-parse to bit-identical values; [`to_csv`] flattens the same reports
//! into `key,value` rows for quick plotting.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::linprog::Sense;
use crate::multipoly::{MultiPoly, Point};
use crate::polarlab::FinitePointSet;
use crate::tighten::{Enclosure, EnclosureStatus};
use crate::visibility::{
    ConvexDomain, ProblemInstance, RegionConstraint, RegionDescription, RegionKind,
};

/// Why a file was rejected.
#[derive(Debug)]
pub enum FormatError {
    /// Malformed JSON; the message carries the line and column.
    Parse(String),
    /// Well-formed JSON that does not describe a valid object.
    Invalid(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Parse(msg) => write!(f, "parse error: {msg}"),
            FormatError::Invalid(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(err: serde_json::Error) -> Self {
        FormatError::Parse(err.to_string())
    }
}

// ---------------------------------------------------------------------
// File schemas
// ---------------------------------------------------------------------

/// One monomial `c * x^e`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialFile {
    pub c: f64,
    pub e: Vec<u32>,
}

/// A sparse polynomial as a list of monomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyFile {
    pub monomials: Vec<MonomialFile>,
}

impl PolyFile {
    pub fn from_poly(p: &MultiPoly) -> PolyFile {
        PolyFile {
            monomials: p
                .terms()
                .iter()
                .map(|t| MonomialFile {
                    c: t.coeff,
                    e: t.exps.clone(),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self, n: usize) -> Result<MultiPoly, FormatError> {
        for (k, m) in self.monomials.iter().enumerate() {
            if m.e.len() != n {
                return Err(FormatError::Invalid(format!(
                    "monomial {k}: exponent vector has length {}, expected {n}",
                    m.e.len()
                )));
            }
            if !m.c.is_finite() {
                return Err(FormatError::Invalid(format!(
                    "monomial {k}: coefficient is not finite"
                )));
            }
        }
        let raw: Vec<(f64, &[u32])> = self
            .monomials
            .iter()
            .map(|m| (m.c, m.e.as_slice()))
            .collect();
        Ok(MultiPoly::from_terms(n, &raw))
    }
}

/// Axis-aligned box bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxFile {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

/// One linear constraint row; `sense` is `"le"`, `"ge"` or `"eq"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearFile {
    pub a: Vec<f64>,
    pub sense: String,
    pub rhs: f64,
}

fn sense_from_str(s: &str) -> Result<Sense, FormatError> {
    match s {
        "le" => Ok(Sense::Le),
        "ge" => Ok(Sense::Ge),
        "eq" => Ok(Sense::Eq),
        other => Err(FormatError::Invalid(format!(
            "unknown sense {other:?} (expected \"le\", \"ge\" or \"eq\")"
        ))),
    }
}

fn sense_to_str(s: Sense) -> &'static str {
    match s {
        Sense::Le => "le",
        Sense::Ge => "ge",
        Sense::Eq => "eq",
    }
}

/// A separation problem instance on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub xlp: Vec<f64>,
    #[serde(rename = "box")]
    pub bounds: BoxFile,
    #[serde(default)]
    pub linear: Vec<LinearFile>,
    pub g: PolyFile,
}

impl InstanceFile {
    pub fn from_instance(inst: &ProblemInstance) -> InstanceFile {
        let b = inst.domain().bounds();
        InstanceFile {
            n: inst.domain().dim(),
            xlp: inst.xbar().coords.clone(),
            bounds: BoxFile {
                lo: b.lo(),
                hi: b.hi(),
            },
            linear: inst
                .domain()
                .linear()
                .iter()
                .map(|c| LinearFile {
                    a: c.a.clone(),
                    sense: sense_to_str(c.sense).to_string(),
                    rhs: c.rhs,
                })
                .collect(),
            g: PolyFile::from_poly(inst.g()),
        }
    }

    pub fn to_instance(&self) -> Result<ProblemInstance, FormatError> {
        let n = self.n;
        if self.xlp.len() != n {
            return Err(FormatError::Invalid(format!(
                "xlp has length {}, expected n = {n}",
                self.xlp.len()
            )));
        }
        if self.bounds.lo.len() != n || self.bounds.hi.len() != n {
            return Err(FormatError::Invalid(format!(
                "box sides have lengths {}/{}, expected n = {n}",
                self.bounds.lo.len(),
                self.bounds.hi.len()
            )));
        }
        for i in 0..n {
            if !(self.bounds.lo[i] <= self.bounds.hi[i]) {
                return Err(FormatError::Invalid(format!(
                    "box coordinate {i}: lo {} > hi {}",
                    self.bounds.lo[i], self.bounds.hi[i]
                )));
            }
        }
        let mut domain = ConvexDomain::from_bounds(&self.bounds.lo, &self.bounds.hi);
        for (k, row) in self.linear.iter().enumerate() {
            if row.a.len() != n {
                return Err(FormatError::Invalid(format!(
                    "linear row {k}: coefficient vector has length {}, expected {n}",
                    row.a.len()
                )));
            }
            domain.add_linear(row.a.clone(), sense_from_str(&row.sense)?, row.rhs);
        }
        let g = self.g.to_poly(n)?;
        ProblemInstance::new(g, domain, Point::new(self.xlp.clone()))
            .map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

/// A finite point set with its anchor, for the polar laboratory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub xlp: Vec<f64>,
    pub points: Vec<Vec<f64>>,
}

impl PointSetFile {
    pub fn from_point_set(ps: &FinitePointSet) -> PointSetFile {
        PointSetFile {
            xlp: ps.xbar().coords.clone(),
            points: ps.points().iter().map(|p| p.coords.clone()).collect(),
        }
    }

    pub fn to_point_set(&self) -> Result<FinitePointSet, FormatError> {
        let points = self.points.iter().cloned().map(Point::new).collect();
        FinitePointSet::new(points, Point::new(self.xlp.clone()))
            .map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

/// Parse an instance file from JSON text.
pub fn parse_instance(text: &str) -> Result<ProblemInstance, FormatError> {
    serde_json::from_str::<InstanceFile>(text)?.to_instance()
}

/// Parse a point-set file from JSON text.
pub fn parse_point_set(text: &str) -> Result<FinitePointSet, FormatError> {
    serde_json::from_str::<PointSetFile>(text)?.to_point_set()
}

// ---------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------

/// Output of a visibility check at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub visible: bool,
    pub relaxed: bool,
    pub g_value: f64,
    /// Coefficients of `p(lambda) = g(x + lambda (xlp - x))`, ascending.
    pub p_lambda_coeffs: Vec<f64>,
}

/// Half-space `alpha . x + beta >= 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceFile {
    pub alpha: Vec<f64>,
    pub beta: f64,
}

/// A region description as a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    /// `"exact_quadratic"` or `"gradient_relaxation"`.
    pub kind: String,
    pub surface: PolyFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspace: Option<HalfspaceFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side_polynomial: Option<PolyFile>,
    #[serde(rename = "box")]
    pub bounds: BoxFile,
}

impl RegionReport {
    pub fn from_region(region: &RegionDescription) -> RegionReport {
        let (halfspace, side_polynomial) = match &region.constraint {
            RegionConstraint::Halfspace { alpha, beta } => (
                Some(HalfspaceFile {
                    alpha: alpha.clone(),
                    beta: *beta,
                }),
                None,
            ),
            RegionConstraint::Polynomial(h) => (None, Some(PolyFile::from_poly(h))),
        };
        RegionReport {
            kind: match region.kind {
                RegionKind::ExactQuadratic => "exact_quadratic".to_string(),
                RegionKind::GradientRelaxation => "gradient_relaxation".to_string(),
            },
            surface: PolyFile::from_poly(&region.surface),
            halfspace,
            side_polynomial,
            bounds: BoxFile {
                lo: region.domain.bounds().lo(),
                hi: region.domain.bounds().hi(),
            },
        }
    }
}

/// An enclosure as a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnclosureReport {
    /// `"nonempty"` or `"proved_empty"`.
    pub status: String,
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoxFile>,
    pub leaves_kept: usize,
    pub depth_used: usize,
}

impl EnclosureReport {
    pub fn from_enclosure(enc: &Enclosure) -> EnclosureReport {
        EnclosureReport {
            status: match enc.status {
                EnclosureStatus::Nonempty => "nonempty".to_string(),
                EnclosureStatus::ProvedEmpty => "proved_empty".to_string(),
            },
            bounds: enc.bounds.as_ref().map(|b| BoxFile {
                lo: b.lo(),
                hi: b.hi(),
            }),
            leaves_kept: enc.leaves_kept,
            depth_used: enc.depth_used,
        }
    }
}

/// One cut `alpha . (x - xlp) >= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutFile {
    pub alpha: Vec<f64>,
    pub rhs: f64,
    pub xlp: Vec<f64>,
}

impl CutFile {
    pub fn from_cut(cut: &crate::cuts::Cut) -> CutFile {
        CutFile {
            alpha: cut.alpha.clone(),
            rhs: cut.rhs,
            xlp: cut.xbar.clone(),
        }
    }
}

/// Output of cut generation; the optional fields appear when the cut was
/// generated over a tightened enclosure and compared to the plain one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutReport {
    pub cut: CutFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub untightened_cut: Option<CutFile>,
    /// `"tightened-dominates"`, `"untightened-dominates"` or `"incomparable"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<EnclosureReport>,
}

/// A nonnegativity certificate as a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// `"even"` or `"odd"`.
    pub parity: String,
    pub d: usize,
    pub s1: Vec<f64>,
    pub s2: Vec<f64>,
    /// Max-abs coefficient residual of the verified expansion.
    pub residual: f64,
}

/// One failed laboratory trial, dumped for reproduction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabFailure {
    pub trial: usize,
    pub xlp: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub note: String,
}

/// Outcome of a batch of laboratory checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabRunReport {
    /// Which structural check ran (`"visible"`, `"shadow"`, ...).
    pub check: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<LabFailure>,
}

// ---------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------

/// A real with 17 significant digits: round-trips through text exactly.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_json(out: &mut String, v: &serde_json::Value, indent: usize) {
    let pad = "  ".repeat(indent);
    let pad_in = "  ".repeat(indent + 1);
    match v {
        serde_json::Value::Null => out.push_str("null"),
        serde_json::Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        serde_json::Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else {
                out.push_str(&fmt_real(n.as_f64().expect("finite real")));
            }
        }
        serde_json::Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("string"));
        }
        serde_json::Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            // Arrays of scalars stay on one line; nested ones break.
            let flat = items.iter().all(|x| {
                !matches!(
                    x,
                    serde_json::Value::Array(_) | serde_json::Value::Object(_)
                )
            });
            if flat {
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_json(out, item, 0);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (k, item) in items.iter().enumerate() {
                    out.push_str(&pad_in);
                    write_json(out, item, indent + 1);
                    if k + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str(&pad);
                out.push(']');
            }
        }
        serde_json::Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad_in);
                out.push_str(&serde_json::to_string(key).expect("string"));
                out.push_str(": ");
                write_json(out, val, indent + 1);
                if k + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad);
            out.push('}');
        }
    }
}

/// Serialize any report to JSON with 17-significant-digit reals.  Keys
/// are emitted in sorted order, so equal values give identical bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report is serializable");
    let mut out = String::new();
    write_json(&mut out, &v, 0);
    out.push('\n');
    out
}

fn flatten_csv(prefix: &str, v: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    match v {
        serde_json::Value::Null => rows.push((prefix.to_string(), String::new())),
        serde_json::Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        serde_json::Value::Number(n) => {
            let s = if let Some(u) = n.as_u64() {
                u.to_string()
            } else if let Some(i) = n.as_i64() {
                i.to_string()
            } else {
                fmt_real(n.as_f64().expect("finite real"))
            };
            rows.push((prefix.to_string(), s));
        }
        serde_json::Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        serde_json::Value::Array(items) => {
            for (k, item) in items.iter().enumerate() {
                flatten_csv(&format!("{prefix}.{k}"), item, rows);
            }
        }
        serde_json::Value::Object(map) => {
            for (key, val) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten_csv(&path, val, rows);
            }
        }
    }
}

/// Flatten any report into `key,value` CSV rows (arrays become
/// `key.0`, `key.1`, ...), reals again at 17 significant digits.
pub fn to_csv<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report is serializable");
    let mut rows = Vec::new();
    flatten_csv("", &v, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, val) in rows {
        // Values are numbers, bools or our own short strings; quoting is
        // only needed if a note ever carries a comma.
        if val.contains(',') || val.contains('"') || val.contains('\n') {
            out.push_str(&format!("{k},\"{}\"\n", val.replace('"', "\"\"")));
        } else {
            out.push_str(&format!("{k},{val}\n"));
        }
    }
    out
}

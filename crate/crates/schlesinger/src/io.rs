//! JSON documents for traces and reports.
//!
//! Floats are written in shortest round-trip form, so reading a written
//! document gives back every bit. Complex numbers are `[re, im]` arrays.

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

use crate::audit::{all_relations_hold, RelationVerdict};
use crate::error::{Error, Result};
use crate::pvi::{Jet, SolutionTrace};
use crate::rational::{ThetaVector, Q};
use crate::verify::{SuiteReport, VerificationReport};

pub const TRACE_FORMAT: &str = "schlesinger-trace";
pub const REPORT_FORMAT: &str = "schlesinger-report";
pub const TRACE_VERSION: u32 = 1;
pub const REPORT_VERSION: u32 = 1;

pub const TRACE_SCHEMA: &str = include_str!("../schemas/trace.schema.json");
pub const REPORT_SCHEMA: &str = include_str!("../schemas/report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ThetaField {
    Rational([[i64; 2]; 4]),
    Complex([[f64; 2]; 4]),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleField {
    pub x: [f64; 2],
    pub u: [f64; 2],
    pub du: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub format: String,
    pub version: u32,
    pub theta: ThetaField,
    pub tolerance: f64,
    pub samples: Vec<SampleField>,
}

fn pair(z: C) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: [f64; 2]) -> C {
    C::new(p[0], p[1])
}

fn q_pair(x: &Q) -> Result<[i64; 2]> {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => Ok([n, d]),
        _ => Err(Error::InvalidInput(format!("rational {x} does not fit the trace format"))),
    }
}

impl TraceFile {
    pub fn from_trace(t: &SolutionTrace) -> Result<TraceFile> {
        let theta = match &t.theta_exact {
            Some(e) => ThetaField::Rational([q_pair(&e.0[0])?, q_pair(&e.0[1])?, q_pair(&e.0[2])?, q_pair(&e.0[3])?]),
            None => ThetaField::Complex(t.theta.map(pair)),
        };
        Ok(TraceFile {
            format: TRACE_FORMAT.into(),
            version: TRACE_VERSION,
            theta,
            tolerance: t.tol,
            samples: t.samples.iter().map(|j| SampleField { x: pair(j.x), u: pair(j.u), du: pair(j.du) }).collect(),
        })
    }

    pub fn to_trace(&self) -> Result<SolutionTrace> {
        let (theta, theta_exact) = match &self.theta {
            ThetaField::Rational(r) => {
                let mut qs = Vec::with_capacity(4);
                for [n, d] in r {
                    if *d == 0 {
                        return Err(Error::MalformedDocument("zero denominator in theta".into()));
                    }
                    qs.push(Q::new(BigInt::from(*n), BigInt::from(*d)));
                }
                let t = ThetaVector(qs.try_into().unwrap());
                (t.to_complex(), Some(t))
            }
            ThetaField::Complex(c) => (c.map(unpair), None),
        };
        let mut samples = Vec::with_capacity(self.samples.len());
        for (i, s) in self.samples.iter().enumerate() {
            let j = Jet::new(unpair(s.x), unpair(s.u), unpair(s.du));
            if j.check_guards().is_err() {
                return Err(Error::GuardViolatingSample(i));
            }
            samples.push(j);
        }
        Ok(SolutionTrace { theta, theta_exact, samples, tol: self.tolerance })
    }
}

fn check_header(v: &serde_json::Value, format: &str, version: u32) -> Result<()> {
    let obj = v.as_object().ok_or_else(|| Error::MalformedDocument("top level must be an object".into()))?;
    match obj.get("format").and_then(|f| f.as_str()) {
        Some(f) if f == format => {}
        other => return Err(Error::MalformedDocument(format!("expected format {format}, found {other:?}"))),
    }
    match obj.get("version") {
        None => Err(Error::VersionMismatch("document has no version".into())),
        Some(x) if x.as_u64() == Some(version as u64) => Ok(()),
        Some(x) => Err(Error::VersionMismatch(format!("unsupported version {x}, expected {version}"))),
    }
}

pub fn trace_to_string(t: &SolutionTrace) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&TraceFile::from_trace(t)?).expect("serializable");
    s.push('\n');
    Ok(s)
}

pub fn trace_from_str(s: &str) -> Result<SolutionTrace> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    check_header(&v, TRACE_FORMAT, TRACE_VERSION)?;
    let f: TraceFile = serde_json::from_value(v).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    f.to_trace()
}

pub fn write_trace<W: Write>(t: &SolutionTrace, mut w: W) -> Result<()> {
    w.write_all(trace_to_string(t)?.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

pub fn read_trace<R: Read>(mut r: R) -> Result<SolutionTrace> {
    let mut s = String::new();
    r.read_to_string(&mut s).map_err(|e| Error::Io(e.to_string()))?;
    trace_from_str(&s)
}

pub fn write_trace_file(t: &SolutionTrace, path: &Path) -> Result<()> {
    std::fs::write(path, trace_to_string(t)?).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_trace_file(path: &Path) -> Result<SolutionTrace> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    trace_from_str(&s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub format: String,
    pub version: u32,
    pub audit: Vec<RelationVerdict>,
    pub reports: Vec<VerificationReport>,
    pub pass: bool,
}

impl ReportFile {
    pub fn new(audit: Vec<RelationVerdict>, reports: Vec<VerificationReport>) -> Self {
        let audit_ok = audit.is_empty() || all_relations_hold(&audit);
        let pass = audit_ok && reports.iter().all(|r| r.pass);
        ReportFile { format: REPORT_FORMAT.into(), version: REPORT_VERSION, audit, reports, pass }
    }

    pub fn from_suite(s: &SuiteReport) -> Self {
        ReportFile::new(s.audit.clone(), s.reports.clone())
    }
}

/// Pretty JSON, fields in declaration order, newline-terminated.
pub fn write_report(audit: &[RelationVerdict], reports: &[VerificationReport]) -> String {
    report_to_string(&ReportFile::new(audit.to_vec(), reports.to_vec()))
}

pub fn report_to_string(r: &ReportFile) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("serializable");
    s.push('\n');
    s
}

pub fn report_from_str(s: &str) -> Result<ReportFile> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    check_header(&v, REPORT_FORMAT, REPORT_VERSION)?;
    serde_json::from_value(v).map_err(|e| Error::MalformedDocument(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn version_checks() {
        let missing = r#"{"format":"schlesinger-trace","theta":{"complex":[[0,0],[0,0],[0,0],[1,0]]},"tolerance":1e-10,"samples":[]}"#;
        assert!(matches!(trace_from_str(missing), Err(Error::VersionMismatch(_))));
        let future = missing.replace("\"theta\"", "\"version\":7,\"theta\"");
        assert!(matches!(trace_from_str(&future), Err(Error::VersionMismatch(_))));
        assert!(matches!(trace_from_str("[1,2"), Err(Error::MalformedDocument(_))));
    }

    #[test]
    fn guard_violation_is_rejected() {
        let doc = r#"{"format":"schlesinger-trace","version":1,"theta":{"complex":[[0,0],[0,0],[0,0],[1,0]]},"tolerance":1e-10,
            "samples":[{"x":[0.5,0],"u":[2,0],"du":[0,0]},{"x":[0.6,0],"u":[0.6,0],"du":[0,0]}]}"#;
        assert!(matches!(trace_from_str(doc), Err(Error::GuardViolatingSample(1))));
    }

    #[test]
    fn empty_report_is_valid() {
        let s = write_report(&[], &[]);
        let r = report_from_str(&s).unwrap();
        assert!(r.pass && r.reports.is_empty() && r.audit.is_empty());
    }
}

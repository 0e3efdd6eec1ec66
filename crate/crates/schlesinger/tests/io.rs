use num_complex::Complex64 as C;
use schlesinger::error::Error;
use schlesinger::integrate::integrate;
use schlesinger::io::{
    read_trace, read_trace_file, report_from_str, report_to_string, trace_from_str, trace_to_string, write_report, write_trace,
    write_trace_file, ReportFile, REPORT_SCHEMA, TRACE_SCHEMA,
};
use schlesinger::pvi::Jet;
use schlesinger::rational::ThetaVector;
use schlesinger::verify::{fixture_trace, run_full_suite, Fixture, SuiteConfig};

fn validator(schema: &str) -> jsonschema::JSONSchema {
    let s: serde_json::Value = serde_json::from_str(schema).unwrap();
    jsonschema::JSONSchema::compile(&s).unwrap()
}

fn assert_valid(schema: &str, doc: &str) {
    let v: serde_json::Value = serde_json::from_str(doc).unwrap();
    let compiled = validator(schema);
    if let Err(errs) = compiled.validate(&v) {
        let msgs: Vec<String> = errs.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    };
}

#[test]
fn constant_trace_round_trip() {
    let start = Jet::real(2.0, 5.0, 0.0);
    let t = integrate(start, ThetaVector::from_ints([0, 0, 0, 1]).to_complex(), &[C::new(2.0, 0.0), C::new(3.0, 0.0)], 1e-10, 1000).unwrap();
    let mut buf = Vec::new();
    write_trace(&t, &mut buf).unwrap();
    assert_eq!(read_trace(buf.as_slice()).unwrap(), t);
}

#[test]
fn fixture_round_trip_is_bit_exact() {
    let t = fixture_trace(&Fixture::default(), 1e-10).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("trace.json");
    write_trace_file(&t, &p).unwrap();
    let back = read_trace_file(&p).unwrap();
    assert_eq!(back.theta_exact, t.theta_exact);
    assert_eq!(back.samples.len(), t.samples.len());
    for (a, b) in back.samples.iter().zip(&t.samples) {
        for (x, y) in [(a.x, b.x), (a.u, b.u), (a.du, b.du)] {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }
    assert_valid(TRACE_SCHEMA, &std::fs::read_to_string(&p).unwrap());
}

#[test]
fn complex_theta_round_trip() {
    let theta = [C::new(0.1, 0.2), C::new(1.0 / 3.0, 0.0), C::new(-0.4, 1e-300), C::new(1.1, -2.5)];
    let start = Jet::new(C::new(0.2, 0.0), C::new(0.7, 0.1), C::new(0.0, 1.0));
    let t = integrate(start, theta, &[start.x, C::new(0.6, 0.3)], 1e-10, 100_000).unwrap();
    let s = trace_to_string(&t).unwrap();
    assert_valid(TRACE_SCHEMA, &s);
    let back = trace_from_str(&s).unwrap();
    assert_eq!(back, t);
    assert_eq!(trace_to_string(&back).unwrap(), s);
}

#[test]
fn rejected_documents() {
    let t = fixture_trace(&Fixture { n_min: 20, ..Default::default() }, 1e-10).unwrap();
    let s = trace_to_string(&t).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
    v.as_object_mut().unwrap().remove("version");
    assert!(matches!(trace_from_str(&v.to_string()), Err(Error::VersionMismatch(_))));
    v["version"] = 99.into();
    assert!(matches!(trace_from_str(&v.to_string()), Err(Error::VersionMismatch(_))));
    assert!(matches!(trace_from_str("not json"), Err(Error::MalformedDocument(_))));
    let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
    v["samples"][2]["u"] = serde_json::json!([0.0, 0.0]);
    assert!(matches!(trace_from_str(&v.to_string()), Err(Error::GuardViolatingSample(2))));
    let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
    v["extra"] = 1.into();
    assert!(matches!(trace_from_str(&v.to_string()), Err(Error::MalformedDocument(_))));
}

#[test]
fn empty_report() {
    let s = write_report(&[], &[]);
    assert_valid(REPORT_SCHEMA, &s);
    let r = report_from_str(&s).unwrap();
    assert!(r.pass && r.audit.is_empty() && r.reports.is_empty());
}

#[test]
fn suite_report_is_schema_valid_and_deterministic() {
    let cfg = SuiteConfig { sweep_max_len: 2, ..Default::default() };
    let a = report_to_string(&ReportFile::from_suite(&run_full_suite(&cfg)));
    let b = report_to_string(&ReportFile::from_suite(&run_full_suite(&cfg)));
    assert_eq!(a, b);
    assert_valid(REPORT_SCHEMA, &a);
    let back = report_from_str(&a).unwrap();
    assert_eq!(report_to_string(&back), a);
}

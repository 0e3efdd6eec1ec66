//! Command-line surface. `run` never exits the process; it returns the code.
//!
//! Exit codes: 0 success or pass, 1 verification failure or domain error,
//! 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C;
use serde::Deserialize;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

use crate::affine::AffineMap;
use crate::audit::{all_relations_hold, audit_relations_with, RelationVerdict, RELATIONS};
use crate::catalog::Generator;
use crate::error::{Error, Result};
use crate::group::{orbit_bfs, Scope};
use crate::integrate::{integrate_with, IntegrateOptions};
use crate::io::{read_trace_file, report_to_string, trace_to_string, ReportFile};
use crate::pvi::{params_from_theta, params_from_theta_exact, theta_from_params, Branch, Jet, ParameterVector, SolutionTrace};
use crate::rational::{parse_q, q_to_f64, ThetaVector};
use crate::verify::{fixture_trace, fmt_c, run_full_suite, verify_word, Fixture, SuiteConfig, Tolerances, VerificationReport};
use crate::word::{evaluate_word, format_word, parse_word, Convention};

/// Environment variable naming the default suite configuration file.
pub const CONFIG_ENV: &str = "SCHLESINGER_CONFIG";

#[derive(Parser, Debug)]
#[command(name = "schlesinger", version, about = "Schlesinger transformations of Painleve VI")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// How products are read: `last` applies the leftmost factor last.
    #[arg(long, value_enum, default_value_t = ConventionArg::Last, global = true)]
    pub convention: ConventionArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum ConventionArg {
    Last,
    First,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Last => Convention::Last,
            ConventionArg::First => Convention::First,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum AuditScope {
    Signs,
    Trivial,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the affine map of a word and its order.
    Compose {
        word: String,
        #[arg(long, default_value_t = 12)]
        max_order: u32,
    },
    /// Check the relations between the transformations.
    Audit {
        #[arg(long)]
        relation: Option<String>,
        #[arg(long, value_enum, default_value_t = AuditScope::Trivial)]
        scope: AuditScope,
    },
    /// Breadth-first orbit of an exponent vector.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Comma-separated generator names.
        #[arg(long)]
        generators: String,
        #[arg(long)]
        depth: usize,
    },
    /// Integrate the equation and write a trace document.
    Integrate(IntegrateArgs),
    /// Verify a word on a trace, or run the full suite.
    Verify(VerifyArgs),
    /// Convert between exponents and parameters.
    Convert {
        #[command(flatten)]
        source: ExponentSource,
    },
}

#[derive(Args, Debug)]
pub struct ExponentSource {
    /// Four exponents: rationals p/q or complex re+imj.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "params", required_unless_present = "params")]
    theta: Option<String>,
    /// Four parameters a,b,g,d (complex).
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
    /// Square-root signs for --params, e.g. ++-+.
    #[arg(long, allow_hyphen_values = true, default_value = "++++")]
    branch: String,
}

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    #[command(flatten)]
    source: ExponentSource,
    /// Start jet x,u,du.
    #[arg(long, allow_hyphen_values = true)]
    jet: String,
    /// End point of the path.
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    /// Intermediate waypoints, in order.
    #[arg(long, allow_hyphen_values = true)]
    via: Vec<String>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Lower bound on accepted steps per segment; dense enough for `verify`.
    #[arg(long, default_value_t = 600)]
    min_steps: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "suite", required_unless_present = "suite")]
    word: Option<String>,
    /// Run audit, generator checks, cross-validation and the word sweep.
    #[arg(long)]
    suite: bool,
    #[arg(long, conflicts_with = "fixture")]
    trace: Option<PathBuf>,
    /// Named fixture; only `default` exists.
    #[arg(long)]
    fixture: Option<String>,
    /// Suite configuration (JSON). Falls back to $SCHLESINGER_CONFIG.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Suite configuration document; absent fields keep their defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub tolerances: Option<Tolerances>,
    pub generators: Option<Vec<String>>,
    pub sweep_max_len: Option<usize>,
    pub fixture: Option<FixtureFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub theta: String,
    pub jet: String,
    pub to: String,
    pub n_min: Option<usize>,
}

impl ConfigFile {
    pub fn into_suite(self) -> Result<SuiteConfig> {
        let mut c = SuiteConfig::default();
        if let Some(t) = self.tolerances {
            c.tolerances = t;
        }
        if let Some(g) = self.generators {
            c.generators = g;
        }
        if let Some(n) = self.sweep_max_len {
            c.sweep_max_len = n;
        }
        if let Some(f) = self.fixture {
            c.fixture = Fixture {
                theta: ThetaVector::parse(&f.theta)?,
                start: parse_jet(&f.jet)?,
                x_end: parse_complex(&f.to)?,
                n_min: f.n_min.unwrap_or(c.fixture.n_min),
            };
        }
        Ok(c)
    }
}

pub fn load_config(path: Option<&PathBuf>) -> Result<SuiteConfig> {
    let path = path.cloned().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    match path {
        None => Ok(SuiteConfig::default()),
        Some(p) => {
            let s = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let f: ConfigFile = serde_json::from_str(&s).map_err(|e| Error::MalformedDocument(e.to_string()))?;
            f.into_suite()
        }
    }
}

fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    if t.contains('/') {
        return Ok(q_to_f64(&parse_q(t)?));
    }
    t.parse::<f64>().map_err(|_| Error::InvalidInput(format!("not a number: `{s}`")))
}

/// `re`, `p/q`, `imj`, `re+imj` or `re-imj` (`i` also accepted).
pub fn parse_complex(s: &str) -> Result<C> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidInput(format!("not a complex number: `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
        return Ok(C::new(parse_real(&t)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let im_part = |p: &str| -> Result<f64> {
        match p {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => parse_real(p).map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(C::new(parse_real(&body[..k]).map_err(|_| bad())?, im_part(&body[k..])?)),
        None => Ok(C::new(0.0, im_part(body)?)),
    }
}

fn parse_list<T>(s: &str, n: usize, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} comma-separated values, got `{s}`")));
    }
    parts.into_iter().map(f).collect()
}

pub fn parse_jet(s: &str) -> Result<Jet> {
    let v = parse_list(s, 3, parse_complex)?;
    Ok(Jet::new(v[0], v[1], v[2]))
}

/// Exact exponents when every entry is rational, complex otherwise.
fn exponents_from(src: &ExponentSource) -> Result<([C; 4], Option<ThetaVector>)> {
    if let Some(t) = &src.theta {
        if let Ok(e) = ThetaVector::parse(t) {
            return Ok((e.to_complex(), Some(e)));
        }
        let v = parse_list(t, 4, parse_complex)?;
        return Ok(([v[0], v[1], v[2], v[3]], None));
    }
    let p = parse_params(src.params.as_deref().unwrap_or_default())?;
    Ok((theta_from_params(&p, Branch::parse(&src.branch)?), None))
}

fn parse_params(s: &str) -> Result<ParameterVector> {
    let v = parse_list(s, 4, parse_complex)?;
    ParameterVector::new(v[0], v[1], v[2], v[3])
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e.root(),
        Error::InvalidInput(_) | Error::WordSyntax { .. } | Error::UnknownGenerator(_)
    )
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let conv: Convention = cli.convention.into();
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Compose { word, max_order } => {
            let tokens = parse_word(word)?;
            let m = evaluate_word(&tokens, conv);
            let ord = m.order_of((*max_order).max(1));
            if json {
                let v = json!({
                    "word": format_word(&tokens),
                    "convention": conv.as_str(),
                    "m1": m.m1.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "m0": m.m0.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "xmap": m.xmap.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "order": ord.order,
                    "xmap_order": ord.xmap_order,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io_err)?;
            } else {
                writeln!(out, "{}", human_map(&m)).map_err(io_err)?;
                match ord.order {
                    Some(n) => writeln!(out, "order: {n}"),
                    None => writeln!(out, "order: infinite or > {max_order}"),
                }
                .map_err(io_err)?;
                if let Some(n) = ord.xmap_order {
                    writeln!(out, "xmap order: {n}").map_err(io_err)?;
                }
            }
            Ok(0)
        }
        Command::Audit { relation, scope } => {
            if let Some(r) = relation {
                if !RELATIONS.iter().any(|(id, _, _)| id == r) {
                    let ids: Vec<&str> = RELATIONS.iter().map(|r| r.0).collect();
                    return Err(Error::InvalidInput(format!("unknown relation `{r}`; known: {}", ids.join(", "))));
                }
            }
            let max = match scope {
                AuditScope::Signs => Scope::Signs,
                AuditScope::Trivial => Scope::Full,
            };
            let verdicts = audit_relations_with(relation.as_deref(), max);
            let ok = relation_ok(&verdicts);
            if json {
                write!(out, "{}", report_to_string(&ReportFile::new(verdicts, Vec::new()))).map_err(io_err)?;
            } else {
                for v in &verdicts {
                    writeln!(out, "{}", human_verdict(v)).map_err(io_err)?;
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Orbit { theta, generators, depth } => {
            let start = ThetaVector::parse(theta)?;
            let gens = generators.split(',').map(|g| g.trim().parse::<Generator>()).collect::<Result<Vec<_>>>()?;
            let orbit = orbit_bfs(&start, &gens, *depth)?;
            if json {
                let v: Vec<_> = orbit
                    .iter()
                    .map(|(t, w)| json!({"theta": t.0.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "word": format_word(w)}))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({"size": orbit.len(), "points": v})).unwrap())
                    .map_err(io_err)?;
            } else {
                writeln!(out, "{} points", orbit.len()).map_err(io_err)?;
                for (t, w) in &orbit {
                    writeln!(out, "{t}  {}", format_word(w)).map_err(io_err)?;
                }
            }
            Ok(0)
        }
        Command::Integrate(a) => {
            let (theta, exact) = exponents_from(&a.source)?;
            let start = parse_jet(&a.jet)?;
            let mut path = vec![start.x];
            for v in &a.via {
                path.push(parse_complex(v)?);
            }
            path.push(parse_complex(&a.to)?);
            let opts = IntegrateOptions { tol: a.tol, max_samples: a.max_samples, min_steps_per_segment: a.min_steps };
            let trace = integrate_with(start, theta, exact, &path, &opts)?;
            let doc = trace_to_string(&trace)?;
            match &a.out {
                Some(p) => {
                    std::fs::write(p, doc).map_err(io_err)?;
                    if !json {
                        let last = trace.samples.last().unwrap();
                        writeln!(out, "{} samples written to {}; end {last}", trace.samples.len(), p.display()).map_err(io_err)?;
                    }
                }
                None => out.write_all(doc.as_bytes()).map_err(io_err)?,
            }
            Ok(0)
        }
        Command::Verify(a) => verify_cmd(a, json, out),
        Command::Convert { source } => {
            if let Some(t) = &source.theta {
                if let Ok(e) = ThetaVector::parse(t) {
                    let p = params_from_theta_exact(&e);
                    let names = ["alpha", "beta", "gamma", "delta"];
                    if json {
                        let m: serde_json::Map<_, _> = names.iter().zip(&p).map(|(n, v)| (n.to_string(), json!(v.to_string()))).collect();
                        writeln!(out, "{}", serde_json::to_string_pretty(&m).unwrap()).map_err(io_err)?;
                    } else {
                        for (n, v) in names.iter().zip(&p) {
                            writeln!(out, "{n} = {v}").map_err(io_err)?;
                        }
                    }
                    return Ok(0);
                }
                let (theta, _) = exponents_from(source)?;
                print_complex(out, &["alpha", "beta", "gamma", "delta"], &params_from_theta(&theta).as_array(), json)?;
            } else {
                let (theta, _) = exponents_from(source)?;
                print_complex(out, &["theta_inf", "theta_0", "theta_1", "theta_x"], &theta, json)?;
            }
            Ok(0)
        }
    }
}

fn print_complex(out: &mut dyn Write, names: &[&str], vals: &[C], json: bool) -> Result<()> {
    if json {
        let m: serde_json::Map<_, _> = names.iter().zip(vals).map(|(n, v)| (n.to_string(), json!([v.re, v.im]))).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&m).unwrap()).map_err(io_err)
    } else {
        for (n, v) in names.iter().zip(vals) {
            writeln!(out, "{n} = {}", fmt_c(*v)).map_err(io_err)?;
        }
        Ok(())
    }
}

fn relation_ok(verdicts: &[RelationVerdict]) -> bool {
    let ids: std::collections::BTreeSet<&str> = verdicts.iter().map(|v| v.relation.as_str()).collect();
    ids.iter().all(|id| {
        let subset: Vec<RelationVerdict> = verdicts.iter().filter(|v| v.relation == *id).cloned().collect();
        subset.iter().any(|v| v.verdict != crate::audit::Verdict::Fails)
    }) && (verdicts.len() < 2 * RELATIONS.len() || all_relations_hold(verdicts))
}

fn verify_cmd(a: &VerifyArgs, json: bool, out: &mut dyn Write) -> Result<i32> {
    let config = load_config(a.config.as_ref())?;
    if let Some(f) = &a.fixture {
        if f != "default" {
            return Err(Error::InvalidInput(format!("unknown fixture `{f}`")));
        }
    }
    let (audit, reports) = if a.suite {
        if a.trace.is_some() {
            return Err(Error::InvalidInput("--suite runs on the configured fixture; drop --trace".into()));
        }
        let s = run_full_suite(&config);
        (s.audit, s.reports)
    } else {
        let tokens = parse_word(a.word.as_deref().unwrap_or_default())?;
        let trace: SolutionTrace = match &a.trace {
            Some(p) => read_trace_file(p)?,
            None if a.fixture.is_some() => fixture_trace(&config.fixture, config.tolerances.integration)?,
            None => return Err(Error::InvalidInput("give --trace <file> or --fixture default".into())),
        };
        (Vec::new(), vec![verify_word(&tokens, &trace, &config.tolerances)?])
    };
    let doc = ReportFile::new(audit, reports);
    let text = report_to_string(&doc);
    if let Some(p) = &a.out {
        std::fs::write(p, &text).map_err(io_err)?;
    }
    if json {
        if a.out.is_none() {
            write!(out, "{text}").map_err(io_err)?;
        }
    } else {
        for v in &doc.audit {
            writeln!(out, "{}", human_verdict(v)).map_err(io_err)?;
        }
        for r in &doc.reports {
            writeln!(out, "{}", human_report(r)).map_err(io_err)?;
        }
        writeln!(out, "{}", if doc.pass { "PASS" } else { "FAIL" }).map_err(io_err)?;
    }
    Ok(if doc.pass { 0 } else { 1 })
}

fn human_map(m: &AffineMap) -> String {
    m.to_string()
}

fn human_verdict(v: &RelationVerdict) -> String {
    let w = match &v.witness {
        Some(w) if v.verdict != crate::audit::Verdict::Exact => format!(" witness L={} R={} ({})", w.left, w.right, w.scope.as_str()),
        _ => String::new(),
    };
    let x = if v.xmap_consistent { "" } else { "  [xmap mismatch]" };
    format!("{:<14} {:<5} {:<17} {} = {}{w}{x}", v.relation, v.convention.as_str(), v.verdict.as_str(), v.lhs, v.rhs)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2e}")).unwrap_or_else(|| "-".into())
}

fn human_report(r: &VerificationReport) -> String {
    let mut s = format!(
        "{} {:<16} {}  residual {}  jet {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.check,
        r.name,
        opt(r.max_residual),
        opt(r.max_jet_defect)
    );
    if r.max_cross_gap.is_some() {
        s += &format!("  gap {}", opt(r.max_cross_gap));
    }
    if r.max_roundtrip_gap.is_some() {
        s += &format!("  round-trip {}", opt(r.max_roundtrip_gap));
    }
    if let Some(w) = &r.words {
        s += &format!("  words {} checked, {} degenerate, {} failed", w.checked, w.degenerate, w.failed);
    }
    for d in &r.diagnostics {
        s += &format!("\n    {d}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("2").unwrap(), C::new(2.0, 0.0));
        assert_eq!(parse_complex("2+1j").unwrap(), C::new(2.0, 1.0));
        assert_eq!(parse_complex("-0.5-2.5j").unwrap(), C::new(-0.5, -2.5));
        assert_eq!(parse_complex("1e-3+2e+1j").unwrap(), C::new(1e-3, 20.0));
        assert_eq!(parse_complex("-j").unwrap(), C::new(0.0, -1.0));
        assert_eq!(parse_complex("3i").unwrap(), C::new(0.0, 3.0));
        assert_eq!(parse_complex("1/4").unwrap(), C::new(0.25, 0.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }
}

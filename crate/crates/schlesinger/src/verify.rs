//! Numeric certification that pushed-forward traces solve the target equation.

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::audit::{all_relations_hold, audit_relations, RelationVerdict};
use crate::birational::{Exponents, WordPlan};
use crate::catalog::{Generator, Token};
use crate::error::{Error, Result};
use crate::fd::fornberg_weights;
use crate::integrate::{integrate_with, IntegrateOptions};
use crate::pvi::{params_from_theta, rhs_unchecked, Jet, SolutionTrace};
use crate::rational::{qf, ThetaVector};
use crate::word::{evaluate_word, format_word, invert_word, parse_word, Convention};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub integration: f64,
    pub jet: f64,
    pub residual: f64,
    pub roundtrip: f64,
    pub cross: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { integration: 1e-10, jet: 1e-6, residual: 1e-6, roundtrip: 1e-9, cross: 1e-8 }
    }
}

impl Tolerances {
    pub fn uniform(t: f64) -> Self {
        Tolerances { integration: t, jet: t, residual: t, roundtrip: t, cross: t }
    }
}

/// Start jet, exponents and interval of a reference solution.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub theta: ThetaVector,
    pub start: Jet,
    pub x_end: C,
    pub n_min: usize,
}

impl Default for Fixture {
    /// θ = (½,½,½,½), (x, u, u′) = (1/3, 2+i, 0), integrated to x = 2/3.
    ///
    /// Checked once: no guard trips on the way, and the images under every
    /// generator and every short word stay regular on the same samples.
    fn default() -> Self {
        let h = qf(1, 2);
        Fixture {
            theta: ThetaVector([h.clone(), h.clone(), h.clone(), h]),
            start: Jet::new(C::new(1.0 / 3.0, 0.0), C::new(2.0, 1.0), C::new(0.0, 0.0)),
            x_end: C::new(2.0 / 3.0, 0.0),
            n_min: 600,
        }
    }
}

/// Integrates the reference solution with at least `n_min` accepted steps.
pub fn make_test_solution(theta: &ThetaVector, start: Jet, interval: (C, C), n_min: usize, tol: f64) -> Result<SolutionTrace> {
    if interval.0 != start.x {
        return Err(Error::InvalidInput(format!("interval starts at {} but the jet is at {}", interval.0, start.x)));
    }
    let opts = IntegrateOptions { tol, max_samples: 10 * n_min.max(1000), min_steps_per_segment: n_min };
    integrate_with(start, theta.to_complex(), Some(theta.clone()), &[interval.0, interval.1], &opts)
}

pub fn fixture_trace(f: &Fixture, tol: f64) -> Result<SolutionTrace> {
    make_test_solution(&f.theta, f.start, (f.start.x, f.x_end), f.n_min, tol)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCounts {
    pub checked: usize,
    pub degenerate: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub check: String,
    pub source_theta: [String; 4],
    pub image_theta: Option<[String; 4]>,
    pub interval: [[f64; 2]; 2],
    pub samples_used: usize,
    pub max_residual: Option<f64>,
    pub max_jet_defect: Option<f64>,
    pub max_cross_gap: Option<f64>,
    pub max_roundtrip_gap: Option<f64>,
    pub words: Option<WordCounts>,
    pub pass: bool,
    pub diagnostics: Vec<String>,
}

pub fn fmt_c(z: C) -> String {
    format!("{:?}{:+?}j", z.re, z.im)
}

fn theta_strings(e: &Exponents) -> [String; 4] {
    match &e.exact {
        Some(t) => std::array::from_fn(|i| t.0[i].to_string()),
        None => std::array::from_fn(|i| fmt_c(e.complex[i])),
    }
}

fn trace_exponents(trace: &SolutionTrace) -> Exponents {
    Exponents { complex: trace.theta, exact: trace.theta_exact.clone() }
}

/// |a − b| / max(1, |b|).
pub fn rel_gap(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn interval_of(trace: &SolutionTrace) -> [[f64; 2]; 2] {
    let a = trace.samples.first().map(|j| j.x).unwrap_or_default();
    let b = trace.samples.last().map(|j| j.x).unwrap_or_default();
    [[a.re, a.im], [b.re, b.im]]
}

fn blank_report(name: &str, check: &str, trace: &SolutionTrace) -> VerificationReport {
    VerificationReport {
        name: name.to_string(),
        check: check.to_string(),
        source_theta: theta_strings(&trace_exponents(trace)),
        image_theta: None,
        interval: interval_of(trace),
        samples_used: 0,
        max_residual: None,
        max_jet_defect: None,
        max_cross_gap: None,
        max_roundtrip_gap: None,
        words: None,
        pass: false,
        diagnostics: Vec::new(),
    }
}

/// Pushes every sample through the word.
pub fn push_trace(tokens: &[Token], trace: &SolutionTrace) -> Result<(Vec<Jet>, Exponents)> {
    let plan = WordPlan::new(tokens, &trace_exponents(trace))?;
    let mut out = Vec::with_capacity(trace.samples.len());
    for (i, j) in trace.samples.iter().enumerate() {
        out.push(plan.push(j).map_err(|e| Error::AtSample { index: i, source: Box::new(e) })?);
    }
    Ok((out, plan.image))
}

/// Maximum relative defects (jet consistency, equation residual) of sampled
/// jets, from centered five-point stencils on interior samples.
pub fn trace_defects(samples: &[Jet], theta: &[C; 4]) -> (usize, f64, f64) {
    let p = params_from_theta(theta);
    let n = samples.len();
    let mut jet: f64 = 0.0;
    let mut res: f64 = 0.0;
    if n < 5 {
        return (0, f64::NAN, f64::NAN);
    }
    for i in 2..n - 2 {
        let nodes: Vec<C> = samples[i - 2..=i + 2].iter().map(|s| s.x).collect();
        let w = fornberg_weights(samples[i].x, &nodes, 1);
        let du_fd: C = (0..5).map(|k| w[1][k] * samples[i - 2 + k].u).sum();
        let ddu_fd: C = (0..5).map(|k| w[1][k] * samples[i - 2 + k].du).sum();
        let s = samples[i];
        let rhs = rhs_unchecked(s.x, s.u, s.du, &p);
        jet = nan_max(jet, rel_gap(du_fd, s.du));
        res = nan_max(res, rel_gap(ddu_fd, rhs));
    }
    (n - 4, jet, res)
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn within(v: f64, tol: f64) -> bool {
    v <= tol
}

fn finite_or_none(v: f64, what: &str, diag: &mut Vec<String>) -> Option<f64> {
    if v.is_finite() {
        Some(v)
    } else {
        diag.push(format!("{what} is not finite"));
        None
    }
}

/// Checks that the image of `trace` under the word solves the target equation.
pub fn verify_word(tokens: &[Token], trace: &SolutionTrace, tol: &Tolerances) -> Result<VerificationReport> {
    let name = format_word(tokens);
    let mut r = blank_report(&name, "word", trace);
    let (images, e) = push_trace(tokens, trace)?;
    r.image_theta = Some(theta_strings(&e));
    let (used, jet, res) = trace_defects(&images, &e.complex);
    r.samples_used = used;
    r.max_jet_defect = finite_or_none(jet, "jet defect", &mut r.diagnostics);
    r.max_residual = finite_or_none(res, "residual", &mut r.diagnostics);
    if used == 0 {
        r.diagnostics.push("fewer than five samples".into());
    }
    r.pass = used > 0 && within(jet, tol.jet) && within(res, tol.residual);
    if !r.pass && r.diagnostics.is_empty() {
        r.diagnostics.push(format!("jet defect {jet:e} (tol {:e}), residual {res:e} (tol {:e})", tol.jet, tol.residual));
    }
    Ok(r)
}

fn max_jet_gap(a: &[Jet], b: &[Jet]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| rel_gap(p.x, q.x).max(rel_gap(p.u, q.u)).max(rel_gap(p.du, q.du)))
        .fold(0.0, nan_max)
}

/// Pointwise gap between the images of two routes.
pub fn compare_routes(a: &[Token], b: &[Token], trace: &SolutionTrace) -> Result<(f64, Exponents, Exponents)> {
    let (ia, ea) = push_trace(a, trace)?;
    let (ib, eb) = push_trace(b, trace)?;
    Ok((max_jet_gap(&ia, &ib), ea, eb))
}

/// Word over realizable tokens equal to the direct formula of `direct`.
pub fn equivalent_route(direct: Generator) -> Result<(Vec<Token>, Vec<Token>)> {
    match direct {
        Generator::Tms => Ok((vec![Token::new(Generator::Tms, 1)], parse_word(Generator::Tms.cm_word().unwrap())?)),
        Generator::Tnjh => Ok((
            vec![Token::new(Generator::Tnjh, -1)],
            invert_word(&parse_word(Generator::Tnjh.cm_word().unwrap())?),
        )),
        g => Err(Error::InvalidInput(format!("no direct formula to cross-validate for {g}"))),
    }
}

/// Direct formula against its word over T_CM, signs and homographies.
pub fn cross_validate(direct: Generator, trace: &SolutionTrace, tol: &Tolerances) -> Result<VerificationReport> {
    let (d, w) = equivalent_route(direct)?;
    let mut r = blank_report(&format!("{} vs {}", format_word(&d), format_word(&w)), "cross-validation", trace);
    let agree: AffineMap = evaluate_word(&d, Convention::Last);
    if !agree.same_affine(&evaluate_word(&w, Convention::Last)) {
        r.diagnostics.push("routes differ in the affine representation".into());
    }
    let (gap, ea, eb) = compare_routes(&d, &w, trace)?;
    if ea.exact != eb.exact {
        r.diagnostics.push("routes reach different exponents".into());
    }
    r.image_theta = Some(theta_strings(&ea));
    r.samples_used = trace.samples.len();
    r.max_cross_gap = finite_or_none(gap, "cross gap", &mut r.diagnostics);
    r.pass = r.diagnostics.is_empty() && within(gap, tol.cross);
    if !r.pass && r.diagnostics.is_empty() {
        r.diagnostics.push(format!("gap {gap:e} exceeds {:e}", tol.cross));
    }
    Ok(r)
}

/// The word applied twice returns the source jets.
pub fn round_trip(tokens: &[Token], trace: &SolutionTrace, tol: &Tolerances) -> Result<VerificationReport> {
    let mut twice = tokens.to_vec();
    twice.extend_from_slice(tokens);
    let mut r = blank_report(&format_word(&twice), "round-trip", trace);
    let (img, e) = push_trace(&twice, trace)?;
    r.image_theta = Some(theta_strings(&e));
    let gap = max_jet_gap(&img, &trace.samples);
    r.samples_used = trace.samples.len();
    r.max_roundtrip_gap = finite_or_none(gap, "round-trip gap", &mut r.diagnostics);
    r.pass = r.diagnostics.is_empty() && within(gap, tol.roundtrip);
    if !r.pass && r.diagnostics.is_empty() {
        r.diagnostics.push(format!("gap {gap:e} exceeds {:e}", tol.roundtrip));
    }
    Ok(r)
}

/// Position of the first T_CM step that would act on exponents with sum 1,
/// where it degenerates to the identity and is not a transformation.
pub fn degenerate_tcm_position(tokens: &[Token], theta: &ThetaVector) -> Option<usize> {
    let one = qf(1, 1);
    let mut t = theta.clone();
    for (pos, tok) in tokens.iter().enumerate().rev() {
        let step = evaluate_word(&[Token::new(tok.gen, tok.exp.signum())], Convention::Last);
        for _ in 0..tok.exp.unsigned_abs() {
            if tok.gen == Generator::Tcm && t.sum() == one {
                return Some(pos);
            }
            t = step.apply_theta(&t);
        }
    }
    None
}

/// All words of length 1..=max_len over `alphabet`, in lexicographic order.
pub fn enumerate_words(alphabet: &[Generator], max_len: usize) -> Vec<Vec<Token>> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<Token>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for &g in alphabet {
                let mut nw = w.clone();
                nw.push(Token::new(g, 1));
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Aggregated `verify_word` over every word up to `max_len`; words that put
/// T_CM on exponent sum 1 are counted as degenerate and skipped.
pub fn sweep_words(alphabet: &[Generator], max_len: usize, trace: &SolutionTrace, tol: &Tolerances) -> VerificationReport {
    let names: Vec<&str> = alphabet.iter().map(|g| g.name()).collect();
    let mut r = blank_report(&format!("words of length <= {max_len} over {{{}}}", names.join(",")), "word-sweep", trace);
    let mut counts = WordCounts { checked: 0, degenerate: 0, failed: 0 };
    let mut worst_res: (f64, String) = (0.0, String::new());
    let mut worst_jet: f64 = 0.0;
    let exact = trace.theta_exact.clone();
    for w in enumerate_words(alphabet, max_len) {
        if let Some(t) = &exact {
            if degenerate_tcm_position(&w, t).is_some() {
                counts.degenerate += 1;
                continue;
            }
        }
        counts.checked += 1;
        match verify_word(&w, trace, tol) {
            Ok(rep) => {
                r.samples_used += rep.samples_used;
                let res = rep.max_residual.unwrap_or(f64::INFINITY);
                let jet = rep.max_jet_defect.unwrap_or(f64::INFINITY);
                if res > worst_res.0 {
                    worst_res = (res, rep.name.clone());
                }
                worst_jet = worst_jet.max(jet);
                if !rep.pass {
                    counts.failed += 1;
                    if counts.failed <= 20 {
                        r.diagnostics.push(format!("{}: {}", rep.name, rep.diagnostics.join("; ")));
                    }
                }
            }
            Err(e) => {
                counts.failed += 1;
                if counts.failed <= 20 {
                    r.diagnostics.push(format!("{}: {e}", format_word(&w)));
                }
            }
        }
    }
    r.max_residual = Some(worst_res.0);
    r.max_jet_defect = Some(worst_jet);
    if counts.degenerate > 0 {
        r.diagnostics.push(format!("{} words skipped: T_CM at exponent sum 1 is the identity", counts.degenerate));
    }
    if !worst_res.1.is_empty() {
        r.diagnostics.push(format!("largest residual from {}", worst_res.1));
    }
    r.pass = counts.failed == 0 && counts.checked > 0;
    r.words = Some(counts);
    r
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub fixture: Fixture,
    pub tolerances: Tolerances,
    /// Words verified one by one; signs, x-preserving homographies and T_CM
    /// among them also form the sweep alphabet.
    pub generators: Vec<String>,
    pub sweep_max_len: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            fixture: Fixture::default(),
            tolerances: Tolerances::default(),
            generators: [
                "Tcm", "Tms", "Tnjh^-1", "Sa", "Sb", "Sc", "Sd", "Hbadc", "Hdcba", "Hcdab", "Hadcb", "Hcbad", "Habdc", "Hacbd",
                "Habdc*Tms*Habdc", "Hadcb*Tcm*Hbadc",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            sweep_max_len: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub audit: Vec<RelationVerdict>,
    pub audit_pass: bool,
    pub reports: Vec<VerificationReport>,
    pub pass: bool,
}

fn error_report(name: &str, check: &str, trace: &SolutionTrace, e: &Error) -> VerificationReport {
    let mut r = blank_report(name, check, trace);
    r.diagnostics.push(e.to_string());
    r
}

/// Audit, per-word verification, round trips, cross-validation and the
/// word sweep. Failures are reported, never raised.
pub fn run_full_suite(config: &SuiteConfig) -> SuiteReport {
    let audit = audit_relations();
    let audit_pass = all_relations_hold(&audit);
    let mut reports = Vec::new();
    if !config.generators.is_empty() {
        match fixture_trace(&config.fixture, config.tolerances.integration) {
            Err(e) => {
                let empty = SolutionTrace {
                    theta: config.fixture.theta.to_complex(),
                    theta_exact: Some(config.fixture.theta.clone()),
                    samples: vec![config.fixture.start],
                    tol: config.tolerances.integration,
                };
                reports.push(error_report("fixture", "integration", &empty, &e));
            }
            Ok(trace) => suite_on_trace(config, &trace, &mut reports),
        }
    }
    let pass = audit_pass && reports.iter().all(|r| r.pass);
    SuiteReport { audit, audit_pass, reports, pass }
}

fn suite_on_trace(config: &SuiteConfig, trace: &SolutionTrace, reports: &mut Vec<VerificationReport>) {
    let tol = &config.tolerances;
    let mut alphabet = Vec::new();
    for w in &config.generators {
        let tokens = match parse_word(w) {
            Ok(t) => t,
            Err(e) => {
                reports.push(error_report(w, "word", trace, &e));
                continue;
            }
        };
        reports.push(verify_word(&tokens, trace, tol).unwrap_or_else(|e| error_report(w, "word", trace, &e)));
        if let [t] = tokens.as_slice() {
            let g = t.gen;
            let involutive = matches!(t.exp, 1 | -1) && (g == Generator::Tcm || g.kind() != crate::catalog::Kind::Schlesinger);
            if involutive {
                reports.push(round_trip(&tokens, trace, tol).unwrap_or_else(|e| error_report(w, "round-trip", trace, &e)));
            }
            if (g == Generator::Tms && t.exp == 1) || (g == Generator::Tnjh && t.exp == -1) {
                reports.push(cross_validate(g, trace, tol).unwrap_or_else(|e| error_report(w, "cross-validation", trace, &e)));
            }
            if t.exp == 1
                && (g == Generator::Tcm || Generator::SIGNS.contains(&g) || Generator::X_PRESERVING.contains(&g))
                && !alphabet.contains(&g)
            {
                alphabet.push(g);
            }
        }
    }
    if config.sweep_max_len > 0 && !alphabet.is_empty() {
        alphabet.sort();
        reports.push(sweep_words(&alphabet, config.sweep_max_len, trace, tol));
    }
}

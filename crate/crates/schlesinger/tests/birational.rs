use num_complex::Complex64 as C;
use schlesinger::birational::{cm_sum, ms_factors, push_generator, push_tcm, push_tms, push_trivial, push_word, Exponents, TransformDirection};
use schlesinger::catalog::{Generator, Token};
use schlesinger::error::Error;
use schlesinger::fd::numerical_derivative;
use schlesinger::pvi::Jet;
use schlesinger::rational::ThetaVector;
use schlesinger::verify::{fixture_trace, push_trace, rel_gap, verify_word, Fixture, Tolerances};
use schlesinger::word::parse_word;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn exps(s: &str) -> Exponents {
    Exponents::exact(ThetaVector::parse(s).unwrap())
}

fn jet() -> Jet {
    Jet::new(C::new(0.35, 0.15), C::new(1.4, -0.7), C::new(0.25, 0.6))
}

#[test]
fn trivial_examples() {
    let j = Jet::real(2.0, 5.0, 3.0);
    assert_eq!(push_trivial(Generator::Sa, &j).unwrap(), j);
    let img = push_trivial(Generator::Hacbd, &Jet::real(2.0, 3.0, 4.0)).unwrap();
    assert_eq!((img.x, img.u, img.du), (c(-1.0), c(-2.0), c(4.0)));
    let img = push_trivial(Generator::Habdc, &Jet::real(2.0, 3.0, 5.0)).unwrap();
    assert!((img.x - c(0.5)).norm() < 1e-15 && (img.u - c(1.5)).norm() < 1e-15 && (img.du - c(-7.0)).norm() < 1e-14);
    let r = push_trivial(Generator::Hdcba, &Jet::real(0.5, 0.5 + 1e-12, 1.0));
    assert!(matches!(r, Err(Error::SingularConfiguration(_))));
}

#[test]
fn tcm_s_is_the_same_on_both_sides() {
    let th = exps("1/3,1/4,1/5,1/6");
    let (img, ith) = push_tcm(&jet(), &th).unwrap();
    let s_old = cm_sum(&jet(), &th.complex).s;
    let s_new = cm_sum(&img, &ith.complex).s;
    assert!(rel_gap(s_new, s_old) <= 1e-9);
    let (back, bth) = push_tcm(&img, &ith).unwrap();
    assert_eq!(bth.exact, th.exact);
    assert!(rel_gap(back.u, jet().u) <= 1e-9 && rel_gap(back.du, jet().du) <= 1e-9);
}

#[test]
fn tcm_degenerate_at_unit_sum() {
    let r = push_tcm(&jet(), &exps("1/4,1/4,1/4,1/4"));
    assert!(matches!(r, Err(Error::DegenerateMap(_))));
}

#[test]
fn tms_solves_its_relation() {
    let th = exps("1/3,1/4,1/5,1/6");
    let j = jet();
    let (img, _) = push_tms(&j, &th).unwrap();
    let k = ms_factors(&j, &th.complex).k();
    let (x, u, uu) = (j.x, img.u, j.u);
    let lhs = (u - x) * (uu - x) / ((1.0 - x) * u * uu);
    assert!(rel_gap(lhs, k) <= 1e-12, "{lhs} vs {k}");
}

#[test]
fn njh_moves_x() {
    let (img, _) = push_generator(Generator::Tnjh, TransformDirection::OldToNew, &Jet::real(3.0, 2.5, 0.1), &exps("1/3,1/4,1/5,1/6")).unwrap();
    assert!((img.x - c(1.5)).norm() < 1e-15);
}

#[test]
fn word_examples() {
    let th = exps("1/3,1/4,1/5,1/6");
    let (same, e) = push_word(&[], &jet(), &th).unwrap();
    assert_eq!(same, jet());
    assert_eq!(e.exact, th.exact);
    let (back, _) = push_word(&parse_word("Tcm*Tcm").unwrap(), &jet(), &th).unwrap();
    assert!(rel_gap(back.u, jet().u) <= 1e-9);
    match push_word(&parse_word("Sa*Tfy").unwrap(), &jet(), &th) {
        Err(Error::AtWordPosition { position: 1, source, .. }) => assert!(matches!(*source, Error::DirectionUnavailable { .. })),
        other => panic!("{other:?}"),
    }
}

/// Closed-form image derivative against differences of the image value
/// along an exact solution of the source equation, one sample at a time.
#[test]
fn derivative_propagation_matches_finite_differences() {
    let f = Fixture::default();
    let trace = fixture_trace(&f, 1e-12).unwrap();
    let src = Exponents::exact(f.theta.clone());
    for word in ["Tcm", "Tms", "Tnjh^-1", "Habdc", "Hadcb*Tcm*Hbadc"] {
        let tokens = parse_word(word).unwrap();
        let (images, _) = push_trace(&tokens, &trace).unwrap();
        for i in (50..trace.samples.len() - 50).step_by(100) {
            // Image value as a function of the source x, using the trace as a
            // local solution through a fitted Taylor polynomial.
            let s = trace.samples[i];
            let rhs = schlesinger::pvi::pvi_rhs(&s, &schlesinger::pvi::params_from_theta(&src.complex)).unwrap();
            let local = |x: C| {
                let h = x - s.x;
                let j = Jet::new(x, s.u + s.du * h + 0.5 * rhs * h * h, s.du + rhs * h);
                push_word(&tokens, &j, &src).map(|(img, _)| (img.x, img.u))
            };
            let dx = numerical_derivative(|x| local(x).map(|p| p.0), s.x, 1e-4).unwrap();
            let du = numerical_derivative(|x| local(x).map(|p| p.1), s.x, 1e-4).unwrap();
            let fd = du / dx;
            assert!(rel_gap(fd, images[i].du) <= 1e-6, "{word} at {i}: {fd} vs {}", images[i].du);
        }
    }
}

#[test]
fn tcm_closed_form_sensitivity_against_numerical_derivative() {
    // U as a function of u′ at fixed (x, u): the closed form is linear-fractional in u′.
    let th = exps("1/3,1/4,1/5,1/6");
    let j = jet();
    let g = |du: C| push_tcm(&Jet::new(j.x, j.u, du), &th).map(|p| p.0.u);
    let d = numerical_derivative(g, j.du, 1e-3).unwrap();
    let Jet { x, u, .. } = j;
    let s = cm_sum(&j, &th.complex).s;
    let ds = x * (x - 1.0) / (u * (u - 1.0) * (u - x));
    let k = 2.0 * (th.complex[0] - th.apply(Generator::Tcm.map()).complex[0]);
    let exact = k * ds / (s * s);
    assert!(rel_gap(d, exact) <= 1e-7, "{d} vs {exact}");
}

#[test]
fn signs_reuse_the_solution() {
    let trace = fixture_trace(&Fixture::default(), 1e-10).unwrap();
    let (img, e) = push_trace(&[Token::new(Generator::Sb, 1)], &trace).unwrap();
    assert_eq!(img, trace.samples);
    assert_eq!(e.exact.unwrap(), ThetaVector::parse("1/2,-1/2,1/2,1/2").unwrap());
}

#[test]
fn homographies_solve_the_permuted_equation() {
    let trace = fixture_trace(&Fixture::default(), 1e-10).unwrap();
    for g in Generator::HOMOGRAPHIES {
        let r = verify_word(&[Token::new(g, 1)], &trace, &Tolerances::default()).unwrap();
        assert!(r.pass, "{g}: {:?}", r.diagnostics);
    }
}

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schlesinger::catalog::Generator;
use schlesinger::error::Error;
use schlesinger::integrate::{integrate, integrate_with, IntegrateOptions};
use schlesinger::pvi::{params_from_theta, params_from_theta_exact, pvi_rhs, residual, theta_from_params, Branch, Jet, ParameterVector};
use schlesinger::rational::{qf, ThetaVector};
use schlesinger::verify::{rel_gap, trace_defects, Fixture};

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn rand_c(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

#[test]
fn conversion_examples() {
    let p = params_from_theta_exact(&ThetaVector::from_ints([1, 1, 1, 1]));
    assert_eq!(p, [qf(1, 2), qf(-1, 2), qf(1, 2), qf(0, 1)]);
    assert_eq!(params_from_theta_exact(&ThetaVector::from_ints([0, 0, 0, 1])), [qf(0, 1), qf(0, 1), qf(0, 1), qf(0, 1)]);
    assert_eq!(params_from_theta_exact(&ThetaVector::zero()), [qf(0, 1), qf(0, 1), qf(0, 1), qf(1, 2)]);

    let p = ParameterVector::new(c(0.5), c(-0.5), c(0.5), c(0.0)).unwrap();
    assert_eq!(theta_from_params(&p, Branch::PRINCIPAL), [c(1.0); 4]);
    let z = ParameterVector::new(c(0.0), c(0.0), c(0.0), c(0.5)).unwrap();
    for b in Branch::all() {
        assert!(theta_from_params(&z, b).iter().all(|t| t.norm() == 0.0));
    }
    assert!(ParameterVector::new(c(f64::NAN), c(0.0), c(0.0), c(0.0)).is_err());
}

#[test]
fn random_round_trips_on_every_branch() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = ParameterVector::new(rand_c(&mut rng), rand_c(&mut rng), rand_c(&mut rng), rand_c(&mut rng)).unwrap();
        let scale = p.as_array().iter().map(|z| z.norm()).fold(0.0, f64::max);
        for b in Branch::all() {
            let back = params_from_theta(&theta_from_params(&p, b));
            for (a, e) in back.as_array().iter().zip(p.as_array()) {
                worst = worst.max((a - e).norm() / scale);
            }
        }
    }
    assert!(worst <= 1e-14, "worst relative gap {worst:e}");
}

#[test]
fn sign_flips_leave_parameters_exactly_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let t = ThetaVector(std::array::from_fn(|_| qf(rng.gen_range(-40..40), rng.gen_range(1..12))));
        let p = params_from_theta_exact(&t);
        for s in Generator::SIGNS {
            assert_eq!(params_from_theta_exact(&s.map().apply_theta(&t)), p);
        }
    }
}

#[test]
fn rhs_and_residual_examples() {
    let j = Jet::real(3.0, 2.0, 0.0);
    assert_eq!(pvi_rhs(&j, &ParameterVector::zero()).unwrap(), c(0.0));
    let half = ParameterVector::new(c(0.5), c(0.0), c(0.0), c(0.0)).unwrap();
    assert!((pvi_rhs(&j, &half).unwrap() - c(-1.0 / 36.0)).norm() < 1e-15);
    assert!((pvi_rhs(&Jet::real(3.0, 2.0, 1.0), &ParameterVector::zero()).unwrap() - c(5.0 / 12.0)).norm() < 1e-15);

    let p = ParameterVector::new(C::new(0.3, 0.1), c(-0.2), c(0.7), C::new(0.1, -0.4)).unwrap();
    let j = Jet::new(C::new(0.4, 0.2), C::new(1.3, -0.6), C::new(0.2, 0.9));
    let f = pvi_rhs(&j, &p).unwrap();
    assert_eq!(residual(j.x, j.u, j.du, f, &p).unwrap(), c(0.0));
    let eps = C::new(1e-3, 0.0);
    assert!((residual(j.x, j.u, j.du, f + eps, &p).unwrap() - eps).norm() < 1e-15);
    assert_eq!(residual(c(0.7), c(5.0), c(0.0), c(0.0), &ParameterVector::zero()).unwrap(), c(0.0));
    assert!(matches!(pvi_rhs(&Jet::real(0.5, 0.5, 0.0), &p), Err(Error::SingularConfiguration(_))));
}

#[test]
fn constant_solution() {
    let start = Jet::real(2.0, 5.0, 0.0);
    let t = integrate(start, ThetaVector::from_ints([0, 0, 0, 1]).to_complex(), &[c(2.0), c(3.0)], 1e-10, 10_000).unwrap();
    let end = t.samples.last().unwrap();
    assert_eq!(end.x, c(3.0));
    assert!((end.u - c(5.0)).norm() < 1e-10 && end.du.norm() < 1e-10);
}

#[test]
fn reversed_path_returns_to_start() {
    let f = Fixture::default();
    let theta = f.theta.to_complex();
    let tol = 1e-10;
    let there = integrate(f.start, theta, &[f.start.x, f.x_end], tol, 100_000).unwrap();
    let end = *there.samples.last().unwrap();
    let back = integrate(end, theta, &[f.x_end, f.start.x], tol, 100_000).unwrap();
    let home = back.samples.last().unwrap();
    assert_eq!(home.x, f.start.x);
    let gap = rel_gap(home.u, f.start.u).max(rel_gap(home.du, f.start.du));
    assert!(gap <= 10.0 * tol, "gap {gap:e}");
}

#[test]
fn integrated_trace_has_small_residual() {
    let theta = [C::new(0.3, 0.2), c(0.6), C::new(-0.1, 0.4), c(1.3)];
    let start = Jet::new(c(0.2), C::new(0.6, 0.3), C::new(-0.5, 1.0));
    let opts = IntegrateOptions { min_steps_per_segment: 300, ..Default::default() };
    let t = integrate_with(start, theta, None, &[start.x, C::new(0.5, 0.25), c(0.8)], &opts).unwrap();
    let (used, jet, res) = trace_defects(&t.samples, &theta);
    assert!(used > 500);
    assert!(res <= 1e-6, "residual {res:e}");
    assert!(jet <= 1e-6, "jet defect {jet:e}");
}

#[test]
fn integration_is_deterministic() {
    let f = Fixture::default();
    let a = integrate(f.start, f.theta.to_complex(), &[f.start.x, f.x_end], 1e-10, 100_000).unwrap();
    let b = integrate(f.start, f.theta.to_complex(), &[f.start.x, f.x_end], 1e-10, 100_000).unwrap();
    assert_eq!(a, b);
}

#[test]
fn path_through_a_fixed_singularity_is_refused() {
    let start = Jet::real(0.5, 2.0, 0.0);
    let r = integrate(start, [c(0.5); 4], &[c(0.5), c(1.5)], 1e-10, 10_000);
    assert!(matches!(r, Err(Error::ForbiddenWaypoint(_))));
}

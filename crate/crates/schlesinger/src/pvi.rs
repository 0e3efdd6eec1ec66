//! The sixth Painlevé equation: parameters, jets, right-hand side.

use num_complex::Complex64 as C;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{q, ThetaVector, Q};

/// Jets with min(|u|, |u−1|, |u−x|, |x|, |x−1|) below this are rejected.
pub const GUARD_MIN: f64 = 1e-10;
/// Jets with |u| above this are rejected.
pub const GUARD_MAX: f64 = 1e10;

/// (α, β, γ, δ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParameterVector {
    pub alpha: C,
    pub beta: C,
    pub gamma: C,
    pub delta: C,
}

impl ParameterVector {
    pub fn new(alpha: C, beta: C, gamma: C, delta: C) -> Result<Self> {
        let p = ParameterVector { alpha, beta, gamma, delta };
        if p.as_array().iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(p)
        } else {
            Err(Error::InvalidInput("parameters must be finite".into()))
        }
    }

    pub fn as_array(&self) -> [C; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn zero() -> Self {
        ParameterVector { alpha: C::new(0.0, 0.0), beta: C::new(0.0, 0.0), gamma: C::new(0.0, 0.0), delta: C::new(0.0, 0.0) }
    }
}

/// A 1-jet (x, u, u′) of a solution; u′ is the derivative with respect to x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub x: C,
    pub u: C,
    pub du: C,
}

impl Jet {
    pub fn new(x: C, u: C, du: C) -> Self {
        Jet { x, u, du }
    }

    pub fn real(x: f64, u: f64, du: f64) -> Self {
        Jet { x: C::new(x, 0.0), u: C::new(u, 0.0), du: C::new(du, 0.0) }
    }

    /// Checks the distance guards; the error names the offending quantity.
    pub fn check_guards(&self) -> Result<()> {
        let checks = [
            ("|x|", self.x.norm()),
            ("|x-1|", (self.x - 1.0).norm()),
            ("|u|", self.u.norm()),
            ("|u-1|", (self.u - 1.0).norm()),
            ("|u-x|", (self.u - self.x).norm()),
        ];
        for (name, v) in checks {
            if !(v >= GUARD_MIN) {
                return Err(Error::SingularConfiguration(format!("{name} = {v:e} at x = {}", self.x)));
            }
        }
        let all = [self.x, self.u, self.du];
        if self.u.norm() > GUARD_MAX || all.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::SingularConfiguration(format!("|u| = {:e} at x = {}", self.u.norm(), self.x)));
        }
        Ok(())
    }

    pub fn is_regular(&self) -> bool {
        self.check_guards().is_ok()
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x = {}, u = {}, du = {})", self.x, self.u, self.du)
    }
}

/// Samples of a solution at accepted integration steps.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionTrace {
    pub theta: [C; 4],
    /// Present when the exponents are known exactly.
    pub theta_exact: Option<ThetaVector>,
    pub samples: Vec<Jet>,
    pub tol: f64,
}

impl SolutionTrace {
    pub fn params(&self) -> ParameterVector {
        params_from_theta(&self.theta)
    }
}

/// α = θ∞²/2, β = −θ0²/2, γ = θ1²/2, δ = (1 − θx²)/2.
pub fn params_from_theta(t: &[C; 4]) -> ParameterVector {
    ParameterVector {
        alpha: t[0] * t[0] / 2.0,
        beta: -t[1] * t[1] / 2.0,
        gamma: t[2] * t[2] / 2.0,
        delta: (1.0 - t[3] * t[3]) / 2.0,
    }
}

/// The same conversion in exact arithmetic.
pub fn params_from_theta_exact(t: &ThetaVector) -> [Q; 4] {
    let two = q(2);
    let [a, b, c, d] = &t.0;
    [a * a / &two, -(b * b) / &two, c * c / &two, (q(1) - d * d) / &two]
}

/// Per-component sign choice for the square roots, written like `+-++`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Branch(pub [bool; 4]);

impl Branch {
    pub const PRINCIPAL: Branch = Branch([true; 4]);

    pub fn all() -> impl Iterator<Item = Branch> {
        (0..16u8).map(|b| Branch(std::array::from_fn(|k| b & (8 >> k) == 0)))
    }

    pub fn parse(s: &str) -> Result<Branch> {
        let cs: Vec<char> = s.trim().chars().collect();
        if cs.len() != 4 || cs.iter().any(|c| *c != '+' && *c != '-') {
            return Err(Error::InvalidInput(format!("branch must be four of + or -, got `{s}`")));
        }
        Ok(Branch(std::array::from_fn(|k| cs[k] == '+')))
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0 {
            f.write_str(if s { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Principal square roots with the branch signs applied.
pub fn theta_from_params(p: &ParameterVector, branch: Branch) -> [C; 4] {
    let raw = [
        (2.0 * p.alpha).sqrt(),
        (-2.0 * p.beta).sqrt(),
        (2.0 * p.gamma).sqrt(),
        (1.0 - 2.0 * p.delta).sqrt(),
    ];
    std::array::from_fn(|k| if branch.0[k] { raw[k] } else { -raw[k] })
}

/// u″ from the equation.
pub fn pvi_rhs(j: &Jet, p: &ParameterVector) -> Result<C> {
    j.check_guards()?;
    Ok(rhs_unchecked(j.x, j.u, j.du, p))
}

#[inline]
pub(crate) fn rhs_unchecked(x: C, u: C, du: C, p: &ParameterVector) -> C {
    let um1 = u - 1.0;
    let umx = u - x;
    let xm1 = x - 1.0;
    let first = 0.5 * (1.0 / u + 1.0 / um1 + 1.0 / umx) * du * du;
    let second = (1.0 / x + 1.0 / xm1 + 1.0 / umx) * du;
    let pre = u * um1 * umx / (x * x * xm1 * xm1);
    let bracket = p.alpha + p.beta * x / (u * u) + p.gamma * xm1 / (um1 * um1) + p.delta * x * xm1 / (umx * umx);
    first - second + pre * bracket
}

/// u″ − RHS.
pub fn residual(x: C, u: C, du: C, ddu: C, p: &ParameterVector) -> Result<C> {
    Ok(ddu - pvi_rhs(&Jet::new(x, u, du), p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn rhs_examples() {
        let j = Jet::real(3.0, 2.0, 0.0);
        assert_eq!(pvi_rhs(&j, &ParameterVector::zero()).unwrap(), c(0.0));
        let p = ParameterVector::new(c(0.5), c(0.0), c(0.0), c(0.0)).unwrap();
        assert!((pvi_rhs(&j, &p).unwrap() - c(-1.0 / 36.0)).norm() < 1e-15);
        let j = Jet::real(3.0, 2.0, 1.0);
        assert!((pvi_rhs(&j, &ParameterVector::zero()).unwrap() - c(5.0 / 12.0)).norm() < 1e-15);
    }

    #[test]
    fn residual_examples() {
        let p = ParameterVector::zero();
        assert_eq!(residual(c(0.3), c(5.0), c(0.0), c(0.0), &p).unwrap(), c(0.0));
        let p = ParameterVector::new(c(0.1), c(-0.2), c(0.3), c(0.4)).unwrap();
        let j = Jet::new(C::new(0.4, 0.1), C::new(2.0, 1.0), C::new(0.3, -0.2));
        let f = pvi_rhs(&j, &p).unwrap();
        let eps = c(1e-3);
        assert_eq!(residual(j.x, j.u, j.du, f + eps, &p).unwrap(), (f + eps) - f);
    }

    #[test]
    fn guards() {
        assert!(pvi_rhs(&Jet::real(3.0, 3.0, 0.0), &ParameterVector::zero()).is_err());
        assert!(pvi_rhs(&Jet::real(1.0, 3.0, 0.0), &ParameterVector::zero()).is_err());
        assert!(pvi_rhs(&Jet::real(0.5, 2e10, 0.0), &ParameterVector::zero()).is_err());
        assert!(ParameterVector::new(c(f64::NAN), c(0.0), c(0.0), c(0.0)).is_err());
    }

    #[test]
    fn conversions() {
        let p = params_from_theta_exact(&ThetaVector::from_ints([1, 1, 1, 1]));
        assert_eq!(p, [qf(1, 2), qf(-1, 2), qf(1, 2), q(0)]);
        assert_eq!(params_from_theta_exact(&ThetaVector::from_ints([0, 0, 0, 1])), [q(0), q(0), q(0), q(0)]);
        assert_eq!(params_from_theta_exact(&ThetaVector::zero()), [q(0), q(0), q(0), qf(1, 2)]);
        let t = theta_from_params(&ParameterVector::new(c(0.5), c(-0.5), c(0.5), c(0.0)).unwrap(), Branch::PRINCIPAL);
        assert_eq!(t, [c(1.0); 4]);
        for b in Branch::all() {
            let t = theta_from_params(&ParameterVector::new(c(0.0), c(0.0), c(0.0), c(0.5)).unwrap(), b);
            assert!(t.iter().all(|z| z.norm() == 0.0));
        }
        assert_eq!(Branch::all().count(), 16);
        assert_eq!(Branch::parse("+-+-").unwrap().to_string(), "+-+-");
        assert!(Branch::parse("+-+").is_err());
    }
}

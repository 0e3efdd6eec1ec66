//! Pushforward of 1-jets under the generators.
//!
//! Every map is written from the new variables (U, X, Θ) to the old ones
//! (u, x, θ), matching the affine maps of the catalog. Sign flips,
//! homographies and T_CM are involutions and work in both directions.
//! T_MS is realized new→old, T_NJH old→new; the remaining directions are
//! reached through the words returned by [`Generator::cm_word`].

use num_complex::Complex64 as C;

use crate::affine::{inverse, AffineMap};
use crate::catalog::{Generator, Kind, Token};
use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::pvi::{params_from_theta, pvi_rhs, Jet};
use crate::rational::ThetaVector;

/// Exponents carried alongside a jet; the exact copy is kept when known.
#[derive(Clone, Debug, PartialEq)]
pub struct Exponents {
    pub complex: [C; 4],
    pub exact: Option<ThetaVector>,
}

impl Exponents {
    pub fn exact(t: ThetaVector) -> Self {
        Exponents { complex: t.to_complex(), exact: Some(t) }
    }

    pub fn complex(c: [C; 4]) -> Self {
        Exponents { complex: c, exact: None }
    }

    pub fn apply(&self, m: &AffineMap) -> Exponents {
        Exponents { complex: m.apply_theta_c(&self.complex), exact: self.exact.as_ref().map(|t| m.apply_theta(t)) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformDirection {
    /// (u, x, θ) → (U, X, Θ).
    OldToNew,
    /// (U, X, Θ) → (u, x, θ).
    NewToOld,
}

/// The four quadratic factors of the T_MS relation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MsFactors {
    pub rn_plus: C,
    pub rn_minus: C,
    pub rd_plus: C,
    pub rd_minus: C,
}

impl MsFactors {
    pub fn k(&self) -> C {
        self.rn_plus * self.rn_minus / (self.rd_plus * self.rd_minus)
    }
}

/// Common value of the two logarithmic-derivative sums of T_CM.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CmSum {
    pub s: C,
}

fn guard_image(j: Jet, what: &str) -> Result<Jet> {
    j.check_guards().map_err(|e| match e {
        Error::SingularConfiguration(m) => Error::SingularConfiguration(format!("image of {what}: {m}")),
        e => e,
    })?;
    Ok(j)
}

fn nonzero(v: C, factor: &'static str) -> Result<C> {
    if v.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::VanishingDenominator { factor });
    }
    Ok(v)
}

/// Sign flips and homographies on (x, u, du); the exponents are not touched.
pub fn push_trivial(gen: Generator, j: &Jet) -> Result<Jet> {
    match gen.kind() {
        Kind::Sign => return Ok(*j),
        Kind::Schlesinger => return Err(Error::InvalidInput(format!("{gen} is not a trivial generator"))),
        Kind::Homography => {}
    }
    j.check_guards()?;
    let xx = Dual::var(j.x);
    let uu = Dual::new(j.u, j.du);
    let x = match gen {
        Generator::Hadcb | Generator::Hcbad => xx / (xx - 1.0),
        Generator::Habdc => xx.recip(),
        Generator::Hacbd => 1.0 - xx,
        _ => xx,
    };
    let u = match gen {
        Generator::Hbadc => x / uu,
        Generator::Hdcba => x + x * (x - 1.0) / (uu - x),
        Generator::Hcdab => 1.0 + (1.0 - x) / (uu - 1.0),
        Generator::Hadcb => x + (1.0 - x) * uu,
        Generator::Hcbad => 1.0 + (uu - 1.0).recip(),
        Generator::Habdc => x * uu,
        Generator::Hacbd => 1.0 - uu,
        _ => unreachable!(),
    };
    guard_image(Jet::new(x.v, u.v, u.d / x.d), gen.name())
}

/// The T_CM sum x(x−1)u′/(u(u−1)(u−x)) + θ0/u + θ1/(u−1) + (θx−1)/(u−x).
pub fn cm_sum(j: &Jet, theta: &[C; 4]) -> CmSum {
    let Jet { x, u, du } = *j;
    let s = x * (x - 1.0) * du / (u * (u - 1.0) * (u - x)) + theta[1] / u + theta[2] / (u - 1.0) + (theta[3] - 1.0) / (u - x);
    CmSum { s }
}

fn tcm_degenerate(theta: &Exponents, image: &Exponents) -> bool {
    match (&theta.exact, &image.exact) {
        (Some(t), Some(i)) => t.0[0] == i.0[0],
        _ => (theta.complex[0] - image.complex[0]).norm() <= 1e-13 * (1.0 + theta.complex[0].norm()),
    }
}

fn degenerate_tcm() -> Error {
    Error::DegenerateMap("T_CM with θ∞ = Θ∞ (exponent sum 1)".into())
}

/// T_CM in either direction: U = u − 2(θ∞ − Θ∞)/s, U′ from the image-side sum.
pub fn push_tcm(j: &Jet, theta: &Exponents) -> Result<(Jet, Exponents)> {
    let image = theta.apply(Generator::Tcm.map());
    if tcm_degenerate(theta, &image) {
        return Err(degenerate_tcm());
    }
    Ok((tcm_kernel(j, &theta.complex, &image.complex)?, image))
}

fn tcm_kernel(j: &Jet, theta: &[C; 4], image: &[C; 4]) -> Result<Jet> {
    j.check_guards()?;
    let CmSum { s } = cm_sum(j, theta);
    if s.norm() == 0.0 || !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::DegenerateMap("T_CM sum s vanishes".into()));
    }
    let Jet { x, u, .. } = *j;
    let uu = u - 2.0 * (theta[0] - image[0]) / s;
    let rest = s - image[1] / uu - image[2] / (uu - 1.0) - (image[3] - 1.0) / (uu - x);
    let duu = rest * uu * (uu - 1.0) * (uu - x) / (x * (x - 1.0));
    guard_image(Jet::new(x, uu, duu), "Tcm")
}

/// R_n± = x(1−x)U′ − Θ∞(U−1)(U−x) + Θ1(U−x) + (1 ± Θx)x(U−1),
/// R_d± = x(1−x)U′ − Θ∞U(U−1) − Θ1(x−1)U ± Θ0x(U−1).
fn ms_factors_dual(x: Dual, uu: Dual, duu: Dual, t: &[C; 4]) -> [Dual; 4] {
    let [ti, t0, t1, tx] = *t;
    let lead = x * (1.0 - x) * duu;
    let rn = |sg: f64| lead - ti * (uu - 1.0) * (uu - x) + t1 * (uu - x) + (1.0 + sg * tx) * x * (uu - 1.0);
    let rd = |sg: f64| lead - ti * uu * (uu - 1.0) - t1 * (x - 1.0) * uu + sg * t0 * x * (uu - 1.0);
    [rn(1.0), rn(-1.0), rd(1.0), rd(-1.0)]
}

pub fn ms_factors(j_new: &Jet, new_theta: &[C; 4]) -> MsFactors {
    let f = ms_factors_dual(Dual::constant(j_new.x), Dual::constant(j_new.u), Dual::constant(j_new.du), new_theta);
    MsFactors { rn_plus: f[0].v, rn_minus: f[1].v, rd_plus: f[2].v, rd_minus: f[3].v }
}

/// T_MS new→old: θ = Θ + (1,0,1,0) and (u−x)(U−x)/((1−x)uU) = K, solved for u.
pub fn push_tms(j_new: &Jet, new_theta: &Exponents) -> Result<(Jet, Exponents)> {
    let image = new_theta.apply(Generator::Tms.map());
    Ok((tms_kernel(j_new, &new_theta.complex)?, image))
}

fn tms_kernel(j_new: &Jet, theta: &[C; 4]) -> Result<Jet> {
    let ddu = pvi_rhs(j_new, &params_from_theta(theta))?;
    let x = Dual::var(j_new.x);
    let uu = Dual::new(j_new.u, j_new.du);
    let duu = Dual::new(j_new.du, ddu);
    let [rnp, rnm, rdp, rdm] = ms_factors_dual(x, uu, duu, theta);
    nonzero(rdp.v, "rd_plus")?;
    nonzero(rdm.v, "rd_minus")?;
    let k = rnp * rnm / (rdp * rdm);
    let den = (uu - x) - k * (1.0 - x) * uu;
    nonzero(den.v, "(U-x) - K(1-x)U")?;
    let u = x * (uu - x) / den;
    guard_image(Jet::new(j_new.x, u.v, u.d), "Tms")
}

/// T_NJH old→new: Θ = T_NJH⁻¹θ, X = x/(x−1) and
/// (u−x)U + x = −2(Θ∞−θx)·x·u(u−1)/[x(1−x)u′ + θ∞u(u−1) + θ1(x−1)u + θ0x(u−1)].
pub fn push_njh(j_old: &Jet, old_theta: &Exponents) -> Result<(Jet, Exponents)> {
    let image = old_theta.apply(&inverse(Generator::Tnjh.map()));
    Ok((njh_kernel(j_old, &old_theta.complex, &image.complex)?, image))
}

fn njh_kernel(j_old: &Jet, theta: &[C; 4], image: &[C; 4]) -> Result<Jet> {
    let ddu = pvi_rhs(j_old, &params_from_theta(theta))?;
    let [ti, t0, t1, tx] = *theta;
    let x = Dual::var(j_old.x);
    let u = Dual::new(j_old.u, j_old.du);
    let du = Dual::new(j_old.du, ddu);
    let den = x * (1.0 - x) * du + ti * u * (u - 1.0) + t1 * (x - 1.0) * u + t0 * x * (u - 1.0);
    nonzero(den.v, "x(1-x)u' + θ∞u(u-1) + θ1(x-1)u + θ0x(u-1)")?;
    let k = 2.0 * (image[0] - tx);
    let uu = (-x - k * x * u * (u - 1.0) / den) / (u - x);
    let xx = x / (x - 1.0);
    guard_image(Jet::new(xx.v, uu.v, uu.d / xx.d), "Tnjh")
}

fn suggestion(t: &Token) -> String {
    let w = t.gen.cm_word().unwrap_or("");
    if t.exp == 1 {
        w.to_string()
    } else {
        format!("({w})^{}", t.exp)
    }
}

/// One step of a word with its exponents resolved in advance.
#[derive(Clone, Debug)]
struct Step {
    position: usize,
    token: Token,
    gen: Generator,
    theta: [C; 4],
    image: [C; 4],
}

impl Step {
    fn push(&self, j: &Jet) -> Result<Jet> {
        match self.gen {
            Generator::Tcm => tcm_kernel(j, &self.theta, &self.image),
            Generator::Tms => tms_kernel(j, &self.theta),
            Generator::Tnjh => njh_kernel(j, &self.theta, &self.image),
            g => push_trivial(g, j),
        }
    }
}

/// A word read as function composition (tokens act right to left, positive
/// powers new→old), with the exponents threaded through once so that many
/// jets can be pushed cheaply.
#[derive(Clone, Debug)]
pub struct WordPlan {
    steps: Vec<Step>,
    pub source: Exponents,
    pub image: Exponents,
}

impl WordPlan {
    pub fn new(tokens: &[Token], side_theta: &Exponents) -> Result<WordPlan> {
        let mut steps = Vec::new();
        let mut cur = side_theta.clone();
        for (pos, t) in tokens.iter().enumerate().rev() {
            let dir = if t.exp > 0 { TransformDirection::NewToOld } else { TransformDirection::OldToNew };
            let at = |e: Error| Error::AtWordPosition { position: pos, token: t.to_string(), source: Box::new(e) };
            let available = match t.gen {
                Generator::Tms => dir == TransformDirection::NewToOld,
                Generator::Tnjh => dir == TransformDirection::OldToNew,
                Generator::Tok | Generator::Tfy => false,
                _ => true,
            };
            if !available {
                return Err(at(Error::DirectionUnavailable { token: t.to_string(), suggestion: suggestion(t) }));
            }
            let m = match dir {
                TransformDirection::NewToOld => t.gen.map().clone(),
                TransformDirection::OldToNew => inverse(t.gen.map()),
            };
            for _ in 0..t.exp.unsigned_abs() {
                let next = cur.apply(&m);
                if t.gen == Generator::Tcm && tcm_degenerate(&cur, &next) {
                    return Err(at(degenerate_tcm()));
                }
                steps.push(Step { position: pos, token: *t, gen: t.gen, theta: cur.complex, image: next.complex });
                cur = next;
            }
        }
        Ok(WordPlan { steps, source: side_theta.clone(), image: cur })
    }

    pub fn push(&self, j: &Jet) -> Result<Jet> {
        let mut cur = *j;
        for s in &self.steps {
            cur = s.push(&cur).map_err(|e| Error::AtWordPosition {
                position: s.position,
                token: s.token.to_string(),
                source: Box::new(e),
            })?;
        }
        Ok(cur)
    }
}

/// One generator, one step, in the given direction.
pub fn push_generator(gen: Generator, dir: TransformDirection, j: &Jet, theta: &Exponents) -> Result<(Jet, Exponents)> {
    let t = Token::new(gen, if dir == TransformDirection::NewToOld { 1 } else { -1 });
    let plan = WordPlan::new(&[t], theta).map_err(|e| e.root().clone())?;
    let out = plan.push(j).map_err(|e| e.root().clone())?;
    Ok((out, plan.image))
}

/// Applies a word to a jet on its rightmost (new) side, reading the word as
/// function composition: tokens act right to left, positive powers new→old.
pub fn push_word(tokens: &[Token], j: &Jet, side_theta: &Exponents) -> Result<(Jet, Exponents)> {
    let plan = WordPlan::new(tokens, side_theta)?;
    Ok((plan.push(j)?, plan.image))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn trivial_examples() {
        let j = Jet::real(2.0, 5.0, 3.0);
        assert_eq!(push_trivial(Generator::Sa, &j).unwrap(), j);
        let r = push_trivial(Generator::Hacbd, &Jet::real(2.0, 3.0, 4.0)).unwrap();
        assert!((r.x - c(-1.0)).norm() < 1e-15 && (r.u - c(-2.0)).norm() < 1e-15 && (r.du - c(4.0)).norm() < 1e-15);
        let r = push_trivial(Generator::Habdc, &Jet::real(2.0, 3.0, 5.0)).unwrap();
        assert!((r.x - c(0.5)).norm() < 1e-15 && (r.u - c(1.5)).norm() < 1e-15 && (r.du - c(-7.0)).norm() < 1e-14);
    }

    #[test]
    fn njh_x_map() {
        let th = Exponents::exact(ThetaVector::from_ints([1, 0, 0, 0]));
        let (r, _) = push_njh(&Jet::new(c(3.0), C::new(2.0, 1.0), c(0.1)), &th).unwrap();
        assert!((r.x - c(1.5)).norm() < 1e-15);
    }

    #[test]
    fn unavailable_directions_suggest_words() {
        let th = Exponents::exact(ThetaVector::zero());
        let j = Jet::new(c(0.4), C::new(2.0, 1.0), c(0.0));
        let e = push_word(&[Token::new(Generator::Tok, 1)], &j, &th).unwrap_err();
        match e.root() {
            Error::DirectionUnavailable { suggestion, .. } => assert_eq!(suggestion, "Hdcba*(Tcm*Hbadc*Sa*Sd)^2"),
            other => panic!("{other:?}"),
        }
        assert!(push_word(&[Token::new(Generator::Tnjh, 1)], &j, &th).is_err());
        assert!(push_word(&[Token::new(Generator::Tms, -1)], &j, &th).is_err());
    }

    #[test]
    fn tcm_degenerate_on_unit_sum() {
        let th = Exponents::exact(ThetaVector::from_ints([1, 0, 0, 0]));
        let j = Jet::new(c(0.4), C::new(2.0, 1.0), c(0.0));
        assert!(matches!(push_tcm(&j, &th), Err(Error::DegenerateMap(_))));
    }
}

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Q;

/// Möbius map x = (a·X + b)/(c·X + d), kept as coprime integers with the
/// first nonzero entry positive so that equal maps compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homography {
    coeffs: [BigInt; 4],
}

impl Homography {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        let ad = &a * &d;
        let bc = &b * &c;
        assert!(ad != bc, "homography with zero determinant");
        let l = [&a, &b, &c, &d]
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: [BigInt; 4] = [a, b, c, d].map(|x| (x * Q::from_integer(l.clone())).to_integer());
        Self::from_ints(ints)
    }

    fn from_ints(ints: [BigInt; 4]) -> Self {
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut ints = ints.map(|x| x / &g);
        if ints.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()) == Some(true) {
            ints = ints.map(|x| -x);
        }
        Homography { coeffs: ints }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::from_ints([a, b, c, d].map(BigInt::from))
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self ∘ inner`: apply `inner` to X first.
    pub fn compose(&self, inner: &Homography) -> Homography {
        let [a, b, c, d] = &self.coeffs;
        let [e, f, g, h] = &inner.coeffs;
        Self::from_ints([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn inverse(&self) -> Homography {
        let [a, b, c, d] = &self.coeffs;
        Self::from_ints([d.clone(), -b.clone(), -c.clone(), a.clone()])
    }

    pub fn apply_x(&self, x: &Q) -> Result<Q> {
        let [a, b, c, d] = self.coeffs.clone().map(Q::from_integer);
        let den = &c * x + d;
        if den.is_zero() {
            return Err(Error::PoleOfHomography(x.to_string()));
        }
        Ok((a * x + b) / den)
    }

    pub fn apply_c(&self, x: Complex64) -> Result<Complex64> {
        let [a, b, c, d] = self.coeffs_f64();
        let den = c * x + d;
        if den.norm() == 0.0 {
            return Err(Error::PoleOfHomography(x.to_string()));
        }
        Ok((a * x + b) / den)
    }

    pub fn coeffs_f64(&self) -> [f64; 4] {
        self.coeffs.clone().map(|c| c.to_f64().unwrap_or(f64::NAN))
    }

    /// Smallest n ≤ max_n with selfⁿ = identity.
    pub fn order(&self, max_n: u32) -> Option<u32> {
        let mut p = self.clone();
        for n in 1..=max_n {
            if p.is_identity() {
                return Some(n);
            }
            p = p.compose(self);
        }
        None
    }
}

impl fmt::Display for Homography {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coeffs;
        write!(f, "x = ({a}*X + {b})/({c}*X + {d})")
    }
}

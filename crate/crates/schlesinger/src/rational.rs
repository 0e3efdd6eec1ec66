//! Exact rationals and small fixed-size linear algebra over them.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type Mat4 = [[Q; 4]; 4];

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    Q::from_str(t).map_err(|_| Error::InvalidInput(format!("not a rational p/q: `{s}`")))
}

pub fn q_to_f64(x: &Q) -> f64 {
    // numerator and denominator may overflow f64 separately
    x.to_f64().unwrap_or_else(|| {
        x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
    })
}

pub fn q_to_c(x: &Q) -> Complex64 {
    Complex64::new(q_to_f64(x), 0.0)
}

/// Exponent vector (θ∞, θ0, θ1, θx) in exact arithmetic. Index 0 is ∞, 1 is 0, 2 is 1, 3 is x.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaVector(pub [Q; 4]);

impl ThetaVector {
    pub fn zero() -> Self {
        ThetaVector(std::array::from_fn(|_| Q::zero()))
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        ThetaVector(v.map(q))
    }

    /// Parses `p,q,r,s` where each entry is an integer or `n/d`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidInput(format!("expected four comma-separated rationals, got `{s}`")));
        }
        let mut out = Vec::with_capacity(4);
        for p in parts {
            out.push(parse_q(p)?);
        }
        Ok(ThetaVector(out.try_into().unwrap()))
    }

    pub fn to_complex(&self) -> [Complex64; 4] {
        std::array::from_fn(|i| q_to_c(&self.0[i]))
    }

    pub fn sum(&self) -> Q {
        self.0.iter().fold(Q::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ThetaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

pub fn identity4() -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() }))
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(Q::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

pub fn mat_vec(a: &Mat4, v: &[Q; 4]) -> [Q; 4] {
    std::array::from_fn(|i| (0..4).fold(Q::zero(), |acc, k| acc + &a[i][k] * &v[k]))
}

pub fn vec_add(a: &[Q; 4], b: &[Q; 4]) -> [Q; 4] {
    std::array::from_fn(|i| &a[i] + &b[i])
}

pub fn vec_neg(a: &[Q; 4]) -> [Q; 4] {
    std::array::from_fn(|i| -&a[i])
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn mat_inv(a: &Mat4) -> Option<Mat4> {
    let mut m: Vec<Vec<Q>> = a.iter().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<Q>> = identity4().iter().map(|r| r.to_vec()).collect();
    for col in 0..4 {
        let piv = (col..4).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..4 {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..4 {
                    let mj = &m[col][j] * &f;
                    m[r][j] -= mj;
                    let ij = &inv[col][j] * &f;
                    inv[r][j] -= ij;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| inv[i][j].clone())))
}

pub fn mat_to_c(a: &Mat4) -> [[Complex64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| q_to_c(&a[i][j])))
}

use num_complex::Complex64;
use num_traits::Zero;
use std::fmt;

use crate::catalog::Token;
use crate::homography::Homography;
use crate::rational::{identity4, mat_inv, mat_mul, mat_to_c, mat_vec, q_to_c, vec_add, vec_neg, Mat4, ThetaVector, Q};

/// One transformation in the affine representation θ = m1·Θ + m0, x = xmap(X).
///
/// Maps run from the new variables (U, X, Θ) to the old ones (u, x, θ).
/// Equality compares `(m1, m0, xmap)` and ignores the provenance word.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub m1: Mat4,
    pub m0: [Q; 4],
    pub xmap: Homography,
    pub word: Vec<Token>,
}

impl PartialEq for AffineMap {
    fn eq(&self, other: &Self) -> bool {
        self.m1 == other.m1 && self.m0 == other.m0 && self.xmap == other.xmap
    }
}

impl Eq for AffineMap {}

/// Order information: the affine part and the x-map are reported separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderInfo {
    pub order: Option<u32>,
    pub xmap_order: Option<u32>,
}

impl AffineMap {
    pub fn new(m1: Mat4, m0: [Q; 4], xmap: Homography, word: Vec<Token>) -> Self {
        assert!(mat_inv(&m1).is_some(), "m1 must be invertible");
        AffineMap { m1, m0, xmap, word }
    }

    pub fn identity() -> Self {
        AffineMap {
            m1: identity4(),
            m0: std::array::from_fn(|_| Q::zero()),
            xmap: Homography::identity(),
            word: Vec::new(),
        }
    }

    /// Equality of the exponent action only; the x-map is ignored.
    pub fn same_affine(&self, other: &Self) -> bool {
        self.m1 == other.m1 && self.m0 == other.m0
    }

    pub fn is_affine_identity(&self) -> bool {
        self.m0.iter().all(Zero::is_zero) && self.m1 == identity4()
    }

    pub fn with_word(mut self, word: Vec<Token>) -> Self {
        self.word = word;
        self
    }

    pub fn word_string(&self) -> String {
        crate::word::format_word(&self.word)
    }

    pub fn apply_theta(&self, v: &ThetaVector) -> ThetaVector {
        ThetaVector(vec_add(&mat_vec(&self.m1, &v.0), &self.m0))
    }

    pub fn apply_theta_c(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let m = mat_to_c(&self.m1);
        std::array::from_fn(|i| (0..4).map(|k| m[i][k] * v[k]).sum::<Complex64>() + q_to_c(&self.m0[i]))
    }

    pub fn order_of(&self, max_n: u32) -> OrderInfo {
        assert!(max_n >= 1);
        let mut p = self.clone();
        let mut order = None;
        for n in 1..=max_n {
            if p.is_affine_identity() {
                order = Some(n);
                break;
            }
            p = compose(&p, self);
        }
        OrderInfo { order, xmap_order: self.xmap.order(max_n) }
    }
}

/// `outer ∘ inner`: θ = M1_o·(M1_i·Θ + M0_i) + M0_o, so `inner` acts on Θ first.
pub fn compose(outer: &AffineMap, inner: &AffineMap) -> AffineMap {
    let mut word = outer.word.clone();
    word.extend(inner.word.iter().cloned());
    AffineMap {
        m1: mat_mul(&outer.m1, &inner.m1),
        m0: vec_add(&mat_vec(&outer.m1, &inner.m0), &outer.m0),
        xmap: outer.xmap.compose(&inner.xmap),
        word,
    }
}

pub fn inverse(a: &AffineMap) -> AffineMap {
    let inv = mat_inv(&a.m1).expect("m1 invertible by construction");
    let m0 = vec_neg(&mat_vec(&inv, &a.m0));
    let word = a.word.iter().rev().map(Token::inverse).collect();
    AffineMap { m1: inv, m0, xmap: a.xmap.inverse(), word }
}

pub fn apply_theta(a: &AffineMap, v: &ThetaVector) -> ThetaVector {
    a.apply_theta(v)
}

fn fmt_row(r: &[Q]) -> String {
    r.iter().map(|x| format!("{x:>5}")).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word:  {}", if self.word.is_empty() { "1".into() } else { self.word_string() })?;
        writeln!(f, "m1:")?;
        for r in &self.m1 {
            writeln!(f, "  [{}]", fmt_row(r))?;
        }
        writeln!(f, "m0:    [{}]", fmt_row(&self.m0))?;
        write!(f, "xmap:  {}", self.xmap)
    }
}

//! The sixteen named generators: four sign flips, seven homographies and
//! five Schlesinger transformations.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::homography::Homography;
use crate::rational::{q, qf, Mat4, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Sa,
    Sb,
    Sc,
    Sd,
    Hbadc,
    Hdcba,
    Hcdab,
    Hadcb,
    Hcbad,
    Habdc,
    Hacbd,
    Tfy,
    Tok,
    Tms,
    Tnjh,
    Tcm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Sign,
    Homography,
    Schlesinger,
}

impl Generator {
    pub const ALL: [Generator; 16] = [
        Generator::Sa,
        Generator::Sb,
        Generator::Sc,
        Generator::Sd,
        Generator::Hbadc,
        Generator::Hdcba,
        Generator::Hcdab,
        Generator::Hadcb,
        Generator::Hcbad,
        Generator::Habdc,
        Generator::Hacbd,
        Generator::Tfy,
        Generator::Tok,
        Generator::Tms,
        Generator::Tnjh,
        Generator::Tcm,
    ];

    pub const SIGNS: [Generator; 4] = [Generator::Sa, Generator::Sb, Generator::Sc, Generator::Sd];

    pub const HOMOGRAPHIES: [Generator; 7] = [
        Generator::Hbadc,
        Generator::Hdcba,
        Generator::Hcdab,
        Generator::Hadcb,
        Generator::Hcbad,
        Generator::Habdc,
        Generator::Hacbd,
    ];

    /// Homographies that fix x.
    pub const X_PRESERVING: [Generator; 3] = [Generator::Hbadc, Generator::Hdcba, Generator::Hcdab];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Sa => "Sa",
            Generator::Sb => "Sb",
            Generator::Sc => "Sc",
            Generator::Sd => "Sd",
            Generator::Hbadc => "Hbadc",
            Generator::Hdcba => "Hdcba",
            Generator::Hcdab => "Hcdab",
            Generator::Hadcb => "Hadcb",
            Generator::Hcbad => "Hcbad",
            Generator::Habdc => "Habdc",
            Generator::Hacbd => "Hacbd",
            Generator::Tfy => "Tfy",
            Generator::Tok => "Tok",
            Generator::Tms => "Tms",
            Generator::Tnjh => "Tnjh",
            Generator::Tcm => "Tcm",
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Generator::Sa | Generator::Sb | Generator::Sc | Generator::Sd => Kind::Sign,
            Generator::Tfy | Generator::Tok | Generator::Tms | Generator::Tnjh | Generator::Tcm => Kind::Schlesinger,
            _ => Kind::Homography,
        }
    }

    pub fn map(self) -> &'static AffineMap {
        &catalog().maps[self as usize]
    }

    /// Word over signs, homographies, T_CM and the directly realized
    /// direction of T_MS that equals this generator in the affine representation
    /// (leftmost applied last).
    pub fn cm_word(self) -> Option<&'static str> {
        match self {
            Generator::Tok => Some("Hdcba*(Tcm*Hbadc*Sa*Sd)^2"),
            Generator::Tms => Some("Habdc*Hdcba*(Tcm*Hbadc*Sa*Sd)^2*Habdc"),
            Generator::Tnjh => Some("Hadcb*Tcm*Hbadc"),
            Generator::Tfy => Some("Hbadc*Hacbd*Habdc*Hdcba*(Tcm*Hbadc*Sa*Sd)^2*Habdc*Hacbd"),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// A generator raised to a nonzero integer power.
///
/// Tokens order by generator, then positive before negative exponents, then magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub gen: Generator,
    pub exp: i64,
}

impl Token {
    pub fn new(gen: Generator, exp: i64) -> Self {
        Token { gen, exp }
    }

    pub fn inverse(&self) -> Token {
        Token { gen: self.gen, exp: -self.exp }
    }
}

impl Ord for Token {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |t: &Token| (t.gen, t.exp < 0, t.exp.unsigned_abs());
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Token {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^{}", self.gen, self.exp)
        }
    }
}

pub struct Catalog {
    maps: Vec<AffineMap>,
}

pub fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(Catalog::build)
}

fn int_mat(rows: [[i64; 4]; 4], scale: Q) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| q(rows[i][j]) * &scale))
}

/// θ_i = Θ_{p[i]} for the letter string p over a,b,c,d.
fn perm_mat(p: &str) -> Mat4 {
    let idx: Vec<usize> = p.bytes().map(|b| (b - b'a') as usize).collect();
    std::array::from_fn(|i| std::array::from_fn(|j| if idx[i] == j { q(1) } else { q(0) }))
}

fn sign_mat(k: usize) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i != j { q(0) } else if i == k { q(-1) } else { q(1) }))
}

fn zero4() -> [Q; 4] {
    std::array::from_fn(|_| q(0))
}

fn ints4(v: [i64; 4]) -> [Q; 4] {
    v.map(q)
}

/// The T_CM matrix in the layout it is commonly typeset with. Its rows
/// 1↔2 and 3↔4 are swapped relative to the map realized by the
/// birational T_CM formula; it equals `compose(H_badc, T_CM)`.
pub const TCM_ROW_SWAPPED: [[i64; 4]; 4] = [[-1, 1, -1, -1], [1, -1, -1, -1], [-1, -1, -1, 1], [-1, -1, 1, -1]];

const TCM_ROWS: [[i64; 4]; 4] = [[1, -1, -1, -1], [-1, 1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1]];

const TNJH_ROWS: [[i64; 4]; 4] = [[-1, 1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1], [1, -1, -1, -1]];

impl Catalog {
    fn build() -> Catalog {
        let id = Homography::identity();
        let x_over_xm1 = Homography::from_i64(1, 0, 1, -1);
        let recip = Homography::from_i64(0, 1, 1, 0);
        let one_minus = Homography::from_i64(-1, 1, 0, 1);
        let half = qf(1, 2);
        let half4: [Q; 4] = std::array::from_fn(|_| half.clone());
        let maps = Generator::ALL
            .iter()
            .map(|&g| {
                let (m1, m0, xmap) = match g {
                    Generator::Sa => (sign_mat(0), zero4(), id.clone()),
                    Generator::Sb => (sign_mat(1), zero4(), id.clone()),
                    Generator::Sc => (sign_mat(2), zero4(), id.clone()),
                    Generator::Sd => (sign_mat(3), zero4(), id.clone()),
                    Generator::Hbadc => (perm_mat("badc"), zero4(), id.clone()),
                    Generator::Hdcba => (perm_mat("dcba"), zero4(), id.clone()),
                    Generator::Hcdab => (perm_mat("cdab"), zero4(), id.clone()),
                    Generator::Hadcb => (perm_mat("adcb"), zero4(), x_over_xm1.clone()),
                    Generator::Hcbad => (perm_mat("cbad"), zero4(), x_over_xm1.clone()),
                    Generator::Habdc => (perm_mat("abdc"), zero4(), recip.clone()),
                    Generator::Hacbd => (perm_mat("acbd"), zero4(), one_minus.clone()),
                    Generator::Tfy => (perm_mat("badc"), ints4([1, 1, 0, 0]), recip.clone()),
                    Generator::Tok => (perm_mat("abcd"), ints4([1, 0, 0, 1]), id.clone()),
                    Generator::Tms => (perm_mat("abcd"), ints4([1, 0, 1, 0]), id.clone()),
                    Generator::Tnjh => (int_mat(TNJH_ROWS, half.clone()), half4.clone(), x_over_xm1.clone()),
                    Generator::Tcm => (int_mat(TCM_ROWS, half.clone()), half4.clone(), id.clone()),
                };
                AffineMap::new(m1, m0, xmap, vec![Token::new(g, 1)])
            })
            .collect();
        Catalog { maps }
    }

    pub fn get(&self, g: Generator) -> &AffineMap {
        &self.maps[g as usize]
    }

    pub fn entries(&self) -> impl Iterator<Item = (Generator, &AffineMap)> {
        Generator::ALL.iter().copied().zip(self.maps.iter())
    }

    /// T_CM with the row-swapped matrix, kept for comparison.
    pub fn tcm_row_swapped() -> AffineMap {
        let half = qf(1, 2);
        AffineMap::new(
            int_mat(TCM_ROW_SWAPPED, half.clone()),
            std::array::from_fn(|_| half.clone()),
            Homography::identity(),
            Vec::new(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::compose;

    #[test]
    fn names_round_trip() {
        for g in Generator::ALL {
            assert_eq!(g.name().parse::<Generator>().unwrap(), g);
        }
        assert!(matches!("Txx".parse::<Generator>(), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn row_swapped_tcm_is_hbadc_times_tcm() {
        let c = compose(Generator::Hbadc.map(), Generator::Tcm.map());
        assert!(c.same_affine(&Catalog::tcm_row_swapped()));
    }

    #[test]
    fn signs_flip_one_component() {
        for (k, g) in Generator::SIGNS.iter().enumerate() {
            let m = g.map();
            for i in 0..4 {
                assert_eq!(m.m1[i][i], if i == k { q(-1) } else { q(1) });
            }
        }
    }
}

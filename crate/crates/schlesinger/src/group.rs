//! Trivial symmetries (sign flips and homographies), witness search, orbits.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::affine::{compose, AffineMap};
use crate::catalog::{Generator, Token};
use crate::error::{Error, Result};
use crate::rational::{mat_inv, mat_mul, mat_vec, Mat4, ThetaVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// The 16 sign flips.
    Signs,
    /// Signs times {1, H_badc, H_dcba, H_cdab}: 64 elements.
    XPreserving,
    /// Closure of all signs and the seven listed homographies: 384 elements.
    Full,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Signs => "signs",
            Scope::XPreserving => "x-preserving",
            Scope::Full => "full",
        }
    }
}

struct Group {
    elems: Vec<AffineMap>,
    by_m1: HashMap<Mat4, usize>,
}

impl Group {
    fn new(elems: Vec<AffineMap>) -> Self {
        let mut by_m1 = HashMap::new();
        for (i, e) in elems.iter().enumerate() {
            by_m1.entry(e.m1.clone()).or_insert(i);
        }
        Group { elems, by_m1 }
    }
}

fn build_signs() -> Vec<AffineMap> {
    (0..16u32)
        .map(|bits| {
            // bit 3 is S_a, bit 0 is S_d, so the index counts in binary over (a,b,c,d)
            Generator::SIGNS
                .iter()
                .enumerate()
                .filter(|(k, _)| bits & (8 >> k) != 0)
                .fold(AffineMap::identity(), |acc, (_, g)| compose(&acc, g.map()))
        })
        .collect()
}

fn build_xp() -> Vec<AffineMap> {
    let hs: Vec<AffineMap> = std::iter::once(AffineMap::identity())
        .chain(Generator::X_PRESERVING.iter().map(|g| g.map().clone()))
        .collect();
    build_signs().iter().flat_map(|s| hs.iter().map(move |h| compose(s, h))).collect()
}

fn build_full() -> Vec<AffineMap> {
    let gens: Vec<&AffineMap> = Generator::SIGNS.iter().chain(Generator::HOMOGRAPHIES.iter()).map(|g| g.map()).collect();
    let mut seen: HashMap<(Mat4, crate::homography::Homography), ()> = HashMap::new();
    let id = AffineMap::identity();
    seen.insert((id.m1.clone(), id.xmap.clone()), ());
    let mut elems = vec![id];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for g in &gens {
                let c = compose(&elems[i], g);
                let key = (c.m1.clone(), c.xmap.clone());
                if seen.insert(key, ()).is_none() {
                    next.push(elems.len());
                    elems.push(c);
                }
            }
        }
        frontier = next;
    }
    elems
}

fn group(scope: Scope) -> &'static Group {
    static SIGNS: OnceLock<Group> = OnceLock::new();
    static XP: OnceLock<Group> = OnceLock::new();
    static FULL: OnceLock<Group> = OnceLock::new();
    match scope {
        Scope::Signs => SIGNS.get_or_init(|| Group::new(build_signs())),
        Scope::XPreserving => XP.get_or_init(|| Group::new(build_xp())),
        Scope::Full => FULL.get_or_init(|| Group::new(build_full())),
    }
}

/// Elements in fixed enumeration order; index 0 is the identity.
pub fn trivial_group(scope: Scope) -> &'static [AffineMap] {
    &group(scope).elems
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub left: AffineMap,
    pub right: AffineMap,
    pub left_index: usize,
    pub right_index: usize,
}

impl Witness {
    pub fn is_trivial(&self) -> bool {
        self.left_index == 0 && self.right_index == 0
    }
}

/// First (L, R) in enumeration order with a = L∘b∘R in (m1, m0).
///
/// Every trivial element has m0 = 0 and the m1 determine the element, so for
/// each L the candidate R is solved for instead of scanned.
pub fn equals_mod_trivial(a: &AffineMap, b: &AffineMap, scope: Scope) -> Option<Witness> {
    let g = group(scope);
    for (li, l) in g.elems.iter().enumerate() {
        if mat_vec(&l.m1, &b.m0) != a.m0 {
            continue;
        }
        let lb = mat_mul(&l.m1, &b.m1);
        let need = mat_mul(&mat_inv(&lb)?, &a.m1);
        if let Some(&ri) = g.by_m1.get(&need) {
            let r = &g.elems[ri];
            debug_assert!(compose(l, &compose(b, r)).same_affine(a));
            return Some(Witness { left: l.clone(), right: r.clone(), left_index: li, right_index: ri });
        }
    }
    None
}

pub const MAX_ORBIT_DEPTH: usize = 12;

/// Breadth-first closure of `start` under the generators and their inverses.
///
/// Each point carries the lexicographically least shortest word w with
/// point = evaluate_word(w, last) applied to `start`. Output is sorted by
/// (word length, word).
pub fn orbit_bfs(start: &ThetaVector, generators: &[Generator], depth: usize) -> Result<Vec<(ThetaVector, Vec<Token>)>> {
    if depth > MAX_ORBIT_DEPTH {
        return Err(Error::DepthLimit { requested: depth, limit: MAX_ORBIT_DEPTH });
    }
    let mut gens = generators.to_vec();
    gens.sort();
    gens.dedup();
    let moves: Vec<(Token, AffineMap)> = gens
        .iter()
        .flat_map(|&g| [Token::new(g, 1), Token::new(g, -1)])
        .map(|t| (t, crate::word::evaluate_word(&[t], crate::word::Convention::Last)))
        .collect();

    let mut found: BTreeMap<ThetaVector, Vec<Token>> = BTreeMap::new();
    found.insert(start.clone(), Vec::new());
    let mut frontier = vec![(start.clone(), Vec::new())];
    for _ in 0..depth {
        let mut level: BTreeMap<ThetaVector, Vec<Token>> = BTreeMap::new();
        for (v, w) in &frontier {
            for (t, m) in &moves {
                let nv = m.apply_theta(v);
                if found.contains_key(&nv) {
                    continue;
                }
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.push(*t);
                nw.extend_from_slice(w);
                match level.get(&nv) {
                    Some(old) if *old <= nw => {}
                    _ => {
                        level.insert(nv, nw);
                    }
                }
            }
        }
        if level.is_empty() {
            break;
        }
        frontier = level.iter().map(|(v, w)| (v.clone(), w.clone())).collect();
        found.extend(level);
    }
    let mut out: Vec<(ThetaVector, Vec<Token>)> = found.into_iter().collect();
    out.sort_by(|a, b| (a.1.len(), &a.1).cmp(&(b.1.len(), &b.1)));
    Ok(out)
}

//! Machine check of the documented relations between the transformations.

use serde::{Deserialize, Serialize};

use crate::group::{equals_mod_trivial, Scope};
use crate::word::{evaluate_str, format_word, Convention};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exact,
    ExactModSigns,
    ExactModTrivial,
    Fails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Exact => "exact",
            Verdict::ExactModSigns => "exact-mod-signs",
            Verdict::ExactModTrivial => "exact-mod-trivial",
            Verdict::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessWords {
    pub left: String,
    pub right: String,
    pub scope: Scope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationVerdict {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub convention: Convention,
    pub verdict: Verdict,
    /// lhs = L·rhs·R with L, R trivial; `1` words for exact verdicts.
    pub witness: Option<WitnessWords>,
    pub xmap_consistent: bool,
    pub lhs_xmap: String,
    pub rhs_xmap: String,
}

/// (id, lhs, rhs) of every audited relation.
pub const RELATIONS: [(&str, &str, &str); 13] = [
    ("fy-ms", "Tfy", "Hbadc*Hacbd*Tms*Hacbd"),
    ("ms-fy", "Tms", "Hacbd*Hbadc*Tfy*Hacbd"),
    ("ok-ms", "Tok", "Habdc*Tms*Habdc"),
    ("ms-ok", "Tms", "Habdc*Tok*Habdc"),
    ("njh-cm", "Tnjh", "Hadcb*Tcm*Hbadc"),
    ("cm-njh", "Tcm", "Hadcb*Tnjh*Hbadc"),
    ("ok-cm-square", "Tok", "Hdcba*(Tcm*Hbadc*Sa*Sd)^2"),
    ("ok-cm-cube", "Tok", "Hcbad*Sa*Sb*(Sa*Tcm*Hbadc)^3*Sc*Sd*Hcbad"),
    ("power-2", "Tcm^2", "1"),
    ("power-3", "(Sa*Tcm)^3", "1"),
    ("power-4", "(Sa*Sb*Tcm*Hbadc)^4", "1"),
    ("power-6", "(Sa*Tcm*Hbadc)^6", "1"),
    ("xfix-product", "Hbadc*Hdcba*Hcdab", "1"),
];

/// Audits one relation under one reading, trying trivial scopes up to `max_scope`.
pub fn audit_one(id: &str, lhs: &str, rhs: &str, convention: Convention, max_scope: Scope) -> RelationVerdict {
    let a = evaluate_str(lhs, convention).expect("relation words are well formed");
    let b = evaluate_str(rhs, convention).expect("relation words are well formed");
    let mut verdict = Verdict::Fails;
    let mut witness = None;
    if a.same_affine(&b) {
        verdict = Verdict::Exact;
        witness = Some(WitnessWords { left: "1".into(), right: "1".into(), scope: Scope::Signs });
    } else {
        for scope in [Scope::Signs, Scope::XPreserving, Scope::Full] {
            if scope > max_scope {
                break;
            }
            if let Some(w) = equals_mod_trivial(&a, &b, scope) {
                verdict = if scope == Scope::Signs { Verdict::ExactModSigns } else { Verdict::ExactModTrivial };
                witness = Some(WitnessWords { left: format_word(&w.left.word), right: format_word(&w.right.word), scope });
                break;
            }
        }
    }
    RelationVerdict {
        relation: id.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        convention,
        verdict,
        witness,
        xmap_consistent: a.xmap == b.xmap,
        lhs_xmap: a.xmap.to_string(),
        rhs_xmap: b.xmap.to_string(),
    }
}

/// Every relation under both readings, in a fixed order.
pub fn audit_relations() -> Vec<RelationVerdict> {
    audit_relations_with(None, Scope::Full)
}

pub fn audit_relations_with(only: Option<&str>, max_scope: Scope) -> Vec<RelationVerdict> {
    RELATIONS
        .iter()
        .filter(|(id, _, _)| only.is_none_or(|o| o == *id))
        .flat_map(|(id, l, r)| Convention::BOTH.into_iter().map(move |c| audit_one(id, l, r, c, max_scope)))
        .collect()
}

/// True when each relation holds (with a witness) under at least one reading.
pub fn all_relations_hold(verdicts: &[RelationVerdict]) -> bool {
    RELATIONS.iter().all(|(id, _, _)| {
        verdicts.iter().any(|v| v.relation == *id && v.verdict != Verdict::Fails && v.witness.is_some())
    })
}

//! Check every catalogued relation under both reading conventions.

use schlesinger::audit::{all_relations_hold, audit_relations, Verdict};

fn main() {
    let verdicts = audit_relations();
    for v in &verdicts {
        let witness = match (&v.witness, v.verdict) {
            (Some(w), Verdict::ExactModSigns | Verdict::ExactModTrivial) => format!("  L={} R={}", w.left, w.right),
            _ => String::new(),
        };
        let xmap = if v.xmap_consistent { String::new() } else { format!("  xmap {} vs {}", v.lhs_xmap, v.rhs_xmap) };
        println!("{:<13} {:<5} {:<17}{witness}{xmap}", v.relation, v.convention.as_str(), v.verdict.as_str());
    }
    println!("all relations hold: {}", all_relations_hold(&verdicts));
}

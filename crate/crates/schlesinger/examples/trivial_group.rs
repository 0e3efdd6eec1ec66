//! The groups of sign flips and homographies, and equality up to them.

use schlesinger::catalog::{catalog, Generator};
use schlesinger::group::{equals_mod_trivial, trivial_group, Scope};
use schlesinger::word::{evaluate_str, Convention};

fn main() -> schlesinger::error::Result<()> {
    for s in [Scope::Signs, Scope::XPreserving, Scope::Full] {
        println!("{:<12} {} elements", s.as_str(), trivial_group(s).len());
    }

    // The typeset T_CM matrix differs from the involution by a relabelling.
    let printed = schlesinger::catalog::Catalog::tcm_row_swapped();
    let tcm = catalog().get(Generator::Tcm);
    println!("printed T_CM order: {:?}", printed.order_of(12).order);
    match equals_mod_trivial(&printed, tcm, Scope::Full) {
        Some(w) => println!("printed = L*Tcm*R with L = {}, R = {}", w.left.word_string(), w.right.word_string()),
        None => println!("no trivial witness"),
    }

    let lhs = evaluate_str("Tnjh", Convention::First)?;
    let rhs = evaluate_str("Hadcb*Tcm*Hbadc", Convention::First)?;
    println!("Tnjh vs Hadcb*Tcm*Hbadc (first): exact {}, mod x-preserving {:?}",
        lhs.same_affine(&rhs), equals_mod_trivial(&lhs, &rhs, Scope::XPreserving).map(|w| w.right.word_string()));
    Ok(())
}

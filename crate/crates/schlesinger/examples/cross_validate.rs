//! Direct formulas for T_MS and T_NJH against their T_CM words, plus the
//! T_CM round trip.

use schlesinger::catalog::Generator;
use schlesinger::verify::{cross_validate, equivalent_route, fixture_trace, round_trip, Fixture, Tolerances};
use schlesinger::word::{format_word, parse_word};

fn main() -> schlesinger::error::Result<()> {
    let tol = Tolerances::default();
    let trace = fixture_trace(&Fixture::default(), tol.integration)?;
    for g in [Generator::Tms, Generator::Tnjh] {
        let (direct, word) = equivalent_route(g)?;
        let r = cross_validate(g, &trace, &tol)?;
        println!("{} vs {}: max gap {:.2e} ({})", format_word(&direct), format_word(&word), r.max_cross_gap.unwrap_or(f64::NAN), if r.pass { "pass" } else { "fail" });
    }
    let r = round_trip(&parse_word("Tcm")?, &trace, &tol)?;
    println!("Tcm twice: max gap {:.2e}", r.max_roundtrip_gap.unwrap_or(f64::NAN));
    Ok(())
}

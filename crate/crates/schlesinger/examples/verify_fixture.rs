//! Build the reference trace and certify the image of a few words on it.
//!
//!     cargo run --release --example verify_fixture -- "Tcm*Hbadc*Sa"

use schlesinger::verify::{fixture_trace, verify_word, Fixture, Tolerances};
use schlesinger::word::parse_word;

fn main() -> schlesinger::error::Result<()> {
    let fixture = Fixture::default();
    let tol = Tolerances::default();
    let trace = fixture_trace(&fixture, tol.integration)?;
    println!("fixture: theta {}, {} samples", fixture.theta, trace.samples.len());

    let args: Vec<String> = std::env::args().skip(1).collect();
    let words = if args.is_empty() { vec!["Tcm".into(), "Tms".into(), "Tnjh^-1".into(), "Hcbad*Tcm".into()] } else { args };
    for w in &words {
        let r = verify_word(&parse_word(w)?, &trace, &tol)?;
        println!(
            "{} {w}: image theta {:?}, residual {:.2e}, jet defect {:.2e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.image_theta,
            r.max_residual.unwrap_or(f64::NAN),
            r.max_jet_defect.unwrap_or(f64::NAN)
        );
        for d in &r.diagnostics {
            println!("    {d}");
        }
    }
    Ok(())
}

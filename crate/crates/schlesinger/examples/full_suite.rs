//! Everything at once: audit, per-word checks, cross-validation, round trips
//! and the sweep over short words. Writes a report document.
//!
//!     cargo run --release --example full_suite

use schlesinger::io::{report_to_string, ReportFile};
use schlesinger::verify::{run_full_suite, SuiteConfig};

fn main() -> std::io::Result<()> {
    let t0 = std::time::Instant::now();
    let suite = run_full_suite(&SuiteConfig::default());
    for r in &suite.reports {
        println!("{} {:<16} {}", if r.pass { "PASS" } else { "FAIL" }, r.check, r.name);
    }
    println!("audit {}, overall {}, {:.1?}", suite.audit_pass, suite.pass, t0.elapsed());
    let out = std::env::temp_dir().join("schlesinger_report.json");
    std::fs::write(&out, report_to_string(&ReportFile::from_suite(&suite)))?;
    println!("report written to {}", out.display());
    Ok(())
}

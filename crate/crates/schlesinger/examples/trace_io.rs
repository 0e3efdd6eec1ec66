//! Traces survive a write and read bit for bit; bad documents are rejected.

use num_complex::Complex64 as C;
use schlesinger::integrate::integrate;
use schlesinger::io::{trace_from_str, trace_to_string};
use schlesinger::pvi::Jet;

fn main() -> schlesinger::error::Result<()> {
    let theta = [C::new(0.1, 0.2), C::new(0.3, 0.0), C::new(-0.4, 0.0), C::new(1.1, 0.0)];
    let start = Jet::new(C::new(0.2, 0.0), C::new(0.7, 0.1), C::new(0.0, 1.0));
    let trace = integrate(start, theta, &[start.x, C::new(0.6, 0.3)], 1e-10, 100_000)?;

    let text = trace_to_string(&trace)?;
    let back = trace_from_str(&text)?;
    println!("{} samples, {} bytes, identical after reading: {}", trace.samples.len(), text.len(), back == trace);

    for bad in [
        text.replacen("\"version\": 1", "\"version\": 2", 1),
        text.replacen("\"format\": \"schlesinger-trace\"", "\"format\": \"other\"", 1),
        text[..text.len() / 2].to_string(),
    ] {
        println!("{}", trace_from_str(&bad).unwrap_err());
    }
    Ok(())
}

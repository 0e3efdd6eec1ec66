//! Integrate along a path that detours around x = 1/2 and save the trace.

use num_complex::Complex64 as C;
use schlesinger::integrate::{integrate_with, IntegrateOptions};
use schlesinger::io::write_trace_file;
use schlesinger::pvi::Jet;
use schlesinger::rational::ThetaVector;

fn main() -> schlesinger::error::Result<()> {
    let theta = ThetaVector::parse("1/2,1/3,1/4,1/5")?;
    let start = Jet::new(C::new(0.25, 0.0), C::new(0.5, 0.5), C::new(1.0, 0.0));
    let path = [start.x, C::new(0.5, 0.2), C::new(0.75, 0.0)];
    let opts = IntegrateOptions { min_steps_per_segment: 200, ..Default::default() };

    let trace = integrate_with(start, theta.to_complex(), Some(theta), &path, &opts)?;
    let end = trace.samples.last().unwrap();
    println!("{} samples, end {end}", trace.samples.len());

    let out = std::env::temp_dir().join("schlesinger_trace.json");
    write_trace_file(&trace, &out)?;
    println!("written to {}", out.display());

    // Runaway initial data ends in a typed error carrying the partial trace.
    let wild = Jet::new(C::new(0.25, 0.0), C::new(0.2500001, 0.0), C::new(1e6, 0.0));
    match integrate_with(wild, trace.theta, None, &[wild.x, C::new(0.75, 0.0)], &opts) {
        Ok(t) => println!("unexpectedly finished with {} samples", t.samples.len()),
        Err(e) => println!("{e}"),
    }
    Ok(())
}

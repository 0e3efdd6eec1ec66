//! Orbit of an exponent vector under a few generators.
//!
//!     cargo run --example orbit -- 1/3,1/4,1/5,1/6 4

use schlesinger::catalog::Generator;
use schlesinger::group::orbit_bfs;
use schlesinger::rational::ThetaVector;
use schlesinger::word::format_word;

fn main() -> schlesinger::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let theta = ThetaVector::parse(&args.next().unwrap_or_else(|| "1/3,1/4,1/5,1/6".into()))?;
    let depth: usize = args.next().map(|d| d.parse().expect("depth")).unwrap_or(3);

    let gens = [Generator::Tcm, Generator::Sa, Generator::Hbadc];
    let orbit = orbit_bfs(&theta, &gens, depth)?;
    println!("{} points within {depth} steps of {theta}", orbit.len());
    for (t, w) in orbit.iter().take(20) {
        println!("  {t}  {}", format_word(w));
    }

    // Finite: T_CM, signs and one homography generate a finite group here.
    let big = orbit_bfs(&theta, &gens, 12)?;
    println!("closure size {}", big.len());
    Ok(())
}

//! Exponents to equation parameters and back, on every square-root branch.

use num_complex::Complex64 as C;
use schlesinger::pvi::{params_from_theta, params_from_theta_exact, theta_from_params, Branch};
use schlesinger::rational::ThetaVector;

fn main() -> schlesinger::error::Result<()> {
    let exact = ThetaVector::parse("1,1,1,1")?;
    let p = params_from_theta_exact(&exact);
    println!("theta {exact}: alpha {} beta {} gamma {} delta {}", p[0], p[1], p[2], p[3]);

    let theta = [C::new(0.3, 0.1), C::new(-1.2, 0.0), C::new(0.0, 2.0), C::new(0.75, -0.5)];
    let params = params_from_theta(&theta);
    for b in Branch::all() {
        let back = theta_from_params(&params, b);
        let again = params_from_theta(&back).as_array();
        let gap = again.iter().zip(params.as_array()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        println!("{b}  {:?}  parameter gap {gap:.1e}", back.map(|z| (z.re, z.im)));
    }
    Ok(())
}

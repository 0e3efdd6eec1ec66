//! Derivatives from samples: Fornberg weights on uneven nodes and the
//! Richardson-extrapolated central difference.

use num_complex::Complex64 as C;
use schlesinger::fd::{fornberg_weights, numerical_derivative};

fn main() -> schlesinger::error::Result<()> {
    let nodes: Vec<C> = [0.0, 0.11, 0.19, 0.32, 0.4].iter().map(|&t| C::new(t, 0.5 * t)).collect();
    let z = nodes[2];
    let w = fornberg_weights(z, &nodes, 2);
    let f = |x: C| x.exp() * x.sin();
    let d1: C = w[1].iter().zip(&nodes).map(|(w, x)| w * f(*x)).sum();
    let d2: C = w[2].iter().zip(&nodes).map(|(w, x)| w * f(*x)).sum();
    let e1 = z.exp() * (z.sin() + z.cos());
    let e2 = 2.0 * z.exp() * z.cos();
    println!("stencil f'  error {:.1e}", (d1 - e1).norm());
    println!("stencil f'' error {:.1e}", (d2 - e2).norm());

    let d = numerical_derivative(|x| Ok(f(x)), z, 1e-2)?;
    println!("richardson f' error {:.1e}", (d - e1).norm());
    Ok(())
}

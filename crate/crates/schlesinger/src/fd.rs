//! Finite differences on uniform and nonuniform complex grids.

use num_complex::Complex64 as C;

use crate::error::Result;

fn central5<F: Fn(C) -> Result<C>>(f: &F, x0: C, h: f64) -> Result<C> {
    let h2 = 2.0 * h;
    let v = [f(x0 - h2)?, f(x0 - h)?, f(x0 + h)?, f(x0 + h2)?];
    Ok((v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * h))
}

/// Central five-point derivative along the real direction with one
/// Richardson level: (16·D(h/2) − D(h))/15.
pub fn numerical_derivative<F: Fn(C) -> Result<C>>(f: F, x0: C, h: f64) -> Result<C> {
    let d1 = central5(&f, x0, h)?;
    let d2 = central5(&f, x0, h / 2.0)?;
    Ok((16.0 * d2 - d1) / 15.0)
}

/// Fornberg weights: `w[m][j]` approximates the m-th derivative at `z`
/// as Σ_j w[m][j]·f(nodes[j]).
pub fn fornberg_weights(z: C, nodes: &[C], max_order: usize) -> Vec<Vec<C>> {
    let n = nodes.len();
    let zero = C::new(0.0, 0.0);
    let mut w = vec![vec![zero; n]; max_order + 1];
    let mut c1 = C::new(1.0, 0.0);
    let mut c4 = nodes[0] - z;
    w[0][0] = C::new(1.0, 0.0);
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = C::new(1.0, 0.0);
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    w[k][i] = c1 * (k as f64 * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2;
                }
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                w[k][j] = (c4 * w[k][j] - k as f64 * w[k - 1][j]) / c3;
            }
            w[0][j] = c4 * w[0][j] / c3;
        }
        c1 = c2;
    }
    w
}

/// First derivative of sampled values at each interior index (2..n−2)
/// from the centered five-point stencil on the actual (nonuniform) nodes.
pub fn stencil_derivative(xs: &[C], fs: &[C]) -> Vec<(usize, C)> {
    let n = xs.len();
    if n < 5 {
        return Vec::new();
    }
    (2..n - 2)
        .map(|i| {
            let w = fornberg_weights(xs[i], &xs[i - 2..=i + 2], 1);
            let d = (0..5).map(|k| w[1][k] * fs[i - 2 + k]).sum::<C>();
            (i, d)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_examples() {
        let d = numerical_derivative(|x| Ok(x * x), C::new(3.0, 0.0), 1e-3).unwrap();
        assert!((d - C::new(6.0, 0.0)).norm() < 1e-10);
        let d = numerical_derivative(|x| Ok(1.0 / x), C::new(2.0, 0.0), 1e-3).unwrap();
        assert!((d + C::new(0.25, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn fornberg_reproduces_polynomials() {
        let nodes: Vec<C> = [0.0, 0.13, 0.3, 0.34, 0.61].iter().map(|&v| C::new(v, 0.02 * v)).collect();
        let z = nodes[2];
        let w = fornberg_weights(z, &nodes, 2);
        let f = |x: C| x.powi(4) - 2.0 * x.powi(3) + x;
        let df = |x: C| 4.0 * x.powi(3) - 6.0 * x.powi(2) + 1.0;
        let d2f = |x: C| 12.0 * x.powi(2) - 12.0 * x;
        let d1 = (0..5).map(|k| w[1][k] * f(nodes[k])).sum::<C>();
        let d2 = (0..5).map(|k| w[2][k] * f(nodes[k])).sum::<C>();
        assert!((d1 - df(z)).norm() < 1e-12);
        assert!((d2 - d2f(z)).norm() < 1e-10);
    }
}

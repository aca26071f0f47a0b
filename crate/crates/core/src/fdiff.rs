//! Finite-difference weights on arbitrary stencils (Fornberg's recursion).

use alloc::vec;
use alloc::vec::Vec;

/// Weights `w` such that `f^{(order)}(x0) ≈ Σ w_i f(x_i)`.
pub fn fornberg_weights(x0: f64, xs: &[f64], order: usize) -> Vec<f64> {
    let n = xs.len();
    assert!(n > order, "stencil too small for the requested derivative");
    // c[j][m]: weight of node j for derivative m.
    let mut c = vec![vec![0.0; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for m in (1..=mn).rev() {
                    c[i][m] = c1 * (m as f64 * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for m in (1..=mn).rev() {
                c[j][m] = (c4 * c[j][m] - m as f64 * c[j][m - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Weights for the `order`-th derivative on the centred unit stencil
/// `-order..=order` (`2·order + 1` points), to be scaled by `h^{-order}`.
pub fn centered_weights(order: usize) -> Vec<f64> {
    let m = order as i64;
    let xs: Vec<f64> = (-m..=m).map(|i| i as f64).collect();
    fornberg_weights(0.0, &xs, order)
}

/// Truncation order of [`centered_weights`]: the even number `≥ order + 1`.
pub fn centered_accuracy(order: usize) -> u32 {
    let p = order as u32 + 1;
    p + (p % 2)
}

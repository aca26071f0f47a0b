//! Nyström discretisation of the fixed-point form of the boundary value
//! problem,
//!
//! ```text
//! y(t) = ∫_a^b H(t, s) q(s) y(s) ds,   H(t, s) = G(t, s) + A(t) G(ξ, s),
//! ```
//!
//! with `A(t) = η P(t) / Δ`. Nodes are shared between collocation and
//! quadrature; weights are trapezoidal on a mesh graded towards `s = b`,
//! where `G(t, ·)` behaves like `(b-s)^{β/k-2}`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::green::{BVPConfig, GreenFunction};
use crate::linalg::{power_iteration, smallest_singular_value, Matrix};
use crate::math;
use crate::operators::RealFn;
use crate::potential::PotentialSpec;

/// Smallest accepted discretisation size.
pub const MIN_NODES: usize = 8;
/// Relative eigen-residual demanded from power iteration.
pub const SPECTRAL_TOL: f64 = 1e-10;
const MAX_POWER_ITERATIONS: usize = 20_000;
const MAX_INVERSE_ITERATIONS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct NystromOperator {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// `K[i][j] = H(t_i, s_j) q(s_j) w_j`.
    pub matrix: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralResult {
    pub dominant_eigenvalue: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Result of [`has_nontrivial_solution`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NontrivialCheck {
    pub detected: bool,
    /// Smallest singular value of `I - K`.
    pub margin: f64,
    /// `tol · ‖K‖_F`, the detection threshold for `margin`.
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalConstant {
    /// `1 / mu_max`.
    pub lambda_star: f64,
    /// Dominant eigenvalue of the `q ≡ 1` operator.
    pub mu_max: f64,
    pub residual: f64,
    pub n: usize,
    pub iterations: usize,
}

/// Mesh grading exponent for order `β/k`: `max(1, 2/(β/k - 1))`.
pub fn grading_exponent(order: f64) -> f64 {
    f64::max(1.0, 2.0 / (order - 1.0))
}

/// Nodes `s_i = a + (b-a)(1 - (1 - i/(n-1))^p)` and their trapezoid weights.
pub fn graded_trapezoid(a: f64, b: f64, n: usize, p: f64) -> (Vec<f64>, Vec<f64>) {
    let last = (n - 1) as f64;
    let nodes: Vec<f64> = (0..n)
        .map(|i| match i {
            0 => a,
            _ if i == n - 1 => b,
            _ => a + (b - a) * (1.0 - math::powf(1.0 - i as f64 / last, p)),
        })
        .collect();
    let weights = (0..n)
        .map(|i| {
            let lo = if i == 0 { nodes[0] } else { nodes[i - 1] };
            let hi = if i == n - 1 { nodes[n - 1] } else { nodes[i + 1] };
            0.5 * (hi - lo)
        })
        .collect();
    (nodes, weights)
}

pub fn build_operator(config: &BVPConfig, q: &PotentialSpec, n: usize) -> Result<NystromOperator> {
    if n < MIN_NODES {
        return Err(Error::InvalidParameter { name: "n", reason: "at least 8 nodes are required" });
    }
    let gf = GreenFunction::new(config)?;
    q.validate_on(config.a, config.b)?;
    let (nodes, weights) = graded_trapezoid(config.a, config.b, n, grading_exponent(config.params.order()));
    let qw: Vec<f64> = nodes.iter().zip(&weights).map(|(&s, &w)| q.eval(s) * w).collect();
    let mut matrix = Matrix::zeros(n);
    if q.is_zero() {
        return Ok(NystromOperator { nodes, weights, matrix });
    }
    let at_xi = nodes.iter().map(|&s| gf.eval(config.xi, s)).collect::<Result<Vec<_>>>()?;
    for (i, &t) in nodes.iter().enumerate() {
        let pre = gf.prefactor(t)?;
        for (j, &s) in nodes.iter().enumerate() {
            if qw[j] != 0.0 {
                matrix[(i, j)] = (gf.eval(t, s)? + pre * at_xi[j]) * qw[j];
            }
        }
    }
    Ok(NystromOperator { nodes, weights, matrix })
}

impl NystromOperator {
    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    pub fn dominant_eigenvalue(&self) -> Result<SpectralResult> {
        let e = power_iteration(&self.matrix, SPECTRAL_TOL, MAX_POWER_ITERATIONS)?;
        Ok(SpectralResult { dominant_eigenvalue: e.value, residual: e.residual, iterations: e.iterations })
    }

    /// Smallest singular value of `I - K`.
    pub fn distance_to_singular(&self) -> f64 {
        smallest_singular_value(&self.matrix.identity_minus(), MAX_INVERSE_ITERATIONS)
    }
}

/// Whether `I - K` is singular to within `tol · ‖K‖_F`.
pub fn has_nontrivial_solution(config: &BVPConfig, q: &PotentialSpec, n: usize, tol: f64) -> Result<NontrivialCheck> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter { name: "tol", reason: "must be positive" });
    }
    let op = build_operator(config, q, n)?;
    let threshold = tol * op.matrix.frobenius();
    let margin = op.distance_to_singular();
    Ok(NontrivialCheck { detected: margin <= threshold, margin, threshold })
}

/// `λ* = 1 / μ_max` for the `q ≡ 1` operator.
pub fn critical_lambda(config: &BVPConfig, n: usize) -> Result<CriticalConstant> {
    let op = build_operator(config, &PotentialSpec::Constant(1.0), n)?;
    let spec = op.dominant_eigenvalue()?;
    if !(spec.dominant_eigenvalue > 0.0) {
        return Err(Error::SpectralFailure { iterations: spec.iterations, residual: spec.residual });
    }
    Ok(CriticalConstant {
        lambda_star: 1.0 / spec.dominant_eigenvalue,
        mu_max: spec.dominant_eigenvalue,
        residual: spec.residual,
        n,
        iterations: spec.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kspecial::MLParams;

    fn rl_config(eta: f64) -> BVPConfig {
        BVPConfig { a: 0.0, b: 1.0, xi: 0.5, eta, params: MLParams::new(1.0, 1.0, 2.5, 0.6, 0.0).unwrap() }
    }

    #[test]
    fn trapezoid_weights_sum_to_length() {
        let (x, w) = graded_trapezoid(-1.0, 2.0, 17, 1.7);
        assert_eq!((x[0], x[16]), (-1.0, 2.0));
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        assert!(libm::fabs(w.iter().sum::<f64>() - 3.0) < 1e-14);
    }

    #[test]
    fn operator_structure() {
        let op = build_operator(&rl_config(0.3), &PotentialSpec::Constant(1.0), 16).unwrap();
        assert!(op.matrix.row(0).iter().all(|&v| v == 0.0));
        let min = op.matrix.as_slice().iter().copied().fold(f64::INFINITY, f64::min);
        assert!(min >= -1e-14 * op.matrix.frobenius(), "{min}");
        let zero = build_operator(&rl_config(0.3), &PotentialSpec::Constant(0.0), 16).unwrap();
        assert_eq!(zero.matrix.frobenius(), 0.0);
        let double = build_operator(&rl_config(0.3), &PotentialSpec::Constant(2.0), 16).unwrap();
        assert_eq!(double.matrix, op.matrix.scaled(2.0));
        assert!(build_operator(&rl_config(0.3), &PotentialSpec::Constant(1.0), 7).is_err());
    }

    #[test]
    fn critical_constant_is_detected() {
        let c = critical_lambda(&rl_config(0.0), 64).unwrap();
        assert!(c.residual <= SPECTRAL_TOL);
        let at = has_nontrivial_solution(&rl_config(0.0), &PotentialSpec::Constant(c.lambda_star), 64, 1e-6).unwrap();
        assert!(at.detected, "{at:?}");
        let half =
            has_nontrivial_solution(&rl_config(0.0), &PotentialSpec::Constant(0.5 * c.lambda_star), 64, 1e-6).unwrap();
        assert!(!half.detected);
        let zero = has_nontrivial_solution(&rl_config(0.0), &PotentialSpec::Constant(0.0), 64, 1e-6).unwrap();
        assert!(!zero.detected);
        assert_eq!(zero.margin, 1.0);
    }
}

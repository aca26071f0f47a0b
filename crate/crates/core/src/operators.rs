//! k-Prabhakar kernel, left-sided k-Prabhakar integral and derivative.
//!
//! The kernel is
//!
//! ```text
//! ε(t) = t^{β/k - 1} / k · E^γ_{k,ρ,β}(ω t^{ρ/k})   for t > 0,   0 otherwise,
//! ```
//!
//! the integral based at `a` is the convolution `(P f)(x) = ∫_a^x ε(x-t) f(t) dt`,
//! and the derivative is `D f = (d/dx)^m k^m P^{-γ}_{ρ, mk-β, ω} f` with
//! `m = ⌊β/k⌋ + 1`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fdiff;
use crate::kspecial::{ml_k, MLParams};
use crate::math;
use crate::quadrature::QuadratureRule;

/// Relative tolerance for every Mittag-Leffler evaluation inside kernels.
pub(crate) const SERIES_TOL: f64 = 1e-15;

/// A real function of one variable that the operators can sample.
pub trait RealFn {
    fn eval(&self, t: f64) -> f64;
}

impl<F: Fn(f64) -> f64> RealFn for F {
    fn eval(&self, t: f64) -> f64 {
        self(t)
    }
}

/// Samples `(t_i, f_i)` on strictly increasing nodes, read as the piecewise
/// linear interpolant. Outside the node range the end values are held.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::InvalidGrid("nodes and values differ in length"));
        }
        if nodes.len() < 2 {
            return Err(Error::InvalidGrid("at least two samples are required"));
        }
        if nodes.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("samples must be finite"));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid("nodes must be strictly increasing"));
        }
        Ok(GridFunction { nodes, values })
    }

    /// Samples `f` at the given nodes.
    pub fn sample<F: RealFn>(f: &F, nodes: Vec<f64>) -> Result<Self> {
        let values = nodes.iter().map(|&t| f.eval(t)).collect();
        GridFunction::new(nodes, values)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Whether the node range contains `[a, b]`.
    pub fn covers(&self, a: f64, b: f64) -> bool {
        self.nodes[0] <= a && b <= self.nodes[self.nodes.len() - 1]
    }
}

impl RealFn for GridFunction {
    fn eval(&self, t: f64) -> f64 {
        let n = self.nodes.len();
        if t <= self.nodes[0] {
            return self.values[0];
        }
        if t >= self.nodes[n - 1] {
            return self.values[n - 1];
        }
        let i = self.nodes.partition_point(|&x| x <= t) - 1;
        let (x0, x1) = (self.nodes[i], self.nodes[i + 1]);
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        y0 + (y1 - y0) * (t - x0) / (x1 - x0)
    }
}

/// `ε(t)` with `β` replaced by `β - shift·k`; zero for `t ≤ 0`.
pub fn kernel_eval(t: f64, params: &MLParams, shift: u32) -> Result<f64> {
    if !(t > 0.0) {
        return Ok(0.0);
    }
    let idx = params.index(shift);
    let k = params.k;
    let e = ml_k(params.omega * math::powf(t, params.rho / k), &idx, SERIES_TOL)?;
    Ok(math::powf(t, idx.beta / k - 1.0) / k * e.value)
}

/// `j`-th derivative of `x^{β/k-1} E^γ_{k,ρ,β}(ω x^{ρ/k})`:
/// `x^{β/k-(j+1)} / k^j · E^γ_{k,ρ,β-jk}(ω x^{ρ/k})`.
///
/// Unlike [`kernel_eval`] there is no `1/k` prefactor; the `j = 0` case is
/// `k · kernel_eval(x, params, 0)`.
pub fn kernel_jet(x: f64, params: &MLParams, j: u32) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("kernel_jet requires x > 0"));
    }
    let k = params.k;
    let idx = params.index(j);
    let e = ml_k(params.omega * math::powf(x, params.rho / k), &idx, SERIES_TOL)?;
    Ok(math::powf(x, params.beta / k - f64::from(j) - 1.0) / math::powf(k, f64::from(j)) * e.value)
}

/// The k-Prabhakar kernel based at `a`, with the operators built on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrabhakarKernel {
    params: MLParams,
    base: f64,
}

impl PrabhakarKernel {
    pub fn new(params: MLParams, base: f64) -> Result<Self> {
        params.validate()?;
        if !base.is_finite() {
            return Err(Error::InvalidParameter { name: "a", reason: "must be finite" });
        }
        Ok(PrabhakarKernel { params, base })
    }

    pub fn params(&self) -> &MLParams {
        &self.params
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    /// `ε(t)`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        kernel_eval(t, &self.params, 0)
    }

    /// Derivative order `m = ⌊β/k⌋ + 1`.
    pub fn derivative_order(&self) -> usize {
        math::floor(self.params.order()) as usize + 1
    }

    fn interval_len(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < self.base {
            return Err(Error::Domain("the integral needs a <= x"));
        }
        Ok(x - self.base)
    }

    fn sigma(&self) -> f64 {
        self.params.order() - 1.0
    }

    /// `(P f)(x)` at exactly `panels` panels; no refinement.
    pub fn integral_fixed<F: RealFn>(
        &self,
        f: &F,
        x: f64,
        rule: &QuadratureRule,
        panels: usize,
    ) -> Result<f64> {
        let len = self.interval_len(x)?;
        rule.integrate_fixed(len, self.sigma(), panels, |u| {
            Ok(kernel_eval(u, &self.params, 0)? * f.eval(x - u))
        })
    }

    /// `(P f)(x)` with panel doubling; also returns the panel count reached.
    pub fn integral_refined<F: RealFn>(
        &self,
        f: &F,
        x: f64,
        rule: &QuadratureRule,
    ) -> Result<(f64, usize)> {
        let len = self.interval_len(x)?;
        rule.integrate(len, self.sigma(), |u| {
            Ok(kernel_eval(u, &self.params, 0)? * f.eval(x - u))
        })
    }

    /// `(P f)(x) = ∫_a^x ε(x-t) f(t) dt`.
    pub fn integral<F: RealFn>(&self, f: &F, x: f64, rule: &QuadratureRule) -> Result<f64> {
        self.integral_refined(f, x, rule).map(|(v, _)| v)
    }

    /// The kernel of the complementary integral inside the derivative:
    /// order `mk - β`, exponent `-γ`.
    pub fn complementary(&self) -> PrabhakarKernel {
        let m = self.derivative_order() as f64;
        let params = MLParams {
            beta: m * self.params.k - self.params.beta,
            gamma: -self.params.gamma,
            ..self.params
        };
        PrabhakarKernel { params, base: self.base }
    }

    /// `(D f)(x)`, by `m`-th central differences (step `h`, then `h/2`,
    /// Richardson-combined) of `y ↦ k^m (P^{-γ}_{ρ,mk-β,ω} f)(y)`.
    ///
    /// The stencil `x ± m h` must stay inside `[a, upper]`. All stencil
    /// points share one panel count, fixed by refining at `x`, so the
    /// differenced function is a smooth function of `y`.
    pub fn derivative<F: RealFn>(
        &self,
        f: &F,
        x: f64,
        upper: f64,
        h: f64,
        rule: &QuadratureRule,
    ) -> Result<f64> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter { name: "h", reason: "must be positive" });
        }
        let m = self.derivative_order();
        let reach = m as f64 * h;
        if !(x - reach >= self.base && x + reach <= upper) {
            return Err(Error::Domain("finite-difference stencil leaves [a, b]"));
        }
        let comp = self.complementary();
        let (_, panels) = comp.integral_refined(f, x, rule)?;
        let scale = math::powf(self.params.k, m as f64);
        let weights = fdiff::centered_weights(m);

        let diff = |step: f64| -> Result<f64> {
            let mut acc = 0.0;
            for (i, w) in weights.iter().enumerate() {
                if *w == 0.0 {
                    continue;
                }
                let y = x + (i as f64 - m as f64) * step;
                acc += w * comp.integral_fixed(f, y, rule, panels)?;
            }
            Ok(scale * acc / math::powf(step, m as f64))
        };
        let coarse = diff(h)?;
        let fine = diff(0.5 * h)?;
        let gain = math::powf(2.0, f64::from(fdiff::centered_accuracy(m)));
        Ok((gain * fine - coarse) / (gain - 1.0))
    }
}

/// `(P f)(x) = ∫_a^x ε(x-t) f(t) dt`.
pub fn prabhakar_integral<F: RealFn>(
    f: &F,
    x: f64,
    a: f64,
    params: &MLParams,
    rule: &QuadratureRule,
) -> Result<f64> {
    PrabhakarKernel::new(*params, a)?.integral(f, x, rule)
}

/// `(D f)(x)` on the domain `[a, b]`; see [`PrabhakarKernel::derivative`].
pub fn prabhakar_derivative<F: RealFn>(
    f: &F,
    x: f64,
    a: f64,
    b: f64,
    params: &MLParams,
    h: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    PrabhakarKernel::new(*params, a)?.derivative(f, x, b, h, rule)
}

//! Green's function of the nonlocal boundary value problem
//!
//! ```text
//! (D^γ_{k,ρ,β,ω,a+} y)(t) + q(t) y(t) = 0,   a < t < b,
//! y(a) = y'(a) = 0,   y'(b) = η y(ξ).
//! ```
//!
//! With `P(t) = (t-a)^{β/k-1} E^γ_{k,ρ,β}(ω (t-a)^{ρ/k})`,
//! `Q(s) = (b-s)^{β/k-2}/k² E^γ_{k,ρ,β-k}(ω (b-s)^{ρ/k})` and
//! `D₀ = (b-a)^{β/k-2}/k E^γ_{k,ρ,β-k}(ω (b-a)^{ρ/k})`:
//!
//! ```text
//! G(t, s) = P(t) Q(s) / D₀ - ε(t - s)     for s ≤ t,
//! G(t, s) = P(t) Q(s) / D₀                for t ≤ s,
//! Δ       = D₀ - η P(ξ),
//! C       = 1 + η P(b) / Δ.
//! ```

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kspecial::MLParams;
use crate::math;
use crate::operators::kernel_eval;

/// Configuration of the boundary value problem. `eta` is the coupling in
/// `y'(b) = η y(ξ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BVPConfig {
    pub a: f64,
    pub b: f64,
    pub xi: f64,
    pub eta: f64,
    pub params: MLParams,
}

/// Non-fatal observations about a configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConfigWarning {
    /// `β` itself lies outside `(2, 3]` although `β/k` is inside.
    BetaOutsideWindow { beta: f64 },
    /// `β/k` is an integer, so `m = β/k + 1` in the derivative.
    IntegerOrder { order: f64 },
}

impl BVPConfig {
    /// Structural invariants, everything except the sign of `Δ`.
    fn check_structure(&self) -> Result<()> {
        self.params.validate()?;
        for (name, v) in [("a", self.a), ("b", self.b), ("xi", self.xi), ("eta", self.eta)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter { name, reason: "must be finite" });
            }
        }
        if !(self.a < self.b) {
            return Err(Error::InvalidConfig("a < b is required"));
        }
        if !(self.a < self.xi && self.xi < self.b) {
            return Err(Error::InvalidConfig("a < xi < b is required"));
        }
        if self.eta < 0.0 {
            return Err(Error::InvalidConfig("eta >= 0 is required"));
        }
        let order = self.params.order();
        // Allow β/k to exceed 3 by rounding, e.g. β = 2.4, k = 0.8.
        if !(order > 2.0 && order <= 3.0 * (1.0 + 4.0 * f64::EPSILON)) {
            return Err(Error::InvalidConfig("2 < beta/k <= 3 is required"));
        }
        Ok(())
    }

    pub fn warnings(&self) -> Vec<ConfigWarning> {
        let mut out = Vec::new();
        let beta = self.params.beta;
        if !(beta > 2.0 && beta <= 3.0) {
            out.push(ConfigWarning::BetaOutsideWindow { beta });
        }
        let order = self.params.order();
        if math::floor(order) == order {
            out.push(ConfigWarning::IntegerOrder { order });
        }
        out
    }

    /// Full validation, including `Δ > 0`.
    pub fn validate(&self) -> Result<()> {
        GreenFunction::new(self).map(|_| ())
    }
}

/// A validated configuration with the boundary constants precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenFunction {
    config: BVPConfig,
    d0: f64,
    delta: f64,
    upper_at_b: f64,
}

const DELTA_CONSTRAINT: &str =
    "delta = (b-a)^(beta/k-2)/k E_(beta-k)(omega (b-a)^(rho/k)) - eta (xi-a)^(beta/k-1) E_beta(omega (xi-a)^(rho/k)) > 0";

impl GreenFunction {
    pub fn new(config: &BVPConfig) -> Result<Self> {
        let (d0, delta) = raw_denominator(config)?;
        if !(delta > 0.0) {
            return Err(Error::DegenerateConfig { constraint: DELTA_CONSTRAINT, value: delta });
        }
        let mut gf = GreenFunction { config: *config, d0, delta, upper_at_b: 0.0 };
        gf.upper_at_b = gf.upper_factor(config.b)?;
        Ok(gf)
    }

    pub fn config(&self) -> &BVPConfig {
        &self.config
    }

    /// `Δ`.
    pub fn denominator(&self) -> f64 {
        self.delta
    }

    /// `D₀`, the boundary constant with `η = 0`.
    pub fn boundary_constant(&self) -> f64 {
        self.d0
    }

    /// `P(t) = (t-a)^{β/k-1} E^γ_{k,ρ,β}(ω (t-a)^{ρ/k})`.
    pub fn upper_factor(&self, t: f64) -> Result<f64> {
        let p = &self.config.params;
        Ok(p.k * kernel_eval(t - self.config.a, p, 0)?)
    }

    /// `Q(s) = (b-s)^{β/k-2}/k² E^γ_{k,ρ,β-k}(ω (b-s)^{ρ/k})`.
    pub fn lower_factor(&self, s: f64) -> Result<f64> {
        let p = &self.config.params;
        Ok(kernel_eval(self.config.b - s, p, 1)? / p.k)
    }

    fn check_point(&self, t: f64, s: f64) -> Result<()> {
        let BVPConfig { a, b, .. } = self.config;
        if !(a <= t && t <= b && a <= s && s <= b) {
            return Err(Error::Domain("(t, s) must lie in [a, b]^2"));
        }
        Ok(())
    }

    /// `(branch for s ≤ t, branch for t ≤ s)` at one point. They coincide on
    /// the diagonal.
    pub fn branches(&self, t: f64, s: f64) -> Result<(f64, f64)> {
        self.check_point(t, s)?;
        let shared = self.upper_factor(t)? * self.lower_factor(s)? / self.d0;
        let p = &self.config.params;
        let lag = t - s;
        let memory = if lag >= 0.0 {
            let ml = crate::kspecial::ml_k(
                p.omega * math::powf(lag, p.rho / p.k),
                &p.index(0),
                crate::operators::SERIES_TOL,
            )?;
            math::powf(lag, p.order() - 1.0) / p.k * ml.value
        } else {
            0.0
        };
        Ok((shared - memory, shared))
    }

    /// `G(t, s)`.
    pub fn eval(&self, t: f64, s: f64) -> Result<f64> {
        self.check_point(t, s)?;
        let shared = self.upper_factor(t)? * self.lower_factor(s)? / self.d0;
        if s <= t {
            Ok(shared - kernel_eval(t - s, &self.config.params, 0)?)
        } else {
            Ok(shared)
        }
    }

    /// The nonlocal prefactor `A(t) = η P(t) / Δ`.
    pub fn prefactor(&self, t: f64) -> Result<f64> {
        Ok(self.config.eta * self.upper_factor(t)? / self.delta)
    }

    /// `C = 1 + η P(b) / Δ ≥ 1`.
    pub fn amplification(&self) -> f64 {
        1.0 + self.config.eta * self.upper_at_b / self.delta
    }

    /// Samples `G` on the uniform `(n+1) × (n+1)` grid over `[a, b]²`.
    pub fn grid(&self, n: usize) -> Result<GreenGrid> {
        if n == 0 {
            return Err(Error::InvalidParameter { name: "n", reason: "grid needs at least one interval" });
        }
        let BVPConfig { a, b, .. } = self.config;
        let h = (b - a) / n as f64;
        let points: Vec<f64> = (0..=n).map(|i| if i == n { b } else { a + i as f64 * h }).collect();
        let mut values = Vec::with_capacity((n + 1) * (n + 1));
        let mut diagonal_gap: f64 = 0.0;
        for &t in &points {
            for &s in &points {
                values.push(self.eval(t, s)?);
            }
            let (lo, hi) = self.branches(t, t)?;
            diagonal_gap = diagonal_gap.max(math::abs(lo - hi));
        }
        Ok(GreenGrid { points, values, diagonal_gap })
    }
}

/// `G` sampled on a square grid, row-major in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenGrid {
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest gap between the two branch formulas on the diagonal.
    pub diagonal_gap: f64,
}

/// Violation counts for the nonnegativity, monotonicity and bracketing
/// properties of `G`, each tested at `rel_tol · scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenGridReport {
    pub n: usize,
    pub min: f64,
    pub max: f64,
    /// `max |G|` over the grid.
    pub scale: f64,
    pub nonnegativity_violations: usize,
    pub monotonicity_violations: usize,
    pub bracketing_violations: usize,
    pub diagonal_violations: usize,
}

impl GreenGridReport {
    pub fn passed(&self) -> bool {
        self.nonnegativity_violations == 0
            && self.monotonicity_violations == 0
            && self.bracketing_violations == 0
            && self.diagonal_violations == 0
    }
}

impl GreenGrid {
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.points.len() + j]
    }

    pub fn report(&self, rel_tol: f64) -> GreenGridReport {
        let m = self.points.len();
        let min = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let scale = self.values.iter().fold(0.0_f64, |acc, v| acc.max(math::abs(*v)));
        let slack = rel_tol * scale;

        let nonneg = self.values.iter().filter(|&&v| v < -slack).count();
        let mut monotone = 0;
        let mut bracket = 0;
        for j in 0..m {
            for i in 0..m - 1 {
                if self.at(i, j) > self.at(i + 1, j) + slack {
                    monotone += 1;
                }
            }
            let col_max = (0..m).map(|i| self.at(i, j)).fold(f64::NEG_INFINITY, f64::max);
            if math::abs(self.at(0, j)) > slack || self.at(m - 1, j) < col_max - slack {
                bracket += 1;
            }
        }
        GreenGridReport {
            n: m - 1,
            min,
            max,
            scale,
            nonnegativity_violations: nonneg,
            monotonicity_violations: monotone,
            bracketing_violations: bracket,
            diagonal_violations: usize::from(self.diagonal_gap > slack),
        }
    }
}

/// `(D₀, Δ)` after the structural checks, without the sign test.
fn raw_denominator(config: &BVPConfig) -> Result<(f64, f64)> {
    config.check_structure()?;
    let p = &config.params;
    let d0 = kernel_eval(config.b - config.a, p, 1)?;
    let at_xi = p.k * kernel_eval(config.xi - config.a, p, 0)?;
    Ok((d0, d0 - config.eta * at_xi))
}

/// `Δ = (b-a)^{β/k-2}/k E^γ_{k,ρ,β-k}(ω(b-a)^{ρ/k}) - η (ξ-a)^{β/k-1} E^γ_{k,ρ,β}(ω(ξ-a)^{ρ/k})`.
/// Fails with [`Error::DegenerateConfig`] when `Δ ≤ 0`.
pub fn denominator(config: &BVPConfig) -> Result<f64> {
    GreenFunction::new(config).map(|g| g.denominator())
}

/// `G(t, s)` for one point; build a [`GreenFunction`] to evaluate many.
pub fn green(t: f64, s: f64, config: &BVPConfig) -> Result<f64> {
    GreenFunction::new(config)?.eval(t, s)
}

/// `C = 1 + η (b-a)^{β/k-1} E^γ_{k,ρ,β}(ω(b-a)^{ρ/k}) / Δ`.
pub fn amplification_factor(config: &BVPConfig) -> Result<f64> {
    GreenFunction::new(config).map(|g| g.amplification())
}

//! The Hartman-Wintner-type necessary condition
//!
//! ```text
//! ∫_a^b G(b, s) |q(s)| ds  ≥  1 / C
//! ```
//!
//! for a nontrivial solution, and the classical bounds it reduces to.
//! A strict failure certifies that only the trivial solution exists.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::green::{BVPConfig, GreenFunction};
use crate::math;
use crate::operators::RealFn;
use crate::potential::PotentialSpec;
use crate::quadrature::{gauss_legendre, QuadratureRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NecessaryConditionHolds,
    NoNontrivialSolutionCertified,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityReport {
    pub lhs: f64,
    /// `1 / C`.
    pub rhs: f64,
    /// `lhs - rhs`.
    pub margin: f64,
    pub verdict: Verdict,
}

impl InequalityReport {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        let verdict = if margin < 0.0 {
            Verdict::NoNontrivialSolutionCertified
        } else {
            Verdict::NecessaryConditionHolds
        };
        InequalityReport { lhs, rhs, margin, verdict }
    }
}

/// Rule used by [`hw_check`].
pub fn default_rule() -> QuadratureRule {
    QuadratureRule { tol: 1e-10, max_doublings: 10, ..QuadratureRule::default() }
}

/// `∫_a^b G(b, s) |q(s)| ds`.
pub fn hw_lhs(q: &PotentialSpec, config: &BVPConfig, rule: &QuadratureRule) -> Result<f64> {
    let gf = GreenFunction::new(config)?;
    q.validate_on(config.a, config.b)?;
    if q.is_zero() {
        return Ok(0.0);
    }
    let p_b = gf.upper_factor(config.b)?;
    let d0 = gf.boundary_constant();
    let params = config.params;
    // G(b, b-u) = P(b) Q(b-u) / D₀ - ε(u), which behaves like u^{β/k-2}.
    let g_at_b = move |s: f64| -> Result<f64> {
        let u = config.b - s;
        let shared = p_b * crate::operators::kernel_eval(u, &params, 1)? / (params.k * d0);
        Ok(shared - crate::operators::kernel_eval(u, &params, 0)?)
    };
    let sigma = params.order() - 2.0;
    let breaks = kinks(q, config.a, config.b);
    integrate_split(config.a, config.b, Some(sigma), &breaks, rule, |s| {
        Ok(g_at_b(s)? * math::abs(q.eval(s)))
    })
}

/// [`hw_check_with`] using [`default_rule`].
pub fn hw_check(q: &PotentialSpec, config: &BVPConfig) -> Result<InequalityReport> {
    hw_check_with(q, config, &default_rule())
}

pub fn hw_check_with(q: &PotentialSpec, config: &BVPConfig, rule: &QuadratureRule) -> Result<InequalityReport> {
    let lhs = hw_lhs(q, config, rule)?;
    let rhs = 1.0 / GreenFunction::new(config)?.amplification();
    Ok(InequalityReport::new(lhs, rhs))
}

/// Classical Riemann-Liouville bound for order `alpha` and coupling `beta_c`:
///
/// ```text
/// Γ(α) / (1 + β (b-a)^{α-1} / ((α-1)(b-a)^{α-2} - β (ξ-a)^{α-1}))
/// ```
pub fn cabrera_rhs(alpha_order: f64, a: f64, b: f64, xi: f64, beta_c: f64) -> Result<f64> {
    for (name, v) in [("alpha", alpha_order), ("a", a), ("b", b), ("xi", xi), ("beta", beta_c)] {
        if !v.is_finite() {
            return Err(Error::InvalidParameter { name, reason: "must be finite" });
        }
    }
    if !(a < xi && xi < b) {
        return Err(Error::InvalidConfig("a < xi < b is required"));
    }
    let len = b - a;
    let den = (alpha_order - 1.0) * math::powf(len, alpha_order - 2.0)
        - beta_c * math::powf(xi - a, alpha_order - 1.0);
    if !(den > 0.0) {
        return Err(Error::DegenerateConfig {
            constraint: "(alpha-1)(b-a)^(alpha-2) - beta (xi-a)^(alpha-1) > 0",
            value: den,
        });
    }
    let c = 1.0 + beta_c * math::powf(len, alpha_order - 1.0) / den;
    Ok(math::tgamma(alpha_order) / c)
}

/// The classical pair `(∫(b-s)(s-a) q⁺ ds, ∫|q| ds)`, to be compared with
/// `b - a` and `4 / (b - a)` respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalBounds {
    pub hartman_wintner: f64,
    pub lyapunov: f64,
}

impl ClassicalBounds {
    pub fn hartman_wintner_threshold(a: f64, b: f64) -> f64 {
        b - a
    }

    pub fn lyapunov_threshold(a: f64, b: f64) -> f64 {
        4.0 / (b - a)
    }
}

/// `(b-s)(s-a)`.
pub fn hw_weight(a: f64, b: f64, s: f64) -> f64 {
    (b - s) * (s - a)
}

/// `(argmax, max)` of [`hw_weight`] over `[a, b]`.
pub fn hw_weight_max(a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    (mid, hw_weight(a, b, mid))
}

pub fn classical_bounds(a: f64, b: f64, q: &PotentialSpec) -> Result<ClassicalBounds> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidConfig("a < b is required"));
    }
    q.validate_on(a, b)?;
    let (_, peak) = hw_weight_max(a, b);
    debug_assert!(math::abs(peak - 0.25 * (b - a) * (b - a)) <= 1e-12 * peak);
    if q.is_zero() {
        return Ok(ClassicalBounds { hartman_wintner: 0.0, lyapunov: 0.0 });
    }
    let rule = default_rule();
    let breaks = kinks(q, a, b);
    let hartman_wintner = integrate_split(a, b, None, &breaks, &rule, |s| {
        Ok(hw_weight(a, b, s) * q.eval(s).max(0.0))
    })?;
    let lyapunov = integrate_split(a, b, None, &breaks, &rule, |s| Ok(math::abs(q.eval(s))))?;
    Ok(ClassicalBounds { hartman_wintner, lyapunov })
}

/// Points in `(a, b)` where `|q|` or `q⁺` may fail to be smooth.
fn kinks(q: &PotentialSpec, a: f64, b: f64) -> Vec<f64> {
    match q {
        PotentialSpec::Constant(_) => Vec::new(),
        PotentialSpec::Samples(g) => g.nodes().iter().copied().filter(|&x| a < x && x < b).collect(),
        PotentialSpec::Polynomial(_) => {
            const SCAN: usize = 1024;
            let h = (b - a) / SCAN as f64;
            let mut roots = Vec::new();
            let mut lo = a;
            let mut f_lo = q.eval(lo);
            for i in 1..=SCAN {
                let hi = if i == SCAN { b } else { a + i as f64 * h };
                let f_hi = q.eval(hi);
                if f_lo * f_hi < 0.0 {
                    let (mut l, mut r, mut fl) = (lo, hi, f_lo);
                    for _ in 0..200 {
                        let m = 0.5 * (l + r);
                        if m <= l || m >= r {
                            break;
                        }
                        let fm = q.eval(m);
                        if fl * fm <= 0.0 {
                            r = m;
                        } else {
                            l = m;
                            fl = fm;
                        }
                    }
                    roots.push(0.5 * (l + r));
                } else if f_hi == 0.0 && i < SCAN {
                    roots.push(hi);
                }
                lo = hi;
                f_lo = f_hi;
            }
            roots
        }
    }
}

/// `∫_a^b f(s) ds` with `f` smooth between consecutive `breaks`. When
/// `sigma_at_b` is given, `f` behaves like `(b-s)^σ` near `b` and the last
/// segment goes through the endpoint-aware `rule`.
fn integrate_split<F>(
    a: f64,
    b: f64,
    sigma_at_b: Option<f64>,
    breaks: &[f64],
    rule: &QuadratureRule,
    mut f: F,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut pts = Vec::with_capacity(breaks.len() + 2);
    pts.push(a);
    pts.extend(breaks.iter().copied().filter(|&x| a < x && x < b));
    pts.push(b);
    let mut total = 0.0;
    let smooth_end = match sigma_at_b {
        Some(sigma) => {
            let last = pts[pts.len() - 2];
            let (v, _) = rule.integrate(b - last, sigma, |u| f(b - u))?;
            total += v;
            pts.len() - 1
        }
        None => pts.len(),
    };
    if smooth_end >= 2 {
        total += smooth_segments(&pts[..smooth_end], rule, &mut f)?;
    }
    Ok(total)
}

/// Composite Gauss-Legendre over the segments of `pts`, doubling the
/// panels per segment until the relative change is below `rule.tol`.
fn smooth_segments<F>(pts: &[f64], rule: &QuadratureRule, f: &mut F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    rule.validate()?;
    let gl = gauss_legendre(rule.order);
    let mut eval = |panels: usize| -> Result<f64> {
        let mut acc = 0.0;
        for seg in pts.windows(2) {
            let step = (seg[1] - seg[0]) / panels as f64;
            for p in 0..panels {
                let lo = seg[0] + p as f64 * step;
                let half = 0.5 * step;
                let mid = lo + half;
                for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
                    acc += half * w * f(mid + half * x)?;
                }
            }
        }
        Ok(acc)
    };
    let mut panels = 1;
    let mut prev = eval(panels)?;
    let mut change = f64::INFINITY;
    for _ in 0..rule.max_doublings {
        panels *= 2;
        let cur = eval(panels)?;
        let diff = math::abs(cur - prev);
        if diff <= rule.tol * math::abs(cur) || (cur == 0.0 && prev == 0.0) {
            return Ok(cur);
        }
        change = if cur != 0.0 { diff / math::abs(cur) } else { f64::INFINITY };
        prev = cur;
    }
    Err(Error::Quadrature { panels, change })
}

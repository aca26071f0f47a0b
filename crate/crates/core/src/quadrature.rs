//! Quadrature for integrands with an algebraic endpoint singularity.
//!
//! Integrals are written as `∫_0^L h(u) du` with `h(u) ~ u^σ` as `u → 0`.
//!
//! - [`Scheme::GradedComposite`]: `N` panels with breakpoints
//!   `u_i = L (i/N)^q` (grading exponent `q`, default `max(1, 2/(1+σ))`)
//!   and Gauss-Legendre on each panel. Second order for any `σ > -1`.
//! - [`Scheme::JacobiEndpoint`]: `N` uniform panels, the first of which is
//!   split into geometric layers `L/N · r^j` toward `u = 0`; the innermost
//!   layer uses Gauss-Jacobi with weight `u^σ`, the rest Gauss-Legendre.
//!   The layer count is chosen so the innermost layer carries a share of
//!   order `1e-15` of the integral.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

const GEOMETRIC_RATIO: f64 = 0.25;
const LAYER_DECAY: f64 = 34.5;
// 0.25^400 ≈ 1e-241 keeps every breakpoint, and the kernel there, representable.
const MAX_LAYERS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Gauss-Legendre on every panel of the graded mesh.
    GradedComposite,
    /// Gauss-Jacobi on the panel touching the singular endpoint.
    JacobiEndpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule {
    pub scheme: Scheme,
    /// Panels at the coarsest refinement level.
    pub n_panels: usize,
    /// Grading exponent of [`Scheme::GradedComposite`]; `None` picks
    /// `max(1, 2/(1+σ))` per integral.
    pub grading: Option<f64>,
    /// Gauss points per panel.
    pub order: usize,
    /// Relative change under panel doubling accepted as converged.
    pub tol: f64,
    /// Number of panel doublings tried before giving up.
    pub max_doublings: u32,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule {
            scheme: Scheme::JacobiEndpoint,
            n_panels: 8,
            grading: None,
            order: 12,
            tol: 1e-11,
            max_doublings: 8,
        }
    }
}

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss-Legendre rule with `n` points.
pub fn gauss_legendre(n: usize) -> GaussRule {
    gauss_jacobi(n, 0.0, 0.0)
}

/// Gauss-Jacobi rule with `n` points for the weight `(1-x)^α (1+x)^β`,
/// `α, β > -1`, computed by Golub-Welsch.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> GaussRule {
    assert!(n >= 1, "a Gauss rule needs at least one node");
    assert!(alpha > -1.0 && beta > -1.0, "Jacobi exponents must exceed -1");
    let ab = alpha + beta;

    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    diag[0] = (beta - alpha) / (ab + 2.0);
    for (i, d) in diag.iter_mut().enumerate().skip(1) {
        let m = 2.0 * i as f64 + ab;
        *d = (beta * beta - alpha * alpha) / (m * (m + 2.0));
    }
    // off[i] couples rows i and i + 1.
    for i in 1..n {
        let j = i as f64;
        let m = 2.0 * j + ab;
        let b2 = if i == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            4.0 * j * (j + alpha) * (j + beta) * (j + ab) / (m * m * (m + 1.0) * (m - 1.0))
        };
        off[i - 1] = math::sqrt(b2);
    }
    let mu0 = math::powf(2.0, ab + 1.0) * math::tgamma(alpha + 1.0) * math::tgamma(beta + 1.0)
        / math::tgamma(ab + 2.0);

    let first = symmetric_tridiagonal_eigen(&mut diag, &mut off);
    let mut pairs: Vec<(f64, f64)> =
        diag.iter().zip(&first).map(|(&x, &v)| (x, mu0 * v * v)).collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Implicit QL on a symmetric tridiagonal matrix. On return `diag` holds the
/// eigenvalues; the result holds the first component of each eigenvector.
fn symmetric_tridiagonal_eigen(diag: &mut [f64], off: &mut [f64]) -> Vec<f64> {
    let n = diag.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = math::abs(diag[m]) + math::abs(diag[m + 1]);
                if math::abs(off[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 100, "tridiagonal QL failed to converge");
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = math::hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = math::hypot(f, g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    z
}

/// Flattened node/weight list for `∫_0^L h(u) du`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointMesh {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl EndpointMesh {
    pub fn integrate<F>(&self, mut h: F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mut acc = 0.0;
        for (&u, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * h(u)?;
        }
        Ok(acc)
    }
}

impl QuadratureRule {
    pub fn validate(&self) -> Result<()> {
        if self.n_panels == 0 {
            return Err(Error::InvalidParameter { name: "n_panels", reason: "must be positive" });
        }
        if self.order == 0 {
            return Err(Error::InvalidParameter { name: "order", reason: "must be positive" });
        }
        if let Some(q) = self.grading {
            if !(q >= 1.0 && q.is_finite()) {
                return Err(Error::InvalidParameter { name: "grading", reason: "must be >= 1" });
            }
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter { name: "tol", reason: "must be positive" });
        }
        Ok(())
    }

    /// Grading exponent for an endpoint behaviour `u^σ`.
    pub fn grading_for(&self, sigma: f64) -> f64 {
        self.grading.unwrap_or_else(|| {
            if sigma + 1.0 > 0.0 {
                f64::max(1.0, 2.0 / (1.0 + sigma))
            } else {
                1.0
            }
        })
    }

    /// Geometric layers used by [`Scheme::JacobiEndpoint`] for exponent `σ`.
    pub fn geometric_layers(&self, sigma: f64) -> usize {
        // (r^M)^{1+σ} ≤ e^{-LAYER_DECAY}
        let m = LAYER_DECAY / ((1.0 + sigma) * -math::ln(GEOMETRIC_RATIO));
        (m as usize + 1).clamp(4, MAX_LAYERS)
    }

    /// Panel breakpoints `0 = u_0 < u_1 < ... < u_P = len`.
    pub fn breakpoints(&self, len: f64, sigma: f64, panels: usize) -> Vec<f64> {
        let step = len / panels as f64;
        match self.scheme {
            Scheme::GradedComposite => {
                let q = self.grading_for(sigma);
                (0..=panels).map(|i| len * math::powf(i as f64 / panels as f64, q)).collect()
            }
            Scheme::JacobiEndpoint => {
                let layers = self.geometric_layers(sigma);
                let mut pts = Vec::with_capacity(layers + panels + 1);
                pts.push(0.0);
                pts.extend((0..layers).rev().map(|j| step * math::powf(GEOMETRIC_RATIO, (j + 1) as f64)));
                pts.extend((1..panels).map(|i| step * i as f64));
                pts.push(len);
                pts
            }
        }
    }

    /// Nodes and weights for `∫_0^len h(u) du` at refinement level `panels`.
    /// Every node lies strictly inside `(0, len)` and every weight is positive.
    pub fn mesh(&self, len: f64, sigma: f64, panels: usize) -> EndpointMesh {
        assert!(sigma > -1.0, "endpoint exponent must exceed -1");
        let legendre = gauss_legendre(self.order);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        if !(len > 0.0) {
            return EndpointMesh { nodes, weights };
        }
        let jacobi = (self.scheme == Scheme::JacobiEndpoint && sigma != 0.0)
            .then(|| gauss_jacobi(self.order, 0.0, sigma));
        let pts = self.breakpoints(len, sigma, panels);
        for (i, w) in pts.windows(2).enumerate() {
            let (lo, hi) = (w[0], w[1]);
            let half = 0.5 * (hi - lo);
            match (&jacobi, i) {
                (Some(gj), 0) => {
                    // ∫_0^h u^σ g(u) du = (h/2)^{σ+1} ∫ (1+x)^σ g(h(1+x)/2) dx
                    let scale = math::powf(half, sigma + 1.0);
                    for (&x, &w) in gj.nodes.iter().zip(&gj.weights) {
                        let u = half * (1.0 + x);
                        nodes.push(u);
                        weights.push(scale * w / math::powf(u, sigma));
                    }
                }
                _ => {
                    let mid = 0.5 * (hi + lo);
                    for (&x, &w) in legendre.nodes.iter().zip(&legendre.weights) {
                        nodes.push(mid + half * x);
                        weights.push(half * w);
                    }
                }
            }
        }
        EndpointMesh { nodes, weights }
    }

    /// `∫_0^len h(u) du` at exactly `panels` panels.
    pub fn integrate_fixed<F>(&self, len: f64, sigma: f64, panels: usize, h: F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        self.mesh(len, sigma, panels).integrate(h)
    }

    /// `∫_0^len h(u) du` with panel doubling until the relative change drops
    /// below `tol`. Returns the value and the panel count it settled at.
    pub fn integrate<F>(&self, len: f64, sigma: f64, mut h: F) -> Result<(f64, usize)>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        self.validate()?;
        let mut panels = self.n_panels;
        let mut prev = self.integrate_fixed(len, sigma, panels, &mut h)?;
        let mut change = f64::INFINITY;
        for _ in 0..self.max_doublings {
            panels *= 2;
            let cur = self.integrate_fixed(len, sigma, panels, &mut h)?;
            let diff = math::abs(cur - prev);
            if diff <= self.tol * math::abs(cur) || (cur == 0.0 && prev == 0.0) {
                return Ok((cur, panels));
            }
            change = if cur != 0.0 { diff / math::abs(cur) } else { f64::INFINITY };
            prev = cur;
        }
        Err(Error::Quadrature { panels, change })
    }
}

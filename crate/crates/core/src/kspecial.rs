//! k-Gamma function, Pochhammer k-symbol and the k-Mittag-Leffler function.
//!
//! ```text
//! Γ_k(x)          = k^{x/k - 1} Γ(x/k)
//! (γ)_{n,k}       = γ (γ + k) ... (γ + (n-1) k)
//! E^γ_{k,ρ,β}(z)  = Σ_n (γ)_{n,k} z^n / (Γ_k(ρ n + β) n!)
//! ```
//!
//! `1/Γ_k` is taken to be zero at the poles of `Γ_k`, so shifted series such
//! as `E^γ_{k,ρ,β-2k}` are defined for every real `β`.

use crate::error::{Error, Result};
use crate::math;

/// Largest `|ln v|` for which `v` is a normal double.
const LN_RANGE: f64 = 708.0;

pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// The five real parameters `(k, ρ, β, γ, ω)` of the k-Prabhakar family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub k: f64,
    pub rho: f64,
    pub beta: f64,
    pub gamma: f64,
    pub omega: f64,
}

impl MLParams {
    pub fn new(k: f64, rho: f64, beta: f64, gamma: f64, omega: f64) -> Result<Self> {
        let p = MLParams { k, rho, beta, gamma, omega };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("k", self.k),
            ("rho", self.rho),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("omega", self.omega),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter { name, reason: "must be finite" });
            }
        }
        if self.k <= 0.0 {
            return Err(Error::InvalidParameter { name: "k", reason: "must be positive" });
        }
        if self.rho <= 0.0 {
            return Err(Error::InvalidParameter { name: "rho", reason: "must be positive" });
        }
        if self.beta <= 0.0 {
            return Err(Error::InvalidParameter { name: "beta", reason: "must be positive" });
        }
        Ok(())
    }

    /// Effective order `β/k`.
    pub fn order(&self) -> f64 {
        self.beta / self.k
    }

    /// Series index `(k, ρ, β - shift·k, γ)`.
    pub fn index(&self, shift: u32) -> SeriesIndex {
        SeriesIndex {
            k: self.k,
            rho: self.rho,
            beta: self.beta - f64::from(shift) * self.k,
            gamma: self.gamma,
        }
    }
}

/// The parameters that select one k-Mittag-Leffler series; `ω` enters only
/// through the argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesIndex {
    pub k: f64,
    pub rho: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SeriesIndex {
    pub fn new(k: f64, rho: f64, beta: f64, gamma: f64) -> Self {
        SeriesIndex { k, rho, beta, gamma }
    }

    fn validate(&self) -> Result<()> {
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(Error::InvalidParameter { name: "k", reason: "must be positive and finite" });
        }
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(Error::InvalidParameter { name: "rho", reason: "must be positive and finite" });
        }
        if !self.beta.is_finite() {
            return Err(Error::InvalidParameter { name: "beta", reason: "must be finite" });
        }
        if !self.gamma.is_finite() {
            return Err(Error::InvalidParameter { name: "gamma", reason: "must be finite" });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    /// Estimated bound on `|tail| / |value|`.
    pub truncation_estimate: f64,
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "k", reason: "must be positive and finite" })
    }
}

/// `(ln|Γ_k(x)|, sign Γ_k(x))`, or `None` at a pole.
fn ln_k_gamma_signed(x: f64, k: f64) -> Option<(f64, f64)> {
    let u = x / k;
    if math::is_nonpositive_integer(u) {
        return None;
    }
    let (lg, sign) = math::lgamma_signed(u);
    Some(((u - 1.0) * math::ln(k) + lg, sign))
}

/// `1/Γ_k(x)`, zero at the poles.
pub fn recip_k_gamma(x: f64, k: f64) -> Result<f64> {
    check_k(k)?;
    match k_gamma(x, k) {
        Ok(g) => Ok(1.0 / g),
        Err(Error::Pole { .. }) => Ok(0.0),
        Err(Error::Overflow { .. }) => {
            let (l, s) = ln_k_gamma_signed(x, k).expect("pole already handled");
            Ok(s * math::exp(-l))
        }
        Err(e) => Err(e),
    }
}

/// k-Gamma function `Γ_k(x) = k^{x/k-1} Γ(x/k)`.
pub fn k_gamma(x: f64, k: f64) -> Result<f64> {
    check_k(k)?;
    if !x.is_finite() {
        return Err(Error::InvalidParameter { name: "x", reason: "must be finite" });
    }
    let u = x / k;
    let (l, sign) = ln_k_gamma_signed(x, k).ok_or(Error::Pole { x, k })?;
    if math::abs(l) > LN_RANGE {
        return Err(Error::Overflow { x, k });
    }
    let g = math::tgamma(u);
    let scale = math::powf(k, u - 1.0);
    let direct = g * scale;
    if direct.is_finite() && direct != 0.0 {
        Ok(direct)
    } else {
        Ok(sign * math::exp(l))
    }
}

/// `ln Γ_k(x)` for `x > 0`.
pub fn log_k_gamma(x: f64, k: f64) -> Result<f64> {
    check_k(k)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("log_k_gamma requires finite x > 0"));
    }
    let u = x / k;
    Ok((u - 1.0) * math::ln(k) + math::lgamma_signed(u).0)
}

/// Pochhammer k-symbol `(g)_{n,k} = g (g+k) ... (g+(n-1)k)`.
pub fn pochhammer_k(g: f64, n: u32, k: f64) -> f64 {
    (0..n).map(|i| g + f64::from(i) * k).product()
}

/// k-Mittag-Leffler function with the default term budget.
pub fn ml_k(z: f64, index: &SeriesIndex, tol: f64) -> Result<SeriesResult> {
    ml_k_with_budget(z, index, tol, DEFAULT_MAX_TERMS)
}

/// Compensated (Neumaier) running sum.
#[derive(Default)]
struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if math::abs(self.sum) >= math::abs(x) {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// k-Mittag-Leffler function `E^γ_{k,ρ,β}(z)`.
///
/// Terms are built in log space with a sign tracker. Summation stops once two
/// consecutive terms fall below `tol` relative to the partial sum, the terms
/// are shrinking, and the geometric tail bound is itself below `tol`.
pub fn ml_k_with_budget(
    z: f64,
    index: &SeriesIndex,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesResult> {
    index.validate()?;
    if !z.is_finite() {
        return Err(Error::InvalidParameter { name: "z", reason: "must be finite" });
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter { name: "tol", reason: "must lie in (0, 1)" });
    }
    let SeriesIndex { k, rho, beta, gamma } = *index;

    let first = recip_k_gamma(beta, k)?;
    if z == 0.0 || gamma == 0.0 {
        return Ok(SeriesResult { value: first, terms_used: 1, truncation_estimate: 0.0 });
    }

    let ln_abs_z = math::ln(math::abs(z));
    let z_negative = z < 0.0;

    let mut acc = Accumulator::default();
    acc.add(first);

    // Running log-magnitudes of (γ)_{n,k} and n!.
    let mut ln_poch = 0.0;
    let mut poch_sign = 1.0;
    let mut ln_fact = 0.0;

    // The stopping test runs on log-magnitudes so that terms which
    // underflow (tiny |z|) still terminate the loop.
    let mut prev_ln: Option<f64> = Some(math::ln(math::abs(first)));
    let mut prev_small = false;

    for n in 1..max_terms {
        let g = gamma + (n - 1) as f64 * k;
        if g == 0.0 {
            // (γ)_{m,k} = 0 for every m ≥ n: the series is a polynomial.
            return Ok(SeriesResult { value: acc.value(), terms_used: n, truncation_estimate: 0.0 });
        }
        ln_poch += math::ln(math::abs(g));
        if g < 0.0 {
            poch_sign = -poch_sign;
        }
        let nf = n as f64;
        ln_fact += math::ln(nf);

        // `None` at a pole of Γ_k, where the term is zero by convention.
        let (term, ln_mag) = match ln_k_gamma_signed(rho * nf + beta, k) {
            None => (0.0, None),
            Some((ln_gk, gk_sign)) => {
                let mut sign = poch_sign * gk_sign;
                if z_negative && n % 2 == 1 {
                    sign = -sign;
                }
                let ln_mag = ln_poch + nf * ln_abs_z - ln_gk - ln_fact;
                (sign * math::exp(ln_mag), Some(ln_mag))
            }
        };
        acc.add(term);
        let sum = acc.value();
        if !sum.is_finite() {
            // The function value itself overflows double precision.
            return Err(Error::NonConvergence { terms: n + 1, estimate: f64::INFINITY });
        }

        let ln_sum = math::ln(math::abs(sum));
        let small = sum != 0.0 && ln_mag.map_or(true, |l| l <= math::ln(tol) + ln_sum);
        if let (true, true, Some(cur), Some(prev)) = (small, prev_small, ln_mag, prev_ln) {
            let ratio = math::exp(cur - prev);
            if ratio < 1.0 {
                let estimate = math::exp(cur - ln_sum) * ratio / (1.0 - ratio);
                if estimate <= tol {
                    return Ok(SeriesResult {
                        value: sum,
                        terms_used: n + 1,
                        truncation_estimate: estimate,
                    });
                }
            }
        }
        prev_small = small;
        prev_ln = ln_mag;
    }

    let sum = acc.value();
    let estimate = match prev_ln {
        Some(l) if sum != 0.0 => math::exp(l - math::ln(math::abs(sum))),
        _ => f64::INFINITY,
    };
    Err(Error::NonConvergence { terms: max_terms, estimate })
}

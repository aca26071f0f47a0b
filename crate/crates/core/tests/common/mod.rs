//! Reference implementations shared by the integration tests. They use
//! `statrs` for the gamma function and plain partial sums, independently
//! of the library's log-space evaluation.

#![allow(dead_code)]

use statrs::function::gamma::{gamma, ln_gamma};

/// `Γ(x)` for moderate `|x|`: the recurrence moves the argument into
/// `[1, 2)` first, where `statrs` is accurate to a few ulps. Calling it
/// directly at `x ≈ 14` loses about three digits.
pub fn gamma_reduced(x: f64) -> f64 {
    let mut u = x;
    let mut scale = 1.0;
    while u >= 2.0 {
        u -= 1.0;
        scale *= u;
    }
    while u < 1.0 {
        scale /= u;
        u += 1.0;
    }
    scale * gamma(u)
}

/// `ln |1/Γ_k(x)|` for `x > 0`.
pub fn ln_recip_k_gamma(x: f64, k: f64) -> f64 {
    (1.0 - x / k) * k.ln() - ln_gamma(x / k)
}

/// `1 / Γ(x)`, zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 150.0 {
        return (-ln_gamma(x)).exp();
    }
    1.0 / gamma_reduced(x)
}

/// `Γ_k(x) = k^{x/k - 1} Γ(x/k)`.
pub fn k_gamma(x: f64, k: f64) -> f64 {
    k.powf(x / k - 1.0) * gamma_reduced(x / k)
}

/// `1 / Γ_k(x)`.
pub fn recip_k_gamma(x: f64, k: f64) -> f64 {
    k.powf(1.0 - x / k) * recip_gamma(x / k)
}

/// Partial sums of `Σ (γ)_{n,k} z^n / (Γ_k(nρ + β) n!)` until the terms
/// have been negligible for a while, or `max_terms`.
pub fn ml_series(z: f64, k: f64, rho: f64, beta: f64, gamma_: f64, max_terms: usize) -> f64 {
    let mut sum = 0.0;
    // (γ)_{n,k} z^n / n!, built up iteratively.
    let mut coeff = 1.0;
    let mut quiet = 0;
    for n in 0..max_terms {
        let nf = n as f64;
        let term = coeff * recip_k_gamma(nf * rho + beta, k);
        sum += term;
        if term.abs() <= 1e-18 * sum.abs().max(1e-300) {
            quiet += 1;
            if quiet >= 5 {
                break;
            }
        } else {
            quiet = 0;
        }
        coeff *= (gamma_ + nf * k) * z / (nf + 1.0);
        if coeff == 0.0 {
            break;
        }
    }
    sum
}

/// `t^{β/k-1} E^γ_{k,ρ,β}(ω t^{ρ/k})`, i.e. `k · ε(t)`.
pub fn scaled_kernel(t: f64, k: f64, rho: f64, beta: f64, gamma_: f64, omega: f64) -> f64 {
    t.powf(beta / k - 1.0) * ml_series(omega * t.powf(rho / k), k, rho, beta, gamma_, 400)
}

pub fn rel(got: f64, expect: f64) -> f64 {
    if expect == 0.0 {
        got.abs()
    } else {
        (got - expect).abs() / expect.abs()
    }
}

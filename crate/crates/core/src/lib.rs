//! k-Prabhakar fractional calculus in double precision.
//!
//! The crate covers four layers, each usable on its own:
//!
//! - [`kspecial`]: the k-Gamma function, the Pochhammer k-symbol and the
//!   k-Mittag-Leffler series `E^γ_{k,ρ,β}(z)`.
//! - [`operators`]: the k-Prabhakar kernel, the left-sided k-Prabhakar
//!   integral and derivative, evaluated with graded-mesh quadrature.
//! - [`green`] and [`inequality`]: the Green's function of the nonlocal
//!   boundary value problem
//!   `D y + q y = 0`, `y(a) = y'(a) = 0`, `y'(b) = η y(ξ)`,
//!   and the Hartman-Wintner-type necessary condition used as a
//!   nonexistence certificate.
//! - [`solver`]: a Nyström discretisation of the equivalent integral
//!   equation and the critical constant potential.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line tool live in the companion `kprabhakar-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
mod math;

pub mod fdiff;
pub mod green;
pub mod inequality;
pub mod kspecial;
pub mod linalg;
pub mod operators;
pub mod potential;
pub mod quadrature;
pub mod solver;

pub use error::{Error, Result};
pub use green::{amplification_factor, denominator, green, BVPConfig, ConfigWarning, GreenFunction};
pub use inequality::{
    cabrera_rhs, classical_bounds, hw_check, hw_check_with, hw_lhs, ClassicalBounds,
    InequalityReport, Verdict,
};
pub use kspecial::{k_gamma, log_k_gamma, ml_k, pochhammer_k, MLParams, SeriesIndex, SeriesResult};
pub use operators::{
    kernel_eval, kernel_jet, prabhakar_derivative, prabhakar_integral, GridFunction,
    PrabhakarKernel, RealFn,
};
pub use potential::PotentialSpec;
pub use quadrature::{QuadratureRule, Scheme};
pub use solver::{
    build_operator, critical_lambda, has_nontrivial_solution, CriticalConstant, NontrivialCheck,
    NystromOperator, SpectralResult,
};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::operators::{GridFunction, RealFn};

/// The coefficient `q(t)` of the boundary value problem.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    Constant(f64),
    /// `q(t) = Σ c_i t^i`.
    Polynomial(Vec<f64>),
    /// Linearly interpolated samples.
    Samples(GridFunction),
}

impl PotentialSpec {
    /// Checks that `q` is finite and evaluable on `[a, b]`.
    pub fn validate_on(&self, a: f64, b: f64) -> Result<()> {
        match self {
            PotentialSpec::Constant(c) if !c.is_finite() => {
                Err(Error::InvalidParameter { name: "q", reason: "constant must be finite" })
            }
            PotentialSpec::Polynomial(cs) if cs.iter().any(|c| !c.is_finite()) => {
                Err(Error::InvalidParameter { name: "q", reason: "coefficients must be finite" })
            }
            PotentialSpec::Samples(g) if !g.covers(a, b) => {
                Err(Error::InvalidGrid("samples of q must cover [a, b]"))
            }
            _ => Ok(()),
        }
    }

    /// `c · q`.
    pub fn scaled(&self, c: f64) -> PotentialSpec {
        match self {
            PotentialSpec::Constant(v) => PotentialSpec::Constant(c * v),
            PotentialSpec::Polynomial(cs) => PotentialSpec::Polynomial(cs.iter().map(|v| c * v).collect()),
            PotentialSpec::Samples(g) => {
                let values = g.values().iter().map(|v| c * v).collect();
                PotentialSpec::Samples(
                    GridFunction::new(g.nodes().to_vec(), values).expect("scaling keeps the grid valid"),
                )
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PotentialSpec::Constant(c) => *c == 0.0,
            PotentialSpec::Polynomial(cs) => cs.iter().all(|c| *c == 0.0),
            PotentialSpec::Samples(g) => g.values().iter().all(|v| *v == 0.0),
        }
    }
}

impl RealFn for PotentialSpec {
    fn eval(&self, t: f64) -> f64 {
        match self {
            PotentialSpec::Constant(c) => *c,
            PotentialSpec::Polynomial(cs) => cs.iter().rev().fold(0.0, |acc, c| acc * t + c),
            PotentialSpec::Samples(g) => g.eval(t),
        }
    }
}

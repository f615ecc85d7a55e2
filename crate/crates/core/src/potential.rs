//! Potentials q(x) on [0, 1]: built-in q1/q2/q3 and user piecewise polynomials.

use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};

/// Piecewise polynomial: on [breaks[k], breaks[k+1]] the value is sum_j coeffs[k][j] x^j.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePoly {
    pub breaks: Vec<f64>,
    pub coeffs: Vec<Vec<f64>>,
}

impl PiecewisePoly {
    pub fn validate(&self) -> Result<()> {
        let b = &self.breaks;
        if b.len() < 2 || b[0] != 0.0 || *b.last().unwrap() != 1.0 {
            return invalid("piecewise polynomial breaks must start at 0 and end at 1");
        }
        if b.windows(2).any(|w| !(w[1] > w[0])) {
            return invalid("piecewise polynomial breaks must be strictly increasing");
        }
        if self.coeffs.len() != b.len() - 1 {
            return invalid("need one coefficient list per piece");
        }
        if self.coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return invalid("potential coefficients must be finite (unbounded potential)");
        }
        Ok(())
    }

    fn piece(&self, x: f64) -> usize {
        let k = self.breaks.partition_point(|&b| b <= x);
        k.clamp(1, self.coeffs.len()) - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs[self.piece(x)].iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Potential term of the eigenproblem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Potential {
    /// q1 = 0
    Zero,
    /// q2 = 20 x^3 (1 - x) e^{-x}
    Smooth20x3,
    /// q3, piecewise linear/constant with jumps at 1/5, 2/5, 3/5, 4/5
    StepQ3,
    PiecewisePoly(PiecewisePoly),
}

impl Potential {
    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "q1" | "zero" => Ok(Potential::Zero),
            "q2" | "smooth" => Ok(Potential::Smooth20x3),
            "q3" | "step" => Ok(Potential::StepQ3),
            other => invalid(format!("unknown potential '{other}' (expected q1, q2, q3 or a JSON file)")),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: PiecewisePoly =
            serde_json::from_str(text).map_err(|e| crate::FslpError::InvalidInput(format!("potential file: {e}")))?;
        p.validate()?;
        Ok(Potential::PiecewisePoly(p))
    }

    pub fn id(&self) -> String {
        match self {
            Potential::Zero => "q1".into(),
            Potential::Smooth20x3 => "q2".into(),
            Potential::StepQ3 => "q3".into(),
            Potential::PiecewisePoly(p) => format!("pp{}", p.coeffs.len()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Potential::Zero)
    }

    /// Interior points where q or its derivatives jump.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Potential::StepQ3 => vec![0.2, 0.4, 0.6, 0.8],
            Potential::PiecewisePoly(p) => p.breaks[1..p.breaks.len() - 1].to_vec(),
            _ => Vec::new(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Potential::Zero => 0.0,
            Potential::Smooth20x3 => 20.0 * x * x * x * (1.0 - x) * (-x).exp(),
            Potential::StepQ3 => {
                if x <= 0.2 {
                    -2.0 * x
                } else if x <= 0.4 {
                    -0.8 + 2.0 * x
                } else if x <= 0.6 {
                    0.0
                } else if x <= 0.8 {
                    1.0
                } else {
                    0.0
                }
            }
            Potential::PiecewisePoly(p) => p.eval(x),
        }
    }
}

//! Named and custom target gates.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::unitary::Unitary2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateName {
    I,
    X,
    H,
    T,
    Custom,
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateName::I => "I",
            GateName::X => "X",
            GateName::H => "H",
            GateName::T => "T",
            GateName::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// A single-qubit gate to approximate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateTarget {
    pub name: GateName,
    pub matrix: Unitary2,
}

impl GateTarget {
    pub fn identity() -> Self {
        Self {
            name: GateName::I,
            matrix: Unitary2::identity(),
        }
    }

    pub fn x() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self {
            name: GateName::X,
            matrix: Unitary2::new(z, o, o, z),
        }
    }

    pub fn h() -> Self {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self {
            name: GateName::H,
            matrix: Unitary2::new(r, r, r, -r),
        }
    }

    pub fn t() -> Self {
        Self {
            name: GateName::T,
            matrix: Unitary2::diag(
                Complex64::new(1.0, 0.0),
                Complex64::from_polar(1.0, PI / 4.0),
            ),
        }
    }

    /// Wraps an arbitrary matrix; used for the intermediate targets of the recursion.
    pub fn custom(matrix: Unitary2) -> Self {
        Self {
            name: GateName::Custom,
            matrix,
        }
    }

    /// Validated custom gate from `[re00, im00, re01, im01, re10, im10, re11, im11]`.
    pub fn custom_from_reals(r: [f64; 8]) -> Result<Self, ParseError> {
        Unitary2::checked(r)
            .map(Self::custom)
            .ok_or(ParseError::NotUnitary)
    }

    /// Parses `I`, `X`, `H`, `T` (case-insensitive, `identity` also accepted) or
    /// eight comma-separated reals.
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "identity" => return Ok(Self::identity()),
            "x" => return Ok(Self::x()),
            "h" => return Ok(Self::h()),
            "t" => return Ok(Self::t()),
            _ => {}
        }
        let nums: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ParseError::UnknownGate(s.to_string()))?;
        let arr: [f64; 8] = nums
            .try_into()
            .map_err(|_| ParseError::UnknownGate(s.to_string()))?;
        Self::custom_from_reals(arr)
    }

    /// Label used in reports; custom gates print their eight reals.
    pub fn label(&self) -> String {
        match self.name {
            GateName::Custom => self
                .matrix
                .to_reals()
                .iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(","),
            name => name.to_string(),
        }
    }
}

/// Looks up X, H or T (and I).
pub fn standard_gate(name: &str) -> Result<GateTarget, ParseError> {
    match name {
        "I" => Ok(GateTarget::identity()),
        "X" => Ok(GateTarget::x()),
        "H" => Ok(GateTarget::h()),
        "T" => Ok(GateTarget::t()),
        other => Err(ParseError::UnknownGate(other.to_string())),
    }
}

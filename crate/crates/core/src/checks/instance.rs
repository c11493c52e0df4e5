use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::MapSpec;
use crate::matrix::SquareMatrix;

type Matrix = SquareMatrix<f64>;

/// Scalar function for the inner-product inequality with derivative bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Power { exponent: f64 },
    Exp,
    Log,
}

impl FunctionSpec {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            FunctionSpec::Power { exponent } => t.powf(exponent),
            FunctionSpec::Exp => t.exp(),
            FunctionSpec::Log => t.ln(),
        }
    }

    /// `(inf f′, sup f′)` on `[lo, hi] ⊂ (0, ∞)`; every supported `f′` is monotone there.
    pub fn derivative_bounds(self, lo: f64, hi: f64) -> (f64, f64) {
        let (a, b) = match self {
            FunctionSpec::Power { exponent: q } => (q * lo.powf(q - 1.0), q * hi.powf(q - 1.0)),
            FunctionSpec::Exp => (lo.exp(), hi.exp()),
            FunctionSpec::Log => (lo.recip(), hi.recip()),
        };
        (a.min(b), a.max(b))
    }
}

/// A problem instance, as read from JSON or produced by a generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(rename = "A")]
    pub a: Matrix,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Matrix>,
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub big_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<FunctionSpec>,
}

impl InstanceSpec {
    pub fn new(a: Matrix, p: f64) -> Self {
        Self { a, b: None, p, map: None, m: None, big_m: None, x: None, f: None }
    }

    pub fn pair(a: Matrix, b: Matrix, p: f64) -> Self {
        Self { b: Some(b), ..Self::new(a, p) }
    }

    pub fn with_map(mut self, map: MapSpec) -> Self {
        self.map = Some(map);
        self
    }

    pub fn with_bounds(mut self, m: f64, big_m: f64) -> Self {
        self.m = Some(m);
        self.big_m = Some(big_m);
        self
    }

    pub fn with_vector(mut self, x: Vec<f64>) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_function(mut self, f: FunctionSpec) -> Self {
        self.f = Some(f);
        self
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `B`, checked against the dimension of `A`.
    pub fn b(&self) -> Result<&Matrix> {
        let b = self.b.as_ref().ok_or(Error::MissingField("B"))?;
        self.a.check_same_dim(b)?;
        Ok(b)
    }

    /// The unit vector `x`, checked for length and normalization.
    pub fn unit_vector(&self) -> Result<&[f64]> {
        let x = self.x.as_deref().ok_or(Error::MissingField("x"))?;
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.len() });
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= 1e-10) {
            return Err(Error::UnnormalizedVector { norm });
        }
        Ok(x)
    }

    /// The map, defaulting to the identity on `dim × dim` matrices.
    pub fn map_or_identity(&self) -> MapSpec {
        self.map.clone().unwrap_or_else(|| MapSpec::identity(self.dim()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }
}

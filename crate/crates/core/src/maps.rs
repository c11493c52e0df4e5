//! Unital positive linear maps `Φ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::min_eigenvalue;
use crate::matrix::{RectMatrix, SquareMatrix};
use crate::scalar::Real;

const ISOMETRY_TOL: f64 = 1e-10;
const WEIGHT_TOL: f64 = 1e-12;

/// A unital positive linear map. Pinching blocks are 0-based index sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    /// `X ↦ Tr[X]/n` as a 1×1 matrix.
    NormalizedTrace,
    /// `X ↦ VᵀXV` with `VᵀV = I_k`.
    Compression { isometry: RectMatrix<f64> },
    /// Keeps the diagonal blocks of a partition of the indices, zeroes the rest.
    Pinching { blocks: Vec<Vec<usize>> },
    /// `X ↦ Σ wᵢ·UᵢᵀXUᵢ`.
    MixedUnitary { weights: Vec<f64>, unitaries: Vec<SquareMatrix<f64>> },
}

impl MapSpec {
    /// The identity map on `n × n` matrices, as a single-block pinching.
    pub fn identity(n: usize) -> Self {
        MapSpec::Pinching { blocks: vec![(0..n).collect()] }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MapSpec::NormalizedTrace => "normalized_trace",
            MapSpec::Compression { .. } => "compression",
            MapSpec::Pinching { .. } => "pinching",
            MapSpec::MixedUnitary { .. } => "mixed_unitary",
        }
    }

    /// Checks the structural invariants against input dimension `n` and returns the
    /// output dimension.
    pub fn validate(&self, n: usize) -> Result<usize> {
        match self {
            MapSpec::NormalizedTrace => Ok(1),
            MapSpec::Compression { isometry } => {
                if isometry.rows() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: isometry.rows() });
                }
                let k = isometry.cols();
                if k > n {
                    return Err(Error::InvalidSpec(format!("isometry has {k} columns but only {n} rows")));
                }
                let resid = (&isometry.gram() - &SquareMatrix::identity(k)).frobenius();
                if resid > ISOMETRY_TOL {
                    return Err(Error::InvalidSpec(format!("VᵀV differs from I by {resid:e}")));
                }
                Ok(k)
            }
            MapSpec::Pinching { blocks } => {
                let mut seen = vec![false; n];
                for block in blocks {
                    if block.is_empty() {
                        return Err(Error::InvalidSpec("empty pinching block".into()));
                    }
                    for &i in block {
                        if i >= n {
                            return Err(Error::InvalidSpec(format!("index {i} out of range for dimension {n}")));
                        }
                        if std::mem::replace(&mut seen[i], true) {
                            return Err(Error::InvalidSpec(format!("index {i} appears in two blocks")));
                        }
                    }
                }
                if let Some(i) = seen.iter().position(|s| !s) {
                    return Err(Error::InvalidSpec(format!("index {i} is not covered by any block")));
                }
                Ok(n)
            }
            MapSpec::MixedUnitary { weights, unitaries } => {
                if weights.is_empty() || weights.len() != unitaries.len() {
                    return Err(Error::InvalidSpec(format!(
                        "{} weights for {} unitaries",
                        weights.len(),
                        unitaries.len()
                    )));
                }
                if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
                    return Err(Error::InvalidSpec("weights must be positive".into()));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > WEIGHT_TOL {
                    return Err(Error::InvalidSpec(format!("weights sum to {total}")));
                }
                for u in unitaries {
                    if u.dim() != n {
                        return Err(Error::DimensionMismatch { expected: n, found: u.dim() });
                    }
                    let resid = (&(&u.transpose() * u) - &SquareMatrix::identity(n)).frobenius();
                    if resid > ISOMETRY_TOL {
                        return Err(Error::InvalidSpec(format!("UᵀU differs from I by {resid:e}")));
                    }
                }
                Ok(n)
            }
        }
    }
}

/// `Φ(X)`, symmetrized. Validates the spec against `X` first.
pub fn apply_map<T: Real>(spec: &MapSpec, x: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
    let n = x.dim();
    spec.validate(n)?;
    x.require_symmetric()?;
    let out = match spec {
        MapSpec::NormalizedTrace => SquareMatrix::scalar(1, x.trace() / T::lit(n as f64)),
        MapSpec::Compression { isometry } => {
            let v = RectMatrix::from_rows(&isometry.to_rows().iter().map(|r| lift(r)).collect::<Vec<_>>())?;
            v.congruence(x)
        }
        MapSpec::Pinching { blocks } => {
            let mut label = vec![0usize; n];
            for (b, block) in blocks.iter().enumerate() {
                for &i in block {
                    label[i] = b;
                }
            }
            SquareMatrix::from_fn(n, |i, j| if label[i] == label[j] { x[(i, j)] } else { T::zero() })
        }
        MapSpec::MixedUnitary { weights, unitaries } => {
            let mut acc = SquareMatrix::zeros(n);
            for (&w, u) in weights.iter().zip(unitaries) {
                let u: SquareMatrix<T> = u.cast();
                let term = &(&u.transpose() * x) * &u;
                acc = &acc + &term.scale(T::lit(w));
            }
            acc
        }
    };
    Ok(out.symmetrized())
}

fn lift<T: Real>(row: &[f64]) -> Vec<T> {
    row.iter().map(|&v| T::lit(v)).collect()
}

/// Samples unitality, positivity and linearity of `spec` on `n × n` inputs. Logs the
/// first violating witness at `warn` level and returns `false`.
pub fn verify_map(spec: &MapSpec, n: usize, trials: usize, seed: u64) -> bool {
    match verify_map_inner(spec, n, trials, seed) {
        Ok(None) => true,
        Ok(Some(witness)) => {
            log::warn!("map {} failed verification: {witness}", spec.name());
            false
        }
        Err(e) => {
            log::warn!("map {} rejected: {e}", spec.name());
            false
        }
    }
}

fn verify_map_inner(spec: &MapSpec, n: usize, trials: usize, seed: u64) -> Result<Option<String>> {
    use crate::sampling::Sampler;

    let out_dim = spec.validate(n)?;
    let unit = apply_map(spec, &SquareMatrix::<f64>::identity(n))?;
    let resid = (&unit - &SquareMatrix::identity(out_dim)).max_abs();
    if resid > 1e-10 {
        return Ok(Some(format!("Φ(I) differs from I by {resid:e}")));
    }
    let mut rng = Sampler::new(seed, 0);
    for trial in 0..trials {
        let x = rng.psd(n, 0.0, 10.0);
        let fx = apply_map(spec, &x)?;
        let lo = min_eigenvalue(&fx)?;
        if lo < -1e-9 * x.max_abs().max(1.0) {
            return Ok(Some(format!("trial {trial}: Φ(X) has eigenvalue {lo:e} for X = {x:?}")));
        }
        let y = rng.symmetric(n);
        let (a, b) = (rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        let combined = apply_map(spec, &(&x.scale(a) + &y.scale(b)))?;
        let split = &fx.scale(a) + &apply_map(spec, &y)?.scale(b);
        let lin = (&combined - &split).max_abs();
        if lin > 1e-10 * (1.0 + x.max_abs() + y.max_abs()) {
            return Ok(Some(format!("trial {trial}: linearity residual {lin:e}")));
        }
    }
    Ok(None)
}

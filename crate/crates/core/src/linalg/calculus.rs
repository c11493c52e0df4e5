//! Functional calculus on symmetric matrices: real powers and the `A^{1/2}·X·A^{1/2}` congruence.

use crate::error::{Error, Result};
use crate::linalg::eigen::{spectral_decompose, SpectralDecomposition};
use crate::matrix::SquareMatrix;
use crate::scalar::Real;

/// Eigenvalues at or above `-1e-10·max(1, ‖A‖)` count as nonnegative.
pub fn positivity_threshold<T: Real>(d: &SpectralDecomposition<T>) -> T {
    T::tol(1e-10) * T::one().max(d.abs_max())
}

/// Fails with [`Error::NotPositiveDefinite`] unless `λ_min > threshold`.
pub fn require_positive_definite<T: Real>(d: &SpectralDecomposition<T>) -> Result<()> {
    if d.min() > positivity_threshold(d) {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite { min_eig: d.min().as_f64() })
    }
}

/// Fails unless `λ_min ≥ -threshold`.
pub fn require_positive_semidefinite<T: Real>(d: &SpectralDecomposition<T>) -> Result<()> {
    if d.min() >= -positivity_threshold(d) {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite { min_eig: d.min().as_f64() })
    }
}

/// `Aᵖ` from an existing decomposition.
///
/// Integer `p ≥ 0` accepts any symmetric input. Fractional `p > 0` accepts positive
/// semidefinite input and clamps rounding-level negative eigenvalues to zero. Negative
/// `p` needs positive definite input. `A⁰ = I` for every input.
pub fn power_from<T: Real>(d: &SpectralDecomposition<T>, p: T) -> Result<SquareMatrix<T>> {
    let n = d.dim();
    if p == T::zero() {
        return Ok(SquareMatrix::identity(n));
    }
    if p == T::one() {
        return Ok(d.reconstruct());
    }
    let integer = p.fract() == T::zero() && p > T::zero();
    if integer {
        if let Some(k) = p.to_i32() {
            return Ok(d.map(|l| l.powi(k)));
        }
    }
    if p < T::zero() {
        require_positive_definite(d)?;
    } else {
        require_positive_semidefinite(d)?;
    }
    Ok(d.map(|l| l.max(T::zero()).powf(p)))
}

/// `Aᵖ` for symmetric `A`.
pub fn power<T: Real>(a: &SquareMatrix<T>, p: T) -> Result<SquareMatrix<T>> {
    if p == T::one() {
        a.require_symmetric()?;
        return Ok(a.clone());
    }
    power_from(&spectral_decompose(a)?, p)
}

/// `A^{1/2}` and `A^{-1/2}` of a positive definite matrix, sharing one decomposition.
#[derive(Clone, Debug)]
pub struct SqrtPair<T> {
    pub sqrt: SquareMatrix<T>,
    pub inv_sqrt: SquareMatrix<T>,
    pub spectrum: SpectralDecomposition<T>,
}

impl<T: Real> SqrtPair<T> {
    pub fn new(a: &SquareMatrix<T>) -> Result<Self> {
        let spectrum = spectral_decompose(a)?;
        require_positive_definite(&spectrum)?;
        Ok(Self {
            sqrt: spectrum.map(|l| l.sqrt()),
            inv_sqrt: spectrum.map(|l| l.sqrt().recip()),
            spectrum,
        })
    }

    /// `A^{1/2}·X·A^{1/2}`.
    pub fn conjugate(&self, x: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
        self.sqrt.check_same_dim(x)?;
        Ok((&(&self.sqrt * x) * &self.sqrt).symmetrized())
    }

    /// `A^{-1/2}·X·A^{-1/2}`.
    pub fn whiten(&self, x: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
        self.inv_sqrt.check_same_dim(x)?;
        Ok((&(&self.inv_sqrt * x) * &self.inv_sqrt).symmetrized())
    }
}

/// `A^{1/2}·X·A^{1/2}` for positive definite `A` and symmetric `X`.
pub fn conjugate_by_sqrt<T: Real>(a: &SquareMatrix<T>, x: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
    a.check_same_dim(x)?;
    x.require_symmetric()?;
    SqrtPair::new(a)?.conjugate(x)
}

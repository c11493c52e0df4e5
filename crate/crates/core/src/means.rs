//! Weighted operator means `A ♮_p B` and the Tsallis relative operator entropy `T_p(A|B)`.

use crate::error::{Error, Result};
use crate::linalg::{power_from, require_positive_definite, spectral_decompose, SqrtPair};
use crate::matrix::SquareMatrix;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct MeanResult<T> {
    pub value: SquareMatrix<T>,
    pub p: T,
    /// `(λ_min, λ_max)` of `A^{-1/2}·B·A^{-1/2}`.
    pub inner_spectrum: (T, T),
}

/// `A^{1/2}·(A^{-1/2}·B·A^{-1/2})^p·A^{1/2}` for positive definite `A`, `B`.
///
/// `p = 0` returns `A` and `p = 1` returns `B` verbatim.
pub fn weighted_mean<T: Real>(a: &SquareMatrix<T>, b: &SquareMatrix<T>, p: T) -> Result<MeanResult<T>> {
    a.check_same_dim(b)?;
    b.require_symmetric()?;
    let root = SqrtPair::new(a)?;
    let inner = spectral_decompose(&root.whiten(b)?)?;
    require_positive_definite(&inner)?;
    let inner_spectrum = (inner.min(), inner.max());
    let value = if p == T::zero() {
        a.clone()
    } else if p == T::one() {
        b.clone()
    } else {
        root.conjugate(&power_from(&inner, p)?)?
    };
    Ok(MeanResult { value, p, inner_spectrum })
}

/// `T_p(A|B) = (A ♮_p B − A)/p`, `p ≠ 0`.
pub fn tsallis_entropy<T: Real>(a: &SquareMatrix<T>, b: &SquareMatrix<T>, p: T) -> Result<SquareMatrix<T>> {
    if p == T::zero() {
        return Err(Error::ZeroParameter);
    }
    let mean = weighted_mean(a, b, p)?;
    if p == T::one() {
        return Ok(b - a);
    }
    Ok((&mean.value - a).scale(p.recip()))
}

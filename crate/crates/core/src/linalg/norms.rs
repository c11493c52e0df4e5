//! Schatten-class norms from the singular values of a square matrix.

use crate::error::Result;
use crate::linalg::eigen::symmetric_eigenvalues;
use crate::matrix::SquareMatrix;
use crate::scalar::Real;

/// Singular values, ascending, as square roots of the eigenvalues of `AᵀA`.
pub fn singular_values<T: Real>(a: &SquareMatrix<T>) -> Result<Vec<T>> {
    let gram = (&a.transpose() * a).symmetrized();
    Ok(symmetric_eigenvalues(&gram)?.into_iter().map(|l| l.max(T::zero()).sqrt()).collect())
}

/// `(‖A‖, ‖A‖₂, ‖A‖₁)`: operator, Hilbert–Schmidt and trace norms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormTriple<T> {
    pub op: T,
    pub hs: T,
    pub tr: T,
}

pub fn norm_triple<T: Real>(a: &SquareMatrix<T>) -> Result<NormTriple<T>> {
    let gram = (&a.transpose() * a).symmetrized();
    let ev: Vec<T> = symmetric_eigenvalues(&gram)?.into_iter().map(|l| l.max(T::zero())).collect();
    Ok(NormTriple {
        op: ev[ev.len() - 1].sqrt(),
        hs: ev.iter().copied().sum::<T>().sqrt(),
        tr: ev.iter().map(|l| l.sqrt()).sum(),
    })
}

pub fn norm_op<T: Real>(a: &SquareMatrix<T>) -> Result<T> {
    Ok(norm_triple(a)?.op)
}

pub fn norm_hs<T: Real>(a: &SquareMatrix<T>) -> Result<T> {
    Ok(norm_triple(a)?.hs)
}

pub fn norm_tr<T: Real>(a: &SquareMatrix<T>) -> Result<T> {
    Ok(norm_triple(a)?.tr)
}

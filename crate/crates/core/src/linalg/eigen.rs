//! Cyclic Jacobi eigensolver for real symmetric matrices.
//!
//! Each sweep visits every off-diagonal pair `(p, q)` once and applies the plane rotation
//! that annihilates `a_pq`. The off-diagonal mass decreases quadratically once the
//! diagonal has separated, so a handful of sweeps reach machine precision at desk scale.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Real;

/// Sweep budget before giving up with [`Error::NoConvergence`].
pub const MAX_SWEEPS: usize = 64;

/// `A = Q·diag(λ)·Qᵀ` with `λ` ascending and `Q` orthogonal (eigenvectors in columns).
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: SquareMatrix<T>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> T {
        self.eigenvalues[self.dim() - 1]
    }

    /// `max |λᵢ|`, the operator norm of the decomposed matrix.
    pub fn abs_max(&self) -> T {
        self.min().abs().max(self.max().abs())
    }

    /// `Q·diag(f(λ))·Qᵀ`, symmetrized.
    pub fn map(&self, f: impl Fn(T) -> T) -> SquareMatrix<T> {
        let n = self.dim();
        let q = &self.eigenvectors;
        let fl: Vec<T> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let s: T = (0..n).map(|k| q[(i, k)] * fl[k] * q[(j, k)]).sum();
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> SquareMatrix<T> {
        self.map(|l| l)
    }
}

/// Full eigendecomposition of a symmetric matrix.
pub fn spectral_decompose<T: Real>(a: &SquareMatrix<T>) -> Result<SpectralDecomposition<T>> {
    a.require_symmetric()?;
    let (values, vectors) = jacobi(a, true)?;
    let vectors = vectors.expect("vectors requested");
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&k| values[k]).collect();
    let eigenvectors = SquareMatrix::from_fn(n, |i, j| vectors[(i, order[j])]);
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

/// Eigenvalues only, ascending. Skips accumulating rotations.
pub fn symmetric_eigenvalues<T: Real>(a: &SquareMatrix<T>) -> Result<Vec<T>> {
    a.require_symmetric()?;
    let (mut values, _) = jacobi(a, false)?;
    values.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(values)
}

pub fn min_eigenvalue<T: Real>(a: &SquareMatrix<T>) -> Result<T> {
    Ok(symmetric_eigenvalues(a)?[0])
}

fn jacobi<T: Real>(a: &SquareMatrix<T>, want_vectors: bool) -> Result<(Vec<T>, Option<SquareMatrix<T>>)> {
    if !a.is_finite() {
        return Err(Error::NonFinite { row: 0, col: 0 });
    }
    let n = a.dim();
    // work on the exactly symmetric part
    let mut w = a.symmetrized();
    let mut v = want_vectors.then(|| SquareMatrix::identity(n));
    let scale = w.frobenius();
    let target = T::epsilon() * scale;

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&w);
        if off <= target || off == T::zero() {
            return Ok(((0..n).map(|i| w[(i, i)]).collect(), v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let tau = (w[(q, q)] - w[(p, p)]) / (T::lit(2.0) * apq);
                let t = tau.signum() / (tau.abs() + T::one().hypot(tau));
                let c = T::one() / T::one().hypot(t);
                let s = t * c;
                rotate(&mut w, v.as_mut(), p, q, c, s);
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// `W ← JᵀWJ`, `V ← VJ` for the rotation `J` acting on the `(p, q)` plane.
fn rotate<T: Real>(w: &mut SquareMatrix<T>, v: Option<&mut SquareMatrix<T>>, p: usize, q: usize, c: T, s: T) {
    let n = w.dim();
    for k in 0..n {
        let (wkp, wkq) = (w[(k, p)], w[(k, q)]);
        w[(k, p)] = c * wkp - s * wkq;
        w[(k, q)] = s * wkp + c * wkq;
    }
    for k in 0..n {
        let (wpk, wqk) = (w[(p, k)], w[(q, k)]);
        w[(p, k)] = c * wpk - s * wqk;
        w[(q, k)] = s * wpk + c * wqk;
    }
    w[(p, q)] = T::zero();
    w[(q, p)] = T::zero();
    if let Some(v) = v {
        for k in 0..n {
            let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
            v[(k, p)] = c * vkp - s * vkq;
            v[(k, q)] = s * vkp + c * vkq;
        }
    }
}

fn off_diagonal_norm<T: Real>(w: &SquareMatrix<T>) -> T {
    let n = w.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            s = s + w[(i, j)] * w[(i, j)];
        }
    }
    (s + s).sqrt()
}

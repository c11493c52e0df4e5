use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::eigen::symmetric_eigenvalues;
use crate::matrix::SquareMatrix;
use crate::scalar::Real;

/// Default relative tolerance for Loewner comparisons.
pub const DEFAULT_TOL_REL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Relation {
    /// `L ≤ R`
    Le,
    /// `L ≥ R`
    Ge,
    Eq,
    Incomparable,
}

/// Outcome of comparing `L` against `R` in the Loewner order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoewnerVerdict<T> {
    pub relation: Relation,
    /// `λ_min(R − L)`.
    pub gap_min_eig: T,
    /// Largest eigenvalue of `R − L`; `L ≥ R` iff this is `≤ tol`.
    pub gap_max_eig: T,
    pub tol_used: T,
}

impl<T: Real> LoewnerVerdict<T> {
    /// `L ≤ R` within tolerance.
    pub fn le(&self) -> bool {
        matches!(self.relation, Relation::Le | Relation::Eq)
    }

    pub fn ge(&self) -> bool {
        matches!(self.relation, Relation::Ge | Relation::Eq)
    }
}

/// Compares symmetric `L` and `R`. The absolute tolerance is `tol_rel·max(1, ‖L‖, ‖R‖)`
/// with `‖·‖` the spectral norm.
pub fn loewner_compare<T: Real>(l: &SquareMatrix<T>, r: &SquareMatrix<T>, tol_rel: T) -> Result<LoewnerVerdict<T>> {
    l.check_same_dim(r)?;
    let ln = symmetric_eigenvalues(l)?;
    let rn = symmetric_eigenvalues(r)?;
    let norm = |ev: &[T]| ev[0].abs().max(ev[ev.len() - 1].abs());
    let tol = tol_rel * T::one().max(norm(&ln)).max(norm(&rn));
    let gap = symmetric_eigenvalues(&(r - l).symmetrized())?;
    let (lo, hi) = (gap[0], gap[gap.len() - 1]);
    let le = lo >= -tol;
    let ge = hi <= tol;
    let relation = match (le, ge) {
        (true, true) => Relation::Eq,
        (true, false) => Relation::Le,
        (false, true) => Relation::Ge,
        (false, false) => Relation::Incomparable,
    };
    Ok(LoewnerVerdict { relation, gap_min_eig: lo, gap_max_eig: hi, tol_used: tol })
}

//! The inequality registry. Each check verifies its hypotheses, evaluates both sides and
//! returns a [`CheckReport`]. A failed hypothesis never yields `FAILS`.

/// Returns a `HYPOTHESIS_VIOLATED` report from the enclosing check when `$note` is `Some`.
macro_rules! require {
    ($report:ident, $note:expr) => {
        if let Some(note) = $note {
            return Ok($report.violated(note));
        }
    };
}

mod inner;
mod instance;
mod norm;
mod operator;
mod power;
mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use inner::{check_holder_mccarthy, check_mond_pecaric};
pub use instance::{FunctionSpec, InstanceSpec};
pub use norm::{check_norm_chain, check_norm_refinement, check_power_norm, check_radius_chain};
pub use operator::{
    check_ando_converse, check_density_trace, check_furuta_bounds, check_info_monotonicity,
    check_power_corollary, check_reverse_monotonicity, check_seo_bound,
};
pub use power::{check_lh_extension, check_lowner_heinz, check_mn2012, check_norm_power_lemma, lh_extension_difference};
pub use report::{CheckReport, Comparison, Params, Verdict};

use crate::error::{Error, Result};
use crate::linalg::{spectral_decompose, SqrtPair};
use crate::matrix::SquareMatrix;

type Matrix = SquareMatrix<f64>;

/// Relative slack on hypotheses such as `1 ≤ A^{-1/2}BA^{-1/2}` or `A ≤ B`.
pub const HYPOTHESIS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    InfoMonotonicity,
    ReverseMonotonicity,
    AndoConverse,
    DensityTrace,
    FurutaBounds,
    SeoBound,
    PowerCorollary,
    LownerHeinz,
    NormPowerLemma,
    LhExtension,
    Mn2012,
    MondPecaric,
    HolderMccarthy,
    NormChain,
    RadiusChain,
    PowerNorm,
    NormRefinement,
}

impl CheckId {
    pub const ALL: [CheckId; 17] = [
        CheckId::InfoMonotonicity,
        CheckId::ReverseMonotonicity,
        CheckId::AndoConverse,
        CheckId::DensityTrace,
        CheckId::FurutaBounds,
        CheckId::SeoBound,
        CheckId::PowerCorollary,
        CheckId::LownerHeinz,
        CheckId::NormPowerLemma,
        CheckId::LhExtension,
        CheckId::Mn2012,
        CheckId::MondPecaric,
        CheckId::HolderMccarthy,
        CheckId::NormChain,
        CheckId::RadiusChain,
        CheckId::PowerNorm,
        CheckId::NormRefinement,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::InfoMonotonicity => "info_monotonicity",
            CheckId::ReverseMonotonicity => "reverse_monotonicity",
            CheckId::AndoConverse => "ando_converse",
            CheckId::DensityTrace => "density_trace",
            CheckId::FurutaBounds => "furuta_bounds",
            CheckId::SeoBound => "seo_bound",
            CheckId::PowerCorollary => "power_corollary",
            CheckId::LownerHeinz => "lowner_heinz",
            CheckId::NormPowerLemma => "norm_power_lemma",
            CheckId::LhExtension => "lh_extension",
            CheckId::Mn2012 => "mn2012",
            CheckId::MondPecaric => "mond_pecaric",
            CheckId::HolderMccarthy => "holder_mccarthy",
            CheckId::NormChain => "norm_chain",
            CheckId::RadiusChain => "radius_chain",
            CheckId::PowerNorm => "power_norm",
            CheckId::NormRefinement => "norm_refinement",
        }
    }

    /// The inequality being checked, in plain notation.
    pub fn statement(self) -> &'static str {
        match self {
            CheckId::InfoMonotonicity => "Φ(T_p(A|B)) ≤ T_p(Φ(A)|Φ(B)) for -1 ≤ p ≤ 1, reversed for 1 ≤ p ≤ 2",
            CheckId::ReverseMonotonicity => {
                "T_p(Φ(A)|Φ(B)) ≤ Φ(T_p(A|B)) + (m^(p-1) - M^(p-1))Φ(B-A) for -1 ≤ p ≤ 1; \
                 Φ(T_p(A|B)) ≤ T_p(Φ(A)|Φ(B)) + (M^(p-1) - m^(p-1))Φ(B-A) for 1 ≤ p ≤ 2; \
                 needs m ≤ 1 ≤ A^(-1/2)BA^(-1/2) ≤ M"
            }
            CheckId::AndoConverse => {
                "Φ(A)#_pΦ(B) ≤ Φ(A#_pB) + p(m^(p-1) - M^(p-1))Φ(B-A) for 0 ≤ p ≤ 1, ≥ for -1 ≤ p ≤ 0; \
                 Φ(A♮_pB) ≤ Φ(A)♮_pΦ(B) + p(M^(p-1) - m^(p-1))Φ(B-A) for 1 ≤ p ≤ 2"
            }
            CheckId::DensityTrace => {
                "density A, B with 1 ≤ A^(-1/2)BA^(-1/2): Tr[A#_pB] ≥ 1 for 0 ≤ p ≤ 1, \
                 Tr[A♮_pB] ≤ 1 for -1 ≤ p ≤ 0 or 1 ≤ p ≤ 2"
            }
            CheckId::FurutaBounds => {
                "T_p(Φ(A)|Φ(B)) ≤ ((1-K(p))/p)Φ(A)♮_pΦ(B) + Φ(T_p(A|B)) and ≤ F(p)Φ(A) + Φ(T_p(A|B)), 0 < p ≤ 1"
            }
            CheckId::SeoBound => "Φ(A)#_pΦ(B) - Φ(A#_pB) ≤ -C(m,M,p)Φ(A) for mA ≤ B ≤ MA, 0 < p < 1",
            CheckId::PowerCorollary => {
                "Φ(A)^p ≤ Φ(A^p) + p(m^(p-1) - M^(p-1))(Φ(A) - I) for 0 ≤ p ≤ 1, ≥ for -1 ≤ p ≤ 0; \
                 Φ(A^p) ≤ Φ(A)^p + p(M^(p-1) - m^(p-1))(Φ(A) - I) for 1 ≤ p ≤ 2"
            }
            CheckId::LownerHeinz => "A ≤ B ⇒ A^p ≤ B^p for 0 ≤ p ≤ 1 (evaluated for any p ≥ 0)",
            CheckId::NormPowerLemma => {
                "A^p ≤ ‖A‖^p I - p‖A‖^(p-1)(‖A‖I - A) for 0 ≤ p ≤ 1, reversed for p ≥ 1 or p ≤ 0"
            }
            CheckId::LhExtension => {
                "‖A‖I ≤ B ⇒ p‖B‖^(p-1)(B-A) ≤ B^p - A^p for 0 ≤ p ≤ 1, reversed for p ≥ 1 or p ≤ 0"
            }
            CheckId::Mn2012 => {
                "‖A‖I ≤ B, 0 ≤ p ≤ 1: p‖B‖^(p-1)/‖(B-A)^(-1)‖ ≤ B^p - A^p, \
                 ‖B‖^p - (‖B‖ - 1/‖(B-A)^(-1)‖)^p ≤ B^p - A^p, p s^(p-1) ≤ s^p - (s-1)^p"
            }
            CheckId::MondPecaric => {
                "mI ≤ B ≤ A ≤ MI, α ≤ f' ≤ β: α⟨(A-B)x,x⟩ ≤ ⟨f(A)x,x⟩ - f(⟨Bx,x⟩) ≤ β⟨(A-B)x,x⟩"
            }
            CheckId::HolderMccarthy => {
                "⟨A^p x,x⟩ ≤ ⟨Ax,x⟩^p for 0 < p < 1, reversed otherwise, with two-sided reverse bounds \
                 from mI ≤ A ≤ MI"
            }
            CheckId::NormChain => "refinements of ‖A‖ ≤ ‖A‖₂ ≤ ‖A‖₁ for p ≥ 1 or p ≤ 0 and for 0 < p ≤ 1",
            CheckId::RadiusChain => "refinements of r(A) ≤ w(A) ≤ ‖A‖ for p ≥ 1 or p ≤ 0 and for 0 < p ≤ 1",
            CheckId::PowerNorm => "‖A^pB^p‖ ≤ ‖AB‖^p for 0 ≤ p ≤ 1, reversed for p ≥ 1",
            CheckId::NormRefinement => {
                "two-sided bounds on ‖AB‖^p - ‖A^pB^p‖ from mI ≤ A, B ≤ MI, for 0 ≤ p ≤ 1 and p ≥ 1"
            }
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Runs check `id` on `inst` with relative Loewner tolerance `tol_rel`.
pub fn evaluate(id: CheckId, inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    match id {
        CheckId::InfoMonotonicity => check_info_monotonicity(inst, tol_rel),
        CheckId::ReverseMonotonicity => check_reverse_monotonicity(inst, tol_rel),
        CheckId::AndoConverse => check_ando_converse(inst, tol_rel),
        CheckId::DensityTrace => check_density_trace(inst, tol_rel),
        CheckId::FurutaBounds => check_furuta_bounds(inst, tol_rel),
        CheckId::SeoBound => check_seo_bound(inst, tol_rel),
        CheckId::PowerCorollary => check_power_corollary(inst, tol_rel),
        CheckId::LownerHeinz => check_lowner_heinz(inst, tol_rel),
        CheckId::NormPowerLemma => check_norm_power_lemma(inst, tol_rel),
        CheckId::LhExtension => check_lh_extension(inst, tol_rel),
        CheckId::Mn2012 => check_mn2012(inst, tol_rel),
        CheckId::MondPecaric => check_mond_pecaric(inst, tol_rel),
        CheckId::HolderMccarthy => check_holder_mccarthy(inst, tol_rel),
        CheckId::NormChain => check_norm_chain(inst, tol_rel),
        CheckId::RadiusChain => check_radius_chain(inst, tol_rel),
        CheckId::PowerNorm => check_power_norm(inst, tol_rel),
        CheckId::NormRefinement => check_norm_refinement(inst, tol_rel),
    }
}

/// Spectrum of `A^{-1/2}BA^{-1/2}` and the sandwich scalars derived from it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sandwich {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `min(λ_min, 1)`.
    pub m: f64,
    /// `max(λ_max, 1)`.
    #[serde(rename = "M")]
    pub big_m: f64,
    /// `λ_min ≥ 1` within [`HYPOTHESIS_TOL`].
    pub hypothesis_ok: bool,
}

impl Sandwich {
    fn from_spectrum(lambda_min: f64, lambda_max: f64) -> Self {
        Self {
            lambda_min,
            lambda_max,
            m: lambda_min.min(1.0),
            big_m: lambda_max.max(1.0),
            hypothesis_ok: lambda_min >= 1.0 - HYPOTHESIS_TOL,
        }
    }

    /// The `(m, M)` to use: the user's pair when it is a valid outer bound with
    /// `0 < m ≤ 1 ≤ M`, the derived pair when none is given.
    pub fn resolve(&self, user_m: Option<f64>, user_big_m: Option<f64>) -> std::result::Result<(f64, f64), String> {
        let m = user_m.unwrap_or(self.m);
        let big_m = user_big_m.unwrap_or(self.big_m);
        if !(m > 0.0 && m <= 1.0 && big_m >= 1.0 && big_m.is_finite()) {
            return Err(format!("bounds must satisfy 0 < m ≤ 1 ≤ M, got m = {m}, M = {big_m}"));
        }
        check_outer(m, big_m, self.lambda_min, self.lambda_max)?;
        Ok((m, big_m))
    }
}

/// Sandwich scalars for `A^{-1/2}BA^{-1/2}`, `A` and `B` positive definite.
pub fn compute_sandwich(a: &Matrix, b: &Matrix) -> Result<Sandwich> {
    a.check_same_dim(b)?;
    let root = SqrtPair::new(a)?;
    let inner = spectral_decompose(&root.whiten(b)?)?;
    crate::linalg::require_positive_definite(&inner)?;
    Ok(Sandwich::from_spectrum(inner.min(), inner.max()))
}

/// `m ≤ lo` and `M ≥ hi` within [`HYPOTHESIS_TOL`].
fn check_outer(m: f64, big_m: f64, lo: f64, hi: f64) -> std::result::Result<(), String> {
    if m > lo + HYPOTHESIS_TOL * lo.abs().max(1.0) {
        return Err(format!("m = {m} exceeds the smallest eigenvalue {lo}"));
    }
    if big_m < hi - HYPOTHESIS_TOL * hi.abs().max(1.0) {
        return Err(format!("M = {big_m} is below the largest eigenvalue {hi}"));
    }
    Ok(())
}

/// User bounds or the derived `(lo, hi)`, checked to be valid outer bounds with `m > 0`.
fn resolve_outer(
    user_m: Option<f64>,
    user_big_m: Option<f64>,
    lo: f64,
    hi: f64,
) -> std::result::Result<(f64, f64), String> {
    let m = user_m.unwrap_or(lo);
    let big_m = user_big_m.unwrap_or(hi);
    if !(m > 0.0 && big_m >= m && big_m.is_finite()) {
        return Err(format!("bounds must satisfy 0 < m ≤ M, got m = {m}, M = {big_m}"));
    }
    check_outer(m, big_m, lo, hi)?;
    Ok((m, big_m))
}

/// `(λ_min, λ_max)` of a symmetric matrix.
fn extremes(a: &Matrix) -> Result<(f64, f64)> {
    let ev = crate::linalg::symmetric_eigenvalues(a)?;
    Ok((ev[0], ev[ev.len() - 1]))
}

/// `None` when `a` is positive definite, otherwise a hypothesis note.
fn positive_definite(a: &Matrix, name: &str) -> Result<Option<String>> {
    let (lo, hi) = extremes(a)?;
    let threshold = 1e-10 * hi.abs().max(1.0);
    Ok((lo <= threshold).then(|| format!("{name} is not positive definite (min eigenvalue {lo:e})")))
}

/// `None` when `a` is positive semidefinite, otherwise a hypothesis note.
fn positive_semidefinite(a: &Matrix, name: &str) -> Result<Option<String>> {
    let (lo, hi) = extremes(a)?;
    let threshold = 1e-10 * hi.abs().max(1.0);
    Ok((lo < -threshold).then(|| format!("{name} is not positive semidefinite (min eigenvalue {lo:e})")))
}

/// `None` when `L ≤ R` within [`HYPOTHESIS_TOL`].
fn loewner_hypothesis(l: &Matrix, r: &Matrix, what: &str) -> Result<Option<String>> {
    let v = crate::linalg::loewner_compare(l, r, HYPOTHESIS_TOL)?;
    Ok((!v.le()).then(|| format!("{what} fails (min eigenvalue of the difference {:e})", v.gap_min_eig)))
}

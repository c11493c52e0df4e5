//! Power inequalities: Löwner–Heinz, the norm tangent lemma and its two-operator extension.

use super::report::Builder;
use super::{extremes, loewner_hypothesis, positive_definite, positive_semidefinite, CheckId, CheckReport, InstanceSpec};
use crate::constants::mn2012_rhs;
use crate::error::{Error, Result};
use crate::linalg::{norm_op, power};
use crate::matrix::SquareMatrix;

type Matrix = SquareMatrix<f64>;

fn psd_pair(a: &Matrix, b: &Matrix) -> Result<Option<String>> {
    a.require_symmetric()?;
    b.require_symmetric()?;
    Ok(positive_semidefinite(a, "A")?.or(positive_semidefinite(b, "B")?))
}

pub fn check_lowner_heinz(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let b = inst.b()?;
    let mut r = Builder::new(CheckId::LownerHeinz, p, inst.dim(), tol_rel);
    require!(r, psd_pair(a, b)?);
    if !(p >= 0.0) {
        return Ok(r.violated(format!("p = {p} is negative")));
    }
    require!(r, loewner_hypothesis(a, b, "A ≤ B")?);
    let in_range = p <= 1.0;
    r.term("in_theorem_range", if in_range { 1.0 } else { 0.0 });
    if !in_range {
        r.note(format!("p = {p} > 1: the implication is not guaranteed"));
    }
    r.compare("a_power_le_b_power", &power(a, p)?, &power(b, p)?)?;
    Ok(r.finish())
}

pub fn check_norm_power_lemma(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let mut r = Builder::new(CheckId::NormPowerLemma, p, inst.dim(), tol_rel);
    a.require_symmetric()?;
    require!(r, positive_semidefinite(a, "A")?);
    if p < 0.0 {
        require!(r, positive_definite(a, "A")?);
    }
    let norm = extremes(a)?.1;
    if norm <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    r.term("norm", norm);
    // ‖A‖^p·I − p‖A‖^{p−1}(‖A‖·I − A)
    let tangent = (&SquareMatrix::scalar(a.dim(), norm.powf(p))
        - &a.scale(-1.0).add_scalar(norm).scale(p * norm.powf(p - 1.0)))
        .symmetrized();
    let ap = power(a, p)?;
    if (0.0..=1.0).contains(&p) {
        r.compare("power_le_tangent", &ap, &tangent)?;
    }
    if p >= 1.0 || p <= 0.0 {
        r.compare("tangent_le_power", &tangent, &ap)?;
    }
    Ok(r.finish())
}

/// `RHS − LHS` of the two-operator extension at exponent `p` with `‖B‖ = norm_b`: the
/// matrix `B^p − A^p − p‖B‖^{p−1}(B − A)` for `0 ≤ p ≤ 1`, its negative otherwise.
pub fn lh_extension_difference(a: &Matrix, b: &Matrix, p: f64, norm_b: f64) -> Result<Matrix> {
    let linear = (b - a).scale(p * norm_b.powf(p - 1.0));
    let diff = &power(b, p)? - &power(a, p)?;
    Ok(if (0.0..=1.0).contains(&p) { &diff - &linear } else { &linear - &diff })
}

pub fn check_lh_extension(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let b = inst.b()?;
    let mut r = Builder::new(CheckId::LhExtension, p, inst.dim(), tol_rel);
    require!(r, psd_pair(a, b)?);
    if p < 0.0 {
        require!(r, positive_definite(a, "A")?);
    }
    let norm_a = extremes(a)?.1;
    require!(r, loewner_hypothesis(&SquareMatrix::scalar(a.dim(), norm_a), b, "‖A‖I ≤ B")?);
    let norm_b = norm_op(b)?;
    if norm_b <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    r.term("norm_b", norm_b);
    let linear = (b - a).scale(p * norm_b.powf(p - 1.0));
    let diff = &power(b, p)? - &power(a, p)?;
    if (0.0..=1.0).contains(&p) {
        r.compare("linear_le_power_difference", &linear, &diff)?;
    }
    if p >= 1.0 || p <= 0.0 {
        r.compare("power_difference_le_linear", &diff, &linear)?;
    }
    Ok(r.finish())
}

pub fn check_mn2012(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let b = inst.b()?;
    let n = inst.dim();
    let mut r = Builder::new(CheckId::Mn2012, p, n, tol_rel);
    require!(r, psd_pair(a, b)?);
    if !(0.0..=1.0).contains(&p) {
        return Ok(r.violated(format!("p = {p} outside [0, 1]")));
    }
    let norm_a = extremes(a)?.1;
    require!(r, loewner_hypothesis(&SquareMatrix::scalar(n, norm_a), b, "‖A‖I ≤ B")?);
    let norm_b = norm_op(b)?;
    // 1/‖(B−A)^{-1}‖ is the smallest eigenvalue of B − A
    let d = extremes(&(b - a))?.0;
    if d <= 1e-10 * norm_b.max(1.0) {
        return Err(Error::SingularDifference { min_eig: d });
    }
    let s = norm_b / d;
    r.term("s", s);
    r.term("inverse_difference_norm", d.recip());
    let diff = &power(b, p)? - &power(a, p)?;
    let ours = p * norm_b.powf(p - 1.0) * d;
    let theirs = mn2012_rhs(s, p) * d.powf(p);
    r.term("ours", ours);
    r.term("mn2012", theirs);
    r.compare_scalar("ours_nonnegative", 0.0, ours)?;
    r.compare("ours_le_power_difference", &SquareMatrix::scalar(n, ours), &diff)?;
    r.compare("mn2012_le_power_difference", &SquareMatrix::scalar(n, theirs), &diff)?;
    r.compare_scalar("scalar_dominance", p * s.powf(p - 1.0), mn2012_rhs(s, p))?;
    Ok(r.finish())
}

//! Scalar norm and radius chains.

use super::report::Builder;
use super::{extremes, positive_definite, positive_semidefinite, resolve_outer, CheckId, CheckReport, InstanceSpec};
use crate::error::{Error, Result};
use crate::linalg::{norm_op, norm_triple, numerical_radius, power, spectral_radius, DEFAULT_GRID, DEFAULT_REFINE_ITERS};

/// `x^p − y^p` without cancellation when `x ≈ y`.
pub(crate) fn pow_diff(x: f64, y: f64, p: f64) -> f64 {
    if x > 0.0 && y > 0.0 {
        y.powf(p) * (p * (x / y).ln()).exp_m1()
    } else {
        x.powf(p) - y.powf(p)
    }
}

/// Adjacent comparisons `v₀ ≤ v₁ ≤ …` labelled `{prefix}.{i}`.
fn chain(r: &mut Builder, prefix: &str, values: &[f64]) -> Result<()> {
    for (i, w) in values.windows(2).enumerate() {
        r.compare_scalar(&format!("{prefix}.{i}"), w[0], w[1])?;
    }
    Ok(())
}

pub fn check_norm_chain(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let mut r = Builder::new(CheckId::NormChain, p, inst.dim(), tol_rel);
    let t = norm_triple(&inst.a)?;
    if t.tr <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    if p == 0.0 {
        return Ok(r.violated("p = 0 is excluded"));
    }
    let (op, hs, tr) = (t.op, t.hs, t.tr);
    r.term("norm_op", op);
    r.term("norm_hs", hs);
    r.term("norm_tr", tr);
    let scale = p * tr.powf(p - 1.0);
    let refine = |x: f64, y: f64| pow_diff(x, y, p) / scale;
    if p >= 1.0 || p < 0.0 {
        chain(&mut r, "high", &[op, refine(hs, op) + op, hs, refine(tr, hs) + hs, tr])?;
    }
    if p > 0.0 && p <= 1.0 {
        chain(&mut r, "low", &[refine(hs, tr) + tr, hs, refine(hs, op) + op])?;
    }
    Ok(r.finish())
}

pub fn check_radius_chain(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let mut r = Builder::new(CheckId::RadiusChain, p, inst.dim(), tol_rel);
    let norm = norm_op(a)?;
    if norm <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    if p == 0.0 {
        return Ok(r.violated("p = 0 is excluded"));
    }
    let rho = spectral_radius(a)?;
    let w = numerical_radius(a, DEFAULT_GRID, DEFAULT_REFINE_ITERS)?;
    r.term("spectral_radius", rho);
    r.term("numerical_radius", w);
    r.term("norm_op", norm);
    if p < 0.0 && rho <= 0.0 {
        return Ok(r.violated("r(A) = 0 makes r(A)^p undefined for p < 0"));
    }
    let scale = p * norm.powf(p - 1.0);
    let refine = |x: f64, y: f64| pow_diff(x, y, p) / scale;
    if p >= 1.0 || p < 0.0 {
        chain(&mut r, "high", &[rho, refine(w, rho) + rho, w, refine(norm, w) + w, norm])?;
    }
    if p > 0.0 && p <= 1.0 {
        chain(&mut r, "low", &[refine(w, norm) + norm, w, refine(w, rho) + rho])?;
    }
    Ok(r.finish())
}

pub fn check_power_norm(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let b = inst.b()?;
    a.require_symmetric()?;
    b.require_symmetric()?;
    let mut r = Builder::new(CheckId::PowerNorm, p, inst.dim(), tol_rel);
    require!(r, positive_semidefinite(a, "A")?);
    require!(r, positive_semidefinite(b, "B")?);
    if p < 0.0 {
        return Ok(r.violated(format!("p = {p} is negative")));
    }
    let of_powers = norm_op(&(&power(a, p)? * &power(b, p)?))?;
    let power_of = norm_op(&(a * b))?.powf(p);
    r.term("norm_of_powers", of_powers);
    r.term("power_of_norm", power_of);
    if p <= 1.0 {
        r.compare_scalar("low", of_powers, power_of)?;
    }
    if p >= 1.0 {
        r.compare_scalar("high", power_of, of_powers)?;
    }
    Ok(r.finish())
}

pub fn check_norm_refinement(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let b = inst.b()?;
    a.require_symmetric()?;
    b.require_symmetric()?;
    let mut r = Builder::new(CheckId::NormRefinement, p, inst.dim(), tol_rel);
    require!(r, positive_definite(a, "A")?);
    require!(r, positive_definite(b, "B")?);
    if p <= 0.0 {
        return Ok(r.violated(format!("p = {p}: the 1/p-th root needs p > 0")));
    }
    let (la, ha) = extremes(a)?;
    let (lb, hb) = extremes(b)?;
    let (m, big_m) = match resolve_outer(inst.m, inst.big_m, la.min(lb), ha.max(hb)) {
        Ok(v) => v,
        Err(note) => return Ok(r.violated(note)),
    };
    r.bounds(m, big_m);
    let prod = norm_op(&(a * b))?;
    let of_powers = norm_op(&(&power(a, p)? * &power(b, p)?))?;
    let root = of_powers.powf(p.recip());
    r.term("norm_product", prod);
    r.term("norm_of_powers", of_powers);
    let at_big = p * big_m.powf(p - 1.0);
    let at_m = p * m.powf(p - 1.0);
    if p <= 1.0 {
        let mid = pow_diff(prod, root, p);
        r.compare_scalar("low.lower", at_big * (prod - root), mid)?;
        r.compare_scalar("low.upper", mid, at_m * (prod - root))?;
    }
    if p >= 1.0 {
        let mid = pow_diff(root, prod, p);
        r.compare_scalar("high.lower", at_m * (root - prod), mid)?;
        r.compare_scalar("high.upper", mid, at_big * (root - prod))?;
    }
    Ok(r.finish())
}

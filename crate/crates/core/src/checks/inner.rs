//! Inner-product inequalities for a unit vector `x`.

use super::report::Builder;
use super::{
    extremes, loewner_hypothesis, positive_definite, resolve_outer, CheckId, CheckReport, FunctionSpec, InstanceSpec,
};
use crate::error::Result;
use crate::linalg::{power, spectral_decompose};

pub fn check_mond_pecaric(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let b = inst.b()?;
    let x = inst.unit_vector()?;
    a.require_symmetric()?;
    b.require_symmetric()?;
    let mut r = Builder::new(CheckId::MondPecaric, p, inst.dim(), tol_rel);
    require!(r, positive_definite(b, "B")?);
    require!(r, loewner_hypothesis(b, a, "B ≤ A")?);
    let (m, big_m) = match resolve_outer(inst.m, inst.big_m, extremes(b)?.0, extremes(a)?.1) {
        Ok(v) => v,
        Err(note) => return Ok(r.violated(note)),
    };
    r.bounds(m, big_m);
    let f = inst.f.unwrap_or(FunctionSpec::Power { exponent: p });
    let (alpha, beta) = f.derivative_bounds(m, big_m);
    let fa = spectral_decompose(a)?.map(|t| f.eval(t));
    let ax = a.quadratic_form(x);
    let bx = b.quadratic_form(x);
    let spread = ax - bx;
    let mid = fa.quadratic_form(x) - f.eval(bx);
    r.term("alpha", alpha);
    r.term("beta", beta);
    r.term("mid", mid);
    r.term("ax", ax);
    r.term("bx", bx);
    r.compare_scalar("lower", alpha * spread, mid)?;
    r.compare_scalar("upper", mid, beta * spread)?;
    Ok(r.finish())
}

pub fn check_holder_mccarthy(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let x = inst.unit_vector()?;
    a.require_symmetric()?;
    let mut r = Builder::new(CheckId::HolderMccarthy, p, inst.dim(), tol_rel);
    require!(r, positive_definite(a, "A")?);
    if p == 0.0 {
        return Ok(r.violated("p = 0 is excluded"));
    }
    let (lo, hi) = extremes(a)?;
    let (m, big_m) = match resolve_outer(inst.m, inst.big_m, lo, hi) {
        Ok(v) => v,
        Err(note) => return Ok(r.violated(note)),
    };
    r.bounds(m, big_m);
    let ax = a.quadratic_form(x);
    let apx = power(a, p)?.quadratic_form(x);
    let root = apx.powf(p.recip());
    let axp = ax.powf(p);
    r.term("ax", ax);
    r.term("apx", apx);
    let lo_coef = p * big_m.powf(p - 1.0);
    let hi_coef = p * m.powf(p - 1.0);
    if p > 0.0 && p <= 1.0 {
        r.compare_scalar("low.base", apx, axp)?;
        r.compare_scalar("low.lower", lo_coef * (ax - root), axp - apx)?;
        r.compare_scalar("low.upper", axp - apx, hi_coef * (ax - root))?;
    }
    if p >= 1.0 || p < 0.0 {
        r.compare_scalar("high.base", axp, apx)?;
        r.compare_scalar("high.lower", hi_coef * (root - ax), apx - axp)?;
        r.compare_scalar("high.upper", apx - axp, lo_coef * (root - ax))?;
    }
    Ok(r.finish())
}

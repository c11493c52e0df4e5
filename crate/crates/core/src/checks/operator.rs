//! Checks on means and entropies under a unital positive map.

use super::report::Builder;
use super::{compute_sandwich, extremes, positive_definite, resolve_outer, CheckId, CheckReport, InstanceSpec};
use crate::constants::{seo_c, BoundContext};
use crate::error::{Error, Result};
use crate::linalg::power;
use crate::maps::{apply_map, MapSpec};
use crate::matrix::SquareMatrix;
use crate::means::{tsallis_entropy, weighted_mean};

type Matrix = SquareMatrix<f64>;

/// Shared setup for checks on a pair `(A, B)` of positive definite matrices and a map.
struct Setup<'a> {
    a: &'a Matrix,
    b: &'a Matrix,
    phi: MapSpec,
    fa: Matrix,
    fb: Matrix,
}

impl<'a> Setup<'a> {
    fn new(inst: &'a InstanceSpec, r: &mut Builder) -> Result<std::result::Result<Self, String>> {
        let a = &inst.a;
        let b = inst.b()?;
        let phi = inst.map_or_identity();
        phi.validate(inst.dim())?;
        r.map(phi.name());
        for (x, name) in [(a, "A"), (b, "B")] {
            x.require_symmetric()?;
            if let Some(note) = positive_definite(x, name)? {
                return Ok(Err(note));
            }
        }
        let fa = apply_map(&phi, a)?;
        let fb = apply_map(&phi, b)?;
        Ok(Ok(Self { a, b, phi, fa, fb }))
    }

    fn phi(&self, x: &Matrix) -> Result<Matrix> {
        apply_map(&self.phi, x)
    }

    /// `Φ(T_p(A|B))`.
    fn phi_entropy(&self, p: f64) -> Result<Matrix> {
        self.phi(&tsallis_entropy(self.a, self.b, p)?)
    }

    /// `T_p(Φ(A)|Φ(B))`.
    fn entropy_phi(&self, p: f64) -> Result<Matrix> {
        tsallis_entropy(&self.fa, &self.fb, p)
    }

    /// `Φ(A ♮_p B)`.
    fn phi_mean(&self, p: f64) -> Result<Matrix> {
        self.phi(&weighted_mean(self.a, self.b, p)?.value)
    }

    /// `Φ(A) ♮_p Φ(B)`.
    fn mean_phi(&self, p: f64) -> Result<Matrix> {
        Ok(weighted_mean(&self.fa, &self.fb, p)?.value)
    }

    /// `Φ(B − A)`.
    fn phi_difference(&self) -> Result<Matrix> {
        self.phi(&(self.b - self.a))
    }
}

macro_rules! setup {
    ($inst:expr, $r:ident) => {
        match Setup::new($inst, &mut $r)? {
            Ok(s) => s,
            Err(note) => return Ok($r.violated(note)),
        }
    };
}

fn top(x: &Matrix) -> Result<f64> {
    Ok(extremes(x)?.1)
}

fn within(p: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&p)
}

/// Sandwich hypothesis and the `(m, M)` pair in force, recorded on the builder.
fn sandwich_bounds(inst: &InstanceSpec, s: &Setup<'_>, r: &mut Builder) -> Result<std::result::Result<(f64, f64), String>> {
    let sw = compute_sandwich(s.a, s.b)?;
    r.term("lambda_min", sw.lambda_min);
    r.term("lambda_max", sw.lambda_max);
    if !sw.hypothesis_ok {
        return Ok(Err(format!("1 ≤ A^(-1/2)BA^(-1/2) fails: smallest eigenvalue {}", sw.lambda_min)));
    }
    Ok(sw.resolve(inst.m, inst.big_m).inspect(|&(m, big_m)| r.bounds(m, big_m)))
}

pub fn check_info_monotonicity(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    if p == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let mut r = Builder::new(CheckId::InfoMonotonicity, p, inst.dim(), tol_rel);
    let s = setup!(inst, r);
    if !within(p, -1.0, 2.0) {
        return Ok(r.violated(format!("p = {p} outside [-1, 2]")));
    }
    let phi_t = s.phi_entropy(p)?;
    let t_phi = s.entropy_phi(p)?;
    if p <= 1.0 {
        r.compare("phi_entropy_le_entropy_phi", &phi_t, &t_phi)?;
    }
    if p >= 1.0 {
        r.compare("entropy_phi_le_phi_entropy", &t_phi, &phi_t)?;
    }
    Ok(r.finish())
}

pub fn check_reverse_monotonicity(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    if p == 0.0 {
        return Err(Error::ZeroParameter);
    }
    let mut r = Builder::new(CheckId::ReverseMonotonicity, p, inst.dim(), tol_rel);
    let s = setup!(inst, r);
    if !within(p, -1.0, 2.0) {
        return Ok(r.violated(format!("p = {p} outside [-1, 2]")));
    }
    let (m, big_m) = match sandwich_bounds(inst, &s, &mut r)? {
        Ok(v) => v,
        Err(note) => return Ok(r.violated(note)),
    };
    let spread = BoundContext::new(m, big_m, p)?.power_spread();
    let phi_t = s.phi_entropy(p)?;
    let t_phi = s.entropy_phi(p)?;
    let phi_d = s.phi_difference()?;
    if p <= 1.0 {
        let term = phi_d.scale(spread);
        r.term("additive_term", top(&term)?);
        r.compare("entropy_phi_le_phi_entropy_plus_term", &t_phi, &(&phi_t + &term))?;
    }
    if p >= 1.0 {
        let term = phi_d.scale(-spread);
        r.term("additive_term_reverse", top(&term)?);
        r.compare("phi_entropy_le_entropy_phi_plus_term", &phi_t, &(&t_phi + &term))?;
    }
    Ok(r.finish())
}

pub fn check_ando_converse(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let mut r = Builder::new(CheckId::AndoConverse, p, inst.dim(), tol_rel);
    let s = setup!(inst, r);
    if !within(p, -1.0, 2.0) {
        return Ok(r.violated(format!("p = {p} outside [-1, 2]")));
    }
    let (m, big_m) = match sandwich_bounds(inst, &s, &mut r)? {
        Ok(v) => v,
        Err(note) => return Ok(r.violated(note)),
    };
    let spread = BoundContext::new(m, big_m, p)?.power_spread();
    let phi_mean = s.phi_mean(p)?;
    let mean_phi = s.mean_phi(p)?;
    let phi_d = s.phi_difference()?;
    let low_term = phi_d.scale(p * spread);
    if p <= 1.0 {
        r.term("additive_term", top(&low_term)?);
    }
    if within(p, 0.0, 1.0) {
        r.compare("mean_phi_le_phi_mean_plus_term", &mean_phi, &(&phi_mean + &low_term))?;
    }
    if p <= 0.0 {
        r.compare("phi_mean_plus_term_le_mean_phi", &(&phi_mean + &low_term), &mean_phi)?;
    }
    if p >= 1.0 {
        let term = phi_d.scale(-p * spread);
        r.term("additive_term_reverse", top(&term)?);
        r.compare("phi_mean_le_mean_phi_plus_term", &phi_mean, &(&mean_phi + &term))?;
    }
    Ok(r.finish())
}

pub fn check_power_corollary(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let mut r = Builder::new(CheckId::PowerCorollary, p, inst.dim(), tol_rel);
    let phi = inst.map_or_identity();
    let out = phi.validate(inst.dim())?;
    r.map(phi.name());
    a.require_symmetric()?;
    require!(r, positive_definite(a, "A")?);
    if !within(p, -1.0, 2.0) {
        return Ok(r.violated(format!("p = {p} outside [-1, 2]")));
    }
    let (lo, hi) = extremes(a)?;
    r.term("lambda_min", lo);
    r.term("lambda_max", hi);
    if lo < 1.0 - super::HYPOTHESIS_TOL {
        return Ok(r.violated(format!("I ≤ A fails: smallest eigenvalue {lo}")));
    }
    let sw = super::Sandwich::from_spectrum(lo, hi);
    let (m, big_m) = match sw.resolve(inst.m, inst.big_m) {
        Ok(v) => v,
        Err(note) => return Ok(r.violated(note)),
    };
    r.bounds(m, big_m);
    let spread = BoundContext::new(m, big_m, p)?.power_spread();
    let fa = apply_map(&phi, a)?;
    let phi_power = apply_map(&phi, &power(a, p)?)?;
    let power_phi = power(&fa, p)?;
    let shifted = fa.add_scalar(-1.0);
    debug_assert_eq!(shifted.dim(), out);
    let low_term = shifted.scale(p * spread);
    if p <= 1.0 {
        r.term("additive_term", top(&low_term)?);
    }
    if within(p, 0.0, 1.0) {
        r.compare("power_phi_le_phi_power_plus_term", &power_phi, &(&phi_power + &low_term))?;
    }
    if p <= 0.0 {
        r.compare("phi_power_plus_term_le_power_phi", &(&phi_power + &low_term), &power_phi)?;
    }
    if p >= 1.0 {
        let term = shifted.scale(-p * spread);
        r.term("additive_term_reverse", top(&term)?);
        r.compare("phi_power_le_power_phi_plus_term", &phi_power, &(&power_phi + &term))?;
    }
    Ok(r.finish())
}

const DENSITY_TRACE_TOL: f64 = 1e-10;

pub fn check_density_trace(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let a = &inst.a;
    let b = inst.b()?;
    for (x, name) in [(a, "A"), (b, "B")] {
        x.require_symmetric()?;
        let tr = x.trace();
        if !((tr - 1.0).abs() <= DENSITY_TRACE_TOL) {
            return Err(Error::NotDensity(format!("Tr {name} = {tr}")));
        }
        if let Some(note) = super::positive_semidefinite(x, name)? {
            return Err(Error::NotDensity(note));
        }
    }
    let mut r = Builder::new(CheckId::DensityTrace, p, inst.dim(), tol_rel);
    r.map(MapSpec::NormalizedTrace.name());
    require!(r, positive_definite(a, "A")?);
    require!(r, positive_definite(b, "B")?);
    if !within(p, -1.0, 2.0) {
        return Ok(r.violated(format!("p = {p} outside [-1, 2]")));
    }
    let sw = compute_sandwich(a, b)?;
    r.term("lambda_min", sw.lambda_min);
    r.term("lambda_max", sw.lambda_max);
    if !sw.hypothesis_ok {
        return Ok(r.violated(format!("1 ≤ A^(-1/2)BA^(-1/2) fails: smallest eigenvalue {}", sw.lambda_min)));
    }
    let tr = weighted_mean(a, b, p)?.value.trace();
    r.term("trace_mean", tr);
    if within(p, 0.0, 1.0) {
        r.compare_scalar("trace_mean_ge_one", 1.0, tr)?;
    }
    if p <= 0.0 || p >= 1.0 {
        r.compare_scalar("trace_mean_le_one", tr, 1.0)?;
    }
    Ok(r.finish())
}

pub fn check_furuta_bounds(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let mut r = Builder::new(CheckId::FurutaBounds, p, inst.dim(), tol_rel);
    let s = setup!(inst, r);
    if !(p > 0.0 && p <= 1.0) {
        return Ok(r.violated(format!("p = {p} outside (0, 1]")));
    }
    let (m1, big_m1) = extremes(s.a)?;
    let (m2, big_m2) = extremes(s.b)?;
    let (m, big_m) = match resolve_outer(inst.m, inst.big_m, m2 / big_m1, big_m2 / m1) {
        Ok(v) => v,
        Err(note) => return Ok(r.violated(note)),
    };
    r.bounds(m, big_m);
    let ctx = BoundContext::new(m, big_m, p)?;
    let k = ctx.kantorovich_k()?;
    let f = ctx.furuta_f()?;
    r.term("h", ctx.h);
    r.term("K", k);
    r.term("F", f);

    let phi_t = s.phi_entropy(p)?;
    let t_phi = s.entropy_phi(p)?;
    let k_term = s.mean_phi(p)?.scale((1.0 - k) / p);
    let f_term = s.fa.scale(f);
    let new_term = s.phi_difference()?.scale(ctx.power_spread());
    r.term("k_term", top(&k_term)?);
    r.term("f_term", top(&f_term)?);
    r.term("new_term", top(&new_term)?);
    r.compare("k_bound", &t_phi, &(&k_term + &phi_t))?;
    r.compare("f_bound", &t_phi, &(&f_term + &phi_t))?;

    let sw = compute_sandwich(s.a, s.b)?;
    if sw.hypothesis_ok {
        r.compare("new_bound", &t_phi, &(&new_term + &phi_t))?;
    } else {
        r.note(format!("new bound skipped: 1 ≤ A^(-1/2)BA^(-1/2) fails (λ_min = {})", sw.lambda_min));
    }
    Ok(r.finish())
}

pub fn check_seo_bound(inst: &InstanceSpec, tol_rel: f64) -> Result<CheckReport> {
    let p = inst.p;
    let mut r = Builder::new(CheckId::SeoBound, p, inst.dim(), tol_rel);
    let s = setup!(inst, r);
    if !(p > 0.0 && p < 1.0) {
        return Ok(r.violated(format!("p = {p} outside (0, 1)")));
    }
    let sw = compute_sandwich(s.a, s.b)?;
    r.term("lambda_min", sw.lambda_min);
    r.term("lambda_max", sw.lambda_max);
    let (m, big_m) = match resolve_outer(inst.m, inst.big_m, sw.lambda_min, sw.lambda_max) {
        Ok(v) => v,
        Err(note) => return Ok(r.violated(format!("mA ≤ B ≤ MA: {note}"))),
    };
    r.bounds(m, big_m);
    let c = seo_c(m, big_m, p)?;
    r.term("C", c);
    let seo_term = s.fa.scale(-c);
    let ours = s.phi_difference()?.scale(p * BoundContext::new(m, big_m, p)?.power_spread());
    r.term("seo_term", top(&seo_term)?);
    r.term("ours_term", top(&ours)?);
    r.compare("seo_bound", &s.mean_phi(p)?, &(&s.phi_mean(p)? + &seo_term))?;
    Ok(r.finish())
}

//! On diagonal inputs every operator inequality collapses to scalar inequalities on the
//! diagonal entries, and the normalized trace becomes an arithmetic mean. This suite
//! recomputes each comparison from those scalars with nothing but `f64` arithmetic.

use std::collections::BTreeMap;

use opineq_core::checks::{evaluate, CheckId, FunctionSpec, InstanceSpec};
use opineq_core::fuzz::default_p_list;
use opineq_core::sampling::Sampler;
use opineq_core::{MapSpec, Matrix};

pub const INSTANCES: u64 = 200;
const TOL: f64 = 1e-10;

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

fn min(x: impl IntoIterator<Item = f64>) -> f64 {
    x.into_iter().fold(f64::INFINITY, f64::min)
}

fn max(x: impl IntoIterator<Item = f64>) -> f64 {
    x.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

fn zip<F: Fn(f64, f64) -> f64>(a: &[f64], b: &[f64], f: F) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

fn kantorovich(h: f64, p: f64) -> f64 {
    (h.powf(p) - h) / ((p - 1.0) * (h - 1.0)) * ((p - 1.0) * (h.powf(p) - 1.0) / (p * (h.powf(p) - h))).powf(p)
}

fn furuta(m: f64, h: f64, p: f64) -> f64 {
    m.powf(p) / p * ((h.powf(p) - h) / (h - 1.0)) * (1.0 - kantorovich(h, p).powf(1.0 / (p - 1.0)))
}

fn seo(m: f64, big_m: f64, p: f64) -> f64 {
    (p - 1.0) * ((big_m.powf(p) - m.powf(p)) / (p * (big_m - m))).powf(p / (p - 1.0))
        + (big_m * m.powf(p) - m * big_m.powf(p)) / (big_m - m)
}

/// Gaps `rhs − lhs` by comparison label.
type Gaps = BTreeMap<String, f64>;

struct Case {
    a: Vec<f64>,
    b: Vec<f64>,
    x: Vec<f64>,
    p: f64,
    f: Option<FunctionSpec>,
}

fn put(g: &mut Gaps, label: &str, lhs: f64, rhs: f64) {
    g.insert(label.to_string(), rhs - lhs);
}

fn put_vec(g: &mut Gaps, label: &str, lhs: &[f64], rhs: &[f64]) {
    g.insert(label.to_string(), min(zip(lhs, rhs, |l, r| r - l)));
}

fn oracle(id: CheckId, c: &Case) -> Gaps {
    let (a, b, p) = (&c.a[..], &c.b[..], c.p);
    let mut g = Gaps::new();
    let ratio = zip(a, b, |x, y| y / x);
    let m = min(ratio.iter().copied()).min(1.0);
    let big_m = max(ratio.iter().copied()).max(1.0);
    let spread = m.powf(p - 1.0) - big_m.powf(p - 1.0);
    let (ma, mb) = (mean(a), mean(b));
    let d = mb - ma;
    let entropy = |x: f64, y: f64| (x.powf(1.0 - p) * y.powf(p) - x) / p;
    let phi_t = mean(&zip(a, b, entropy));
    let t_phi = entropy(ma, mb);
    let phi_mean = mean(&zip(a, b, |x, y| x.powf(1.0 - p) * y.powf(p)));
    let mean_phi = ma.powf(1.0 - p) * mb.powf(p);
    let in01 = (0.0..=1.0).contains(&p);
    match id {
        CheckId::InfoMonotonicity => {
            if p <= 1.0 {
                put(&mut g, "phi_entropy_le_entropy_phi", phi_t, t_phi);
            }
            if p >= 1.0 {
                put(&mut g, "entropy_phi_le_phi_entropy", t_phi, phi_t);
            }
        }
        CheckId::ReverseMonotonicity => {
            if p <= 1.0 {
                put(&mut g, "entropy_phi_le_phi_entropy_plus_term", t_phi, phi_t + spread * d);
            }
            if p >= 1.0 {
                put(&mut g, "phi_entropy_le_entropy_phi_plus_term", phi_t, t_phi - spread * d);
            }
        }
        CheckId::AndoConverse => {
            let low = p * spread * d;
            if in01 {
                put(&mut g, "mean_phi_le_phi_mean_plus_term", mean_phi, phi_mean + low);
            }
            if p <= 0.0 {
                put(&mut g, "phi_mean_plus_term_le_mean_phi", phi_mean + low, mean_phi);
            }
            if p >= 1.0 {
                put(&mut g, "phi_mean_le_mean_phi_plus_term", phi_mean, mean_phi - low);
            }
        }
        CheckId::DensityTrace => {
            let tr: f64 = zip(a, b, |x, y| x.powf(1.0 - p) * y.powf(p)).iter().sum();
            if in01 {
                put(&mut g, "trace_mean_ge_one", 1.0, tr);
            }
            if p <= 0.0 || p >= 1.0 {
                put(&mut g, "trace_mean_le_one", tr, 1.0);
            }
        }
        CheckId::FurutaBounds => {
            let lo = min(b.iter().copied()) / max(a.iter().copied());
            let hi = max(b.iter().copied()) / min(a.iter().copied());
            let h = hi / lo;
            let (k, f) = if p == 1.0 { (1.0, 0.0) } else { (kantorovich(h, p), furuta(lo, h, p)) };
            put(&mut g, "k_bound", t_phi, (1.0 - k) / p * mean_phi + phi_t);
            put(&mut g, "f_bound", t_phi, f * ma + phi_t);
            if min(ratio.iter().copied()) >= 1.0 - 1e-9 {
                let s = lo.powf(p - 1.0) - hi.powf(p - 1.0);
                put(&mut g, "new_bound", t_phi, s * d + phi_t);
            }
        }
        CheckId::SeoBound => {
            let lo = min(ratio.iter().copied());
            let hi = max(ratio.iter().copied());
            put(&mut g, "seo_bound", mean_phi, phi_mean - seo(lo, hi, p) * ma);
        }
        CheckId::PowerCorollary => {
            let m = min(a.iter().copied()).min(1.0);
            let big_m = max(a.iter().copied()).max(1.0);
            let spread = m.powf(p - 1.0) - big_m.powf(p - 1.0);
            let phi_power = mean(&a.iter().map(|x| x.powf(p)).collect::<Vec<_>>());
            let power_phi = ma.powf(p);
            let low = p * spread * (ma - 1.0);
            if in01 {
                put(&mut g, "power_phi_le_phi_power_plus_term", power_phi, phi_power + low);
            }
            if p <= 0.0 {
                put(&mut g, "phi_power_plus_term_le_power_phi", phi_power + low, power_phi);
            }
            if p >= 1.0 {
                put(&mut g, "phi_power_le_power_phi_plus_term", phi_power, power_phi - low);
            }
        }
        CheckId::LownerHeinz => {
            put_vec(&mut g, "a_power_le_b_power", &pw(a, p), &pw(b, p));
        }
        CheckId::NormPowerLemma => {
            let n = max(a.iter().copied());
            let tangent: Vec<f64> = a.iter().map(|x| n.powf(p) - p * n.powf(p - 1.0) * (n - x)).collect();
            if in01 {
                put_vec(&mut g, "power_le_tangent", &pw(a, p), &tangent);
            }
            if p >= 1.0 || p <= 0.0 {
                put_vec(&mut g, "tangent_le_power", &tangent, &pw(a, p));
            }
        }
        CheckId::LhExtension => {
            let nb = max(b.iter().copied());
            let lin = zip(a, b, |x, y| p * nb.powf(p - 1.0) * (y - x));
            let diff = zip(a, b, |x, y| y.powf(p) - x.powf(p));
            if in01 {
                put_vec(&mut g, "linear_le_power_difference", &lin, &diff);
            }
            if p >= 1.0 || p <= 0.0 {
                put_vec(&mut g, "power_difference_le_linear", &diff, &lin);
            }
        }
        CheckId::Mn2012 => {
            let nb = max(b.iter().copied());
            let dmin = min(zip(a, b, |x, y| y - x));
            let s = nb / dmin;
            let rhs = if p == 0.0 { 0.0 } else { s.powf(p) - (s - 1.0).powf(p) };
            let ours = p * nb.powf(p - 1.0) * dmin;
            let low_diff = min(zip(a, b, |x, y| y.powf(p) - x.powf(p)));
            put(&mut g, "ours_nonnegative", 0.0, ours);
            put(&mut g, "ours_le_power_difference", ours, low_diff);
            put(&mut g, "mn2012_le_power_difference", rhs * dmin.powf(p), low_diff);
            put(&mut g, "scalar_dominance", p * s.powf(p - 1.0), rhs);
        }
        CheckId::MondPecaric => {
            let lo = min(b.iter().copied());
            let hi = max(a.iter().copied());
            let f = c.f.unwrap_or(FunctionSpec::Power { exponent: p });
            let (fv, df): (Box<dyn Fn(f64) -> f64>, Box<dyn Fn(f64) -> f64>) = match f {
                FunctionSpec::Power { exponent: q } => {
                    (Box::new(move |t: f64| t.powf(q)), Box::new(move |t: f64| q * t.powf(q - 1.0)))
                }
                FunctionSpec::Exp => (Box::new(f64::exp), Box::new(f64::exp)),
                FunctionSpec::Log => (Box::new(f64::ln), Box::new(f64::recip)),
            };
            let (alpha, beta) = (df(lo).min(df(hi)), df(lo).max(df(hi)));
            let w: Vec<f64> = c.x.iter().map(|t| t * t).collect();
            let ax: f64 = zip(&w, a, |wi, ai| wi * ai).iter().sum();
            let bx: f64 = zip(&w, b, |wi, bi| wi * bi).iter().sum();
            let fax: f64 = zip(&w, a, |wi, ai| wi * fv(ai)).iter().sum();
            let mid = fax - fv(bx);
            put(&mut g, "lower", alpha * (ax - bx), mid);
            put(&mut g, "upper", mid, beta * (ax - bx));
        }
        CheckId::HolderMccarthy => {
            let (lo, hi) = (min(a.iter().copied()), max(a.iter().copied()));
            let w: Vec<f64> = c.x.iter().map(|t| t * t).collect();
            let ax: f64 = zip(&w, a, |wi, ai| wi * ai).iter().sum();
            let apx: f64 = zip(&w, a, |wi, ai| wi * ai.powf(p)).iter().sum();
            let root = apx.powf(1.0 / p);
            let axp = ax.powf(p);
            if p > 0.0 && p <= 1.0 {
                put(&mut g, "low.base", apx, axp);
                put(&mut g, "low.lower", p * hi.powf(p - 1.0) * (ax - root), axp - apx);
                put(&mut g, "low.upper", axp - apx, p * lo.powf(p - 1.0) * (ax - root));
            }
            if p >= 1.0 || p < 0.0 {
                put(&mut g, "high.base", axp, apx);
                put(&mut g, "high.lower", p * lo.powf(p - 1.0) * (root - ax), apx - axp);
                put(&mut g, "high.upper", apx - axp, p * hi.powf(p - 1.0) * (root - ax));
            }
        }
        CheckId::NormChain => {
            let op = max(a.iter().map(|t| t.abs()));
            let hs = a.iter().map(|t| t * t).sum::<f64>().sqrt();
            let tr: f64 = a.iter().map(|t| t.abs()).sum();
            let rt = |x: f64, y: f64| (x.powf(p) - y.powf(p)) / (p * tr.powf(p - 1.0));
            if p >= 1.0 || p < 0.0 {
                chain(&mut g, "high", &[op, rt(hs, op) + op, hs, rt(tr, hs) + hs, tr]);
            }
            if p > 0.0 && p <= 1.0 {
                chain(&mut g, "low", &[rt(hs, tr) + tr, hs, rt(hs, op) + op]);
            }
        }
        CheckId::RadiusChain => {
            // normal matrix: spectral radius, numerical radius and norm coincide
            let r = max(a.iter().map(|t| t.abs()));
            let rt = |x: f64, y: f64| (x.powf(p) - y.powf(p)) / (p * r.powf(p - 1.0));
            if p >= 1.0 || p < 0.0 {
                chain(&mut g, "high", &[r, rt(r, r) + r, r, rt(r, r) + r, r]);
            }
            if p > 0.0 && p <= 1.0 {
                chain(&mut g, "low", &[rt(r, r) + r, r, rt(r, r) + r]);
            }
        }
        CheckId::PowerNorm => {
            let of_powers = max(zip(a, b, |x, y| x.powf(p) * y.powf(p)));
            let power_of = max(zip(a, b, |x, y| x * y)).powf(p);
            if p <= 1.0 {
                put(&mut g, "low", of_powers, power_of);
            }
            if p >= 1.0 {
                put(&mut g, "high", power_of, of_powers);
            }
        }
        CheckId::NormRefinement => {
            let lo = min(a.iter().chain(b).copied());
            let hi = max(a.iter().chain(b).copied());
            let prod = max(zip(a, b, |x, y| x * y));
            let of_powers = max(zip(a, b, |x, y| x.powf(p) * y.powf(p)));
            let root = of_powers.powf(1.0 / p);
            let (at_hi, at_lo) = (p * hi.powf(p - 1.0), p * lo.powf(p - 1.0));
            if p <= 1.0 {
                let mid = prod.powf(p) - of_powers;
                put(&mut g, "low.lower", at_hi * (prod - root), mid);
                put(&mut g, "low.upper", mid, at_lo * (prod - root));
            }
            if p >= 1.0 {
                let mid = of_powers - prod.powf(p);
                put(&mut g, "high.lower", at_lo * (root - prod), mid);
                put(&mut g, "high.upper", mid, at_hi * (root - prod));
            }
        }
    }
    g
}

fn pw(x: &[f64], p: f64) -> Vec<f64> {
    x.iter().map(|t| t.powf(p)).collect()
}

fn chain(g: &mut Gaps, prefix: &str, v: &[f64]) {
    for (i, w) in v.windows(2).enumerate() {
        put(g, &format!("{prefix}.{i}"), w[0], w[1]);
    }
}

fn case(id: CheckId, trial: u64) -> Case {
    let mut s = Sampler::new(0xD1A6, trial);
    let n = 2 + s.index(5);
    let ps = default_p_list(id);
    let p = ps[trial as usize % ps.len()];
    let draw = |lo: f64, hi: f64, s: &mut Sampler| (0..n).map(|_| s.uniform(lo, hi)).collect::<Vec<f64>>();
    let x = s.unit_vector(n);
    let (a, b) = match id {
        CheckId::InfoMonotonicity | CheckId::ReverseMonotonicity | CheckId::AndoConverse | CheckId::FurutaBounds => {
            let a = draw(0.2, 5.0, &mut s);
            let r = draw(1.0, 6.0, &mut s);
            let b = zip(&a, &r, |x, y| x * y);
            (a, b)
        }
        CheckId::DensityTrace => {
            let a = draw(0.2, 5.0, &mut s);
            let t: f64 = a.iter().sum();
            let a: Vec<f64> = a.iter().map(|v| v / t).collect();
            (a.clone(), a)
        }
        CheckId::SeoBound | CheckId::PowerNorm | CheckId::NormRefinement => (draw(0.5, 2.0, &mut s), draw(0.5, 2.0, &mut s)),
        CheckId::PowerCorollary => (draw(1.0, 6.0, &mut s), vec![]),
        CheckId::LownerHeinz => {
            let a = draw(0.2, 5.0, &mut s);
            let bump = draw(0.0, 3.0, &mut s);
            let b = zip(&a, &bump, |x, y| x + y);
            (a, b)
        }
        CheckId::NormPowerLemma | CheckId::HolderMccarthy => (draw(0.1, 5.0, &mut s), vec![]),
        CheckId::LhExtension | CheckId::Mn2012 => {
            let a = draw(0.2, 5.0, &mut s);
            let top = max(a.iter().copied());
            let b = draw(0.05, 3.0, &mut s).into_iter().map(|t| t + top).collect();
            (a, b)
        }
        CheckId::MondPecaric => {
            let b = draw(0.2, 3.0, &mut s);
            let bump = draw(0.0, 2.0, &mut s);
            (zip(&b, &bump, |x, y| x + y), b)
        }
        CheckId::NormChain | CheckId::RadiusChain => {
            let a = draw(0.1, 3.0, &mut s);
            let signs = draw(-1.0, 1.0, &mut s);
            (zip(&a, &signs, |x, y| if y < 0.0 { -x } else { x }), vec![])
        }
    };
    let f = match (id, trial % 3) {
        (CheckId::MondPecaric, 1) => Some(FunctionSpec::Exp),
        (CheckId::MondPecaric, 2) => Some(FunctionSpec::Log),
        _ => None,
    };
    Case { a, b, x, p, f }
}

fn instance(id: CheckId, c: &Case) -> InstanceSpec {
    let mut inst = InstanceSpec::new(Matrix::from_diag(&c.a), c.p);
    if !c.b.is_empty() {
        inst.b = Some(Matrix::from_diag(&c.b));
    }
    if matches!(
        id,
        CheckId::InfoMonotonicity
            | CheckId::ReverseMonotonicity
            | CheckId::AndoConverse
            | CheckId::FurutaBounds
            | CheckId::SeoBound
            | CheckId::PowerCorollary
    ) {
        inst = inst.with_map(MapSpec::NormalizedTrace);
    }
    if matches!(id, CheckId::MondPecaric | CheckId::HolderMccarthy) {
        inst = inst.with_vector(c.x.clone());
    }
    if let Some(f) = c.f {
        inst = inst.with_function(f);
    }
    inst
}

/// Compares every comparison of every check on `INSTANCES` diagonal instances per check.
/// Returns the number of comparisons, or the first mismatch.
pub fn run() -> Result<usize, String> {
    let mut compared = 0;
    for id in CheckId::ALL {
        for trial in 0..INSTANCES {
            let c = case(id, trial);
            let report = evaluate(id, &instance(id, &c), 1e-8).map_err(|e| format!("{id} trial {trial}: {e}"))?;
            if !report.hypotheses_ok {
                return Err(format!("{id} trial {trial}: {:?}", report.hypothesis_note));
            }
            let expected = oracle(id, &c);
            let mut labels: Vec<&str> = report.comparisons.iter().map(|c| c.label.as_str()).collect();
            labels.sort();
            let want: Vec<&str> = expected.keys().map(String::as_str).collect();
            if labels != want {
                return Err(format!("{id} p = {}: labels {labels:?} vs {want:?}", c.p));
            }
            for cmp in &report.comparisons {
                let scale = 1f64.max(cmp.lhs.max_abs()).max(cmp.rhs.max_abs());
                let g = expected[&cmp.label];
                if !((cmp.gap_min_eig - g).abs() <= TOL * scale) {
                    return Err(format!(
                        "{id} trial {trial} p = {} {}: check {} vs oracle {g}",
                        c.p, cmp.label, cmp.gap_min_eig
                    ));
                }
                compared += 1;
            }
        }
    }
    Ok(compared)
}

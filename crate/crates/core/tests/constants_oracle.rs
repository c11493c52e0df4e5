//! Bound constants against a 256-bit evaluation of the plain closed forms.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use opineq_core::constants::{furuta_f, kantorovich_k, seo_c};
use proptest::prelude::*;

const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

struct Mp {
    cc: Consts,
}

impl Mp {
    fn new() -> Self {
        Self { cc: Consts::new().expect("constants cache") }
    }

    fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    /// `x^y = exp(y·ln x)` for `x > 0`; the library's own `pow` stalls on these inputs.
    fn pow(&mut self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.ln(PREC, RM, &mut self.cc).mul(y, PREC, RM).exp(PREC, RM, &mut self.cc)
    }

    fn to_f64(&mut self, x: &BigFloat) -> f64 {
        x.format(Radix::Dec, RM, &mut self.cc).expect("format").parse().expect("decimal")
    }

    fn k(&mut self, h: f64, p: f64) -> BigFloat {
        let (h, p) = (self.f(h), self.f(p));
        let one = self.f(1.0);
        let hp = self.pow(&h, &p);
        let num = hp.sub(&h, PREC, RM);
        let pm1 = p.sub(&one, PREC, RM);
        let first = num.div(&pm1.mul(&h.sub(&one, PREC, RM), PREC, RM), PREC, RM);
        let inner = pm1.mul(&hp.sub(&one, PREC, RM), PREC, RM).div(&p.mul(&num, PREC, RM), PREC, RM);
        first.mul(&self.pow(&inner, &p), PREC, RM)
    }

    fn furuta(&mut self, m: f64, h: f64, p: f64) -> BigFloat {
        let k = self.k(h, p);
        let (mb, hb, pb) = (self.f(m), self.f(h), self.f(p));
        let one = self.f(1.0);
        let lead = self.pow(&mb, &pb).div(&pb, PREC, RM);
        let hp = self.pow(&hb, &pb);
        let mid = hp.sub(&hb, PREC, RM).div(&hb.sub(&one, PREC, RM), PREC, RM);
        let e = one.div(&pb.sub(&one, PREC, RM), PREC, RM);
        let tail = one.sub(&self.pow(&k, &e), PREC, RM);
        lead.mul(&mid, PREC, RM).mul(&tail, PREC, RM)
    }

    fn seo(&mut self, m: f64, big_m: f64, p: f64) -> BigFloat {
        let (mb, bb, pb) = (self.f(m), self.f(big_m), self.f(p));
        let one = self.f(1.0);
        let pm1 = pb.sub(&one, PREC, RM);
        let (mp, bp) = (self.pow(&mb, &pb), self.pow(&bb, &pb));
        let span = bb.sub(&mb, PREC, RM);
        let base = bp.sub(&mp, PREC, RM).div(&pb.mul(&span, PREC, RM), PREC, RM);
        let first = pm1.mul(&self.pow(&base, &pb.div(&pm1, PREC, RM)), PREC, RM);
        let second = bb.mul(&mp, PREC, RM).sub(&mb.mul(&bp, PREC, RM), PREC, RM).div(&span, PREC, RM);
        first.add(&second, PREC, RM)
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn reference_points() {
    let mut mp = Mp::new();
    let cases = [
        ("K(4, 1/2)", kantorovich_k(4.0f64, 0.5).unwrap(), mp.k(4.0, 0.5)),
        ("F(1, 4, 1/2)", furuta_f(1.0, 4.0, 0.5).unwrap(), mp.furuta(1.0, 4.0, 0.5)),
        ("C(1, 2, 1/2)", seo_c(1.0, 2.0, 0.5).unwrap(), mp.seo(1.0, 2.0, 0.5)),
        ("K(1807.46, 1/2)", kantorovich_k(1807.459429, 0.5).unwrap(), mp.k(1807.459429, 0.5)),
        ("C(0.999, 1.07, 1/2)", seo_c(0.999, 1.07, 0.5).unwrap(), mp.seo(0.999, 1.07, 0.5)),
    ];
    for (name, got, want) in cases {
        let want = mp.to_f64(&want);
        assert!(rel(got, want) <= 1e-12, "{name}: {got} vs {want}");
    }
    // K(4, 1/2) = (4/3)·√(1/2)
    assert!((kantorovich_k(4.0f64, 0.5).unwrap() - 4.0 / 3.0 * 0.5f64.sqrt()).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kantorovich_matches(h in 1.001f64..5000.0, p in 0.01f64..0.99) {
        let mut mp = Mp::new();
        let want = mp.k(h, p);
        let want = mp.to_f64(&want);
        prop_assert!(rel(kantorovich_k(h, p).unwrap(), want) <= 1e-9);
    }

    #[test]
    fn furuta_matches(m in 0.01f64..2.0, h in 1.001f64..5000.0, p in 0.01f64..0.99) {
        let mut mp = Mp::new();
        let want = mp.furuta(m, h, p);
        let want = mp.to_f64(&want);
        prop_assert!(rel(furuta_f(m, h, p).unwrap(), want) <= 1e-9);
    }

    #[test]
    fn seo_matches(m in 0.05f64..1.0, spread in 0.01f64..50.0, p in 0.01f64..0.99) {
        let big_m = m + spread;
        let mut mp = Mp::new();
        let want = mp.seo(m, big_m, p);
        let want = mp.to_f64(&want);
        let got = seo_c(m, big_m, p).unwrap();
        // C vanishes as M → m, so compare on the scale of its two terms
        let scale = want.abs().max(1e-6 * m.powf(p));
        prop_assert!((got - want).abs() <= 1e-9 * scale, "{} vs {}", got, want);
    }
}

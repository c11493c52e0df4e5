//! Scalar constants of the reverse inequalities and the scalar lemma kernels.
//!
//! Differences of powers such as `h^p − h` are rewritten through `expm1`/`ln_1p` so that
//! the constants keep full relative precision near `h = 1` and for large `h`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

fn domain(msg: impl Into<String>) -> Error {
    Error::DomainError(msg.into())
}

/// Generalized Kantorovich constant `K(p)` for ratio `h = M/m ≥ 1` and `0 < p ≤ 1`.
pub fn kantorovich_k<T: Real>(h: T, p: T) -> Result<T> {
    let one = T::one();
    if !(h >= one) {
        return Err(domain(format!("K needs h ≥ 1, got {h}")));
    }
    if !(p > T::zero() && p <= one) {
        return Err(domain(format!("K needs 0 < p ≤ 1, got {p}")));
    }
    if h == one || p == one {
        return Ok(one);
    }
    Ok(ln_kantorovich(h, p).exp())
}

/// `ln K(p)` for `h > 1`, `0 < p < 1`.
fn ln_kantorovich<T: Real>(h: T, p: T) -> T {
    let one = T::one();
    let l = h.ln();
    let q = one - p;
    // (h^p − h)/((p−1)(h−1)) = h^p·expm1(qL)/(q·expm1(L))
    let first = p * l + (q * l).exp_m1().ln() - q.ln() - l.exp_m1().ln();
    // (p−1)(h^p−1)/(p(h^p−h)) = q·expm1(pL)/(p·h^p·expm1(qL))
    let inner = q.ln() + (p * l).exp_m1().ln() - p.ln() - p * l - (q * l).exp_m1().ln();
    first + p * inner
}

/// Furuta's constant `F(p) = (m^p/p)·((h^p−h)/(h−1))·(1 − K(p)^{1/(p−1)})`.
pub fn furuta_f<T: Real>(m: T, h: T, p: T) -> Result<T> {
    if !(m > T::zero()) {
        return Err(domain(format!("F needs m > 0, got {m}")));
    }
    kantorovich_k(h, p)?;
    let one = T::one();
    if h == one || p == one {
        return Ok(T::zero());
    }
    let l = h.ln();
    let q = one - p;
    // (h^p − h)/(h − 1) = −h^p·expm1(qL)/expm1(L)
    let ratio = -(p * l).exp() * (q * l).exp_m1() / l.exp_m1();
    // 1 − K^{1/(p−1)} = −expm1(ln K/(p−1))
    let tail = -(ln_kantorovich(h, p) / (p - one)).exp_m1();
    Ok(m.powf(p) / p * ratio * tail)
}

/// Seo's constant `C(m, M, p)` for `0 < m ≤ M`, `0 < p < 1`; zero at `m = M`.
pub fn seo_c<T: Real>(m: T, big_m: T, p: T) -> Result<T> {
    if !(m > T::zero() && big_m >= m) {
        return Err(domain(format!("C needs 0 < m ≤ M, got m = {m}, M = {big_m}")));
    }
    let one = T::one();
    if !(p > T::zero() && p < one) {
        return Err(domain(format!("C needs 0 < p < 1, got {p}")));
    }
    if m == big_m {
        return Ok(T::zero());
    }
    let h = big_m / m;
    let l = h.ln();
    let em1 = l.exp_m1();
    // (M^p − m^p)/(p(M − m))
    let x = m.powf(p - one) * (p * l).exp_m1() / (p * em1);
    // (M·m^p − m·M^p)/(M − m)
    let y = -h * m.powf(p) * ((p - one) * l).exp_m1() / em1;
    Ok((p - one) * x.powf(p / (p - one)) + y)
}

/// `(lower, mid, upper)` of the scalar lemma for `0 < m ≤ 1 ≤ t ≤ M`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaBounds<T> {
    pub lower: T,
    pub mid: T,
    pub upper: T,
}

/// `mid = (t^p − 1)/p` squeezed between `M^{p−1}(t−1)` and `m^{p−1}(t−1)`, in that order
/// for `p ≤ 1` and swapped for `p ≥ 1`.
pub fn lemma_bounds<T: Real>(t: T, m: T, big_m: T, p: T) -> Result<LemmaBounds<T>> {
    let one = T::one();
    if p == T::zero() {
        return Err(Error::ZeroParameter);
    }
    if !(m > T::zero() && m <= one && one <= t && t <= big_m) {
        return Err(domain(format!("need 0 < m ≤ 1 ≤ t ≤ M, got m = {m}, t = {t}, M = {big_m}")));
    }
    let mid = (p * t.ln()).exp_m1() / p;
    let d = t - one;
    let at_m = m.powf(p - one) * d;
    let at_big = big_m.powf(p - one) * d;
    let (lower, upper) = if p <= one { (at_big, at_m) } else { (at_m, at_big) };
    Ok(LemmaBounds { lower, mid, upper })
}

/// `s^p − (s−1)^p − p·s^{p−1}` for `s ≥ 1`, `0 ≤ p ≤ 1`.
pub fn mn2012_gap<T: Real>(s: T, p: T) -> Result<T> {
    let one = T::one();
    if !(s >= one) || !(p >= T::zero() && p <= one) {
        return Err(domain(format!("need s ≥ 1 and 0 ≤ p ≤ 1, got s = {s}, p = {p}")));
    }
    Ok(mn2012_rhs(s, p) - p * s.powf(p - one))
}

/// `s^p − (s−1)^p`, computed as `−s^p·expm1(p·ln(1 − 1/s))`.
pub fn mn2012_rhs<T: Real>(s: T, p: T) -> T {
    if p == T::zero() {
        return T::zero();
    }
    -s.powf(p) * (p * (-s.recip()).ln_1p()).exp_m1()
}

/// Sandwich scalars `0 < m ≤ M` with ratio `h = M/m`, plus the exponent `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundContext<T> {
    pub m: T,
    #[serde(rename = "M")]
    pub big_m: T,
    pub h: T,
    pub p: T,
}

impl<T: Real> BoundContext<T> {
    pub fn new(m: T, big_m: T, p: T) -> Result<Self> {
        if !(m > T::zero() && big_m >= m && big_m.is_finite()) {
            return Err(domain(format!("need 0 < m ≤ M, got m = {m}, M = {big_m}")));
        }
        Ok(Self { m, big_m, h: (big_m / m).max(T::one()), p })
    }

    pub fn kantorovich_k(&self) -> Result<T> {
        kantorovich_k(self.h, self.p)
    }

    pub fn furuta_f(&self) -> Result<T> {
        furuta_f(self.m, self.h, self.p)
    }

    pub fn seo_c(&self) -> Result<T> {
        seo_c(self.m, self.big_m, self.p)
    }

    /// `m^{p−1} − M^{p−1}`.
    pub fn power_spread(&self) -> T {
        self.m.powf(self.p - T::one()) - self.big_m.powf(self.p - T::one())
    }
}

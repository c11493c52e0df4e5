//! Spectral radius of a general real matrix and the numerical radius `w(A)`.

use crate::error::{Error, Result};
use crate::linalg::eigen::symmetric_eigenvalues;
use crate::matrix::SquareMatrix;
use crate::scalar::Real;

/// Grid points on `[0, π)` for [`numerical_radius`].
pub const DEFAULT_GRID: usize = 256;
/// Golden-section steps around each refined grid peak.
pub const DEFAULT_REFINE_ITERS: usize = 40;

const MAX_QR_ITERS: usize = 60;

/// Eigenvalues `(re, im)` of a general real matrix via Householder reduction to
/// Hessenberg form and the Francis double-shift QR iteration.
pub fn eigenvalues_general<T: Real>(a: &SquareMatrix<T>) -> Result<Vec<(T, T)>> {
    let n = a.dim();
    let mut h: Vec<Vec<T>> = a.to_rows();
    hessenberg(&mut h);
    hqr(&mut h, n)
}

/// `max |λ|` over the (possibly complex) eigenvalues.
pub fn spectral_radius<T: Real>(a: &SquareMatrix<T>) -> Result<T> {
    if a.is_symmetric() {
        let ev = symmetric_eigenvalues(a)?;
        return Ok(ev[0].abs().max(ev[ev.len() - 1].abs()));
    }
    Ok(eigenvalues_general(a)?.into_iter().fold(T::zero(), |acc, (re, im)| acc.max(re.hypot(im))))
}

fn hessenberg<T: Real>(a: &mut [Vec<T>]) {
    let n = a.len();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let alpha_sq: T = (k + 1..n).map(|i| a[i][k] * a[i][k]).sum();
        let norm = alpha_sq.sqrt();
        if norm == T::zero() {
            continue;
        }
        let alpha = if a[k + 1][k] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k + 1..n).map(|i| a[i][k]).collect();
        v[0] = v[0] - alpha;
        let vnorm_sq: T = v.iter().map(|&x| x * x).sum();
        if vnorm_sq == T::zero() {
            continue;
        }
        let two = T::lit(2.0);
        // H = I - 2vvᵀ/(vᵀv) applied on the left to rows k+1.., then on the right to columns k+1..
        for j in 0..n {
            let s: T = v.iter().enumerate().map(|(i, &vi)| vi * a[k + 1 + i][j]).sum();
            let f = two * s / vnorm_sq;
            for (i, &vi) in v.iter().enumerate() {
                a[k + 1 + i][j] = a[k + 1 + i][j] - f * vi;
            }
        }
        for row in a.iter_mut() {
            let s: T = v.iter().enumerate().map(|(i, &vi)| vi * row[k + 1 + i]).sum();
            let f = two * s / vnorm_sq;
            for (i, &vi) in v.iter().enumerate() {
                row[k + 1 + i] = row[k + 1 + i] - f * vi;
            }
        }
        for row in a.iter_mut().skip(k + 2) {
            row[k] = T::zero();
        }
    }
}

fn sign<T: Real>(a: T, b: T) -> T {
    if b >= T::zero() {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (EISPACK `hqr` layout).
fn hqr<T: Real>(a: &mut [Vec<T>], n: usize) -> Result<Vec<(T, T)>> {
    let mut wr = vec![T::zero(); n];
    let mut wi = vec![T::zero(); n];
    let mut anorm = T::zero();
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm = anorm + a[i][j].abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = T::zero();
    let (half, c075, c04375) = (T::lit(0.5), T::lit(0.75), T::lit(0.4375));
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l >= 1 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == T::zero() {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = T::zero();
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == nu {
                wr[nu] = x + t;
                wi[nu] = T::zero();
                nn -= 1;
                break;
            }
            let mut y = a[nu - 1][nu - 1];
            let mut w = a[nu][nu - 1] * a[nu - 1][nu];
            if l == nu - 1 {
                let p = half * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x = x + t;
                if q >= T::zero() {
                    z = p + sign(z, p);
                    wr[nu - 1] = x + z;
                    wr[nu] = x + z;
                    if z != T::zero() {
                        wr[nu] = x - w / z;
                    }
                    wi[nu - 1] = T::zero();
                    wi[nu] = T::zero();
                } else {
                    wr[nu - 1] = x + p;
                    wr[nu] = x + p;
                    wi[nu - 1] = -z;
                    wi[nu] = z;
                }
                nn -= 2;
                break;
            }
            if its == MAX_QR_ITERS {
                return Err(Error::NoConvergence { sweeps: its });
            }
            if its == 10 || its == 20 {
                // exceptional shift
                t = t + x;
                for (i, row) in a.iter_mut().enumerate().take(nu + 1) {
                    row[i] = row[i] - x;
                }
                let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                x = c075 * s;
                y = x;
                w = -c04375 * s * s;
            }
            its += 1;
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p = p / s;
                q = q / s;
                r = r / s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a[i][i - 2] = T::zero();
                if i != m + 2 {
                    a[i][i - 3] = T::zero();
                }
            }
            let mut k = m;
            while k < nu {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = T::zero();
                    if k != nu - 1 {
                        r = a[k + 2][k - 1];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != T::zero() {
                        p = p / x;
                        q = q / x;
                        r = r / x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != T::zero() {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p = p + s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q = q / p;
                    r = r / p;
                    for j in k..=nu {
                        let mut pp = a[k][j] + q * a[k + 1][j];
                        if k != nu - 1 {
                            pp = pp + r * a[k + 2][j];
                            a[k + 2][j] = a[k + 2][j] - pp * z;
                        }
                        a[k + 1][j] = a[k + 1][j] - pp * y;
                        a[k][j] = a[k][j] - pp * x;
                    }
                    let mmin = if nu < k + 3 { nu } else { k + 3 };
                    for row in a.iter_mut().take(mmin + 1).skip(l) {
                        let mut pp = x * row[k] + y * row[k + 1];
                        if k != nu - 1 {
                            pp = pp + z * row[k + 2];
                            row[k + 2] = row[k + 2] - pp * r;
                        }
                        row[k + 1] = row[k + 1] - pp * q;
                        row[k] = row[k] - pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(wr.into_iter().zip(wi).collect())
}

/// Largest `|λ|` of `H_θ = cos θ·S + i sin θ·K`, the Hermitian part of `e^{iθ}A`, where
/// `S = (A + Aᵀ)/2` and `K = (A − Aᵀ)/2`. Evaluated on the real symmetric embedding
/// `[[X, −Y], [Y, X]]` of `X + iY`, whose spectrum is that of `H_θ` with doubled multiplicity.
fn rotated_hermitian_radius<T: Real>(sym: &SquareMatrix<T>, skew: &SquareMatrix<T>, theta: T) -> Result<T> {
    let n = sym.dim();
    let (c, s) = (theta.cos(), theta.sin());
    let emb = SquareMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) => c * sym[(i, j)],
        (false, false) => c * sym[(i - n, j - n)],
        (true, false) => -s * skew[(i, j - n)],
        (false, true) => s * skew[(i - n, j)],
    });
    let ev = symmetric_eigenvalues(&emb)?;
    Ok(ev[0].abs().max(ev[2 * n - 1].abs()))
}

/// Numerical radius `w(A) = max_{‖x‖=1} |⟨Ax, x⟩| = max_θ λ_max(Re(e^{iθ}A))`.
///
/// Since `λ_max(H_{θ+π}) = −λ_min(H_θ)`, the full circle reduces to `max_{θ∈[0,π)} ρ(H_θ)`.
/// A coarse grid of `grid` angles is followed by golden-section refinement of the three
/// highest grid peaks.
pub fn numerical_radius<T: Real>(a: &SquareMatrix<T>, grid: usize, refine_iters: usize) -> Result<T> {
    let sym = a.symmetrized();
    if a.asymmetry() == T::zero() {
        let ev = symmetric_eigenvalues(&sym)?;
        return Ok(ev[0].abs().max(ev[ev.len() - 1].abs()));
    }
    let half = T::lit(0.5);
    let skew = SquareMatrix::from_fn(a.dim(), |i, j| half * (a[(i, j)] - a[(j, i)]));
    let grid = grid.max(3);
    let step = T::PI() / T::from_usize(grid).expect("grid size");
    let values: Vec<T> = (0..grid)
        .map(|k| rotated_hermitian_radius(&sym, &skew, step * T::from_usize(k).expect("index")))
        .collect::<Result<_>>()?;

    // local maxima on the periodic grid (period π)
    let mut peaks: Vec<usize> = (0..grid)
        .filter(|&k| {
            let prev = values[(k + grid - 1) % grid];
            let next = values[(k + 1) % grid];
            values[k] >= prev && values[k] >= next
        })
        .collect();
    peaks.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).expect("finite"));
    peaks.truncate(3);

    let mut best = values.iter().copied().fold(T::zero(), T::max);
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * half;
    for k in peaks {
        let centre = step * T::from_usize(k).expect("index");
        let (mut lo, mut hi) = (centre - step, centre + step);
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = rotated_hermitian_radius(&sym, &skew, x1)?;
        let mut f2 = rotated_hermitian_radius(&sym, &skew, x2)?;
        for _ in 0..refine_iters {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = rotated_hermitian_radius(&sym, &skew, x2)?;
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = rotated_hermitian_radius(&sym, &skew, x1)?;
            }
        }
        best = best.max(f1).max(f2);
    }
    Ok(best)
}

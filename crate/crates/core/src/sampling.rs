//! Deterministic constrained generators for fuzz instances.
//!
//! Every draw comes from a ChaCha8 stream keyed by `(seed, stream)`. A fuzz trial uses
//! its trial index as the stream, so results do not depend on execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{conjugate_by_sqrt, norm_op};
use crate::maps::MapSpec;
use crate::matrix::{RectMatrix, SquareMatrix};

type Matrix = SquareMatrix<f64>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub dim: usize,
    pub seed: u64,
    pub spectrum_lo: f64,
    pub spectrum_hi: f64,
    pub trials: usize,
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=64).contains(&self.dim) {
            return Err(Error::DomainError(format!("dim must be in 1..=64, got {}", self.dim)));
        }
        if !(self.spectrum_lo > 0.0 && self.spectrum_lo <= self.spectrum_hi && self.spectrum_hi.is_finite()) {
            return Err(Error::DomainError(format!(
                "need 0 < spectrum_lo ≤ spectrum_hi, got [{}, {}]",
                self.spectrum_lo, self.spectrum_hi
            )));
        }
        Ok(())
    }

    pub fn sampler(&self, stream: u64) -> Sampler {
        Sampler::new(self.seed, stream)
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if lo == hi {
            return lo;
        }
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn gaussian_matrix(&mut self, n: usize) -> Matrix {
        SquareMatrix::from_fn(n, |_, _| self.gaussian())
    }

    /// Symmetric with standard Gaussian entries on and above the diagonal.
    pub fn symmetric(&mut self, n: usize) -> Matrix {
        let g = self.gaussian_matrix(n);
        SquareMatrix::from_fn(n, |i, j| if i <= j { g[(i, j)] } else { g[(j, i)] })
    }

    /// Haar orthogonal matrix: Gram–Schmidt QR of a Gaussian matrix with the sign of
    /// `diag(R)` folded into `Q`.
    pub fn orthogonal(&mut self, n: usize) -> Matrix {
        loop {
            let g = self.gaussian_matrix(n);
            if let Some(q) = gram_schmidt(&g) {
                return q;
            }
        }
    }

    /// `QᵀDQ` with `D` uniform in `[lo, hi]` and `Q` Haar. `lo == hi` gives `lo·I`.
    pub fn spd(&mut self, n: usize, lo: f64, hi: f64) -> Matrix {
        if lo == hi {
            return SquareMatrix::scalar(n, lo);
        }
        let d: Vec<f64> = (0..n).map(|_| self.uniform(lo, hi)).collect();
        let q = self.orthogonal(n);
        congruence_diag(&q, &d)
    }

    /// Positive semidefinite with spectrum in `[lo, hi]`, `lo ≥ 0`.
    pub fn psd(&mut self, n: usize, lo: f64, hi: f64) -> Matrix {
        self.spd(n, lo, hi)
    }

    pub fn random_spd(&mut self, cfg: &SamplerConfig) -> Matrix {
        self.spd(cfg.dim, cfg.spectrum_lo, cfg.spectrum_hi)
    }

    /// `(A, B)` with `A^{-1/2}BA^{-1/2} = C`, `spec(C) ⊂ [1, m_target]`.
    pub fn sandwich_pair(&mut self, cfg: &SamplerConfig, m_target: f64) -> (Matrix, Matrix) {
        let a = self.random_spd(cfg);
        if m_target <= 1.0 {
            return (a.clone(), a);
        }
        let c = self.spd(cfg.dim, 1.0, m_target);
        let b = conjugate_by_sqrt(&a, &c).expect("sampled A is positive definite");
        (a, b)
    }

    /// `(A, B)` with `B = ‖A‖·I + P`, `P ⪰ 0` with spectrum in `[0, bump]`.
    pub fn norm_dominated_pair(&mut self, cfg: &SamplerConfig, bump: f64) -> (Matrix, Matrix) {
        let a = self.random_spd(cfg);
        let norm = norm_op(&a).expect("symmetric input");
        let p = self.psd(cfg.dim, 0.0, bump);
        (a, p.add_scalar(norm))
    }

    /// `(A, B)` with `B = A + P`, `P` a random positive semidefinite matrix of random rank.
    pub fn loewner_pair(&mut self, cfg: &SamplerConfig) -> (Matrix, Matrix) {
        let n = cfg.dim;
        let a = self.random_spd(cfg);
        let rank = 1 + self.index(n);
        let mut p = SquareMatrix::zeros(n);
        for _ in 0..rank {
            let v: Vec<f64> = (0..n).map(|_| self.gaussian()).collect();
            let w = self.uniform(0.0, cfg.spectrum_hi);
            p = &p + &SquareMatrix::from_fn(n, |i, j| w * v[i] * v[j]);
        }
        (a.clone(), (&a + &p).symmetrized())
    }

    /// Positive definite with unit trace.
    pub fn density(&mut self, cfg: &SamplerConfig) -> Matrix {
        let x = self.random_spd(cfg);
        let tr = x.trace();
        SquareMatrix::from_fn(cfg.dim, |i, j| x[(i, j)] / tr)
    }

    pub fn unit_vector(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.gaussian()).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-8 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }

    /// `n × k` matrix with orthonormal columns.
    pub fn isometry(&mut self, n: usize, k: usize) -> RectMatrix<f64> {
        RectMatrix::leading_columns(&self.orthogonal(n), k)
    }

    /// One of the four map families, uniformly.
    pub fn map(&mut self, n: usize) -> MapSpec {
        match self.index(4) {
            0 => MapSpec::NormalizedTrace,
            1 => {
                let k = 1 + self.index(n);
                MapSpec::Compression { isometry: self.isometry(n, k) }
            }
            2 => {
                let parts = 1 + self.index(n);
                let mut blocks = vec![Vec::new(); parts];
                // every block gets one index, the rest are spread at random
                for i in 0..n {
                    let b = if i < parts { i } else { self.index(parts) };
                    blocks[b].push(i);
                }
                MapSpec::Pinching { blocks }
            }
            _ => {
                let k = 1 + self.index(3);
                let raw: Vec<f64> = (0..k).map(|_| self.uniform(0.1, 1.0)).collect();
                let total: f64 = raw.iter().sum();
                let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
                let rest: f64 = weights[1..].iter().sum();
                weights[0] = 1.0 - rest;
                let unitaries = (0..k).map(|_| self.orthogonal(n)).collect();
                MapSpec::MixedUnitary { weights, unitaries }
            }
        }
    }
}

/// `Q·diag(d)·Qᵀ`, symmetrized.
fn congruence_diag(q: &Matrix, d: &[f64]) -> Matrix {
    let n = d.len();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let s: f64 = (0..n).map(|k| q[(i, k)] * d[k] * q[(j, k)]).sum();
            out[(i, j)] = s;
            out[(j, i)] = s;
        }
    }
    out
}

fn gram_schmidt(g: &Matrix) -> Option<Matrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..n {
        // two passes of modified Gram–Schmidt keep the columns orthogonal to rounding
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let r: f64 = done[k].iter().zip(&rest[0]).map(|(a, b)| a * b).sum();
                for (x, y) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= r * y;
                }
            }
        }
        let norm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return None;
        }
        // sign of R_jj is the sign of the original projection, which is positive here
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    Some(SquareMatrix::from_fn(n, |i, j| cols[j][i]))
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::checks::CheckId;
use crate::error::Result;
use crate::linalg::loewner_compare;
use crate::matrix::SquareMatrix;

type Matrix = SquareMatrix<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Fails,
    HypothesisViolated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::HypothesisViolated => "HYPOTHESIS_VIOLATED",
        }
    }
}

/// One Loewner comparison `lhs ≤ rhs`. Scalars are 1×1 matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub lhs: Matrix,
    pub rhs: Matrix,
    /// `λ_min(rhs − lhs)`.
    pub gap_min_eig: f64,
    pub tol_used: f64,
    pub holds: bool,
}

impl Comparison {
    fn margin(&self) -> f64 {
        self.gap_min_eig + self.tol_used
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub p: f64,
    pub dim: usize,
    pub m: Option<f64>,
    #[serde(rename = "M")]
    pub big_m: Option<f64>,
    pub map: Option<String>,
    pub tol_rel: f64,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
}

/// Verdict of one check on one instance. The top-level gap, tolerance and operands are
/// those of the comparison with the smallest margin `gap + tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: CheckId,
    pub verdict: Verdict,
    pub hypotheses_ok: bool,
    pub hypothesis_note: Option<String>,
    pub gap_min_eig: Option<f64>,
    pub tol_used: Option<f64>,
    pub lhs: Option<Matrix>,
    pub rhs: Option<Matrix>,
    pub comparisons: Vec<Comparison>,
    pub terms: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub params: Params,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn comparison(&self, label: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.label == label)
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.get(name).copied()
    }
}

pub(crate) struct Builder {
    id: CheckId,
    tol_rel: f64,
    params: Params,
    comparisons: Vec<Comparison>,
    terms: BTreeMap<String, f64>,
    notes: Vec<String>,
}

impl Builder {
    pub fn new(id: CheckId, p: f64, dim: usize, tol_rel: f64) -> Self {
        Self {
            id,
            tol_rel,
            params: Params { p, dim, tol_rel, ..Params::default() },
            comparisons: Vec::new(),
            terms: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn bounds(&mut self, m: f64, big_m: f64) {
        self.params.m = Some(m);
        self.params.big_m = Some(big_m);
    }

    pub fn map(&mut self, name: &str) {
        self.params.map = Some(name.to_string());
    }

    pub fn compare(&mut self, label: &str, lhs: &Matrix, rhs: &Matrix) -> Result<()> {
        let v = loewner_compare(&lhs.symmetrized(), &rhs.symmetrized(), self.tol_rel)?;
        self.comparisons.push(Comparison {
            label: label.to_string(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            gap_min_eig: v.gap_min_eig,
            tol_used: v.tol_used,
            holds: v.le(),
        });
        Ok(())
    }

    pub fn compare_scalar(&mut self, label: &str, lhs: f64, rhs: f64) -> Result<()> {
        self.compare(label, &SquareMatrix::scalar(1, lhs), &SquareMatrix::scalar(1, rhs))
    }

    pub fn term(&mut self, name: &str, value: f64) {
        self.terms.insert(name.to_string(), value);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn violated(self, note: impl Into<String>) -> CheckReport {
        CheckReport {
            check_id: self.id,
            verdict: Verdict::HypothesisViolated,
            hypotheses_ok: false,
            hypothesis_note: Some(note.into()),
            gap_min_eig: None,
            tol_used: None,
            lhs: None,
            rhs: None,
            comparisons: self.comparisons,
            terms: self.terms,
            notes: self.notes,
            params: self.params,
        }
    }

    pub fn finish(self) -> CheckReport {
        let worst = self
            .comparisons
            .iter()
            .min_by(|a, b| a.margin().total_cmp(&b.margin()))
            .cloned();
        let verdict = if self.comparisons.iter().all(|c| c.holds) { Verdict::Holds } else { Verdict::Fails };
        CheckReport {
            check_id: self.id,
            verdict,
            hypotheses_ok: true,
            hypothesis_note: None,
            gap_min_eig: worst.as_ref().map(|c| c.gap_min_eig),
            tol_used: worst.as_ref().map(|c| c.tol_used),
            lhs: worst.as_ref().map(|c| c.lhs.clone()),
            rhs: worst.map(|c| c.rhs),
            comparisons: self.comparisons,
            terms: self.terms,
            notes: self.notes,
            params: self.params,
        }
    }
}

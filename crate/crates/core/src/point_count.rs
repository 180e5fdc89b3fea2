//! Exhaustive counting of `F_{q^2}`-rational points and the maximality verdict.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{self, CriteriaError};
use crate::curves::{CurveError, CurveFamily, PlaneCurve};
use crate::field::LOG_ZERO;

/// Default cap on `q^4`, the number of point evaluations.
pub const DEFAULT_POINT_BUDGET: u64 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("q^4 = {evaluations} point evaluations exceeds budget {budget}")]
    BudgetExceeded { evaluations: u128, budget: u64 },
    #[error("no genus formula for this curve family")]
    NoGenusFormula,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

/// `q^4` for the curve's field.
pub fn evaluations_needed(curve: &PlaneCurve) -> u128 {
    let s = curve.field().order() as u128;
    s * s
}

pub fn check_budget(curve: &PlaneCurve, budget: u64) -> Result<(), CountError> {
    let evaluations = evaluations_needed(curve);
    if evaluations > budget as u128 {
        Err(CountError::BudgetExceeded {
            evaluations,
            budget,
        })
    } else {
        Ok(())
    }
}

/// Number of rational points of the plane curve, counted over the charts
/// `(1:y:z)`, `(0:1:z)`, `(0:0:1)`. The first chart is split across worker
/// threads by `y`; the total does not depend on the split.
pub fn count_points(curve: &PlaneCurve, budget: u64) -> Result<u64, CountError> {
    check_budget(curve, budget)?;
    let field = curve.field();
    field.prepare();
    let f = curve.evaluator();
    let s = field.order();
    let logs: Vec<u32> = (0..s).map(|z| field.log_raw(z)).collect();

    let affine: u64 = (0..s)
        .into_par_iter()
        .map(|y| {
            let ly = logs[y as usize];
            logs.iter()
                .filter(|&&lz| f.eval_logs([0, ly, lz]) == LOG_ZERO)
                .count() as u64
        })
        .sum();
    let line = logs
        .iter()
        .filter(|&&lz| f.eval_logs([LOG_ZERO, 0, lz]) == LOG_ZERO)
        .count() as u64;
    let vertex = u64::from(f.eval_logs([LOG_ZERO, LOG_ZERO, 0]) == LOG_ZERO);
    Ok(affine + line + vertex)
}

/// Hasse-Weil upper bound `1 + q^2 + 2qg`.
pub fn expected_maximal_count(q: u64, g: u64) -> u128 {
    let q = q as u128;
    1 + q * q + 2 * q * g as u128
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityVerdict {
    pub family: String,
    pub params: Vec<u64>,
    pub p: u32,
    pub k: u32,
    pub q: u64,
    pub degree: u32,
    #[serde(rename = "genus")]
    pub genus_used: u64,
    #[serde(rename = "observed")]
    pub observed_count: u64,
    #[serde(rename = "expected")]
    pub expected_maximal: u128,
    #[serde(rename = "maximal")]
    pub is_maximal: bool,
    /// The closed-form criterion, when the family has one whose hypotheses hold.
    #[serde(rename = "criterion")]
    pub criterion_prediction: Option<bool>,
    pub plane_equals_model: bool,
    pub model_note: String,
}

impl MaximalityVerdict {
    /// `Some(true)` when criterion and count agree, `None` without a criterion.
    pub fn agrees(&self) -> Option<bool> {
        self.criterion_prediction.map(|c| c == self.is_maximal)
    }

    /// The plane count never exceeds the bound when it equals the model count.
    pub fn respects_hasse_weil(&self) -> bool {
        !self.plane_equals_model || (self.observed_count as u128) <= self.expected_maximal
    }
}

/// Criterion prediction for a curve family, if one applies.
pub fn criterion_for(curve: &PlaneCurve) -> Result<Option<bool>, CriteriaError> {
    let (p, k) = (curve.field().p() as u64, curve.field().k());
    Ok(match curve.family() {
        CurveFamily::Hermitian => Some(criteria::fermat_criterion(curve.field().q() + 1, p, k)?),
        CurveFamily::Hurwitz { n } => Some(criteria::hurwitz_criterion(n, p, k)?),
        CurveFamily::GeneralizedHurwitz { n, l } => {
            match criteria::generalized_criterion(n, l, p, k) {
                Ok(c) if c.is_iff() => Some(c.maximal),
                Ok(_) | Err(CriteriaError::NotCoprime { .. }) => None,
                Err(e) => return Err(e),
            }
        }
        CurveFamily::Fermat { m } => Some(criteria::fermat_criterion(m, p, k)?),
        CurveFamily::Custom => None,
    })
}

const NONSINGULAR_NOTE: &str = "nonsingular plane curve: plane points are model points";
const UNIBRANCH_NOTE: &str = "three singular points (1:0:0), (0:1:0), (0:0:1), each unibranch \
     with a single rational point above it (assumed): plane count equals model count";

pub fn verdict(curve: &PlaneCurve, budget: u64) -> Result<MaximalityVerdict, CountError> {
    let genus = curve.genus().ok_or(CountError::NoGenusFormula)?;
    let observed = count_points(curve, budget)?;
    let q = curve.field().q();
    let expected = expected_maximal_count(q, genus);
    let note = match curve.family() {
        CurveFamily::GeneralizedHurwitz { .. } => UNIBRANCH_NOTE,
        _ => NONSINGULAR_NOTE,
    };
    Ok(MaximalityVerdict {
        family: curve.family().name().to_string(),
        params: curve.family().params(),
        p: curve.field().p(),
        k: curve.field().k(),
        q,
        degree: curve.degree(),
        genus_used: genus,
        observed_count: observed,
        expected_maximal: expected,
        is_maximal: observed as u128 == expected,
        criterion_prediction: criterion_for(curve)?,
        plane_equals_model: true,
        model_note: note.to_string(),
    })
}

//! Explicit covering maps between the Fermat, Hurwitz and Hermitian curves,
//! checked point by point.
//!
//! The generalized map `(u:v:1) -> (u^n v^-l : u^l v^(n-l) : 1)` uses `l` for
//! the exponent that the usual write-up leaves as an undefined `m`; at `l = 1`
//! it is the Hurwitz map.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::curves::{projective_points_raw, CurveError, CurveFamily, PlaneCurve, ProjectivePoint};
use crate::field::{FieldElement, FieldError};
use crate::point_count::{check_budget, CountError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoveringError {
    #[error("map undefined at this point (a coordinate to invert is zero)")]
    UndefinedAtPoint,
    #[error("{m} does not divide q + 1 = {q_plus_one}")]
    DivisibilityFails { m: u64, q_plus_one: u64 },
    #[error("incompatible parameters: {0}")]
    IncompatibleParameters(String),
    #[error("q^4 = {evaluations} point evaluations exceeds budget {budget}")]
    BudgetExceeded { evaluations: u128, budget: u64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl From<CountError> for CoveringError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::BudgetExceeded {
                evaluations,
                budget,
            } => CoveringError::BudgetExceeded {
                evaluations,
                budget,
            },
            CountError::Curve(c) => c.into(),
            other => CoveringError::IncompatibleParameters(other.to_string()),
        }
    }
}

/// `(u, v) -> (u^n / v, u v^(n-1))`.
pub fn fermat_to_hurwitz_map(
    u: &FieldElement,
    v: &FieldElement,
    n: u64,
) -> Result<(FieldElement, FieldElement), CoveringError> {
    fermat_to_generalized_map(u, v, n, 1)
}

/// `(u, v) -> (u^n v^-l, u^l v^(n-l))`.
pub fn fermat_to_generalized_map(
    u: &FieldElement,
    v: &FieldElement,
    n: u64,
    l: u64,
) -> Result<(FieldElement, FieldElement), CoveringError> {
    if l > n {
        return Err(CoveringError::IncompatibleParameters(format!(
            "need l <= n, got n={n}, l={l}"
        )));
    }
    if v.is_zero() {
        return Err(CoveringError::UndefinedAtPoint);
    }
    let (n, l) = (n as i64, l as i64);
    let x = &u.pow(n)? * &v.pow(-l)?;
    let y = &u.pow(l)? * &v.pow(n - l)?;
    Ok((x, y))
}

/// Coordinatewise power `(q+1)/m`, from the Hermitian curve onto `Fermat(m)`.
pub fn hermitian_to_fermat_map(
    point: &ProjectivePoint,
    q: u64,
    m: u64,
) -> Result<ProjectivePoint, CoveringError> {
    if m == 0 || !(q + 1).is_multiple_of(m) {
        return Err(CoveringError::DivisibilityFails {
            m,
            q_plus_one: q + 1,
        });
    }
    let e = ((q + 1) / m) as i64;
    let [x, y, z] = point.coords();
    Ok(ProjectivePoint::new(x.pow(e)?, y.pow(e)?, z.pow(e)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "map", rename_all = "kebab-case")]
pub enum CoveringMap {
    FermatToHurwitz {
        n: u64,
    },
    FermatToGeneralized {
        n: u64,
        l: u64,
    },
    HermitianToFermat {
        m: u64,
    },
    /// Hermitian to `Fermat(n^2-n+1)`, then on to `Hurwitz(n)`.
    HermitianToHurwitz {
        n: u64,
    },
}

impl CoveringMap {
    /// The map between two curves of the supported families, if any.
    pub fn infer(domain: &PlaneCurve, target: &PlaneCurve) -> Result<Self, CoveringError> {
        use CurveFamily::*;
        Ok(match (domain.family(), target.family()) {
            (Fermat { .. }, Hurwitz { n }) => CoveringMap::FermatToHurwitz { n },
            (Fermat { .. }, GeneralizedHurwitz { n, l }) => {
                CoveringMap::FermatToGeneralized { n, l }
            }
            (Hermitian, Fermat { m }) => CoveringMap::HermitianToFermat { m },
            (Hermitian, Hurwitz { n }) => CoveringMap::HermitianToHurwitz { n },
            (d, t) => {
                return Err(CoveringError::IncompatibleParameters(format!(
                    "no covering map from {} to {}",
                    d.name(),
                    t.name()
                )))
            }
        })
    }

    fn check(&self, domain: &PlaneCurve, target: &PlaneCurve) -> Result<(), CoveringError> {
        use CurveFamily::*;
        if !domain.field().same_field(target.field()) {
            return Err(CoveringError::IncompatibleParameters(
                "domain and target live over different fields".into(),
            ));
        }
        let q = domain.field().q();
        let bad = |msg: String| Err(CoveringError::IncompatibleParameters(msg));
        match (*self, domain.family(), target.family()) {
            (CoveringMap::FermatToHurwitz { n }, Fermat { m }, Hurwitz { n: tn }) => {
                if tn != n || m != n * n - n + 1 {
                    return bad(format!(
                        "Fermat({m}) does not cover Hurwitz({tn}) via n = {n}"
                    ));
                }
            }
            (CoveringMap::FermatToGeneralized { n, l }, Fermat { m }, t) => {
                let ok_target = match t {
                    GeneralizedHurwitz { n: tn, l: tl } => (tn, tl) == (n, l),
                    Hurwitz { n: tn } => l == 1 && tn == n,
                    _ => false,
                };
                if !ok_target || m != n * n - n * l + l * l {
                    return bad(format!(
                        "Fermat({m}) does not cover {} via (n, l) = ({n}, {l})",
                        t.name()
                    ));
                }
            }
            (CoveringMap::HermitianToFermat { m }, Hermitian, Fermat { m: tm }) => {
                if tm != m {
                    return bad(format!("target Fermat({tm}) but map for m = {m}"));
                }
                if !(q + 1).is_multiple_of(m) {
                    return Err(CoveringError::DivisibilityFails {
                        m,
                        q_plus_one: q + 1,
                    });
                }
            }
            (CoveringMap::HermitianToHurwitz { n }, Hermitian, Hurwitz { n: tn }) => {
                let m = n * n - n + 1;
                if tn != n {
                    return bad(format!("target Hurwitz({tn}) but map for n = {n}"));
                }
                if !(q + 1).is_multiple_of(m) {
                    return Err(CoveringError::DivisibilityFails {
                        m,
                        q_plus_one: q + 1,
                    });
                }
            }
            (map, d, t) => {
                return bad(format!("{map:?} does not map {} to {}", d.name(), t.name()));
            }
        }
        Ok(())
    }

    /// Image of a domain point, or `None` where the affine map is undefined.
    fn apply(
        &self,
        point: &ProjectivePoint,
        q: u64,
    ) -> Result<Option<ProjectivePoint>, CoveringError> {
        let affine = |p: &ProjectivePoint,
                      n: u64,
                      l: u64|
         -> Result<Option<ProjectivePoint>, CoveringError> {
            let [u, v, w] = p.coords();
            if w.is_zero() {
                return Ok(None);
            }
            let (u, v) = (u.checked_div(w)?, v.checked_div(w)?);
            match fermat_to_generalized_map(&u, &v, n, l) {
                Ok((x, y)) => {
                    let one = x.field().one();
                    Ok(Some(ProjectivePoint::new(x, y, one)?))
                }
                Err(CoveringError::UndefinedAtPoint) => Ok(None),
                Err(e) => Err(e),
            }
        };
        match *self {
            CoveringMap::FermatToHurwitz { n } => affine(point, n, 1),
            CoveringMap::FermatToGeneralized { n, l } => affine(point, n, l),
            CoveringMap::HermitianToFermat { m } => Ok(Some(hermitian_to_fermat_map(point, q, m)?)),
            CoveringMap::HermitianToHurwitz { n } => {
                let mid = hermitian_to_fermat_map(point, q, n * n - n + 1)?;
                affine(&mid, n, 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub domain: String,
    pub target: String,
    pub map: CoveringMap,
    pub points_checked: u64,
    pub points_on_target: u64,
    pub excluded: u64,
    /// Distinct images.
    pub image_points: u64,
    pub ok: bool,
}

/// Applies `map` to every rational point of `domain` and checks the image
/// lies on `target`.
pub fn verify_covering(
    domain: &PlaneCurve,
    map: CoveringMap,
    target: &PlaneCurve,
    budget: u64,
) -> Result<CoveringReport, CoveringError> {
    map.check(domain, target)?;
    check_budget(domain, budget)?;
    let field = domain.field();
    field.prepare();
    let q = field.q();
    let on_domain = domain.evaluator();
    let (mut checked, mut on_target, mut excluded) = (0u64, 0u64, 0u64);
    let mut images = HashSet::new();
    for raw in projective_points_raw(field).filter(|c| on_domain.vanishes_at(*c)) {
        let point = ProjectivePoint::new(
            field.element(raw[0])?,
            field.element(raw[1])?,
            field.element(raw[2])?,
        )?;
        match map.apply(&point, q)? {
            None => excluded += 1,
            Some(image) => {
                checked += 1;
                if target.is_on_curve(&image)? {
                    on_target += 1;
                }
                images.insert(image.raw());
            }
        }
    }
    Ok(CoveringReport {
        domain: domain.spec().to_string(),
        target: target.spec().to_string(),
        map,
        points_checked: checked,
        points_on_target: on_target,
        excluded,
        image_points: images.len() as u64,
        ok: checked == on_target,
    })
}

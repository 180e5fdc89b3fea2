//! Plane curve families as sparse homogeneous polynomials in `X, Y, Z`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::gcd;
use crate::field::{Field, FieldElement, FieldError, LOG_ZERO};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("characteristic {p} divides {value}")]
    CharacteristicDividesQ { p: u32, value: u64 },
    #[error("characteristic {p} divides the Fermat degree {m}")]
    CharacteristicDividesM { p: u32, m: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial has no terms")]
    EmptyPolynomial,
    #[error("(0:0:0) is not a projective point")]
    ZeroPoint,
    #[error("point count {points} exceeds budget {budget}")]
    BudgetExceeded { points: u128, budget: u64 },
    #[error("cannot parse curve description: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Which family a curve belongs to; `Custom` carries no genus formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CurveFamily {
    Hermitian,
    Hurwitz { n: u64 },
    GeneralizedHurwitz { n: u64, l: u64 },
    Fermat { m: u64 },
    Custom,
}

impl CurveFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CurveFamily::Hermitian => "hermitian",
            CurveFamily::Hurwitz { .. } => "hurwitz",
            CurveFamily::GeneralizedHurwitz { .. } => "generalized",
            CurveFamily::Fermat { .. } => "fermat",
            CurveFamily::Custom => "custom",
        }
    }

    pub fn params(&self) -> Vec<u64> {
        match *self {
            CurveFamily::Hermitian | CurveFamily::Custom => vec![],
            CurveFamily::Hurwitz { n } => vec![n],
            CurveFamily::GeneralizedHurwitz { n, l } => vec![n, l],
            CurveFamily::Fermat { m } => vec![m],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exponents: [u32; 3],
    pub coeff: FieldElement,
}

#[derive(Debug, Clone)]
pub struct PlaneCurve {
    family: CurveFamily,
    terms: Vec<Term>,
    degree: u32,
    field: Field,
}

/// `(d-1)(d-2)/2`.
pub fn genus_nonsingular_plane(d: u64) -> u64 {
    assert!(d >= 1, "degree must be positive");
    (d - 1) * (d.saturating_sub(2)) / 2
}

fn check_generalized(n: u64, l: u64) -> Result<(), CurveError> {
    if l < 2 || n < l {
        return Err(CurveError::BadParameters(format!(
            "need n >= l >= 2, got n = {n}, l = {l}"
        )));
    }
    Ok(())
}

/// `(nl - n - l + gcd(n, l)) / 2`, the delta invariant at each coordinate vertex.
pub fn delta_invariant(n: u64, l: u64) -> Result<u64, CurveError> {
    check_generalized(n, l)?;
    Ok((n * l + gcd(n, l) - n - l) / 2)
}

/// `(n^2 - nl + l^2 + 2 - 3 gcd(n, l)) / 2`.
pub fn genus_generalized_hurwitz(n: u64, l: u64) -> Result<u64, CurveError> {
    check_generalized(n, l)?;
    Ok((n * n - n * l + l * l + 2 - 3 * gcd(n, l)) / 2)
}

fn unit_terms(field: &Field, exps: [[u32; 3]; 3]) -> Vec<Term> {
    exps.into_iter()
        .map(|exponents| Term {
            exponents,
            coeff: field.one(),
        })
        .collect()
}

fn to_u32(v: u64, what: &str) -> Result<u32, CurveError> {
    u32::try_from(v).map_err(|_| CurveError::BadParameters(format!("{what} = {v} too large")))
}

/// `X^{q+1} + Y^{q+1} + Z^{q+1}`.
pub fn make_hermitian(field: &Field) -> PlaneCurve {
    let d = field.q() as u32 + 1;
    PlaneCurve {
        family: CurveFamily::Hermitian,
        terms: unit_terms(field, [[d, 0, 0], [0, d, 0], [0, 0, d]]),
        degree: d,
        field: field.clone(),
    }
}

/// `X^n Y + Y^n Z + Z^n X`, requires `p` not dividing `n^2 - n + 1`.
pub fn make_hurwitz(n: u64, field: &Field) -> Result<PlaneCurve, CurveError> {
    if n < 1 {
        return Err(CurveError::BadParameters("n must be positive".into()));
    }
    let m = n * n - n + 1;
    let p = field.p();
    if m.is_multiple_of(p as u64) {
        return Err(CurveError::CharacteristicDividesQ { p, value: m });
    }
    let n32 = to_u32(n, "n")?;
    Ok(PlaneCurve {
        family: CurveFamily::Hurwitz { n },
        terms: unit_terms(field, [[n32, 1, 0], [0, n32, 1], [1, 0, n32]]),
        degree: n32 + 1,
        field: field.clone(),
    })
}

/// `X^n Y^l + Y^n Z^l + Z^n X^l`. `l = 1` is the Hurwitz curve.
pub fn make_generalized(n: u64, l: u64, field: &Field) -> Result<PlaneCurve, CurveError> {
    if l == 1 {
        return make_hurwitz(n, field);
    }
    check_generalized(n, l)?;
    let big_q = n * n - n * l + l * l;
    let p = field.p();
    if big_q.is_multiple_of(p as u64) {
        return Err(CurveError::CharacteristicDividesQ { p, value: big_q });
    }
    let (n32, l32) = (to_u32(n, "n")?, to_u32(l, "l")?);
    Ok(PlaneCurve {
        family: CurveFamily::GeneralizedHurwitz { n, l },
        terms: unit_terms(field, [[n32, l32, 0], [0, n32, l32], [l32, 0, n32]]),
        degree: n32 + l32,
        field: field.clone(),
    })
}

/// `U^m + V^m + W^m`; `p | m` is rejected since the curve is then not reduced.
pub fn make_fermat(m: u64, field: &Field) -> Result<PlaneCurve, CurveError> {
    if m < 1 {
        return Err(CurveError::BadParameters("m must be positive".into()));
    }
    let p = field.p();
    if m.is_multiple_of(p as u64) {
        return Err(CurveError::CharacteristicDividesM { p, m });
    }
    let d = to_u32(m, "m")?;
    Ok(PlaneCurve {
        family: CurveFamily::Fermat { m },
        terms: unit_terms(field, [[d, 0, 0], [0, d, 0], [0, 0, d]]),
        degree: d,
        field: field.clone(),
    })
}

impl PlaneCurve {
    /// Arbitrary homogeneous polynomial; like monomials are merged and zero
    /// coefficients dropped.
    pub fn custom(field: &Field, terms: Vec<Term>) -> Result<Self, CurveError> {
        let mut merged: Vec<Term> = Vec::new();
        for t in terms {
            if t.coeff.field() != field {
                return Err(FieldError::MixedFields.into());
            }
            match merged.iter_mut().find(|m| m.exponents == t.exponents) {
                Some(m) => m.coeff = &m.coeff + &t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        let first = merged.first().ok_or(CurveError::EmptyPolynomial)?;
        let degree: u32 = first.exponents.iter().sum();
        if merged
            .iter()
            .any(|t| t.exponents.iter().sum::<u32>() != degree)
        {
            return Err(CurveError::NotHomogeneous);
        }
        Ok(Self {
            family: CurveFamily::Custom,
            terms: merged,
            degree,
            field: field.clone(),
        })
    }

    pub fn family(&self) -> CurveFamily {
        self.family
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Genus of the nonsingular model, when the family has a formula.
    pub fn genus(&self) -> Option<u64> {
        match self.family {
            CurveFamily::Hermitian | CurveFamily::Hurwitz { .. } | CurveFamily::Fermat { .. } => {
                Some(genus_nonsingular_plane(self.degree as u64))
            }
            CurveFamily::GeneralizedHurwitz { n, l } => genus_generalized_hurwitz(n, l).ok(),
            CurveFamily::Custom => None,
        }
    }

    /// Formal partial derivative with respect to variable `var` (0 = X, 1 = Y, 2 = Z).
    /// The result is tagged `Custom` and may have no terms.
    pub fn partial(&self, var: usize) -> Vec<Term> {
        self.terms
            .iter()
            .filter(|t| t.exponents[var] > 0)
            .filter_map(|t| {
                let e = t.exponents[var];
                let c = &t.coeff * &self.field.from_int(e as i64);
                if c.is_zero() {
                    return None;
                }
                let mut exponents = t.exponents;
                exponents[var] -= 1;
                Some(Term {
                    exponents,
                    coeff: c,
                })
            })
            .collect()
    }

    pub fn evaluate(&self, point: &ProjectivePoint) -> Result<FieldElement, CurveError> {
        let [x, y, z] = point.coords();
        evaluate_terms(&self.terms, &self.field, x, y, z)
    }

    pub fn is_on_curve(&self, point: &ProjectivePoint) -> Result<bool, CurveError> {
        Ok(self.evaluate(point)?.is_zero())
    }

    /// Canonical description of this curve (without the field handle).
    pub fn spec(&self) -> CurveSpec {
        let (p, k) = (self.field.p() as u64, self.field.k());
        match self.family {
            CurveFamily::Hermitian => CurveSpec::Hermitian { p, k },
            CurveFamily::Hurwitz { n } => CurveSpec::Hurwitz { n, p, k },
            CurveFamily::GeneralizedHurwitz { n, l } => CurveSpec::Generalized { n, l, p, k },
            CurveFamily::Fermat { m } => CurveSpec::Fermat { m, p, k },
            CurveFamily::Custom => CurveSpec::Custom {
                p,
                k,
                terms: self
                    .terms
                    .iter()
                    .map(|t| CustomTerm {
                        exponents: t.exponents,
                        coeffs: t.coeff.coeffs(),
                    })
                    .collect(),
            },
        }
    }

    pub fn evaluator(&self) -> LogEvaluator {
        LogEvaluator::new(&self.field, &self.terms)
    }
}

/// Evaluates an explicit term list with the checked element API.
pub fn evaluate_terms(
    terms: &[Term],
    field: &Field,
    x: &FieldElement,
    y: &FieldElement,
    z: &FieldElement,
) -> Result<FieldElement, CurveError> {
    let mut acc = field.zero();
    for t in terms {
        let [i, j, k] = t.exponents;
        let m = x
            .pow(i as i64)?
            .checked_mul(&y.pow(j as i64)?)?
            .checked_mul(&z.pow(k as i64)?)?
            .checked_mul(&t.coeff)?;
        acc = acc.checked_add(&m)?;
    }
    Ok(acc)
}

/// Evaluation in the logarithm domain: coordinates and result are discrete
/// logs ([`LOG_ZERO`] for zero) and sums use Zech logarithms.
#[derive(Debug, Clone)]
pub struct LogEvaluator {
    field: Field,
    /// (log coefficient, exponents reduced mod q^2 - 1, raw exponents)
    terms: Vec<(u64, [u64; 3], [u32; 3])>,
}

impl LogEvaluator {
    pub fn new(field: &Field, terms: &[Term]) -> Self {
        let n = field.group_order() as u64;
        let terms = terms
            .iter()
            .map(|t| {
                let lc = field.log_raw(t.coeff.index()) as u64;
                let e = t.exponents.map(|e| e as u64 % n);
                (lc, e, t.exponents)
            })
            .collect();
        Self {
            field: field.clone(),
            terms,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Log of the polynomial value at the point whose coordinate logs are given.
    #[inline]
    pub fn eval_logs(&self, logs: [u32; 3]) -> u32 {
        let n = self.field.group_order() as u64;
        let mut acc = LOG_ZERO;
        'terms: for (lc, e, raw) in &self.terms {
            let mut s = *lc;
            for v in 0..3 {
                if raw[v] == 0 {
                    continue;
                }
                if logs[v] == LOG_ZERO {
                    continue 'terms;
                }
                s += e[v] * logs[v] as u64;
            }
            acc = self.field.add_logs(acc, (s % n) as u32);
        }
        acc
    }

    #[inline]
    pub fn vanishes_at(&self, coords: [u32; 3]) -> bool {
        let logs = coords.map(|c| self.field.log_raw(c));
        self.eval_logs(logs) == LOG_ZERO
    }
}

/// A point of `P^2`, normalised so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: [FieldElement; 3],
}

impl ProjectivePoint {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self, CurveError> {
        if x.field() != y.field() || y.field() != z.field() {
            return Err(FieldError::MixedFields.into());
        }
        let lead = [&x, &y, &z]
            .into_iter()
            .find(|c| !c.is_zero())
            .ok_or(CurveError::ZeroPoint)?
            .inv()?;
        Ok(Self {
            coords: [&x * &lead, &y * &lead, &z * &lead],
        })
    }

    /// From raw indices already in normal form.
    pub(crate) fn from_normalized_raw(field: &Field, c: [u32; 3]) -> Self {
        Self {
            coords: c.map(|i| field.wrap(i)),
        }
    }

    pub fn coords(&self) -> [&FieldElement; 3] {
        [&self.coords[0], &self.coords[1], &self.coords[2]]
    }

    pub fn raw(&self) -> [u32; 3] {
        [
            self.coords[0].index(),
            self.coords[1].index(),
            self.coords[2].index(),
        ]
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}:{}:{})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

/// Number of points of `P^2(F_{q^2})`.
pub fn projective_plane_size(field: &Field) -> u128 {
    let s = field.order() as u128;
    s * s + s + 1
}

/// Normalised projective points as raw index triples: charts `(1:y:z)`,
/// then `(0:1:z)`, then `(0:0:1)`, lexicographic within each chart.
pub fn projective_points_raw(field: &Field) -> impl Iterator<Item = [u32; 3]> {
    let s = field.order();
    let chart0 = (0..s).flat_map(move |y| (0..s).map(move |z| [1, y, z]));
    let chart1 = (0..s).map(|z| [0, 1, z]);
    chart0.chain(chart1).chain(std::iter::once([0, 0, 1]))
}

pub fn projective_points(field: &Field) -> impl Iterator<Item = ProjectivePoint> + '_ {
    projective_points_raw(field).map(move |c| ProjectivePoint::from_normalized_raw(field, c))
}

/// Rational points where the curve and all three formal partials vanish.
pub fn singular_locus(curve: &PlaneCurve, budget: u64) -> Result<Vec<ProjectivePoint>, CurveError> {
    let points = projective_plane_size(curve.field());
    if points > budget as u128 {
        return Err(CurveError::BudgetExceeded { points, budget });
    }
    let field = curve.field();
    let f = curve.evaluator();
    let partials: Vec<LogEvaluator> = (0..3)
        .map(|v| LogEvaluator::new(field, &curve.partial(v)))
        .collect();
    Ok(projective_points_raw(field)
        .filter(|&c| f.vanishes_at(c) && partials.iter().all(|d| d.vanishes_at(c)))
        .map(|c| ProjectivePoint::from_normalized_raw(field, c))
        .collect())
}

// ---- canonical descriptions ---------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomTerm {
    pub exponents: [u32; 3],
    /// Coefficient as `c_0, c_1, ...` over `F_p`.
    pub coeffs: Vec<u32>,
}

/// Field-free curve description. Text form is `family:params:p:k`
/// (e.g. `hurwitz:3:13:1`, `generalized:3,2:13:1`, `hermitian:-:2:1`);
/// custom curves use JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CurveSpec {
    Hermitian {
        p: u64,
        k: u32,
    },
    Hurwitz {
        n: u64,
        p: u64,
        k: u32,
    },
    Generalized {
        n: u64,
        l: u64,
        p: u64,
        k: u32,
    },
    Fermat {
        m: u64,
        p: u64,
        k: u32,
    },
    Custom {
        p: u64,
        k: u32,
        terms: Vec<CustomTerm>,
    },
}

impl CurveSpec {
    pub fn p_k(&self) -> (u64, u32) {
        match *self {
            CurveSpec::Hermitian { p, k }
            | CurveSpec::Hurwitz { p, k, .. }
            | CurveSpec::Generalized { p, k, .. }
            | CurveSpec::Fermat { p, k, .. }
            | CurveSpec::Custom { p, k, .. } => (p, k),
        }
    }

    /// Builds the field (under `field_budget`) and the curve.
    pub fn build(&self, field_budget: u64) -> Result<PlaneCurve, CurveError> {
        let (p, k) = self.p_k();
        let field = Field::create_with_budget(p, k, field_budget)?;
        self.build_over(&field)
    }

    pub fn build_over(&self, field: &Field) -> Result<PlaneCurve, CurveError> {
        match self {
            CurveSpec::Hermitian { .. } => Ok(make_hermitian(field)),
            CurveSpec::Hurwitz { n, .. } => make_hurwitz(*n, field),
            CurveSpec::Generalized { n, l, .. } => make_generalized(*n, *l, field),
            CurveSpec::Fermat { m, .. } => make_fermat(*m, field),
            CurveSpec::Custom { terms, .. } => {
                let terms = terms
                    .iter()
                    .map(|t| {
                        Ok(Term {
                            exponents: t.exponents,
                            coeff: field.from_coeffs(&t.coeffs)?,
                        })
                    })
                    .collect::<Result<Vec<_>, FieldError>>()?;
                PlaneCurve::custom(field, terms)
            }
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveSpec::Hermitian { p, k } => write!(f, "hermitian:-:{p}:{k}"),
            CurveSpec::Hurwitz { n, p, k } => write!(f, "hurwitz:{n}:{p}:{k}"),
            CurveSpec::Generalized { n, l, p, k } => write!(f, "generalized:{n},{l}:{p}:{k}"),
            CurveSpec::Fermat { m, p, k } => write!(f, "fermat:{m}:{p}:{k}"),
            CurveSpec::Custom { .. } => {
                write!(
                    f,
                    "{}",
                    serde_json::to_string(self).map_err(|_| fmt::Error)?
                )
            }
        }
    }
}

impl FromStr for CurveSpec {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| CurveError::Parse(e.to_string()));
        }
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(CurveError::Parse(format!(
                "expected family:params:p:k, got {s:?}"
            )));
        }
        let num = |x: &str| -> Result<u64, CurveError> {
            x.trim()
                .parse()
                .map_err(|_| CurveError::Parse(format!("not an integer: {x:?}")))
        };
        let p = num(parts[2])?;
        let k =
            u32::try_from(num(parts[3])?).map_err(|_| CurveError::Parse("k too large".into()))?;
        let params: Vec<u64> = match parts[1].trim() {
            "" | "-" => vec![],
            list => list.split(',').map(num).collect::<Result<_, _>>()?,
        };
        let want = |count: usize| -> Result<(), CurveError> {
            if params.len() == count {
                Ok(())
            } else {
                Err(CurveError::Parse(format!(
                    "{} expects {count} parameter(s), got {}",
                    parts[0],
                    params.len()
                )))
            }
        };
        match parts[0].trim().to_ascii_lowercase().as_str() {
            "hermitian" => {
                want(0)?;
                Ok(CurveSpec::Hermitian { p, k })
            }
            "hurwitz" => {
                want(1)?;
                Ok(CurveSpec::Hurwitz { n: params[0], p, k })
            }
            "generalized" | "generalized_hurwitz" => {
                want(2)?;
                Ok(CurveSpec::Generalized {
                    n: params[0],
                    l: params[1],
                    p,
                    k,
                })
            }
            "fermat" => {
                want(1)?;
                Ok(CurveSpec::Fermat { m: params[0], p, k })
            }
            other => Err(CurveError::Parse(format!("unknown family {other:?}"))),
        }
    }
}

//! Degree and genus bounds for plane maximal curves over `F_{q^2}`, in exact
//! arithmetic. Irrational bounds are [`QuadraticSurd`]s; every comparison
//! against an integer degree is exact.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::surd::{int, rat, QuadraticSurd, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("bound not applicable: {0}")]
    NotApplicable(String),
    #[error("negative discriminant {value} for {what}")]
    NegativeDiscriminant { what: &'static str, value: BigInt },
    #[error("{q} is not a power of the prime {p}")]
    NotPrimePower { p: u64, q: u64 },
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn ratq(q: u64) -> Rational {
    Rational::from_integer(big(q))
}

/// `(3 + sqrt(2(q-3)(q+1) + 9)) / 2`.
pub fn d1(q: u64) -> QuadraticSurd {
    let q = big(q);
    let r = BigInt::from(2) * (&q - 3) * (&q + 1) + 9;
    QuadraticSurd::new(rat(3, 2), rat(1, 2), Rational::from_integer(r))
}

/// `(q^2 + 2q + 1) / (2q - 1)`.
pub fn f_bound(q: u64) -> Rational {
    let q = big(q);
    Rational::new(&q * &q + &q * 2 + 1, &q * 2 - 1)
}

/// `floor((q+2)/2)`, except 3 at `q = 3` and 4 at `q = 5`.
pub fn d2(q: u64) -> Result<u64, BoundsError> {
    match q {
        0..=2 => Err(BoundsError::NotApplicable(format!(
            "d2 needs q >= 3, got {q}"
        ))),
        3 => Ok(3),
        5 => Ok(4),
        _ => Ok((q + 2) / 2),
    }
}

/// Half-open genus interval `(lo, hi]` with no nonsingular plane maximal curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl GenusInterval {
    pub fn contains(&self, g: u64) -> bool {
        let g = ratq(g);
        self.lo < g && g <= self.hi
    }
}

pub fn genus_exclusion_interval(q: u64) -> Result<GenusInterval, BoundsError> {
    if q < 4 || q == 5 {
        return Err(BoundsError::NotApplicable(format!(
            "genus interval needs q >= 4, q != 5, got {q}"
        )));
    }
    let qb = big(q);
    let (lo, hi) = if q.is_multiple_of(2) {
        (
            Rational::new(&qb * (&qb - 2), big(8)),
            Rational::new(&qb * (&qb - 2), big(4)),
        )
    } else {
        (
            Rational::new((&qb - 1) * (&qb - 3), big(8)),
            Rational::new((&qb - 1) * (&qb - 1), big(4)),
        )
    };
    Ok(GenusInterval { lo, hi })
}

/// Discriminant of `(Mq-1)d^2 - (q^2+3Mq-1)d + M(q+1)^2`.
pub fn delta_m(m: u64, q: u64) -> BigInt {
    let (m, q) = (big(m), big(q));
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    let q4 = &q3 * &q;
    q4 - (BigInt::from(4) * &m * &m - 6 * &m) * q3 + (&m * &m + 4 * &m - 2) * q2
        - (BigInt::from(4) * &m * &m - 2 * &m) * &q
        + 4 * &m
        + 1
}

fn m_q_root(m: u64, q: u64, sign: i64) -> Result<QuadraticSurd, BoundsError> {
    let delta = delta_m(m, q);
    if delta.is_negative() {
        return Err(BoundsError::NegativeDiscriminant {
            what: "delta_M",
            value: delta,
        });
    }
    let (mb, qb) = (big(m), big(q));
    let den = Rational::from_integer(BigInt::from(2) * (&mb * &qb - 1));
    let num = Rational::from_integer(&qb * &qb + 3 * &mb * &qb - 1);
    Ok(QuadraticSurd::over(
        num,
        int(sign),
        Rational::from_integer(delta),
        den,
    ))
}

/// Larger root `F(M,q)`.
pub fn f_mq(m: u64, q: u64) -> Result<QuadraticSurd, BoundsError> {
    m_q_root(m, q, 1)
}

/// Smaller root `F'(M,q)`.
pub fn fprime_mq(m: u64, q: u64) -> Result<QuadraticSurd, BoundsError> {
    m_q_root(m, q, -1)
}

/// `v` with `q = p^v`.
pub fn exponent_of(p: u64, q: u64) -> Result<u32, BoundsError> {
    match arith::prime_power_decomposition(q) {
        Some((pp, v)) if pp == p => Ok(v),
        _ => Err(BoundsError::NotPrimePower { p, q }),
    }
}

/// Lower degree threshold above which lines are classical.
pub fn d3(p: u64, q: u64) -> Result<u64, BoundsError> {
    let v = exponent_of(p, q)?;
    if p == 2 {
        match q {
            64 | 128 | 256 => Ok(q / 4 - 1),
            _ if q >= 512 => Ok(q / 4),
            _ => Err(BoundsError::NotApplicable(format!(
                "d3 needs q >= 64 for p = 2, got {q}"
            ))),
        }
    } else if v >= 3 {
        Ok(q / p - p + 2)
    } else {
        Err(BoundsError::NotApplicable(format!(
            "d3 needs q = p^v, v >= 3, got {q}"
        )))
    }
}

fn require_large(q: u64) -> Result<(), BoundsError> {
    if q == 8 || q >= 11 {
        Ok(())
    } else {
        Err(BoundsError::NotApplicable(format!(
            "needs q = 8 or q >= 11, got {q}"
        )))
    }
}

/// Larger root of `(5q-10)d^2 - (2q^2+15q-20)d + 5(q+1)^2`.
pub fn d4(q: u64) -> Result<QuadraticSurd, BoundsError> {
    require_large(q)?;
    let qb = big(q);
    let q2 = &qb * &qb;
    let r = BigInt::from(4) * &q2 * &q2 - 40 * &q2 * &qb + 145 * &q2 - 300 * &qb + 600;
    Ok(QuadraticSurd::over(
        Rational::from_integer(2 * &q2 + 15 * &qb - 20),
        int(1),
        Rational::from_integer(r),
        Rational::from_integer(10 * (&qb - 2)),
    ))
}

/// The `q = p^v`, `v >= 2` refinement of [`d4`].
pub fn d4pq(p: u64, q: u64) -> Result<QuadraticSurd, BoundsError> {
    let v = exponent_of(p, q)?;
    if v < 2 {
        return Err(BoundsError::NotApplicable(format!(
            "d4(p,q) needs q = p^v, v >= 2, got {q}"
        )));
    }
    let qr = ratq(q);
    let inv_p = rat(1, p as i64);
    let c = int(5) - &inv_p;
    let q2 = &qr * &qr;
    let num = int(2) * &q2 + int(3) * &c * &qr - int(8);
    let r = int(4) * &q2 * &q2 - int(8) * &c * &q2 * &qr
        + (int(113) - int(50) * &inv_p + int(9) * &inv_p * &inv_p) * &q2
        - int(4) * (int(25) - int(17) * &inv_p) * &qr
        + int(184);
    let den = int(2) * &c * &qr - int(12);
    if r.is_negative() {
        return Err(BoundsError::NegativeDiscriminant {
            what: "d4(p,q)",
            value: r.to_integer(),
        });
    }
    Ok(QuadraticSurd::over(num, int(1), r, den))
}

/// `d4(q)` when `q = p`, `d4(p,q)` otherwise.
pub fn d5(p: u64, q: u64) -> Result<QuadraticSurd, BoundsError> {
    require_large(q)?;
    if exponent_of(p, q)? == 1 {
        d4(q)
    } else {
        d4pq(p, q)
    }
}

/// `(q^2+15q-31 + sqrt(q^4-70q^3+203q^2-550q+1201)) / (2(5q-12))`; the
/// radicand is negative for `q <= 67`.
pub fn g_bound(q: u64) -> Result<QuadraticSurd, BoundsError> {
    let qb = big(q);
    let q2 = &qb * &qb;
    let r: BigInt = &q2 * &q2 - 70 * &q2 * &qb + 203 * &q2 - 550 * &qb + 1201;
    if r.is_negative() {
        return Err(BoundsError::NegativeDiscriminant {
            what: "G",
            value: r,
        });
    }
    Ok(QuadraticSurd::over(
        Rational::from_integer(&q2 + 15 * &qb - 31),
        int(1),
        Rational::from_integer(r),
        Rational::from_integer(2 * (5 * &qb - 12)),
    ))
}

/// `d <= bound`, exactly.
pub fn degree_at_most(d: u64, bound: &QuadraticSurd) -> bool {
    bound.cmp_rational(&ratq(d)) != Ordering::Less
}

/// Degrees `3 <= d <= q+1` that no bound excludes for a plane maximal curve.
pub fn admissible_degrees(p: u64, q: u64) -> Result<BTreeSet<u64>, BoundsError> {
    exponent_of(p, q)?;
    let mut out = BTreeSet::new();
    out.insert(q + 1);
    if q < 3 {
        return Ok(out);
    }
    let b1 = d1(q);
    let b2 = d2(q)?;
    let b5 = if q == 8 || q >= 11 {
        Some(d5(p, q)?)
    } else {
        None
    };
    let half = (q + 2) / 2;
    for d in 3..=q {
        let ok = degree_at_most(d, &b1)
            && d <= b2
            && b5
                .as_ref()
                .is_none_or(|b| d == half || degree_at_most(d, b));
        if ok {
            out.insert(d);
        }
    }
    Ok(out)
}

/// One row of the bound ladder for a given `q = p^v`.
#[derive(Debug, Clone, Serialize)]
pub struct LadderRow {
    pub q: u64,
    pub p: u64,
    pub d1: QuadraticSurd,
    pub f: String,
    pub d2: Option<u64>,
    pub d3: Option<u64>,
    pub d4: Option<QuadraticSurd>,
    pub d4pq: Option<QuadraticSurd>,
    pub d5: Option<QuadraticSurd>,
    pub g: Option<QuadraticSurd>,
    pub interval: Option<String>,
}

pub fn ladder_row(q: u64) -> Result<LadderRow, BoundsError> {
    let (p, _) =
        arith::prime_power_decomposition(q).ok_or(BoundsError::NotPrimePower { p: 0, q })?;
    Ok(LadderRow {
        q,
        p,
        d1: d1(q),
        f: f_bound(q).to_string(),
        d2: d2(q).ok(),
        d3: d3(p, q).ok(),
        d4: d4(q).ok(),
        d4pq: d4pq(p, q).ok(),
        d5: d5(p, q).ok(),
        g: g_bound(q).ok(),
        interval: genus_exclusion_interval(q)
            .ok()
            .map(|i| format!("({}, {}]", i.lo, i.hi)),
    })
}

pub const LADDER_HEADER: [&str; 16] = [
    "q",
    "p",
    "d1",
    "d1_approx",
    "F",
    "d2",
    "d3",
    "d4",
    "d4_approx",
    "d4pq",
    "d4pq_approx",
    "d5",
    "d5_approx",
    "G",
    "G_approx",
    "interval",
];

impl LadderRow {
    /// CSV fields; surds as `(a, b, r)` triples followed by a 12-digit hint.
    pub fn csv_fields(&self) -> Vec<String> {
        fn surd(s: &Option<QuadraticSurd>) -> [String; 2] {
            match s {
                Some(s) => [s.triple(), s.to_decimal(12)],
                None => [String::new(), String::new()],
            }
        }
        fn opt(x: Option<u64>) -> String {
            x.map(|x| x.to_string()).unwrap_or_default()
        }
        let mut v = vec![
            self.q.to_string(),
            self.p.to_string(),
            self.d1.triple(),
            self.d1.to_decimal(12),
            self.f.clone(),
            opt(self.d2),
            opt(self.d3),
        ];
        for s in [&self.d4, &self.d4pq, &self.d5, &self.g] {
            v.extend(surd(s));
        }
        v.push(self.interval.clone().unwrap_or_default());
        v
    }
}

/// The ladder for every prime power in `[lo, hi]` as CSV.
pub fn ladder_csv(lo: u64, hi: u64) -> Result<String, BoundsError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(LADDER_HEADER).expect("in-memory write");
    for q in arith::prime_powers_in(lo, hi) {
        w.write_record(ladder_row(q)?.csv_fields())
            .expect("in-memory write");
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8"))
}

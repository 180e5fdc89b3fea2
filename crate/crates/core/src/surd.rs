//! Exact real numbers of the form `a + b*sqrt(r)` with rational `a, b, r`,
//! `r >= 0`. Comparisons isolate radicals and square, tracking signs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn sign_of(x: &Rational) -> Ordering {
    x.numer().sign().cmp_zero()
}

trait SignExt {
    fn cmp_zero(&self) -> Ordering;
}

impl SignExt for Sign {
    fn cmp_zero(&self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// `a + b*sqrt(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: Rational,
    pub b: Rational,
    pub r: Rational,
}

/// Sign of `x + y*sqrt(r)`.
fn sign_single(x: &Rational, y: &Rational, r: &Rational) -> Ordering {
    let sx = sign_of(x);
    let sy = if r.is_zero() {
        Ordering::Equal
    } else {
        sign_of(y)
    };
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    // opposite signs: compare x^2 with y^2 r
    match (x * x).cmp(&(y * y * r)) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

impl QuadraticSurd {
    pub fn new(a: Rational, b: Rational, r: Rational) -> Self {
        assert!(!r.is_negative(), "negative radicand");
        Self { a, b, r }
    }

    pub fn rational(a: Rational) -> Self {
        Self::new(a, Rational::zero(), Rational::zero())
    }

    /// `(num_a + sqrt(r)) / den` style constructor: `(a + s*sqrt(r)) / den`.
    pub fn over(a: Rational, s: Rational, r: Rational, den: Rational) -> Self {
        Self::new(a / &den, s / den, r)
    }

    pub fn signum(&self) -> Ordering {
        sign_single(&self.a, &self.b, &self.r)
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, c: &Rational) -> Ordering {
        sign_single(&(&self.a - c), &self.b, &self.r)
    }

    pub fn cmp_int(&self, d: i64) -> Ordering {
        self.cmp_rational(&int(d))
    }

    /// Exact comparison of two surds with possibly different radicands.
    pub fn cmp_surd(&self, other: &Self) -> Ordering {
        // sign of (A + B sqrt(r1)) - C sqrt(r2)
        let a = &self.a - &other.a;
        let (b, r1) = (&self.b, &self.r);
        let (c, r2) = (&other.b, &other.r);
        let su = sign_single(&a, b, r1);
        let sv = if r2.is_zero() {
            Ordering::Equal
        } else {
            sign_of(c)
        };
        // value = u - v with v = c sqrt(r2)
        if sv == Ordering::Equal {
            return su;
        }
        if su == Ordering::Equal {
            return sv.reverse();
        }
        if su != sv {
            return su;
        }
        // same sign: compare u^2 = a^2 + b^2 r1 + 2ab sqrt(r1) with v^2 = c^2 r2
        let u2_minus_v2 = sign_single(&(&a * &a + b * b * r1 - c * c * r2), &(int(2) * &a * b), r1);
        if su == Ordering::Greater {
            u2_minus_v2
        } else {
            u2_minus_v2.reverse()
        }
    }

    /// Decimal expansion rounded down to `digits` fractional digits, exact
    /// (no floating point).
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = self.floor_scaled(&scale);
        let neg = scaled.is_negative();
        let mag = scaled.abs();
        let int_part = &mag / &scale;
        let frac = &mag % &scale;
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac.to_string(),
            width = digits as usize
        )
    }

    /// `floor(value * scale)`, exactly.
    pub fn floor_scaled(&self, scale: &BigInt) -> BigInt {
        let mut n = self.approx_scaled(scale);
        let at = |n: &BigInt| self.cmp_rational(&Rational::new(n.clone(), scale.clone()));
        while at(&n) == Ordering::Less {
            n -= 1;
        }
        while at(&(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    /// `value * scale` up to a couple of units, via integer square roots.
    fn approx_scaled(&self, scale: &BigInt) -> BigInt {
        let a = floor_div(&(self.a.numer() * scale), self.a.denom());
        if self.b.is_zero() || self.r.is_zero() {
            return a;
        }
        // sqrt(r) * scale = sqrt(rn * rd * scale^2) / rd
        let root = (self.r.numer() * self.r.denom() * scale * scale).sqrt();
        let root_scaled = floor_div(&root, self.r.denom());
        let b_part = floor_div(&(self.b.numer() * root_scaled), self.b.denom());
        a + b_part
    }

    /// Lossy, for display only.
    pub fn approx_f64(&self) -> f64 {
        self.to_decimal(17).parse().unwrap_or(f64::NAN)
    }

    /// `(a, b, r)` rendered with fractions.
    pub fn triple(&self) -> String {
        format!("({}, {}, {})", self.a, self.b, self.r)
    }
}

fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(n, d)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() || self.r.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.r)
        }
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadraticSurd", 4)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("r", &self.r.to_string())?;
        st.serialize_field("approx", &self.to_decimal(12))?;
        st.end()
    }
}

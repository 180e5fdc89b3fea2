//! Arithmetic in `F_{q^2}` with `q = p^k`, built as `F_p[t]/(f)` for the
//! lexicographically smallest monic irreducible `f` of degree `2k`.
//!
//! Elements are stored as their index `c_0 + c_1 p + ... + c_{2k-1} p^{2k-1}`,
//! so equality is structural and enumeration order is the index order.
//! Multiplication goes through discrete log / antilog tables that are built
//! lazily from schoolbook polynomial arithmetic; the schoolbook routines stay
//! available as an independent reference.

use std::fmt;
use std::ops;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

/// Default cap on the field order `q^2`.
pub const DEFAULT_FIELD_BUDGET: u64 = 1 << 20;

/// Marker for the logarithm of zero.
pub const LOG_ZERO: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent k must be at least 1")]
    ZeroExponent,
    #[error("field order {order} exceeds budget {budget}")]
    BudgetExceeded { order: u128, budget: u64 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid element encoding: {0}")]
    InvalidElement(String),
}

/// Prime power `q = p^k` and the concrete modulus defining `F_{q^2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: u32,
    pub ext_degree: u32,
    /// Coefficients from the constant term up; length `ext_degree + 1`, last entry 1.
    pub modulus: Vec<u32>,
}

impl FieldDescriptor {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Number of elements, `q^2`.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.ext_degree)
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[d] = log(1 + g^d)`.
    zech: Vec<u32>,
}

struct FieldInner {
    desc: FieldDescriptor,
    order: u32,
    tables: OnceLock<Tables>,
}

/// Shared handle to a constructed field. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.desc.p)
            .field("k", &self.inner.desc.k)
            .field("modulus", &self.inner.desc.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.desc == other.inner.desc
    }
}

impl Eq for Field {}

impl Field {
    /// `F_{p^{2k}}` with the default size budget.
    pub fn create(p: u64, k: u32) -> Result<Self, FieldError> {
        Self::create_with_budget(p, k, DEFAULT_FIELD_BUDGET)
    }

    pub fn create_with_budget(p: u64, k: u32, budget: u64) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let ext_degree = 2 * k;
        let order = (p as u128).checked_pow(ext_degree).unwrap_or(u128::MAX);
        if order > budget as u128 || order > u32::MAX as u128 {
            return Err(FieldError::BudgetExceeded { order, budget });
        }
        let p = p as u32;
        let modulus = smallest_irreducible(p, ext_degree as usize);
        Ok(Self {
            inner: Arc::new(FieldInner {
                desc: FieldDescriptor {
                    p,
                    k,
                    ext_degree,
                    modulus,
                },
                order: order as u32,
                tables: OnceLock::new(),
            }),
        })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.inner.desc
    }

    pub fn p(&self) -> u32 {
        self.inner.desc.p
    }

    pub fn k(&self) -> u32 {
        self.inner.desc.k
    }

    pub fn q(&self) -> u64 {
        self.inner.desc.q()
    }

    /// `q^2`.
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    pub fn ext_degree(&self) -> usize {
        self.inner.desc.ext_degree as usize
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of `t` (for `ext_degree >= 2`, always the case here).
    pub fn generator_t(&self) -> FieldElement {
        self.wrap(self.p())
    }

    /// The element `n * 1`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.p() as i64;
        self.wrap(n.rem_euclid(p) as u32)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index >= self.order() {
            return Err(FieldError::InvalidElement(format!(
                "index {index} out of range for field of order {}",
                self.order()
            )));
        }
        Ok(self.wrap(index))
    }

    /// Builds an element from coefficients `c_0, c_1, ...`; missing high
    /// coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        let p = self.p();
        if coeffs.len() > self.ext_degree() {
            return Err(FieldError::InvalidElement(format!(
                "{} coefficients for degree-{} extension",
                coeffs.len(),
                self.ext_degree()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(FieldError::InvalidElement(format!(
                "coefficient {c} not reduced mod {p}"
            )));
        }
        Ok(self.wrap(encode(coeffs, p)))
    }

    pub(crate) fn wrap(&self, index: u32) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index,
        }
    }

    /// Every element exactly once, in increasing index order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.wrap(i))
    }

    pub fn same_field(&self, other: &Field) -> bool {
        self == other
    }

    /// Coefficients of the element with the given index.
    pub fn coeffs_of(&self, index: u32) -> Vec<u32> {
        decode(index, self.p(), self.ext_degree())
    }

    fn tables(&self) -> &Tables {
        self.inner.tables.get_or_init(|| build_tables(self))
    }

    /// Forces construction of the log tables (otherwise built on first use).
    pub fn prepare(&self) {
        let _ = self.tables();
    }

    // ---- raw index arithmetic -------------------------------------------

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            out += s * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        let p = self.p();
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 {
            let c = a % p;
            out += ((p - c) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    /// Multiplicative group order `q^2 - 1`.
    #[inline]
    pub fn group_order(&self) -> u32 {
        self.order() - 1
    }

    /// Discrete log to the table generator, or [`LOG_ZERO`] for zero.
    #[inline]
    pub fn log_raw(&self, a: u32) -> u32 {
        self.tables().log[a as usize]
    }

    /// `g^e` for `0 <= e < q^2 - 1`; [`LOG_ZERO`] maps to zero.
    #[inline]
    pub fn exp_raw(&self, e: u32) -> u32 {
        if e == LOG_ZERO {
            0
        } else {
            self.tables().exp[e as usize]
        }
    }

    /// Zech logarithm: `log(1 + g^d)`, possibly [`LOG_ZERO`].
    #[inline]
    pub fn zech_raw(&self, d: u32) -> u32 {
        self.tables().zech[d as usize]
    }

    /// Sum of two elements given by their logs; result is a log.
    #[inline]
    pub fn add_logs(&self, a: u32, b: u32) -> u32 {
        if a == LOG_ZERO {
            return b;
        }
        if b == LOG_ZERO {
            return a;
        }
        let n = self.group_order();
        let d = if b >= a { b - a } else { b + n - a };
        let z = self.zech_raw(d);
        if z == LOG_ZERO {
            LOG_ZERO
        } else {
            let s = a as u64 + z as u64;
            (s % n as u64) as u32
        }
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.tables();
        let n = self.group_order() as u64;
        let e = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % n;
        t.exp[e as usize]
    }

    pub fn inv_raw(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let t = self.tables();
        let n = self.group_order();
        let l = t.log[a as usize];
        Ok(t.exp[((n - l) % n) as usize])
    }

    pub fn pow_raw(&self, a: u32, e: i64) -> Result<u32, FieldError> {
        if a == 0 {
            return match e.signum() {
                1 => Ok(0),
                0 => Ok(1),
                _ => Err(FieldError::DivisionByZero),
            };
        }
        let t = self.tables();
        let n = self.group_order() as i128;
        let l = t.log[a as usize] as i128;
        let idx = (l * e as i128).rem_euclid(n);
        Ok(t.exp[idx as usize])
    }

    /// Multiplication by explicit polynomial product and reduction, bypassing
    /// the log tables.
    pub fn mul_schoolbook(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        let d = self.ext_degree();
        let x = decode(a, p, d);
        let y = decode(b, p, d);
        let prod = poly_mul(&x, &y, p);
        let r = poly_rem(&prod, &self.inner.desc.modulus, p);
        encode(&r, p)
    }

    /// Square-and-multiply on the schoolbook product; `e >= 0`.
    pub fn pow_schoolbook(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            e >>= 1;
        }
        acc
    }
}

fn build_tables(field: &Field) -> Tables {
    let order = field.order() as usize;
    let n = order - 1;
    let factors = arith::prime_factors(n as u64);
    let generator = (1..order as u32)
        .find(|&c| {
            factors
                .iter()
                .all(|&r| field.pow_schoolbook(c, n as u64 / r) != 1)
        })
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = Vec::with_capacity(n);
    let mut log = vec![LOG_ZERO; order];
    let mut cur = 1u32;
    for i in 0..n {
        exp.push(cur);
        log[cur as usize] = i as u32;
        cur = field.mul_schoolbook(cur, generator);
    }
    debug_assert_eq!(cur, 1);
    let zech = exp
        .iter()
        .map(|&x| log[field.add_raw(1, x) as usize])
        .collect();
    Tables { exp, log, zech }
}

/// A field element: fixed-length reduced coefficient vector, stored by index.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    index: u32,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.index.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let mut parts = Vec::new();
        for (deg, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = match (deg, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (d, 1) => format!("t^{d}"),
                (d, c) => format!("{c}t^{d}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Coefficients `c_0 .. c_{2k-1}`, each in `[0, p)`.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs_of(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    pub fn is_one(&self) -> bool {
        self.index == 1
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.add_raw(self.index, other.index)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.sub_raw(self.index, other.index)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.mul_raw(self.index, other.index)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let inv = self.field.inv_raw(other.index)?;
        Ok(self.field.wrap(self.field.mul_raw(self.index, inv)))
    }

    pub fn neg(&self) -> Self {
        self.field.wrap(self.field.neg_raw(self.index))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(self.field.wrap(self.field.inv_raw(self.index)?))
    }

    /// `self^e`; negative `e` requires a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        Ok(self.field.wrap(self.field.pow_raw(self.index, e)?))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self) -> Self {
        self.field.wrap(
            self.field
                .pow_raw(self.index, self.field.p() as i64)
                .unwrap(),
        )
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics if the operands belong to different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs)
                    .expect("field arithmetic on mixed fields")
            }
        }
        impl ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(&self)
    }
}

// ---- dense polynomials over F_p (low degree first) ------------------------

pub(crate) fn decode(mut index: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = index % p;
        index /= p;
    }
    out
}

pub(crate) fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    arith::mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

/// Remainder of `a` modulo `m` (leading coefficient of `m` nonzero).
/// Returns exactly `deg(m)` coefficients.
pub(crate) fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p) as u64;
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let mut i = r.len();
    while i > dm {
        i -= 1;
        let c = r[i] % p64;
        if c == 0 {
            continue;
        }
        let factor = c * lead_inv % p64;
        let shift = i - dm;
        for (j, &mj) in m.iter().enumerate() {
            let sub = factor * mj as u64 % p64;
            r[shift + j] = (r[shift + j] + p64 - sub) % p64;
        }
    }
    let mut out: Vec<u32> = r.into_iter().take(dm).map(|c| (c % p64) as u32).collect();
    out.resize(dm, 0);
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for tail in 0..count {
            let mut g = decode(tail as u32, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `deg`, comparing
/// coefficient sequences from the constant term up.
pub(crate) fn smallest_irreducible(p: u32, deg: usize) -> Vec<u32> {
    let count = (p as u64).pow(deg as u32);
    for n in 0..count {
        // constant term is the most significant digit of n
        let mut f: Vec<u32> = decode(n as u32, p, deg);
        f.reverse();
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

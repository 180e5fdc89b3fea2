use std::cmp::Ordering;

use maxcurve::arith::{is_prime, prime_power_decomposition, prime_powers_in};
use maxcurve::bounds::{
    d1, d2, d3, d4, d4pq, d5, degree_at_most, delta_m, f_bound, f_mq, fprime_mq, g_bound,
};
use maxcurve::surd::{int, rat, QuadraticSurd, Rational};
use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const DIGITS: u32 = 50;

/// Independent decimal oracle: `floor(x * 10^DIGITS)` for `x = a + b*sqrt(r)`,
/// returned as a closed interval (exact when `r * 10^(2 DIGITS)` is a square
/// of a rational with the same denominator, otherwise one unit wide).
fn decimal_interval(s: &QuadraticSurd) -> (BigInt, BigInt) {
    let scale = BigInt::from(10u32).pow(DIGITS);
    // sqrt(r) = sqrt(num * den) / den
    let (rn, rd) = (s.r.numer().clone(), s.r.denom().clone());
    let radicand = &rn * &rd * &scale * &scale * BigInt::from(10u32).pow(4);
    let root = radicand.sqrt();
    let exact = &root * &root == radicand;
    // root / (den * 100) approximates sqrt(r) * scale from below
    let den = &rd * BigInt::from(100u32);
    let root_lo = Rational::new(root.clone(), den.clone());
    let root_hi = if exact {
        root_lo.clone()
    } else {
        Rational::new(root + 1, den)
    };
    let a_scaled = &s.a * Rational::from_integer(scale.clone());
    let (t1, t2) = (&s.b * &root_lo, &s.b * &root_hi);
    let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
    (
        (&a_scaled + lo).floor().to_integer(),
        (&a_scaled + hi).ceil().to_integer(),
    )
}

/// `d <= s` decided from 50-digit decimals; `None` if the interval straddles `d`.
fn oracle_at_most(d: u64, s: &QuadraticSurd) -> Option<bool> {
    let target = BigInt::from(d) * BigInt::from(10u32).pow(DIGITS);
    let (lo, hi) = decimal_interval(s);
    if target <= lo && (lo < hi || target == lo) {
        Some(true)
    } else if target > hi {
        Some(false)
    } else if lo == hi {
        Some(target <= lo)
    } else {
        None
    }
}

fn oracle_cmp(x: &QuadraticSurd, y: &QuadraticSurd) -> Option<Ordering> {
    let (xl, xh) = decimal_interval(x);
    let (yl, yh) = decimal_interval(y);
    if xh < yl {
        Some(Ordering::Less)
    } else if yh < xl {
        Some(Ordering::Greater)
    } else if xl == xh && yl == yh && xl == yl {
        Some(Ordering::Equal)
    } else {
        None
    }
}

fn prime_powers(lo: u64, hi: u64) -> Vec<(u64, u64, u32)> {
    prime_powers_in(lo, hi)
        .into_iter()
        .map(|q| {
            let (p, v) = prime_power_decomposition(q).unwrap();
            (q, p, v)
        })
        .collect()
}

#[test]
fn oracle_self_check() {
    let sqrt2 = QuadraticSurd::new(int(0), int(1), int(2));
    let (lo, hi) = decimal_interval(&sqrt2);
    assert_eq!(
        lo.to_string(),
        "141421356237309504880168872420969807856967187537694"
    );
    assert!(hi - lo <= BigInt::from(1));
    assert_eq!(oracle_at_most(1, &sqrt2), Some(true));
    assert_eq!(oracle_at_most(2, &sqrt2), Some(false));
    // 1 + sqrt(9/4) = 5/2, exact
    let exact = QuadraticSurd::new(int(1), int(1), rat(9, 4));
    assert_eq!(decimal_interval(&exact).0, decimal_interval(&exact).1);
}

fn random_surd_bound(kind: u8, m: u64, q: u64) -> Option<QuadraticSurd> {
    match kind % 6 {
        0 => Some(d1(q)),
        1 => f_mq(m, q).ok(),
        2 => fprime_mq(m, q).ok(),
        3 => d4(q).ok(),
        4 => prime_power_decomposition(q).and_then(|(p, _)| d4pq(p, q).ok()),
        _ => g_bound(q).ok(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exact_degree_comparison_agrees_with_decimals(
        kind in 0u8..6,
        m in 2u64..20,
        qi in 0usize..400,
        d in 0u64..5000,
    ) {
        let qs = prime_powers_in(2, 1 << 14);
        let q = qs[qi % qs.len()];
        if let Some(bound) = random_surd_bound(kind, m, q) {
            // aim d near the bound half of the time
            let near = bound.approx_f64().max(0.0) as u64;
            let d = if d % 2 == 0 { near.saturating_sub(2) + d % 5 } else { d };
            if let Some(expected) = oracle_at_most(d, &bound) {
                prop_assert_eq!(degree_at_most(d, &bound), expected, "d = {}, bound = {}", d, bound.triple());
            }
        }
    }

    #[test]
    fn surd_comparison_agrees_with_decimals(
        a1 in -500i64..500, b1 in -50i64..50, r1 in 0i64..400, den1 in 1i64..30,
        a2 in -500i64..500, b2 in -50i64..50, r2 in 0i64..400, den2 in 1i64..30,
    ) {
        let x = QuadraticSurd::new(rat(a1, den1), rat(b1, den1), int(r1));
        let y = QuadraticSurd::new(rat(a2, den2), rat(b2, den2), int(r2));
        if let Some(expected) = oracle_cmp(&x, &y) {
            prop_assert_eq!(x.cmp_surd(&y), expected);
            prop_assert_eq!(y.cmp_surd(&x), expected.reverse());
        }
        prop_assert_eq!(x.cmp_surd(&x), Ordering::Equal);
        let sign = match decimal_interval(&x) {
            (lo, _) if lo.is_positive() => Some(Ordering::Greater),
            (_, hi) if hi.is_negative() => Some(Ordering::Less),
            (lo, hi) if lo.is_zero() && hi.is_zero() => Some(Ordering::Equal),
            _ => None,
        };
        if let Some(s) = sign {
            prop_assert_eq!(x.signum(), s);
        }
    }

    #[test]
    fn decimal_rendering_is_an_exact_floor(a in -500i64..500, b in -50i64..50, r in 0i64..400, den in 1i64..30) {
        let x = QuadraticSurd::new(rat(a, den), rat(b, den), int(r));
        let (lo, hi) = decimal_interval(&x);
        let scale = BigInt::from(10u32).pow(DIGITS);
        let floor = x.floor_scaled(&scale);
        prop_assert!(lo <= floor && floor <= hi);
        if lo == hi {
            prop_assert_eq!(floor, lo);
        }
    }
}

#[test]
fn f_below_half_q_plus_three() {
    for (q, _, _) in prime_powers(6, 1 << 10) {
        assert!(f_bound(q) < rat(q as i64 + 3, 2), "q = {q}");
    }
}

#[test]
fn d1_dominates_d2() {
    for (q, _, _) in prime_powers(3, 1 << 10) {
        let d = d2(q).unwrap();
        assert!(degree_at_most(d, &d1(q)), "q = {q}");
    }
}

/// The sign pattern of the discriminant: negative exactly at q in {4,8,16,32}
/// for M = 4 (powers of two), and exactly at q in {p, p^2} for M = p >= 3.
#[test]
fn delta_sign_pattern() {
    for q in (2..=14).map(|e| 1u64 << e) {
        assert_eq!(
            delta_m(4, q).is_negative(),
            matches!(q, 4 | 8 | 16 | 32),
            "M = 4, q = {q}"
        );
    }
    for m in [3u64, 5, 7, 11, 13] {
        assert!(is_prime(m));
        let mut q = m;
        while q <= 1 << 14 {
            assert_eq!(
                delta_m(m, q).is_negative(),
                q == m || q == m * m,
                "M = {m}, q = {q}"
            );
            q *= m;
        }
    }
}

#[test]
fn f_four_q_comparisons() {
    for q in [64u64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384] {
        assert_eq!(
            fprime_mq(4, q).unwrap().cmp_int(4),
            Ordering::Greater,
            "q = {q}"
        );
        let f = f_mq(4, q).unwrap();
        let cap = if q <= 256 { q / 4 - 1 } else { q / 4 };
        assert_eq!(f.cmp_int(cap as i64), Ordering::Less, "q = {q}");
    }
    for p in [3u64, 5, 7, 11, 13] {
        let mut q = p * p * p;
        while q <= 1 << 14 {
            let f = f_mq(p, q).unwrap();
            assert_eq!(
                f.cmp_int((q / p + 1) as i64),
                Ordering::Less,
                "p = {p}, q = {q}"
            );
            q *= p;
        }
    }
}

#[test]
fn ladder_orderings() {
    let mut strict_pq = 0;
    let mut g_checked = 0;
    for (q, p, v) in prime_powers(8, 1 << 14) {
        if let (Ok(lower), Ok(upper)) = (d3(p, q), d4(q)) {
            assert_eq!(
                upper.cmp_int(lower as i64),
                Ordering::Greater,
                "d4 > d3 at q = {q}"
            );
        }
        if v >= 2 && q >= 16 {
            let refined = d4pq(p, q).unwrap();
            assert_eq!(
                refined.cmp_surd(&d4(q).unwrap()),
                Ordering::Greater,
                "q = {q}"
            );
            strict_pq += 1;
        }
        if let (Ok(g), Ok(d)) = (g_bound(q), d5(p, q)) {
            assert_eq!(g.cmp_surd(&d), Ordering::Less, "G < d5 at q = {q}");
            g_checked += 1;
        }
    }
    assert!(strict_pq > 20 && g_checked > 5);
    // q = 8: the refinement coincides with the prime-field bound
    assert_eq!(
        d4pq(2, 8).unwrap().cmp_surd(&d4(8).unwrap()),
        Ordering::Equal
    );
}

#[test]
fn zero_sign_helper() {
    // guards the oracle's sign handling of negative coefficients
    let neg = QuadraticSurd::new(int(0), int(-1), int(2));
    let (lo, hi) = decimal_interval(&neg);
    assert_eq!(lo.sign(), Sign::Minus);
    assert!(hi <= BigInt::zero());
}

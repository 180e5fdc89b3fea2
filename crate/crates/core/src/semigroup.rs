//! Numerical semigroups: closure from generators, the parametrised set for
//! generalized Hurwitz curves, gaps, and the divisor bookkeeping of monomials.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generators have gcd {0}, not 1")]
    GcdNotOne(u64),
    #[error("no generators given")]
    Empty,
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("membership rule is not additively closed: {a} + {b}")]
    NotClosed { a: u64, b: u64 },
    #[error("0 is not a member")]
    MissingZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    membership: Vec<bool>,
    gaps: Vec<u64>,
}

fn gcd_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, arith::gcd)
}

impl NumericalSemigroup {
    /// Additive closure of `gens`. The table is extended until it ends in a
    /// run of `min(gens)` consecutive members, after which every integer is a member.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(SemigroupError::Empty);
        }
        let g = gcd_all(gens.iter().copied());
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }
        let a = gens[0];
        let b = gens.get(1).copied().unwrap_or(1);
        let mut bound = (2 * a * b).max(2) as usize;
        loop {
            let mut membership = vec![false; bound + 1];
            membership[0] = true;
            for x in 1..=bound {
                membership[x] = gens
                    .iter()
                    .any(|&g| g as usize <= x && membership[x - g as usize]);
            }
            let run = a as usize;
            if membership.len() > run && membership[bound + 1 - run..].iter().all(|&m| m) {
                return Ok(Self::from_table(membership));
            }
            bound *= 2;
        }
    }

    /// Semigroup given by a membership predicate on `[0, bound]`. The predicate
    /// must contain 0, be additively closed within the bound, and its members
    /// must have gcd 1; gaps are taken below `bound`.
    pub fn from_membership(bound: u64, rule: impl Fn(u64) -> bool) -> Result<Self, SemigroupError> {
        let membership: Vec<bool> = (0..=bound).map(&rule).collect();
        if !membership[0] {
            return Err(SemigroupError::MissingZero);
        }
        let members: Vec<u64> = (1..=bound).filter(|&x| membership[x as usize]).collect();
        let g = gcd_all(members.iter().copied());
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                if a + b > bound {
                    break;
                }
                if !membership[(a + b) as usize] {
                    return Err(SemigroupError::NotClosed { a, b });
                }
            }
        }
        Ok(Self::from_table(membership))
    }

    fn from_table(membership: Vec<bool>) -> Self {
        // minimal generators: nonzero members that are not sums of two nonzero members
        let members: Vec<u64> = (1..membership.len() as u64)
            .filter(|&x| membership[x as usize])
            .collect();
        let generators = members
            .iter()
            .copied()
            .filter(|&x| {
                !members
                    .iter()
                    .take_while(|&&a| 2 * a <= x)
                    .any(|&a| membership[(x - a) as usize])
            })
            .collect();
        let gaps = membership
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(i, _)| i as u64)
            .collect();
        Self {
            generators,
            membership,
            gaps,
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Largest integer covered by the membership table.
    pub fn bound(&self) -> u64 {
        self.membership.len() as u64 - 1
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Number of gaps; the genus of the semigroup.
    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// Largest gap, or `None` for `N_0` itself.
    pub fn frobenius_number(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    pub fn conductor(&self) -> u64 {
        self.frobenius_number().map_or(0, |f| f + 1)
    }

    pub fn contains(&self, x: u64) -> bool {
        match self.membership.get(x as usize) {
            Some(&m) => m,
            None => true,
        }
    }

    pub fn report(&self) -> SemigroupReport {
        SemigroupReport {
            generators: self.generators.clone(),
            gaps: self.gaps.clone(),
            frobenius: self.frobenius_number(),
            genus: self.genus(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub generators: Vec<u64>,
    pub gaps: Vec<u64>,
    pub frobenius: Option<u64>,
    pub genus: u64,
}

/// `{s(n-1) + 1 : 1 <= s <= n}`.
pub fn hurwitz_generators(n: u64) -> Vec<u64> {
    (1..=n).map(|s| s * (n - 1) + 1).collect()
}

fn check_coprime_pair(n: u64, l: u64) -> Result<(), SemigroupError> {
    if l < 1 || n <= l {
        return Err(SemigroupError::BadParameters(format!(
            "need n > l >= 1, got n = {n}, l = {l}"
        )));
    }
    if arith::gcd(n, l) != 1 {
        return Err(SemigroupError::NotCoprime { a: n, b: l });
    }
    Ok(())
}

fn member_of_rule(n: i64, l: i64, x: i64) -> bool {
    // x = (n-l)s + nt with t >= 0, -lt <= ns and ls <= (n-l)t
    // each admissible pair has x >= t(n^2 - nl + l^2)/n >= t
    (0..=x).any(|t| {
        let rest = x - n * t;
        rest % (n - l) == 0 && {
            let s = rest / (n - l);
            -l * t <= n * s && l * s <= (n - l) * t
        }
    })
}

/// Membership in `{(n-l)s + nt : t >= 0, -lt/n <= s <= (n-l)t/l}`.
/// `l = 1` is accepted as well, where the set is the Hurwitz semigroup.
pub fn generalized_membership(n: u64, l: u64, x: u64) -> Result<bool, SemigroupError> {
    check_coprime_pair(n, l)?;
    Ok(member_of_rule(n as i64, l as i64, x as i64))
}

/// The parametrised set as a semigroup, tabulated up to `2(n^2 - nl + l^2)`.
pub fn generalized_semigroup(n: u64, l: u64) -> Result<NumericalSemigroup, SemigroupError> {
    check_coprime_pair(n, l)?;
    let bound = 2 * (n * n - n * l + l * l);
    NumericalSemigroup::from_membership(bound, |x| member_of_rule(n as i64, l as i64, x as i64))
}

/// Orders of `x^s y^t` at `(Q2, Q0, Q1)`: `(ns + lt, -ls + (n-l)t, -((n-l)s + nt))`.
pub fn monomial_divisor_coefficients(n: i64, l: i64, s: i64, t: i64) -> (i64, i64, i64) {
    (n * s + l * t, -l * s + (n - l) * t, -((n - l) * s + n * t))
}

/// Smallest divisor of `value` that belongs to `sg`.
pub fn gcd_membership_argument(value: u64, sg: &NumericalSemigroup) -> Option<u64> {
    arith::divisors(value).into_iter().find(|&d| sg.contains(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        assert_eq!(
            NumericalSemigroup::from_generators(&[2, 3]).unwrap().gaps(),
            &[1]
        );
        let h3 = NumericalSemigroup::from_generators(&[3, 5, 7]).unwrap();
        assert_eq!(h3.gaps(), &[1, 2, 4]);
        assert_eq!(h3.genus(), 3);
        assert_eq!(
            NumericalSemigroup::from_generators(&[4, 6]).unwrap_err(),
            SemigroupError::GcdNotOne(2)
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[]).unwrap_err(),
            SemigroupError::Empty
        );
        let n0 = NumericalSemigroup::from_generators(&[1]).unwrap();
        assert!(n0.gaps().is_empty());
        assert_eq!(n0.frobenius_number(), None);
    }

    #[test]
    fn non_coprime_smallest_generators() {
        // {4, 6, 7}: gaps 1, 2, 3, 5, 9
        let s = NumericalSemigroup::from_generators(&[6, 4, 7]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 3, 5, 9]);
        assert_eq!(s.conductor(), 10);
    }

    #[test]
    fn two_generator_frobenius() {
        for a in 2..15u64 {
            for b in a + 1..25 {
                if arith::gcd(a, b) == 1 {
                    let s = NumericalSemigroup::from_generators(&[a, b]).unwrap();
                    assert_eq!(s.frobenius_number(), Some(a * b - a - b));
                    assert_eq!(s.genus(), (a - 1) * (b - 1) / 2);
                }
            }
        }
    }

    #[test]
    fn hurwitz_generator_sets() {
        assert_eq!(hurwitz_generators(2), vec![2, 3]);
        assert_eq!(hurwitz_generators(3), vec![3, 5, 7]);
        assert_eq!(hurwitz_generators(4), vec![4, 7, 10, 13]);
    }

    #[test]
    fn generalized_membership_examples() {
        assert_eq!(generalized_membership(3, 2, 0), Ok(true));
        assert_eq!(generalized_semigroup(5, 2).unwrap().genus(), 9);
        let h = NumericalSemigroup::from_generators(&[3, 5, 7]).unwrap();
        for x in 0..=20 {
            assert_eq!(
                generalized_membership(3, 1, x).unwrap(),
                h.contains(x),
                "x = {x}"
            );
        }
        assert_eq!(
            generalized_membership(4, 2, 3),
            Err(SemigroupError::NotCoprime { a: 4, b: 2 })
        );
        assert!(matches!(
            generalized_membership(2, 3, 3),
            Err(SemigroupError::BadParameters(_))
        ));
    }

    #[test]
    fn membership_rule_validation() {
        assert_eq!(
            NumericalSemigroup::from_membership(10, |x| x != 0).unwrap_err(),
            SemigroupError::MissingZero
        );
        assert_eq!(
            NumericalSemigroup::from_membership(10, |x| x % 2 == 0).unwrap_err(),
            SemigroupError::GcdNotOne(2)
        );
        assert_eq!(
            NumericalSemigroup::from_membership(10, |x| x == 0 || x == 3 || x == 5 || x >= 7)
                .unwrap_err(),
            SemigroupError::NotClosed { a: 3, b: 3 }
        );
        let s = NumericalSemigroup::from_membership(20, |x| x == 0 || x >= 3).unwrap();
        assert_eq!(s.generators(), &[3, 4, 5]);
    }

    #[test]
    fn monomial_divisors() {
        assert_eq!(monomial_divisor_coefficients(3, 1, 2, 1), (7, 0, -7));
        // at l = 1 the monomial x^{s-1} y has divisor (n(s-1)+1, n-s, -(s(n-1)+1))
        let n = 3;
        for s in 1..=n {
            assert_eq!(
                monomial_divisor_coefficients(n, 1, s - 1, 1),
                (n * (s - 1) + 1, n - s, -(s * (n - 1) + 1))
            );
        }
        assert_eq!(monomial_divisor_coefficients(3, 2, 1, 1), (5, -1, -4));
    }

    #[test]
    fn smallest_member_divisor() {
        let h3 = NumericalSemigroup::from_generators(&hurwitz_generators(3)).unwrap();
        assert_eq!(gcd_membership_argument(7, &h3), Some(7));
        let h4 = NumericalSemigroup::from_generators(&hurwitz_generators(4)).unwrap();
        assert_eq!(gcd_membership_argument(13, &h4), Some(13));
        let s = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        assert_eq!(gcd_membership_argument(6, &s), Some(2));
    }
}

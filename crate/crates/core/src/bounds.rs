//! Upper bounds on the size of strong unitary `t`-designs produced by the
//! inductive construction.
//!
//! With `L(n, t)` the smallest size reached, `L(1, t) = t + 1` and
//! `L(n, t) ≤ (L(m, t)·L(n−m, t))^{|Λ̃(m,t)|+1}` for every `1 ≤ m ≤ n/2`,
//! where `Λ̃(m, t)` is the set of nonempty partitions of weight at most `t`
//! with at most `m` parts.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::repindex::{partitions, spherical_kappas};

/// `|Λ̃(m, t)|`.
pub fn lambda_tilde_size(m: usize, t: u32) -> usize {
    spherical_kappas(m, t).len()
}

/// Number of partitions of `k`.
pub fn partition_count(k: u32) -> usize {
    partitions(k, k as usize).len()
}

/// `Σ_{k=1}^t p(k)`, which bounds `|Λ̃(m, t)|` and equals it for `t ≤ m`.
pub fn partition_sum(t: u32) -> usize {
    (1..=t).map(partition_count).sum()
}

/// `C(m+t, m) − 1`, the bound for fixed `m`.
pub fn binomial_sum(m: usize, t: u32) -> u128 {
    binomial((m + t as usize) as u128, m as u128) - 1
}

/// The recursive bound using the split `m` at the top level and the best
/// split below.
pub fn size_bound_split(n: usize, m: usize, t: u32) -> Option<BigUint> {
    if n == 1 {
        return Some(BigUint::from(t + 1));
    }
    if m == 0 || 2 * m > n {
        return None;
    }
    let base = size_bound(m, t) * size_bound(n - m, t);
    Some(base.pow(lambda_tilde_size(m, t) as u32 + 1))
}

/// The smallest recursive bound over all splits.
pub fn size_bound(n: usize, t: u32) -> BigUint {
    if n <= 1 {
        return BigUint::from(t + 1);
    }
    (1..=n / 2)
        .filter_map(|m| size_bound_split(n, m, t))
        .min()
        .expect("n ≥ 2 has a split")
}

/// `Some(e)` when `x = base^e`.
pub fn as_power(x: &BigUint, base: u32) -> Option<u32> {
    if base < 2 || x.is_zero() {
        return None;
    }
    let b = BigUint::from(base);
    let mut rest = x.clone();
    let mut e = 0;
    while !rest.is_one() {
        if !(&rest % &b).is_zero() {
            return None;
        }
        rest /= &b;
        e += 1;
    }
    Some(e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTable {
    pub n: usize,
    pub m: usize,
    pub t: u32,
    /// Decimal digits of the bound.
    pub bound: String,
    /// Exponent `e` when the bound is `(t+1)^e`.
    pub exponent: Option<u32>,
    pub lambda_tilde: usize,
    pub partition_sum: usize,
    pub binomial_sum: String,
    /// Bounds `L(k, t)` for `k = 1..=n` with the best split.
    pub ladder: Vec<(usize, String)>,
}

pub fn bound_table(n: usize, m: usize, t: u32) -> Option<BoundTable> {
    let bound = size_bound_split(n, m, t)?;
    Some(BoundTable {
        n,
        m,
        t,
        exponent: as_power(&bound, t + 1),
        bound: bound.to_string(),
        lambda_tilde: lambda_tilde_size(m.max(1), t),
        partition_sum: partition_sum(t),
        binomial_sum: binomial_sum(m.max(1), t).to_string(),
        ladder: (1..=n).map(|k| (k, size_bound(k, t).to_string())).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five(e: u32) -> BigUint {
        BigUint::from(5u32).pow(e)
    }

    #[test]
    fn known_bounds() {
        assert_eq!(size_bound(1, 4), BigUint::from(5u32));
        assert_eq!(size_bound_split(2, 1, 4).unwrap(), five(10));
        assert_eq!(size_bound_split(3, 1, 4).unwrap(), five(55));
        assert_eq!(size_bound_split(4, 1, 4).unwrap(), five(280));
        assert_eq!(size_bound_split(4, 2, 4).unwrap(), five(180));
        assert_eq!(size_bound(4, 4), five(180));
        assert_eq!(size_bound_split(3, 1, 3).unwrap(), BigUint::from(4u32).pow(36));
        assert!(size_bound_split(4, 3, 4).is_none());
    }

    #[test]
    fn closed_forms_in_t() {
        for t in 1..=6u32 {
            let b = t + 1;
            assert_eq!(as_power(&size_bound_split(2, 1, t).unwrap(), b), Some(2 * (t + 1)));
            assert_eq!(
                as_power(&size_bound_split(3, 1, t).unwrap(), b),
                Some((2 * (t + 1) + 1) * (t + 1))
            );
        }
    }

    #[test]
    fn partition_estimates() {
        assert_eq!(partition_count(4), 5);
        for t in 1..=6 {
            for m in 1..=4 {
                let size = lambda_tilde_size(m, t);
                assert!(size <= partition_sum(t));
                assert!(size as u128 <= binomial_sum(m, t));
                if t as usize <= m {
                    assert_eq!(size, partition_sum(t));
                }
            }
        }
        assert_eq!(lambda_tilde_size(1, 4) as u128, binomial_sum(1, 4));
    }

    #[test]
    fn table_reports_exponent() {
        let table = bound_table(4, 2, 4).unwrap();
        assert_eq!(table.exponent, Some(180));
        assert_eq!(table.lambda_tilde, 8);
    }
}

//! Lattice points and multi-indices.

use crate::rational::{binomial, factorial, one, qi, Q};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of `Z^d`.
pub type Point = Vec<i64>;

/// A multi-index `μ ∈ N_0^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|μ|`.
    pub fn abs(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn factorial(&self) -> Q {
        self.0.iter().fold(one(), |acc, &m| acc * factorial(m))
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `binom(self, beta)` as a product of binomials; zero unless `beta ≤ self`.
    pub fn binom(&self, beta: &MultiIndex) -> Q {
        self.0.iter().zip(&beta.0).fold(one(), |acc, (&m, &b)| acc * binomial(m, b))
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All `β ≤ self`.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(Vec::new())];
        for &m in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (m as usize + 1));
            for b in &out {
                for k in 0..=m {
                    let mut v = b.0.clone();
                    v.push(k);
                    next.push(MultiIndex(v));
                }
            }
            out = next;
        }
        out
    }

    /// `x^μ` for an integer point.
    pub fn pow_int(&self, x: &[i64]) -> BigInt {
        let mut acc = BigInt::from(1);
        for (&xi, &m) in x.iter().zip(&self.0) {
            for _ in 0..m {
                acc *= xi;
            }
        }
        acc
    }

    /// `x^μ` for a rational point.
    pub fn pow_q(&self, x: &[Q]) -> Q {
        let mut acc = one();
        for (xi, &m) in x.iter().zip(&self.0) {
            for _ in 0..m {
                acc *= xi;
            }
        }
        acc
    }

    /// `x^μ` in floating point.
    pub fn pow_f64(&self, x: &[f64]) -> f64 {
        x.iter().zip(&self.0).map(|(xi, &m)| xi.powi(m as i32)).product()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

/// Multi-indices of degree exactly `k`, ordered with larger leading entries first.
pub fn of_degree(d: usize, k: u32) -> Vec<MultiIndex> {
    fn rec(d: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if d == 1 {
            prefix.push(k);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=k).rev() {
            prefix.push(first);
            rec(d - 1, k - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if k == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(d, k, &mut Vec::new(), &mut out);
    out
}

/// Multi-indices with `|μ| ≤ k`, graded by degree.
pub fn up_to_degree(d: usize, k: u32) -> Vec<MultiIndex> {
    (0..=k).flat_map(|j| of_degree(d, j)).collect()
}

/// All points of the box `lo ≤ x ≤ hi`, in lexicographic order.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Point> {
    let mut out = vec![Vec::new()];
    for (&l, &h) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for p in &out {
            for x in l..=h {
                let mut v = p.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        out.clear();
    }
    out
}

/// The coset representatives `{0,1}^d`, in lexicographic order.
pub fn cosets(d: usize) -> Vec<Point> {
    box_points(&vec![0; d], &vec![1; d])
}

pub fn point_q(p: &[i64]) -> Vec<Q> {
    p.iter().map(|&x| qi(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_counts_match_binomials() {
        for d in 1..4usize {
            for k in 0..6u32 {
                let n = of_degree(d, k).len() as u64;
                let expect = (1..d as u64).fold(1u64, |acc, i| acc * (k as u64 + i) / i);
                assert_eq!(n, expect, "d={d} k={k}");
            }
        }
        assert_eq!(of_degree(2, 1), vec![MultiIndex(vec![1, 0]), MultiIndex(vec![0, 1])]);
    }

    #[test]
    fn lower_set_size() {
        let m = MultiIndex(vec![2, 3]);
        assert_eq!(m.lower_set().len(), 12);
        assert!(m.lower_set().iter().all(|b| b.le(&m)));
    }

    #[test]
    fn boxes() {
        assert_eq!(box_points(&[0, -1], &[1, 1]).len(), 6);
        assert!(box_points(&[1], &[0]).is_empty());
        assert_eq!(cosets(2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}

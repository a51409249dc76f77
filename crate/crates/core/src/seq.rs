//! Finitely supported matrix-valued lattice sequences.
//!
//! [`MatSeq`] is the workhorse behind masks (r×r), refinement data (1×r),
//! column generators (r×1) and Laurent matrices. Zero matrices are never
//! stored, so the key set is the exact support.

use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::matrix::QMatrix;
use crate::rational::Q;
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatSeq {
    dim: usize,
    rows: usize,
    cols: usize,
    coeffs: BTreeMap<Point, QMatrix>,
}

impl MatSeq {
    pub fn new(dim: usize, rows: usize, cols: usize) -> Self {
        MatSeq { dim, rows, cols, coeffs: BTreeMap::new() }
    }

    /// `δ·I_n`.
    pub fn delta(dim: usize, n: usize) -> Self {
        let mut s = Self::new(dim, n, n);
        s.insert(vec![0; dim], QMatrix::identity(n));
        s
    }

    /// `δ(· − k)·M`.
    pub fn monomial(dim: usize, k: Point, m: QMatrix) -> Self {
        let mut s = Self::new(dim, m.rows(), m.cols());
        s.insert(k, m);
        s
    }

    pub fn from_entries(
        dim: usize,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (Point, QMatrix)>,
    ) -> Self {
        let mut s = Self::new(dim, rows, cols);
        for (k, m) in entries {
            s.add_at(k, &m);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &QMatrix)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.coeffs.keys()
    }

    pub fn get(&self, k: &[i64]) -> Option<&QMatrix> {
        self.coeffs.get(k)
    }

    pub fn get_or_zero(&self, k: &[i64]) -> QMatrix {
        self.get(k).cloned().unwrap_or_else(|| QMatrix::zeros(self.rows, self.cols))
    }

    /// Replaces the value at `k`; storing zero removes the key.
    pub fn insert(&mut self, k: Point, m: QMatrix) {
        assert_eq!(k.len(), self.dim, "lattice point dimension");
        assert_eq!((m.rows(), m.cols()), (self.rows, self.cols), "coefficient shape");
        if m.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, m);
        }
    }

    pub fn add_at(&mut self, k: Point, m: &QMatrix) {
        let v = match self.coeffs.get(&k) {
            Some(old) => old + m,
            None => m.clone(),
        };
        self.insert(k, v);
    }

    /// Componentwise support bounds, or `None` for the zero sequence.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let mut it = self.coeffs.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for k in it {
            for i in 0..self.dim {
                lo[i] = lo[i].min(k[i]);
                hi[i] = hi[i].max(k[i]);
            }
        }
        Some((lo, hi))
    }

    /// `Σ_k u(k)`, the symbol at the origin.
    pub fn total(&self) -> QMatrix {
        let mut s = QMatrix::zeros(self.rows, self.cols);
        for m in self.coeffs.values() {
            s = &s + m;
        }
        s
    }

    /// `(u ∗ v)(k) = Σ_j u(j) v(k − j)` with matrix products.
    pub fn convolve(&self, other: &MatSeq) -> MatSeq {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.cols, other.rows, "convolution shape");
        let dim = self.dim;
        let left: Vec<_> = self.coeffs.iter().collect();
        let partials: Vec<BTreeMap<Point, QMatrix>> = left
            .par_chunks(16.max(left.len() / 64 + 1))
            .map(|chunk| {
                let mut acc: BTreeMap<Point, QMatrix> = BTreeMap::new();
                for (j, a) in chunk {
                    for (k, b) in &other.coeffs {
                        let p: Point = (0..dim).map(|i| j[i] + k[i]).collect();
                        let prod = *a * b;
                        match acc.get_mut(&p) {
                            Some(x) => *x = &*x + &prod,
                            None => {
                                acc.insert(p, prod);
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        let mut out = MatSeq::new(dim, self.rows, other.cols);
        for part in partials {
            for (k, m) in part {
                out.add_at(k, &m);
            }
        }
        out
    }

    /// `(u↑s)(s k) = u(k)`, zero off the sublattice `sZ^d`.
    pub fn upsample(&self, s: i64) -> MatSeq {
        let mut out = MatSeq::new(self.dim, self.rows, self.cols);
        for (k, m) in &self.coeffs {
            out.coeffs.insert(k.iter().map(|x| x * s).collect(), m.clone());
        }
        out
    }

    /// `a^[γ](k) = a(γ + 2k)` for `γ ∈ {0,1}^d`.
    pub fn coset(&self, gamma: &[i64]) -> Result<MatSeq> {
        if gamma.len() != self.dim || gamma.iter().any(|&g| g != 0 && g != 1) {
            return Err(Error::InvalidCoset(gamma.to_vec()));
        }
        let mut out = MatSeq::new(self.dim, self.rows, self.cols);
        for (k, m) in &self.coeffs {
            if k.iter().zip(gamma).all(|(x, g)| (x - g).rem_euclid(2) == 0) {
                let j: Point = k.iter().zip(gamma).map(|(x, g)| (x - g).div_euclid(2)).collect();
                out.coeffs.insert(j, m.clone());
            }
        }
        Ok(out)
    }

    /// `u°(k) = u(−k)^T`.
    pub fn adjoint(&self) -> MatSeq {
        let mut out = MatSeq::new(self.dim, self.cols, self.rows);
        for (k, m) in &self.coeffs {
            out.coeffs.insert(k.iter().map(|x| -x).collect(), m.transpose());
        }
        out
    }

    /// `u(· − t)`.
    pub fn shift(&self, t: &[i64]) -> MatSeq {
        let mut out = MatSeq::new(self.dim, self.rows, self.cols);
        for (k, m) in &self.coeffs {
            out.coeffs.insert(k.iter().zip(t).map(|(x, y)| x + y).collect(), m.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> MatSeq {
        MatSeq::from_entries(
            self.dim,
            self.rows,
            self.cols,
            self.coeffs.iter().map(|(k, m)| (k.clone(), m.scale(s))),
        )
    }

    pub fn add(&self, other: &MatSeq) -> MatSeq {
        assert_eq!((self.dim, self.rows, self.cols), (other.dim, other.rows, other.cols));
        let mut out = self.clone();
        for (k, m) in &other.coeffs {
            out.add_at(k.clone(), m);
        }
        out
    }

    pub fn sub(&self, other: &MatSeq) -> MatSeq {
        self.add(&other.scale(&-crate::rational::one()))
    }

    /// Applies `f` to every coefficient; output shape is `rows × cols`.
    pub fn map(&self, rows: usize, cols: usize, f: impl Fn(&Point, &QMatrix) -> QMatrix) -> MatSeq {
        MatSeq::from_entries(
            self.dim,
            rows,
            cols,
            self.coeffs.iter().map(|(k, m)| (k.clone(), f(k, m))),
        )
    }

    /// `M·u(k)` for a constant matrix `M`.
    pub fn left_mul(&self, m: &QMatrix) -> MatSeq {
        self.map(m.rows(), self.cols, |_, x| m * x)
    }

    /// `u(k)·M` for a constant matrix `M`.
    pub fn right_mul(&self, m: &QMatrix) -> MatSeq {
        self.map(self.rows, m.cols(), |_, x| x * m)
    }

    pub fn column(&self, j: usize) -> MatSeq {
        self.map(self.rows, 1, |_, x| x.select_cols(&[j]))
    }

    pub fn row_seq(&self, i: usize) -> MatSeq {
        self.map(1, self.cols, |_, x| x.select_rows(&[i]))
    }

    /// Reindexes the lattice: `v(f(k)) = u(k)` for an injective `f`.
    pub fn reindex(&self, f: impl Fn(&Point) -> Point) -> MatSeq {
        let mut out = MatSeq::new(self.dim, self.rows, self.cols);
        for (k, m) in &self.coeffs {
            out.coeffs.insert(f(k), m.clone());
        }
        out
    }

    /// Keeps only keys satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&Point) -> bool) -> MatSeq {
        let mut out = MatSeq::new(self.dim, self.rows, self.cols);
        for (k, m) in &self.coeffs {
            if keep(k) {
                out.coeffs.insert(k.clone(), m.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn scalar(entries: &[(i64, Q)]) -> MatSeq {
        MatSeq::from_entries(
            1,
            1,
            1,
            entries.iter().map(|(k, v)| (vec![*k], QMatrix::from_rows(vec![vec![v.clone()]]))),
        )
    }

    #[test]
    fn bspline_cosets() {
        let b2 = scalar(&[(0, q(1, 4)), (1, q(1, 2)), (2, q(1, 4))]);
        assert_eq!(b2.coset(&[0]).unwrap(), scalar(&[(0, q(1, 4)), (1, q(1, 4))]));
        assert_eq!(b2.coset(&[1]).unwrap(), scalar(&[(0, q(1, 2))]));
        assert!(matches!(b2.coset(&[2]), Err(Error::InvalidCoset(_))));
    }

    #[test]
    fn convolution_of_bsplines() {
        let b1 = scalar(&[(0, q(1, 2)), (1, q(1, 2))]);
        let b2 = scalar(&[(0, q(1, 4)), (1, q(1, 2)), (2, q(1, 4))]);
        assert_eq!(b1.convolve(&b1), b2);
    }

    #[test]
    fn zero_is_never_stored() {
        let a = scalar(&[(0, q(1, 2))]);
        let z = a.sub(&a);
        assert!(z.is_empty());
    }
}

//! Masks, Hermite types and refinement data.

use crate::error::{Error, Result};
use crate::lattice::{MultiIndex, Point};
use crate::matrix::QMatrix;
use crate::rational::{zero, Q};
use crate::seq::MatSeq;
use num_traits::Zero;
use std::ops::Deref;

/// A finitely supported, non-empty map `Z^d → Q^{r×r}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mask(MatSeq);

impl Mask {
    pub fn new(seq: MatSeq) -> Result<Mask> {
        if seq.rows() != seq.cols() {
            return Err(Error::DimensionMismatch(format!(
                "mask coefficients must be square, got {}x{}",
                seq.rows(),
                seq.cols()
            )));
        }
        if seq.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Mask(seq))
    }

    pub fn from_entries(
        dim: usize,
        r: usize,
        entries: impl IntoIterator<Item = (Point, QMatrix)>,
    ) -> Result<Mask> {
        Mask::new(MatSeq::from_entries(dim, r, r, entries))
    }

    pub fn r(&self) -> usize {
        self.0.rows()
    }

    pub fn seq(&self) -> &MatSeq {
        &self.0
    }

    pub fn into_seq(self) -> MatSeq {
        self.0
    }

    /// `â(0) = Σ_k a(k)`.
    pub fn symbol_at_zero(&self) -> QMatrix {
        self.0.total()
    }
}

impl Deref for Mask {
    type Target = MatSeq;
    fn deref(&self) -> &MatSeq {
        &self.0
    }
}

/// Type multiset `Λ`, translations `T` and an optional coset map `θ`
/// (zero-based indices).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermiteType {
    pub lambda: Vec<MultiIndex>,
    pub tau: Vec<Vec<Q>>,
    pub theta: Option<Vec<usize>>,
}

impl HermiteType {
    pub fn new(lambda: Vec<MultiIndex>, tau: Option<Vec<Vec<Q>>>) -> Result<HermiteType> {
        let r = lambda.len();
        if r == 0 {
            return Err(Error::DimensionMismatch("empty type multiset".into()));
        }
        let d = lambda[0].dim();
        if lambda.iter().any(|m| m.dim() != d) {
            return Err(Error::DimensionMismatch("type entries of unequal length".into()));
        }
        if lambda[0].abs() != 0 {
            return Err(Error::FirstTypeNotZero);
        }
        let tau = tau.unwrap_or_else(|| vec![vec![zero(); d]; r]);
        if tau.len() != r || tau.iter().any(|t| t.len() != d) {
            return Err(Error::DimensionMismatch("translation list does not match type".into()));
        }
        Ok(HermiteType { lambda, tau, theta: None })
    }

    /// Type from multi-index lists with zero translations. Panics on invalid input.
    pub fn zero_shift(lambda: &[&[u32]]) -> HermiteType {
        Self::new(lambda.iter().map(|v| MultiIndex(v.to_vec())).collect(), None)
            .expect("valid type")
    }

    pub fn r(&self) -> usize {
        self.lambda.len()
    }

    pub fn dim(&self) -> usize {
        self.lambda[0].dim()
    }

    /// `max |ν_ℓ|`.
    pub fn max_order(&self) -> u32 {
        self.lambda.iter().map(MultiIndex::abs).max().unwrap_or(0)
    }

    pub fn has_zero_translations(&self) -> bool {
        self.tau.iter().flatten().all(Zero::is_zero)
    }

    /// Scalar type `{0}` in dimension `d`.
    pub fn scalar(d: usize) -> HermiteType {
        Self::new(vec![MultiIndex::zero(d)], None).expect("valid type")
    }
}

/// Rows `1×r` on a finite lattice set, tagged with the refinement level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorData {
    pub level: u32,
    pub values: MatSeq,
}

impl VectorData {
    pub fn new(level: u32, values: MatSeq) -> VectorData {
        assert_eq!(values.rows(), 1, "vector data rows must be 1×r");
        VectorData { level, values }
    }

    /// Row `e_i` at the origin.
    pub fn delta_row(dim: usize, r: usize, i: usize) -> VectorData {
        let mut row = QMatrix::zeros(1, r);
        row[(0, i)] = crate::rational::one();
        VectorData::new(0, MatSeq::monomial(dim, vec![0; dim], row))
    }

    pub fn width(&self) -> usize {
        self.values.cols()
    }

    pub fn dim(&self) -> usize {
        self.values.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_validation() {
        assert!(matches!(
            HermiteType::new(vec![MultiIndex(vec![1])], None),
            Err(Error::FirstTypeNotZero)
        ));
        let t = HermiteType::zero_shift(&[&[0], &[2]]);
        assert_eq!(t.max_order(), 2);
        assert!(t.has_zero_translations());
    }

    #[test]
    fn empty_mask_rejected() {
        assert_eq!(Mask::new(MatSeq::new(1, 2, 2)), Err(Error::EmptySupport));
    }
}

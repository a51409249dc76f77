//! Normalized jets: truncated Taylor data of symbols at the origin.
//!
//! For a germ `f` the stored entry is `N_μ(f) = f^{(μ)}(0) / (−i)^{|μ|}`. For
//! the symbol of a lattice sequence `u` this is the moment `Σ_k u(k) k^μ`,
//! so masks with rational coefficients have rational jets.
//!
//! A coefficient `c_μ` of `(iξ)^μ` in a printed expansion has
//! `N_μ = (−1)^{|μ|} μ! c_μ`; see [`Jet::from_ixi`].

use crate::error::{Error, Result};
use crate::lattice::{up_to_degree, MultiIndex};
use crate::matrix::QMatrix;
use crate::rational::{one, pow2, powi, qi, zero, Q};
use crate::seq::MatSeq;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
struct JetIndex {
    list: Vec<MultiIndex>,
    pos: HashMap<MultiIndex, usize>,
}

impl JetIndex {
    fn new(d: usize, order: u32) -> Self {
        let list = up_to_degree(d, order);
        let pos = list.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        JetIndex { list, pos }
    }
}

/// Normalized jet of matrix shape `rows × cols` complete up to `order`.
#[derive(Clone, Debug)]
pub struct Jet {
    dim: usize,
    order: u32,
    rows: usize,
    cols: usize,
    index: Arc<JetIndex>,
    entries: Vec<QMatrix>,
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        (self.dim, self.order, self.rows, self.cols) == (other.dim, other.order, other.rows, other.cols)
            && self.entries == other.entries
    }
}

impl Eq for Jet {}

impl Jet {
    pub fn zero(dim: usize, order: u32, rows: usize, cols: usize) -> Jet {
        let index = Arc::new(JetIndex::new(dim, order));
        let entries = vec![QMatrix::zeros(rows, cols); index.list.len()];
        Jet { dim, order, rows, cols, index, entries }
    }

    /// Jet of `δ·I_n`.
    pub fn dirac(dim: usize, order: u32, n: usize) -> Jet {
        let mut j = Jet::zero(dim, order, n, n);
        j.entries[0] = QMatrix::identity(n);
        j
    }

    /// Scalar jet built from `N_μ` values; missing entries are zero.
    pub fn scalar_from(dim: usize, order: u32, values: &[(MultiIndex, Q)]) -> Jet {
        let mut j = Jet::zero(dim, order, 1, 1);
        for (m, v) in values {
            if m.abs() <= order {
                j.set(m, QMatrix::from_rows(vec![vec![v.clone()]]));
            }
        }
        j
    }

    /// Scalar jet from coefficients of `(iξ)^μ`.
    pub fn from_ixi(dim: usize, order: u32, coeffs: &[(MultiIndex, Q)]) -> Jet {
        let vals: Vec<_> = coeffs
            .iter()
            .map(|(m, c)| {
                let sign = if m.abs() % 2 == 0 { one() } else { -one() };
                (m.clone(), sign * m.factorial() * c)
            })
            .collect();
        Jet::scalar_from(dim, order, &vals)
    }

    /// Coefficient of `(iξ)^μ` for a scalar jet: `(−1)^{|μ|} N_μ / μ!`.
    pub fn ixi_coeff(&self, mu: &MultiIndex) -> Q {
        let v = self.scalar(mu);
        let sign = if mu.abs().is_multiple_of(2) { one() } else { -one() };
        sign * v / mu.factorial()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.index.list
    }

    pub fn get(&self, mu: &MultiIndex) -> &QMatrix {
        &self.entries[self.index.pos[mu]]
    }

    pub fn set(&mut self, mu: &MultiIndex, v: QMatrix) {
        assert_eq!((v.rows(), v.cols()), (self.rows, self.cols));
        let p = self.index.pos[mu];
        self.entries[p] = v;
    }

    /// Entry of a 1×1 jet.
    pub fn scalar(&self, mu: &MultiIndex) -> Q {
        self.get(mu)[(0, 0)].clone()
    }

    /// Entry `(i, j)` as a scalar jet.
    pub fn entry(&self, i: usize, j: usize) -> Jet {
        self.map_shape(1, 1, |m| QMatrix::from_rows(vec![vec![m[(i, j)].clone()]]))
    }

    /// Columns `idx` of a matrix jet.
    pub fn select_cols(&self, idx: &[usize]) -> Jet {
        self.map_shape(self.rows, idx.len(), |m| m.select_cols(idx))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Jet {
        self.map_shape(idx.len(), self.cols, |m| m.select_rows(idx))
    }

    fn map_shape(&self, rows: usize, cols: usize, f: impl Fn(&QMatrix) -> QMatrix) -> Jet {
        Jet {
            dim: self.dim,
            order: self.order,
            rows,
            cols,
            index: self.index.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Row jet from scalar component jets.
    pub fn row_from_components(parts: &[Jet]) -> Jet {
        let d = parts[0].dim;
        let order = parts.iter().map(|p| p.order).min().unwrap();
        let mut j = Jet::zero(d, order, 1, parts.len());
        for i in 0..j.entries.len() {
            let mu = j.index.list[i].clone();
            j.entries[i] = QMatrix::from_rows(vec![parts.iter().map(|p| p.scalar(&mu)).collect()]);
        }
        j
    }

    /// Restricts to total degree ≤ `order`.
    pub fn truncate(&self, order: u32) -> Jet {
        assert!(order <= self.order, "cannot extend a jet by truncation");
        let mut j = Jet::zero(self.dim, order, self.rows, self.cols);
        for i in 0..j.entries.len() {
            j.entries[i] = self.get(&j.index.list[i]).clone();
        }
        j
    }

    /// Same data at a higher order, padding with zeros.
    pub fn pad(&self, order: u32) -> Jet {
        let mut j = Jet::zero(self.dim, order.max(self.order), self.rows, self.cols);
        for (mu, v) in self.index.list.iter().zip(&self.entries) {
            j.set(mu, v.clone());
        }
        j
    }

    /// Equality of all entries with `|μ| ≤ order`.
    pub fn agrees_to(&self, other: &Jet, order: u32) -> bool {
        self.shape() == other.shape()
            && self.index.list.iter().filter(|m| m.abs() <= order).all(|m| {
                other.index.pos.contains_key(m) && self.get(m) == other.get(m)
            })
    }

    /// Entries with `|μ| ≤ order` all vanish, i.e. `f = O(‖ξ‖^{order+1})`.
    pub fn vanishes_to(&self, order: u32) -> bool {
        self.index
            .list
            .iter()
            .zip(&self.entries)
            .filter(|(m, _)| m.abs() <= order)
            .all(|(_, v)| v.is_zero())
    }

    /// Largest `s` with all entries of degree `< s` zero (capped at `order + 1`).
    pub fn vanishing_order(&self) -> u32 {
        self.index
            .list
            .iter()
            .zip(&self.entries)
            .find(|(_, v)| !v.is_zero())
            .map_or(self.order + 1, |(m, _)| m.abs())
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Jet, f: impl Fn(&QMatrix, &QMatrix) -> QMatrix) -> Result<Jet> {
        if self.shape() != other.shape() || self.dim != other.dim {
            return Err(Error::ShapeMismatch("jet sum of unequal shapes".into()));
        }
        let order = self.order.min(other.order);
        let a = self.truncate(order);
        let b = other.truncate(order);
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| f(x, y)).collect();
        Ok(Jet { entries, ..a })
    }

    pub fn scale(&self, s: &Q) -> Jet {
        self.map_shape(self.rows, self.cols, |m| m.scale(s))
    }

    /// Constant matrix on the left: jet of `M f`.
    pub fn left_mul(&self, m: &QMatrix) -> Jet {
        self.map_shape(m.rows(), self.cols, |x| m * x)
    }

    /// Constant matrix on the right: jet of `f M`.
    pub fn right_mul(&self, m: &QMatrix) -> Jet {
        self.map_shape(self.rows, m.cols(), |x| x * m)
    }

    pub fn transpose(&self) -> Jet {
        self.map_shape(self.cols, self.rows, QMatrix::transpose)
    }

    /// Leibniz product `N_μ(fg) = Σ_{β≤μ} binom(μ,β) N_β(f) N_{μ−β}(g)`.
    pub fn product(&self, other: &Jet) -> Result<Jet> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "jet product {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch("jet product of unequal dimensions".into()));
        }
        let order = self.order.min(other.order);
        let mut out = Jet::zero(self.dim, order, self.rows, other.cols);
        for i in 0..out.entries.len() {
            let mu = out.index.list[i].clone();
            let mut acc = QMatrix::zeros(self.rows, other.cols);
            for beta in mu.lower_set() {
                let a = self.get(&beta);
                if a.is_zero() {
                    continue;
                }
                let rest = mu.checked_sub(&beta).unwrap();
                let b = other.get(&rest);
                if b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b).scale(&mu.binom(&beta));
            }
            out.entries[i] = acc;
        }
        Ok(out)
    }

    /// Jet of `f(λ·)`: `N_μ ↦ λ^{|μ|} N_μ`.
    pub fn dilate(&self, lambda: i64) -> Jet {
        assert!(lambda >= 1, "dilation factor must be positive");
        let l = qi(lambda);
        let mut out = self.clone();
        for (i, mu) in self.index.list.iter().enumerate() {
            out.entries[i] = self.entries[i].scale(&powi(&l, mu.abs() as i64));
        }
        out
    }

    /// Jet of `f(2^e ·)`.
    pub fn dilate_pow2(&self, e: u32) -> Jet {
        let mut out = self.clone();
        for (i, mu) in self.index.list.iter().enumerate() {
            out.entries[i] = self.entries[i].scale(&pow2((e * mu.abs()) as i64));
        }
        out
    }

    /// Two-sided inverse of a square matrix germ.
    pub fn inverse(&self) -> Result<Jet> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of a non-square jet".into()));
        }
        let f0inv = self.entries[0].inverse().map_err(|_| Error::NonInvertibleGerm)?;
        let mut g = Jet::zero(self.dim, self.order, self.rows, self.cols);
        g.entries[0] = f0inv.clone();
        for i in 1..g.entries.len() {
            let mu = g.index.list[i].clone();
            let mut acc = QMatrix::zeros(self.rows, self.cols);
            for beta in mu.lower_set() {
                if beta.abs() == 0 {
                    continue;
                }
                let a = self.get(&beta);
                if a.is_zero() {
                    continue;
                }
                let rest = mu.checked_sub(&beta).unwrap();
                acc = &acc + &(a * g.get(&rest)).scale(&mu.binom(&beta));
            }
            g.entries[i] = -&(&f0inv * &acc);
        }
        Ok(g)
    }

    /// Reciprocal of a scalar germ, truncated to `order`.
    pub fn reciprocal(&self, order: u32) -> Result<Jet> {
        if self.shape() != (1, 1) {
            return Err(Error::ShapeMismatch("reciprocal of a non-scalar jet".into()));
        }
        if self.order < order {
            return Err(Error::InsufficientOrder { needed: order, have: self.order });
        }
        if self.entries[0][(0, 0)].is_zero() {
            return Err(Error::NonInvertibleGerm);
        }
        self.truncate(order).inverse()
    }

    /// Jet of `ξ ↦ f(M ξ)` for a real `d×d` matrix `M`.
    ///
    /// Writing `f` as `P(y) = Σ N_μ y^μ / μ!` in `y = −iξ`, the substituted
    /// germ is `P(M y)`.
    pub fn linear_substitute(&self, m: &QMatrix) -> Jet {
        let d = self.dim;
        assert_eq!((m.rows(), m.cols()), (d, d));
        let mut out = Jet::zero(d, self.order, self.rows, self.cols);
        for (mu, v) in self.index.list.iter().zip(&self.entries) {
            if v.is_zero() {
                continue;
            }
            let expansion = expand_linear_power(m, mu);
            let inv_fact = mu.factorial().recip();
            for (kappa, c) in expansion {
                let coef = &c * &inv_fact * kappa.factorial();
                let p = out.index.pos[&kappa];
                out.entries[p] = &out.entries[p] + &v.scale(&coef);
            }
        }
        out
    }
}

/// Coefficients of `Π_i (Σ_j M_ij y_j)^{μ_i}` as a map over monomials in `y`.
pub(crate) fn expand_linear_power(m: &QMatrix, mu: &MultiIndex) -> BTreeMap<MultiIndex, Q> {
    let d = mu.dim();
    let mut poly: BTreeMap<MultiIndex, Q> = BTreeMap::new();
    poly.insert(MultiIndex::zero(d), one());
    for (i, &e) in mu.0.iter().enumerate() {
        for _ in 0..e {
            let mut next: BTreeMap<MultiIndex, Q> = BTreeMap::new();
            for (mono, c) in &poly {
                for j in 0..d {
                    let mij = &m[(i, j)];
                    if mij.is_zero() {
                        continue;
                    }
                    let mut k = mono.clone();
                    k.0[j] += 1;
                    *next.entry(k).or_insert_with(zero) += c * mij;
                }
            }
            poly = next;
        }
    }
    poly.retain(|_, c| !c.is_zero());
    poly
}

/// Moments `N_μ = Σ_k u(k) (−1)^{k·ω} k^μ` for `|μ| ≤ order`.
pub fn sequence_jet(u: &MatSeq, order: u32, omega: Option<&[i64]>) -> Jet {
    let mut j = Jet::zero(u.dim(), order, u.rows(), u.cols());
    let list = j.index.list.clone();
    for (k, m) in u.iter() {
        let neg = omega.is_some_and(|w| k.iter().zip(w).map(|(a, b)| a * b).sum::<i64>().rem_euclid(2) == 1);
        for (i, mu) in list.iter().enumerate() {
            let p = mu.pow_int(k);
            if p.is_zero() {
                continue;
            }
            let mut c = Q::from_integer(p);
            if neg {
                c = -c;
            }
            j.entries[i] = &j.entries[i] + &m.scale(&c);
        }
    }
    j
}

/// Jet of `(iξ)^ν e^{iτ·ξ}`: `N_μ = (−1)^{|μ|} μ! τ^{μ−ν} / (μ−ν)!` for `ν ≤ μ`.
pub fn phase_monomial_jet(nu: &MultiIndex, tau: &[Q], order: u32) -> Jet {
    let d = nu.dim();
    let mut j = Jet::zero(d, order, 1, 1);
    let list = j.index.list.clone();
    for (i, mu) in list.iter().enumerate() {
        let Some(rest) = mu.checked_sub(nu) else { continue };
        let sign = if mu.abs() % 2 == 0 { one() } else { -one() };
        let v = sign * mu.factorial() * rest.pow_q(tau) / rest.factorial();
        j.entries[i] = QMatrix::from_rows(vec![vec![v]]);
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn b2() -> MatSeq {
        MatSeq::from_entries(
            1,
            1,
            1,
            [(0, q(1, 4)), (1, q(1, 2)), (2, q(1, 4))]
                .into_iter()
                .map(|(k, v)| (vec![k], QMatrix::from_rows(vec![vec![v]]))),
        )
    }

    fn values(j: &Jet) -> Vec<Q> {
        j.indices().iter().map(|m| j.scalar(m)).collect()
    }

    #[test]
    fn bspline_moments() {
        assert_eq!(values(&sequence_jet(&b2(), 2, None)), vec![q(1, 1), q(1, 1), q(3, 2)]);
        // Hand sums: 1/4 - 1/2 + 1/4, -1/2 + 2/4, -1/2 + 4/4.
        assert_eq!(values(&sequence_jet(&b2(), 2, Some(&[1]))), vec![q(0, 1), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn reciprocal_of_bspline_symbol() {
        let j = sequence_jet(&b2(), 2, None);
        let r = j.reciprocal(2).unwrap();
        assert_eq!(values(&r), vec![q(1, 1), q(-1, 1), q(1, 2)]);
        assert_eq!(j.product(&r).unwrap(), Jet::dirac(1, 2, 1));
    }

    #[test]
    fn reciprocal_rejects_zero_constant() {
        let j = Jet::scalar_from(1, 2, &[(mi(&[1]), q(1, 1))]);
        assert_eq!(j.reciprocal(2), Err(Error::NonInvertibleGerm));
    }

    #[test]
    fn dilation_rules() {
        let j = Jet::scalar_from(1, 2, &[(mi(&[0]), q(1, 1)), (mi(&[1]), q(1, 1)), (mi(&[2]), q(3, 2))]);
        assert_eq!(values(&j.dilate(2)), vec![q(1, 1), q(2, 1), q(6, 1)]);
        assert_eq!(j.dilate(4), j.dilate(2).dilate(2));
        assert_eq!(j.dilate(1), j);
        assert_eq!(j.dilate_pow2(2), j.dilate(4));
    }

    #[test]
    fn phase_monomials() {
        let j = phase_monomial_jet(&mi(&[1]), &[q(1, 2)], 2);
        assert_eq!(values(&j), vec![q(0, 1), q(-1, 1), q(1, 1)]);
        assert_eq!(phase_monomial_jet(&mi(&[0]), &[q(0, 1)], 3), Jet::dirac(1, 3, 1));
        let j2 = phase_monomial_jet(&mi(&[0, 2]), &[q(0, 1), q(0, 1)], 2);
        for mu in j2.indices() {
            let expect = if mu == &mi(&[0, 2]) { q(2, 1) } else { q(0, 1) };
            assert_eq!(j2.scalar(mu), expect);
        }
    }

    #[test]
    fn printed_coefficient_conversion() {
        let j = Jet::from_ixi(1, 6, &[(mi(&[6]), q(-17, 12096))]);
        assert_eq!(j.scalar(&mi(&[6])), q(-85, 84));
        assert_eq!(j.ixi_coeff(&mi(&[6])), q(-17, 12096));
    }

    #[test]
    fn substitution_by_swap_and_scaling() {
        // f = (iξ1) has N_(1,0) = -1; f(Mξ) with M = swap is (iξ2).
        let f = Jet::from_ixi(2, 2, &[(mi(&[1, 0]), q(1, 1))]);
        let swap = QMatrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]);
        assert_eq!(f.linear_substitute(&swap), Jet::from_ixi(2, 2, &[(mi(&[0, 1]), q(1, 1))]));
        let half = QMatrix::diag(&[q(1, 2), q(1, 2)]);
        let g = Jet::from_ixi(2, 2, &[(mi(&[1, 1]), q(1, 1))]);
        assert_eq!(g.linear_substitute(&half), Jet::from_ixi(2, 2, &[(mi(&[1, 1]), q(1, 4))]));
    }
}

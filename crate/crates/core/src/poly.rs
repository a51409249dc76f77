//! Exact polynomials: multivariate [`Poly`] and univariate [`UPoly`].

use crate::lattice::MultiIndex;
use crate::rational::{binomial, one, powi, to_f64, zero, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Multivariate polynomial `Σ c_μ x^μ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<MultiIndex, Q>,
}

impl Poly {
    pub fn zero(dim: usize) -> Poly {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Q) -> Poly {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    /// `c x^μ`.
    pub fn monomial(mu: MultiIndex, c: Q) -> Poly {
        let mut p = Poly::zero(mu.dim());
        p.add_term(mu, c);
        p
    }

    /// `x^μ / μ!`.
    pub fn normalized_monomial(mu: &MultiIndex) -> Poly {
        Self::monomial(mu.clone(), mu.factorial().recip())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &MultiIndex) -> Q {
        self.terms.get(mu).cloned().unwrap_or_else(zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::abs).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, mu: MultiIndex, c: Q) {
        assert_eq!(mu.dim(), self.dim);
        let e = self.terms.entry(mu.clone()).or_insert_with(zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, s: &Q) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c * s);
        }
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-one()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.add(b), x * y);
            }
        }
        p
    }

    /// `∂^μ p`.
    pub fn derivative(&self, mu: &MultiIndex) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            let Some(rest) = m.checked_sub(mu) else { continue };
            let f = m.factorial() / rest.factorial();
            p.add_term(rest, c * f);
        }
        p
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms.iter().map(|(m, c)| c * m.pow_q(x)).sum()
    }

    pub fn eval_int(&self, x: &[i64]) -> Q {
        self.terms.iter().map(|(m, c)| c * Q::from_integer(m.pow_int(x))).sum()
    }

    /// `p(x + t)`.
    pub fn shift(&self, t: &[Q]) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            for beta in m.lower_set() {
                let rest = m.checked_sub(&beta).unwrap();
                p.add_term(beta.clone(), c * m.binom(&beta) * rest.pow_q(t));
            }
        }
        p
    }

    /// `p(λ x)` for a rational scalar `λ`.
    pub fn dilate(&self, lambda: &Q) -> Poly {
        let mut p = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c * powi(lambda, m.abs() as i64));
        }
        p
    }
}

/// Univariate polynomial with ascending coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> UPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    pub fn constant(c: Q) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `x`.
    pub fn x() -> UPoly {
        UPoly::new(vec![zero(), one()])
    }

    /// `x − a`.
    pub fn linear_root(a: &Q) -> UPoly {
        UPoly::new(vec![-a.clone(), one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(i).cloned().unwrap_or_else(zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Q) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::constant(one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer((i as i64).into())).collect())
    }

    pub fn nth_derivative(&self, n: u32) -> UPoly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> UPoly {
        let mut c = vec![zero()];
        c.extend(self.0.iter().enumerate().map(|(i, a)| a / Q::from_integer(((i + 1) as i64).into())));
        UPoly::new(c)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// `p(αx + β)`.
    pub fn compose_affine(&self, alpha: &Q, beta: &Q) -> UPoly {
        let lin = UPoly::new(vec![beta.clone(), alpha.clone()]);
        let mut acc = UPoly::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(&lin).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// Drops all terms of degree > `deg`.
    pub fn truncate(&self, deg: usize) -> UPoly {
        UPoly::new(self.0.iter().take(deg + 1).cloned().collect())
    }

    /// Power series of `1/p` to degree `deg`; requires `p(0) ≠ 0`.
    pub fn series_reciprocal(&self, deg: usize) -> Option<UPoly> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return None;
        }
        let inv = c0.recip();
        let mut out = vec![inv.clone()];
        for n in 1..=deg {
            let mut s = zero();
            for k in 1..=n {
                s += self.coeff(k) * &out[n - k];
            }
            out.push(-s * &inv);
        }
        Some(UPoly::new(out))
    }

    /// `(x + t)^n`.
    pub fn shifted_power(t: &Q, n: u32) -> UPoly {
        UPoly::new((0..=n).map(|k| binomial(n, k) * powi(t, (n - k) as i64)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn multivariate_shift_and_derivative() {
        let p = Poly::monomial(MultiIndex(vec![2, 1]), one());
        let s = p.shift(&[qi(1), qi(2)]);
        for x in [[qi(0), qi(0)], [q(1, 3), qi(-2)]] {
            let direct = p.eval(&[&x[0] + qi(1), &x[1] + qi(2)]);
            assert_eq!(s.eval(&x), direct);
        }
        let d = p.derivative(&MultiIndex(vec![1, 1]));
        assert_eq!(d, Poly::monomial(MultiIndex(vec![1, 0]), qi(2)));
    }

    #[test]
    fn univariate_series_and_compose() {
        let p = UPoly::new(vec![qi(1), qi(-1)]);
        let r = p.series_reciprocal(4).unwrap();
        assert_eq!(r, UPoly::new(vec![qi(1); 5]));
        let c = p.compose_affine(&qi(2), &qi(1));
        assert_eq!(c, UPoly::new(vec![qi(0), qi(-2)]));
        assert_eq!(UPoly::shifted_power(&qi(1), 2), UPoly::new(vec![qi(1), qi(2), qi(1)]));
        assert_eq!(UPoly::x().pow(3).integral().eval(&qi(2)), qi(4));
    }
}

//! Strongly invertible normalizers and the normal form of a mask.
//!
//! For a row `u` with `û(0) ≠ 0` the normalizer `U` satisfies
//! `u·Û = [c, 0, …, 0] + O(‖ξ‖^{m+1})` with `ĉ(0) = 1`. Conjugating the mask
//! by `U` yields `å = Û(2ξ)^{-1} â(ξ) Û(ξ)`, whose first component behaves
//! like a scalar mask with `m + 1` sum rules.

use crate::error::{Error, Result};
use crate::io::coeffs_json;
use crate::jets::{sequence_jet, Jet};
use crate::lattice::{of_degree, up_to_degree, MultiIndex, Point};
use crate::mask::Mask;
use crate::matrix::QMatrix;
use crate::rational::{abs, one, zero, Q};
use crate::seq::MatSeq;
use num_traits::Zero;

/// Scalar sequence on `{k ≥ 0 : |k| ≤ m}` with moments `Σ u(k) k^μ = N_μ`
/// for `|μ| ≤ m`.
pub fn realize_from_jets(j: &Jet, m: u32) -> Result<MatSeq> {
    if j.shape() != (1, 1) {
        return Err(Error::ShapeMismatch("realize_from_jets expects a scalar jet".into()));
    }
    if j.order() < m {
        return Err(Error::InsufficientOrder { needed: m, have: j.order() });
    }
    let d = j.dim();
    let nodes: Vec<MultiIndex> = up_to_degree(d, m);
    let points: Vec<Point> = nodes.iter().map(|n| n.0.iter().map(|&x| x as i64).collect()).collect();
    let vander = QMatrix::from_fn(nodes.len(), points.len(), |r, c| Q::from_integer(nodes[r].pow_int(&points[c])));
    let rhs: Vec<Q> = nodes.iter().map(|mu| j.scalar(mu)).collect();
    let sol = vander.solve(&rhs).expect("the principal lattice is poised");
    Ok(MatSeq::from_entries(d, 1, 1, points.into_iter().zip(sol).map(|(k, v)| (k, QMatrix::from_rows(vec![vec![v]])))))
}

/// Finitely supported matrix sequence together with its convolution inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentMatrix {
    pub u: MatSeq,
    pub inv: MatSeq,
}

impl LaurentMatrix {
    pub fn identity(d: usize, r: usize) -> LaurentMatrix {
        LaurentMatrix { u: MatSeq::delta(d, r), inv: MatSeq::delta(d, r) }
    }

    pub fn r(&self) -> usize {
        self.u.rows()
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    /// `U ∗ U^{-1} = U^{-1} ∗ U = δ·I`.
    pub fn is_strongly_invertible(&self) -> bool {
        let id = MatSeq::delta(self.dim(), self.r());
        self.u.convolve(&self.inv) == id && self.inv.convolve(&self.u) == id
    }

    pub fn compose(&self, other: &LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix { u: self.u.convolve(&other.u), inv: other.inv.convolve(&self.inv) }
    }

    pub fn inverse(&self) -> LaurentMatrix {
        LaurentMatrix { u: self.inv.clone(), inv: self.u.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim(),
            "multiplicity": self.r(),
            "coeffs": coeffs_json(&self.u),
            "inverse": { "coeffs": coeffs_json(&self.inv) },
        })
    }
}

fn entry(s: &MatSeq, i: usize, j: usize) -> MatSeq {
    s.map(1, 1, |_, m| QMatrix::from_rows(vec![vec![m[(i, j)].clone()]]))
}

/// `r × r` sequence from scalar blocks; unspecified diagonal entries are `δ`.
fn assemble(d: usize, r: usize, blocks: &[((usize, usize), &MatSeq)]) -> MatSeq {
    let mut out = MatSeq::new(d, r, r);
    for i in 0..r {
        if !blocks.iter().any(|((a, b), _)| *a == i && *b == i) {
            let mut e = QMatrix::zeros(r, r);
            e[(i, i)] = one();
            out.add_at(vec![0; d], &e);
        }
    }
    for ((i, j), s) in blocks {
        for (k, v) in s.iter() {
            let mut e = QMatrix::zeros(r, r);
            e[(*i, *j)] = v[(0, 0)].clone();
            out.add_at(k.clone(), &e);
        }
    }
    out
}

fn scalar_delta(d: usize) -> MatSeq {
    MatSeq::delta(d, 1)
}

/// `[c, 0, …, 0] + O(‖ξ‖^{m+1})` with `N_0(c) = 1`.
fn is_normalized(u: &Jet, big_u: &MatSeq, m: u32) -> Result<bool> {
    let prod = u.truncate(m).product(&sequence_jet(big_u, m, None))?;
    let first = prod.entry(0, 0);
    if first.scalar(&MultiIndex::zero(u.dim())) != one() {
        return Ok(false);
    }
    Ok((1..u.shape().1).all(|l| prod.entry(0, l).vanishes_to(m)))
}

/// Normalizer of the row jet `u` at order `m`.
pub fn build_normalizer(u: &Jet, m: u32) -> Result<LaurentMatrix> {
    let (rows, r) = u.shape();
    if rows != 1 {
        return Err(Error::ShapeMismatch("normalizer needs a row jet".into()));
    }
    if u.order() < m {
        return Err(Error::InsufficientOrder { needed: m, have: u.order() });
    }
    let d = u.dim();
    if r == 1 {
        return Ok(LaurentMatrix::identity(d, 1));
    }
    let z = MultiIndex::zero(d);
    let n0 = u.get(&z);
    let pivot = (0..r)
        .filter(|&l| !n0[(0, l)].is_zero())
        .max_by(|&a, &b| abs(&n0[(0, a)]).cmp(&abs(&n0[(0, b)])).then(b.cmp(&a)))
        .ok_or(Error::NormalizationImpossible)?;
    let mut perm = QMatrix::identity(r);
    if pivot != 0 {
        perm[(0, 0)] = zero();
        perm[(pivot, pivot)] = zero();
        perm[(0, pivot)] = one();
        perm[(pivot, 0)] = one();
    }
    let up = u.truncate(m).right_mul(&perm);
    let u1 = up.entry(0, 0);
    let c1_jet = u1.reciprocal(m)?;
    let c1 = realize_from_jets(&c1_jet, m)?;
    let cs: Vec<MatSeq> =
        (1..r).map(|l| realize_from_jets(&up.entry(0, l).product(&c1_jet)?, m)).collect::<Result<_>>()?;

    let neg: Vec<MatSeq> = cs.iter().map(|c| c.scale(&-one())).collect();
    let u1_blocks: Vec<((usize, usize), &MatSeq)> = neg.iter().enumerate().map(|(i, c)| ((0, i + 1), c)).collect();
    let big_u1 = assemble(d, r, &u1_blocks);
    let u1_inv_blocks: Vec<((usize, usize), &MatSeq)> = cs.iter().enumerate().map(|(i, c)| ((0, i + 1), c)).collect();
    let big_u1_inv = assemble(d, r, &u1_inv_blocks);

    // c1 = c0 (δ − s) with c0 = 1/N_0(u1); det U2 = c1 g + sp² = δ.
    let n0u1 = u1.scalar(&z);
    let s = scalar_delta(d).sub(&c1.scale(&n0u1));
    let mut sp = scalar_delta(d);
    for _ in 0..=m {
        sp = sp.convolve(&s);
    }
    let mut g = MatSeq::new(d, 1, 1);
    let mut pw = scalar_delta(d);
    for _ in 0..=(2 * m + 1) {
        g = g.add(&pw);
        pw = pw.convolve(&s);
    }
    let g = g.scale(&n0u1);
    let neg_sp = sp.scale(&-one());
    let big_u2 = assemble(d, r, &[((0, 0), &c1), ((0, 1), &neg_sp), ((1, 0), &sp), ((1, 1), &g)]);
    let big_u2_inv = assemble(d, r, &[((0, 0), &g), ((0, 1), &sp), ((1, 0), &neg_sp), ((1, 1), &c1)]);

    let p = MatSeq::monomial(d, vec![0; d], perm.clone());
    let pt = MatSeq::monomial(d, vec![0; d], perm.transpose());
    let big = LaurentMatrix {
        u: p.convolve(&big_u1).convolve(&big_u2),
        inv: big_u2_inv.convolve(&big_u1_inv).convolve(&pt),
    };
    if !is_normalized(u, &big.u, m)? {
        return Err(Error::Construction("normalizer failed its jet identity".into()));
    }
    Ok(big)
}

/// `U` with `u·Û = v + O(‖ξ‖^{m+1})`, as `U_u U_v^{-1}`.
pub fn normalizer_to(u: &Jet, v: &Jet, m: u32) -> Result<LaurentMatrix> {
    if u.shape() != v.shape() || u.dim() != v.dim() {
        return Err(Error::ShapeMismatch("source and target rows differ in shape".into()));
    }
    let uu = build_normalizer(u, m)?;
    let uv = build_normalizer(v, m)?;
    let big = uu.compose(&uv.inverse());
    let got = u.truncate(m).product(&sequence_jet(&big.u, m, None))?;
    if !got.agrees_to(&v.truncate(m), m) {
        return Err(Error::Construction("composed normalizer missed the target row".into()));
    }
    Ok(big)
}

/// `å = (U^{-1} ↑ 2) ∗ a ∗ U`.
pub fn transform_mask(mask: &Mask, big: &LaurentMatrix) -> Result<Mask> {
    if big.r() != mask.r() || big.dim() != mask.dim() {
        return Err(Error::DimensionMismatch("normalizer and mask sizes differ".into()));
    }
    Mask::new(big.inv.upsample(2).convolve(mask.seq()).convolve(&big.u))
}

/// Normal-form conditions at order `m`: `å_{11}(0) = 1`, `å_{11}(· + πω)`
/// and `å_{12}(· + πω)` vanish to order `m + 1` as required.
pub fn normalform_verify(mask: &Mask, m: u32) -> bool {
    let d = mask.dim();
    let r = mask.r();
    let a11 = entry(mask.seq(), 0, 0);
    if a11.total()[(0, 0)] != one() {
        return false;
    }
    for omega in crate::lattice::cosets(d) {
        let at_zero = omega.iter().all(|&w| w == 0);
        if !at_zero && !sequence_jet(&a11, m, Some(&omega)).vanishes_to(m) {
            return false;
        }
        for j in 1..r {
            let a1j = entry(mask.seq(), 0, j);
            if !sequence_jet(&a1j, m, Some(&omega)).vanishes_to(m) {
                return false;
            }
        }
    }
    true
}

/// `∇^ν δ` with `∇_i = δ − δ(· − e_i)`.
pub fn backward_difference(nu: &MultiIndex) -> MatSeq {
    let d = nu.dim();
    let mut out = scalar_delta(d);
    for (i, &n) in nu.0.iter().enumerate() {
        let mut e = vec![0; d];
        e[i] = 1;
        let step = scalar_delta(d).sub(&MatSeq::monomial(d, e, QMatrix::identity(1)));
        for _ in 0..n {
            out = out.convolve(&step);
        }
    }
    out
}

/// Generators `U ∗ [∇^ν δ, 0, …, 0]^T` for `|ν| = m + 1` and `U ∗ (δ e_j)`
/// for `j ≥ 2`, each checked to satisfy `υ̂ û = O(‖ξ‖^{m+1})`.
pub fn generator_set(big: &LaurentMatrix, filter: &Jet, m: u32) -> Result<Vec<MatSeq>> {
    let d = big.dim();
    let r = big.r();
    let first = big.u.column(0);
    let mut out: Vec<MatSeq> = of_degree(d, m + 1).iter().map(|nu| first.convolve(&backward_difference(nu))).collect();
    for j in 1..r {
        out.push(big.u.column(j));
    }
    let f = filter.truncate(m);
    for (i, g) in out.iter().enumerate() {
        if !f.product(&sequence_jet(g, m, None))?.vanishes_to(m) {
            return Err(Error::Construction(format!("generator {} is outside the moment space", i + 1)));
        }
    }
    Ok(out)
}

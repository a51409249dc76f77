//! Exact piecewise-polynomial oracles.
//!
//! A [`PiecewisePoly`] holds one polynomial per interval `(b_i, b_{i+1}]`
//! and vanishes outside `(b_0, b_n]`. A [`SplineVector`] is a column of
//! components, each a tensor product of univariate factors.

use crate::error::{Error, Result};
use crate::expr::Params;
use crate::lattice::MultiIndex;
use crate::mask::{HermiteType, Mask};
use crate::poly::UPoly;
use crate::rational::{abs, binomial, factorial, fmt_q, one, pow2, q, qi, zero, Q};
use num_traits::{Signed, Zero};
use serde_json::json;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePoly {
    breaks: Vec<Q>,
    pieces: Vec<UPoly>,
}

impl PiecewisePoly {
    pub fn new(breaks: Vec<Q>, pieces: Vec<UPoly>) -> Result<PiecewisePoly> {
        if breaks.len() != pieces.len() + 1 || breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("breakpoints must be increasing with one piece per interval".into()));
        }
        Ok(PiecewisePoly { breaks, pieces })
    }

    /// A single polynomial on `(lo, hi]`.
    pub fn on(lo: Q, hi: Q, p: UPoly) -> PiecewisePoly {
        PiecewisePoly { breaks: vec![lo, hi], pieces: vec![p] }
    }

    /// Pieces on consecutive integer intervals starting at `start`.
    pub fn integer_pieces(start: i64, pieces: Vec<UPoly>) -> PiecewisePoly {
        let breaks = (0..=pieces.len() as i64).map(|i| qi(start + i)).collect();
        PiecewisePoly { breaks, pieces }
    }

    pub fn breaks(&self) -> &[Q] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[UPoly] {
        &self.pieces
    }

    pub fn support(&self) -> (Q, Q) {
        (self.breaks[0].clone(), self.breaks[self.breaks.len() - 1].clone())
    }

    pub fn degree(&self) -> usize {
        self.pieces.iter().map(UPoly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &Q) -> Q {
        if x <= &self.breaks[0] {
            return zero();
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if x <= &self.breaks[i + 1] {
                return p.eval(x);
            }
        }
        zero()
    }

    pub fn derivative(&self, order: u32) -> PiecewisePoly {
        PiecewisePoly {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.nth_derivative(order)).collect(),
        }
    }

    /// `x ↦ f(−x)`.
    pub fn reflect(&self) -> PiecewisePoly {
        let m1 = -one();
        PiecewisePoly {
            breaks: self.breaks.iter().rev().map(|b| -b).collect(),
            pieces: self.pieces.iter().rev().map(|p| p.compose_affine(&m1, &zero())).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> PiecewisePoly {
        PiecewisePoly { breaks: self.breaks.clone(), pieces: self.pieces.iter().map(|p| p.scale(s)).collect() }
    }

    /// `self` followed by `other`; the last breakpoint of `self` must be the
    /// first of `other`.
    pub fn join(&self, other: &PiecewisePoly) -> Result<PiecewisePoly> {
        if self.breaks.last() != other.breaks.first() {
            return Err(Error::Precondition("pieces do not abut".into()));
        }
        let mut breaks = self.breaks.clone();
        breaks.extend(other.breaks[1..].iter().cloned());
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(PiecewisePoly { breaks, pieces })
    }

    /// `f(−x)·sign` on the negative side joined with `f` on the positive side.
    pub fn symmetric_extension(&self, odd: bool) -> Result<PiecewisePoly> {
        let left = self.reflect();
        let left = if odd { left.scale(&-one()) } else { left };
        left.join(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "breakpoints": self.breaks.iter().map(fmt_q).collect::<Vec<_>>(),
            "pieces": self.pieces.iter().map(|p| p.coeffs().iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Vector of tensor-product components `φ_j(x) = Π_i f_{j,i}(x_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplineVector {
    dim: usize,
    comps: Vec<Vec<PiecewisePoly>>,
}

impl SplineVector {
    pub fn univariate(comps: Vec<PiecewisePoly>) -> SplineVector {
        SplineVector { dim: 1, comps: comps.into_iter().map(|c| vec![c]).collect() }
    }

    /// Components ordered to match the Kronecker product of the masks.
    pub fn tensor(&self, other: &SplineVector) -> SplineVector {
        let mut comps = Vec::new();
        for a in &self.comps {
            for b in &other.comps {
                comps.push(a.iter().chain(b).cloned().collect());
            }
        }
        SplineVector { dim: self.dim + other.dim, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// The univariate factor of component `j` along axis `i`.
    pub fn factor(&self, j: usize, i: usize) -> &PiecewisePoly {
        &self.comps[j][i]
    }

    pub fn eval_component(&self, j: usize, x: &[Q]) -> Q {
        self.comps[j].iter().zip(x).fold(one(), |acc, (f, xi)| acc * f.eval(xi))
    }

    pub fn eval(&self, x: &[Q]) -> Vec<Q> {
        (0..self.len()).map(|j| self.eval_component(j, x)).collect()
    }

    pub fn derivative(&self, mu: &MultiIndex) -> SplineVector {
        SplineVector {
            dim: self.dim,
            comps: self.comps.iter().map(|c| c.iter().zip(&mu.0).map(|(f, &o)| f.derivative(o)).collect()).collect(),
        }
    }

    fn axis_breaks(&self, i: usize) -> BTreeSet<Q> {
        self.comps.iter().flat_map(|c| c[i].breaks.iter().cloned()).collect()
    }

    fn axis_degree(&self, i: usize) -> usize {
        self.comps.iter().map(|c| c[i].degree()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .comps
            .iter()
            .map(|c| c.iter().map(PiecewisePoly::to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

/// B-spline `B_n = B_{n−1} ∗ χ_{(0,1]}` on `[0, n]`.
pub fn bspline(n: u32) -> PiecewisePoly {
    assert!(n >= 1, "bspline order must be positive");
    let scale = factorial(n - 1).recip();
    let pieces = (0..n)
        .map(|i| {
            let mut p = UPoly::zero();
            for j in 0..=i {
                let c = binomial(n, j) * if j % 2 == 0 { one() } else { -one() };
                p = p.add(&UPoly::shifted_power(&qi(-(j as i64)), n - 1).scale(&c));
            }
            p.scale(&scale)
        })
        .collect();
    PiecewisePoly::integer_pieces(0, pieces)
}

/// Hermite interpolants `θ_0, …, θ_m` on `[−1, 1]` with
/// `θ_ℓ^{(j)}(k) = δ(ℓ − j) δ(k)` for `j ≤ m`, `k ∈ Z`.
pub fn hermite_theta(m: u32) -> SplineVector {
    let x = UPoly::x();
    let right_base = UPoly::new(vec![one(), -one()]).pow(m + 1);
    let left_base = UPoly::new(vec![one(), one()]).pow(m + 1);
    let comps = (0..=m)
        .map(|l| {
            let xl = x.pow(l).scale(&factorial(l).recip());
            let mut sr = UPoly::zero();
            let mut sl = UPoly::zero();
            for j in 0..=(m - l) {
                let c = binomial(m + j, j);
                sr = sr.add(&x.pow(j).scale(&c));
                let sign = if j % 2 == 0 { one() } else { -one() };
                sl = sl.add(&x.pow(j).scale(&(c * sign)));
            }
            PiecewisePoly::integer_pieces(-1, vec![left_base.mul(&xl).mul(&sl), right_base.mul(&xl).mul(&sr)])
        })
        .collect();
    SplineVector::univariate(comps)
}

/// Generalized Hermite interpolants of the `C^m` spline space with
/// `N` interior nodes per unit interval.
pub fn example12_interpolant(m: u32, n: u32) -> (SplineVector, HermiteType) {
    assert!(n >= 1, "node count must be positive");
    let r = (m + 1) * n;
    let mut lambda = Vec::new();
    let mut tau = Vec::new();
    let mut comps = Vec::new();
    for l in 0..r {
        let nu = l % (m + 1);
        let j = l / (m + 1);
        let t = q(j as i64, n as i64);
        let mut p = UPoly::constant(one());
        for k in 0..=n {
            if k != j {
                p = p.mul(&UPoly::linear_root(&q(k as i64, n as i64)).pow(m + 1));
            }
        }
        let series = p
            .compose_affine(&one(), &t)
            .series_reciprocal(m as usize)
            .expect("p_l does not vanish at its own node");
        let local = UPoly::x().pow(nu).mul(&series).scale(&factorial(nu).recip()).truncate(m as usize);
        let ql = local.compose_affine(&one(), &-t.clone());
        let right = p.mul(&ql);
        let f = if j == 0 {
            let sign = if nu.is_multiple_of(2) { one() } else { -one() };
            let left = right.compose_affine(&-one(), &zero()).scale(&sign);
            PiecewisePoly::integer_pieces(-1, vec![left, right])
        } else {
            PiecewisePoly::integer_pieces(0, vec![right])
        };
        comps.push(f);
        lambda.push(MultiIndex(vec![nu]));
        tau.push(vec![t]);
    }
    let htype = HermiteType::new(lambda, Some(tau)).expect("valid interpolation type");
    (SplineVector::univariate(comps), htype)
}

/// Largest refinement defect `φ(x) − 2^d Σ_k a(k) φ(2x − k)` over a
/// certifying probe set, with the point where it occurs.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub max_abs: Q,
    pub witness: Option<Vec<Q>>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.max_abs.is_zero()
    }
}

/// Probe points along one axis: `deg + 1` interior points of every cell
/// of the common refinement of `φ` and all `φ(2· − k)`.
fn axis_probes(phi: &SplineVector, axis: usize, shifts: &[i64]) -> Vec<Q> {
    let mut cuts = phi.axis_breaks(axis);
    let base: Vec<Q> = cuts.iter().cloned().collect();
    for k in shifts {
        for b in &base {
            cuts.insert((b + qi(*k)) / qi(2));
        }
    }
    let cuts: Vec<Q> = cuts.into_iter().collect();
    let deg = phi.axis_degree(axis) as i64;
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let h = (&w[1] - &w[0]) / qi(deg + 2);
        for s in 1..=deg + 1 {
            out.push(&w[0] + &h * qi(s));
        }
    }
    out
}

pub fn refinement_residual(phi: &SplineVector, mask: &Mask) -> Result<Residual> {
    let d = mask.dim();
    if phi.dim() != d || phi.len() != mask.r() {
        return Err(Error::ShapeMismatch(format!(
            "spline of {} components in dimension {} vs mask {}x{} in dimension {d}",
            phi.len(),
            phi.dim(),
            mask.r(),
            mask.r()
        )));
    }
    let axes: Vec<Vec<Q>> = (0..d)
        .map(|i| {
            let shifts: BTreeSet<i64> = mask.support().map(|k| k[i]).collect();
            axis_probes(phi, i, &shifts.into_iter().collect::<Vec<_>>())
        })
        .collect();
    let scale = pow2(d as i64);
    let mut best = Residual { max_abs: zero(), witness: None };
    let mut idx = vec![0usize; d];
    loop {
        let x: Vec<Q> = idx.iter().enumerate().map(|(i, &j)| axes[i][j].clone()).collect();
        let lhs = phi.eval(&x);
        let mut rhs = vec![zero(); phi.len()];
        for (k, a) in mask.iter() {
            let y: Vec<Q> = x.iter().zip(k).map(|(xi, ki)| qi(2) * xi - qi(*ki)).collect();
            let v = phi.eval(&y);
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            for (i, acc) in rhs.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    *acc += &a[(i, j)] * vj;
                }
            }
        }
        for (l, r) in lhs.iter().zip(&rhs) {
            let diff = abs(&(l - r * &scale));
            if diff > best.max_abs {
                best = Residual { max_abs: diff, witness: Some(x.clone()) };
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(best);
            }
            idx[i] += 1;
            if idx[i] < axes[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn poly(c: &[Q]) -> UPoly {
    UPoly::new(c.to_vec())
}

fn qs(v: &[(i64, i64)]) -> Vec<Q> {
    v.iter().map(|&(n, d)| q(n, d)).collect()
}

fn birkhoff2_spline(t: &Q) -> Result<SplineVector> {
    let xm2 = UPoly::linear_root(&qi(2));
    let phi1_a = poly(&qs(&[(16, 21), (0, 1), (-4, 3), (0, 1), (5, 3), (-3, 2), (2, 3), (-1, 7)]));
    let lin = |a: (i64, i64), b: (i64, i64)| q(a.0, a.1) + q(b.0, b.1) * t;
    let phi2_a = poly(&[
        -lin((152, 5145), (128, 441)),
        zero(),
        lin((-4, 49), (32, 63)),
        zero(),
        lin((64, 147), (-40, 63)),
        lin((-386, 735), (4, 7)),
        lin((61, 294), (-16, 63)),
        lin((-85, 4116), (8, 147)),
    ]);
    let phi1_b = xm2.pow(5).mul(&poly(&qs(&[(1, 1), (-8, 1), (2, 1)]))).scale(&q(1, 42));
    let quad = poly(&[qi(792) + qi(560) * t, -(qi(2220) + qi(4480) * t), qi(555) + qi(1120) * t]);
    // The leading minus keeps φ2 continuous at x = 1.
    let phi2_b = xm2.pow(5).mul(&quad).scale(&q(-1, 61740));
    let c1 = PiecewisePoly::integer_pieces(0, vec![phi1_a, phi1_b]).symmetric_extension(false)?;
    let c2 = PiecewisePoly::integer_pieces(0, vec![phi2_a, phi2_b]).symmetric_extension(false)?;
    Ok(SplineVector::univariate(vec![c1, c2]))
}

fn dual_sr6_spline() -> SplineVector {
    let xp1 = UPoly::linear_root(&qi(-1));
    let xm2 = UPoly::linear_root(&qi(2));
    let c1 = PiecewisePoly::integer_pieces(
        -1,
        vec![
            xp1.pow(4).mul(&poly(&qs(&[(2, 1), (-3, 1)]))).scale(&q(1, 4)),
            poly(&qs(&[(1, 2), (5, 4), (0, 1), (-5, 2), (5, 4)])),
            xm2.pow(4).mul(&poly(&qs(&[(-1, 1), (3, 1)]))).scale(&q(1, 4)),
        ],
    );
    let c2 = PiecewisePoly::integer_pieces(
        -1,
        vec![
            xp1.pow(4).mul(&poly(&qs(&[(-4, 1), (11, 1)]))).scale(&q(1, 40)),
            poly(&qs(&[(-1, 1), (2, 1)]))
                .mul(&poly(&qs(&[(4, 1), (13, 1), (6, 1), (-38, 1), (19, 1)])))
                .scale(&q(1, 40)),
            xm2.pow(4).mul(&poly(&qs(&[(-7, 1), (11, 1)]))).scale(&q(1, 40)),
        ],
    );
    SplineVector::univariate(vec![c1, c2])
}

fn lagrange_spline(second: bool) -> SplineVector {
    let xp1 = UPoly::linear_root(&qi(-1));
    let one_minus = poly(&[one(), -one()]);
    let two_minus = poly(&[qi(2), -one()]);
    let c1 = PiecewisePoly::integer_pieces(
        -1,
        vec![
            xp1.pow(3).mul(&poly(&[one(), qi(-3)])).scale(&q(5, 4)),
            one_minus.pow(3).mul(&poly(&[one(), qi(3)])).scale(&q(5, 4)),
            UPoly::zero(),
        ],
    );
    let c2 = if second {
        PiecewisePoly::integer_pieces(
            -1,
            vec![
                xp1.pow(4).scale(&q(5, 8)),
                poly(&qs(&[(5, 8), (5, 2), (15, 4), (-25, 2), (25, 4)])),
                UPoly::linear_root(&qi(2)).pow(4).scale(&q(5, 8)),
            ],
        )
    } else {
        PiecewisePoly::integer_pieces(
            -1,
            vec![
                xp1.pow(3).scale(&q(5, 4)),
                poly(&qs(&[(5, 4), (15, 4), (15, 4), (-15, 1), (15, 2)])),
                two_minus.pow(3).scale(&q(5, 4)),
            ],
        )
    };
    SplineVector::univariate(vec![c1, c2])
}

/// Closed-form basis vector of a registry example, keyed by example id.
/// The `ex6.2b` spline depends on the family parameter `t`.
pub fn registry_spline(id: &str, params: &Params) -> Result<SplineVector> {
    match id {
        "ex6.2b" => birkhoff2_spline(params.get("t").unwrap_or(&zero())),
        "ex6.3b" => Ok(dual_sr6_spline()),
        "ex6.4c" => Ok(lagrange_spline(false)),
        "ex6.4d" => Ok(lagrange_spline(true)),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

/// Max `|f(x) − g(x)|` over the given points.
pub fn max_deviation(f: &PiecewisePoly, g: &PiecewisePoly, points: &[Q]) -> Q {
    points.iter().map(|x| (f.eval(x) - g.eval(x)).abs()).fold(zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::params;
    use crate::mask::Mask;
    use crate::matrix::QMatrix;
    use crate::registry::find;
    use crate::seq::MatSeq;

    fn scalar_mask(c: &[(i64, Q)]) -> Mask {
        Mask::from_entries(1, 1, c.iter().map(|(k, v)| (vec![*k], QMatrix::from_rows(vec![vec![v.clone()]])))).unwrap()
    }

    fn bspline_mask(n: u32) -> Mask {
        scalar_mask(&(0..=n).map(|k| (k as i64, binomial(n, k) / pow2(n as i64))).collect::<Vec<_>>())
    }

    #[test]
    fn bspline_values() {
        let b1 = bspline(1);
        assert_eq!(b1.eval(&qi(0)), zero());
        assert_eq!(b1.eval(&qi(1)), one());
        assert_eq!(b1.eval(&q(1, 2)), one());
        let b2 = bspline(2);
        assert_eq!(b2.eval(&qi(1)), one());
        assert_eq!(b2.eval(&q(1, 2)), q(1, 2));
        assert_eq!(b2.eval(&qi(5)), zero());
        assert_eq!(b2.eval(&qi(-1)), zero());
        // B_3' = B_2 − B_2(· − 1).
        let d = bspline(3).derivative(1);
        assert_eq!(d.eval(&qi(1)), b2.eval(&qi(1)) - b2.eval(&qi(0)));
        // Cubic B-spline values 1/6, 2/3, 1/6.
        let b4 = bspline(4);
        assert_eq!([1, 2, 3].map(|k| b4.eval(&qi(k))), [q(1, 6), q(2, 3), q(1, 6)]);
    }

    #[test]
    fn bspline_refinement_exact() {
        for n in 1..=6 {
            let phi = SplineVector::univariate(vec![bspline(n)]);
            assert!(refinement_residual(&phi, &bspline_mask(n)).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn perturbed_mask_has_witness() {
        let phi = SplineVector::univariate(vec![bspline(3)]);
        let mut c: Vec<(i64, Q)> = (0..=3).map(|k| (k, binomial(3, k as u32) / qi(8))).collect();
        c[1].1 += q(1, 64);
        let r = refinement_residual(&phi, &scalar_mask(&c)).unwrap();
        assert!(!r.is_zero());
        assert!(r.witness.is_some());
    }

    #[test]
    fn theta_interpolation() {
        let th = hermite_theta(1);
        let x = q(1, 3);
        let f0 = (one() - &x) * (one() - &x) * (one() + qi(2) * &x);
        assert_eq!(th.eval_component(0, std::slice::from_ref(&x)), f0);
        assert_eq!(th.eval_component(1, std::slice::from_ref(&x)), (one() - &x) * (one() - &x) * &x);
        for m in 0..=4u32 {
            let th = hermite_theta(m);
            for l in 0..=m {
                for j in 0..=m {
                    let dj = th.derivative(&MultiIndex(vec![j]));
                    for k in -2..=2 {
                        let v = dj.eval_component(l as usize, &[qi(k)]);
                        let want = if l == j && k == 0 { one() } else { zero() };
                        assert_eq!(v, want, "m={m} l={l} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn example12_small_cases() {
        let (hat, t) = example12_interpolant(0, 1);
        assert_eq!(t.r(), 1);
        for x in [q(-1, 2), q(1, 4), qi(1), q(3, 2)] {
            let want = (one() - x.abs()).max(zero());
            assert_eq!(hat.eval_component(0, &[x]), want);
        }
        let (h, _) = example12_interpolant(1, 1);
        let d = h.derivative(&MultiIndex(vec![1]));
        assert_eq!(d.eval_component(1, &[zero()]), one());
        assert_eq!(h.eval_component(1, &[qi(1)]), zero());
        assert_eq!(h.eval_component(1, &[qi(-1)]), zero());
        assert_eq!(h, hermite_theta(1));
    }

    #[test]
    fn example12_interpolation_property() {
        for (m, n) in [(0, 2), (1, 2), (2, 1), (1, 3)] {
            let (phi, t) = example12_interpolant(m, n);
            for l in 0..t.r() {
                let dl = phi.derivative(&t.lambda[l]);
                for k in -2..=2 {
                    let x = qi(k) + &t.tau[l][0];
                    for j in 0..t.r() {
                        let want = if j == l && k == 0 { one() } else { zero() };
                        assert_eq!(dl.eval_component(j, std::slice::from_ref(&x)), want, "m={m} N={n} l={l} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn printed_splines_refine() {
        for (id, t) in [("ex6.2b", q(0, 1)), ("ex6.2b", q(1, 1)), ("ex6.3b", zero()), ("ex6.4c", zero()), ("ex6.4d", zero())] {
            let e = find(id).unwrap();
            let p = if e.family.params.is_empty() { Params::new() } else { params(&[("t", t.clone())]) };
            let inst = e.family.instantiate(&p).unwrap();
            let phi = registry_spline(id, &p).unwrap();
            let r = refinement_residual(&phi, &inst.mask).unwrap();
            assert!(r.is_zero(), "{id} t={t}: residual {} at {:?}", fmt_q(&r.max_abs), r.witness);
        }
        assert!(matches!(registry_spline("bogus", &Params::new()), Err(Error::UnknownId(_))));
    }

    #[test]
    fn tensor_bspline_refines() {
        let b = SplineVector::univariate(vec![bspline(2)]);
        let phi = b.tensor(&b);
        let a = bspline_mask(2);
        let mut seq = MatSeq::new(2, 1, 1);
        for (j, x) in a.iter() {
            for (k, y) in a.iter() {
                seq.insert(vec![j[0], k[0]], x.kron(y));
            }
        }
        let m = Mask::new(seq).unwrap();
        assert!(refinement_residual(&phi, &m).unwrap().is_zero());
        assert_eq!(phi.eval(&[qi(1), q(1, 2)]), vec![q(1, 2)]);
    }

    #[test]
    fn json_dump_shape() {
        let j = bspline(2).to_json();
        assert_eq!(j["breakpoints"], json!(["0", "1", "2"]));
        assert_eq!(j["pieces"][1], json!(["2", "-1"]));
    }
}

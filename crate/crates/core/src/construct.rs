//! Mask factories: B-splines, tensor products, coset vectorization,
//! conversion to a prescribed generalized Hermite type, and masks read off
//! interpolating splines.

use crate::analysis::{is_generalized_hermite, sum_rule_order};
use crate::error::{Error, Result};
use crate::jets::{phase_monomial_jet, Jet};
use crate::lattice::{box_points, MultiIndex, Point};
use crate::mask::{HermiteType, Mask};
use crate::matrix::QMatrix;
use crate::normalform::{normalizer_to, transform_mask};
use crate::rational::{binomial, pow2, Q};
use crate::seq::MatSeq;
use crate::splines::SplineVector;

/// `2^{-n} (1 + e^{-iξ})^n`: coefficients `binom(n, k) / 2^n` at `k = 0..n`.
pub fn bspline_mask(n: u32) -> Result<Mask> {
    if n == 0 {
        return Err(Error::Precondition("B-spline order must be at least 1".into()));
    }
    let s = pow2(-(n as i64));
    Mask::from_entries(1, 1, (0..=n).map(|k| (vec![k as i64], QMatrix::from_rows(vec![vec![binomial(n, k) * &s]]))))
}

/// Coefficient `a(j) ⊗ b(k)` at `(j, k)`.
pub fn tensor_mask(a: &Mask, b: &Mask) -> Result<Mask> {
    let mut out = MatSeq::new(a.dim() + b.dim(), a.r() * b.r(), a.r() * b.r());
    for (j, x) in a.seq().iter() {
        for (k, y) in b.seq().iter() {
            let mut p = j.clone();
            p.extend_from_slice(k);
            out.insert(p, x.kron(y));
        }
    }
    Mask::new(out)
}

/// Type of [`tensor_mask`]: entry `(i, j)` is `(ν_i, ν'_j)` with
/// translation `(τ_i, τ'_j)`, in the same order as the Kronecker product.
pub fn tensor_type(a: &HermiteType, b: &HermiteType) -> Result<HermiteType> {
    let mut lambda = Vec::new();
    let mut tau = Vec::new();
    for i in 0..a.r() {
        for j in 0..b.r() {
            let mut nu = a.lambda[i].0.clone();
            nu.extend_from_slice(&b.lambda[j].0);
            lambda.push(MultiIndex(nu));
            let mut t = a.tau[i].clone();
            t.extend_from_slice(&b.tau[j]);
            tau.push(t);
        }
    }
    HermiteType::new(lambda, Some(tau))
}

/// `⊗^d a` for a univariate mask `a`.
pub fn tensor_power(a: &Mask, d: usize) -> Result<Mask> {
    let mut out = a.clone();
    for _ in 1..d {
        out = tensor_mask(&out, a)?;
    }
    Ok(out)
}

/// Lattice points of `N [0,1)^d`, lexicographic with the origin first.
pub fn coset_representatives(n: &QMatrix) -> Result<Vec<Point>> {
    let d = n.rows();
    let ninv = n.inverse().map_err(|_| Error::Singular("vectorization matrix".into()))?;
    let corners = box_points(&vec![0; d], &vec![1; d]);
    let images: Vec<Vec<Q>> = corners.iter().map(|c| n.mul_vec(&c.iter().map(|&x| Q::from_integer(x.into())).collect::<Vec<_>>())).collect();
    let lo: Point = (0..d).map(|i| images.iter().map(|v| floor_i64(&v[i])).min().unwrap()).collect();
    let hi: Point = (0..d).map(|i| images.iter().map(|v| floor_i64(&v[i])).max().unwrap()).collect();
    let one = Q::from_integer(1.into());
    let mut out: Vec<Point> = box_points(&lo, &hi)
        .into_iter()
        .filter(|g| {
            let x = ninv.mul_vec(&g.iter().map(|&v| Q::from_integer(v.into())).collect::<Vec<_>>());
            x.iter().all(|t| *t >= Q::from_integer(0.into()) && *t < one)
        })
        .collect();
    out.sort();
    let zero = vec![0; d];
    out.retain(|g| *g != zero);
    out.insert(0, zero);
    Ok(out)
}

fn floor_i64(x: &Q) -> i64 {
    let f = x.floor();
    i64::try_from(f.to_integer()).expect("small coordinate")
}

/// Result of coset vectorization.
#[derive(Clone, Debug)]
pub struct Vectorized {
    pub mask: Mask,
    pub cosets: Vec<Point>,
}

/// Lagrange-like type of a vectorized scalar mask: `Λ = {0, …, 0}` with
/// translations `N^{-1} γ_j`.
pub fn vectorized_type(n: &QMatrix, cosets: &[Point]) -> Result<HermiteType> {
    let inv = n.inverse()?;
    let d = n.rows();
    let tau = cosets
        .iter()
        .map(|g| (0..d).map(|i| (0..d).map(|j| &inv[(i, j)] * Q::from_integer(g[j].into())).sum()).collect())
        .collect();
    HermiteType::new(vec![MultiIndex::zero(d); cosets.len()], Some(tau))
}

/// `a(n)` with block `(j, k)` equal to `A(N n − 2γ_j + γ_k)`.
pub fn vectorize_mask(a: &Mask, n: &QMatrix) -> Result<Vectorized> {
    let d = a.dim();
    if n.rows() != d || n.cols() != d {
        return Err(Error::DimensionMismatch("vectorization matrix must be d×d".into()));
    }
    if n.det() == Q::from_integer(0.into()) {
        return Err(Error::Singular("vectorization matrix".into()));
    }
    let cosets = coset_representatives(n)?;
    let ninv = n.inverse()?;
    let l = a.r();
    let r = cosets.len();
    let mut out = MatSeq::new(d, r * l, r * l);
    for (p, block) in a.seq().iter() {
        for (j, gj) in cosets.iter().enumerate() {
            for (k, gk) in cosets.iter().enumerate() {
                let x: Vec<Q> = (0..d).map(|t| Q::from_integer((p[t] + 2 * gj[t] - gk[t]).into())).collect();
                let nn = ninv.mul_vec(&x);
                if !nn.iter().all(|t| t.is_integer()) {
                    continue;
                }
                let key: Point = nn.iter().map(|t| i64::try_from(t.to_integer()).expect("small coordinate")).collect();
                let mut m = QMatrix::zeros(r * l, r * l);
                m.set_block(j * l, k * l, block);
                out.add_at(key, &m);
            }
        }
    }
    Ok(Vectorized { mask: Mask::new(out)?, cosets })
}

/// Companion filter `[e^{iγ_j·N^{-T}ξ} υ̂_A(N^{-T}ξ)]_j` of a vectorized mask.
pub fn vectorized_filter(filter: &Jet, n: &QMatrix, cosets: &[Point]) -> Result<Jet> {
    let d = filter.dim();
    let ninv = n.inverse()?;
    let sub = filter.linear_substitute(&ninv.transpose());
    let parts = cosets
        .iter()
        .map(|g| {
            let tau = ninv.mul_vec(&g.iter().map(|&v| Q::from_integer(v.into())).collect::<Vec<_>>());
            phase_monomial_jet(&MultiIndex::zero(d), &tau, filter.order()).product(&sub)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Jet::row_from_components(&parts))
}

/// Row `[(iξ)^{ν_1}, …, (iξ)^{ν_r}]` to `order`.
pub fn hermite_row(htype: &HermiteType, order: u32) -> Jet {
    let d = htype.dim();
    let zero = vec![Q::from_integer(0.into()); d];
    let parts: Vec<Jet> = htype.lambda.iter().map(|nu| phase_monomial_jet(nu, &zero, order)).collect();
    Jet::row_from_components(&parts)
}

/// Transforms `å` so that its matching filter becomes the Hermite row of
/// `htype` to the full sum-rule order.
pub fn hermite_convert(mask: &Mask, htype: &HermiteType) -> Result<Mask> {
    if mask.r() != htype.r() || mask.dim() != htype.dim() {
        return Err(Error::DimensionMismatch("mask and type sizes differ".into()));
    }
    let need = htype.max_order() + 1;
    let sr = sum_rule_order(mask, need.max(8))?;
    if sr.order < need {
        return Err(Error::InsufficientOrder { needed: need, have: sr.order });
    }
    if mask.r() == 1 {
        // A scalar type {0} only fixes υ̂(0) = 1.
        return Ok(mask.clone());
    }
    let m = sr.order - 1;
    let filter = sr.filter.expect("filter exists for nonzero order").truncate(m);
    let big = normalizer_to(&filter, &hermite_row(htype, m), m)?;
    let out = transform_mask(mask, &big)?;
    if !is_generalized_hermite(&out, htype, need)?.ok {
        return Err(Error::Construction("converted mask misses the target type".into()));
    }
    Ok(out)
}

/// Spline-based mask of type `Λ`: vectorize `⊗^d a^B_{m+2}` with
/// `N = diag(r, 1, …, 1)` and convert.
pub fn existence_pipeline(htype: &HermiteType) -> Result<Mask> {
    let d = htype.dim();
    let r = htype.r();
    let m = htype.max_order();
    let a = tensor_power(&bspline_mask(m + 2)?, d)?;
    let mut diag = vec![Q::from_integer(1.into()); d];
    diag[0] = Q::from_integer((r as i64).into());
    let v = vectorize_mask(&a, &QMatrix::diag(&diag))?;
    hermite_convert(&v.mask, htype)
}

/// `a(k)` with column `ℓ` equal to `2^{−d−|ν_ℓ|} φ^{(ν_ℓ)}((k + τ_ℓ)/2)`.
pub fn interpolant_to_mask(phi: &SplineVector, htype: &HermiteType) -> Result<Mask> {
    let d = phi.dim();
    let r = phi.len();
    if r != htype.r() || d != htype.dim() {
        return Err(Error::DimensionMismatch("spline and type sizes differ".into()));
    }
    let (lo, hi) = spline_box(phi);
    let klo: Point = lo.iter().map(|x| 2 * x - 1).collect();
    let khi: Point = hi.iter().map(|x| 2 * x + 1).collect();
    let derivs: Vec<SplineVector> = htype.lambda.iter().map(|nu| phi.derivative(nu)).collect();
    let half = Q::new(1.into(), 2.into());
    let mut out = MatSeq::new(d, r, r);
    for k in box_points(&klo, &khi) {
        let mut m = QMatrix::zeros(r, r);
        for (l, dl) in derivs.iter().enumerate() {
            let x: Vec<Q> = (0..d).map(|t| (Q::from_integer(k[t].into()) + &htype.tau[l][t]) * &half).collect();
            let s = pow2(-(d as i64) - htype.lambda[l].abs() as i64);
            let col: Vec<Q> = dl.eval(&x).into_iter().map(|v| v * &s).collect();
            m.set_col(l, &col);
        }
        if !m.is_zero() {
            out.insert(k, m);
        }
    }
    Mask::new(out)
}

// Integer box containing the support of every component.
fn spline_box(phi: &SplineVector) -> (Point, Point) {
    let d = phi.dim();
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for j in 0..phi.len() {
        for t in 0..d {
            let (a, b) = phi.factor(j, t).support();
            lo[t] = lo[t].min(floor_i64(&a));
            hi[t] = hi[t].max(i64::try_from(b.ceil().to_integer()).expect("small coordinate"));
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::interpolatory_check;
    use crate::rational::{q, qi};
    use crate::splines::{example12_interpolant, hermite_theta};

    fn scalar(x: Q) -> QMatrix {
        QMatrix::from_rows(vec![vec![x]])
    }

    #[test]
    fn bspline_coefficients() {
        let a = bspline_mask(2).unwrap();
        assert_eq!(a.seq().get(&[0]).unwrap(), &scalar(q(1, 4)));
        assert_eq!(a.seq().get(&[1]).unwrap(), &scalar(q(1, 2)));
        assert_eq!(a.seq().get(&[2]).unwrap(), &scalar(q(1, 4)));
        for n in 1..=6 {
            assert_eq!(sum_rule_order(&bspline_mask(n).unwrap(), 10).unwrap().order, n);
        }
        assert!(bspline_mask(0).is_err());
    }

    #[test]
    fn tensor_square() {
        let a = tensor_power(&bspline_mask(2).unwrap(), 2).unwrap();
        assert_eq!(a.seq().len(), 9);
        assert_eq!(a.seq().get(&[1, 1]).unwrap(), &scalar(q(1, 4)));
        assert_eq!(sum_rule_order(&a, 6).unwrap().order, 2);
        let delta = Mask::new(MatSeq::delta(1, 1)).unwrap();
        let lifted = tensor_mask(&bspline_mask(3).unwrap(), &delta).unwrap();
        assert_eq!(lifted.seq().get(&[2, 0]).unwrap(), &scalar(q(3, 8)));
    }

    #[test]
    fn cosets_and_identity() {
        let n = QMatrix::from_rows(vec![vec![qi(2), qi(1)], vec![qi(0), qi(2)]]);
        let c = coset_representatives(&n).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c[0], vec![0, 0]);
        let a = bspline_mask(3).unwrap();
        let v = vectorize_mask(&a, &QMatrix::identity(1)).unwrap();
        assert_eq!(v.mask, a);
        assert!(vectorize_mask(&a, &QMatrix::zeros(1, 1)).is_err());
    }

    #[test]
    fn vectorized_bspline() {
        let a = bspline_mask(2).unwrap();
        let n = QMatrix::diag(&[qi(2)]);
        let v = vectorize_mask(&a, &n).unwrap();
        assert_eq!(v.mask.r(), 2);
        let sr = sum_rule_order(&v.mask, 8).unwrap();
        assert_eq!(sr.order, 2);
        // Block (j, k) of a(n) against A(2n − 2γ_j + γ_k), entry by entry.
        for (k, m) in v.mask.seq().iter() {
            for j in 0..2i64 {
                for l in 0..2i64 {
                    let p = 2 * k[0] - 2 * j + l;
                    let want = a.seq().get(&[p]).map(|x| x[(0, 0)].clone()).unwrap_or_else(|| qi(0));
                    assert_eq!(m[(j as usize, l as usize)], want);
                }
            }
        }
        let fa = sum_rule_order(&a, 8).unwrap().filter.unwrap();
        let comp = vectorized_filter(&fa, &n, &v.cosets).unwrap();
        assert!(comp.agrees_to(&sr.filter.unwrap(), 1));
    }

    #[test]
    fn companion_filter_2d() {
        let a = tensor_power(&bspline_mask(3).unwrap(), 2).unwrap();
        let n = QMatrix::from_rows(vec![vec![qi(1), qi(1)], vec![qi(-1), qi(1)]]);
        let v = vectorize_mask(&a, &n).unwrap();
        let sr = sum_rule_order(&v.mask, 8).unwrap();
        assert_eq!(sr.order, 3);
        let fa = sum_rule_order(&a, 8).unwrap().filter.unwrap();
        let comp = vectorized_filter(&fa, &n, &v.cosets).unwrap();
        assert!(comp.agrees_to(&sr.filter.unwrap(), 2));
    }

    #[test]
    fn convert_to_hermite() {
        let v = vectorize_mask(&bspline_mask(3).unwrap(), &QMatrix::diag(&[qi(2)])).unwrap();
        let ht = HermiteType::zero_shift(&[&[0], &[1]]);
        let h = hermite_convert(&v.mask, &ht).unwrap();
        let sr = sum_rule_order(&h, 8).unwrap();
        assert_eq!(sr.order, 3);
        assert_eq!(sr.filter.unwrap(), hermite_row(&ht, 2));
        let scalar_type = HermiteType::zero_shift(&[&[0]]);
        let b = hermite_convert(&bspline_mask(2).unwrap(), &scalar_type).unwrap();
        assert_eq!(b, bspline_mask(2).unwrap());
        assert_eq!(existence_pipeline(&scalar_type).unwrap(), b);
        assert!(matches!(hermite_convert(&v.mask, &HermiteType::zero_shift(&[&[0], &[3]])), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn existence_one_dim() {
        let ht = HermiteType::zero_shift(&[&[0], &[2]]);
        let a = existence_pipeline(&ht).unwrap();
        assert_eq!(a.r(), 2);
        assert!(is_generalized_hermite(&a, &ht, 6).unwrap().ok);
        assert_eq!(sum_rule_order(&a, 8).unwrap().order, 4);
    }

    #[test]
    fn hat_and_hermite_cubic_masks() {
        let (hat, ht) = example12_interpolant(0, 1);
        let a = interpolant_to_mask(&hat, &ht).unwrap();
        let expect = Mask::from_entries(1, 1, [(vec![-1], scalar(q(1, 4))), (vec![0], scalar(q(1, 2))), (vec![1], scalar(q(1, 4)))]).unwrap();
        assert_eq!(a, expect);
        let ht = HermiteType::zero_shift(&[&[0], &[1]]);
        let a = interpolant_to_mask(&hermite_theta(1), &ht).unwrap();
        let m = |r: [[Q; 2]; 2]| QMatrix::from_rows(r.into_iter().map(|x| x.to_vec()).collect());
        assert_eq!(a.seq().get(&[0]).unwrap(), &m([[q(1, 2), qi(0)], [qi(0), q(1, 4)]]));
        assert_eq!(a.seq().get(&[1]).unwrap(), &m([[q(1, 4), q(-3, 8)], [q(1, 16), q(-1, 16)]]));
        assert!(interpolatory_check(&a, &ht).unwrap());
        assert_eq!(sum_rule_order(&a, 8).unwrap().order, 4);
    }

    #[test]
    fn two_channel_interpolant() {
        let (phi, ht) = example12_interpolant(1, 2);
        let a = interpolant_to_mask(&phi, &ht).unwrap();
        assert_eq!(a.r(), 4);
        assert!(interpolatory_check(&a, &ht).unwrap());
    }
}

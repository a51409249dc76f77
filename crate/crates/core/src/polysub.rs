//! Vector polynomials, the refinement engine and polynomial-property checks.
//!
//! Data is refined by `w_n(j) = 2^d Σ_k w_{n−1}(k) D^{n−1} a(j − 2k) D^{−n}`
//! with `D = diag(2^{−|ν_1|}, …, 2^{−|ν_r|})`. Column `ℓ` of `w_n(k)` is
//! attached to the position `2^{−n}(k + τ_ℓ)`.

use crate::analysis::theta_for;
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::lattice::{box_points, up_to_degree, MultiIndex, Point};
use crate::mask::{HermiteType, Mask, VectorData};
use crate::matrix::QMatrix;
use crate::poly::Poly;
use crate::rational::{fmt_q, one, pow2, qi, to_f64, zero, Q};
use crate::seq::MatSeq;
use num_traits::Zero;
use std::io::Write;

/// Row of `r` polynomials on `R^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorPolynomial {
    dim: usize,
    comps: Vec<Poly>,
}

impl VectorPolynomial {
    pub fn new(dim: usize, comps: Vec<Poly>) -> VectorPolynomial {
        assert!(comps.iter().all(|p| p.dim() == dim));
        VectorPolynomial { dim, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn width(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, l: usize) -> &Poly {
        &self.comps[l]
    }

    pub fn degree(&self) -> u32 {
        self.comps.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[Q]) -> Vec<Q> {
        self.comps.iter().map(|p| p.eval(x)).collect()
    }

    pub fn eval_int(&self, k: &[i64]) -> Vec<Q> {
        self.comps.iter().map(|p| p.eval_int(k)).collect()
    }

    pub fn derivative(&self, mu: &MultiIndex) -> VectorPolynomial {
        VectorPolynomial { dim: self.dim, comps: self.comps.iter().map(|p| p.derivative(mu)).collect() }
    }

    pub fn scale(&self, s: &Q) -> VectorPolynomial {
        VectorPolynomial { dim: self.dim, comps: self.comps.iter().map(|p| p.scale(s)).collect() }
    }

    /// `p(· − t)` for a lattice shift `t`.
    pub fn translate(&self, t: &[i64]) -> VectorPolynomial {
        let neg: Vec<Q> = t.iter().map(|x| qi(-x)).collect();
        VectorPolynomial { dim: self.dim, comps: self.comps.iter().map(|p| p.shift(&neg)).collect() }
    }

    /// Restriction to the lattice box `[lo, hi]` as 1×r data.
    pub fn sample(&self, lo: &[i64], hi: &[i64]) -> VectorData {
        let mut seq = MatSeq::new(self.dim, 1, self.width());
        for k in box_points(lo, hi) {
            let row = self.eval_int(&k);
            seq.insert(k, QMatrix::from_rows(vec![row]));
        }
        VectorData::new(0, seq)
    }
}

/// `p ∗ v = Σ_μ (−1)^{|μ|}/μ! p^{(μ)} N_μ(v)` for a row jet `v`.
pub fn conv_poly(p: &Poly, v: &Jet) -> Result<VectorPolynomial> {
    let (rows, r) = v.shape();
    if rows != 1 || v.dim() != p.dim() {
        return Err(Error::ShapeMismatch(format!("expected a 1×r jet in dimension {}", p.dim())));
    }
    let deg = p.degree();
    if v.order() < deg {
        return Err(Error::InsufficientOrder { needed: deg, have: v.order() });
    }
    let mut comps = vec![Poly::zero(p.dim()); r];
    for mu in up_to_degree(p.dim(), deg) {
        let dp = p.derivative(&mu);
        if dp.is_zero() {
            continue;
        }
        let sign = if mu.abs() % 2 == 0 { one() } else { -one() };
        let w = sign / mu.factorial();
        let n = v.get(&mu);
        for (l, c) in comps.iter_mut().enumerate() {
            if !n[(0, l)].is_zero() {
                *c = c.add(&dp.scale(&(&w * &n[(0, l)])));
            }
        }
    }
    Ok(VectorPolynomial::new(p.dim(), comps))
}

/// `p_μ = (·)^μ/μ! ∗ υ`.
pub fn pmu(mu: &MultiIndex, filter: &Jet) -> Result<VectorPolynomial> {
    conv_poly(&Poly::normalized_monomial(mu), filter)
}

/// `(S_a v)(j) = 2^d Σ_k v(k) a(j − 2k)` for finitely supported `v`.
pub fn subdivide(mask: &Mask, v: &MatSeq) -> MatSeq {
    v.upsample(2).convolve(mask.seq()).scale(&pow2(mask.dim() as i64))
}

/// `(S_a p)(j)` at a single lattice point for polynomial input.
pub fn subdivide_poly_at(mask: &Mask, p: &VectorPolynomial, j: &[i64]) -> Vec<Q> {
    let r = mask.r();
    let mut out = vec![zero(); r];
    for (s, a) in mask.iter() {
        if j.iter().zip(s).any(|(x, y)| (x - y).rem_euclid(2) != 0) {
            continue;
        }
        let k: Point = j.iter().zip(s).map(|(x, y)| (x - y) / 2).collect();
        let v = p.eval_int(&k);
        for (c, o) in out.iter_mut().enumerate() {
            for (i, vi) in v.iter().enumerate() {
                *o += vi * &a[(i, c)];
            }
        }
    }
    let scale = pow2(mask.dim() as i64);
    out.into_iter().map(|x| x * &scale).collect()
}

/// Verdict of an exact property check, with the first failing point.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub ok: bool,
    pub witness: Option<Vec<Q>>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict { ok: true, witness: None }
    }

    fn fail(at: Vec<Q>) -> Verdict {
        Verdict { ok: false, witness: Some(at) }
    }
}

fn cube(d: usize, radius: i64) -> Vec<Point> {
    box_points(&vec![-radius; d], &vec![radius; d])
}

/// `S_a p_μ = 2^{−|μ|} p_μ` on the box `[−(|μ|+2), |μ|+2]^d`.
pub fn eigenpoly_check(mask: &Mask, filter: &Jet, mu: &MultiIndex) -> Result<Verdict> {
    let p = pmu(mu, filter)?;
    let f = pow2(-(mu.abs() as i64));
    for j in cube(mask.dim(), mu.abs() as i64 + 2) {
        let lhs = subdivide_poly_at(mask, &p, &j);
        let rhs: Vec<Q> = p.eval_int(&j).into_iter().map(|x| x * &f).collect();
        if lhs != rhs {
            return Ok(Verdict::fail(j.iter().map(|&x| qi(x)).collect()));
        }
    }
    Ok(Verdict::pass())
}

/// `D^{n−1} a D^{−n}` for the level-`n` step.
fn level_mask(mask: &Mask, htype: &HermiteType, n: u32) -> MatSeq {
    let nu: Vec<i64> = htype.lambda.iter().map(|v| v.abs() as i64).collect();
    let n = n as i64;
    let scale = QMatrix::from_fn(mask.r(), mask.r(), |i, j| pow2(nu[j] * n - nu[i] * (n - 1)));
    mask.seq().map(mask.r(), mask.r(), |_, a| QMatrix::from_fn(a.rows(), a.cols(), |i, j| &a[(i, j)] * &scale[(i, j)]))
}

/// Levels `0..=levels` of the refinement of `w0`; each row of `w0` is an
/// independent datum.
pub fn refine(mask: &Mask, htype: &HermiteType, w0: &MatSeq, levels: u32) -> Result<Vec<MatSeq>> {
    if w0.cols() != mask.r() || htype.r() != mask.r() || w0.dim() != mask.dim() {
        return Err(Error::DimensionMismatch(format!(
            "data {}-wide in dimension {} vs mask r={} in dimension {}",
            w0.cols(),
            w0.dim(),
            mask.r(),
            mask.dim()
        )));
    }
    let scale = pow2(mask.dim() as i64);
    let mut out = vec![w0.clone()];
    for n in 1..=levels {
        let a = level_mask(mask, htype, n);
        let next = out[n as usize - 1].upsample(2).convolve(&a).scale(&scale);
        out.push(next);
    }
    Ok(out)
}

pub fn refine_data(mask: &Mask, htype: &HermiteType, w0: &VectorData, levels: u32) -> Result<Vec<VectorData>> {
    Ok(refine(mask, htype, &w0.values, levels)?
        .into_iter()
        .enumerate()
        .map(|(i, s)| VectorData::new(w0.level + i as u32, s))
        .collect())
}

/// Position `2^{−n}(k + τ_ℓ)`.
pub fn position(k: &[i64], tau: &[Q], level: u32) -> Vec<Q> {
    let s = pow2(-(level as i64));
    k.iter().zip(tau).map(|(x, t)| (qi(*x) + t) * &s).collect()
}

/// Samples of `φ^{(ν_ℓ)}` at level `n`, one list per `ℓ`.
#[derive(Clone, Debug)]
pub struct BasisSamples {
    pub level: u32,
    /// `columns[ℓ]` holds `(position, [φ_1^{(ν_ℓ)}, …, φ_r^{(ν_ℓ)}])`.
    pub columns: Vec<Vec<(Vec<Q>, Vec<Q>)>>,
}

impl BasisSamples {
    /// Sample of column `ℓ` at an exact position, if it lies on the grid.
    pub fn at(&self, l: usize, x: &[Q]) -> Option<&[Q]> {
        self.columns[l].iter().find(|(p, _)| p.as_slice() == x).map(|(_, v)| v.as_slice())
    }
}

/// Refines `δ·I_r` and reads off the basis samples; grid points missing
/// from the support have value zero.
pub fn basis_samples(mask: &Mask, htype: &HermiteType, levels: u32) -> Result<BasisSamples> {
    let r = mask.r();
    let d = mask.dim();
    let w0 = MatSeq::delta(d, r);
    let w = refine(mask, htype, &w0, levels)?.pop().expect("level list is non-empty");
    let columns = (0..r)
        .map(|l| {
            w.iter()
                .map(|(k, m)| (position(k, &htype.tau[l], levels), (0..r).map(|i| m[(i, l)].clone()).collect()))
                .collect()
        })
        .collect();
    Ok(BasisSamples { level: levels, columns })
}

/// First `(k, ℓ)` violating `w_n(2k + β_ℓ) e_{θ(ℓ)} = w_{n−1}(k) e_ℓ`.
pub fn interpolation_relation(
    htype: &HermiteType,
    prev: &MatSeq,
    next: &MatSeq,
) -> Result<Option<(Point, usize)>> {
    let th = theta_for(htype)?;
    for l in 0..htype.r() {
        let beta = &th.beta[l];
        let mut ks: Vec<Point> = prev.support().cloned().collect();
        for j in next.support() {
            if j.iter().zip(beta).all(|(x, b)| (x - b).rem_euclid(2) == 0) {
                ks.push(j.iter().zip(beta).map(|(x, b)| (x - b) / 2).collect());
            }
        }
        for k in ks {
            let j: Point = k.iter().zip(beta).map(|(x, b)| 2 * x + b).collect();
            let lhs = next.get_or_zero(&j);
            let rhs = prev.get_or_zero(&k);
            if (0..prev.rows()).any(|i| lhs[(i, th.theta[l])] != rhs[(i, l)]) {
                return Ok(Some((k, l)));
            }
        }
    }
    Ok(None)
}

fn support_bounds(mask: &Mask) -> (Point, Point) {
    mask.bounds().expect("masks are non-empty")
}

/// Checks `w_n(k) e_ℓ = p^{(ν_ℓ)}(2^{−n}(k + τ_ℓ))` for every monomial `p`
/// of degree `≤ max_deg`, with `w_0 = p ∗ υ` sampled on a box large enough
/// that the final level keeps at least `max_deg + 2` exact points per axis.
pub fn poly_interp_check(mask: &Mask, htype: &HermiteType, filter: &Jet, max_deg: u32, levels: u32) -> Result<Verdict> {
    let d = mask.dim();
    if filter.order() < max_deg {
        return Err(Error::InsufficientOrder { needed: max_deg, have: filter.order() });
    }
    let (lo, hi) = support_bounds(mask);
    let width = (0..d).map(|i| hi[i] - lo[i]).max().unwrap_or(0);
    let radius = width + max_deg as i64 + 2;
    for mu in up_to_degree(d, max_deg) {
        let p = Poly::normalized_monomial(&mu);
        let w0 = conv_poly(&p, filter)?.sample(&vec![-radius; d], &vec![radius; d]);
        let levels_data = refine(mask, htype, &w0.values, levels)?;
        // Exact region: [L_n, U_n] with L_n = 2L_{n−1} + hi, U_n = 2U_{n−1} + lo.
        let mut vlo = vec![-radius; d];
        let mut vhi = vec![radius; d];
        for (n, w) in levels_data.iter().enumerate() {
            if n > 0 {
                for i in 0..d {
                    vlo[i] = 2 * vlo[i] + hi[i];
                    vhi[i] = 2 * vhi[i] + lo[i];
                }
            }
            for k in box_points(&vlo, &vhi) {
                let got = w.get_or_zero(&k);
                for l in 0..htype.r() {
                    let x = position(&k, &htype.tau[l], n as u32);
                    let want = p.derivative(&htype.lambda[l]).eval(&x);
                    if got[(0, l)] != want {
                        return Ok(Verdict::fail(x));
                    }
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// 17 significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes refinement data as CSV. Single-row data labels components by
/// `ℓ`; multi-row data by `i:ℓ` (datum row, column).
pub fn export_refinement<W: Write>(data: &MatSeq, htype: &HermiteType, level: u32, out: &mut W) -> Result<()> {
    let d = data.dim();
    let mut header = String::from("component");
    for i in 1..=d {
        header.push_str(&format!(",position_{i}"));
    }
    header.push_str(",value_exact,value_float\n");
    out.write_all(header.as_bytes())?;
    let multi = data.rows() > 1;
    for (k, m) in data.iter() {
        for i in 0..data.rows() {
            for l in 0..data.cols() {
                let label = if multi { format!("{}:{}", i + 1, l + 1) } else { format!("{}", l + 1) };
                let pos = position(k, &htype.tau[l], level);
                let v = &m[(i, l)];
                let mut line = label;
                for p in &pos {
                    line.push(',');
                    line.push_str(&fmt_q(p));
                }
                line.push_str(&format!(",{},{}\n", fmt_q(v), fmt_float(to_f64(v))));
                out.write_all(line.as_bytes())?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::sum_rule_order;
    use crate::rational::q;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn hermite_cubic() -> (Mask, HermiteType) {
        let m = |r: [[Q; 2]; 2]| QMatrix::from_rows(r.into_iter().map(|x| x.to_vec()).collect());
        let mask = Mask::from_entries(
            1,
            2,
            [
                (vec![-1], m([[q(1, 4), q(3, 8)], [q(-1, 16), q(-1, 16)]])),
                (vec![0], m([[q(1, 2), zero()], [zero(), q(1, 4)]])),
                (vec![1], m([[q(1, 4), q(-3, 8)], [q(1, 16), q(-1, 16)]])),
            ],
        )
        .unwrap();
        (mask, HermiteType::zero_shift(&[&[0], &[1]]))
    }

    fn bspline_mask(n: u32) -> Mask {
        Mask::from_entries(
            1,
            1,
            (0..=n).map(|k| (vec![k as i64], QMatrix::from_rows(vec![vec![crate::rational::binomial(n, k) / pow2(n as i64)]]))),
        )
        .unwrap()
    }

    #[test]
    fn conv_poly_basics() {
        let v = Jet::scalar_from(1, 3, &[(mi(&[0]), q(3, 1)), (mi(&[1]), q(2, 1))]);
        let c = conv_poly(&Poly::constant(1, one()), &v).unwrap();
        assert_eq!(c.eval(&[q(7, 3)]), vec![q(3, 1)]);
        let mut dirac = Jet::zero(1, 2, 1, 2);
        dirac.set(&mi(&[0]), QMatrix::from_rows(vec![vec![one(), zero()]]));
        let p = Poly::normalized_monomial(&mi(&[2]));
        let c = conv_poly(&p, &dirac).unwrap();
        assert_eq!(c.component(0), &p);
        assert!(c.component(1).is_zero());
        assert!(matches!(conv_poly(&p, &Jet::zero(1, 1, 1, 1)), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn conv_poly_matches_lattice_sum() {
        // Oracle: (p ∗ u)(x) = Σ_k p(x − k) u(k) for a finite sequence u.
        let u = MatSeq::from_entries(
            1,
            1,
            2,
            [
                (vec![-1], QMatrix::from_rows(vec![vec![q(1, 3), q(2, 1)]])),
                (vec![2], QMatrix::from_rows(vec![vec![q(-1, 5), q(1, 7)]])),
            ],
        );
        let jet = crate::jets::sequence_jet(&u, 3, None);
        let p = Poly::monomial(mi(&[3]), q(2, 1)).add(&Poly::constant(1, q(1, 2)));
        let c = conv_poly(&p, &jet).unwrap();
        let x = q(5, 11);
        let mut want = vec![zero(), zero()];
        for (k, m) in u.iter() {
            let v = p.eval(&[&x - qi(k[0])]);
            for l in 0..2 {
                want[l] += &v * &m[(0, l)];
            }
        }
        assert_eq!(c.eval(&[x]), want);
    }

    #[test]
    fn hermite_cubic_pmu() {
        let (mask, _) = hermite_cubic();
        let f = sum_rule_order(&mask, 6).unwrap().filter.unwrap();
        let p1 = pmu(&mi(&[1]), &f).unwrap();
        let x = q(3, 7);
        assert_eq!(p1.eval(std::slice::from_ref(&x)), vec![x, one()]);
        for k in 0..4 {
            assert!(eigenpoly_check(&mask, &f, &mi(&[k])).unwrap().ok);
        }
    }

    #[test]
    fn eigenpoly_fails_after_perturbation() {
        let a = bspline_mask(3);
        let f = sum_rule_order(&a, 6).unwrap().filter.unwrap();
        assert!(eigenpoly_check(&a, &f, &mi(&[2])).unwrap().ok);
        let mut seq = a.seq().clone();
        seq.add_at(vec![1], &QMatrix::from_rows(vec![vec![q(1, 64)]]));
        seq.add_at(vec![0], &QMatrix::from_rows(vec![vec![q(-1, 64)]]));
        let b = Mask::new(seq).unwrap();
        let v = eigenpoly_check(&b, &f, &mi(&[2])).unwrap();
        assert!(!v.ok && v.witness.is_some());
    }

    #[test]
    fn refine_delta_columns() {
        let (mask, t) = hermite_cubic();
        let levels = refine(&mask, &t, &MatSeq::delta(1, 2), 1).unwrap();
        assert_eq!(levels[0], MatSeq::delta(1, 2));
        // Column ℓ at level 1 is 2^{1+|ν_ℓ|} a(k) e_ℓ.
        for (k, a) in mask.iter() {
            let w = levels[1].get_or_zero(k);
            for i in 0..2 {
                assert_eq!(w[(i, 0)], &a[(i, 0)] * qi(2));
                assert_eq!(w[(i, 1)], &a[(i, 1)] * qi(4));
            }
        }
        assert_eq!(subdivide(&mask, &MatSeq::delta(1, 2)), mask.seq().scale(&qi(2)));
    }

    #[test]
    fn hermite_cubic_is_interpolatory_at_each_level() {
        let (mask, t) = hermite_cubic();
        let w0 = MatSeq::from_entries(
            1,
            1,
            2,
            [
                (vec![0], QMatrix::from_rows(vec![vec![q(1, 3), q(-2, 1)]])),
                (vec![3], QMatrix::from_rows(vec![vec![q(5, 1), q(1, 9)]])),
            ],
        );
        let lv = refine(&mask, &t, &w0, 3).unwrap();
        for n in 1..=3 {
            assert_eq!(interpolation_relation(&t, &lv[n - 1], &lv[n]).unwrap(), None);
        }
        let bs = basis_samples(&mask, &t, 3).unwrap();
        assert_eq!(bs.at(0, &[zero()]).unwrap(), &[one(), zero()]);
        assert_eq!(bs.at(1, &[zero()]).unwrap(), &[zero(), one()]);
        assert_eq!(bs.at(0, &[q(1, 2)]).unwrap(), &[q(1, 2), q(1, 8)]);
    }

    #[test]
    fn hermite_cubic_reproduces_cubics() {
        let (mask, t) = hermite_cubic();
        let f = sum_rule_order(&mask, 6).unwrap().filter.unwrap();
        assert!(poly_interp_check(&mask, &t, &f, 3, 3).unwrap().ok);
    }

    #[test]
    fn csv_layout() {
        let (mask, t) = hermite_cubic();
        let lv = refine(&mask, &t, &MatSeq::delta(1, 2), 1).unwrap();
        let mut buf = Vec::new();
        export_refinement(&lv[1], &t, 1, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "component,position_1,value_exact,value_float");
        assert_eq!(lines.len(), 1 + 2 * 2 * 3);
        assert_eq!(lines[1], "1:1,-1/2,1/2,5.0000000000000000e-1");
        let mut buf = Vec::new();
        export_refinement(&MatSeq::new(1, 1, 2), &t, 0, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
    }

    #[test]
    fn translated_positions() {
        let t = HermiteType::new(vec![mi(&[0]), mi(&[0])], Some(vec![vec![zero()], vec![q(1, 2)]])).unwrap();
        assert_eq!(position(&[3], &t.tau[1], 2), vec![q(7, 8)]);
    }
}

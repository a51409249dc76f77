//! L2 smoothness estimation through the transfer operator.
//!
//! For a generator `u` the autocorrelation `F₀ = u ∗ u°` evolves under
//! `T F(k) = 2^d (a ∗ F ∗ a°)(2k)`, and the trace of the coefficient at the
//! origin after `n` steps equals `2^{dn} ‖a_n ∗ u‖²`. The growth rate `λ`
//! of these traces gives `ρ₂ = 2^{d/2} √λ` and `sm₂ = −½ log₂ λ`.
//!
//! The iteration runs on the invariant box `[−w, w]^d`, where `w` is the
//! support width of the mask. Every iterate is projected back onto the
//! moment subspace
//! `W = {F : υ̂ F̂ = O(‖ξ‖^{m+1}), υ̂ F̂ υ̂* = O(‖ξ‖^{2m+2})}`, which `T`
//! preserves. Without the projection, rounding errors excite the
//! eigenvalues `2^{−j}` outside `W` and swamp small rates.
//!
//! In binary64 the rate of each generator is the dominant Ritz value of a
//! projected Arnoldi process on its Krylov space. Plain ratios
//! `t_{n+1}/t_n` converge to the same value but stall when the leading
//! eigenvalue is nearly degenerate, as it is for tensor-like masks. Masks
//! produced by normal-form transforms carry large cancelling coefficients,
//! so one step of `T` can amplify rounding far beyond the rate being
//! measured. Above a fixed amplification the estimate is repeated with
//! double-double arithmetic and trace ratios.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde_json::json;
use twofloat::TwoFloat;

use crate::analysis::{is_generalized_hermite, sum_rule_order};
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::lattice::{box_points, up_to_degree, MultiIndex, Point};
use crate::mask::{HermiteType, Mask};
use crate::normalform::{build_normalizer, generator_set};
use crate::rational::{from_f64, pow2, to_f64, Q};
use crate::seq::MatSeq;

/// Iteration controls for [`rho2_estimate`] and [`sm2`].
#[derive(Clone, Debug)]
pub struct SmoothnessOptions {
    /// Maximum Krylov dimension, or power steps, per generator.
    pub iters: usize,
    /// Relative change of the rate that counts as settled.
    pub tol: f64,
    /// Number of consecutive settled steps required.
    pub window: usize,
    /// Cap passed to the sum-rule search.
    pub sr_cap: u32,
    /// Bound on `2^d ‖a‖₁² / λ` beyond which binary64 rounding per step is
    /// no longer small against the dominant rate.
    pub amplification_limit: f64,
}

impl Default for SmoothnessOptions {
    fn default() -> Self {
        SmoothnessOptions { iters: 200, tol: 1e-10, window: 3, sr_cap: 12, amplification_limit: 1e6 }
    }
}

/// Field used by the transfer iteration.
pub trait Scalar:
    Copy + Send + Sync + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> + AddAssign + SubAssign
{
    fn zero() -> Self;
    fn of(x: f64) -> Self;
    fn of_q(x: &Q) -> Self;
    fn approx(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn of(x: f64) -> Self {
        x
    }
    fn of_q(x: &Q) -> Self {
        to_f64(x)
    }
    fn approx(self) -> f64 {
        self
    }
}

impl Scalar for TwoFloat {
    fn zero() -> Self {
        TwoFloat::from(0.0)
    }
    fn of(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn of_q(x: &Q) -> Self {
        let hi = to_f64(x);
        if !hi.is_finite() || hi == 0.0 {
            return TwoFloat::from(hi);
        }
        let lo = to_f64(&(x - from_f64(hi)));
        TwoFloat::new_add(hi, lo)
    }
    fn approx(self) -> f64 {
        self.hi() + self.lo()
    }
}

/// Arithmetic used for a generator's rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Binary64,
    DoubleDouble,
}

/// Dense matrix sequence on a box, `r × r` row-major per point.
#[derive(Clone, Debug, PartialEq)]
pub struct AutoCorr<T = f64> {
    r: usize,
    lo: Point,
    hi: Point,
    data: Vec<T>,
}

impl<T: Scalar> AutoCorr<T> {
    pub fn zeros(r: usize, lo: Point, hi: Point) -> AutoCorr<T> {
        let n = box_len(&lo, &hi);
        AutoCorr { r, lo, hi, data: vec![T::zero(); n * r * r] }
    }

    pub fn from_seq(f: &MatSeq) -> AutoCorr<T> {
        let r = f.rows();
        let d = f.dim();
        let (lo, hi) = f.bounds().unwrap_or((vec![0; d], vec![0; d]));
        let mut out = AutoCorr::zeros(r, lo, hi);
        for (k, m) in f.iter() {
            let off = out.offset(k).expect("point in bounds");
            for i in 0..r {
                for j in 0..r {
                    out.data[off + i * r + j] = T::of_q(&m[(i, j)]);
                }
            }
        }
        out
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn bounds(&self) -> (&[i64], &[i64]) {
        (&self.lo, &self.hi)
    }

    fn offset(&self, k: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for ((&x, &l), &h) in k.iter().zip(&self.lo).zip(&self.hi) {
            if x < l || x > h {
                return None;
            }
            idx = idx * (h - l + 1) as usize + (x - l) as usize;
        }
        Some(idx * self.r * self.r)
    }

    /// Coefficient at `k`, or `None` outside the box.
    pub fn at(&self, k: &[i64]) -> Option<&[T]> {
        let rr = self.r * self.r;
        self.offset(k).map(|o| &self.data[o..o + rr])
    }

    /// `tr F(0)`.
    pub fn trace0(&self) -> T {
        let zero = vec![0; self.lo.len()];
        let mut s = T::zero();
        if let Some(m) = self.at(&zero) {
            for i in 0..self.r {
                s += m[i * self.r + i];
            }
        }
        s
    }

    pub fn norm(&self) -> f64 {
        let mut s = T::zero();
        for &x in &self.data {
            s += x * x;
        }
        s.approx().sqrt()
    }

    fn scale_in_place(&mut self, s: f64) {
        let s = T::of(s);
        self.data.iter_mut().for_each(|x| *x = *x * s);
    }

    fn points(&self) -> Vec<Point> {
        box_points(&self.lo, &self.hi)
    }

    // True when every coefficient outside `[lo, hi]` is zero.
    fn fits(&self, lo: &[i64], hi: &[i64]) -> bool {
        let rr = self.r * self.r;
        self.points().iter().enumerate().all(|(n, k)| {
            let inside = k.iter().zip(lo).zip(hi).all(|((x, l), h)| x >= l && x <= h);
            inside || self.data[n * rr..(n + 1) * rr].iter().all(|x| *x == T::zero())
        })
    }

    fn restrict_to(&self, lo: &[i64], hi: &[i64]) -> AutoCorr<T> {
        let mut out = AutoCorr::zeros(self.r, lo.to_vec(), hi.to_vec());
        let rr = self.r * self.r;
        for k in out.points() {
            if let Some(src) = self.at(&k) {
                let o = out.offset(&k).unwrap();
                out.data[o..o + rr].copy_from_slice(src);
            }
        }
        out
    }
}

fn box_len(lo: &[i64], hi: &[i64]) -> usize {
    lo.iter().zip(hi).map(|(l, h)| (h - l + 1).max(0) as usize).product()
}

/// Mask coefficients, row-major.
struct MaskNum<T> {
    d: usize,
    r: usize,
    entries: Vec<(Point, Vec<T>)>,
    amin: Point,
    amax: Point,
}

impl<T: Scalar> MaskNum<T> {
    fn new(mask: &Mask) -> MaskNum<T> {
        let r = mask.r();
        let entries = mask
            .seq()
            .iter()
            .map(|(k, m)| (k.clone(), (0..r * r).map(|n| T::of_q(&m[(n / r, n % r)])).collect()))
            .collect();
        let (amin, amax) = mask.seq().bounds().expect("mask support is nonempty");
        MaskNum { d: mask.dim(), r, entries, amin, amax }
    }

    // Largest absolute row sum of `Σ_k |a(k)|`.
    fn abs_norm(&self) -> f64 {
        let r = self.r;
        (0..r)
            .map(|i| self.entries.iter().map(|(_, m)| (0..r).map(|j| m[i * r + j].approx().abs()).sum::<f64>()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn width(&self) -> Point {
        self.amin.iter().zip(&self.amax).map(|(l, h)| h - l).collect()
    }
}

// c += a * b^T for r × r row-major blocks.
fn mul_bt_acc<T: Scalar>(c: &mut [T], a: &[T], b: &[T], r: usize) {
    for i in 0..r {
        for j in 0..r {
            let mut s = T::zero();
            for l in 0..r {
                s += a[i * r + l] * b[j * r + l];
            }
            c[i * r + j] += s;
        }
    }
}

// c += a * b.
fn mul_acc<T: Scalar>(c: &mut [T], a: &[T], b: &[T], r: usize) {
    for i in 0..r {
        for l in 0..r {
            let x = a[i * r + l];
            if x == T::zero() {
                continue;
            }
            for j in 0..r {
                c[i * r + j] += x * b[l * r + j];
            }
        }
    }
}

fn transfer<T: Scalar>(a: &MaskNum<T>, f: &AutoCorr<T>) -> AutoCorr<T> {
    let r = a.r;
    let rr = r * r;
    let d = a.d;
    // P(p) = Σ_j F(p + j) a(j)^T, then T F(k) = 2^d Σ_i a(i) P(2k − i).
    let plo: Point = (0..d).map(|t| f.lo[t] - a.amax[t]).collect();
    let phi: Point = (0..d).map(|t| f.hi[t] - a.amin[t]).collect();
    let mut p = AutoCorr::<T>::zeros(r, plo, phi);
    let ppoints = p.points();
    p.data = ppoints
        .par_iter()
        .flat_map_iter(|pt| {
            let mut acc = vec![T::zero(); rr];
            let mut q = pt.clone();
            for (j, aj) in &a.entries {
                for t in 0..d {
                    q[t] = pt[t] + j[t];
                }
                if let Some(fv) = f.at(&q) {
                    mul_bt_acc(&mut acc, fv, aj, r);
                }
            }
            acc
        })
        .collect();
    let w = a.width();
    let lo: Point = (0..d).map(|t| (f.lo[t] - w[t] + 1).div_euclid(2)).collect();
    let hi: Point = (0..d).map(|t| (f.hi[t] + w[t]).div_euclid(2)).collect();
    let mut out = AutoCorr::<T>::zeros(r, lo, hi);
    let scale = T::of((1u64 << d) as f64);
    let opoints = out.points();
    out.data = opoints
        .par_iter()
        .flat_map_iter(|k| {
            let mut acc = vec![T::zero(); rr];
            let mut q = k.clone();
            for (i, ai) in &a.entries {
                for t in 0..d {
                    q[t] = 2 * k[t] - i[t];
                }
                if let Some(pv) = p.at(&q) {
                    mul_acc(&mut acc, ai, pv, r);
                }
            }
            acc.iter_mut().for_each(|x| *x = *x * scale);
            acc
        })
        .collect();
    out
}

/// One application of the transfer operator in binary64.
pub fn transfer_apply(mask: &Mask, f: &AutoCorr) -> AutoCorr {
    transfer(&MaskNum::new(mask), f)
}

/// One application of the transfer operator in exact arithmetic.
pub fn transfer_apply_exact(mask: &Mask, f: &MatSeq) -> MatSeq {
    let h = mask.seq().convolve(f).convolve(&mask.seq().adjoint());
    let s = pow2(mask.dim() as i64);
    let mut out = MatSeq::new(f.dim(), f.rows(), f.cols());
    for (k, m) in h.iter() {
        if k.iter().all(|x| x.rem_euclid(2) == 0) {
            out.insert(k.iter().map(|x| x / 2).collect(), m.scale(&s));
        }
    }
    out
}

/// `u ∗ u°` with `u°(k) = u(−k)^T`.
pub fn autocorrelation(u: &MatSeq) -> MatSeq {
    u.convolve(&u.adjoint())
}

/// `u ∗ u°` in floating point.
pub fn autocorrelation_num<T: Scalar>(u: &MatSeq) -> AutoCorr<T> {
    let (r, c) = (u.rows(), u.cols());
    let d = u.dim();
    let pts: Vec<(Point, Vec<T>)> = u.iter().map(|(k, m)| (k.clone(), m.iter().map(T::of_q).collect())).collect();
    let (lo, hi) = u.bounds().unwrap_or((vec![0; d], vec![0; d]));
    let flo: Point = lo.iter().zip(&hi).map(|(l, h)| l - h).collect();
    let fhi: Point = lo.iter().zip(&hi).map(|(l, h)| h - l).collect();
    let mut out = AutoCorr::<T>::zeros(r, flo, fhi);
    for (p, up) in &pts {
        for (q, uq) in &pts {
            let k: Point = p.iter().zip(q).map(|(x, y)| x - y).collect();
            let o = out.offset(&k).unwrap();
            for i in 0..r {
                for j in 0..r {
                    let mut s = T::zero();
                    for l in 0..c {
                        s += up[i * c + l] * uq[j * c + l];
                    }
                    out.data[o + i * r + j] += s;
                }
            }
        }
    }
    out
}

/// `a_n` with symbol `â(2^{n−1}ξ)⋯â(ξ)`.
pub fn cascade_power(mask: &Mask, n: u32) -> MatSeq {
    let mut out = MatSeq::delta(mask.dim(), mask.r());
    for _ in 0..n {
        out = out.upsample(2).convolve(mask.seq());
    }
    out
}

fn lex_positive(k: &[i64]) -> bool {
    k.iter().find(|x| **x != 0).is_some_and(|x| *x > 0)
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        s += *x * *y;
    }
    s
}

fn norm<T: Scalar>(a: &[T]) -> f64 {
    dot(a, a).approx().sqrt()
}

fn axpy<T: Scalar>(y: &mut [T], c: T, x: &[T]) {
    y.iter_mut().zip(x).for_each(|(a, b)| *a -= c * *b);
}

/// Rows of the linear conditions cutting `W` out of symmetric sequences on
/// the box, in coordinates `F(k)` for the lexicographically positive half
/// plus the upper triangle of `F(0)`.
struct Coordinates {
    r: usize,
    lo: Point,
    hi: Point,
    half: Vec<Point>,
    nparams: usize,
}

impl Coordinates {
    fn new(r: usize, w: &[i64]) -> Coordinates {
        let lo: Point = w.iter().map(|x| -x).collect();
        let hi: Point = w.to_vec();
        let half: Vec<Point> = box_points(&lo, &hi).into_iter().filter(|k| lex_positive(k)).collect();
        let nparams = half.len() * r * r + r * (r + 1) / 2;
        Coordinates { r, lo, hi, half, nparams }
    }

    fn pack<T: Scalar>(&self, f: &AutoCorr<T>) -> Vec<T> {
        let r = self.r;
        let half = T::of(0.5);
        let mut out = Vec::with_capacity(self.nparams);
        for k in &self.half {
            let neg: Point = k.iter().map(|x| -x).collect();
            let a = f.at(k);
            let b = f.at(&neg);
            for i in 0..r {
                for j in 0..r {
                    let x = a.map_or(T::zero(), |m| m[i * r + j]);
                    let y = b.map_or(T::zero(), |m| m[j * r + i]);
                    out.push((x + y) * half);
                }
            }
        }
        let zero = vec![0; self.lo.len()];
        let z = f.at(&zero);
        for i in 0..r {
            for j in i..r {
                out.push(z.map_or(T::zero(), |m| (m[i * r + j] + m[j * r + i]) * half));
            }
        }
        out
    }

    fn unpack<T: Scalar>(&self, p: &[T]) -> AutoCorr<T> {
        let r = self.r;
        let mut f = AutoCorr::<T>::zeros(r, self.lo.clone(), self.hi.clone());
        let mut n = 0;
        for k in &self.half {
            let neg: Point = k.iter().map(|x| -x).collect();
            let o = f.offset(k).unwrap();
            let on = f.offset(&neg).unwrap();
            for i in 0..r {
                for j in 0..r {
                    f.data[o + i * r + j] = p[n];
                    f.data[on + j * r + i] = p[n];
                    n += 1;
                }
            }
        }
        let o = f.offset(&vec![0; self.lo.len()]).unwrap();
        for i in 0..r {
            for j in i..r {
                f.data[o + i * r + j] = p[n];
                f.data[o + j * r + i] = p[n];
                n += 1;
            }
        }
        f
    }

    fn constraint_rows<T: Scalar>(&self, filter: &Jet, m: u32, w: &[i64]) -> Vec<Vec<T>> {
        let r = self.r;
        let d = w.len();
        let scale: Vec<Q> = w.iter().map(|&x| Q::from_integer(x.max(1).into())).collect();
        // υ jets scaled by w^{−β} so that moments of scaled positions stay O(1).
        let ups: Vec<(MultiIndex, Vec<T>)> = up_to_degree(d, m)
            .into_iter()
            .map(|b| {
                let s = b.pow_q(&scale);
                let row = filter.get(&b);
                (b, (0..r).map(|i| T::of_q(&(&row[(0, i)] / &s))).collect())
            })
            .collect();
        let upsv = |b: &MultiIndex| ups.iter().find(|(x, _)| x == b).map(|(_, v)| v.as_slice());
        let orders = up_to_degree(d, 2 * m + 1);
        let pos = |mu: &MultiIndex| orders.iter().position(|x| x == mu).unwrap();
        let fact = |mu: &MultiIndex| to_f64(&mu.factorial());
        // x^γ for every half point at the scaled position k/w.
        let powers: Vec<Vec<T>> = self
            .half
            .iter()
            .map(|k| {
                let x: Vec<Q> = k.iter().zip(&scale).map(|(a, s)| Q::from_integer((*a).into()) / s).collect();
                orders.iter().map(|g| T::of_q(&g.pow_q(&x))).collect()
            })
            .collect();
        let sign = |g: &MultiIndex| if g.abs().is_multiple_of(2) { T::of(1.0) } else { T::of(-1.0) };
        // Moment M_γ of a coordinate, as a function of (γ, a, b) ↦ M_γ[a][b].
        let moment = |param: usize, g: usize, a: usize, b: usize| -> T {
            let nhalf = self.half.len() * r * r;
            if param < nhalf {
                let (pt, ij) = (param / (r * r), param % (r * r));
                let (i, j) = (ij / r, ij % r);
                let mut s = T::zero();
                if (a, b) == (i, j) {
                    s += powers[pt][g];
                }
                if (a, b) == (j, i) {
                    s += sign(&orders[g]) * powers[pt][g];
                }
                s
            } else {
                if g != 0 {
                    return T::zero();
                }
                let (i, j) = upper_index(param - nhalf, r);
                let hit = (a, b) == (i, j) || (a, b) == (j, i);
                if hit {
                    T::of(1.0)
                } else {
                    T::zero()
                }
            }
        };
        let mut rows: Vec<Vec<T>> = Vec::new();
        // υ̂ F̂ = O(m+1): Σ_β binom(μ,β) υ_β M_{μ−β}, one row per column c.
        for mu in up_to_degree(d, m) {
            for c in 0..r {
                let terms: Vec<(f64, Vec<T>, usize)> = mu
                    .lower_set()
                    .into_iter()
                    .filter_map(|beta| {
                        let u = upsv(&beta)?.to_vec();
                        let rest = mu.checked_sub(&beta).unwrap();
                        Some((fact(&mu) / (fact(&beta) * fact(&rest)), u, pos(&rest)))
                    })
                    .collect();
                let row: Vec<T> = (0..self.nparams)
                    .into_par_iter()
                    .map(|param| {
                        let mut s = T::zero();
                        for (bin, u, g) in &terms {
                            for i in 0..r {
                                s += T::of(*bin) * u[i] * moment(param, *g, i, c);
                            }
                        }
                        s
                    })
                    .collect();
                rows.push(row);
            }
        }
        // υ̂ F̂ υ̂* = O(2m+2) with the jet of υ̂* equal to (−1)^{|δ|} υ_δ^T.
        for mu in orders.iter() {
            let mut terms: Vec<(T, Vec<T>, Vec<T>, usize)> = Vec::new();
            for beta in mu.lower_set() {
                let Some(u) = upsv(&beta) else { continue };
                let rest = mu.checked_sub(&beta).unwrap();
                for delta in rest.lower_set() {
                    let Some(v) = upsv(&delta) else { continue };
                    let gamma = rest.checked_sub(&delta).unwrap();
                    let coef = fact(mu) / (fact(&beta) * fact(&gamma) * fact(&delta));
                    terms.push((T::of(coef) * sign(&delta), u.to_vec(), v.to_vec(), pos(&gamma)));
                }
            }
            let row: Vec<T> = (0..self.nparams)
                .into_par_iter()
                .map(|param| {
                    let mut s = T::zero();
                    for (coef, u, v, g) in &terms {
                        for i in 0..r {
                            for j in 0..r {
                                let mm = moment(param, *g, i, j);
                                if mm != T::zero() {
                                    s += *coef * u[i] * mm * v[j];
                                }
                            }
                        }
                    }
                    s
                })
                .collect();
            rows.push(row);
        }
        rows
    }
}

fn upper_index(mut t: usize, r: usize) -> (usize, usize) {
    for a in 0..r {
        for b in a..r {
            if t == 0 {
                return (a, b);
            }
            t -= 1;
        }
    }
    unreachable!("index inside the upper triangle")
}

/// Orthonormal basis of the constraint row space, with orthogonal
/// projection onto its complement `W`.
struct Projector<T> {
    coords: Coordinates,
    basis: Vec<Vec<T>>,
}

impl<T: Scalar> Projector<T> {
    // Pivoted Gram–Schmidt: repeatedly take the row with the largest
    // residual until all residuals fall below `cut` times the largest row.
    fn pivoted(coords: Coordinates, mut rows: Vec<Vec<T>>, cut: f64) -> (Projector<T>, Vec<usize>) {
        let top = rows.iter().map(|r| norm(r)).fold(0.0, f64::max);
        let mut basis: Vec<Vec<T>> = Vec::new();
        let mut chosen = Vec::new();
        let mut used = vec![false; rows.len()];
        loop {
            let best = (0..rows.len()).filter(|i| !used[*i]).map(|i| (i, norm(&rows[i]))).max_by(|a, b| a.1.total_cmp(&b.1));
            let Some((i, n)) = best else { break };
            if top == 0.0 || n <= cut * top {
                break;
            }
            used[i] = true;
            let mut q = rows[i].clone();
            for b in &basis {
                let c = dot(b, &q);
                axpy(&mut q, c, b);
            }
            let qn = norm(&q);
            let inv = T::of(1.0 / qn);
            q.iter_mut().for_each(|x| *x = *x * inv);
            rows.par_iter_mut().enumerate().for_each(|(j, row)| {
                if !used[j] {
                    let c = dot(&q, row);
                    axpy(row, c, &q);
                }
            });
            basis.push(q);
            chosen.push(i);
        }
        (Projector { coords, basis }, chosen)
    }

    // Gram–Schmidt twice over a preselected independent set of rows.
    fn from_selected(coords: Coordinates, rows: &[Vec<T>], chosen: &[usize]) -> Projector<T> {
        let mut basis: Vec<Vec<T>> = Vec::new();
        for &i in chosen {
            let mut q = rows[i].clone();
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &q);
                    axpy(&mut q, c, b);
                }
            }
            let inv = T::of(1.0 / norm(&q));
            q.iter_mut().for_each(|x| *x = *x * inv);
            basis.push(q);
        }
        Projector { coords, basis }
    }

    fn project_params(&self, p: &mut [T]) {
        for _ in 0..2 {
            for q in &self.basis {
                let c = dot(q, p);
                axpy(p, c, q);
            }
        }
    }

    fn project(&self, f: &AutoCorr<T>) -> AutoCorr<T> {
        let mut p = self.coords.pack(f);
        self.project_params(&mut p);
        self.coords.unpack(&p)
    }

    fn dim_w(&self) -> usize {
        self.coords.nparams - self.basis.len()
    }
}

/// Growth rate of one generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorRate {
    pub lambda: f64,
    pub iterations: usize,
    pub converged: bool,
    pub precision: Precision,
}

/// Outcome of [`rho2_estimate`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rho2 {
    pub per_generator: Vec<GeneratorRate>,
    pub lambda: f64,
    pub rho2: f64,
    pub dim_w: usize,
    /// `2^d ‖a‖₁² / λ` from the binary64 estimate.
    pub amplification: f64,
}

impl Rho2 {
    pub fn converged(&self) -> bool {
        self.per_generator.iter().all(|g| g.converged)
    }

    pub fn iterations(&self) -> usize {
        self.per_generator.iter().map(|g| g.iterations).max().unwrap_or(0)
    }
}

/// Estimates `ρ_{m+1}(a, υ)₂` from the generators of the moment space.
pub fn rho2_estimate(mask: &Mask, filter: &Jet, m: u32, generators: &[MatSeq], opts: &SmoothnessOptions) -> Result<Rho2> {
    if generators.is_empty() {
        return Err(Error::Precondition("no generators".into()));
    }
    let a = MaskNum::<f64>::new(mask);
    let w = a.width();
    let coords = Coordinates::new(a.r, &w);
    let rows = coords.constraint_rows::<f64>(filter, m, &w);
    let (proj, chosen) = Projector::pivoted(coords, rows, 1e-10);
    let dim_w = proj.dim_w();
    let mut rates: Vec<GeneratorRate> =
        generators.par_iter().map(|u| krylov_rate(&a, &proj, autocorrelation_num(u), opts)).collect();
    let lambda64 = rates.iter().map(|g| g.lambda).fold(0.0, f64::max);
    let amplification = (1u64 << a.d) as f64 * a.abs_norm().powi(2) / lambda64;
    if amplification > opts.amplification_limit {
        let a2 = MaskNum::<TwoFloat>::new(mask);
        let coords = Coordinates::new(a.r, &w);
        let rows = coords.constraint_rows::<TwoFloat>(filter, m, &w);
        let proj2 = Projector::from_selected(coords, &rows, &chosen);
        rates = generators.par_iter().map(|u| power_rate(&a2, &proj2, autocorrelation_num(u), opts)).collect();
    }
    let lambda = rates.iter().map(|g| g.lambda).fold(0.0, f64::max);
    let rho2 = 2f64.powf(a.d as f64 / 2.0) * lambda.sqrt();
    Ok(Rho2 { per_generator: rates, lambda, rho2, dim_w, amplification })
}

// Applies T until the support fits the invariant box, then projects.
fn seed<T: Scalar>(a: &MaskNum<T>, proj: &Projector<T>, mut f: AutoCorr<T>) -> Option<AutoCorr<T>> {
    let (lo, hi) = (&proj.coords.lo, &proj.coords.hi);
    while !f.fits(lo, hi) {
        f = transfer(a, &f);
        let n = f.norm();
        if n > 0.0 {
            f.scale_in_place(1.0 / n);
        }
    }
    let mut f = proj.project(&f.restrict_to(lo, hi));
    let n = f.norm();
    if n == 0.0 {
        return None;
    }
    f.scale_in_place(1.0 / n);
    Some(f)
}

struct Settle {
    prev: Option<f64>,
    count: usize,
}

impl Settle {
    fn push(&mut self, x: f64, opts: &SmoothnessOptions) -> bool {
        if let Some(p) = self.prev {
            if (x - p).abs() <= opts.tol * x.abs().max(f64::MIN_POSITIVE) {
                self.count += 1;
            } else {
                self.count = 0;
            }
        }
        self.prev = Some(x);
        self.count >= opts.window
    }
}

// Projected Arnoldi; the rate is the largest modulus among the Ritz values.
fn krylov_rate(a: &MaskNum<f64>, proj: &Projector<f64>, f: AutoCorr<f64>, opts: &SmoothnessOptions) -> GeneratorRate {
    let (lo, hi) = (&proj.coords.lo, &proj.coords.hi);
    let done = |lambda, iterations, converged| GeneratorRate { lambda, iterations, converged, precision: Precision::Binary64 };
    let Some(f) = seed(a, proj, f) else {
        return GeneratorRate { lambda: 0.0, iterations: 0, converged: true, precision: Precision::Binary64 };
    };
    let cap = opts.iters.min(proj.dim_w()).max(1);
    let mut q0 = proj.coords.pack(&f);
    let n0 = norm(&q0);
    q0.iter_mut().for_each(|x| *x /= n0);
    let mut basis = vec![q0];
    let mut h = DMatrix::<f64>::zeros(cap + 1, cap);
    let mut settle = Settle { prev: None, count: 0 };
    let mut lambda = 0.0;
    for k in 0..cap {
        let g = transfer(a, &proj.coords.unpack(&basis[k])).restrict_to(lo, hi);
        let mut w = proj.coords.pack(&g);
        proj.project_params(&mut w);
        let wn0 = norm(&w);
        for _ in 0..2 {
            for (i, q) in basis.iter().enumerate() {
                let c = dot(q, &w);
                h[(i, k)] += c;
                axpy(&mut w, c, q);
            }
        }
        let wn = norm(&w);
        h[(k + 1, k)] = wn;
        let ritz = h.view((0, 0), (k + 1, k + 1)).into_owned().complex_eigenvalues();
        lambda = ritz.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if wn <= 1e-12 * wn0.max(f64::MIN_POSITIVE) {
            return done(lambda, k + 1, true);
        }
        if settle.push(lambda, opts) {
            return done(lambda, k + 1, true);
        }
        w.iter_mut().for_each(|x| *x /= wn);
        basis.push(w);
    }
    done(lambda, cap, cap == proj.dim_w())
}

// Normalized power iteration with the trace ratio `t_{n+1}/t_n`.
fn power_rate<T: Scalar>(a: &MaskNum<T>, proj: &Projector<T>, f: AutoCorr<T>, opts: &SmoothnessOptions) -> GeneratorRate {
    let (lo, hi) = (&proj.coords.lo, &proj.coords.hi);
    let Some(mut f) = seed(a, proj, f) else {
        return GeneratorRate { lambda: 0.0, iterations: 0, converged: true, precision: Precision::DoubleDouble };
    };
    let mut settle = Settle { prev: None, count: 0 };
    let mut lambda = 0.0;
    for it in 1..=opts.iters {
        let g = proj.project(&transfer(a, &f).restrict_to(lo, hi));
        let (t0, t1) = (f.trace0().approx(), g.trace0().approx());
        lambda = if t0.abs() > 1e-12 * f.norm() { t1 / t0 } else { g.norm() / f.norm() };
        let gn = g.norm();
        if gn == 0.0 {
            return GeneratorRate { lambda: 0.0, iterations: it, converged: true, precision: Precision::DoubleDouble };
        }
        f = g;
        f.scale_in_place(1.0 / gn);
        if settle.push(lambda, opts) {
            return GeneratorRate { lambda, iterations: it, converged: true, precision: Precision::DoubleDouble };
        }
    }
    GeneratorRate { lambda, iterations: opts.iters, converged: false, precision: Precision::DoubleDouble }
}

/// Full L2 smoothness report.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessReport {
    pub dim: usize,
    pub sr_order: u32,
    pub m_used: u32,
    pub generators: usize,
    pub lambda_per_generator: Vec<f64>,
    pub rho2: f64,
    pub sm2: f64,
    pub sminf_lower: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl SmoothnessReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "sr_order": self.sr_order,
            "m_used": self.m_used,
            "generators": self.generators,
            "lambda_per_generator": self.lambda_per_generator,
            "rho2": self.rho2,
            "sm2": self.sm2,
            "sminf_lower": self.sminf_lower,
            "iterations": self.iterations,
            "converged": self.converged,
        })
    }
}

/// `sm₂(a)` via sum rules, the normal form and the transfer operator.
pub fn sm2(mask: &Mask, opts: &SmoothnessOptions) -> Result<SmoothnessReport> {
    let sr = sum_rule_order(mask, opts.sr_cap)?;
    let Some(filter) = sr.filter.clone() else {
        return Err(Error::NoUnitEigenvalue);
    };
    let m = sr.order - 1;
    let filter = filter.truncate(m);
    let big = build_normalizer(&filter, m)?;
    let gens = generator_set(&big, &filter, m)?;
    let est = rho2_estimate(mask, &filter, m, &gens, opts)?;
    let sm = -0.5 * est.lambda.log2();
    Ok(SmoothnessReport {
        dim: mask.dim(),
        sr_order: sr.order,
        m_used: m,
        generators: gens.len(),
        lambda_per_generator: est.per_generator.iter().map(|g| g.lambda).collect(),
        rho2: est.rho2,
        sm2: sm,
        sminf_lower: sminf_lowerbound(sm, mask.dim()),
        iterations: est.iterations(),
        converged: est.converged(),
    })
}

/// `sm_∞ ≥ sm₂ − d/2`.
pub fn sminf_lowerbound(sm2: f64, dim: usize) -> f64 {
    sm2 - dim as f64 / 2.0
}

/// Heuristic sup-norm rate from exact cascade powers.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoInf {
    pub rho: f64,
    pub sminf: f64,
    pub levels: u32,
}

/// Largest number of matrix coefficients a cascade power may hold.
pub const CASCADE_LIMIT: usize = 400_000;

/// Estimates `ρ_∞` from `‖a_n ∗ u‖_∞` ratios over exact cascade powers.
///
/// The rate is the geometric mean of the last two consecutive ratios, so
/// it is an estimate rather than a bound.
pub fn rho_inf_estimate(mask: &Mask, generators: &[MatSeq], n_max: u32) -> Result<RhoInf> {
    let d = mask.dim();
    let mut an = MatSeq::delta(d, mask.r());
    let mut norms: Vec<Vec<f64>> = vec![Vec::new(); generators.len()];
    for n in 1..=n_max {
        let next = an.upsample(2).convolve(mask.seq());
        if next.len() * mask.r() * mask.r() > CASCADE_LIMIT {
            return Err(Error::MemoryGuard(format!("cascade power {} has {} coefficients", n, next.len())));
        }
        an = next;
        for (g, u) in generators.iter().enumerate() {
            let v = an.convolve(u);
            let sup = v.iter().flat_map(|(_, m)| m.iter().map(|x| to_f64(x).abs()).collect::<Vec<_>>()).fold(0.0, f64::max);
            norms[g].push(sup);
        }
    }
    let rate = norms
        .iter()
        .filter_map(|ns| {
            let k = ns.len();
            (k >= 3 && ns[k - 3] > 0.0).then(|| (ns[k - 1] / ns[k - 3]).sqrt())
        })
        .fold(0.0, f64::max);
    if rate == 0.0 {
        return Err(Error::Precondition("too few levels for a rate".into()));
    }
    let rho = 2f64.powi(d as i32) * rate;
    Ok(RhoInf { rho, sminf: d as f64 - rho.log2(), levels: n_max })
}

/// Convergence statement derived from a smoothness report.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceVerdict {
    pub label: String,
    pub order: Option<u32>,
    pub sminf_lower: f64,
}

/// Claims convergence in `C^{max|ν|}` when `sm₂ − d/2` exceeds the highest
/// derivative order; otherwise reports the test as inconclusive.
pub fn convergence_verdict(mask: &Mask, htype: &HermiteType, report: &SmoothnessReport) -> Result<ConvergenceVerdict> {
    let ok = is_generalized_hermite(mask, htype, report.sr_order.max(htype.max_order() + 1))?;
    if !ok.ok {
        return Err(Error::Precondition("mask is not of the requested generalized Hermite type".into()));
    }
    let order = htype.max_order();
    if report.sminf_lower > order as f64 {
        Ok(ConvergenceVerdict { label: format!("convergent in C^{}", order), order: Some(order), sminf_lower: report.sminf_lower })
    } else {
        Ok(ConvergenceVerdict { label: "inconclusive".into(), order: None, sminf_lower: report.sminf_lower })
    }
}

/// Exact `tr (T^n F₀)(0)` for `n = 1..=levels`.
pub fn trace_sequence_exact(mask: &Mask, u: &MatSeq, levels: u32) -> Vec<Q> {
    let mut f = autocorrelation(u);
    let zero = vec![0; mask.dim()];
    (0..levels)
        .map(|_| {
            f = transfer_apply_exact(mask, &f);
            f.get_or_zero(&zero).trace()
        })
        .collect()
}

/// `tr (T^n F₀)(0)` for `n = 1..=levels` in floating point.
pub fn trace_sequence_float(mask: &Mask, u: &MatSeq, levels: u32, precision: Precision) -> Vec<f64> {
    fn run<T: Scalar>(mask: &Mask, u: &MatSeq, levels: u32) -> Vec<f64> {
        let a = MaskNum::<T>::new(mask);
        let mut f = autocorrelation_num::<T>(u);
        (0..levels)
            .map(|_| {
                f = transfer(&a, &f);
                f.trace0().approx()
            })
            .collect()
    }
    match precision {
        Precision::Binary64 => run::<f64>(mask, u, levels),
        Precision::DoubleDouble => run::<TwoFloat>(mask, u, levels),
    }
}

/// Exact `‖v‖²` summed over all coefficients.
pub fn sq_norm(v: &MatSeq) -> Q {
    let mut s = Q::from_integer(0.into());
    for (_, m) in v.iter() {
        for x in m.iter() {
            s += x * x;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::QMatrix;
    use crate::normalform::backward_difference;
    use crate::rational::{q, qi};

    fn bspline(n: u32) -> Mask {
        let mut c = vec![qi(1)];
        for _ in 0..n {
            let mut next = vec![qi(0); c.len() + 1];
            for (i, x) in c.iter().enumerate() {
                next[i] += x;
                next[i + 1] += x;
            }
            c = next;
        }
        let s = pow2(-(n as i64));
        Mask::from_entries(1, 1, c.into_iter().enumerate().map(|(k, x)| (vec![k as i64], QMatrix::from_rows(vec![vec![x * &s]])))).unwrap()
    }

    #[test]
    fn transfer_of_linear_bspline_difference() {
        let a = bspline(1);
        let f0 = autocorrelation(&backward_difference(&MultiIndex(vec![1])));
        let expect = MatSeq::from_entries(1, 1, 1, [(vec![-1], qi(-1)), (vec![0], qi(2)), (vec![1], qi(-1))].map(|(k, x)| (k, QMatrix::from_rows(vec![vec![x]]))));
        assert_eq!(f0, expect);
        assert_eq!(transfer_apply_exact(&a, &f0), expect.scale(&q(1, 2)));
        let t = transfer_apply(&a, &AutoCorr::from_seq(&f0));
        assert_eq!(t.at(&[0]).unwrap(), &[1.0]);
        assert_eq!(t.at(&[1]).unwrap(), &[-0.5]);
    }

    #[test]
    fn double_double_transfer_matches_exact() {
        let a = bspline(3);
        let f0 = autocorrelation(&backward_difference(&MultiIndex(vec![3])));
        let exact = transfer_apply_exact(&a, &transfer_apply_exact(&a, &f0));
        let num = MaskNum::<TwoFloat>::new(&a);
        let t = transfer(&num, &transfer(&num, &AutoCorr::from_seq(&f0)));
        for (k, m) in exact.iter() {
            assert_eq!(t.at(k).unwrap()[0].approx(), to_f64(&m[(0, 0)]));
        }
        let third = TwoFloat::of_q(&q(1, 3));
        assert!((third * TwoFloat::from(3.0) - TwoFloat::from(1.0)).abs() < TwoFloat::from(1e-30));
    }

    #[test]
    fn trace_identity_small() {
        let a = bspline(2);
        let u = backward_difference(&MultiIndex(vec![2]));
        let t = trace_sequence_exact(&a, &u, 4);
        for (n, tn) in t.iter().enumerate() {
            let lhs = sq_norm(&cascade_power(&a, n as u32 + 1).convolve(&u));
            assert_eq!(lhs, tn * pow2(-(n as i64) - 1));
        }
    }

    #[test]
    fn bspline_sm2() {
        for n in 1..=5u32 {
            let rep = sm2(&bspline(n), &SmoothnessOptions::default()).unwrap();
            assert_eq!(rep.sr_order, n);
            assert!((rep.sm2 - (n as f64 - 0.5)).abs() < 1e-6, "n={} sm2={}", n, rep.sm2);
            assert!(rep.converged);
        }
    }

    #[test]
    fn rho_inf_linear() {
        let a = bspline(1);
        let u = backward_difference(&MultiIndex(vec![1]));
        let est = rho_inf_estimate(&a, &[u], 8).unwrap();
        assert!((est.rho - 1.0).abs() < 1e-12);
    }
}

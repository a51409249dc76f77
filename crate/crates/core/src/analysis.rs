//! Mask classification: matching filters, sum rules, Hermite type,
//! linear-phase moments, interpolatory structure and the spectral condition.
//!
//! A row `υ` is a matching filter of order `s` when
//! `υ̂(2ξ) â(ξ + πω) = δ(ω) υ̂(ξ) + O(‖ξ‖^s)` for every `ω ∈ {0,1}^d`.
//! In jet coordinates this reads, for `|μ| ≤ s − 1`,
//! `Σ_{β≤μ} binom(μ,β) 2^{|β|} N_β(υ) N^{a,ω}_{μ−β} = δ(ω) N_μ(υ)`.

use crate::error::{Error, Result};
use crate::jets::{phase_monomial_jet, sequence_jet, Jet};
use crate::lattice::{cosets, of_degree, up_to_degree, MultiIndex, Point};
use crate::mask::{HermiteType, Mask};
use crate::matrix::QMatrix;
use crate::rational::{fmt_q, one, pow2, Q};
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;

/// Width of the band around `2^{-mdeg}` in which modulus comparisons are
/// treated as undecided by floating point.
pub const SPECTRAL_BAND: f64 = 1e-9;

/// Normalized left eigenvector of `â(0)` for the eigenvalue 1.
pub fn left_unit_eigenvector(mask: &Mask) -> Result<Vec<Q>> {
    let a0 = mask.symbol_at_zero();
    let r = mask.r();
    let m = &a0.transpose() - &QMatrix::identity(r);
    let ns = m.nullspace();
    match ns.len() {
        0 => Err(Error::NoUnitEigenvalue),
        1 => {
            let v = &ns[0];
            if v[0].is_zero() {
                return Err(Error::NormalizationImpossible);
            }
            let s = v[0].recip();
            Ok(v.iter().map(|x| x * &s).collect())
        }
        _ => Err(Error::EigenvalueNotSimple),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralVerdict {
    pub ok: bool,
    /// Eigenvalue 1 is algebraically simple (exact rank test).
    pub simple: bool,
    /// Largest modulus among the eigenvalues other than the unit one.
    pub max_other_modulus: f64,
    pub bound: f64,
    pub warning: Option<String>,
}

/// Verifies that 1 is a simple eigenvalue of `â(0)` and all others have
/// modulus below `2^{-mdeg}`.
pub fn spectral_condition(mask: &Mask, mdeg: u32) -> SpectralVerdict {
    let a0 = mask.symbol_at_zero();
    let r = mask.r();
    let shifted = &a0 - &QMatrix::identity(r);
    let simple = shifted.rank() + 1 == r && (&shifted * &shifted).rank() + 1 == r;
    let bound = 2f64.powi(-(mdeg as i32));
    let mut eig: Vec<(f64, f64)> =
        a0.to_f64().complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect();
    // Drop the eigenvalue closest to 1.
    if let Some(pos) = eig
        .iter()
        .enumerate()
        .min_by(|x, y| {
            let dx = (x.1 .0 - 1.0).hypot(x.1 .1);
            let dy = (y.1 .0 - 1.0).hypot(y.1 .1);
            dx.total_cmp(&dy)
        })
        .map(|(i, _)| i)
    {
        eig.remove(pos);
    }
    let max_other = eig.iter().map(|(re, im)| re.hypot(*im)).fold(0.0, f64::max);
    let mut warning = None;
    let mut below = max_other < bound;
    if (max_other - bound).abs() <= SPECTRAL_BAND {
        let exact_hit = (&a0 - &QMatrix::identity(r).scale(&pow2(-(mdeg as i64)))).det().is_zero()
            || (&a0 + &QMatrix::identity(r).scale(&pow2(-(mdeg as i64)))).det().is_zero();
        if exact_hit {
            below = false;
        }
        warning = Some(format!(
            "eigenvalue modulus {max_other:.12} within {SPECTRAL_BAND:e} of 2^-{mdeg}{}",
            if exact_hit { " (exact equality)" } else { "" }
        ));
    }
    SpectralVerdict { ok: simple && below, simple, max_other_modulus: max_other, bound, warning }
}

fn mask_jets(mask: &Mask, order: u32) -> Vec<(Point, Jet)> {
    cosets(mask.dim())
        .into_iter()
        .map(|w| {
            let j = if w.iter().all(|&x| x == 0) {
                sequence_jet(mask.seq(), order, None)
            } else {
                sequence_jet(mask.seq(), order, Some(&w))
            };
            (w, j)
        })
        .collect()
}

/// `Σ_{β<μ} binom(μ,β) 2^{|β|} N_β(υ) N^a_{μ−β}` (strict lower part when
/// `strict`, else including `β = μ`).
fn leibniz_row(filter: &HashMap<MultiIndex, QMatrix>, aj: &Jet, mu: &MultiIndex, strict: bool) -> QMatrix {
    let r = aj.shape().1;
    let mut acc = QMatrix::zeros(1, r);
    for beta in mu.lower_set() {
        if strict && &beta == mu {
            continue;
        }
        let Some(nb) = filter.get(&beta) else { continue };
        if nb.is_zero() {
            continue;
        }
        let rest = mu.checked_sub(&beta).unwrap();
        let c = mu.binom(&beta) * pow2(beta.abs() as i64);
        acc = &acc + &(nb * aj.get(&rest)).scale(&c);
    }
    acc
}

fn filter_jet(d: usize, r: usize, order: u32, filter: &HashMap<MultiIndex, QMatrix>) -> Jet {
    let mut j = Jet::zero(d, order, 1, r);
    for mu in up_to_degree(d, order) {
        if let Some(v) = filter.get(&mu) {
            j.set(&mu, v.clone());
        }
    }
    j
}

/// Matching filter jets up to `order` via the degree recursion.
pub fn matching_filter(mask: &Mask, order: u32) -> Result<Jet> {
    let d = mask.dim();
    let r = mask.r();
    let a0 = mask.symbol_at_zero();
    let aj = sequence_jet(mask.seq(), order, None);
    let mut filter: HashMap<MultiIndex, QMatrix> = HashMap::new();
    filter.insert(MultiIndex::zero(d), QMatrix::from_rows(vec![left_unit_eigenvector(mask)?]));
    for k in 1..=order {
        let inv = (&QMatrix::identity(r) - &a0.scale(&pow2(k as i64)))
            .inverse()
            .map_err(|_| Error::ResonantEigenvalue(k))?;
        for mu in of_degree(d, k) {
            let rhs = leibniz_row(&filter, &aj, &mu, true);
            filter.insert(mu, &rhs * &inv);
        }
    }
    Ok(filter_jet(d, r, order, &filter))
}

/// Outcome of the sum-rule search.
#[derive(Clone, Debug, PartialEq)]
pub struct SumRules {
    /// Largest `s` found (capped at `cap + 1`).
    pub order: u32,
    /// Matching filter jets to order `order − 1`; absent when `order = 0`.
    pub filter: Option<Jet>,
    /// Degree at which `I − 2^k â(0)` was singular, if encountered. The
    /// filter is then one solution of the joint linear system, with free
    /// parameters set to zero.
    pub resonance: Option<u32>,
}

fn coset_conditions_hold(
    filter: &HashMap<MultiIndex, QMatrix>,
    jets: &[(Point, Jet)],
    mu: &MultiIndex,
) -> bool {
    jets.iter()
        .skip(1)
        .all(|(_, aj)| leibniz_row(filter, aj, mu, false).is_zero())
}

/// Largest `s ≤ cap + 1` with sum rules of order `s`, and the matching filter.
pub fn sum_rule_order(mask: &Mask, cap: u32) -> Result<SumRules> {
    let d = mask.dim();
    let r = mask.r();
    let n0 = match left_unit_eigenvector(mask) {
        Ok(v) => v,
        Err(Error::NoUnitEigenvalue) => return Ok(SumRules { order: 0, filter: None, resonance: None }),
        Err(e) => return Err(e),
    };
    let jets = mask_jets(mask, cap);
    let a0 = mask.symbol_at_zero();
    let mut filter: HashMap<MultiIndex, QMatrix> = HashMap::new();
    let zero_mu = MultiIndex::zero(d);
    filter.insert(zero_mu.clone(), QMatrix::from_rows(vec![n0]));
    if !coset_conditions_hold(&filter, &jets, &zero_mu) {
        return Ok(SumRules { order: 0, filter: None, resonance: None });
    }
    // s = k + 1 holds once degree k passes.
    let mut k = 1;
    while k <= cap {
        let Ok(inv) = (&QMatrix::identity(r) - &a0.scale(&pow2(k as i64))).inverse() else {
            return joint_search(mask, &jets, filter, k, cap);
        };
        for mu in of_degree(d, k) {
            let rhs = leibniz_row(&filter, &jets[0].1, &mu, true);
            filter.insert(mu, &rhs * &inv);
        }
        if !of_degree(d, k).iter().all(|mu| coset_conditions_hold(&filter, &jets, mu)) {
            return Ok(SumRules { order: k, filter: Some(filter_jet(d, r, k - 1, &filter)), resonance: None });
        }
        k += 1;
    }
    Ok(SumRules { order: cap + 1, filter: Some(filter_jet(d, r, cap, &filter)), resonance: None })
}

/// Joint exact solve for the filter entries of degrees `k0..=top`, given the
/// entries below `k0`. Returns `None` when the system is inconsistent.
fn joint_solve(
    d: usize,
    r: usize,
    jets: &[(Point, Jet)],
    fixed: &HashMap<MultiIndex, QMatrix>,
    k0: u32,
    top: u32,
) -> Option<HashMap<MultiIndex, QMatrix>> {
    let unknowns: Vec<MultiIndex> = (k0..=top).flat_map(|k| of_degree(d, k)).collect();
    let upos: HashMap<&MultiIndex, usize> = unknowns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let nvar = unknowns.len() * r;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for (w, aj) in jets {
        let is_zero_coset = w.iter().all(|&x| x == 0);
        for mu in &unknowns {
            // Row vector equation: Σ_β binom 2^{|β|} N_β A_{μ−β} − δ(ω) N_μ = 0.
            let mut coef = vec![vec![Q::zero(); nvar]; r];
            let mut constant = vec![Q::zero(); r];
            for beta in mu.lower_set() {
                let rest = mu.checked_sub(&beta).unwrap();
                let c = mu.binom(&beta) * pow2(beta.abs() as i64);
                let am = aj.get(&rest);
                if let Some(&p) = upos.get(&beta) {
                    for i in 0..r {
                        for j in 0..r {
                            if !am[(i, j)].is_zero() {
                                coef[j][p * r + i] += &c * &am[(i, j)];
                            }
                        }
                    }
                } else if let Some(nb) = fixed.get(&beta) {
                    let v = (nb * am).scale(&c);
                    for j in 0..r {
                        constant[j] += &v[(0, j)];
                    }
                }
            }
            if is_zero_coset {
                let p = upos[mu];
                for j in 0..r {
                    coef[j][p * r + j] -= one();
                }
            }
            for j in 0..r {
                rows.push(std::mem::take(&mut coef[j]));
                rhs.push(-constant[j].clone());
            }
        }
    }
    let sol = QMatrix::from_rows(rows).solve(&rhs)?;
    let mut out = fixed.clone();
    for (i, mu) in unknowns.iter().enumerate() {
        out.insert(mu.clone(), QMatrix::from_rows(vec![sol[i * r..(i + 1) * r].to_vec()]));
    }
    Some(out)
}

fn joint_search(
    mask: &Mask,
    jets: &[(Point, Jet)],
    fixed: HashMap<MultiIndex, QMatrix>,
    k0: u32,
    cap: u32,
) -> Result<SumRules> {
    let d = mask.dim();
    let r = mask.r();
    let mut best = fixed.clone();
    for top in k0..=cap {
        match joint_solve(d, r, jets, &fixed, k0, top) {
            Some(f) => best = f,
            None => {
                return Ok(SumRules { order: top, filter: Some(filter_jet(d, r, top - 1, &best)), resonance: Some(k0) })
            }
        }
    }
    Ok(SumRules { order: cap + 1, filter: Some(filter_jet(d, r, cap, &best)), resonance: Some(k0) })
}

/// Checks `N_μ(υ e_ℓ) = (−1)^{|ν_ℓ|} ν_ℓ! δ(μ − ν_ℓ)` for `|μ| ≤ |ν_ℓ|`.
pub fn filter_has_hermite_form(filter: &Jet, htype: &HermiteType) -> bool {
    let d = htype.dim();
    htype.lambda.iter().enumerate().all(|(l, nu)| {
        if filter.order() < nu.abs() {
            return false;
        }
        up_to_degree(d, nu.abs()).iter().all(|mu| {
            let expect = if mu == nu {
                let s = if nu.abs() % 2 == 0 { one() } else { -one() };
                s * nu.factorial()
            } else {
                Q::zero()
            };
            filter.get(mu)[(0, l)] == expect
        })
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermiteVerdict {
    pub ok: bool,
    pub sr_order: u32,
}

/// Generalized Hermite type test for `Λ`.
pub fn is_generalized_hermite(mask: &Mask, htype: &HermiteType, cap: u32) -> Result<HermiteVerdict> {
    check_dims(mask, htype)?;
    let sr = sum_rule_order(mask, cap.max(htype.max_order()))?;
    let ok = sr.order > htype.max_order()
        && sr.filter.as_ref().is_some_and(|f| filter_has_hermite_form(f, htype));
    Ok(HermiteVerdict { ok, sr_order: sr.order })
}

fn check_dims(mask: &Mask, htype: &HermiteType) -> Result<()> {
    if htype.r() != mask.r() || htype.dim() != mask.dim() {
        return Err(Error::DimensionMismatch(format!(
            "type has r={}, d={}; mask has r={}, d={}",
            htype.r(),
            htype.dim(),
            mask.r(),
            mask.dim()
        )));
    }
    Ok(())
}

/// Largest `s ≤ filter order + 1` for which every component of `filter`
/// equals the phase-monomial jet of `(ν_ℓ, τ_ℓ)` up to degree `s − 1`.
pub fn phase_agreement(filter: &Jet, htype: &HermiteType) -> u32 {
    let targets: Vec<Jet> = htype
        .lambda
        .iter()
        .zip(&htype.tau)
        .map(|(nu, tau)| phase_monomial_jet(nu, tau, filter.order()))
        .collect();
    for k in 0..=filter.order() {
        for mu in of_degree(filter.dim(), k) {
            let row = filter.get(&mu);
            if targets.iter().enumerate().any(|(l, t)| row[(0, l)] != t.scalar(&mu)) {
                return k;
            }
        }
    }
    filter.order() + 1
}

/// Linear-phase moment order for `(Λ, T)`.
pub fn lpm_order(mask: &Mask, htype: &HermiteType, cap: u32) -> Result<u32> {
    check_dims(mask, htype)?;
    let sr = sum_rule_order(mask, cap)?;
    Ok(match sr.filter {
        None => 0,
        Some(f) => phase_agreement(&f, htype).min(sr.order),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Theta {
    /// Zero-based `θ(ℓ)`.
    pub theta: Vec<usize>,
    /// `β_ℓ = 2τ_ℓ − τ_{θ(ℓ)}`.
    pub beta: Vec<Point>,
    /// Some `ℓ` had more than one admissible `θ(ℓ)`.
    pub ambiguous: bool,
}

/// Smallest admissible `θ(ℓ)` for each `ℓ`.
pub fn derive_theta(htype: &HermiteType) -> Result<Theta> {
    let r = htype.r();
    let mut theta = Vec::with_capacity(r);
    let mut beta = Vec::with_capacity(r);
    let mut ambiguous = false;
    for l in 0..r {
        let admissible: Vec<(usize, Point)> = (0..r)
            .filter(|&j| htype.lambda[j] == htype.lambda[l])
            .filter_map(|j| {
                let b: Vec<Q> = htype.tau[l].iter().zip(&htype.tau[j]).map(|(a, c)| a * Q::from_integer(2.into()) - c).collect();
                b.iter()
                    .all(|x| x.is_integer())
                    .then(|| (j, b.iter().map(|x| i64::try_from(x.to_integer()).expect("small shift")).collect()))
            })
            .collect();
        let Some((j, b)) = admissible.first().cloned() else {
            return Err(Error::IncompatibleType(format!(
                "no admissible coset map for component {}",
                l + 1
            )));
        };
        ambiguous |= admissible.len() > 1;
        theta.push(j);
        beta.push(b);
    }
    Ok(Theta { theta, beta, ambiguous })
}

/// `θ` from the type when given, otherwise [`derive_theta`].
pub fn theta_for(htype: &HermiteType) -> Result<Theta> {
    match &htype.theta {
        None => derive_theta(htype),
        Some(t) => {
            let mut beta = Vec::new();
            for (l, &j) in t.iter().enumerate() {
                if htype.lambda[j] != htype.lambda[l] {
                    return Err(Error::IncompatibleType(format!("θ({}) has a different type entry", l + 1)));
                }
                let b: Vec<Q> = htype.tau[l].iter().zip(&htype.tau[j]).map(|(a, c)| a * Q::from_integer(2.into()) - c).collect();
                if !b.iter().all(|x| x.is_integer()) {
                    return Err(Error::IncompatibleType(format!("β_{} is not integral", l + 1)));
                }
                beta.push(b.iter().map(|x| i64::try_from(x.to_integer()).expect("small shift")).collect());
            }
            Ok(Theta { theta: t.clone(), beta, ambiguous: false })
        }
    }
}

/// `a(2k + β_ℓ) e_{θ(ℓ)} = 2^{−d−|ν_ℓ|} δ(k) e_ℓ` for all `k` and `ℓ`.
pub fn interpolatory_check(mask: &Mask, htype: &HermiteType) -> Result<bool> {
    check_dims(mask, htype)?;
    let th = theta_for(htype)?;
    let d = mask.dim();
    let r = mask.r();
    for l in 0..r {
        let beta = &th.beta[l];
        let col = th.theta[l];
        let target = pow2(-((d as u32 + htype.lambda[l].abs()) as i64));
        // k = 0 point.
        let at0 = mask.get_or_zero(beta);
        for i in 0..r {
            let expect = if i == l { target.clone() } else { Q::zero() };
            if at0[(i, col)] != expect {
                return Ok(false);
            }
        }
        for (p, m) in mask.iter() {
            if p == beta {
                continue;
            }
            if p.iter().zip(beta).all(|(x, b)| (x - b).rem_euclid(2) == 0) && (0..r).any(|i| !m[(i, col)].is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Aggregated classification of a mask against its declared type.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub sr_order: u32,
    pub lpm_order: u32,
    pub hermite_type_ok: bool,
    pub interpolatory_ok: Option<bool>,
    pub spectral_ok: bool,
    pub spectral: SpectralVerdict,
    pub resonance: Option<u32>,
    pub matching_filter: Option<Jet>,
}

pub fn classify(mask: &Mask, htype: &HermiteType, cap: u32) -> Result<ClassificationReport> {
    check_dims(mask, htype)?;
    let sr = sum_rule_order(mask, cap)?;
    let lpm = sr.filter.as_ref().map_or(0, |f| phase_agreement(f, htype).min(sr.order));
    let hermite_type_ok = sr.order > htype.max_order()
        && sr.filter.as_ref().is_some_and(|f| filter_has_hermite_form(f, htype));
    let interpolatory_ok = match interpolatory_check(mask, htype) {
        Ok(v) => Some(v),
        Err(Error::IncompatibleType(_)) => None,
        Err(e) => return Err(e),
    };
    let spectral = spectral_condition(mask, htype.max_order());
    Ok(ClassificationReport {
        sr_order: sr.order,
        lpm_order: lpm,
        hermite_type_ok,
        interpolatory_ok,
        spectral_ok: spectral.ok,
        spectral,
        resonance: sr.resonance,
        matching_filter: sr.filter,
    })
}

/// JSON rendering of a row jet: one entry per multi-index.
pub fn jet_json(j: &Jet) -> serde_json::Value {
    serde_json::Value::Array(
        j.indices()
            .iter()
            .map(|mu| {
                let row = j.get(mu);
                serde_json::json!({
                    "mu": mu.0,
                    "values": (0..row.cols()).map(|c| fmt_q(&row[(0, c)])).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

impl ClassificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sr_order": self.sr_order,
            "lpm_order": self.lpm_order,
            "hermite_type_ok": self.hermite_type_ok,
            "interpolatory_ok": self.interpolatory_ok,
            "spectral_ok": self.spectral_ok,
            "matching_filter": self.matching_filter.as_ref().map(jet_json),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::QMatrix;
    use crate::rational::{binomial, q};

    fn bspline(n: u32) -> Mask {
        Mask::from_entries(
            1,
            1,
            (0..=n).map(|k| (vec![k as i64], QMatrix::from_rows(vec![vec![binomial(n, k) * pow2(-(n as i64))]]))),
        )
        .unwrap()
    }

    /// Hermite cubic mask, columns `2^{-1-ν} φ^{(ν)}(k/2)`.
    fn hermite_cubic() -> Mask {
        let m = |a: Q, b: Q, c: Q, e: Q| QMatrix::from_rows(vec![vec![a, b], vec![c, e]]);
        Mask::from_entries(
            1,
            2,
            [
                (vec![-1], m(q(1, 4), q(3, 8), q(-1, 16), q(-1, 16))),
                (vec![0], m(q(1, 2), q(0, 1), q(0, 1), q(1, 4))),
                (vec![1], m(q(1, 4), q(-3, 8), q(1, 16), q(-1, 16))),
            ],
        )
        .unwrap()
    }

    #[test]
    fn bspline_filter_order_two() {
        let f = matching_filter(&bspline(2), 2).unwrap();
        let vals: Vec<Q> = f.indices().iter().map(|m| f.get(m)[(0, 0)].clone()).collect();
        // υ̂ = e^{iξ}(ξ/2 / sin(ξ/2))^2 = 1 + iξ − (5/12)ξ^2 + O(ξ^3).
        assert_eq!(vals, vec![q(1, 1), q(-1, 1), q(5, 6)]);
    }

    #[test]
    fn bspline_sum_rules() {
        for n in 1..=6 {
            assert_eq!(sum_rule_order(&bspline(n), 10).unwrap().order, n);
        }
    }

    #[test]
    fn hermite_cubic_classification() {
        let m = hermite_cubic();
        let t = HermiteType::zero_shift(&[&[0], &[1]]);
        let rep = classify(&m, &t, 6).unwrap();
        assert_eq!(rep.sr_order, 4);
        assert!(rep.hermite_type_ok);
        assert_eq!(rep.interpolatory_ok, Some(true));
        assert!(rep.spectral.simple);
        assert!(spectral_condition(&m, 1).ok);
        assert_eq!(rep.lpm_order, 4);
    }

    #[test]
    fn identity_symbol_is_not_simple() {
        let m = Mask::from_entries(1, 2, [(vec![0], QMatrix::identity(2))]).unwrap();
        assert_eq!(left_unit_eigenvector(&m), Err(Error::EigenvalueNotSimple));
        assert!(!spectral_condition(&m, 0).ok);
    }

    #[test]
    fn theta_examples() {
        let t = HermiteType::new(vec![MultiIndex(vec![0]); 2], Some(vec![vec![q(0, 1)], vec![q(1, 2)]])).unwrap();
        let th = derive_theta(&t).unwrap();
        assert_eq!(th.theta, vec![0, 0]);
        assert_eq!(th.beta, vec![vec![0], vec![1]]);
        let lam: Vec<MultiIndex> = [0, 1, 0, 1].iter().map(|&x| MultiIndex(vec![x])).collect();
        let tau = vec![vec![q(0, 1)], vec![q(0, 1)], vec![q(1, 2)], vec![q(1, 2)]];
        let th = derive_theta(&HermiteType::new(lam, Some(tau)).unwrap()).unwrap();
        assert_eq!(th.theta, vec![0, 1, 0, 1]);
        assert_eq!(th.beta[2], vec![1]);
        let bad = HermiteType::new(vec![MultiIndex(vec![0]), MultiIndex(vec![1])], Some(vec![vec![q(1, 2)]; 2])).unwrap();
        assert!(matches!(derive_theta(&bad), Err(Error::IncompatibleType(_))));
    }

    #[test]
    fn bspline_lpm_with_unit_shift() {
        let t = HermiteType::new(vec![MultiIndex(vec![0])], Some(vec![vec![q(1, 1)]])).unwrap();
        assert_eq!(lpm_order(&bspline(2), &t, 6).unwrap(), 2);
        assert!(!interpolatory_check(&bspline(2), &HermiteType::scalar(1)).unwrap());
    }
}

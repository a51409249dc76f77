//! Symmetry groups, the matrices `S(E, Λ)` and orbit completion.
//!
//! A mask is symmetric about a center `c` under a group `G` of integer
//! matrices when `a(E(k − c) + c) = S_E a(k) S_E^{-1}` for all `E ∈ G`.

use crate::error::{Error, Result};
use crate::io::SymmetryBlock;
use crate::jets::expand_linear_power;
use crate::lattice::Point;
use crate::mask::{HermiteType, Mask};
use crate::matrix::QMatrix;
use crate::rational::{fmt_q, qi, Q};
use crate::seq::MatSeq;
use std::collections::BTreeMap;

fn imat(rows: &[&[i64]]) -> QMatrix {
    QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
}

/// Elements of a named group acting on `Z^d`.
pub fn group_elements(name: &str, d: usize) -> Result<Vec<QMatrix>> {
    let gens: Vec<QMatrix> = match (name, d) {
        ("Z2", _) => vec![QMatrix::identity(d), QMatrix::identity(d).scale(&qi(-1))],
        ("D4", 2) => vec![
            imat(&[&[1, 0], &[0, 1]]),
            imat(&[&[1, 0], &[0, -1]]),
            imat(&[&[0, 1], &[1, 0]]),
            imat(&[&[0, 1], &[-1, 0]]),
        ],
        ("D6", 2) => vec![
            imat(&[&[1, 0], &[0, 1]]),
            imat(&[&[0, -1], &[1, -1]]),
            imat(&[&[-1, 1], &[-1, 0]]),
            imat(&[&[0, 1], &[1, 0]]),
            imat(&[&[1, -1], &[0, -1]]),
            imat(&[&[-1, 0], &[-1, 1]]),
        ],
        _ => return Err(Error::UnsupportedSymmetry(format!("{name} in dimension {d}"))),
    };
    let mut out = gens.clone();
    if name != "Z2" {
        out.extend(gens.iter().map(|g| g.scale(&qi(-1))));
    }
    Ok(out)
}

/// `S(E, Λ)`, defined by `[(iE^T ξ)^{ν_ℓ}]_ℓ = [(iξ)^{ν_j}]_j S`.
pub fn symmetry_matrix(e: &QMatrix, htype: &HermiteType) -> Result<QMatrix> {
    let r = htype.r();
    for i in 0..r {
        for j in 0..i {
            if htype.lambda[i] == htype.lambda[j] {
                return Err(Error::AmbiguousSymmetry);
            }
        }
    }
    let et = e.transpose();
    let mut s = QMatrix::zeros(r, r);
    for (l, nu) in htype.lambda.iter().enumerate() {
        for (kappa, c) in expand_linear_power(&et, nu) {
            let Some(j) = htype.lambda.iter().position(|x| x == &kappa) else {
                return Err(Error::NotClosedUnderSymmetry(format!(
                    "image of {:?} involves {:?}",
                    nu.0, kappa.0
                )));
            };
            s[(j, l)] = c;
        }
    }
    Ok(s)
}

/// Group elements with their `S_E` and a center.
#[derive(Clone, Debug)]
pub struct SymmetryDescriptor {
    pub group: String,
    pub center: Vec<Q>,
    pub elements: Vec<(QMatrix, QMatrix)>,
}

impl SymmetryDescriptor {
    /// `S_E` computed from the type via [`symmetry_matrix`].
    pub fn new(group: &str, center: Vec<Q>, htype: &HermiteType) -> Result<SymmetryDescriptor> {
        let d = htype.dim();
        let elements = group_elements(group, d)?
            .into_iter()
            .map(|e| {
                let s = symmetry_matrix(&e, htype)?;
                Ok((e, s))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymmetryDescriptor { group: group.to_string(), center, elements })
    }

    pub fn from_block(block: &SymmetryBlock, htype: &HermiteType) -> Result<SymmetryDescriptor> {
        Self::new(&block.group, block.center.clone(), htype)
    }

    /// `E(k − c) + c`, which must be a lattice point.
    pub fn image(&self, e: &QMatrix, k: &[i64]) -> Result<Point> {
        let shifted: Vec<Q> = k.iter().zip(&self.center).map(|(x, c)| qi(*x) - c).collect();
        let img = e.mul_vec(&shifted);
        img.iter()
            .zip(&self.center)
            .map(|(x, c)| {
                let y = x + c;
                if y.is_integer() {
                    Ok(i64::try_from(y.to_integer()).expect("small lattice point"))
                } else {
                    Err(Error::NonLatticeImage(k.to_vec()))
                }
            })
            .collect()
    }
}

fn describe(m: &QMatrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(",")).collect();
    format!("[{}]", rows.join("; "))
}

/// Full mask from orbit representatives.
pub fn symmetry_complete(reps: &MatSeq, sym: &SymmetryDescriptor) -> Result<Mask> {
    let mut full: BTreeMap<Point, QMatrix> = BTreeMap::new();
    for (k, a) in reps.iter() {
        for (e, s) in &sym.elements {
            let img = sym.image(e, k)?;
            let sinv = s.inverse()?;
            let v = &(s * a) * &sinv;
            match full.get(&img) {
                Some(old) if old != &v => {
                    return Err(Error::OrbitConflict {
                        point: img,
                        first: describe(old),
                        second: describe(&v),
                    })
                }
                Some(_) => {}
                None => {
                    full.insert(img, v);
                }
            }
        }
    }
    Mask::new(MatSeq::from_entries(reps.dim(), reps.rows(), reps.cols(), full))
}

/// First `(E, k)` violating the orbit relation, if any.
pub fn symmetry_violation(mask: &Mask, sym: &SymmetryDescriptor) -> Result<Option<(QMatrix, Point)>> {
    for (k, a) in mask.iter() {
        for (e, s) in &sym.elements {
            let img = sym.image(e, k)?;
            let v = &(s * a) * &s.inverse()?;
            if mask.get_or_zero(&img) != v {
                return Ok(Some((e.clone(), k.clone())));
            }
        }
    }
    Ok(None)
}

/// True when the mask satisfies the orbit relation. Only types whose
/// translations are all equal are supported.
pub fn symmetry_check(mask: &Mask, htype: &HermiteType, sym: &SymmetryDescriptor) -> Result<bool> {
    if htype.tau.iter().any(|t| t != &htype.tau[0]) {
        return Err(Error::UnsupportedSymmetry("mixed translations".into()));
    }
    Ok(symmetry_violation(mask, sym)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::MultiIndex;
    use crate::rational::q;

    #[test]
    fn s_matrices() {
        let t = HermiteType::zero_shift(&[&[0, 0], &[1, 0], &[0, 1]]);
        let swap = imat(&[&[0, 1], &[1, 0]]);
        assert_eq!(symmetry_matrix(&swap, &t).unwrap(), QMatrix::diag(&[qi(1)]).direct_sum(&swap));
        let neg = imat(&[&[-1]]);
        assert_eq!(symmetry_matrix(&neg, &HermiteType::zero_shift(&[&[0], &[2]])).unwrap(), QMatrix::identity(2));
        assert_eq!(
            symmetry_matrix(&neg, &HermiteType::zero_shift(&[&[0], &[1]])).unwrap(),
            QMatrix::diag(&[qi(1), qi(-1)])
        );
        let rep = HermiteType::new(vec![MultiIndex(vec![0]); 2], None).unwrap();
        assert_eq!(symmetry_matrix(&neg, &rep), Err(Error::AmbiguousSymmetry));
        let open = HermiteType::zero_shift(&[&[0, 0], &[1, 0]]);
        assert!(matches!(symmetry_matrix(&swap, &open), Err(Error::NotClosedUnderSymmetry(_))));
    }

    #[test]
    fn groups_are_closed() {
        for (g, n) in [("D4", 8), ("D6", 12)] {
            let els = group_elements(g, 2).unwrap();
            assert_eq!(els.len(), n);
            for a in &els {
                for b in &els {
                    assert!(els.contains(&(a * b)), "{g} not closed");
                }
            }
        }
    }

    #[test]
    fn completion_conflict_reported() {
        let t = HermiteType::scalar(1);
        let sym = SymmetryDescriptor::new("Z2", vec![q(0, 1)], &t).unwrap();
        let one = |v: Q| QMatrix::from_rows(vec![vec![v]]);
        let reps = MatSeq::from_entries(1, 1, 1, [(vec![1], one(q(1, 4))), (vec![-1], one(q(1, 3)))]);
        assert!(matches!(symmetry_complete(&reps, &sym), Err(Error::OrbitConflict { .. })));
        let reps = MatSeq::from_entries(1, 1, 1, [(vec![1], one(q(1, 4))), (vec![0], one(q(1, 2)))]);
        let m = symmetry_complete(&reps, &sym).unwrap();
        assert_eq!(m.len(), 3);
        assert!(symmetry_check(&m, &t, &sym).unwrap());
    }
}

//! Built-in mask families and their documented facts.
//!
//! Coefficients are stored as expression strings over the family
//! parameters and evaluated exactly. Families listed by orbit
//! representatives are completed with [`symmetry_complete`].

use crate::error::{Error, Result};
use crate::expr::{eval, Params};
use crate::lattice::MultiIndex;
use crate::mask::{HermiteType, Mask};
use crate::matrix::QMatrix;
use crate::rational::{parse_q, Q};
use crate::seq::MatSeq;
use crate::symmetry::{symmetry_complete, SymmetryDescriptor};

type Entry = (&'static [i64], &'static [&'static [&'static str]]);

/// A parameterized mask family.
pub struct Family {
    pub name: &'static str,
    pub dim: usize,
    pub lambda: &'static [&'static [u32]],
    pub tau: Option<&'static [&'static [&'static str]]>,
    pub params: &'static [&'static str],
    /// Symmetry group and center used to complete `entries` when
    /// `representatives` is set, and to verify the result.
    pub symmetry: Option<(&'static str, &'static [&'static str])>,
    pub representatives: bool,
    pub entries: &'static [Entry],
}

/// Claimed order: exact value or lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderClaim {
    Exact(u32),
    AtLeast(u32),
}

impl OrderClaim {
    pub fn holds(&self, v: u32) -> bool {
        match *self {
            OrderClaim::Exact(x) => v == x,
            OrderClaim::AtLeast(x) => v >= x,
        }
    }
}

impl std::fmt::Display for OrderClaim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderClaim::Exact(x) => write!(f, "={x}"),
            OrderClaim::AtLeast(x) => write!(f, ">={x}"),
        }
    }
}

/// Expected facts for a registry example.
#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub sr: Option<OrderClaim>,
    pub lpm: Option<OrderClaim>,
    pub sm2: Option<(f64, f64)>,
    pub interpolatory: bool,
    pub hermite: bool,
    pub spline: bool,
}

/// A registry example: family, default parameters and expected facts.
pub struct ExampleRecord {
    pub id: &'static str,
    pub summary: &'static str,
    pub family: &'static Family,
    pub defaults: &'static [(&'static str, &'static str)],
    pub expected: Expected,
}

/// A mask instantiated from the registry.
#[derive(Clone, Debug)]
pub struct Instance {
    pub mask: Mask,
    pub htype: HermiteType,
    pub symmetry: Option<SymmetryDescriptor>,
    pub params: Params,
}

impl Family {
    pub fn htype(&self) -> Result<HermiteType> {
        let lambda = self.lambda.iter().map(|v| MultiIndex(v.to_vec())).collect();
        let tau = match self.tau {
            None => None,
            Some(t) => Some(
                t.iter()
                    .map(|v| v.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>())
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        HermiteType::new(lambda, tau)
    }

    /// Evaluates the family at `params`; missing parameters are an error.
    pub fn instantiate(&self, params: &Params) -> Result<Instance> {
        for p in params.keys() {
            if !self.params.contains(&p.as_str()) {
                return Err(Error::MalformedFile(format!("family {} has no parameter {p:?}", self.name)));
            }
        }
        let htype = self.htype()?;
        let r = htype.r();
        let mut seq = MatSeq::new(self.dim, r, r);
        for (k, rows) in self.entries {
            let m = rows
                .iter()
                .map(|row| row.iter().map(|s| eval(s, params)).collect::<Result<Vec<Q>>>())
                .collect::<Result<Vec<_>>>()?;
            seq.insert(k.to_vec(), QMatrix::from_rows(m));
        }
        let symmetry = match self.symmetry {
            None => None,
            Some((g, c)) => {
                let center = c.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>>>()?;
                Some(SymmetryDescriptor::new(g, center, &htype)?)
            }
        };
        let mask = match (&symmetry, self.representatives) {
            (Some(s), true) => symmetry_complete(&seq, s)?,
            _ => Mask::new(seq)?,
        };
        Ok(Instance { mask, htype, symmetry, params: params.clone() })
    }

    /// Orbit representatives (or full coefficient list) before completion.
    pub fn raw_entries(&self, params: &Params) -> Result<MatSeq> {
        let r = self.lambda.len();
        let mut seq = MatSeq::new(self.dim, r, r);
        for (k, rows) in self.entries {
            let m = rows
                .iter()
                .map(|row| row.iter().map(|s| eval(s, params)).collect::<Result<Vec<Q>>>())
                .collect::<Result<Vec<_>>>()?;
            seq.insert(k.to_vec(), QMatrix::from_rows(m));
        }
        Ok(seq)
    }
}

pub static BIRKHOFF: Family = Family {
    name: "birkhoff",
    dim: 1,
    lambda: &[&[0], &[2]],
    tau: None,
    params: &["t1", "t2", "t3", "t4"],
    symmetry: Some(("Z2", &["0"])),
    representatives: true,
    entries: &[
        (&[0], &[&["1/2+2*t3", "2*t4"], &["5/6*t3", "1/8+5/6*t4"]]),
        (&[1], &[&["27/128+t1", "3/32+t2"], &["-9/128+11/12*t1", "5/32+11/12*t2"]]),
        (&[2], &[&["-t3", "-t4"], &["1/12*t3", "1/12*t4"]]),
        (&[3], &[&["5/128-t1", "-3/32-t2"], &["1/12*t1", "1/12*t2"]]),
    ],
};

pub static BIRKHOFF2: Family = Family {
    name: "birkhoff2",
    dim: 1,
    lambda: &[&[0], &[2]],
    tau: None,
    params: &["t"],
    symmetry: Some(("Z2", &["0"])),
    representatives: true,
    entries: &[
        (
            &[0],
            &[&["633/1568-5/28*t", "-15/32"], &["-31/2401-953/5488*t+10/147*t^2", "-327/6272+5/28*t"]],
        ),
        (&[1], &[&["1/4", "0"], &["-31/1568-1/14*t", "1/16"]]),
        (
            &[2],
            &[&["151/3136+5/56*t", "15/64"], &["-1887/307328-321/10976*t-5/147*t^2", "-359/12544-5/56*t"]],
        ),
    ],
};

pub static DUAL1: Family = Family {
    name: "dual-lpm",
    dim: 1,
    lambda: &[&[0], &[1]],
    tau: Some(&[&["1/2"], &["1/2"]]),
    params: &[],
    symmetry: Some(("Z2", &["1/2"])),
    representatives: false,
    entries: &[
        (&[-1], &[&["5/64", "9/32"], &["-3/128", "-5/64"]]),
        (&[0], &[&["27/64", "9/32"], &["-9/128", "3/64"]]),
        (&[1], &[&["27/64", "-9/32"], &["9/128", "3/64"]]),
        (&[2], &[&["5/64", "-9/32"], &["3/128", "-5/64"]]),
    ],
};

pub static DUAL2: Family = Family {
    name: "dual-sr6",
    dim: 1,
    lambda: &[&[0], &[1]],
    tau: Some(&[&["1/2"], &["1/2"]]),
    params: &[],
    symmetry: Some(("Z2", &["1/2"])),
    representatives: false,
    entries: &[
        (&[-1], &[&["13/128", "15/64"], &["-33/1280", "-7/128"]]),
        (&[0], &[&["51/128", "15/64"], &["-63/1280", "9/128"]]),
        (&[1], &[&["51/128", "-15/64"], &["63/1280", "9/128"]]),
        (&[2], &[&["13/128", "-15/64"], &["33/1280", "-7/128"]]),
    ],
};

pub static LAGRANGE: Family = Family {
    name: "lagrange",
    dim: 1,
    lambda: &[&[0], &[0]],
    tau: Some(&[&["0"], &["1/2"]]),
    params: &["t1", "t2", "t3"],
    symmetry: None,
    representatives: false,
    entries: &[
        (&[-2], &[&["1/4*t3", "-1/32-t1"], &["0", "1/4*t1"]]),
        (&[-1], &[&["-t2", "9/32-t1"], &["1/4*t2", "-1/32+1/4*t1"]]),
        (&[0], &[&["1/2+3/2*t3", "9/32-t1"], &["-t3", "9/32+3/2*t1"]]),
        (&[1], &[&["-t2", "-1/32-t1"], &["1/2+3/2*t2", "9/32+3/2*t1"]]),
        (&[2], &[&["1/4*t3", "0"], &["-t3", "-1/32+1/4*t1"]]),
        (&[3], &[&["0", "0"], &["1/4*t2", "1/4*t1"]]),
    ],
};

pub static LAGRANGE_A1: Family = Family {
    name: "lagrange-a1",
    dim: 1,
    lambda: &[&[0], &[0]],
    tau: Some(&[&["0"], &["1/2"]]),
    params: &[],
    symmetry: None,
    representatives: false,
    entries: &[
        (&[-1], &[&["1/32", "1/8"], &["0", "1/16"]]),
        (&[0], &[&["1/4", "1/8"], &["1/8", "5/16"]]),
        (&[1], &[&["1/32", "0"], &["7/16", "5/16"]]),
        (&[2], &[&["0", "0"], &["1/8", "1/16"]]),
    ],
};

pub static LAGRANGE_A2: Family = Family {
    name: "lagrange-a2",
    dim: 1,
    lambda: &[&[0], &[0]],
    tau: Some(&[&["0"], &["1/2"]]),
    params: &[],
    symmetry: None,
    representatives: false,
    entries: &[
        (&[-1], &[&["1/16", "3/16"], &["0", "1/32"]]),
        (&[0], &[&["5/16", "3/16"], &["3/32", "9/32"]]),
        (&[1], &[&["1/16", "0"], &["3/8", "9/32"]]),
        (&[2], &[&["0", "0"], &["3/32", "1/32"]]),
    ],
};

pub static HEX_LPM: Family = Family {
    name: "hex-lpm",
    dim: 2,
    lambda: &[&[0, 0], &[1, 0], &[0, 1]],
    tau: None,
    params: &["t1", "t2", "t3", "t4"],
    symmetry: Some(("D6", &["0", "0"])),
    representatives: true,
    entries: &[
        (
            &[0, 0],
            &[&["1/4-12*t2", "0", "0"], &["0", "1/8+6*t3+6*t4", "0"], &["0", "0", "1/8+6*t3+6*t4"]],
        ),
        (&[1, 0], &[&["-4*t1", "-3/16", "3/32"], &["-t1", "-1/32", "1/64"], &["0", "0", "0"]]),
        (&[2, 0], &[&["2*t2", "2*t3+4*t4", "-t3-2*t4"], &["t2", "t3+t4", "-t3"], &["0", "0", "-t3+t4"]]),
        (&[2, 1], &[&["1/8+4*t1", "-3/32", "0"], &["1/16+2*t1", "-1/32", "0"], &["1/32+t1", "-1/64", "0"]]),
    ],
};

pub static HEX_SR5: Family = Family {
    name: "hex-sr5",
    dim: 2,
    lambda: &[&[0, 0], &[1, 0], &[0, 1]],
    tau: None,
    params: &["t1", "t2", "t3"],
    symmetry: Some(("D6", &["0", "0"])),
    representatives: true,
    entries: &[
        (
            &[0, 0],
            &[
                &["47/128-27/8*t3", "0", "0"],
                &["0", "1/8-6*t1-6*t2", "0"],
                &["0", "0", "1/8-6*t1-6*t2"],
            ],
        ),
        (
            &[1, 0],
            &[
                &["21/128-9/8*t3", "-3/8+9/2*t3", "3/16-9/4*t3"],
                &["3/64-9/16*t3", "-7/64+15/8*t3", "1/32-3/8*t3"],
                &["0", "0", "-3/64+9/8*t3"],
            ],
        ),
        (
            &[2, 0],
            &[
                &["-5/256+9/16*t3", "-2*t1", "t1"],
                &["-1/128+3/16*t3", "-5/4*t1-t2+3/16*t3", "5/4*t1+2*t2-3/16*t3"],
                &["0", "0", "5/4*t1+3*t2-3/16*t3"],
            ],
        ),
        (
            &[2, 1],
            &[
                &["-5/128+9/8*t3", "-3/16+9/4*t3", "0"],
                &["-1/64+3/8*t3", "-5/64+9/8*t3", "0"],
                &["-1/128+3/16*t3", "-1/32+3/8*t3", "-1/64+3/8*t3"],
            ],
        ),
    ],
};

pub static SQUARE_LPM: Family = Family {
    name: "square-lpm",
    dim: 2,
    lambda: &[&[0, 0], &[1, 0], &[0, 1]],
    tau: Some(&[&["1/2", "1/2"], &["1/2", "1/2"], &["1/2", "1/2"]]),
    params: &["t1", "t2", "t3"],
    symmetry: Some(("D4", &["1/2", "1/2"])),
    representatives: true,
    entries: &[
        (
            &[1, 1],
            &[
                &["21/128-4*t3", "-9/64+t2", "-9/64+t2"],
                &["3/128-t3", "-3/256+t1+1/2*t2", "-t1"],
                &["3/128-t3", "-t1", "-3/256+t1+1/2*t2"],
            ],
        ),
        (
            &[2, 1],
            &[
                &["3/64+4*t3", "-9/64+t2", "-t2"],
                &["3/256+t3", "-15/256+t1+1/2*t2", "-3/128+t1"],
                &["3/256+t3", "-t1", "9/256-t1-1/2*t2"],
            ],
        ),
        (
            &[2, 2],
            &[
                &["-1/128-4*t3", "-t2", "-t2"],
                &["-t3", "5/256-t1-1/2*t2", "-3/128+t1"],
                &["-t3", "-3/128+t1", "5/256-t1-1/2*t2"],
            ],
        ),
    ],
};

pub static SQUARE_SR5: Family = Family {
    name: "square-sr5",
    dim: 2,
    lambda: &[&[0, 0], &[1, 0], &[0, 1]],
    tau: Some(&[&["1/2", "1/2"], &["1/2", "1/2"], &["1/2", "1/2"]]),
    params: &["t1", "t2"],
    symmetry: Some(("D4", &["1/2", "1/2"])),
    representatives: true,
    entries: &[
        (
            &[1, 1],
            &[
                &["5/32+4*t1", "-5/128-4*t2", "-5/128-4*t2"],
                &["1/64+t1", "11/256-t2", "-t2"],
                &["1/64+t1", "-t2", "11/256-t2"],
            ],
        ),
        (
            &[2, 1],
            &[
                &["1/32-4*t1", "-5/128-4*t2", "-7/128+4*t2"],
                &["1/128-t1", "-1/256-t2", "-1/64+t2"],
                &["-t1", "-t2", "1/256+t2"],
            ],
        ),
        (
            &[2, 2],
            &[
                &["1/32+4*t1", "-7/128+4*t2", "-7/128+4*t2"],
                &["1/128+t1", "-3/256+t2", "-1/64+t2"],
                &["1/128+t1", "-1/64+t2", "-3/256+t2"],
            ],
        ),
    ],
};

pub static MIXED_A1: Family = Family {
    name: "mixed-a1",
    dim: 2,
    lambda: &[&[0, 0], &[1, 1]],
    tau: Some(&[&["1/2", "1/2"], &["1/2", "1/2"]]),
    params: &["t1", "t2", "t3"],
    symmetry: Some(("D4", &["1/2", "1/2"])),
    representatives: true,
    entries: &[
        (&[1, 1], &[&["17/256-6*t3", "3/32-6*t2"], &["t1", "3/256-5/2*t2"]]),
        (&[2, 1], &[&["19/256+6*t3", "3/32-6*t2"], &["-1/512+t1", "-3/256+5/2*t2"]]),
        (&[2, 2], &[&["1/256-6*t3", "3/32-6*t2"], &["1/128+t1+4*t3", "-5/256+3/2*t2"]]),
        (&[3, 1], &[&["1/64", "0"], &["t3", "t2"]]),
    ],
};

pub static MIXED_A2: Family = Family {
    name: "mixed-a2",
    dim: 2,
    lambda: &[&[0, 0], &[1, 1]],
    tau: Some(&[&["1/2", "1/2"], &["1/2", "1/2"]]),
    params: &["t1", "t2", "t3"],
    symmetry: Some(("D4", &["1/2", "1/2"])),
    representatives: true,
    entries: &[
        (&[1, 1], &[&["21/256-2*t2-2*t3", "1/64-4*t1"], &["t3", "t1"]]),
        (&[2, 1], &[&["15/256+2*t2+2*t3", "1/64-4*t1"], &["-t2", "1/64+t1"]]),
        (&[2, 2], &[&["5/256-2*t2-2*t3", "1/64-4*t1"], &["t3", "t1"]]),
        (&[3, 1], &[&["1/64", "0"], &["-1/512", "1/128"]]),
    ],
};

fn ex(
    id: &'static str,
    summary: &'static str,
    family: &'static Family,
    defaults: &'static [(&'static str, &'static str)],
    expected: Expected,
) -> ExampleRecord {
    ExampleRecord { id, summary, family, defaults, expected }
}

/// All registry examples in id order.
pub fn examples() -> Vec<ExampleRecord> {
    use OrderClaim::*;
    vec![
        ex(
            "ex6.2a",
            "type {0,2}, support [-3,3], smooth linear-phase member",
            &BIRKHOFF,
            &[("t1", "5/128"), ("t2", "-3/16"), ("t3", "-3/32"), ("t4", "-3/32")],
            Expected { sr: Some(AtLeast(6)), lpm: Some(Exact(6)), sm2: Some((4.3522, 0.01)), hermite: true, ..Default::default() },
        ),
        ex(
            "ex6.2b",
            "type {0,2}, support [-2,2], spline basis",
            &BIRKHOFF2,
            &[("t", "0")],
            Expected { sr: Some(AtLeast(8)), sm2: Some((5.5, 1e-3)), hermite: true, spline: true, ..Default::default() },
        ),
        ex(
            "ex6.2c",
            "type {0,2}, support [-3,3], interpolatory member",
            &BIRKHOFF,
            &[("t1", "25/256"), ("t2", "-1/4"), ("t3", "0"), ("t4", "0")],
            Expected {
                sr: Some(AtLeast(6)),
                lpm: Some(Exact(6)),
                sm2: Some((2.6943, 0.01)),
                interpolatory: true,
                hermite: true,
                ..Default::default()
            },
        ),
        ex(
            "ex6.3a",
            "dual type {0,1}, T={1/2,1/2}, linear-phase moments of order 4",
            &DUAL1,
            &[],
            Expected { sr: Some(AtLeast(4)), lpm: Some(Exact(4)), sm2: Some((3.33904, 0.01)), hermite: true, ..Default::default() },
        ),
        ex(
            "ex6.3b",
            "dual type {0,1}, T={1/2,1/2}, sum rules of order 6, spline basis",
            &DUAL2,
            &[],
            Expected { sr: Some(Exact(6)), sm2: Some((4.5, 1e-3)), hermite: true, spline: true, ..Default::default() },
        ),
        ex(
            "ex6.4a",
            "Lagrange type {0,0}, T={0,1/2}, interpolatory",
            &LAGRANGE,
            &[("t1", "-3/128"), ("t2", "0"), ("t3", "0")],
            Expected { lpm: Some(AtLeast(4)), sm2: Some((2.47369, 0.01)), interpolatory: true, hermite: true, ..Default::default() },
        ),
        ex(
            "ex6.4b",
            "Lagrange type {0,0}, T={0,1/2}, interpolatory, sum rules of order 5",
            &LAGRANGE,
            &[("t1", "3/64"), ("t2", "0"), ("t3", "0")],
            Expected {
                sr: Some(Exact(5)),
                lpm: Some(AtLeast(4)),
                sm2: Some((2.15978, 0.01)),
                interpolatory: true,
                hermite: true,
                ..Default::default()
            },
        ),
        ex(
            "ex6.4c",
            "Lagrange type {0,0}, spline basis a1",
            &LAGRANGE_A1,
            &[],
            Expected { sr: Some(Exact(5)), sm2: Some((3.5, 1e-3)), hermite: true, spline: true, ..Default::default() },
        ),
        ex(
            "ex6.4d",
            "Lagrange type {0,0}, spline basis a2",
            &LAGRANGE_A2,
            &[],
            Expected { sr: Some(Exact(5)), sm2: Some((3.5, 1e-3)), hermite: true, spline: true, ..Default::default() },
        ),
        ex(
            "ex6.5a",
            "hexagonal-symmetric type {0,e1,e2}, linear-phase moments of order 4",
            &HEX_LPM,
            &[("t1", "-15/512"), ("t2", "1/512"), ("t3", "-1/128"), ("t4", "1/256")],
            Expected { sr: Some(AtLeast(4)), lpm: Some(AtLeast(4)), sm2: Some((3.13452, 0.05)), hermite: true, ..Default::default() },
        ),
        ex(
            "ex6.5b",
            "hexagonal-symmetric type {0,e1,e2}, interpolatory",
            &HEX_LPM,
            &[("t1", "-1/32"), ("t2", "0"), ("t3", "0"), ("t4", "0")],
            Expected {
                sr: Some(AtLeast(4)),
                lpm: Some(AtLeast(4)),
                sm2: Some((2.71094, 0.05)),
                interpolatory: true,
                hermite: true,
                ..Default::default()
            },
        ),
        ex(
            "ex6.5c",
            "hexagonal-symmetric type {0,e1,e2}, sum rules of order 5",
            &HEX_SR5,
            &[("t1", "5/256"), ("t2", "-1/256"), ("t3", "29/512")],
            Expected { sr: Some(Exact(5)), sm2: Some((4.81514, 0.05)), hermite: true, ..Default::default() },
        ),
        ex(
            "ex6.6a",
            "square-symmetric dual type {0,e1,e2}, linear-phase moments of order 4",
            &SQUARE_LPM,
            &[("t1", "1/64"), ("t2", "5/128"), ("t3", "0")],
            Expected { sr: Some(AtLeast(4)), lpm: Some(AtLeast(4)), sm2: Some((3.33904, 0.05)), hermite: true, ..Default::default() },
        ),
        ex(
            "ex6.6b",
            "square-symmetric dual type {0,e1,e2}, sum rules of order 5",
            &SQUARE_SR5,
            &[("t1", "0"), ("t2", "1/64")],
            Expected { sr: Some(AtLeast(5)), sm2: Some((3.0, 0.05)), hermite: true, ..Default::default() },
        ),
        ex(
            "ex6.7a",
            "square-symmetric type {0,(1,1)}, mask a1",
            &MIXED_A1,
            &[("t1", "1/512"), ("t2", "1/128"), ("t3", "-1/256")],
            Expected { sr: Some(Exact(5)), sm2: Some((3.41080, 0.05)), hermite: true, ..Default::default() },
        ),
        ex(
            "ex6.7b",
            "square-symmetric type {0,(1,1)}, mask a2",
            &MIXED_A2,
            &[("t1", "-1/128"), ("t2", "1/256"), ("t3", "-1/256")],
            Expected { sr: Some(Exact(5)), sm2: Some((3.59632, 0.05)), hermite: true, ..Default::default() },
        ),
    ]
}

pub fn find(id: &str) -> Result<ExampleRecord> {
    examples().into_iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Parses `name=value` overrides.
pub fn parse_overrides(items: &[String]) -> Result<Vec<(String, Q)>> {
    items
        .iter()
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| Error::MalformedFile(format!("parameter override {s:?} must be name=value")))?;
            Ok((k.trim().to_string(), parse_q(v.trim())?))
        })
        .collect()
}

impl ExampleRecord {
    pub fn default_params(&self) -> Params {
        self.defaults.iter().map(|(k, v)| (k.to_string(), parse_q(v).expect("registry rational"))).collect()
    }

    /// Instantiates with the defaults, replaced by `overrides`.
    pub fn instantiate(&self, overrides: &[(String, Q)]) -> Result<Instance> {
        let mut p = self.default_params();
        for (k, v) in overrides {
            if !self.family.params.contains(&k.as_str()) {
                return Err(Error::MalformedFile(format!("{} has no parameter {k:?}", self.id)));
            }
            p.insert(k.clone(), v.clone());
        }
        self.family.instantiate(&p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::symmetry::symmetry_check;

    #[test]
    fn every_example_instantiates() {
        for e in examples() {
            let inst = e.instantiate(&[]).unwrap_or_else(|err| panic!("{}: {err}", e.id));
            assert_eq!(inst.mask.r(), inst.htype.r());
            if let Some(s) = &inst.symmetry {
                assert!(symmetry_check(&inst.mask, &inst.htype, s).unwrap(), "{}", e.id);
            }
        }
    }

    #[test]
    fn completed_support_sizes() {
        let sizes: Vec<(&str, usize)> = examples()
            .iter()
            .map(|e| (e.id, e.instantiate(&[]).unwrap().mask.len()))
            .collect();
        let get = |id: &str| sizes.iter().find(|(i, _)| *i == id).unwrap().1;
        assert_eq!(get("ex6.2b"), 5);
        assert_eq!(get("ex6.3a"), 4);
        assert_eq!(get("ex6.6a"), 16);
        assert_eq!(get("ex6.7a"), 24);
    }

    #[test]
    fn unknown_id_and_bad_override() {
        assert!(matches!(find("bogus"), Err(Error::UnknownId(_))));
        let e = find("ex6.2b").unwrap();
        assert!(e.instantiate(&[("z".into(), q(1, 1))]).is_err());
        let o = parse_overrides(&["t=1/2".to_string()]).unwrap();
        assert_eq!(e.instantiate(&o).unwrap().params["t"], q(1, 2));
    }
}

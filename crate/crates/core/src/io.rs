//! Mask file reading and writing.
//!
//! Files are JSON documents with rationals stored as strings, e.g.
//!
//! ```json
//! { "version": 1, "dim": 1, "multiplicity": 1, "type": [[0]],
//!   "coeffs": [ {"k": [0], "rows": [["1/4"]]}, {"k": [1], "rows": [["1/2"]]} ] }
//! ```

use crate::error::{Error, Result};
use crate::lattice::{MultiIndex, Point};
use crate::mask::{HermiteType, Mask, VectorData};
use crate::matrix::QMatrix;
use crate::rational::{fmt_q, parse_q, Q};
use crate::seq::MatSeq;
use serde_json::{json, Map, Value};
use std::collections::BTreeSet;

/// The optional `symmetry` block of a mask file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryBlock {
    pub group: String,
    pub center: Vec<Q>,
    /// When set, `coeffs` lists orbit representatives only.
    pub representatives: bool,
}

/// Everything a mask file describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskFile {
    pub mask: Mask,
    pub htype: HermiteType,
    pub symmetry: Option<SymmetryBlock>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedFile(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| malformed(format!("missing field {name:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| malformed(format!("{what} must be a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| malformed(format!("{what} must be an array")))
}

fn parse_rational_value(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        other => Err(Error::MalformedRational(other.to_string())),
    }
}

fn parse_qvec(v: &Value, len: usize, what: &str) -> Result<Vec<Q>> {
    let arr = as_array(v, what)?;
    if arr.len() != len {
        return Err(Error::DimensionMismatch(format!("{what} has length {}, expected {len}", arr.len())));
    }
    arr.iter().map(parse_rational_value).collect()
}

/// Parses a mask file.
pub fn parse_mask(text: &str) -> Result<MaskFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| malformed("top level must be an object"))?;
    if let Some(v) = obj.get("version") {
        if v.as_u64() != Some(1) {
            return Err(malformed(format!("unsupported version {v}")));
        }
    }
    let d = as_usize(field(obj, "dim")?, "dim")?;
    let r = as_usize(field(obj, "multiplicity")?, "multiplicity")?;
    if d == 0 || r == 0 {
        return Err(Error::DimensionMismatch("dim and multiplicity must be positive".into()));
    }

    let lambda = match obj.get("type") {
        None => {
            if r != 1 {
                return Err(malformed("missing field \"type\""));
            }
            vec![MultiIndex::zero(d)]
        }
        Some(t) => {
            let arr = as_array(t, "type")?;
            if arr.len() != r {
                return Err(Error::DimensionMismatch(format!(
                    "type has {} entries, multiplicity is {r}",
                    arr.len()
                )));
            }
            arr.iter()
                .map(|e| {
                    let ent = as_array(e, "type entry")?;
                    if ent.len() != d {
                        return Err(Error::DimensionMismatch(format!(
                            "type entry has length {}, dim is {d}",
                            ent.len()
                        )));
                    }
                    ent.iter()
                        .map(|x| x.as_u64().map(|y| y as u32).ok_or_else(|| malformed("type entries must be non-negative integers")))
                        .collect::<Result<Vec<u32>>>()
                        .map(MultiIndex)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let tau = match obj.get("translation") {
        None => None,
        Some(t) => {
            let arr = as_array(t, "translation")?;
            if arr.len() != r {
                return Err(Error::DimensionMismatch(format!(
                    "translation has {} entries, multiplicity is {r}",
                    arr.len()
                )));
            }
            Some(arr.iter().map(|v| parse_qvec(v, d, "translation entry")).collect::<Result<Vec<_>>>()?)
        }
    };
    let htype = HermiteType::new(lambda, tau)?;

    let mut seen: BTreeSet<Point> = BTreeSet::new();
    let mut seq = MatSeq::new(d, r, r);
    for c in as_array(field(obj, "coeffs")?, "coeffs")? {
        let c = c.as_object().ok_or_else(|| malformed("coefficient entries must be objects"))?;
        let k: Point = as_array(field(c, "k")?, "k")?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| malformed("lattice keys must be integers")))
            .collect::<Result<_>>()?;
        if k.len() != d {
            return Err(Error::DimensionMismatch(format!("key {k:?} has length {}, dim is {d}", k.len())));
        }
        if !seen.insert(k.clone()) {
            return Err(Error::DuplicateKey(k));
        }
        let rows = as_array(field(c, "rows")?, "rows")?;
        if rows.len() != r {
            return Err(Error::DimensionMismatch(format!("coefficient at {k:?} has {} rows, expected {r}", rows.len())));
        }
        let m = rows.iter().map(|row| parse_qvec(row, r, "coefficient row")).collect::<Result<Vec<_>>>()?;
        seq.insert(k, QMatrix::from_rows(m));
    }
    let mask = Mask::new(seq)?;

    let symmetry = match obj.get("symmetry") {
        None | Some(Value::Null) => None,
        Some(s) => {
            let s = s.as_object().ok_or_else(|| malformed("symmetry must be an object"))?;
            let group = field(s, "group")?
                .as_str()
                .ok_or_else(|| malformed("symmetry group must be a string"))?
                .to_string();
            if !matches!(group.as_str(), "Z2" | "D4" | "D6") {
                return Err(Error::UnsupportedSymmetry(group));
            }
            let center = match s.get("center") {
                Some(c) => parse_qvec(c, d, "symmetry center")?,
                None => vec![crate::rational::zero(); d],
            };
            let representatives = s.get("representatives").and_then(Value::as_bool).unwrap_or(false);
            Some(SymmetryBlock { group, center, representatives })
        }
    };
    Ok(MaskFile { mask, htype, symmetry })
}

/// Parses refinement data: `{"dim": d, "width": r, "level": n,
/// "values": [{"k": [..], "rows": [[..]]}]}`. Each key holds one or more
/// rows of width `r`; all keys must carry the same number of rows.
pub fn parse_data(text: &str) -> Result<VectorData> {
    let root: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| malformed("top level must be an object"))?;
    let d = as_usize(field(obj, "dim")?, "dim")?;
    let r = as_usize(field(obj, "width")?, "width")?;
    let level = match obj.get("level") {
        None => 0,
        Some(v) => as_usize(v, "level")? as u32,
    };
    let values = as_array(field(obj, "values")?, "values")?;
    let mut seq: Option<MatSeq> = None;
    for c in values {
        let c = c.as_object().ok_or_else(|| malformed("data entries must be objects"))?;
        let k: Point = as_array(field(c, "k")?, "k")?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| malformed("lattice keys must be integers")))
            .collect::<Result<_>>()?;
        if k.len() != d {
            return Err(Error::DimensionMismatch(format!("key {k:?} has length {}, dim is {d}", k.len())));
        }
        let rows = as_array(field(c, "rows")?, "rows")?;
        let m = rows.iter().map(|row| parse_qvec(row, r, "data row")).collect::<Result<Vec<_>>>()?;
        let s = seq.get_or_insert_with(|| MatSeq::new(d, m.len(), r));
        if m.len() != s.rows() {
            return Err(Error::DimensionMismatch(format!("data at {k:?} has {} rows, expected {}", m.len(), s.rows())));
        }
        if s.get(&k).is_some() {
            return Err(Error::DuplicateKey(k));
        }
        s.insert(k, QMatrix::from_rows(m));
    }
    Ok(VectorData::new(level, seq.unwrap_or_else(|| MatSeq::new(d, 1, r))))
}

fn qrow(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_q(x))).collect())
}

/// JSON value for a coefficient map, keys in lexicographic order.
pub fn coeffs_json(seq: &MatSeq) -> Value {
    Value::Array(
        seq.iter()
            .map(|(k, m)| json!({ "k": k, "rows": m.to_rows().iter().map(|r| qrow(r)).collect::<Vec<_>>() }))
            .collect(),
    )
}

/// JSON document for a mask, type and optional symmetry block.
pub fn mask_json(mask: &Mask, htype: &HermiteType, symmetry: Option<&SymmetryBlock>) -> Value {
    let mut obj = Map::new();
    obj.insert("version".into(), json!(1));
    obj.insert("dim".into(), json!(mask.dim()));
    obj.insert("multiplicity".into(), json!(mask.r()));
    obj.insert("type".into(), Value::Array(htype.lambda.iter().map(|m| json!(m.0)).collect()));
    if !htype.has_zero_translations() {
        obj.insert("translation".into(), Value::Array(htype.tau.iter().map(|t| qrow(t)).collect()));
    }
    obj.insert("coeffs".into(), coeffs_json(mask.seq()));
    if let Some(s) = symmetry {
        obj.insert(
            "symmetry".into(),
            json!({ "group": s.group, "center": qrow(&s.center), "representatives": s.representatives }),
        );
    }
    Value::Object(obj)
}

/// Serializes to pretty-printed JSON with a trailing newline.
pub fn serialize_mask(mask: &Mask, htype: &HermiteType) -> String {
    let mut s = serde_json::to_string_pretty(&mask_json(mask, htype, None)).expect("json");
    s.push('\n');
    s
}

pub fn serialize_mask_file(f: &MaskFile) -> String {
    let mut s = serde_json::to_string_pretty(&mask_json(&f.mask, &f.htype, f.symmetry.as_ref())).expect("json");
    s.push('\n');
    s
}

//! The `ldm-1` JSON file format for labeled multinets.
//!
//! Serialization is canonical: objects carry sorted keys, points are
//! written in normalized form, and tables use 1-based indices, so
//! write → read → write round trips byte-identically.

use crate::field::{Field, FieldElement, FieldKind};
use crate::geom::{GeomError, Point};
use crate::loops::{LoopError, MultTable};
use crate::multinet::{LabeledMultinet, MultinetError};
use serde_json::{json, Value};
use thiserror::Error;

pub const FORMAT: &str = "ldm-1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown format marker {0:?}")]
    UnknownFormat(String),
    #[error("malformed ldm file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Multinet(#[from] MultinetError),
}

fn field_to_json(f: &Field) -> Value {
    match f.kind() {
        FieldKind::Prime { modulus } => json!({"kind": "prime", "modulus": modulus}),
        FieldKind::Cyclotomic { conductor } => {
            json!({"kind": "cyclotomic", "conductor": conductor})
        }
    }
}

fn field_from_json(v: &Value) -> Result<Field, IoError> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| IoError::Malformed("field.kind missing".into()))?;
    match kind {
        "prime" => {
            let p = v
                .get("modulus")
                .and_then(Value::as_u64)
                .ok_or_else(|| IoError::Malformed("field.modulus missing".into()))?;
            Ok(Field::prime(p)?)
        }
        "cyclotomic" => {
            let n = v
                .get("conductor")
                .and_then(Value::as_u64)
                .ok_or_else(|| IoError::Malformed("field.conductor missing".into()))?;
            Ok(Field::cyclotomic(n))
        }
        other => Err(IoError::Malformed(format!("unknown field kind {other:?}"))),
    }
}

fn point_to_json(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(FieldElement::to_json).collect())
}

fn point_from_json(f: &Field, v: &Value) -> Result<Point, IoError> {
    let arr = v
        .as_array()
        .ok_or_else(|| IoError::Malformed("point is not an array".into()))?;
    let coords = arr
        .iter()
        .map(|c| FieldElement::from_json(f, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Point::new(coords)?)
}

pub fn multinet_to_json(m: &LabeledMultinet) -> Value {
    let labels = match m.labels() {
        Some(t) => json!({
            "names": t.names(),
            "table": t
                .rows()
                .iter()
                .map(|r| r.iter().map(|&x| x + 1).collect::<Vec<usize>>())
                .collect::<Vec<_>>(),
        }),
        None => Value::Null,
    };
    json!({
        "format": FORMAT,
        "field": field_to_json(m.field()),
        "order": m.order(),
        "components": m
            .components()
            .iter()
            .map(|c| Value::Array(c.iter().map(point_to_json).collect()))
            .collect::<Vec<_>>(),
        "labels": labels,
        "provenance": m.provenance(),
    })
}

pub fn write_multinet(m: &LabeledMultinet) -> String {
    let mut s = serde_json::to_string_pretty(&multinet_to_json(m)).expect("serializable");
    s.push('\n');
    s
}

pub fn read_multinet(text: &str) -> Result<LabeledMultinet, IoError> {
    let v: Value = serde_json::from_str(text)?;
    let format = v
        .get("format")
        .and_then(Value::as_str)
        .ok_or_else(|| IoError::Malformed("format marker missing".into()))?;
    if format != FORMAT {
        return Err(IoError::UnknownFormat(format.to_string()));
    }
    let field = field_from_json(
        v.get("field")
            .ok_or_else(|| IoError::Malformed("field missing".into()))?,
    )?;
    let order = v
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| IoError::Malformed("order missing".into()))? as usize;
    let comps_json = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Malformed("components missing".into()))?;
    if comps_json.len() != 3 {
        return Err(IoError::Malformed("expected three components".into()));
    }
    let mut comps: Vec<Vec<Point>> = Vec::with_capacity(3);
    for cj in comps_json {
        let pts = cj
            .as_array()
            .ok_or_else(|| IoError::Malformed("component is not an array".into()))?
            .iter()
            .map(|p| point_from_json(&field, p))
            .collect::<Result<Vec<_>, _>>()?;
        if pts.len() != order {
            return Err(IoError::Malformed("component size != order".into()));
        }
        comps.push(pts);
    }
    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(lj) => {
            let names: Vec<String> = lj
                .get("names")
                .and_then(Value::as_array)
                .ok_or_else(|| IoError::Malformed("labels.names missing".into()))?
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| IoError::Malformed("label name not a string".into()))
                })
                .collect::<Result<_, _>>()?;
            let table: Vec<Vec<usize>> = lj
                .get("table")
                .and_then(Value::as_array)
                .ok_or_else(|| IoError::Malformed("labels.table missing".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| IoError::Malformed("table row not an array".into()))?
                        .iter()
                        .map(|x| {
                            let i = x
                                .as_u64()
                                .ok_or_else(|| IoError::Malformed("table entry".into()))?;
                            if i == 0 {
                                return Err(IoError::Malformed("table entry is 0".into()));
                            }
                            Ok(i as usize - 1)
                        })
                        .collect::<Result<Vec<usize>, IoError>>()
                })
                .collect::<Result<_, _>>()?;
            Some(MultTable::validate(names, table)?)
        }
    };
    let provenance = v.get("provenance").cloned().unwrap_or(Value::Null);
    Ok(LabeledMultinet::new(
        field,
        labels,
        [comps[0].clone(), comps[1].clone(), comps[2].clone()],
        provenance,
    )?)
}

//! The JSON system document.
//!
//! ```json
//! { "kind": "baranski", "columns": ["1/5", "4/5"], "rows": [0.25, 0.25, 0.25, 0.25],
//!   "cells": [[0, 0], [0, 2], [1, 1], [1, 3]] }
//! ```
//!
//! Numbers may be JSON literals (kept as `f64`) or strings holding an exact
//! rational `"p/q"` or decimal.

use serde_json::{json, Map, Value};

use super::{
    BaranskiCarpet, Carpet, LgCarpet, LgCell, LgColumn, ModelError, Scalar, SimilarityIfs1D,
    SimilarityMap1D,
};

/// Any system the tools accept.
#[derive(Clone, Debug, PartialEq)]
pub enum System {
    SelfSimilar1D(SimilarityIfs1D),
    Carpet(Carpet),
}

impl System {
    pub fn kind(&self) -> &'static str {
        match self {
            System::SelfSimilar1D(_) => "selfsimilar1d",
            System::Carpet(Carpet::Baranski(_)) => "baranski",
            System::Carpet(Carpet::LalleyGatzouras(_)) => "lalley-gatzouras",
        }
    }
}

pub fn parse_system(text: &str) -> Result<System, ModelError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ModelError::Syntax(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| ModelError::Syntax("top level must be an object".into()))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| ModelError::Syntax("missing string field \"kind\"".into()))?;
    match kind {
        "baranski" => parse_baranski(obj).map(|b| System::Carpet(Carpet::Baranski(b))),
        "lalley-gatzouras" => parse_lg(obj).map(|l| System::Carpet(Carpet::LalleyGatzouras(l))),
        "selfsimilar1d" => parse_selfsimilar(obj).map(System::SelfSimilar1D),
        other => Err(ModelError::Syntax(format!("unknown kind {other:?}"))),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str, path: &str) -> Result<&'a Value, ModelError> {
    obj.get(name)
        .ok_or_else(|| ModelError::Syntax(format!("missing field {}", join(path, name))))
}

fn join(path: &str, name: &str) -> String {
    if path.is_empty() {
        name.to_string()
    } else {
        format!("{path}.{name}")
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ModelError> {
    v.as_array()
        .ok_or_else(|| ModelError::Syntax(format!("{path} must be an array")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ModelError> {
    v.as_object()
        .ok_or_else(|| ModelError::Syntax(format!("{path} must be an object")))
}

fn number(v: &Value, path: &str) -> Result<Scalar, ModelError> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .map(Scalar::approx)
            .ok_or_else(|| ModelError::Syntax(format!("{path}: unrepresentable number"))),
        Value::String(s) => s
            .parse()
            .map_err(|e| ModelError::Syntax(format!("{path}: {e}"))),
        _ => Err(ModelError::Syntax(format!("{path} must be a number or rational string"))),
    }
}

fn numbers(v: &Value, path: &str) -> Result<Vec<Scalar>, ModelError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, x)| number(x, &format!("{path}[{k}]")))
        .collect()
}

fn index(v: &Value, path: &str) -> Result<usize, ModelError> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| ModelError::Syntax(format!("{path} must be a non-negative integer")))
}

fn parse_baranski(obj: &Map<String, Value>) -> Result<BaranskiCarpet, ModelError> {
    let columns = numbers(field(obj, "columns", "")?, "columns")?;
    let rows = numbers(field(obj, "rows", "")?, "rows")?;
    let cells = array(field(obj, "cells", "")?, "cells")?
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let path = format!("cells[{k}]");
            let pair = array(c, &path)?;
            if pair.len() != 2 {
                return Err(ModelError::Syntax(format!("{path} must be [column, row]")));
            }
            Ok((index(&pair[0], &path)?, index(&pair[1], &path)?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BaranskiCarpet::new(columns, rows, cells)
}

fn parse_lg(obj: &Map<String, Value>) -> Result<LgCarpet, ModelError> {
    let columns = array(field(obj, "columns", "")?, "columns")?
        .iter()
        .enumerate()
        .map(|(ci, col)| {
            let path = format!("columns[{ci}]");
            let col = object(col, &path)?;
            let width = number(field(col, "width", &path)?, &join(&path, "width"))?;
            let cells = array(field(col, "cells", &path)?, &join(&path, "cells"))?
                .iter()
                .enumerate()
                .map(|(k, cell)| {
                    let cpath = format!("{path}.cells[{k}]");
                    let cell = object(cell, &cpath)?;
                    Ok(LgCell {
                        height: number(field(cell, "height", &cpath)?, &join(&cpath, "height"))?,
                        offset: number(field(cell, "offset", &cpath)?, &join(&cpath, "offset"))?,
                    })
                })
                .collect::<Result<Vec<_>, ModelError>>()?;
            Ok(LgColumn { width, cells })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    LgCarpet::new(columns)
}

fn parse_selfsimilar(obj: &Map<String, Value>) -> Result<SimilarityIfs1D, ModelError> {
    let maps = array(field(obj, "maps", "")?, "maps")?
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let path = format!("maps[{k}]");
            let m = object(m, &path)?;
            let ratio = number(field(m, "ratio", &path)?, &join(&path, "ratio"))?;
            let translate = number(field(m, "translate", &path)?, &join(&path, "translate"))?;
            SimilarityMap1D::validated(ratio, translate, &path)
        })
        .collect::<Result<Vec<_>, _>>()?;
    SimilarityIfs1D::new(maps)
}

fn scalar_json(s: &Scalar) -> Value {
    if s.is_exact() {
        Value::String(s.to_string())
    } else {
        json!(s.value())
    }
}

/// Serializes a system back into the document format; `parse_system` inverts it.
pub fn render_system(system: &System) -> String {
    let doc = match system {
        System::SelfSimilar1D(ifs) => json!({
            "kind": system.kind(),
            "maps": ifs.maps().iter().map(|m| json!({
                "ratio": scalar_json(m.ratio()),
                "translate": scalar_json(m.translate()),
            })).collect::<Vec<_>>(),
        }),
        System::Carpet(Carpet::Baranski(b)) => json!({
            "kind": system.kind(),
            "columns": b.columns().iter().map(scalar_json).collect::<Vec<_>>(),
            "rows": b.rows().iter().map(scalar_json).collect::<Vec<_>>(),
            "cells": b.cells().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        }),
        System::Carpet(Carpet::LalleyGatzouras(l)) => json!({
            "kind": system.kind(),
            "columns": l.columns().iter().map(|c| json!({
                "width": scalar_json(&c.width),
                "cells": c.cells.iter().map(|cell| json!({
                    "height": scalar_json(&cell.height),
                    "offset": scalar_json(&cell.offset),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("json values always serialize");
    text.push('\n');
    text
}

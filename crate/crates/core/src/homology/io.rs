//! JSON formats for complexes and cubical groups.
//!
//! Complex: `{"degrees": [lo, hi], "ranks": {"n": r, …}, "differentials":
//! {"n": [[…], …], …}}` with `d_n` of shape `rank(n-1) × rank(n)`.
//! Cubical group: `{"ranks": [r₀, …], "faces": [{"level", "i", "j",
//! "matrix"}, …], "degeneracies": [{"level", "i", "matrix"}, …]}`.
//! Integers that do not fit in 64 bits are written as decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::complex::ChainComplex;
use super::cubical::CubicalGroup;
use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

fn parse_err<T>(field: impl Into<String>, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { field: field.into(), message: message.into() })
}

/// Parses JSON text, reporting syntax errors by line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).or_else(|e| {
        parse_err(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })
}

fn int_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn int_from_json(v: &Value, field: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(x) => Ok(BigInt::from(x)),
            None => parse_err(field, format!("{n} is not an integer")),
        },
        Value::String(s) => s
            .parse()
            .or_else(|_| parse_err(field, format!("{s:?} is not an integer"))),
        other => parse_err(field, format!("expected an integer, found {other}")),
    }
}

fn usize_from_json(v: &Value, field: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .map_or_else(|| parse_err(field, format!("expected a nonnegative integer, found {v}")), Ok)
}

fn i64_from_json(v: &Value, field: &str) -> Result<i64> {
    v.as_i64().map_or_else(|| parse_err(field, format!("expected an integer, found {v}")), Ok)
}

fn get<'a>(obj: &'a Value, key: &str, field: &str) -> Result<&'a Value> {
    match obj.get(key) {
        Some(v) => Ok(v),
        None => parse_err(field, format!("missing key {key:?}")),
    }
}

pub fn matrix_to_json(m: &IntegerMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int_to_json).collect()))
            .collect(),
    )
}

/// Reads a matrix of the expected shape.
pub fn matrix_from_json(v: &Value, rows: usize, cols: usize, field: &str) -> Result<IntegerMatrix> {
    let Some(list) = v.as_array() else {
        return parse_err(field, "expected a list of rows");
    };
    if list.len() != rows {
        return parse_err(field, format!("expected {rows} rows, found {}", list.len()));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in list.iter().enumerate() {
        let f = format!("{field}[{i}]");
        let Some(entries) = row.as_array() else {
            return parse_err(f, "expected a list of integers");
        };
        if entries.len() != cols {
            return parse_err(f, format!("expected {cols} entries, found {}", entries.len()));
        }
        out.push(
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| int_from_json(x, &format!("{f}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(IntegerMatrix::from_big_rows(cols, out))
}

pub fn complex_to_json(c: &ChainComplex) -> Value {
    let ranks: Map<String, Value> =
        (c.lo()..=c.hi()).map(|n| (n.to_string(), json!(c.rank(n)))).collect();
    let diffs: Map<String, Value> = (c.lo() + 1..=c.hi())
        .map(|n| (n.to_string(), matrix_to_json(&c.d(n))))
        .collect();
    json!({"degrees": [c.lo(), c.hi()], "ranks": ranks, "differentials": diffs})
}

pub fn complex_from_json(v: &Value) -> Result<ChainComplex> {
    let degrees = get(v, "degrees", "degrees")?;
    let pair = degrees.as_array().filter(|a| a.len() == 2);
    let Some(pair) = pair else {
        return parse_err("degrees", "expected [lo, hi]");
    };
    let lo = i64_from_json(&pair[0], "degrees[0]")?;
    let hi = i64_from_json(&pair[1], "degrees[1]")?;
    if hi < lo - 1 {
        return parse_err("degrees", format!("hi = {hi} is below lo - 1 = {}", lo - 1));
    }
    let ranks_obj = get(v, "ranks", "ranks")?;
    let Some(ranks_map) = ranks_obj.as_object() else {
        return parse_err("ranks", "expected an object keyed by degree");
    };
    let mut ranks = Vec::new();
    for n in lo..=hi {
        let f = format!("ranks.{n}");
        match ranks_map.get(&n.to_string()) {
            Some(r) => ranks.push(usize_from_json(r, &f)?),
            None => return parse_err(f, "missing rank"),
        }
    }
    if let Some(extra) = ranks_map.keys().find(|k| k.parse::<i64>().map_or(true, |n| n < lo || n > hi)) {
        return parse_err(format!("ranks.{extra}"), "degree outside [lo, hi]");
    }
    let diffs_obj = get(v, "differentials", "differentials")?;
    let Some(diffs_map) = diffs_obj.as_object() else {
        return parse_err("differentials", "expected an object keyed by degree");
    };
    let rank = |n: i64| if n < lo || n > hi { 0 } else { ranks[(n - lo) as usize] };
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let f = format!("differentials.{n}");
        match diffs_map.get(&n.to_string()) {
            Some(m) => diffs.push(matrix_from_json(m, rank(n - 1), rank(n), &f)?),
            None => return parse_err(f, "missing differential"),
        }
    }
    if let Some(extra) =
        diffs_map.keys().find(|k| k.parse::<i64>().map_or(true, |n| n <= lo || n > hi))
    {
        return parse_err(format!("differentials.{extra}"), "degree outside (lo, hi]");
    }
    ChainComplex::new(lo, ranks, diffs)
}

pub fn cubical_to_json(c: &CubicalGroup) -> Value {
    let faces: Vec<Value> = c
        .faces()
        .iter()
        .map(|(&(n, i, j), m)| json!({"level": n, "i": i, "j": j, "matrix": matrix_to_json(m)}))
        .collect();
    let degs: Vec<Value> = c
        .degeneracies()
        .iter()
        .map(|(&(n, i), m)| json!({"level": n, "i": i, "matrix": matrix_to_json(m)}))
        .collect();
    json!({"ranks": c.ranks(), "faces": faces, "degeneracies": degs})
}

pub fn cubical_from_json(v: &Value) -> Result<CubicalGroup> {
    let ranks_v = get(v, "ranks", "ranks")?;
    let Some(list) = ranks_v.as_array() else {
        return parse_err("ranks", "expected a list");
    };
    let ranks: Vec<usize> = list
        .iter()
        .enumerate()
        .map(|(k, r)| usize_from_json(r, &format!("ranks[{k}]")))
        .collect::<Result<_>>()?;
    let rank = |n: usize, f: &str| match ranks.get(n) {
        Some(&r) => Ok(r),
        None => parse_err(f, format!("level {n} is out of range")),
    };
    let mut faces = BTreeMap::new();
    let Some(face_list) = get(v, "faces", "faces")?.as_array() else {
        return parse_err("faces", "expected a list");
    };
    for (k, entry) in face_list.iter().enumerate() {
        let f = format!("faces[{k}]");
        let n = usize_from_json(get(entry, "level", &f)?, &format!("{f}.level"))?;
        let i = usize_from_json(get(entry, "i", &f)?, &format!("{f}.i"))?;
        let j = usize_from_json(get(entry, "j", &f)?, &format!("{f}.j"))?;
        if n == 0 || i == 0 || i > n || j > 1 {
            return parse_err(&f, format!("no face ({n}, {i}, {j})"));
        }
        let m = matrix_from_json(get(entry, "matrix", &f)?, rank(n - 1, &f)?, rank(n, &f)?, &format!("{f}.matrix"))?;
        if faces.insert((n, i, j), m).is_some() {
            return parse_err(f, "duplicate face");
        }
    }
    let mut degs = BTreeMap::new();
    let Some(deg_list) = get(v, "degeneracies", "degeneracies")?.as_array() else {
        return parse_err("degeneracies", "expected a list");
    };
    for (k, entry) in deg_list.iter().enumerate() {
        let f = format!("degeneracies[{k}]");
        let n = usize_from_json(get(entry, "level", &f)?, &format!("{f}.level"))?;
        let i = usize_from_json(get(entry, "i", &f)?, &format!("{f}.i"))?;
        if i == 0 || i > n + 1 {
            return parse_err(&f, format!("no degeneracy ({n}, {i})"));
        }
        let m = matrix_from_json(get(entry, "matrix", &f)?, rank(n + 1, &f)?, rank(n, &f)?, &format!("{f}.matrix"))?;
        if degs.insert((n, i), m).is_some() {
            return parse_err(f, "duplicate degeneracy");
        }
    }
    CubicalGroup::new(ranks, faces, degs)
}

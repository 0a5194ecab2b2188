//! JSON input parsing. Index sets are 1-based on the wire.

use crate::CliError;
use limitfiber::building::LatticeClass;
use limitfiber::matroid::{CentralWitness, Matroid, MatroidDecomposition, PointConfiguration};
use limitfiber::membrane::Arrangement;
use limitfiber::scalar::{BaseField, ScalarK, VectorK};
use num_rational::BigRational;
use serde_json::Value;
use std::str::FromStr;

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn field_from_str(s: &str) -> Result<BaseField, String> {
    match s {
        "Q" | "q" => Ok(BaseField::Rationals),
        _ => {
            let p = s
                .strip_prefix("Fp:")
                .or_else(|| s.strip_prefix("F"))
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| format!("expected Q or Fp:<p>, got `{s}`"))?;
            BaseField::prime(p).ok_or_else(|| format!("{p} is not prime"))
        }
    }
}

pub fn field(v: &Value) -> Result<BaseField, CliError> {
    match v {
        Value::String(s) => field_from_str(s).map_err(parse_err),
        Value::Object(m) => match m.get("kind").and_then(Value::as_str) {
            Some("Q") => Ok(BaseField::Rationals),
            Some("Fp") => {
                let p = m.get("p").and_then(Value::as_u64).ok_or_else(|| parse_err("Fp needs an integer `p`"))?;
                BaseField::prime(p).ok_or_else(|| parse_err(format!("{p} is not prime")))
            }
            _ => Err(parse_err("base_field.kind must be Q or Fp")),
        },
        _ => Err(parse_err("bad base_field")),
    }
}

fn text(v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(parse_err(format!("expected a scalar, got {v}"))),
    }
}

pub fn scalar(v: &Value) -> Result<ScalarK, CliError> {
    text(v)?.parse::<ScalarK>().map_err(|e| parse_err(e.to_string()))
}

pub fn rational(v: &Value) -> Result<BigRational, CliError> {
    let t = text(v)?;
    BigRational::from_str(t.trim()).map_err(|_| parse_err(format!("cannot parse rational `{t}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| parse_err(format!("`{what}` must be an array")))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| parse_err(format!("missing `{key}`")))
}

pub fn usize_of(v: &Value, key: &str) -> Result<usize, CliError> {
    get(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("`{key}` must be a nonnegative integer")))
}

pub fn vector(v: &Value) -> Result<VectorK, CliError> {
    array(v, "vector")?.iter().map(scalar).collect()
}

pub fn rational_rows(v: &Value) -> Result<Vec<Vec<BigRational>>, CliError> {
    array(v, "covectors")?.iter().map(|r| array(r, "covector")?.iter().map(rational).collect()).collect()
}

/// 1-based indices below n, returned 0-based.
pub fn index_list(v: &Value, n: usize) -> Result<Vec<usize>, CliError> {
    array(v, "index set")?
        .iter()
        .map(|x| match x.as_u64() {
            Some(i) if i >= 1 && (i as usize) <= n => Ok(i as usize - 1),
            _ => Err(parse_err(format!("index {x} is not in 1..={n}"))),
        })
        .collect()
}

pub fn index_sets(v: &Value, n: usize) -> Result<Vec<Vec<usize>>, CliError> {
    array(v, "sets")?.iter().map(|s| index_list(s, n)).collect()
}

pub fn arrangement(v: &Value, over: Option<BaseField>) -> Result<Arrangement, CliError> {
    let r = usize_of(v, "r")?;
    let vectors: Vec<VectorK> = array(get(v, "vectors")?, "vectors")?.iter().map(vector).collect::<Result<_, _>>()?;
    if let Some(n) = v.get("n") {
        if n.as_u64() != Some(vectors.len() as u64) {
            return Err(parse_err("`n` does not match the number of vectors"));
        }
    }
    if let Some((i, _)) = vectors.iter().enumerate().find(|(_, x)| x.len() != r) {
        return Err(parse_err(format!("vector {} does not have {r} entries", i + 1)));
    }
    let k = match (over, v.get("base_field")) {
        (Some(k), _) => k,
        (None, Some(b)) => field(b)?,
        (None, None) => BaseField::Rationals,
    };
    Ok(Arrangement::new(r, vectors, k)?)
}

/// A class written as its r x r canonical matrix, rows first; the columns
/// generate the lattice.
pub fn class(v: &Value, r: usize) -> Result<LatticeClass, CliError> {
    let rows: Vec<VectorK> = array(v, "class")?.iter().map(vector).collect::<Result<_, _>>()?;
    if rows.len() != r || rows.iter().any(|x| x.len() != r) {
        return Err(parse_err(format!("a class must be an {r} x {r} matrix")));
    }
    let cols: Vec<VectorK> = (0..r).map(|j| rows.iter().map(|row| row[j].clone()).collect()).collect();
    Ok(LatticeClass::from_generators(r, &cols)?)
}

pub fn classes(v: &Value, r: usize) -> Result<Vec<LatticeClass>, CliError> {
    array(v, "classes")?.iter().map(|c| class(c, r)).collect()
}

pub fn witness(v: &Value, over: Option<BaseField>) -> Result<CentralWitness, CliError> {
    let r = usize_of(v, "r")?;
    let covectors = rational_rows(get(v, "covectors")?)?;
    let n = covectors.len();
    let k = match over {
        Some(k) => k,
        None => v.get("field").map(field).transpose()?.unwrap_or(BaseField::Rationals),
    };
    Ok(CentralWitness { field: k, r, covectors, sets: index_sets(get(v, "sets")?, n)? })
}

pub fn points(v: &Value, over: Option<BaseField>) -> Result<PointConfiguration, CliError> {
    let k = match over {
        Some(k) => k,
        None => v.get("field").map(field).transpose()?.unwrap_or(BaseField::Rationals),
    };
    let cov = rational_rows(get(v, "covectors")?)?;
    if cov.iter().flatten().any(|x| k.reduce(x).is_none()) {
        return Err(parse_err(format!("covector entries must reduce into {k}")));
    }
    Ok(PointConfiguration::new(k, cov))
}

/// {"r","n","polytopes":[{"vertices":[[0/1..]]}]}, {"r","n","central":[sets]}
/// or {"r","n","trivial":true}.
pub fn decomposition(v: &Value) -> Result<MatroidDecomposition, CliError> {
    let r = usize_of(v, "r")?;
    let n = usize_of(v, "n")?;
    if n == 0 || n > 63 || r == 0 || r > n {
        return Err(parse_err("need 1 <= r <= n <= 63"));
    }
    if v.get("trivial").and_then(Value::as_bool) == Some(true) {
        return Ok(MatroidDecomposition::trivial(r, n));
    }
    if let Some(sets) = v.get("central") {
        let sets = index_sets(sets, n)?;
        return Ok(limitfiber::matroid::central_decomposition(&sets, r, n)?);
    }
    let mut ms = Vec::new();
    for p in array(get(v, "polytopes")?, "polytopes")? {
        let mut bases = Vec::new();
        for vert in array(get(p, "vertices")?, "vertices")? {
            let xs = array(vert, "vertex")?;
            if xs.len() != n {
                return Err(parse_err(format!("vertex {vert} does not have {n} entries")));
            }
            let mut b = 0u64;
            for (i, x) in xs.iter().enumerate() {
                match x.as_u64() {
                    Some(0) => {}
                    Some(1) => b |= 1 << i,
                    _ => return Err(parse_err(format!("vertex {vert} is not 0/1"))),
                }
            }
            if b.count_ones() as usize != r {
                return Err(parse_err(format!("vertex {vert} does not have {r} ones")));
            }
            bases.push(b);
        }
        ms.push(Matroid::from_bases(n, bases)?);
    }
    Ok(MatroidDecomposition::new(r, n, ms))
}

//! JSON encodings of points, estimates and plans.
//!
//! Matrices are `{"n": 3, "rows": [[[re, im], …], …]}` (row-major), complex
//! vectors are `[[re, im], …]` and real vectors are plain arrays. Floats are
//! written with 17 significant digits so reruns diff cleanly.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, ComplexVector, RealVector};
use crate::numtopo::DegreeEstimate;
use crate::su3::Realization;

struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize compactly with every float at 17 significant digits.
pub fn to_json_string(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigFormatter);
    value
        .serialize(&mut ser)
        .expect("serializing a Value into memory");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .into_iter()
        .map(|r| Value::Array(r.into_iter().map(complex_json).collect()))
        .collect();
    json!({ "n": m.n(), "rows": rows })
}

pub fn complex_vector_to_json(v: &ComplexVector) -> Value {
    Value::Array(v.iter().map(|&z| complex_json(z)).collect())
}

pub fn real_vector_to_json(v: &RealVector) -> Value {
    Value::Array(v.iter().map(|&x| json!(x)).collect())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn number(v: &Value, loc: &str) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| Error::parse(loc, format!("expected a number, got {v}")))?;
    if !x.is_finite() {
        return Err(Error::parse(loc, "non-finite number"));
    }
    Ok(x)
}

fn complex(v: &Value, loc: &str) -> Result<Complex64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex64::new(
            number(re, &format!("{loc}[0]"))?,
            number(im, &format!("{loc}[1]"))?,
        )),
        _ => Err(Error::parse(loc, "expected a [re, im] pair")),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<ComplexMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::parse("$", "expected an object with \"n\" and \"rows\""))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("$.n", "expected a positive integer"))? as usize;
    let rows = obj
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("$.rows", "expected an array of rows"))?;
    if n == 0 || rows.len() != n {
        return Err(Error::parse(
            "$.rows",
            format!("expected {n} rows, got {}", rows.len()),
        ));
    }
    let mut parsed = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let loc = format!("$.rows[{i}]");
        let entries = row
            .as_array()
            .ok_or_else(|| Error::parse(&loc, "expected an array"))?;
        if entries.len() != n {
            return Err(Error::parse(
                &loc,
                format!("expected {n} entries, got {}", entries.len()),
            ));
        }
        parsed.push(
            entries
                .iter()
                .enumerate()
                .map(|(j, e)| complex(e, &format!("{loc}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    ComplexMatrix::from_rows(&parsed)
}

pub fn complex_vector_from_json(v: &Value) -> Result<ComplexVector> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::parse("$", "expected an array of [re, im] pairs"))?;
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, e)| complex(e, &format!("$[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexVector::from_vec(entries))
}

pub fn real_vector_from_json(v: &Value) -> Result<RealVector> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::parse("$", "expected an array of numbers"))?;
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, e)| number(e, &format!("$[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(RealVector::from_vec(entries))
}

pub fn degree_estimate_to_json(e: &DegreeEstimate) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("mean".into(), json!(e.mean));
    m.insert("stderr".into(), json!(e.standard_error));
    m.insert("samples".into(), json!(e.samples));
    m.insert("rounded".into(), json!(e.rounded));
    m.insert("verdict".into(), json!(e.verdict.as_str()));
    m.insert("excluded_fraction".into(), json!(e.excluded_fraction));
    m
}

pub fn realization_to_json(d: i64, r: &Realization) -> Value {
    match r {
        Realization::Plan(p) => json!({
            "degree": d,
            "status": "realizable",
            "m": p.m,
            "ell": p.ell,
            "psi_k": p.psi_k(),
            "power": p.power(),
            "composition": format!("rho_{} o psi_{}", p.power(), p.psi_k()),
        }),
        Realization::NotRealizable { two_adic_valuation } => json!({
            "degree": d,
            "status": "not-realizable",
            "two_adic_valuation": two_adic_valuation,
        }),
        Realization::ZeroCaveat => json!({
            "degree": d,
            "status": "zero-caveat",
            "note": "degree 0 is realized by constant maps",
        }),
    }
}

//! The matrix file format and the JSON encoding.
//!
//! ```text
//! # comment
//! field 5            # or: field Q
//! matrix A 3 3
//! 0 1 3
//! 3 2 4
//! 0 0 4
//! ```
//!
//! In JSON, scalars are strings (`"3"`, `"-2/5"`), polynomials are ascending
//! coefficient arrays and matrices are arrays of rows.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::MatrixK;
use crate::poly::Polynomial;
use crate::poly_matrix::MatrixPoly;

/// A parsed input file: one field and uniquely named matrices in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub field: FieldSpec,
    pub matrices: Vec<(String, MatrixK)>,
}

impl InputDocument {
    pub fn get(&self, name: &str) -> Option<&MatrixK> {
        self.matrices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.matrices.iter().map(|(n, _)| n.as_str())
    }

    /// Renders back to the text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("field {}\n", self.field);
        for (name, m) in &self.matrices {
            out.push_str(&format!("matrix {name} {} {}\n", m.rows(), m.cols()));
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(Scalar::to_text).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_dimension(token: &str, line: usize) -> Result<usize> {
    let d: usize = token
        .parse()
        .map_err(|_| parse_error(line, format!("`{token}` is not a dimension")))?;
    if d == 0 {
        return Err(parse_error(line, "matrix dimensions must be positive"));
    }
    Ok(d)
}

/// Parses the matrix file format.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "expected `field <p>` or `field Q`"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let field = match tokens.as_slice() {
        ["field", "Q" | "q"] => FieldSpec::rationals(),
        ["field", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| parse_error(line_no, format!("`{p}` is not a modulus")))?;
            FieldSpec::prime(p)?
        }
        _ => return Err(parse_error(line_no, "expected `field <p>` or `field Q`")),
    };

    let mut matrices: Vec<(String, MatrixK)> = Vec::new();
    while let Some((line_no, header)) = lines.next() {
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let ["matrix", name, rows, cols] = tokens.as_slice() else {
            return Err(parse_error(
                line_no,
                "expected `matrix <name> <rows> <cols>`",
            ));
        };
        if matrices.iter().any(|(n, _)| n == name) {
            return Err(parse_error(
                line_no,
                format!("duplicate matrix name `{name}`"),
            ));
        }
        let rows = parse_dimension(rows, line_no)?;
        let cols = parse_dimension(cols, line_no)?;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let Some((row_line, row)) = lines.next() else {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {name}: expected {rows} rows, found {r}"
                )));
            };
            let entries: Vec<&str> = row.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "line {row_line}: matrix {name} expects {cols} entries per row, found {}",
                    entries.len()
                )));
            }
            for e in entries {
                data.push(
                    field
                        .parse_scalar(e)
                        .map_err(|m| parse_error(row_line, m))?,
                );
            }
        }
        matrices.push((name.to_string(), MatrixK::new(field, rows, cols, data)?));
    }
    if matrices.is_empty() {
        return Err(parse_error(line_no, "no matrices declared"));
    }
    Ok(InputDocument { field, matrices })
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_text())
}

pub fn poly_to_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

pub fn matrix_to_json(m: &MatrixK) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

pub fn poly_matrix_to_json(m: &MatrixPoly) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(poly_to_json).collect()))
            .collect(),
    )
}

fn json_error(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        message: message.into(),
    }
}

pub fn scalar_from_json(v: &Value, spec: FieldSpec) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(json_error(format!("expected a scalar, found {v}"))),
    };
    spec.parse_scalar(&text).map_err(json_error)
}

pub fn poly_from_json(v: &Value, spec: FieldSpec) -> Result<Polynomial> {
    let items = v
        .as_array()
        .ok_or_else(|| json_error("expected a coefficient array"))?;
    let coeffs = items
        .iter()
        .map(|c| scalar_from_json(c, spec))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::new(spec, coeffs)
}

fn rows_of(v: &Value) -> Result<Vec<&Vec<Value>>> {
    v.as_array()
        .ok_or_else(|| json_error("expected an array of rows"))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| json_error("expected a row array"))
        })
        .collect()
}

pub fn matrix_from_json(v: &Value, spec: FieldSpec) -> Result<MatrixK> {
    let rows = rows_of(v)?
        .into_iter()
        .map(|r| r.iter().map(|c| scalar_from_json(c, spec)).collect())
        .collect::<Result<Vec<Vec<Scalar>>>>()?;
    MatrixK::from_rows(spec, rows)
}

pub fn poly_matrix_from_json(v: &Value, spec: FieldSpec) -> Result<MatrixPoly> {
    let rows = rows_of(v)?;
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    let mut data = Vec::with_capacity(r * c);
    for row in rows {
        if row.len() != c {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        for p in row {
            data.push(poly_from_json(p, spec)?);
        }
    }
    MatrixPoly::new(spec, r, c, data)
}

/// `{"field": "5"}` style descriptor.
pub fn field_to_json(spec: FieldSpec) -> Value {
    json!(spec.to_string())
}

//! JSON encoding of library values. Rationals are strings (`"3"`, `"-3/2"`).

use homlie::algebra::HomLie;
use homlie::cohomology::{wedge_basis, Cochain};
use homlie::exactla::{Matrix, Subspace};
use homlie::Rational;
use serde_json::{json, Value};

pub fn scalar(c: &Rational) -> Value {
    Value::String(c.to_string())
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix<Rational>) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| vector(r)).collect())
}

pub fn subspace(s: &Subspace<Rational>) -> Value {
    json!({ "dim": s.dim(), "basis": s.basis().iter().map(|v| vector(v)).collect::<Vec<_>>() })
}

/// Nonzero brackets `[i, j]` with `i < j`, by basis name.
pub fn algebra(h: &HomLie<Rational>, basis: &[String]) -> Value {
    let n = h.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = h.basis_bracket(i, j);
            if v.iter().any(|c| c != &Rational::from_integer(0.into())) {
                brackets.push(json!({ "pair": [basis[i], basis[j]], "value": vector(v) }));
            }
        }
    }
    json!({ "dim": n, "basis": basis, "alpha": matrix(h.alpha()), "brackets": brackets })
}

pub fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Values on the wedge basis, keyed by argument names.
pub fn cochain(c: &Cochain<Rational>, basis: &[String]) -> Value {
    let values: Vec<Value> = wedge_basis(c.dim_l(), c.degree())
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let args: Vec<&str> = w.iter().map(|&i| basis[i].as_str()).collect();
            json!({ "args": args, "value": vector(&c.values().column(k)) })
        })
        .collect();
    json!({ "degree": c.degree(), "values": values })
}

use serde_json::{json, Value};

use crate::polarize::{MonomialBasis, Pencil};
use crate::polycore::{fmt_rational, MatrixForm, Rational, SymMatrix};

pub(crate) fn rat(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

/// Floats carry 17 significant digits.
pub(crate) fn float(x: f64) -> Value {
    Value::String(format!("{x:.16e}"))
}

pub(crate) fn var(k: usize) -> String {
    format!("z{}", k + 1)
}

pub(crate) fn sym(a: &SymMatrix) -> Value {
    Value::Array(
        a.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(rat).collect()))
            .collect(),
    )
}

pub(crate) fn forms(p: &MatrixForm) -> Value {
    Value::Array(
        (0..p.rows())
            .map(|i| Value::Array((0..p.cols()).map(|j| Value::String(p.get(i, j).to_string())).collect()))
            .collect(),
    )
}

pub(crate) fn basis(b: &MonomialBasis) -> Value {
    Value::Array(b.iter().map(|m| Value::String(m.to_string())).collect())
}

pub(crate) fn pencil(p: &Pencil) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, a)| json!({ "variable": var(k), "matrix": sym(a) }))
            .collect(),
    )
}

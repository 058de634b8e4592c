use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{parse_form, Form, MatrixForm, RatFn};

/// Contents of an input file.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Function(RatFn),
    Form(MatrixForm),
}

/// `{"d": 2, "m": 1, "num": [["z1*z2"]], "den": "z1+z2"}` for a function,
/// `{"d": 2, "m": 1, "form": [["z1^2"]]}` for a matrix form.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    form: Option<Vec<Vec<String>>>,
}

pub fn parse_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path)?;
    parse_input_str(&text)
}

pub fn parse_input_str(text: &str) -> Result<Input> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.d == 0 {
        return Err(Error::Invariant("d must be at least 1".into()));
    }
    match (raw.num, raw.den, raw.form) {
        (Some(num), Some(den), None) => {
            let p = matrix(&num, raw.d, raw.m, "num")?;
            let q = entry(&den, raw.d, "den")?;
            Ok(Input::Function(RatFn::new(p, q)?))
        }
        (None, None, Some(form)) => {
            let f = matrix(&form, raw.d, raw.m, "form")?;
            if !f.is_symmetric() {
                return Err(Error::Invariant("form is not a symmetric matrix".into()));
            }
            Ok(Input::Form(f))
        }
        _ => Err(Error::BadInput(
            "expected either \"num\" and \"den\" or \"form\"".into(),
        )),
    }
}

fn entry(text: &str, d: usize, path: &str) -> Result<Form> {
    parse_form(text, Some(d)).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{path}: {message}"),
        },
        other => other,
    })
}

fn matrix(rows: &[Vec<String>], d: usize, m: Option<usize>, name: &str) -> Result<MatrixForm> {
    let n = rows.len();
    if let Some(m) = m {
        if m != n {
            return Err(Error::Invariant(format!("m = {m} but {name} has {n} rows")));
        }
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Invariant(format!("{name} is not square")));
    }
    let entries = rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, t)| (i, j, t)))
        .map(|(i, j, t)| entry(t, d, &format!("{name}[{i}][{j}]")))
        .collect::<Result<Vec<_>>>()?;
    MatrixForm::new(n, n, entries)
}

fn rows_text(p: &MatrixForm) -> Vec<Vec<String>> {
    (0..p.rows())
        .map(|i| (0..p.cols()).map(|j| p.get(i, j).to_string()).collect())
        .collect()
}

pub fn function_to_json(f: &RatFn) -> String {
    let raw = Raw {
        d: f.nvars(),
        m: Some(f.size()),
        num: Some(rows_text(f.numerator())),
        den: Some(f.denominator().to_string()),
        form: None,
    };
    serde_json::to_string_pretty(&raw).expect("plain data")
}

pub fn form_to_json(f: &MatrixForm) -> String {
    let raw = Raw {
        d: f.nvars(),
        m: Some(f.rows()),
        num: None,
        den: None,
        form: Some(rows_text(f)),
    };
    serde_json::to_string_pretty(&raw).expect("plain data")
}

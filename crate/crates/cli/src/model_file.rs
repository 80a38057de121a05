//! Line-oriented Hamiltonian files.
//!
//! ```text
//! # pendulum to first order
//! name: pendulum
//! dim: 1
//! omega: 1
//! H1: -1/24 * q1^4
//! ```
//!
//! `H<k>` lines take the series grammar of [`deprit_core::algebra::parse_series`]
//! in either the pq or the Birkhoff variables. Missing orders are zero.

use std::collections::BTreeMap;
use std::path::Path;

use deprit_core::algebra::{parse_series_infer, PolySeries, MAX_DIM};
use deprit_core::{Error, Frequencies, HamiltonianModel};

use crate::error::{CliError, Result};

struct Ctx<'a> {
    path: &'a str,
}

impl Ctx<'_> {
    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> CliError {
        CliError::Syntax {
            path: self.path.to_string(),
            line,
            column,
            message: message.into(),
        }
    }

    /// Converts a core parse error at byte `offset` of a value starting at `col0`.
    fn lift(&self, e: Error, line: usize, value: &str, col0: usize) -> CliError {
        match e {
            Error::Parse { offset, message } => {
                let chars = value[..offset.min(value.len())].chars().count();
                self.err(line, col0 + chars, message)
            }
            other => self.err(line, col0, other.to_string()),
        }
    }
}

/// Parses model text; `path` only labels error messages.
pub fn parse_model_str(src: &str, path: &str) -> Result<HamiltonianModel> {
    let ctx = Ctx { path };
    let mut name = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut omega: Option<(usize, usize, &str)> = None;
    let mut terms: BTreeMap<usize, (usize, usize, &str)> = BTreeMap::new();

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = body.split_once(':') else {
            let col = raw.len() - raw.trim_start().len() + 1;
            return Err(ctx.err(line, col, "expected 'key: value'"));
        };
        let key_col = key.len() - key.trim_start().len() + 1;
        let key = key.trim();
        let lead = value.len() - value.trim_start().len();
        let col0 = body[..body.len() - value.len()].chars().count() + lead + 1;
        let value = value.trim();
        let dup = || ctx.err(line, key_col, format!("duplicate '{key}'"));
        match key {
            "name" => {
                if name.replace(value.to_string()).is_some() {
                    return Err(dup());
                }
            }
            "dim" => {
                let d: usize = value
                    .parse()
                    .map_err(|_| ctx.err(line, col0, format!("bad dimension '{value}'")))?;
                if d == 0 || d > MAX_DIM {
                    return Err(ctx.err(line, col0, format!("dimension must be 1..={MAX_DIM}")));
                }
                if dim.replace((d, line)).is_some() {
                    return Err(dup());
                }
            }
            "omega" => {
                if omega.replace((line, col0, value)).is_some() {
                    return Err(dup());
                }
            }
            _ => {
                let k = key
                    .strip_prefix('H')
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| ctx.err(line, key_col, format!("unknown key '{key}'")))?;
                if k == 0 {
                    return Err(ctx.err(line, key_col, "H0 is fixed by omega"));
                }
                if terms.insert(k, (line, col0, value)).is_some() {
                    return Err(dup());
                }
            }
        }
    }

    let Some((d, _)) = dim else {
        return Err(ctx.err(1, 1, "missing 'dim'"));
    };
    let Some((oline, ocol, ovalue)) = omega else {
        return Err(ctx.err(1, 1, "missing 'omega'"));
    };
    let omega: Frequencies = ovalue.parse().map_err(|e| ctx.lift(e, oline, ovalue, ocol))?;
    if omega.dim() != d {
        return Err(ctx.err(oline, ocol, format!("omega has {} entries, dim is {d}", omega.dim())));
    }

    let max = terms.keys().next_back().copied().unwrap_or(0);
    let mut parsed: Vec<Option<PolySeries>> = vec![None; max];
    let mut kind = None;
    for (&k, &(line, col0, value)) in &terms {
        let (kd, series) = parse_series_infer(value, d, kind).map_err(|e| ctx.lift(e, line, value, col0))?;
        kind = Some(kd);
        if !series.is_eps_free() || !series.is_z_free() {
            return Err(ctx.err(line, col0, format!("H{k} must not contain eps or z")));
        }
        parsed[k - 1] = Some(series);
    }
    let frame = deprit_core::algebra::VarFrame::new(d, kind.unwrap_or(deprit_core::VarKind::Pq));
    let terms = parsed.into_iter().map(|t| t.unwrap_or_else(|| PolySeries::zero(frame))).collect();
    Ok(HamiltonianModel::new(name.unwrap_or_else(|| "model".into()), omega, terms)?)
}

pub fn parse_model_file(path: &Path) -> Result<HamiltonianModel> {
    let label = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: label.clone(),
        source,
    })?;
    parse_model_str(&src, &label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax(src: &str) -> (usize, usize) {
        match parse_model_str(src, "m") {
            Err(CliError::Syntax { line, column, .. }) => (line, column),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_pendulum() {
        let h = parse_model_str("dim: 1\nomega: 1\nH1: -1/24 * q1^4\n", "m").unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.max_order(), 1);
        assert_eq!(h.name(), "model");
    }

    #[test]
    fn henon_heiles_file() {
        let src = "# Henon-Heiles\nname: henon-heiles\ndim: 2\nomega: 1 1\nH1: 1 * q1^2*q2 + -1/3 * q2^3  # cubic\n";
        let h = parse_model_str(src, "m").unwrap();
        assert_eq!(h, deprit_core::models::henon_heiles());
    }

    #[test]
    fn gaps_are_zero() {
        let h = parse_model_str("dim: 1\nomega: 1\nH2: 1 * q1^6\n", "m").unwrap();
        assert_eq!(h.max_order(), 2);
        assert!(h.term(1).unwrap().is_zero());
    }

    #[test]
    fn malformed_coefficient() {
        assert_eq!(syntax("dim: 1\nomega: 1\nH1: 1/ * q1^4\n"), (3, 5));
        assert_eq!(syntax("dim: 1\nomega: 1\nH1: 1 * q1^4 + 1/ * q1^3\n"), (3, 16));
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(syntax("dim: 2\nomega: 1 r2\n"), (2, 10));
        assert_eq!(syntax("dim: 2\nomega: 1\n"), (2, 8));
        assert_eq!(syntax("dim: 1\nomega: 1\nH1: 1 * q2^4\n").0, 3);
        assert_eq!(syntax("dim: 1\nomega: 1\nfoo: 3\n"), (3, 1));
        assert_eq!(syntax("dim: 1\nomega: 1\nH1: 1 * eps*q1^3\n").0, 3);
        assert_eq!(syntax("omega: 1\n").0, 1);
        assert_eq!(syntax("dim: 1\ndim: 1\n"), (2, 1));
        assert_eq!(syntax("dim: 1\n  nonsense\n"), (2, 3));
    }
}

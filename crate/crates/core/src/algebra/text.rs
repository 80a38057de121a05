//! Text grammar for series: `COEFF * MONO + COEFF * MONO ...`.
//!
//! Tokens are whitespace separated. `MONO` is `1` or factors joined by `*`,
//! each factor `name[^k]` with names `eps`, `z`, `qK`, `pK`, `zetaK`, `etaK`
//! (1-based `K`). A bare `COEFF` is a constant term; `0` is the zero series.

use super::monomial::{Monomial, VarFrame, VarKind, MAX_DIM};
use super::scalar::parse_scalar;
use super::series::PolySeries;
use crate::error::{Error, Result};

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

fn tokens(src: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in src.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &src[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &src[s..]));
    }
    out
}

/// Shifts the offset of a parse error by `base`.
fn rebase(e: Error, base: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + base,
            message,
        },
        other => other,
    }
}

/// Parses a series in `frame`. Variables of the other kind are rejected.
pub fn parse_series(src: &str, frame: VarFrame) -> Result<PolySeries> {
    let (kind, series) = parse_series_infer(src, frame.dim(), Some(frame.kind()))?;
    debug_assert_eq!(kind, frame.kind());
    Ok(series)
}

/// Parses a series of dimension `dim`, taking the variable kind from `kind`
/// or, when `None`, from the first variable seen (pq if there are none).
pub fn parse_series_infer(src: &str, dim: usize, kind: Option<VarKind>) -> Result<(VarKind, PolySeries)> {
    let toks = tokens(src);
    if toks.is_empty() {
        return err(src.len(), "empty series");
    }
    let mut kind = kind;
    let mut terms = Vec::new();
    let mut i = 0;
    loop {
        let (off, tok) = toks[i];
        // coefficient errors point at the start of the offending token
        let coeff = parse_scalar(tok).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse { offset: off, message },
            other => other,
        })?;
        i += 1;
        let mut mono = Monomial::one();
        if i < toks.len() && toks[i].1 == "*" {
            i += 1;
            let Some(&(moff, mtok)) = toks.get(i) else {
                return err(src.len(), "expected a monomial after '*'");
            };
            mono = parse_monomial(mtok, dim, &mut kind).map_err(|e| rebase(e, moff))?;
            i += 1;
        }
        terms.push((mono, coeff));
        if i == toks.len() {
            break;
        }
        let (poff, ptok) = toks[i];
        if ptok != "+" {
            return err(poff, format!("expected '+' between terms, found '{ptok}'"));
        }
        i += 1;
        if i == toks.len() {
            return err(src.len(), "dangling '+'");
        }
    }
    let kind = kind.unwrap_or(VarKind::Pq);
    Ok((kind, PolySeries::from_terms(VarFrame::new(dim, kind), terms)))
}

/// Parses one monomial token, fixing `kind` on first use of a phase-space variable.
pub fn parse_monomial(tok: &str, dim: usize, kind: &mut Option<VarKind>) -> Result<Monomial> {
    if tok == "1" {
        return Ok(Monomial::one());
    }
    let mut exps = [0u16; 2 * MAX_DIM];
    let mut eps = 0u16;
    let mut z = 0u16;
    let mut off = 0usize;
    for factor in tok.split('*') {
        if factor.is_empty() {
            return err(off, "empty factor");
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let p: u16 = match p.parse() {
                    Ok(v) if v > 0 => v,
                    _ => return err(off + n.len() + 1, format!("bad exponent '{p}'")),
                };
                (n, p)
            }
            None => (factor, 1),
        };
        let var = |prefix: &str| -> Option<usize> {
            let idx = name.strip_prefix(prefix)?;
            let k: usize = idx.parse().ok()?;
            (k >= 1).then_some(k - 1)
        };
        if name == "eps" {
            eps += power;
        } else if name == "z" {
            z += power;
        } else {
            let (vk, base, idx) = if let Some(k) = var("zeta") {
                (VarKind::Birkhoff, 0, k)
            } else if let Some(k) = var("eta") {
                (VarKind::Birkhoff, dim, k)
            } else if let Some(k) = var("q") {
                (VarKind::Pq, 0, k)
            } else if let Some(k) = var("p") {
                (VarKind::Pq, dim, k)
            } else {
                return err(off, format!("unknown variable '{name}'"));
            };
            match kind {
                Some(k) if *k != vk => {
                    return err(off, format!("variable '{name}' mixes pq and Birkhoff variables"));
                }
                _ => *kind = Some(vk),
            }
            if idx >= dim {
                return err(off, format!("variable '{name}' exceeds dimension {dim}"));
            }
            exps[base + idx] += power;
        }
        off += factor.len() + 1;
    }
    Ok(Monomial::from_exps(&exps[..2 * dim]).with_eps(eps).with_z(z))
}

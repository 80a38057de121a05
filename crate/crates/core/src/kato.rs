//! Perturbed averaging, integrating and eigen-nilpotent operators `P_H`, `S_H`,
//! `D_H` as ε-series of operator words in `P`, `S^p` and `L_{H_k}`.
//!
//! The `ε^n` coefficient (`n ≥ 1`) is
//! `Σ_{m=1..n} σ Σ Sr^{(p_{m+1})} L_{H_{k_m}} Sr^{(p_m)} ⋯ L_{H_{k_1}} Sr^{(p_1)}`
//! over `k_1 + .. + k_m = n` (`k_j ≥ 1`) and `p_1 + .. + p_{m+1} = T` (`p_j ≥ 0`),
//! where `Sr^{(0)} = −P`, `Sr^{(p)} = S^p`, and
//!
//! | kind | σ | T |
//! |------|---|---|
//! | P | `(−1)^{m+1}` | `m` |
//! | S | `(−1)^m` | `m + 1` |
//! | D | `(−1)^{m+1}` | `m − 1` |
//!
//! The `m = 0` summand has no `L` factor and contributes nothing for `n ≥ 1`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::PolySeries;
use crate::canonical::liouville_apply;
use crate::error::{usage, Error, Result};
use crate::normalize::HamiltonianModel;
use crate::operators::{average, integrate};
use crate::parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    P,
    S,
    D,
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(OperatorKind::P),
            "S" | "s" => Ok(OperatorKind::S),
            "D" | "d" => Ok(OperatorKind::D),
            _ => Err(Error::Usage(format!("unknown operator kind '{s}' (expected P, S or D)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    /// `P`
    Avg,
    /// `S^p`, `p ≥ 1`
    IntPow(u32),
    /// `L_{H_k}`, `k ≥ 1`
    Lie(usize),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Avg => f.write_str("P"),
            Token::IntPow(1) => f.write_str("S"),
            Token::IntPow(p) => write!(f, "S^{p}"),
            Token::Lie(k) => write!(f, "L{k}"),
        }
    }
}

/// Signed product of tokens, written left to right and applied right to left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorWord {
    pub sign: i8,
    pub tokens: Vec<Token>,
}

impl OperatorWord {
    /// Largest `k` among the `L_{H_k}` tokens, 0 if none.
    pub fn max_lie(&self) -> usize {
        self.tokens
            .iter()
            .filter_map(|t| match t {
                Token::Lie(k) => Some(*k),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }
}

/// Formats as `+ S^2 L1 P`.
impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign < 0 { "-" } else { "+" })?;
        for t in &self.tokens {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

/// All compositions of `total` into `parts` positive integers, lexicographic.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    weak_compositions(total - parts, parts)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x + 1).collect())
        .collect()
}

/// All ways to write `total` as `parts` non-negative integers, lexicographic.
fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Signed words of the `ε^n` coefficient of `kind`.
pub fn kato_words(kind: OperatorKind, n: usize) -> Vec<OperatorWord> {
    if n == 0 {
        return match kind {
            OperatorKind::P => vec![OperatorWord {
                sign: 1,
                tokens: vec![Token::Avg],
            }],
            OperatorKind::S => vec![OperatorWord {
                sign: 1,
                tokens: vec![Token::IntPow(1)],
            }],
            OperatorKind::D => Vec::new(),
        };
    }
    let mut out = Vec::new();
    for m in 1..=n {
        let (base, total) = match kind {
            OperatorKind::P => (if m % 2 == 1 { 1 } else { -1 }, m),
            OperatorKind::S => (if m % 2 == 0 { 1 } else { -1 }, m + 1),
            OperatorKind::D => (if m % 2 == 1 { 1 } else { -1 }, m - 1),
        };
        for ks in compositions(n, m) {
            for ps in weak_compositions(total, m + 1) {
                let mut sign: i8 = base;
                let mut tokens = Vec::with_capacity(2 * m + 1);
                // left to right: Sr(p_{m+1}) L(k_m) Sr(p_m) ... L(k_1) Sr(p_1)
                for slot in (0..=m).rev() {
                    let p = ps[slot] as u32;
                    if p == 0 {
                        sign = -sign;
                        tokens.push(Token::Avg);
                    } else {
                        tokens.push(Token::IntPow(p));
                    }
                    if slot > 0 {
                        tokens.push(Token::Lie(ks[slot - 1]));
                    }
                }
                out.push(OperatorWord { sign, tokens });
            }
        }
    }
    out
}

/// Applies `w` to `f`, rightmost token first.
pub fn word_apply(w: &OperatorWord, h: &HamiltonianModel, f: &PolySeries) -> Result<PolySeries> {
    let omega = h.omega();
    let mut acc = f.clone();
    for t in w.tokens.iter().rev() {
        if acc.is_zero() {
            break;
        }
        acc = match *t {
            Token::Avg => average(&acc, omega)?,
            Token::IntPow(p) => integrate(&acc, omega, p)?,
            Token::Lie(k) => match h.term(k) {
                Some(hk) => liouville_apply(hk, &acc)?,
                None => {
                    return usage(format!(
                        "word uses L{k} but the model only has H1..H{}",
                        h.max_order()
                    ))
                }
            },
        };
    }
    if w.sign < 0 {
        acc = -&acc;
    }
    Ok(acc)
}

/// `Σ_{n≤N} ε^n (Σ_words w) f` for ε-graded `f`, truncated at `ε^N`.
/// Words involving `H_k` beyond the model's stored terms are zero and skipped.
pub fn kato_apply(kind: OperatorKind, h: &HamiltonianModel, f: &PolySeries, order: u32) -> Result<PolySeries> {
    let frame = f.frame();
    let fparts = f.eps_parts(order);
    let mut jobs = Vec::new();
    for n in 0..=order as usize {
        for w in kato_words(kind, n) {
            if w.max_lie() > h.max_order() {
                continue;
            }
            for (j, fj) in fparts.iter().enumerate() {
                if n + j <= order as usize && !fj.is_zero() {
                    jobs.push((n + j, w.clone(), fj));
                }
            }
        }
    }
    let results = parallel::map_collect(&jobs, |(shift, w, fj)| {
        word_apply(w, h, fj).map(|s| s.with_caps(order, crate::algebra::UNBOUNDED).shift_eps(*shift as u32))
    });
    let mut acc = PolySeries::zero(frame).with_caps(order, crate::algebra::UNBOUNDED);
    for r in results {
        acc = &acc + &r?;
    }
    Ok(acc)
}

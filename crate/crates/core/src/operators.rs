//! Spectral operators of `L_{H_0}` in the Birkhoff frame.
//!
//! A monomial `ζ^m η^n` is an eigenvector of `L_{H_0}` with eigenvalue
//! `i(ω, m − n)`; averaging keeps the kernel, integration divides by powers of
//! the eigenvalue elsewhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{parse_rational, ExtScalar, Monomial, PolySeries, VarFrame, VarKind};
use crate::error::{usage, Error, Result};

/// Unperturbed frequency vector `ω`, exact rationals with at least one nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frequencies {
    values: Vec<BigRational>,
    // ω = weights / den with integer weights, so resonance is an integer test
    weights: Vec<i64>,
    den: i64,
}

impl Frequencies {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() || values.len() > crate::algebra::MAX_DIM {
            return Err(Error::Domain(format!(
                "frequency vector must have 1..={} entries",
                crate::algebra::MAX_DIM
            )));
        }
        if values.iter().all(|v| v.is_zero()) {
            return Err(Error::Domain("frequency vector is zero".into()));
        }
        let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let too_big = || Error::Domain("frequency vector too large for the resonance test".into());
        let weights = values
            .iter()
            .map(|v| (v.numer() * (&den / v.denom())).to_i64().ok_or_else(too_big))
            .collect::<Result<Vec<_>>>()?;
        let den = den.to_i64().ok_or_else(too_big)?;
        Ok(Frequencies { values, weights, den })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Integer `Σ w_k (m_k − n_k)` with `ω = w / den`.
    fn scaled_rate(&self, m: &Monomial) -> i64 {
        let d = self.dim();
        (0..d)
            .map(|k| self.weights[k] * (m.coord(k) as i64 - m.momentum(d, k) as i64))
            .sum()
    }

    /// `(ω, m − n)` for `m = ζ^m η^n`.
    pub fn rate(&self, m: &Monomial) -> BigRational {
        BigRational::new(self.scaled_rate(m).into(), self.den.into())
    }

    /// Unperturbed Hamiltonian `Σ_k i ω_k ζ_k η_k`.
    pub fn h0(&self) -> PolySeries {
        let d = self.dim();
        let frame = VarFrame::birkhoff(d);
        PolySeries::from_terms(
            frame,
            (0..d).map(|k| {
                (
                    Monomial::pair(d, k, 1, 1),
                    ExtScalar::from_rational(self.values[k].clone()).mul_i_pow(1),
                )
            }),
        )
    }

    /// `Σ_k ω_k (p_k² + q_k²)/2`, the same function in pq variables.
    pub fn h0_pq(&self) -> PolySeries {
        let d = self.dim();
        let half = BigRational::new(1.into(), 2.into());
        let mut terms = Vec::new();
        for k in 0..d {
            let c = ExtScalar::from_rational(&self.values[k] * &half);
            terms.push((Monomial::pair(d, k, 2, 0), c.clone()));
            terms.push((Monomial::pair(d, k, 0, 2), c));
        }
        PolySeries::from_terms(VarFrame::pq(d), terms)
    }
}

impl fmt::Display for Frequencies {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Whitespace separated rationals, e.g. `1 1` or `2 -1/3`.
impl FromStr for Frequencies {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        let bytes = s.as_bytes();
        let mut pos = 0;
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos == bytes.len() {
                break;
            }
            let start = pos;
            let neg = bytes[pos] == b'-';
            if neg || bytes[pos] == b'+' {
                pos += 1;
            }
            let (v, end) = parse_rational(s, pos)?;
            if end < bytes.len() && !bytes[end].is_ascii_whitespace() {
                return Err(Error::Parse {
                    offset: end,
                    message: format!("frequency '{}' is not an exact rational", s[start..].split_whitespace().next().unwrap_or("")),
                });
            }
            values.push(if neg { -v } else { v });
            pos = end;
        }
        if values.is_empty() {
            return Err(Error::Parse {
                offset: 0,
                message: "no frequencies given".into(),
            });
        }
        Self::new(values)
    }
}

fn check(f: &PolySeries, omega: &Frequencies) -> Result<()> {
    if f.frame().kind() != VarKind::Birkhoff {
        return usage("spectral operators act on Birkhoff-frame series");
    }
    if f.frame().dim() != omega.dim() {
        return usage(format!(
            "series of dimension {} with {} frequencies",
            f.frame().dim(),
            omega.dim()
        ));
    }
    Ok(())
}

/// True iff `(ω, m − n) = 0`.
pub fn is_resonant(m: &Monomial, omega: &Frequencies) -> bool {
    omega.scaled_rate(m) == 0
}

/// `P f`: the resonant (secular) part of `f`.
pub fn average(f: &PolySeries, omega: &Frequencies) -> Result<PolySeries> {
    check(f, omega)?;
    Ok(f.filter(|m| is_resonant(m, omega)))
}

/// `(1 − P) f`.
pub fn non_secular(f: &PolySeries, omega: &Frequencies) -> Result<PolySeries> {
    check(f, omega)?;
    Ok(f.filter(|m| !is_resonant(m, omega)))
}

/// `c / (i r)^n = c (−i)^n / r^n`.
fn divide_by_eigen(c: &ExtScalar, r: &BigRational, n: u32) -> ExtScalar {
    let inv = BigRational::one() / num_traits::pow(r.clone(), n as usize);
    c.scale(&inv).mul_i_pow((3 * n) % 4)
}

/// `S^n f`: non-resonant terms divided by `(i(ω, m − n))^n`, resonant ones dropped.
pub fn integrate(f: &PolySeries, omega: &Frequencies, n: u32) -> Result<PolySeries> {
    check(f, omega)?;
    Ok(f.remap(|m, c| {
        if is_resonant(m, omega) {
            None
        } else {
            Some((*m, divide_by_eigen(c, &omega.rate(m), n)))
        }
    }))
}

/// `L_{H_0} f` evaluated through the eigenvalues.
pub fn liouville_h0(f: &PolySeries, omega: &Frequencies) -> Result<PolySeries> {
    check(f, omega)?;
    Ok(f.map_coeffs(|m, c| c.scale(&omega.rate(m)).mul_i_pow(1)))
}

/// `R̃(z) f`: resonant monomials are negated, a non-resonant one is replaced
/// by `Σ_{n=1..N} (z / i(ω, m − n))^n` times itself. The result has `z_cap = N`.
pub fn rz_apply(f: &PolySeries, omega: &Frequencies, order: u32) -> Result<PolySeries> {
    check(f, omega)?;
    let mut terms = Vec::new();
    for (m, c) in f.iter() {
        if is_resonant(m, omega) {
            terms.push((*m, -c));
            continue;
        }
        let r = omega.rate(m);
        let step = divide_by_eigen(&ExtScalar::one(), &r, 1);
        let mut coeff = c.clone();
        for n in 1..=order {
            let z = m.z() as u32 + n;
            if z > order {
                break;
            }
            coeff = &coeff * &step;
            terms.push((m.with_z(z as u16), coeff.clone()));
        }
    }
    Ok(PolySeries::from_terms(f.frame(), terms).with_caps(f.eps_cap(), order))
}

/// Gcd-normalized copy of an integer vector with its first nonzero entry positive.
pub(crate) fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    v.iter().map(|x| x / &g * &sign).collect()
}

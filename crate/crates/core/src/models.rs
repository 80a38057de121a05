//! Built-in Hamiltonians.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{ExtScalar, Monomial, PolySeries, VarFrame};
use crate::error::{usage, Result};
use crate::normalize::HamiltonianModel;
use crate::operators::Frequencies;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn rat(num: BigInt, den: BigInt) -> ExtScalar {
    ExtScalar::from_rational(BigRational::new(num, den))
}

/// Pendulum `p²/2 + 1 − cos q` after the scaling `q → √ε q`:
/// `ω = (1)`, `H_k = (−1)^k q^{2k+2} / (2k+2)!` for `k = 1..order`, the Taylor
/// coefficients of `1 − cos q`.
pub fn pendulum(order: u32) -> Result<HamiltonianModel> {
    if order == 0 {
        return usage("order must be at least 1");
    }
    let frame = VarFrame::pq(1);
    let terms = (1..=order)
        .map(|k| {
            let deg = 2 * k + 2;
            let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            PolySeries::monomial(frame, Monomial::from_exps(&[deg as u16, 0]), rat(sign, factorial(deg)))
        })
        .collect();
    HamiltonianModel::new("pendulum", Frequencies::from_ints(&[1])?, terms)
}

/// Hénon-Heiles: `ω = (1, 1)`, `H_1 = q_1² q_2 − q_2³/3`.
pub fn henon_heiles() -> HamiltonianModel {
    let frame = VarFrame::pq(2);
    let h1 = PolySeries::from_terms(
        frame,
        [
            (Monomial::from_exps(&[2, 1, 0, 0]), ExtScalar::one()),
            (Monomial::from_exps(&[0, 3, 0, 0]), ExtScalar::ratio(-1, 3)),
        ],
    );
    HamiltonianModel::new("henon-heiles", Frequencies::from_ints(&[1, 1]).expect("nonzero"), vec![h1])
        .expect("well-formed built-in model")
}

/// Toda 2D lattice
/// `(P_1² + P_2²)/2 + (e^{2Q_2+2√3Q_1} + e^{2Q_2−2√3Q_1} + e^{−4Q_2})/24 − 1/8`
/// with `P = εp`, `Q = εq`, divided by `ε²`. `H_k` is the degree `k+2` part of
/// the exponentials; odd powers of `√3` cancel between the first two.
/// The Hori integral uses leading power `s = 2`.
pub fn toda2d(order: u32) -> Result<HamiltonianModel> {
    if order == 0 {
        return usage("order must be at least 1");
    }
    let frame = VarFrame::pq(2);
    let terms = (1..=order)
        .map(|k| {
            let j = k + 2;
            let den = factorial(j) * BigInt::from(24);
            let mut parts = Vec::new();
            // (2q2 + 2√3 q1)^j + (2q2 − 2√3 q1)^j: even i only, doubled
            for i in (0..=j).step_by(2) {
                let num = binomial(j, i) * BigInt::from(2).pow(j + 1) * BigInt::from(3).pow(i / 2);
                let m = Monomial::from_exps(&[i as u16, (j - i) as u16, 0, 0]);
                parts.push((m, rat(num, den.clone())));
            }
            parts.push((Monomial::from_exps(&[0, j as u16, 0, 0]), rat(BigInt::from(-4).pow(j), den)));
            PolySeries::from_terms(frame, parts)
        })
        .collect();
    Ok(HamiltonianModel::new("toda2d", Frequencies::from_ints(&[1, 1])?, terms)?.with_hori_power(2))
}

/// Built-in model names accepted by [`builtin`].
pub const BUILTIN: [&str; 3] = ["pendulum", "henon-heiles", "toda2d"];

/// Looks up a built-in model; `order` sets how many terms the series models carry.
pub fn builtin(name: &str, order: u32) -> Option<Result<HamiltonianModel>> {
    match name {
        "pendulum" => Some(pendulum(order)),
        "henon-heiles" | "hh" => Some(Ok(henon_heiles())),
        "toda2d" | "toda" => Some(toda2d(order)),
        _ => None,
    }
}

#![allow(dead_code)]

use deprit_core::algebra::{ExtScalar, Monomial, PolySeries, VarFrame, VarKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Element of Q(i)[√2] with small components, about half of them zero.
pub fn scalar() -> BoxedStrategy<ExtScalar> {
    let part = prop_oneof![Just(BigRational::from_integer(0.into())), rational()];
    (part.clone(), part.clone(), part.clone(), part)
        .prop_map(|(a, b, c, d)| ExtScalar::new(a, b, c, d))
        .boxed()
}

pub fn nonzero_scalar() -> impl Strategy<Value = ExtScalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

/// Rational-coefficient element (real frame friendly).
pub fn rational_scalar() -> BoxedStrategy<ExtScalar> {
    rational().prop_map(ExtScalar::from_rational).boxed()
}

fn monomial(dim: usize, max_deg: u16, eps: u16) -> impl Strategy<Value = Monomial> {
    (proptest::collection::vec(0u16..=max_deg, 2 * dim), 0u16..=eps).prop_filter_map("degree", move |(e, k)| {
        let deg: u16 = e.iter().sum();
        (deg <= max_deg + 1).then(|| Monomial::from_exps(&e).with_eps(k))
    })
}

/// Random polynomial with up to `max_terms` terms, exponents ≤ `max_deg`,
/// ε powers ≤ `eps` and coefficients from `coeff`.
pub fn poly_with<S>(frame: VarFrame, max_terms: usize, max_deg: u16, eps: u16, coeff: S) -> impl Strategy<Value = PolySeries>
where
    S: Strategy<Value = ExtScalar> + Clone,
{
    proptest::collection::vec((monomial(frame.dim(), max_deg, eps), coeff), 0..=max_terms)
        .prop_map(move |terms| PolySeries::from_terms(frame, terms))
}

pub fn poly(frame: VarFrame, max_terms: usize, max_deg: u16) -> impl Strategy<Value = PolySeries> {
    let coeff = match frame.kind() {
        VarKind::Pq => rational_scalar().boxed(),
        VarKind::Birkhoff => scalar().boxed(),
    };
    poly_with(frame, max_terms, max_deg, 0, coeff)
}

pub fn graded_poly(frame: VarFrame, max_terms: usize, max_deg: u16, eps: u16) -> impl Strategy<Value = PolySeries> {
    poly_with(frame, max_terms, max_deg, eps, scalar())
}

pub mod props;

use deprit_core::normalize::HamiltonianModel;
use deprit_core::Frequencies;

/// Homogeneous pq polynomial of degree `deg` with rational coefficients.
pub fn homogeneous(dim: usize, deg: usize, max_terms: usize) -> impl Strategy<Value = PolySeries> {
    let frame = VarFrame::pq(dim);
    proptest::collection::vec((proptest::collection::vec(0..2 * dim, deg), rational_scalar()), 1..=max_terms).prop_map(
        move |terms| {
            PolySeries::from_terms(
                frame,
                terms.into_iter().map(|(vars, c)| {
                    let mut e = vec![0u16; 2 * dim];
                    for v in vars {
                        e[v] += 1;
                    }
                    (Monomial::from_exps(&e), c)
                }),
            )
        },
    )
}

pub fn frequencies_2d() -> impl Strategy<Value = Frequencies> {
    prop_oneof![Just([1, 1]), Just([1, 2]), Just([2, 3]), Just([1, 3]), Just([3, 1])]
        .prop_map(|w| Frequencies::from_ints(&w).unwrap())
}

/// Two-degree-of-freedom model with random homogeneous `H_k` of degree `k + 2`, `k ≤ terms`.
pub fn model_2d(terms: usize) -> impl Strategy<Value = HamiltonianModel> {
    let parts: Vec<_> = (1..=terms).map(|k| homogeneous(2, k + 2, 3)).collect();
    (frequencies_2d(), parts).prop_map(|(w, hs)| HamiltonianModel::new("random", w, hs).unwrap())
}

/// One-degree-of-freedom model (`ω = 1`) with random `H_1..H_terms`.
pub fn model_1d(terms: usize) -> impl Strategy<Value = HamiltonianModel> {
    let parts: Vec<_> = (1..=terms).map(|k| homogeneous(1, k + 2, 3)).collect();
    parts.prop_map(|hs| HamiltonianModel::new("random", Frequencies::from_ints(&[1]).unwrap(), hs).unwrap())
}

pub fn birkhoff2() -> VarFrame {
    VarFrame::birkhoff(2)
}

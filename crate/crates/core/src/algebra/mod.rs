//! Exact coefficient field and sparse truncated series.

mod monomial;
mod scalar;
mod series;
mod text;

pub use monomial::{Monomial, VarFrame, VarKind, MAX_DIM};
pub use scalar::{parse_scalar, ExtScalar};
pub use series::{PolySeries, UNBOUNDED};
pub(crate) use series::accumulate;
pub use text::{parse_monomial, parse_series, parse_series_infer};

pub(crate) use scalar::parse_rational;

/// Exact field operation selector for [`ext_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Applies `op` to `a` (and `b` for binary ops). Only `Inv` of zero fails.
pub fn ext_arith(a: &ExtScalar, b: &ExtScalar, op: ScalarOp) -> crate::Result<ExtScalar> {
    Ok(match op {
        ScalarOp::Add => a + b,
        ScalarOp::Mul => a * b,
        ScalarOp::Neg => -a,
        ScalarOp::Inv => a.inv()?,
    })
}

/// Series operation selector for [`poly_arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SeriesOp {
    Add,
    Mul,
    Scale(ExtScalar),
}

/// `f + g`, `f · g` or `c · f`; mixed frames are a usage error.
pub fn poly_arith(f: &PolySeries, g: &PolySeries, op: &SeriesOp) -> crate::Result<PolySeries> {
    match op {
        SeriesOp::Add => f.try_add(g),
        SeriesOp::Mul => f.try_mul(g),
        SeriesOp::Scale(c) => Ok(f.scale(c)),
    }
}

pub fn coeff_of_z(f: &PolySeries, n: u32) -> PolySeries {
    f.coeff_of_z(n)
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, VarFrame};
use super::scalar::ExtScalar;
use crate::error::{usage, Result};
#[cfg(feature = "parallel")]
use crate::parallel;
use crate::stats;

/// Cap value meaning "no truncation" for a grading variable.
pub const UNBOUNDED: u32 = u32::MAX;

/// Sparse truncated polynomial in phase-space variables, `ε` and the ancillary `z`.
///
/// Terms are kept sorted by [`Monomial`] order with no zero coefficients, and
/// every stored monomial respects `eps_cap` / `z_cap`. Products drop
/// out-of-cap terms while they are formed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySeries {
    frame: VarFrame,
    terms: Vec<(Monomial, ExtScalar)>,
    eps_cap: u32,
    z_cap: u32,
}

pub(crate) type TermMap = FxHashMap<Monomial, ExtScalar>;

pub(crate) fn accumulate(map: &mut TermMap, m: Monomial, c: ExtScalar) {
    use std::collections::hash_map::Entry;
    match map.entry(m) {
        Entry::Occupied(mut e) => *e.get_mut() += &c,
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

#[cfg(feature = "parallel")]
fn merge_maps(mut a: TermMap, mut b: TermMap) -> TermMap {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (m, c) in b {
        accumulate(&mut a, m, c);
    }
    a
}

fn within(m: &Monomial, eps_cap: u32, z_cap: u32) -> bool {
    (m.eps() as u32) <= eps_cap && (m.z() as u32) <= z_cap
}

impl PolySeries {
    pub fn zero(frame: VarFrame) -> Self {
        PolySeries {
            frame,
            terms: Vec::new(),
            eps_cap: UNBOUNDED,
            z_cap: UNBOUNDED,
        }
    }

    pub fn constant(frame: VarFrame, c: ExtScalar) -> Self {
        Self::monomial(frame, Monomial::one(), c)
    }

    pub fn monomial(frame: VarFrame, m: Monomial, c: ExtScalar) -> Self {
        let mut s = Self::zero(frame);
        if !c.is_zero() {
            s.terms.push((m, c));
        }
        s
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(frame: VarFrame, terms: impl IntoIterator<Item = (Monomial, ExtScalar)>) -> Self {
        let mut map = TermMap::default();
        for (m, c) in terms {
            accumulate(&mut map, m, c);
        }
        Self::from_map(frame, map, UNBOUNDED, UNBOUNDED)
    }

    fn from_map(frame: VarFrame, map: TermMap, eps_cap: u32, z_cap: u32) -> Self {
        let mut terms: Vec<_> = map
            .into_iter()
            .filter(|(m, c)| !c.is_zero() && within(m, eps_cap, z_cap))
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        stats::record_terms(terms.len());
        PolySeries {
            frame,
            terms,
            eps_cap,
            z_cap,
        }
    }

    /// Builds from terms already strictly sorted and non-zero.
    pub(crate) fn from_sorted(frame: VarFrame, terms: Vec<(Monomial, ExtScalar)>, eps_cap: u32, z_cap: u32) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(m, c)| !c.is_zero() && within(m, eps_cap, z_cap)));
        PolySeries {
            frame,
            terms,
            eps_cap,
            z_cap,
        }
    }

    pub fn frame(&self) -> VarFrame {
        self.frame
    }

    pub fn eps_cap(&self) -> u32 {
        self.eps_cap
    }

    pub fn z_cap(&self) -> u32 {
        self.z_cap
    }

    pub fn terms(&self) -> &[(Monomial, ExtScalar)] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Monomial, ExtScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&ExtScalar> {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(m))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Highest ε power present, if any.
    pub fn max_eps(&self) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m.eps()).max()
    }

    pub fn is_eps_free(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.eps() == 0)
    }

    pub fn is_z_free(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.z() == 0)
    }

    /// Lowers the caps (never raises them) and drops terms now out of range.
    pub fn truncate(&self, eps_cap: u32, z_cap: u32) -> Self {
        let eps_cap = eps_cap.min(self.eps_cap);
        let z_cap = z_cap.min(self.z_cap);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| within(m, eps_cap, z_cap))
            .cloned()
            .collect();
        Self::from_sorted(self.frame, terms, eps_cap, z_cap)
    }

    /// Replaces the caps outright; terms beyond the new caps are dropped.
    pub fn with_caps(&self, eps_cap: u32, z_cap: u32) -> Self {
        let mut out = self.truncate(eps_cap, z_cap);
        out.eps_cap = eps_cap;
        out.z_cap = z_cap;
        out
    }

    pub(crate) fn same_frame(&self, other: &PolySeries) -> Result<()> {
        if self.frame != other.frame {
            return usage(format!(
                "cannot combine series in frames {:?} and {:?}",
                self.frame, other.frame
            ));
        }
        Ok(())
    }

    /// Sum; caps become the minimum of the operands'.
    pub fn try_add(&self, other: &PolySeries) -> Result<Self> {
        self.same_frame(other)?;
        Ok(self.merge_with(other, false))
    }

    pub fn try_sub(&self, other: &PolySeries) -> Result<Self> {
        self.same_frame(other)?;
        Ok(self.merge_with(other, true))
    }

    fn merge_with(&self, other: &PolySeries, negate: bool) -> Self {
        let eps_cap = self.eps_cap.min(other.eps_cap);
        let z_cap = self.z_cap.min(other.z_cap);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |c: &ExtScalar| if negate { -c } else { c.clone() };
        while i < a.len() || j < b.len() {
            let pick = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            let (m, c) = match pick {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (a[i - 1].0, a[i - 1].1.clone())
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (b[j - 1].0, rhs(&b[j - 1].1))
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    let mut c = a[i - 1].1.clone();
                    if negate {
                        c -= &b[j - 1].1;
                    } else {
                        c += &b[j - 1].1;
                    }
                    (a[i - 1].0, c)
                }
            };
            if !c.is_zero() && within(&m, eps_cap, z_cap) {
                out.push((m, c));
            }
        }
        Self::from_sorted(self.frame, out, eps_cap, z_cap)
    }

    pub fn scale(&self, c: &ExtScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.frame).with_caps(self.eps_cap, self.z_cap);
        }
        self.map_coeffs(|_, x| x * c)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.map_coeffs(|_, x| x.scale(q))
    }

    /// Scales by the fraction `num/den`.
    pub fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.scale_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Rewrites every coefficient in place of its monomial; zero results are dropped.
    pub fn map_coeffs(&self, f: impl Fn(&Monomial, &ExtScalar) -> ExtScalar) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = f(m, c);
                (!v.is_zero()).then_some((*m, v))
            })
            .collect();
        Self::from_sorted(self.frame, terms, self.eps_cap, self.z_cap)
    }

    /// Keeps the terms selected by `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect();
        Self::from_sorted(self.frame, terms, self.eps_cap, self.z_cap)
    }

    /// Maps each term to a new monomial and coefficient; collisions are summed.
    pub fn remap(&self, f: impl Fn(&Monomial, &ExtScalar) -> Option<(Monomial, ExtScalar)>) -> Self {
        let mut map = TermMap::default();
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                accumulate(&mut map, m2, c2);
            }
        }
        Self::from_map(self.frame, map, self.eps_cap, self.z_cap)
    }

    /// Product, discarding terms beyond the smaller of each pair of caps as they form.
    pub fn try_mul(&self, other: &PolySeries) -> Result<Self> {
        self.same_frame(other)?;
        let eps_cap = self.eps_cap.min(other.eps_cap);
        let z_cap = self.z_cap.min(other.z_cap);
        Ok(self.bilinear(other, eps_cap, z_cap, |ma, ca, mb, cb, out| {
            let m = ma.mul(mb);
            if within(&m, eps_cap, z_cap) {
                accumulate(out, m, ca * cb);
            }
        }))
    }

    /// Same as [`try_mul`](Self::try_mul) but never fans out to worker threads.
    pub fn mul_sequential(&self, other: &PolySeries) -> Result<Self> {
        self.same_frame(other)?;
        let eps_cap = self.eps_cap.min(other.eps_cap);
        let z_cap = self.z_cap.min(other.z_cap);
        let mut map = TermMap::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if within(&m, eps_cap, z_cap) {
                    accumulate(&mut map, m, ca * cb);
                }
            }
        }
        Ok(Self::from_map(self.frame, map, eps_cap, z_cap))
    }

    /// Generic pairwise product over all term pairs. `kernel` pushes the
    /// contributions of one pair into the accumulator.
    pub(crate) fn bilinear<K>(&self, other: &PolySeries, eps_cap: u32, z_cap: u32, kernel: K) -> Self
    where
        K: Fn(&Monomial, &ExtScalar, &Monomial, &ExtScalar, &mut TermMap) + Sync,
    {
        let run = |chunk: &[(Monomial, ExtScalar)]| {
            let mut map = TermMap::default();
            for (ma, ca) in chunk {
                for (mb, cb) in &other.terms {
                    kernel(ma, ca, mb, cb, &mut map);
                }
            }
            map
        };
        let work = self.terms.len() * other.terms.len();
        #[cfg(feature = "parallel")]
        {
            if parallel::enabled() && work >= parallel::MIN_PARALLEL_WORK && self.terms.len() > 1 {
                use rayon::prelude::*;
                let chunk = (self.terms.len() / (4 * rayon::current_num_threads())).max(1);
                let map = self
                    .terms
                    .par_chunks(chunk)
                    .map(run)
                    .reduce(TermMap::default, merge_maps);
                return Self::from_map(self.frame, map, eps_cap, z_cap);
            }
        }
        let _ = work;
        Self::from_map(self.frame, run(&self.terms), eps_cap, z_cap)
    }

    /// Coefficient of `z^n`, returned z-free.
    pub fn coeff_of_z(&self, n: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.z() as u32 == n)
            .map(|(m, c)| (m.with_z(0), c.clone()))
            .collect();
        Self::from_sorted(self.frame, terms, self.eps_cap, self.z_cap)
    }

    /// Coefficient of `ε^n`, returned ε-free.
    pub fn coeff_of_eps(&self, n: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.eps() as u32 == n)
            .map(|(m, c)| (m.with_eps(0), c.clone()))
            .collect();
        Self::from_sorted(self.frame, terms, UNBOUNDED, self.z_cap)
    }

    /// ε-components `[F_0, .., F_max]` with `F = Σ ε^n F_n`.
    pub fn eps_parts(&self, max: u32) -> Vec<PolySeries> {
        (0..=max).map(|n| self.coeff_of_eps(n)).collect()
    }

    /// Multiplies by `ε^k`, dropping what exceeds the ε cap.
    pub fn shift_eps(&self, k: u32) -> Self {
        let cap = self.eps_cap;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.eps() as u32 + k <= cap)
            .map(|(m, c)| (m.with_eps(m.eps() + k as u16), c.clone()))
            .collect();
        Self::from_sorted(self.frame, terms, self.eps_cap, self.z_cap)
    }

    /// Divides by `ε^k`; every term must carry at least `ε^k`.
    pub fn unshift_eps(&self, k: u32) -> Option<Self> {
        if self.terms.iter().any(|(m, _)| (m.eps() as u32) < k) {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_eps(m.eps() - k as u16), c.clone()))
            .collect();
        let cap = if self.eps_cap == UNBOUNDED {
            UNBOUNDED
        } else {
            self.eps_cap - k
        };
        Some(Self::from_sorted(self.frame, terms, cap, self.z_cap))
    }

    /// Σ ε^n parts[n], truncated at `eps_cap`.
    pub fn from_eps_parts(frame: VarFrame, parts: &[PolySeries], eps_cap: u32) -> Self {
        let mut terms = Vec::new();
        for (n, p) in parts.iter().enumerate() {
            if n as u32 > eps_cap {
                break;
            }
            for (m, c) in p.iter() {
                terms.push((m.with_eps(m.eps() + n as u16), c.clone()));
            }
        }
        Self::from_terms(frame, terms).with_caps(eps_cap, UNBOUNDED)
    }

    /// Formats in the series text grammar, e.g. `1/2 * q1^2 + -1/3 * q2^3`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PolySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * ")?;
            m.fmt_in(&self.frame, f)?;
        }
        Ok(())
    }
}

impl Add for &PolySeries {
    type Output = PolySeries;
    /// Panics on frame mismatch; see [`PolySeries::try_add`].
    fn add(self, o: &PolySeries) -> PolySeries {
        self.try_add(o).expect("series frames must match")
    }
}

impl Sub for &PolySeries {
    type Output = PolySeries;
    fn sub(self, o: &PolySeries) -> PolySeries {
        self.try_sub(o).expect("series frames must match")
    }
}

impl Mul for &PolySeries {
    type Output = PolySeries;
    fn mul(self, o: &PolySeries) -> PolySeries {
        self.try_mul(o).expect("series frames must match")
    }
}

impl Neg for &PolySeries {
    type Output = PolySeries;
    fn neg(self) -> PolySeries {
        self.map_coeffs(|_, c| -c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_series;

    fn pq1(src: &str) -> PolySeries {
        parse_series(src, VarFrame::pq(1)).unwrap()
    }

    #[test]
    fn product_truncates_eps() {
        let f = pq1("1 * q1 + 1 * eps*q1^2").with_caps(1, UNBOUNDED);
        let g = pq1("1 * q1");
        assert_eq!(&f * &g, pq1("1 * q1^2 + 1 * eps*q1^3").with_caps(1, UNBOUNDED));

        let e = pq1("1 * eps*q1").with_caps(1, UNBOUNDED);
        assert!((&e * &e).is_zero());
    }

    #[test]
    fn scale_by_half() {
        let f = pq1("1 * q1^2 + 1 * p1^2");
        assert_eq!(f.scale_ratio(1, 2), pq1("1/2 * q1^2 + 1/2 * p1^2"));
    }

    #[test]
    fn coefficient_of_z() {
        let b = VarFrame::birkhoff(1);
        let f = parse_series("-1 * zeta1*eta1 + -i*1/2 * z*zeta1^2", b).unwrap();
        assert_eq!(f.coeff_of_z(1), parse_series("-i*1/2 * zeta1^2", b).unwrap());

        let pure_z = parse_series("1 * z + 3 * z^2", b).unwrap();
        assert!(pure_z.coeff_of_z(0).is_zero());

        let g = parse_series("1 + 1 * z*zeta1 + 1 * z^2*zeta1^2 + 1 * z^3*zeta1^3", b).unwrap();
        assert_eq!(g.coeff_of_z(2), parse_series("1 * zeta1^2", b).unwrap());
    }

    #[test]
    fn mixed_frames_rejected() {
        let a = PolySeries::zero(VarFrame::pq(1));
        let b = PolySeries::zero(VarFrame::birkhoff(1));
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
        assert!(PolySeries::zero(VarFrame::pq(2)).try_mul(&a).is_err());
    }

    #[test]
    fn sub_cancels_to_zero() {
        let f = pq1("3/4*r2 * q1^3 + i*2 * p1");
        assert!((&f - &f).is_zero());
    }
}

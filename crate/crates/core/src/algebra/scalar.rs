//! Exact scalars in Q(i)[√2].
//!
//! An [`ExtScalar`] is `(re_r + re_s·√2) + i·(im_r + im_s·√2)` with four
//! rational components. The Birkhoff substitution only ever introduces `i` and
//! `1/√2`, so every series in this crate stays inside this field.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Element of Q[√2]: `r + s·√2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct Surd {
    r: BigRational,
    s: BigRational,
}

impl Surd {
    fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    fn mul(&self, o: &Surd) -> Surd {
        if self.is_zero() || o.is_zero() {
            return Surd::default();
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mut r = BigRational::zero();
        let mut s = BigRational::zero();
        if !self.r.is_zero() {
            if !o.r.is_zero() {
                r += &self.r * &o.r;
            }
            if !o.s.is_zero() {
                s += &self.r * &o.s;
            }
        }
        if !self.s.is_zero() {
            if !o.s.is_zero() {
                r += &self.s * &o.s * &two;
            }
            if !o.r.is_zero() {
                s += &self.s * &o.r;
            }
        }
        Surd { r, s }
    }

    fn add_assign(&mut self, o: &Surd) {
        if !o.r.is_zero() {
            self.r += &o.r;
        }
        if !o.s.is_zero() {
            self.s += &o.s;
        }
    }

    fn sub_assign(&mut self, o: &Surd) {
        if !o.r.is_zero() {
            self.r -= &o.r;
        }
        if !o.s.is_zero() {
            self.s -= &o.s;
        }
    }

    fn neg(&self) -> Surd {
        Surd {
            r: -&self.r,
            s: -&self.s,
        }
    }

    fn scale(&self, q: &BigRational) -> Surd {
        Surd {
            r: &self.r * q,
            s: &self.s * q,
        }
    }

    /// Inverse via the conjugate `r − s√2`. Caller guarantees non-zero.
    fn inv(&self) -> Surd {
        let two = BigRational::from_integer(BigInt::from(2));
        let norm = &self.r * &self.r - &self.s * &self.s * &two;
        Surd {
            r: &self.r / &norm,
            s: -&self.s / &norm,
        }
    }
}

/// Exact element of Q(i)[√2].
///
/// Components are `num_rational` big rationals, which are always reduced with a
/// positive denominator, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExtScalar {
    re: Surd,
    im: Surd,
}

impl ExtScalar {
    pub fn new(re_r: BigRational, re_s: BigRational, im_r: BigRational, im_s: BigRational) -> Self {
        ExtScalar {
            re: Surd { r: re_r, s: re_s },
            im: Surd { r: im_r, s: im_s },
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(
            BigRational::zero(),
            BigRational::zero(),
            BigRational::one(),
            BigRational::zero(),
        )
    }

    pub fn sqrt2() -> Self {
        Self::new(
            BigRational::zero(),
            BigRational::one(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(q, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn re_r(&self) -> &BigRational {
        &self.re.r
    }
    pub fn re_s(&self) -> &BigRational {
        &self.re.s
    }
    pub fn im_r(&self) -> &BigRational {
        &self.im.r
    }
    pub fn im_s(&self) -> &BigRational {
        &self.im.s
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.r.is_one() && self.re.s.is_zero() && self.im.is_zero()
    }

    /// Returns the value as a rational when it has no `i` or `√2` part.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.re.s.is_zero() && self.im.is_zero()).then_some(&self.re.r)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        ExtScalar {
            re: self.re.scale(q),
            im: self.im.scale(q),
        }
    }

    /// Multiplies by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => ExtScalar {
                re: self.im.neg(),
                im: self.re.clone(),
            },
            2 => -self,
            _ => ExtScalar {
                re: self.im.clone(),
                im: self.re.neg(),
            },
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        // (x + iy)^-1 = (x - iy) / (x² + y²), with x² + y² > 0 in Q[√2] ⊂ R.
        let norm = self.re.mul(&self.re);
        let mut norm = norm;
        norm.add_assign(&self.im.mul(&self.im));
        let ni = norm.inv();
        Ok(ExtScalar {
            re: self.re.mul(&ni),
            im: self.im.neg().mul(&ni),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtScalar({self})")
    }
}

impl Add for &ExtScalar {
    type Output = ExtScalar;
    fn add(self, o: &ExtScalar) -> ExtScalar {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl Add for ExtScalar {
    type Output = ExtScalar;
    fn add(mut self, o: ExtScalar) -> ExtScalar {
        self += &o;
        self
    }
}

impl AddAssign<&ExtScalar> for ExtScalar {
    fn add_assign(&mut self, o: &ExtScalar) {
        self.re.add_assign(&o.re);
        self.im.add_assign(&o.im);
    }
}

impl SubAssign<&ExtScalar> for ExtScalar {
    fn sub_assign(&mut self, o: &ExtScalar) {
        self.re.sub_assign(&o.re);
        self.im.sub_assign(&o.im);
    }
}

impl Sub for &ExtScalar {
    type Output = ExtScalar;
    fn sub(self, o: &ExtScalar) -> ExtScalar {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Sub for ExtScalar {
    type Output = ExtScalar;
    fn sub(mut self, o: ExtScalar) -> ExtScalar {
        self -= &o;
        self
    }
}

impl Mul for &ExtScalar {
    type Output = ExtScalar;
    fn mul(self, o: &ExtScalar) -> ExtScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return ExtScalar {
                re: self.re.mul(&o.re),
                im: Surd::default(),
            };
        }
        let mut re = self.re.mul(&o.re);
        re.sub_assign(&self.im.mul(&o.im));
        let mut im = self.re.mul(&o.im);
        im.add_assign(&self.im.mul(&o.re));
        ExtScalar { re, im }
    }
}

impl Mul for ExtScalar {
    type Output = ExtScalar;
    fn mul(self, o: ExtScalar) -> ExtScalar {
        &self * &o
    }
}

impl MulAssign<&ExtScalar> for ExtScalar {
    fn mul_assign(&mut self, o: &ExtScalar) {
        *self = &*self * o;
    }
}

impl Neg for &ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

impl Neg for ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        -&self
    }
}

impl From<BigRational> for ExtScalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for ExtScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Prints in the `a/b`, `a/b*r2`, `i*a/b`, `i*a/b*r2` sum grammar, e.g. `1/2+i*1/2`.
impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (&self.re.r, false, false),
            (&self.re.s, false, true),
            (&self.im.r, true, false),
            (&self.im.s, true, true),
        ];
        let mut first = true;
        for (q, imag, surd) in parts {
            if q.is_zero() {
                continue;
            }
            if q.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if imag {
                f.write_str("i*")?;
            }
            write!(f, "{}", q.abs())?;
            if surd {
                f.write_str("*r2")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for ExtScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

fn parse_err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

/// Parses the scalar grammar. Accepts signed sums of parts
/// `[i*]INT[/INT][*r2]`, with bare `i` and `r2` standing for unit factors.
pub fn parse_scalar(src: &str) -> Result<ExtScalar> {
    let bytes = src.as_bytes();
    let mut pos = 0usize;
    let mut acc = ExtScalar::zero();
    let mut parts = 0;

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return parse_err(pos, "empty coefficient");
    }
    while pos < bytes.len() {
        let mut negative = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            negative = bytes[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if parts > 0 {
            return parse_err(pos, "expected '+' or '-' between coefficient parts");
        }

        let mut imag = false;
        let mut surd = false;
        let mut value: Option<BigRational> = None;

        if src[pos..].starts_with("i*") {
            imag = true;
            pos += 2;
        } else if src[pos..].starts_with('i') {
            imag = true;
            pos += 1;
            value = Some(BigRational::one());
        }

        if value.is_none() {
            if src[pos..].starts_with("r2") {
                surd = true;
                pos += 2;
                value = Some(BigRational::one());
            } else {
                let (q, next) = parse_rational(src, pos)?;
                value = Some(q);
                pos = next;
            }
        }
        if !surd && src[pos..].starts_with("*r2") {
            surd = true;
            pos += 3;
        }

        let mut q = value.expect("value set above");
        if negative {
            q = -q;
        }
        let mut part = ExtScalar::zero();
        match (imag, surd) {
            (false, false) => part.re.r = q,
            (false, true) => part.re.s = q,
            (true, false) => part.im.r = q,
            (true, true) => part.im.s = q,
        }
        acc += &part;
        parts += 1;
        skip_ws(&mut pos);
    }
    Ok(acc)
}

/// Parses `INT` or `INT/INT` starting at `pos`; returns the value and the end offset.
pub(crate) fn parse_rational(src: &str, pos: usize) -> Result<(BigRational, usize)> {
    let bytes = src.as_bytes();
    let digits = |start: usize| {
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        end
    };
    let end = digits(pos);
    if end == pos {
        return parse_err(pos, "expected an integer");
    }
    let num: BigInt = src[pos..end].parse().expect("ascii digits");
    if end < bytes.len() && bytes[end] == b'/' {
        let dstart = end + 1;
        let dend = digits(dstart);
        if dend == dstart {
            return parse_err(dstart, "expected a denominator after '/'");
        }
        let den: BigInt = src[dstart..dend].parse().expect("ascii digits");
        if den.is_zero() {
            return parse_err(dstart, "zero denominator");
        }
        return Ok((BigRational::new(num, den), dend));
    }
    Ok((BigRational::from_integer(num), end))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ExtScalar {
        x.parse().unwrap()
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let r2 = ExtScalar::sqrt2();
        assert_eq!(&r2 * &r2, ExtScalar::from_int(2));
    }

    #[test]
    fn gaussian_norm() {
        let a = s("1+i");
        let b = s("1-i");
        assert_eq!(&a * &b, ExtScalar::from_int(2));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let a = s("1+r2");
        let inv = a.inv().unwrap();
        assert_eq!(inv, s("-1+r2"));
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        assert!(matches!(ExtScalar::zero().inv(), Err(Error::Domain(_))));
    }

    #[test]
    fn mixed_inverse_round_trips() {
        let a = s("3/4-2/5*r2+i*1/7+i*5/3*r2");
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn powers_of_i() {
        let x = s("2+i*3*r2");
        assert_eq!(x.mul_i_pow(1), &x * &ExtScalar::i());
        assert_eq!(x.mul_i_pow(2), -&x);
        assert_eq!(x.mul_i_pow(3), -(&x * &ExtScalar::i()));
        assert_eq!(x.mul_i_pow(4), x);
    }

    #[test]
    fn display_grammar() {
        assert_eq!(ExtScalar::ratio(-1, 64).to_string(), "-1/64");
        assert_eq!(s("1/2+i*1/2").to_string(), "1/2+i*1/2");
        assert_eq!(s("3/4*r2").to_string(), "3/4*r2");
        assert_eq!(ExtScalar::zero().to_string(), "0");
        assert_eq!(s("-i*2/6*r2").to_string(), "-i*1/3*r2");
        assert_eq!(s("i").to_string(), "i*1");
    }

    #[test]
    fn malformed_coefficients() {
        assert!(matches!("1/".parse::<ExtScalar>(), Err(Error::Parse { offset: 2, .. })));
        assert!("".parse::<ExtScalar>().is_err());
        assert!("1/0".parse::<ExtScalar>().is_err());
        assert!("1 2".parse::<ExtScalar>().is_err());
        assert!("x".parse::<ExtScalar>().is_err());
    }
}

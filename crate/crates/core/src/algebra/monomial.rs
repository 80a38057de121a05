use std::fmt;

/// Largest phase-space dimension `d` a series can carry.
pub const MAX_DIM: usize = 6;
const MAX_VARS: usize = 2 * MAX_DIM;

/// Which canonical variables a series is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Real `q_1..q_d, p_1..p_d`.
    Pq,
    /// Complex Birkhoff pairs `ζ_1..ζ_d, η_1..η_d`.
    Birkhoff,
}

/// Variable set of a series: dimension plus kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarFrame {
    dim: usize,
    kind: VarKind,
}

impl VarFrame {
    /// Panics unless `1 <= dim <= MAX_DIM`.
    pub fn new(dim: usize, kind: VarKind) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "phase-space dimension {dim} outside 1..={MAX_DIM}"
        );
        VarFrame { dim, kind }
    }

    pub fn pq(dim: usize) -> Self {
        Self::new(dim, VarKind::Pq)
    }

    pub fn birkhoff(dim: usize) -> Self {
        Self::new(dim, VarKind::Birkhoff)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn with_kind(&self, kind: VarKind) -> Self {
        VarFrame { dim: self.dim, kind }
    }

    /// Name of the coordinate-like variable `k` (0-based): `q{k+1}` or `zeta{k+1}`.
    pub fn coord_name(&self, k: usize) -> String {
        match self.kind {
            VarKind::Pq => format!("q{}", k + 1),
            VarKind::Birkhoff => format!("zeta{}", k + 1),
        }
    }

    /// Name of the momentum-like variable `k` (0-based): `p{k+1}` or `eta{k+1}`.
    pub fn momentum_name(&self, k: usize) -> String {
        match self.kind {
            VarKind::Pq => format!("p{}", k + 1),
            VarKind::Birkhoff => format!("eta{}", k + 1),
        }
    }
}

/// Monomial `ε^eps · z^z · Π x_k^{a_k} y_k^{b_k}`.
///
/// Exponents are laid out as `[x_1..x_d, y_1..y_d]` where `x` is `q` (or `ζ`)
/// and `y` is `p` (or `η`); slots past `2d` stay zero. The derived ordering
/// compares the ε power, then the z power, then the exponent vector
/// lexicographically, and is the iteration order of every series.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    eps: u16,
    z: u16,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from `[x_1..x_d, y_1..y_d]`. Panics if `exps.len()` is odd or too long.
    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len().is_multiple_of(2) && exps.len() <= MAX_VARS, "bad exponent vector");
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    /// Pure `x_k^a y_k^b` in dimension `d`.
    pub fn pair(d: usize, k: usize, a: u16, b: u16) -> Self {
        let mut m = Monomial::default();
        m.exps[k] = a;
        m.exps[d + k] = b;
        m
    }

    pub fn eps(&self) -> u16 {
        self.eps
    }

    pub fn z(&self) -> u16 {
        self.z
    }

    pub fn with_eps(mut self, eps: u16) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_z(mut self, z: u16) -> Self {
        self.z = z;
        self
    }

    /// Exponent of `x_k` (`q_k` or `ζ_k`).
    pub fn coord(&self, k: usize) -> u16 {
        self.exps[k]
    }

    /// Exponent of `y_k` (`p_k` or `η_k`) in dimension `d`.
    pub fn momentum(&self, d: usize, k: usize) -> u16 {
        self.exps[d + k]
    }

    pub fn exps(&self, d: usize) -> &[u16] {
        &self.exps[..2 * d]
    }

    /// Total phase-space degree, ignoring ε and z.
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// True when only ε and z appear.
    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Monomial {
            eps: self.eps + o.eps,
            z: self.z + o.z,
            exps: self.exps,
        };
        for (a, b) in out.exps.iter_mut().zip(o.exps.iter()) {
            *a += *b;
        }
        out
    }

    /// Product with `x_k y_k` removed; both exponents must be positive in the product.
    pub(crate) fn mul_drop_pair(&self, o: &Monomial, d: usize, k: usize) -> Monomial {
        let mut out = self.mul(o);
        out.exps[k] -= 1;
        out.exps[d + k] -= 1;
        out
    }

    /// Writes the monomial in the text grammar (`eps^2*z*q1^2*p1`, `1` for unity).
    pub fn fmt_in(&self, frame: &VarFrame, f: &mut impl fmt::Write) -> fmt::Result {
        let d = frame.dim();
        let mut factors: Vec<(String, u16)> = Vec::new();
        if self.eps > 0 {
            factors.push(("eps".into(), self.eps));
        }
        if self.z > 0 {
            factors.push(("z".into(), self.z));
        }
        for k in 0..d {
            if self.exps[k] > 0 {
                factors.push((frame.coord_name(k), self.exps[k]));
            }
            if self.exps[d + k] > 0 {
                factors.push((frame.momentum_name(k), self.exps[d + k]));
            }
        }
        if factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (name, e)) in factors.iter().enumerate() {
            if i > 0 {
                f.write_char('*')?;
            }
            f.write_str(name)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    pub fn display_in(&self, frame: &VarFrame) -> String {
        let mut s = String::new();
        self.fmt_in(frame, &mut s).expect("writing to String");
        s
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial(eps={}, z={}, exps={:?})", self.eps, self.z, self.exps)
    }
}

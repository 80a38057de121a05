use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{PolySeries, VarFrame, VarKind, UNBOUNDED};
use crate::canonical::to_birkhoff;
use crate::error::{usage, Result};
use crate::operators::Frequencies;

/// `H = H_0 + Σ_{k≥1} ε^k H_k` with harmonic `H_0 = Σ i ω_k ζ_k η_k`.
///
/// Perturbation terms are stored ε-free and z-free in the Birkhoff frame;
/// pq input is converted on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianModel {
    name: String,
    omega: Frequencies,
    terms: Vec<PolySeries>,
    hori_power: u32,
}

impl HamiltonianModel {
    /// `terms[k-1]` is `H_k`, in either frame.
    pub fn new(name: impl Into<String>, omega: Frequencies, terms: Vec<PolySeries>) -> Result<Self> {
        let d = omega.dim();
        let mut out = Vec::with_capacity(terms.len());
        for (i, t) in terms.into_iter().enumerate() {
            if t.frame().dim() != d {
                return usage(format!(
                    "H{} has dimension {}, frequencies have {}",
                    i + 1,
                    t.frame().dim(),
                    d
                ));
            }
            if !t.is_eps_free() || !t.is_z_free() {
                return usage(format!("H{} must not contain eps or z", i + 1));
            }
            let t = match t.frame().kind() {
                VarKind::Pq => to_birkhoff(&t)?,
                VarKind::Birkhoff => t,
            };
            out.push(t.with_caps(UNBOUNDED, UNBOUNDED));
        }
        Ok(HamiltonianModel {
            name: name.into(),
            omega,
            terms: out,
            hori_power: 1,
        })
    }

    /// Sets the leading ε power `s` of the Hori integral.
    pub fn with_hori_power(mut self, s: u32) -> Self {
        self.hori_power = s;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn omega(&self) -> &Frequencies {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn frame(&self) -> VarFrame {
        VarFrame::birkhoff(self.dim())
    }

    pub fn hori_power(&self) -> u32 {
        self.hori_power
    }

    /// `[H_1, H_2, ..]` in the Birkhoff frame.
    pub fn terms(&self) -> &[PolySeries] {
        &self.terms
    }

    /// Number of stored perturbation terms.
    pub fn max_order(&self) -> usize {
        self.terms.len()
    }

    /// `H_k` for `k ≥ 1`; `None` past the stored terms.
    pub fn term(&self, k: usize) -> Option<&PolySeries> {
        if k == 0 {
            return None;
        }
        self.terms.get(k - 1)
    }

    /// `H_k` for any `k ≥ 0`, with `H_0` the harmonic part and zero past the stored terms.
    pub fn term_or_zero(&self, k: usize) -> PolySeries {
        if k == 0 {
            return self.h0();
        }
        self.term(k).cloned().unwrap_or_else(|| PolySeries::zero(self.frame()))
    }

    pub fn h0(&self) -> PolySeries {
        self.omega.h0()
    }

    /// `Σ_{k=1..order} ε^k H_k`, truncated at `ε^order`.
    pub fn perturbation(&self, order: u32) -> PolySeries {
        let mut parts = vec![PolySeries::zero(self.frame())];
        parts.extend(self.terms.iter().take(order as usize).cloned());
        PolySeries::from_eps_parts(self.frame(), &parts, order)
    }

    /// `H_0 + Σ_{k=1..order} ε^k H_k`, truncated at `ε^order`.
    pub fn full_series(&self, order: u32) -> PolySeries {
        &self.perturbation(order) + &self.h0().with_caps(order, UNBOUNDED)
    }

    /// Copy keeping `H_1..H_order` only.
    pub fn truncated(&self, order: usize) -> Self {
        let mut m = self.clone();
        m.terms.truncate(order);
        m
    }
}

/// `∂H/∂ε = Σ_{k≥1} k ε^{k−1} H_k` truncated at `ε^{order−1}`.
pub fn dh_deps(h: &HamiltonianModel, order: u32) -> PolySeries {
    let cap = order.saturating_sub(1);
    let parts: Vec<PolySeries> = h
        .terms()
        .iter()
        .enumerate()
        .take(order as usize)
        .map(|(i, t)| t.scale_rational(&BigRational::from_integer(BigInt::from(i + 1))))
        .collect();
    PolySeries::from_eps_parts(h.frame(), &parts, cap)
}

/// Generator `G = Σ_{n≥0} ε^n G_n` in factorial-free form (`∂U/∂ε = U L_G`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSeries {
    frame: VarFrame,
    parts: Vec<PolySeries>,
}

impl GeneratorSeries {
    pub fn new(frame: VarFrame, parts: Vec<PolySeries>) -> Result<Self> {
        for (n, p) in parts.iter().enumerate() {
            if p.frame() != frame {
                return usage(format!("G{n} is not in the generator frame"));
            }
            if !p.is_eps_free() || !p.is_z_free() {
                return usage(format!("G{n} must not contain eps or z"));
            }
        }
        let parts = parts.into_iter().map(|p| p.with_caps(UNBOUNDED, UNBOUNDED)).collect();
        Ok(GeneratorSeries { frame, parts })
    }

    /// `G_0 = .. = G_{len−1} = 0`.
    pub fn zero(frame: VarFrame, len: usize) -> Self {
        GeneratorSeries {
            frame,
            parts: vec![PolySeries::zero(frame); len],
        }
    }

    pub fn frame(&self) -> VarFrame {
        self.frame
    }

    pub fn parts(&self) -> &[PolySeries] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&PolySeries> {
        self.parts.get(n)
    }

    /// `Σ ε^n G_n` as one series with `eps_cap = len − 1`.
    pub fn to_series(&self) -> PolySeries {
        let cap = self.parts.len().saturating_sub(1) as u32;
        PolySeries::from_eps_parts(self.frame, &self.parts, cap)
    }

    /// Keeps `G_0..G_{len−1}`.
    pub fn truncated(&self, len: usize) -> Self {
        let mut g = self.clone();
        g.parts.truncate(len);
        g
    }

    pub(crate) fn require(&self, order: u32, what: &str) -> Result<()> {
        if self.parts.len() < order as usize {
            return usage(format!(
                "{what} to order {order} needs G_0..G_{}, generator has {} parts",
                order.saturating_sub(1),
                self.parts.len()
            ));
        }
        Ok(())
    }
}

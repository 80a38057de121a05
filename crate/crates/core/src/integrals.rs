//! Formal integrals: center generators of the resonant algebra, Gustavson
//! integrals `I = U⁻¹ Ĩ`, and the Hori integral `ε^{−s}(H − U⁻¹ H_0)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{ExtScalar, Monomial, PolySeries, VarFrame, UNBOUNDED};
use crate::error::{usage, Error, Result};
use crate::normalize::{henrard_inverse, GeneratorSeries, HamiltonianModel, Normalization};
use crate::operators::{average, primitive, Frequencies};

/// Resonance vectors `D_k` with `(ω, D_k) = 0` and the orthogonal center vectors `β_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterBasis {
    pub resonance_vectors: Vec<Vec<BigInt>>,
    pub betas: Vec<Vec<BigInt>>,
}

impl CenterBasis {
    /// `Ĩ_m = Σ_j β_{mj} ζ_j η_j`, one per `β_m`.
    pub fn integrals(&self) -> Vec<PolySeries> {
        self.betas
            .iter()
            .map(|b| {
                let d = b.len();
                PolySeries::from_terms(
                    VarFrame::birkhoff(d),
                    b.iter().enumerate().map(|(j, x)| {
                        (
                            Monomial::pair(d, j, 1, 1),
                            ExtScalar::from_rational(BigRational::from_integer(x.clone())),
                        )
                    }),
                )
            })
            .collect()
    }
}

/// Integer basis of `{x : rows · x = 0}`, one primitive vector per free
/// column of the reduced row echelon form.
fn integer_kernel(rows: &[Vec<BigRational>], d: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..d {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..d {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..d).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); d];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        out.push(primitive(&ints));
    }
    out
}

/// Resonance vectors of `ω` and the center vectors orthogonal to all of them.
pub fn center_generators(omega: &Frequencies) -> CenterBasis {
    let d = omega.dim();
    let resonance_vectors = integer_kernel(&[omega.values().to_vec()], d);
    let rows: Vec<Vec<BigRational>> = resonance_vectors
        .iter()
        .map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let betas = if rows.is_empty() {
        (0..d)
            .map(|k| (0..d).map(|j| if j == k { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    } else {
        integer_kernel(&rows, d)
    };
    CenterBasis {
        resonance_vectors,
        betas,
    }
}

fn require_secular(i_tilde: &PolySeries, omega: &Frequencies) -> Result<()> {
    if &average(i_tilde, omega)? != i_tilde {
        return usage("integral seed is not secular");
    }
    if !i_tilde.is_eps_free() {
        return usage("integral seed must not depend on eps");
    }
    Ok(())
}

/// `I = U_G⁻¹ Ĩ` for a secular seed `Ĩ`.
pub fn gustavson_integral(g: &GeneratorSeries, omega: &Frequencies, i_tilde: &PolySeries, order: u32) -> Result<PolySeries> {
    require_secular(i_tilde, omega)?;
    henrard_inverse(g, i_tilde, order)
}

/// Same as [`gustavson_integral`] using whichever transform `norm` built.
pub fn gustavson_integral_for(norm: &Normalization, omega: &Frequencies, i_tilde: &PolySeries) -> Result<PolySeries> {
    require_secular(i_tilde, omega)?;
    norm.pull_back(i_tilde)
}

fn hori_from(h: &HamiltonianModel, pulled_h0: PolySeries, order: u32, s: u32) -> Result<PolySeries> {
    if s > order {
        return usage(format!("Hori leading power {s} exceeds order {order}"));
    }
    let diff = &h.full_series(order) - &pulled_h0;
    let out = diff.unshift_eps(s).ok_or_else(|| {
        Error::Integrity(format!(
            "H − U⁻¹ H0 has terms below eps^{s}; wrong leading power or a broken generator"
        ))
    })?;
    Ok(out.with_caps(order - s, UNBOUNDED))
}

/// `I_H = ε^{−s}(H − U_G⁻¹ H_0)` through `ε^{N−s}`.
pub fn hori_integral(h: &HamiltonianModel, g: &GeneratorSeries, order: u32, s: u32) -> Result<PolySeries> {
    let pulled = henrard_inverse(g, &h.h0(), order)?;
    hori_from(h, pulled, order, s)
}

/// Same as [`hori_integral`] using whichever transform `norm` built.
pub fn hori_integral_for(h: &HamiltonianModel, norm: &Normalization, s: u32) -> Result<PolySeries> {
    let pulled = norm.pull_back(&h.h0())?;
    hori_from(h, pulled, norm.order, s)
}

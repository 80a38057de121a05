//! Poisson brackets, Liouvillians and the pq ↔ Birkhoff change of variables.
//!
//! The bracket is `[f, g] = Σ_k ∂f/∂x_k ∂g/∂y_k − ∂f/∂y_k ∂g/∂x_k` with
//! `(x, y) = (q, p)` in the real frame and `(ζ, η)` in the Birkhoff frame. With
//! `L_G F = [F, G]` this gives `L_{H_0} ζ^m η^n = i(ω, m − n) ζ^m η^n`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{accumulate, ExtScalar, Monomial, PolySeries, VarFrame, VarKind};
use crate::error::{usage, Result};
use crate::parallel;

/// Poisson bracket `[f, g]`. Both operands must share a frame.
pub fn poisson(f: &PolySeries, g: &PolySeries) -> Result<PolySeries> {
    f.same_frame(g)?;
    let d = f.frame().dim();
    let eps_cap = f.eps_cap().min(g.eps_cap());
    let z_cap = f.z_cap().min(g.z_cap());
    Ok(f.bilinear(g, eps_cap, z_cap, |ma, ca, mb, cb, out| {
        if (ma.eps() + mb.eps()) as u32 > eps_cap || (ma.z() + mb.z()) as u32 > z_cap {
            return;
        }
        let mut prod: Option<ExtScalar> = None;
        for k in 0..d {
            let w = ma.coord(k) as i64 * mb.momentum(d, k) as i64
                - ma.momentum(d, k) as i64 * mb.coord(k) as i64;
            if w == 0 {
                continue;
            }
            let c = prod.get_or_insert_with(|| ca * cb);
            let m = ma.mul_drop_pair(mb, d, k);
            let v = c.scale(&BigRational::from_integer(BigInt::from(w)));
            accumulate(out, m, v);
        }
    }))
}

/// `L_gen f = [f, gen]`.
pub fn liouville_apply(gen: &PolySeries, f: &PolySeries) -> Result<PolySeries> {
    poisson(f, gen)
}

fn linear(frame: VarFrame, parts: &[(Monomial, ExtScalar)]) -> PolySeries {
    PolySeries::from_terms(frame, parts.iter().cloned())
}

/// Substitutes each variable slot of `f` by `images[slot]` (series in `target`).
fn substitute(f: &PolySeries, target: VarFrame, images: &[PolySeries]) -> PolySeries {
    let d = target.dim();
    let mut max_exp = vec![0u16; 2 * d];
    for (m, _) in f.iter() {
        for (slot, e) in m.exps(d).iter().enumerate() {
            max_exp[slot] = max_exp[slot].max(*e);
        }
    }
    let powers: Vec<Vec<PolySeries>> = (0..2 * d)
        .map(|slot| {
            let mut v = vec![PolySeries::constant(target, ExtScalar::one())];
            for e in 1..=max_exp[slot] as usize {
                let next = &v[e - 1] * &images[slot];
                v.push(next);
            }
            v
        })
        .collect();

    let images_of_terms = parallel::map_collect(f.terms(), |(m, c)| {
        let grading = Monomial::one().with_eps(m.eps()).with_z(m.z());
        let mut acc = PolySeries::monomial(target, grading, c.clone());
        for (slot, &e) in m.exps(d).iter().enumerate() {
            if e > 0 {
                acc = &acc * &powers[slot][e as usize];
            }
        }
        acc
    });
    let mut all = Vec::new();
    for s in images_of_terms {
        all.extend(s.terms().iter().cloned());
    }
    PolySeries::from_terms(target, all).with_caps(f.eps_cap(), f.z_cap())
}

/// `q_k = (ζ_k + iη_k)/√2`, `p_k = i(ζ_k − iη_k)/√2`.
pub fn to_birkhoff(f: &PolySeries) -> Result<PolySeries> {
    if f.frame().kind() != VarKind::Pq {
        return usage("to_birkhoff expects a series in pq variables");
    }
    let d = f.frame().dim();
    let target = f.frame().with_kind(VarKind::Birkhoff);
    let h = "1/2*r2".parse::<ExtScalar>().expect("literal");
    let ih = h.mul_i_pow(1);
    let mut images = vec![PolySeries::zero(target); 2 * d];
    for k in 0..d {
        let zeta = Monomial::pair(d, k, 1, 0);
        let eta = Monomial::pair(d, k, 0, 1);
        images[k] = linear(target, &[(zeta, h.clone()), (eta, ih.clone())]);
        // i(ζ − iη)/√2 = iζ/√2 + η/√2
        images[d + k] = linear(target, &[(zeta, ih.clone()), (eta, h.clone())]);
    }
    Ok(substitute(f, target, &images))
}

/// Inverse of [`to_birkhoff`]: `ζ_k = (q_k − i p_k)/√2`, `η_k = (p_k − i q_k)/√2`.
pub fn from_birkhoff(f: &PolySeries) -> Result<PolySeries> {
    if f.frame().kind() != VarKind::Birkhoff {
        return usage("from_birkhoff expects a series in Birkhoff variables");
    }
    let d = f.frame().dim();
    let target = f.frame().with_kind(VarKind::Pq);
    let h = "1/2*r2".parse::<ExtScalar>().expect("literal");
    let mih = h.mul_i_pow(3);
    let mut images = vec![PolySeries::zero(target); 2 * d];
    for k in 0..d {
        let q = Monomial::pair(d, k, 1, 0);
        let p = Monomial::pair(d, k, 0, 1);
        images[k] = linear(target, &[(q, h.clone()), (p, mih.clone())]);
        images[d + k] = linear(target, &[(p, h.clone()), (q, mih.clone())]);
    }
    Ok(substitute(f, target, &images))
}

/// Converts `f` into `kind` (no-op if already there).
pub fn to_frame(f: &PolySeries, kind: VarKind) -> Result<PolySeries> {
    match (f.frame().kind(), kind) {
        (a, b) if a == b => Ok(f.clone()),
        (VarKind::Pq, VarKind::Birkhoff) => to_birkhoff(f),
        _ => from_birkhoff(f),
    }
}

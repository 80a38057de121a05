use super::model::{GeneratorSeries, HamiltonianModel};
use crate::algebra::PolySeries;
use crate::canonical::poisson;
use crate::error::{usage, Result};
use crate::parallel;

fn sum(frame: crate::algebra::VarFrame, parts: Vec<PolySeries>) -> PolySeries {
    parts
        .into_iter()
        .reduce(|a, b| &a + &b)
        .unwrap_or_else(|| PolySeries::zero(frame))
}

/// Lie-Deprit triangle for `U_G F` with `F` possibly ε-graded.
///
/// Row `N` holds `f_k = ε^k F`; going up,
/// `f_k ← f_k + 1/(n+1) [f_{n+1}, G_{n−k}]` for `k ≤ n`, and the result is `f_0`.
fn triangle(g: &GeneratorSeries, f: &PolySeries, order: u32) -> Result<PolySeries> {
    g.require(order, "direct transform")?;
    if f.frame() != g.frame() {
        return usage("function and generator are in different frames");
    }
    let f = f.truncate(order, crate::algebra::UNBOUNDED);
    let mut row: Vec<PolySeries> = (0..=order).map(|k| f.shift_eps(k)).collect();
    for n in (0..order as usize).rev() {
        let top = row[n + 1].clone();
        let ks: Vec<usize> = (0..=n).collect();
        let brackets = parallel::map_collect(&ks, |&k| poisson(&top, &g.parts()[n - k]));
        for (k, b) in brackets.into_iter().enumerate() {
            let b = b?.scale_ratio(1, n as i64 + 1);
            row[k] = &row[k] + &b;
        }
    }
    Ok(row.swap_remove(0))
}

/// Normalized Hamiltonian `H̃ = U_G H` to `O(ε^{N+1})`.
pub fn direct_transform(g: &GeneratorSeries, h: &HamiltonianModel, order: u32) -> Result<PolySeries> {
    triangle(g, &h.full_series(order), order)
}

/// `U_G f` to `O(ε^{N+1})`; `f` may itself carry ε.
pub fn direct_transform_fn(g: &GeneratorSeries, f: &PolySeries, order: u32) -> Result<PolySeries> {
    triangle(g, f, order)
}

/// `U_G⁻¹ f_0` by `f̃_n = −(1/n) Σ_{k<n} [f̃_k, G_{n−k−1}]`, returning `Σ ε^n f̃_n`.
pub fn henrard_inverse(g: &GeneratorSeries, f0: &PolySeries, order: u32) -> Result<PolySeries> {
    g.require(order, "inverse transform")?;
    if f0.frame() != g.frame() {
        return usage("function and generator are in different frames");
    }
    let frame = f0.frame();
    let mut ft = vec![f0.truncate(order, crate::algebra::UNBOUNDED)];
    for n in 1..=order as usize {
        let ks: Vec<usize> = (0..n).collect();
        let terms = parallel::map_collect(&ks, |&k| poisson(&ft[k], &g.parts()[n - k - 1]));
        let terms = terms.into_iter().collect::<Result<Vec<_>>>()?;
        let next = sum(frame, terms)
            .scale_ratio(-1, n as i64)
            .truncate(order - n as u32, crate::algebra::UNBOUNDED);
        ft.push(next);
    }
    let shifted: Vec<PolySeries> = ft
        .iter()
        .enumerate()
        .map(|(n, t)| t.with_caps(order, crate::algebra::UNBOUNDED).shift_eps(n as u32))
        .collect();
    Ok(sum(frame, shifted).with_caps(order, crate::algebra::UNBOUNDED))
}

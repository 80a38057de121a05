use super::model::{GeneratorSeries, HamiltonianModel};
use crate::algebra::PolySeries;
use crate::canonical::poisson;
use crate::error::{usage, Result};
use crate::operators::{average, integrate, non_secular};
use crate::parallel;

fn sum(frame: crate::algebra::VarFrame, parts: Vec<PolySeries>) -> PolySeries {
    parts
        .into_iter()
        .reduce(|a, b| &a + &b)
        .unwrap_or_else(|| PolySeries::zero(frame))
}

/// Evaluates the brackets `[a_i, b_i]` (in parallel when enabled) and sums them.
fn bracket_sum(frame: crate::algebra::VarFrame, pairs: &[(&PolySeries, &PolySeries)]) -> Result<PolySeries> {
    let parts = parallel::map_collect(pairs, |(a, b)| poisson(a, b));
    Ok(sum(frame, parts.into_iter().collect::<Result<Vec<_>>>()?))
}

fn eps_sum(frame: crate::algebra::VarFrame, parts: &[PolySeries], order: u32) -> PolySeries {
    PolySeries::from_eps_parts(frame, parts, order)
}

/// Order-by-order Deprit triangle with the non-secular choice `P G_n = 0`.
///
/// With `E^{(0)}_n = H_n`, the factorial-free triangle is
/// `E^{(i+1)}_n = [(n+1) E^{(i)}_{n+1} + Σ_{j≤n} [E^{(i)}_{n−j}, G_j]] / (i+1)`
/// and `H̃_m = E^{(m)}_0`. At order `m` the diagonal is first built without
/// `G_{m−1}`, giving `K`; then `G_{m−1} = m S K`, `H̃_m = P K`.
pub fn deprit_classical(h: &HamiltonianModel, order: u32) -> Result<(GeneratorSeries, PolySeries)> {
    if order == 0 {
        return usage("order must be at least 1");
    }
    let frame = h.frame();
    let omega = h.omega();
    let n_max = order as usize;
    // e[i][n] = E^{(i)}_n
    let mut e: Vec<Vec<PolySeries>> = vec![Vec::new(); n_max + 1];
    e[0] = (0..=n_max).map(|n| h.term_or_zero(n)).collect();
    let mut g: Vec<PolySeries> = Vec::new();
    let mut ht = vec![h.h0()];

    for m in 1..=n_max {
        for i in 0..m {
            let n = m - i - 1;
            let pairs: Vec<(&PolySeries, &PolySeries)> =
                (0..=n).filter(|&j| j < g.len()).map(|j| (&e[i][n - j], &g[j])).collect();
            let brackets = bracket_sum(frame, &pairs)?;
            let lifted = e[i][n + 1].scale_ratio(n as i64 + 1, 1);
            let next = (&lifted + &brackets).scale_ratio(1, i as i64 + 1);
            debug_assert_eq!(e[i + 1].len(), n);
            e[i + 1].push(next);
        }
        let k = e[m][0].clone();
        let m_i = m as i64;
        g.push(integrate(&k, omega, 1)?.scale_ratio(m_i, 1));
        let x = non_secular(&k, omega)?.scale_ratio(-m_i, 1);
        // G_{m−1} reaches E^{(i)}_{m−i} with weight C(m−1, i−1)/i
        let mut binom = 1i64;
        for i in 1..=m {
            let idx = m - i;
            e[i][idx] = &e[i][idx] + &x.scale_ratio(binom, i as i64);
            binom = binom * (m - i) as i64 / i as i64;
        }
        let hm = e[m][0].clone();
        debug_assert_eq!(hm, average(&k, omega)?);
        ht.push(hm);
    }
    let gen = GeneratorSeries::new(frame, g)?;
    Ok((gen, eps_sum(frame, &ht, order)))
}

/// Normalization through the inverse transform: builds `G̃` order by order
/// so that `H̃ = U_{G̃}⁻¹ H` is secular, with `P G̃_n = 0`.
///
/// Returns `(G̃, H̃)`. The inverse of this transform is `U_{G̃}`, so
/// formal integrals come from [`direct_transform_fn`](super::direct_transform_fn) with `G̃`.
pub fn henrard_normalize(h: &HamiltonianModel, order: u32) -> Result<(GeneratorSeries, PolySeries)> {
    if order == 0 {
        return usage("order must be at least 1");
    }
    let frame = h.frame();
    let omega = h.omega();
    let n_max = order as usize;
    // u[j][a] = ε^a coefficient of U_{G̃}⁻¹ H_j
    let mut u: Vec<Vec<PolySeries>> = (0..=n_max).map(|j| vec![h.term_or_zero(j)]).collect();
    let mut gt: Vec<PolySeries> = Vec::new();
    let mut ht = vec![h.h0()];

    for n in 1..=n_max {
        for j in 1..n {
            let a = n - j;
            let pairs: Vec<(&PolySeries, &PolySeries)> = (0..a).map(|k| (&u[j][k], &gt[a - k - 1])).collect();
            let next = bracket_sum(frame, &pairs)?.scale_ratio(-1, a as i64);
            debug_assert_eq!(u[j].len(), a);
            u[j].push(next);
        }
        let pairs: Vec<(&PolySeries, &PolySeries)> = (1..n).map(|k| (&u[0][k], &gt[n - k - 1])).collect();
        let partial = bracket_sum(frame, &pairs)?.scale_ratio(-1, n as i64);
        let mut k = partial.clone();
        for j in 1..=n {
            k = &k + &u[j][n - j];
        }
        let n_i = n as i64;
        gt.push(integrate(&k, omega, 1)?.scale_ratio(-n_i, 1));
        ht.push(average(&k, omega)?);
        u[0].push(&partial - &non_secular(&k, omega)?);
    }
    let gen = GeneratorSeries::new(frame, gt)?;
    Ok((gen, eps_sum(frame, &ht, order)))
}

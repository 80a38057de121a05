use super::model::{dh_deps, GeneratorSeries, HamiltonianModel};
use crate::algebra::{ExtScalar, PolySeries};
use crate::canonical::poisson;
use crate::error::{usage, Result};
use crate::operators::rz_apply;

/// Generator `G = S_H ∂H/∂ε` through `ε^{N−1}`, built with the resolvent
/// surrogate `R̃(z)`:
///
/// `F_1 = R̃ ∂H/∂ε`, `F_n = −R̃ L_V F_{n−1}` with `V = Σ_{k≥1} ε^k H_k`, and
/// `G = Σ_{n=1..N} [z^n] F_n`. Every product drops `ε^N` and `z^{N+1}`.
pub fn explicit_generator(h: &HamiltonianModel, order: u32) -> Result<GeneratorSeries> {
    if order == 0 {
        return usage("order must be at least 1");
    }
    let omega = h.omega();
    let eps_cap = order - 1;
    let v = h.perturbation(eps_cap);
    let minus_one = -ExtScalar::one();

    let mut f = rz_apply(&dh_deps(h, order), omega, order)?;
    let mut g = f.coeff_of_z(1);
    for n in 2..=order {
        if f.is_zero() {
            break;
        }
        f = rz_apply(&poisson(&f, &v)?, omega, order)?.scale(&minus_one);
        g = &g + &f.coeff_of_z(n);
    }
    let parts = g.with_caps(eps_cap, crate::algebra::UNBOUNDED).eps_parts(eps_cap);
    let parts = parts
        .into_iter()
        .map(|p: PolySeries| p.with_caps(crate::algebra::UNBOUNDED, crate::algebra::UNBOUNDED))
        .collect();
    GeneratorSeries::new(h.frame(), parts)
}

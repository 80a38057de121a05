//! Property checks shared by the per-module property tests and the acceptance runner.

use deprit_core::algebra::{parse_series, ExtScalar, PolySeries, UNBOUNDED};
use deprit_core::canonical::{from_birkhoff, liouville_apply, poisson, to_birkhoff};
use deprit_core::integrals::{center_generators, gustavson_integral};
use deprit_core::kato::{kato_apply, OperatorKind};
use deprit_core::normalize::{
    deprit_classical, direct_transform_fn, explicit_generator, henrard_inverse, normalize, HamiltonianModel, Method,
};
use deprit_core::operators::{average, integrate, liouville_h0, non_secular, rz_apply};
use deprit_core::Frequencies;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = Result<(), TestCaseError>;

fn ok<T>(r: deprit_core::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn ring_axioms(a: &ExtScalar, b: &ExtScalar, c: &ExtScalar) -> Check {
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a * b, b * a);
    if !a.is_zero() {
        prop_assert!((a * &ok(a.inv())?).is_one());
    }
    Ok(())
}

pub fn series_ring(f: &PolySeries, g: &PolySeries, h: &PolySeries, cap: u32) -> Check {
    let (f, g, h) = (f.with_caps(cap, UNBOUNDED), g.with_caps(cap, UNBOUNDED), h.with_caps(cap, UNBOUNDED));
    prop_assert_eq!(&f * &g, &g * &f);
    prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    let t = f.truncate(cap.saturating_sub(1), UNBOUNDED);
    prop_assert_eq!(t.truncate(cap.saturating_sub(1), UNBOUNDED), t);
    Ok(())
}

pub fn text_round_trip(f: &PolySeries) -> Check {
    let back = ok(parse_series(&f.to_text(), f.frame()))?;
    prop_assert_eq!(&back, f);
    for (_, c) in f.iter() {
        prop_assert_eq!(&c.to_string().parse::<ExtScalar>().unwrap(), c);
    }
    Ok(())
}

pub fn parallel_matches_sequential(f: &PolySeries, g: &PolySeries) -> Check {
    prop_assert_eq!(ok(f.try_mul(g))?, ok(f.mul_sequential(g))?);
    Ok(())
}

pub fn bracket_axioms(f: &PolySeries, g: &PolySeries, h: &PolySeries) -> Check {
    let fg = ok(poisson(f, g))?;
    prop_assert_eq!(&fg, &-&ok(poisson(g, f))?);
    // Leibniz
    let lhs = ok(poisson(&(f * g), h))?;
    let rhs = &(f * &ok(poisson(g, h))?) + &(g * &ok(poisson(f, h))?);
    prop_assert_eq!(lhs, rhs);
    // Jacobi
    let j = &(&ok(poisson(f, &ok(poisson(g, h))?))? + &ok(poisson(g, &ok(poisson(h, f))?))?)
        + &ok(poisson(h, &fg))?;
    prop_assert!(j.is_zero());
    Ok(())
}

pub fn birkhoff_is_canonical(f: &PolySeries, g: &PolySeries) -> Check {
    let lhs = ok(to_birkhoff(&ok(poisson(f, g))?))?;
    let rhs = ok(poisson(&ok(to_birkhoff(f))?, &ok(to_birkhoff(g))?))?;
    prop_assert_eq!(lhs, rhs);
    prop_assert_eq!(&ok(from_birkhoff(&ok(to_birkhoff(f))?))?, f);
    Ok(())
}

pub fn spectral_identities(f: &PolySeries, omega: &Frequencies) -> Check {
    let p = ok(average(f, omega))?;
    prop_assert_eq!(ok(average(&p, omega))?, p.clone());
    let one_minus_p = f - &p;
    prop_assert_eq!(&one_minus_p, &ok(non_secular(f, omega))?);
    let sl = ok(integrate(&ok(liouville_h0(f, omega))?, omega, 1))?;
    let ls = ok(liouville_h0(&ok(integrate(f, omega, 1))?, omega))?;
    prop_assert_eq!(&sl, &one_minus_p);
    prop_assert_eq!(&ls, &one_minus_p);
    // the eigenvalue form of L_{H_0} agrees with the bracket
    prop_assert_eq!(ok(liouville_apply(&omega.h0(), f))?, ok(liouville_h0(f, omega))?);
    prop_assert!(ok(integrate(&p, omega, 1))?.is_zero());
    prop_assert_eq!(ok(integrate(&ok(integrate(f, omega, 1))?, omega, 1))?, ok(integrate(f, omega, 2))?);
    let r = ok(rz_apply(f, omega, 3))?;
    prop_assert_eq!(r.coeff_of_z(1), ok(integrate(&one_minus_p, omega, 1))?.with_caps(UNBOUNDED, 3));
    prop_assert_eq!(r.coeff_of_z(0), (-&p).with_caps(UNBOUNDED, 3));
    Ok(())
}

/// `L_H f = [f, H]` with `H` truncated at `ε^N`.
fn l_h(h: &HamiltonianModel, f: &PolySeries, n: u32) -> Result<PolySeries, TestCaseError> {
    ok(poisson(f, &h.full_series(n)))
}

fn kato(kind: OperatorKind, h: &HamiltonianModel, f: &PolySeries, n: u32) -> Result<PolySeries, TestCaseError> {
    ok(kato_apply(kind, h, f, n))
}

/// The perturbed operator identities truncated at `ε^N`, applied to `f`.
pub fn kato_identities(h: &HamiltonianModel, f: &PolySeries, n: u32) -> Check {
    use OperatorKind::*;
    let f = f.with_caps(n, UNBOUNDED);
    let p_f = kato(P, h, &f, n)?;
    let s_f = kato(S, h, &f, n)?;
    let d_f = kato(D, h, &f, n)?;
    let l_f = l_h(h, &f, n)?;

    let one_minus_p = &f - &p_f;
    prop_assert_eq!(&kato(S, h, &l_f, n)?, &one_minus_p, "S_H L_H = 1 - P_H");
    prop_assert_eq!(&l_h(h, &s_f, n)?, &one_minus_p, "L_H S_H = 1 - P_H");
    prop_assert_eq!(&l_h(h, &p_f, n)?, &d_f, "L_H P_H = D_H");
    prop_assert_eq!(&kato(P, h, &l_f, n)?, &d_f, "P_H L_H = D_H");
    prop_assert!(kato(S, h, &p_f, n)?.is_zero(), "S_H P_H = 0");
    prop_assert_eq!(&kato(P, h, &d_f, n)?, &d_f, "P_H D_H = D_H");
    prop_assert_eq!(&kato(D, h, &p_f, n)?, &d_f, "D_H P_H = D_H");
    prop_assert_eq!(&kato(P, h, &p_f, n)?, &p_f, "P_H P_H = P_H");
    Ok(())
}

pub fn projector_fixes_hamiltonian(h: &HamiltonianModel, n: u32) -> Check {
    let full = h.full_series(n);
    prop_assert_eq!(kato(OperatorKind::P, h, &full, n)?, full);
    Ok(())
}

/// `U_G P_H f = P_{H_0} U_G f` through `ε^N`.
pub fn intertwining(h: &HamiltonianModel, f: &PolySeries, n: u32) -> Check {
    let g = ok(explicit_generator(h, n))?;
    let lhs = ok(direct_transform_fn(&g, &kato(OperatorKind::P, h, &f.with_caps(n, UNBOUNDED), n)?, n))?;
    let rhs = ok(average(&ok(direct_transform_fn(&g, f, n))?, h.omega()))?;
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// `P_H G = O(ε^{N+1})`, with `G` carried one order further so `G` itself is exact through `ε^N`.
pub fn uniqueness(h: &HamiltonianModel, n: u32) -> Check {
    let g = ok(explicit_generator(h, n + 1))?.to_series();
    prop_assert!(kato(OperatorKind::P, h, &g, n)?.is_zero());
    Ok(())
}

/// Secularity, first-order universality and agreement of the explicit and Henrard normal forms.
pub fn normal_forms(h: &HamiltonianModel, n: u32) -> Check {
    let omega = h.omega();
    let mut forms = Vec::new();
    for m in Method::ALL {
        let r = ok(normalize(h, n, m))?;
        prop_assert_eq!(&ok(average(&r.normalized, omega))?, &r.normalized, "{} not secular", m);
        prop_assert_eq!(r.normalized.coeff_of_eps(0), h.h0());
        let h1 = h.term_or_zero(1);
        prop_assert_eq!(r.normalized.coeff_of_eps(1), ok(average(&h1, omega))?);
        forms.push(r.normalized);
    }
    prop_assert_eq!(&forms[0], &forms[2], "explicit and Henrard normal forms differ");
    Ok(())
}

/// `U_G U_G⁻¹ f = f` and `U_G [f, g] = [U_G f, U_G g]` through `ε^N`.
pub fn transform_laws(h: &HamiltonianModel, f: &PolySeries, g2: &PolySeries, n: u32) -> Check {
    let g = ok(explicit_generator(h, n))?;
    let back = ok(direct_transform_fn(&g, &ok(henrard_inverse(&g, f, n))?, n))?;
    prop_assert_eq!(back, f.with_caps(n, UNBOUNDED));
    let lhs = ok(direct_transform_fn(&g, &ok(poisson(f, g2))?, n))?;
    let rhs = ok(poisson(&ok(direct_transform_fn(&g, f, n))?, &ok(direct_transform_fn(&g, g2, n))?))?;
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// Gustavson and Hori integrals commute with `H` through their computed orders,
/// and the Gustavson integral does not depend on the generator's secular part.
pub fn integrals_commute(h: &HamiltonianModel, n: u32) -> Check {
    let full = h.full_series(n);
    let basis = center_generators(h.omega());
    let g_explicit = ok(explicit_generator(h, n))?;
    let (g_deprit, _) = ok(deprit_classical(h, n))?;
    for seed in basis.integrals() {
        let i = ok(gustavson_integral(&g_explicit, h.omega(), &seed, n))?;
        prop_assert!(ok(poisson(&i, &full))?.is_zero(), "[I, H] != 0");
        let i2 = ok(gustavson_integral(&g_deprit, h.omega(), &seed, n))?;
        prop_assert_eq!(&i, &i2, "Gustavson integral depends on the generator");
    }
    let s = h.hori_power();
    let ih = ok(deprit_core::integrals::hori_integral(h, &g_explicit, n, s))?;
    let c = ok(poisson(&ih, &full))?;
    prop_assert!(c.truncate(n - s, UNBOUNDED).is_zero(), "[I_H, H] != 0 through eps^(N-s)");
    Ok(())
}

/// `I = P_H I` through `ε^N` for each center-seeded integral.
pub fn integral_is_projected(h: &HamiltonianModel, n: u32) -> Check {
    let g = ok(explicit_generator(h, n))?;
    for seed in center_generators(h.omega()).integrals() {
        let i = ok(gustavson_integral(&g, h.omega(), &seed, n))?;
        prop_assert_eq!(kato(OperatorKind::P, h, &i, n)?, i);
    }
    Ok(())
}

/// Computing to `N` and dropping `ε^N` equals computing to `N − 1`.
pub fn truncation_consistency(h: &HamiltonianModel, n: u32) -> Check {
    for m in Method::ALL {
        let hi = ok(normalize(h, n, m))?.normalized.truncate(n - 1, UNBOUNDED);
        let lo = ok(normalize(h, n - 1, m))?.normalized;
        prop_assert_eq!(hi, lo, "{}", m);
    }
    Ok(())
}

mod common;

use common::props;
use deprit_core::canonical::from_birkhoff;
use deprit_core::integrals::{center_generators, gustavson_integral, hori_integral, hori_integral_for};
use deprit_core::models::{henon_heiles, toda2d};
use deprit_core::normalize::{explicit_generator, normalize, GeneratorSeries, Method};
use deprit_core::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn integrals_commute_random(h in common::model_2d(4)) {
        props::integrals_commute(&h, 4)?;
    }

    #[test]
    fn integral_is_projected_random(h in common::model_2d(2)) {
        props::integral_is_projected(&h, 2)?;
    }
}

#[test]
fn integrals_commute_on_models() {
    props::integrals_commute(&henon_heiles(), 4).unwrap();
    props::integrals_commute(&toda2d(4).unwrap(), 4).unwrap();
    props::integral_is_projected(&henon_heiles(), 2).unwrap();
}

#[test]
fn zero_generator_leaves_seed() {
    let h = henon_heiles();
    let seed = center_generators(h.omega()).integrals().remove(0);
    let g = GeneratorSeries::zero(h.frame(), 3);
    assert_eq!(gustavson_integral(&g, h.omega(), &seed, 3).unwrap(), seed.with_caps(3, deprit_core::algebra::UNBOUNDED));
}

#[test]
fn hori_leading_term_is_average_of_h1() {
    let h = deprit_core::models::pendulum(3).unwrap();
    let g = explicit_generator(&h, 3).unwrap();
    let ih = hori_integral(&h, &g, 3, 1).unwrap();
    let p = deprit_core::operators::average(h.term(1).unwrap(), h.omega()).unwrap();
    assert!(!p.is_zero());
    assert_eq!(ih.coeff_of_eps(0), p);
}

#[test]
fn hori_without_perturbation_is_zero() {
    let h = deprit_core::normalize::HamiltonianModel::new("free", deprit_core::Frequencies::from_ints(&[1, 1]).unwrap(), vec![]).unwrap();
    let g = explicit_generator(&h, 3).unwrap();
    assert!(hori_integral(&h, &g, 3, 1).unwrap().is_zero());
}

#[test]
fn wrong_leading_power_is_an_integrity_error() {
    let h = deprit_core::models::pendulum(3).unwrap();
    let n = normalize(&h, 3, Method::Explicit).unwrap();
    assert!(matches!(hori_integral_for(&h, &n, 2), Err(Error::Integrity(_))));
    assert!(hori_integral_for(&h, &n, 4).is_err());
}

#[test]
fn hori_is_method_independent_for_henrard() {
    let h = toda2d(4).unwrap();
    let a = hori_integral_for(&h, &normalize(&h, 4, Method::Explicit).unwrap(), 2).unwrap();
    let b = hori_integral_for(&h, &normalize(&h, 4, Method::Henrard).unwrap(), 2).unwrap();
    assert_eq!(a, b);
    assert!(!from_birkhoff(&a).unwrap().is_zero());
}

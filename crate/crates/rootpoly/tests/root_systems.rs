use std::collections::BTreeMap;

use proptest::prelude::*;
use rootpoly::macdonald::inverse_kostka;
use rootpoly::oracles::{orbit_stabilizer_bruteforce, weyl_character};
use rootpoly::root_data::{to_q, RootData};
use rootpoly::{Family, RootSystemSpec, Weight};

fn family_strategy() -> impl Strategy<Value = RootSystemSpec> {
    (0usize..5, 2usize..=4).prop_map(|(f, n)| {
        let f = [Family::A, Family::B, Family::C, Family::D, Family::BC][f];
        RootSystemSpec::new(f, n).unwrap()
    })
}

fn weight_in(spec: &RootSystemSpec, v: Vec<i32>, half: bool) -> Weight {
    let n = spec.n();
    let odd = half && matches!(spec.family, Family::B | Family::D);
    let a = spec.family == Family::A;
    Weight::from_doubled(v[..n].iter().map(|&x| if a { 2 * x.abs() } else if odd { 2 * x + 1 } else { 2 * x }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn orbit_size_matches_enumeration(spec in family_strategy(), v in prop::collection::vec(-3i32..=3, 4), half: bool) {
        let w = weight_in(&spec, v, half);
        let (orbit, stab) = orbit_stabilizer_bruteforce(&spec, &w).unwrap();
        prop_assert_eq!(orbit.len() as u64, spec.orbit_size(&w));
        prop_assert_eq!(stab, spec.stabilizer_order(&w));
        prop_assert_eq!(spec.orbit_size(&w) * spec.stabilizer_order(&w), spec.weyl_group_order());
    }

    #[test]
    fn dominantize_lands_in_orbit(spec in family_strategy(), v in prop::collection::vec(-3i32..=3, 4), half: bool) {
        let w = weight_in(&spec, v, half);
        let d = spec.dominantize(&w);
        prop_assert!(spec.is_dominant(&d.weight));
        prop_assert!(spec.weyl_orbit(&w).contains(&d.weight));
        prop_assert_eq!(spec.dominantize(&d.weight).weight, d.weight.clone());
    }

    #[test]
    fn interval_is_ordered_and_closed(spec in family_strategy(), v in prop::collection::vec(0i32..=3, 4)) {
        let lam = spec.dominantize(&weight_in(&spec, v, false)).weight;
        prop_assume!(spec.in_lattice(&lam));
        let iv = spec.dominant_interval(&lam).unwrap();
        prop_assert_eq!(iv.last(), Some(&lam));
        for (i, mu) in iv.iter().enumerate() {
            prop_assert!(spec.is_dominant(mu) && spec.dominance(mu, &lam));
            for nu in &iv[i + 1..] {
                prop_assert!(!spec.dominance(nu, mu) || nu == mu);
            }
        }
    }
}

#[test]
fn generic_root_data_agrees_with_tables() {
    for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::BC, 2)] {
        let spec = RootSystemSpec::new(f, n).unwrap();
        let rd = RootData::from_spec(&spec);
        for lam in spec.dominant_weights(2) {
            let q = to_q(&lam);
            assert_eq!(rd.orbit_size(&q), spec.orbit_size(&lam), "{} {}", spec, lam);
            let a: Vec<Weight> = rd.dominant_interval(&q).unwrap().iter().map(|v| rootpoly::root_data::from_q(v).unwrap()).collect();
            let mut a = a;
            let mut b = spec.dominant_interval(&lam).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{} {}", spec, lam);
        }
    }
}

/// `sum_nu a_{lambda nu} chi_nu = m_lambda`.
#[test]
fn inverse_kostka_inverts_characters() {
    for (f, n) in [(Family::A, 3), (Family::B, 2), (Family::C, 3), (Family::D, 4)] {
        let spec = RootSystemSpec::new(f, n).unwrap();
        for lam in spec.dominant_weights(2) {
            let mut total: BTreeMap<Weight, i64> = BTreeMap::new();
            for (nu, a) in inverse_kostka(&spec, &lam) {
                for (mu, k) in weyl_character(&spec, &nu).unwrap() {
                    *total.entry(mu).or_insert(0) += a * k;
                }
            }
            total.retain(|_, v| *v != 0);
            let want: BTreeMap<Weight, i64> = [(lam.clone(), 1)].into_iter().collect();
            assert_eq!(total, want, "{} {}", spec, lam);
        }
    }
}

#[test]
fn dominant_weights_respect_lattice() {
    let d = RootSystemSpec::new(Family::D, 3).unwrap();
    let ws = d.dominant_weights(1);
    assert!(ws.contains(&Weight::from_ints(&[1, 1, -1])));
    assert!(ws.contains(&Weight::from_doubled(vec![1, 1, -1])));
    let c = RootSystemSpec::new(Family::C, 2).unwrap();
    assert!(c.dominant_weights(2).iter().all(|w| w.is_integral()));
    let a = RootSystemSpec::new(Family::A, 3).unwrap();
    assert!(a.dominant_weights(2).iter().all(|w| w.0[2] == 0));
}

#[test]
fn group_orders() {
    let cases = [(Family::A, 4, 24), (Family::B, 3, 48), (Family::C, 4, 384), (Family::D, 4, 192), (Family::BC, 2, 8)];
    for (f, n, order) in cases {
        let spec = RootSystemSpec::new(f, n).unwrap();
        assert_eq!(spec.weyl_group_order(), order);
        assert_eq!(spec.group_elements().unwrap().len() as u64, order);
    }
}

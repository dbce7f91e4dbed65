use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use zerohecke::charmap::{characteristic, Mode, QSymElement};
use zerohecke::combinat::{Composition, Permutation, Tableau};
use zerohecke::hecke0::{composition_factors, factor_entries, projective_module, FactorEntry};
use zerohecke::polyring::MultiPoly;
use zerohecke::qtarith::BiPoly;
use zerohecke::verify::{run_suite, Suite};
use zerohecke::Limits;

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u64..6, 0u64..6), -20i64..20), 0..6)
        .prop_map(|v| BiPoly::from_terms(v.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
}

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), 1i64..20), 1..6).prop_map(|v| {
        let mut p = MultiPoly::zero(3);
        for (e, c) in v {
            p.add_term(e, &BigInt::from(c));
        }
        p
    })
}

fn composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..4, 1..5).prop_map(|p| Composition::new(p).unwrap())
}

proptest! {
    #[test]
    fn bipoly_json(p in bipoly()) {
        let s = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<BiPoly>(&s).unwrap(), p);
    }

    #[test]
    fn multipoly_json(p in multipoly().prop_filter("nonzero", |p| !p.is_zero())) {
        let s = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), p);
    }

    #[test]
    fn composition_json(a in composition()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(&s, &format!("{:?}", a.parts()).replace(' ', ""));
        prop_assert_eq!(serde_json::from_str::<Composition>(&s).unwrap(), a);
    }

    #[test]
    fn factor_entry_json(a in composition(), p in bipoly()) {
        let e = FactorEntry { composition: a, multiplicity: p };
        let s = serde_json::to_string(&e).unwrap();
        prop_assert_eq!(serde_json::from_str::<FactorEntry>(&s).unwrap(), e);
    }
}

#[test]
fn permutation_is_an_array_of_images() {
    let w = Permutation::new(vec![3, 1, 2]).unwrap();
    assert_eq!(serde_json::to_string(&w).unwrap(), "[3,1,2]");
    assert_eq!(serde_json::from_str::<Permutation>("[3,1,2]").unwrap(), w);
}

#[test]
fn tableau_is_an_array_of_rows() {
    let a = Composition::new(vec![1, 2, 1]).unwrap();
    let v = serde_json::to_value(Tableau::from_reading_word(&a, a.w0().images()).unwrap()).unwrap();
    assert!(v.as_array().unwrap().iter().all(|row| row.is_array()));
}

#[test]
fn factor_report_round_trips() {
    let p = projective_module(&Composition::new(vec![2, 1]).unwrap(), &Limits::default()).unwrap();
    let f = composition_factors(&p).unwrap();
    let entries = factor_entries(&f);
    let s = serde_json::to_string(&entries).unwrap();
    let back: Vec<FactorEntry> = serde_json::from_str(&s).unwrap();
    assert_eq!(back, entries);
    let map: BTreeMap<Composition, BiPoly> = back.into_iter().map(|e| (e.composition, e.multiplicity)).collect();
    assert_eq!(map.len(), f.values().filter(|p| !p.is_zero()).count());
}

#[test]
fn characteristic_round_trips() {
    let p = projective_module(&Composition::new(vec![1, 2, 1]).unwrap(), &Limits::default()).unwrap();
    let ch = characteristic(&p, Mode::Q).unwrap();
    let v = ch.to_json();
    assert_eq!(QSymElement::from_json(&v).unwrap(), ch);
}

#[test]
fn suite_reports_are_deterministic() {
    let limits = Limits::default();
    for s in [Suite::Norton, Suite::HookSpringer, Suite::CoinvariantRegular] {
        let a = serde_json::to_string(&run_suite(s, 4, 2, 5, &limits).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(s, 4, 2, 5, &limits).unwrap()).unwrap();
        assert_eq!(a, b, "{}", s.name());
    }
}

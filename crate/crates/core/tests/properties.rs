mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resq_core::algebra::enumerate_algebras;
use resq_core::completion::build_quantale;
use resq_core::lambek::{self, parse_formula, CounterOptions, CounterOutcome, Formula, RelationalModel};
use resq_core::relrep::{represent, unitalize, RepresentOptions};
use resq_core::{parse_algebra, serialize_algebra, Relation};

use common::*;

fn relation(k: usize) -> impl Strategy<Value = Relation> {
    any::<u64>().prop_map(move |m| Relation::from_mask(k, m & ((1u64 << (k * k)) - 1)))
}

fn triple() -> impl Strategy<Value = (Relation, Relation, Relation)> {
    (1usize..=6).prop_flat_map(|k| (relation(k), relation(k), relation(k)))
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just("p"), Just("q"), Just("r1")].prop_map(Formula::atom);
    leaf.prop_recursive(4, 24, 2, |inner| {
        (inner.clone(), inner, 0..3u8).prop_map(|(a, b, op)| match op {
            0 => Formula::prod(a, b),
            1 => Formula::under(a, b),
            _ => Formula::over(a, b),
        })
    })
}

proptest! {
    #[test]
    fn residuation_adjunction((r, s, t) in triple()) {
        let mid = r.compose(&s).is_subset(&t);
        prop_assert_eq!(s.is_subset(&r.left_residual(&t)), mid);
        prop_assert_eq!(r.is_subset(&t.right_residual(&s)), mid);
    }

    #[test]
    fn bit_operations_match_definitions((r, s, _t) in triple()) {
        prop_assert_eq!(r.compose(&s), naive_compose(&r, &s));
        prop_assert_eq!(r.left_residual(&s), naive_lres(&r, &s));
        prop_assert_eq!(r.right_residual(&s), naive_rres(&r, &s));
    }

    #[test]
    fn formula_printer_round_trips(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn serialization_round_trips(index in 0usize..93, perm in 0usize..6) {
        let alg = enumerate_algebras(3).unwrap().nth(index).unwrap();
        let p = resq_core::algebra::permutations(3)[perm].clone();
        let alg = alg.permute(&p);
        prop_assert_eq!(parse_algebra(&serialize_algebra(&alg)).unwrap(), alg);
    }
}

#[test]
fn representation_is_deterministic() {
    for (_, alg) in corpus().into_iter().take(40) {
        let a = represent(&alg, RepresentOptions::default()).unwrap();
        let b = represent(&alg, RepresentOptions::default()).unwrap();
        assert_eq!(a.interpretation, b.interpretation);
    }
}

#[test]
fn unitalization_laws_and_lift() {
    for (name, alg) in corpus() {
        let q = build_quantale(&alg).unwrap().quantale;
        let u = unitalize(&q).unwrap();
        u.check_laws().unwrap();
        assert_eq!(unitalize(&u).unwrap(), u, "{name}: unitalize not idempotent");
        if q.is_unital() {
            continue;
        }
        let n = q.len();
        assert_eq!(u.len(), 2 * n);
        assert_eq!(u.unit(), Some(q.bottom() + n));
        for a in 0..n {
            for b in 0..n {
                assert_eq!(u.comp(a, b), q.comp(a, b), "{name}: lift breaks composition");
                assert_eq!(u.leq(a, b), q.leq(a, b), "{name}: lift breaks the order");
            }
        }
    }
}

fn random_model(rng: &mut ChaCha8Rng, atoms: &[String]) -> RelationalModel {
    let k = rng.gen_range(1..=3);
    let mut m = RelationalModel::new(k);
    for a in atoms {
        m.valuation.insert(a.clone(), Relation::from_mask(k, rng.gen::<u64>() & ((1 << (k * k)) - 1)));
    }
    m
}

#[test]
fn derivable_fixtures_hold_in_random_models() {
    let fixture = lambek_fixture();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let atoms = ["p".to_string(), "q".to_string(), "r".to_string()];
    for _ in 0..1000 {
        let m = random_model(&mut rng, &atoms);
        for (derivable, s) in &fixture {
            if *derivable {
                assert!(lambek::evaluate(s, &m).unwrap(), "{s} fails in\n{m}");
            }
        }
        let step = lambek::parse_sequent("p, p\\q |- q").unwrap();
        assert!(lambek::evaluate(&step, &m).unwrap());
    }
}

#[test]
fn countermodels_survive_isolated_points() {
    for (derivable, s) in lambek_fixture() {
        if derivable {
            continue;
        }
        let opts = CounterOptions { max_base: 2, ..Default::default() };
        if let CounterOutcome::Found(m) = lambek::countermodel_search(&s, opts).unwrap() {
            for extra in 1..=2 {
                assert!(!lambek::evaluate(&s, &m.extend_isolated(extra)).unwrap(), "{s}");
            }
        }
    }
}

#[test]
fn symmetry_breaking_keeps_countermodel_verdicts() {
    for (_, s) in lambek_fixture() {
        let with = CounterOptions { max_base: 2, ..Default::default() };
        let without = CounterOptions { symmetry_breaking: false, ..with };
        let found = |o| matches!(lambek::countermodel_search(&s, o).unwrap(), CounterOutcome::Found(_));
        assert_eq!(found(with), found(without), "{s}");
    }
}

use proptest::prelude::*;

use midring::cli::builtin_corpus;
use midring::ideals::{contains_unit, zero_ideal, DEFAULT_LATTICE_BUDGET};
use midring::ring::{ElementId, DEFAULT_ORDER_CAP};
use midring::{
    eval_ring_expr, format_ring_expr, gate_check, generate_ideal, ideals_containing,
    is_integral_domain, is_proper, mid, minimal_primes_over, parse_ring_spec, quotient_ring,
    units, verify_ring_axioms, z_ideal, zero_divisors, FiniteRing, MidOptions, RingExpr,
};

fn small_expr() -> impl Strategy<Value = RingExpr> {
    let modular = (2u64..=12).prop_map(RingExpr::Modular);
    let poly = (prop_oneof![Just(2u64), Just(3)], prop::collection::vec(0u64..3, 1..=2)).prop_map(
        |(p, mut lower)| {
            lower.iter_mut().for_each(|c| *c %= p);
            lower.push(1);
            RingExpr::poly(RingExpr::Modular(p), lower)
        },
    );
    let leaf = prop_oneof![3 => modular, 1 => poly];
    leaf.prop_recursive(2, 4, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| RingExpr::product(a, b))
    })
    .prop_filter("keep rings small", |e| order_of(e) <= 64)
}

fn order_of(e: &RingExpr) -> u64 {
    match e {
        RingExpr::Modular(n) => *n,
        RingExpr::Product(a, b) => order_of(a) * order_of(b),
        RingExpr::PolyQuotient { base, modulus } => order_of(base).pow(modulus.len() as u32 - 1),
    }
}

fn build(e: &RingExpr) -> FiniteRing {
    eval_ring_expr(e, DEFAULT_ORDER_CAP).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_parse_round_trip(e in small_expr()) {
        let s = format_ring_expr(&e);
        prop_assert_eq!(parse_ring_spec(&s).unwrap(), e);
    }

    #[test]
    fn constructed_rings_satisfy_axioms(e in small_expr()) {
        let r = build(&e);
        prop_assert!(verify_ring_axioms(&r).passed);
        prop_assert_eq!(build(&e), r);
    }

    #[test]
    fn unit_zero_divisor_dichotomy(e in small_expr()) {
        let r = build(&e);
        let us = units(&r);
        let zd = zero_divisors(&r);
        for x in r.elements() {
            let kinds = [r.is_zero(x), us.contains(&x), zd.divisors.contains(&x)];
            prop_assert_eq!(kinds.iter().filter(|&&k| k).count(), 1, "{}", r.name(x));
        }
        for (&x, &y) in &zd.witnesses {
            prop_assert!(!r.is_zero(y) && r.is_zero(r.mul(x, y)));
        }
        prop_assert_eq!(is_integral_domain(&r), zd.divisors.is_empty());
    }

    #[test]
    fn quotient_by_generated_ideal(e in small_expr(), seed in prop::collection::vec(any::<u32>(), 0..3)) {
        let r = build(&e);
        let gens: Vec<ElementId> = seed.iter().map(|s| ElementId(s % r.order() as u32)).collect();
        let i = generate_ideal(&r, &gens);
        prop_assert!(gens.iter().all(|&g| i.contains(g)));
        prop_assert_eq!(is_proper(&i), contains_unit(&r, &i).is_none());
        if is_proper(&i) {
            let q = quotient_ring(&r, &i).unwrap();
            prop_assert!(verify_ring_axioms(&q.quotient).passed);
            prop_assert_eq!(q.quotient.order() * i.len(), r.order());
            for x in r.elements() {
                for y in r.elements() {
                    let same = q.project(x) == q.project(y);
                    prop_assert_eq!(same, i.contains(r.sub(x, y)));
                }
            }
        }
    }
}

#[test]
fn generated_ideals_are_minimal() {
    for e in builtin_corpus().iter().filter(|e| order_of(e) <= 16) {
        let r = build(e);
        for j in ideals_containing(&r, &zero_ideal(&r), DEFAULT_LATTICE_BUDGET).unwrap() {
            let g = generate_ideal(&r, j.generators());
            assert!(g.is_subset_of(&j), "{}", r.label());
            assert_eq!(g, j);
            // Closed under + and under multiplication by the ring.
            for &a in j.elements() {
                assert!(j.elements().iter().all(|&b| j.contains(r.add(a, b))));
                assert!(r.elements().all(|x| j.contains(r.mul(a, x))));
            }
        }
    }
}

#[test]
fn gate_passing_rings_are_local() {
    for e in builtin_corpus() {
        let r = build(&e);
        let gate = gate_check(&r);
        if !gate.passes {
            assert!(matches!(z_ideal(&r, DEFAULT_LATTICE_BUDGET), Err(midring::Error::GateFailed { .. })));
            continue;
        }
        let primes = minimal_primes_over(&r, &gate.ideal, DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(primes.len(), 1, "{}", r.label());
        let non_units: Vec<ElementId> = r.elements().filter(|&x| !r.is_unit(x)).collect();
        assert_eq!(primes[0].elements(), non_units.as_slice(), "{}", r.label());

        let z = z_ideal(&r, DEFAULT_LATTICE_BUDGET).unwrap();
        assert!(zero_divisors(&r).divisors.iter().all(|&d| z.contains(d)));

        let m = mid(&r, MidOptions::default()).unwrap();
        assert_eq!(m.quotient.kernel, z);
        let q = &m.quotient.quotient;
        assert!(q.elements().filter(|&x| !q.is_zero(x)).all(|x| q.is_unit(x)), "{}", r.label());
        let cert = m.certificate.unwrap();
        assert_eq!(cert.pairs_checked, ((q.order() - 1) * (q.order() - 1)) as u64);
    }
}

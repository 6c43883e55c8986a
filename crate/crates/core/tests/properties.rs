use proptest::prelude::*;

use gerbe_core::cohomology::class_equal;
use gerbe_core::exactalg::{frac, IntMatrix, Integer, Lattice, Rational};
use gerbe_core::fixtures::load_fixture;
use gerbe_core::gerbe_builder::zigzag_gerbe;
use gerbe_core::holonomy::{canonical_connection, surface_holonomy, Surface};
use gerbe_core::io::{cochain_from_json, cochain_to_json, parse_rational, rational_to_json};
use gerbe_core::prequant::{commutator_identity, parse_poly, poisson_bracket, Poly};
use gerbe_core::random::{closed_cochain, rng};
use gerbe_core::simplicial::{Cochain, Coefficients, SimplicialMap};
use gerbe_core::verify::smith_postconditions;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn polynomial() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..4), rational()), 0..6)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|((i, j), c)| ((i, j, 0), c))))
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(-12i64..=12, r * c).prop_map(move |xs| {
            let rows: Vec<Vec<i64>> = xs.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_i64(&rows).unwrap()
        })
    })
}

fn lattice2() -> impl Strategy<Value = Lattice> {
    prop::collection::vec(prop::collection::vec(rational(), 2), 1..3)
        .prop_filter_map("degenerate generators", |gens| Lattice::generated(2, &gens).ok())
}

fn cochain_on(name: &'static str, degree: usize) -> impl Strategy<Value = Cochain> {
    let k = load_fixture(name).unwrap();
    prop::collection::vec(rational(), k.count(degree))
        .prop_map(move |v| Cochain::from_scalars(&k, degree, Coefficients::Rational, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_rep_is_idempotent_and_congruent(l in lattice2(), v in prop::collection::vec(rational(), 2)) {
        let r = l.canonical_rep(&v);
        prop_assert_eq!(l.canonical_rep(&r), r.clone());
        let diff: Vec<Rational> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        prop_assert!(l.contains(&diff));
    }

    #[test]
    fn canonical_rep_ignores_lattice_shifts(l in lattice2(), v in prop::collection::vec(rational(), 2), n in -3i64..=3) {
        let shift = match l.basis() {
            Some(b) if !b.is_empty() => b[0].iter().map(|x| x * Rational::from_integer(n.into())).collect(),
            _ => vec![Rational::from_integer(0.into()); 2],
        };
        let moved: Vec<Rational> = v.iter().zip(&shift).map(|(a, b)| a + b).collect();
        prop_assert_eq!(l.canonical_rep(&moved), l.canonical_rep(&v));
    }

    #[test]
    fn smith_postconditions_hold(a in matrix()) {
        prop_assert!(smith_postconditions(&a));
    }

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(f in polynomial(), g in polynomial(), h in polynomial()) {
        let b = |p: &Poly, q: &Poly| poisson_bracket(p, q).unwrap();
        prop_assert_eq!(b(&f, &g), -&b(&g, &f));
        let jacobi = &(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn bracket_is_a_derivation(f in polynomial(), g in polynomial(), h in polynomial()) {
        let b = |p: &Poly, q: &Poly| poisson_bracket(p, q).unwrap();
        prop_assert_eq!(b(&f, &(&g * &h)), &(&b(&f, &g) * &h) + &(&g * &b(&f, &h)));
    }

    #[test]
    fn prequant_identity_holds(f in polynomial(), g in polynomial()) {
        prop_assert!(commutator_identity(&f, &g).unwrap());
    }

    #[test]
    fn poly_display_round_trips(f in polynomial()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn rational_json_round_trips(x in rational()) {
        let v = rational_to_json(&x);
        prop_assert_eq!(parse_rational(v.as_str().unwrap()).unwrap(), x);
    }

    #[test]
    fn cochain_json_round_trips(c in cochain_on("T2", 1)) {
        let back = cochain_from_json(&cochain_to_json(&c), c.complex()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn coboundary_squares_to_zero(c in cochain_on("S3", 1)) {
        prop_assert!(c.coboundary().coboundary().is_zero());
    }

    #[test]
    fn coboundary_is_linear(a in cochain_on("RP2", 1), b in cochain_on("RP2", 1), s in rational()) {
        prop_assert_eq!(a.add(&b.scale(&s)).coboundary(), a.coboundary().add(&b.coboundary().scale(&s)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn classifying_class_is_the_input_class(seed in any::<u64>(), name in prop::sample::select(vec!["S2", "T2", "RP2"])) {
        let k = load_fixture(name).unwrap();
        let w = closed_cochain(&mut rng(seed), &k, 2);
        let g = zigzag_gerbe(&k, &w).unwrap();
        g.verify().unwrap();
        prop_assert!(class_equal(&g.c, &w).unwrap());
    }

    #[test]
    fn classifying_class_sees_only_the_input_class(seed in any::<u64>(), b in cochain_on("T2", 1)) {
        let k = load_fixture("T2").unwrap();
        let w = closed_cochain(&mut rng(seed), &k, 2);
        let c1 = zigzag_gerbe(&k, &w).unwrap().c;
        let c2 = zigzag_gerbe(&k, &w.add(&b.coboundary())).unwrap().c;
        prop_assert!(class_equal(&c1, &c2).unwrap());
    }

    #[test]
    fn torus_holonomy_is_invariant_under_exact_changes(seed in any::<u64>(), b in cochain_on("T2", 1)) {
        let k = load_fixture("T2").unwrap();
        let s = Surface::new(&k).unwrap();
        let id = SimplicialMap::identity(&k);
        let w = closed_cochain(&mut rng(seed), &k, 2);
        let hol = |w: &Cochain| {
            let g = zigzag_gerbe(&k, w).unwrap();
            surface_holonomy(&s, &id, &canonical_connection(&g).unwrap()).unwrap()
        };
        let h = hol(&w);
        prop_assert_eq!(h.clone(), hol(&w.add(&b.coboundary())));
        prop_assert_eq!(frac(&h), h);
    }

    #[test]
    fn integer_shifts_keep_integrality(seed in any::<u64>(), n in -5i64..=5) {
        let k = load_fixture("S2").unwrap();
        let w = closed_cochain(&mut rng(seed), &k, 2);
        let first = k.simplices(2)[0].clone();
        let bump = Cochain::from_entries(&k, 2, Coefficients::Rational, [(first, vec![Rational::from_integer(Integer::from(n))])]).unwrap();
        let a = gerbe_core::gerbe_builder::integrality_test(&w).unwrap().integral;
        let b = gerbe_core::gerbe_builder::integrality_test(&w.add(&bump)).unwrap().integral;
        prop_assert_eq!(a, b);
    }
}

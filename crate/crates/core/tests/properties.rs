use proptest::prelude::*;

use nicety::constructions::{
    conjugate, gz_check, is_triangular, make_triangular, random_unimodular, DruzkowskiSpec, GzPair, TriangularParams,
};
use nicety::engine::{p_sequence, verify_inverse};
use nicety::jacobian::{jacobian, nilpotence_index, Nilpotence, NilpotenceMode, PolyMatrix};
use nicety::map_io::{default_names, parse_map, render_map};
use nicety::{check_nice, compose, Limits, Monomial, NiceOptions, PolyMap, Polynomial, RatMatrix, Rational, Verdict};

fn lim() -> Limits {
    Limits::default()
}

fn poly(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -5i64..=5), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial::new(e), Rational::from(c))))
    })
}

fn map(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = PolyMap> {
    prop::collection::vec(poly(n, max_deg, max_terms), n).prop_map(move |c| PolyMap::new(n, c).unwrap())
}

fn matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(2, 2, 3), n * n).prop_map(move |e| PolyMatrix::new(n, n, 2, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly(3, 3, 5), b in poly(3, 3, 5), c in poly(3, 3, 5)) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Polynomial::zero(3));
        prop_assert_eq!(a.clone() * Polynomial::one(3), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(2, 3, 4), b in poly(2, 3, 4), x in -4i64..=4, y in -4i64..=4) {
        let pt = [Rational::from(x), Rational::from(y)];
        let (ea, eb) = (a.evaluate(&pt).unwrap(), b.evaluate(&pt).unwrap());
        prop_assert_eq!((a.clone() * b.clone()).evaluate(&pt).unwrap(), ea.clone() * eb.clone());
        prop_assert_eq!((a + b).evaluate(&pt).unwrap(), ea + eb);
    }

    #[test]
    fn det_is_multiplicative(a in matrix(3), b in matrix(3)) {
        let ab = a.mul(&b, &lim()).unwrap();
        let lhs = ab.det(&lim()).unwrap();
        let rhs = a.det(&lim()).unwrap() * b.det(&lim()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cofactor_and_bareiss_agree(a in matrix(4)) {
        prop_assert_eq!(a.det_cofactor(&lim()).unwrap(), a.det_bareiss(&lim()).unwrap());
    }

    #[test]
    fn chain_rule(f in map(2, 2, 3), g in map(2, 2, 3)) {
        let lhs = jacobian(&compose(&f, &g, &lim()).unwrap());
        let rhs = jacobian(&f).substitute(&g, &lim()).unwrap().mul(&jacobian(&g), &lim()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_format_round_trips(f in map(3, 3, 4)) {
        let names = default_names(3);
        let text = render_map(&f, &names).unwrap();
        let back = parse_map(&text).unwrap();
        prop_assert_eq!(&back.map, &f);
        prop_assert_eq!(render_map(&back.map, &back.names).unwrap(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triangular_maps_are_nice(n in 1usize..=4, seed in any::<u64>()) {
        let f = make_triangular(n, &TriangularParams::default(), seed);
        prop_assert!(is_triangular(&f));
        let r = check_nice(&f, &NiceOptions::with_max_steps(64)).unwrap();
        let m = r.m();
        prop_assert!(m.is_some(), "{:?}", r.verdict);
        prop_assert!(r.inverse_verified);
        prop_assert!(verify_inverse(&f, r.inverse.as_ref().unwrap(), &lim()).unwrap());
    }

    #[test]
    fn conjugation_preserves_m(n in 1usize..=3, seed in any::<u64>(), tseed in any::<u64>()) {
        let f = make_triangular(n, &TriangularParams::default(), seed);
        let t = random_unimodular(n, 2, tseed);
        let g = conjugate(&f, &t, &lim()).unwrap();
        let m = check_nice(&f, &NiceOptions::with_max_steps(64)).unwrap().verdict;
        prop_assert_eq!(check_nice(&g, &NiceOptions::with_max_steps(64)).unwrap().verdict, m);
    }

    #[test]
    fn inverse_is_nice_no_later(n in 1usize..=3, seed in any::<u64>()) {
        let f = make_triangular(n, &TriangularParams::default(), seed);
        let r = check_nice(&f, &NiceOptions::with_max_steps(64)).unwrap();
        let m = r.m().unwrap();
        let g = r.inverse.unwrap();
        let seq = p_sequence(&g, 64, &lim()).unwrap();
        let m_inv = seq.vanishing_step();
        prop_assert!(m_inv.is_some_and(|k| k <= m), "m = {m}, inverse: {m_inv:?}");
    }

    #[test]
    fn synthetic_pairs_pass(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        // (x1 + a x2^3, x2 + b x1^2 x2)
        let x = |i| Polynomial::var(2, i);
        let term = |e: Vec<u32>, c: i64| Polynomial::monomial(Monomial::new(e), Rational::from(c));
        let small = PolyMap::new(2, vec![x(0) + term(vec![0, 3], a), x(1) + term(vec![2, 1], b)]).unwrap();
        let pair = GzPair::synthetic(small, 2, seed, &lim()).unwrap();
        let rep = gz_check(&pair, 2, &lim()).unwrap();
        prop_assert!(rep.passes(), "{rep:?}");
    }

    #[test]
    fn randomized_index_never_exceeds_symbolic(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3), seed in any::<u64>()) {
        let mut a = RatMatrix::zeros(3, 3);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if j < i {
                    a.set(i, j, Rational::from(*v));
                }
            }
        }
        let spec = DruzkowskiSpec::new(a).unwrap();
        let jh = jacobian(&spec.build().minus_identity().unwrap());
        let sym = nilpotence_index(&jh, 8, NilpotenceMode::Symbolic, &lim()).unwrap().outcome;
        let rnd = nilpotence_index(&jh, 8, NilpotenceMode::Randomized { samples: 4, seed }, &lim()).unwrap().outcome;
        match (sym, rnd) {
            (Nilpotence::Nilpotent(s), Nilpotence::Nilpotent(r)) => prop_assert!(r <= s),
            other => prop_assert!(false, "{other:?}"),
        }
        let tagged = nilpotence_index(&spec.jacobian_h(), 8, NilpotenceMode::Symbolic, &lim()).unwrap().outcome;
        prop_assert_eq!(tagged, sym);
    }
}

#[test]
fn nilpotent_linear_part_gives_nice_cubic_linear_map() {
    let a = RatMatrix::from_i64(&[&[0, 0, 0], &[2, 0, 0], &[1, -1, 0]]);
    let f = DruzkowskiSpec::new(a).unwrap().build();
    let r = check_nice(&f, &NiceOptions::default()).unwrap();
    assert!(matches!(r.verdict, Verdict::Nice(m) if m <= 5));
}

use hopf_tr::graph::{enumerate_family, parse_graph, GraphFamilyId, Limits};
use hopf_tr::hopf::Q;
use hopf_tr::laurent::{expand_local, Poly, RatExpr};
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

/// `c0 + c1 q + c2 p + c3 q p`, with `c0` forced non-zero when `unit`.
fn poly(unit: bool) -> impl Strategy<Value = Poly> {
    (small_q(), small_q(), small_q(), small_q()).prop_map(move |(c0, c1, c2, c3)| {
        let c0 = if unit && c0 == Q::from_integer(0.into()) { Q::from_integer(1.into()) } else { c0 };
        let q = Poly::var("q");
        let p = Poly::var("p");
        &(&(&Poly::constant(c0) + &q.scale(&c1)) + &p.scale(&c2)) + &(&q * &p).scale(&c3)
    })
}

/// `N / (q^m D)` with `D` non-zero at `q = 0`.
fn rational() -> impl Strategy<Value = RatExpr> {
    (poly(false), poly(true), 0u32..4).prop_map(|(n, d, m)| {
        let den = &d.pow(2) * &Poly::var("q").pow(m);
        RatExpr::new(n, den).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn expansion_is_multiplicative(a in rational(), b in rational()) {
        let order = 3;
        let sa = expand_local(&a, "q", order).unwrap();
        let sb = expand_local(&b, "q", order).unwrap();
        let prod = sa.mul(&sb);
        let direct = expand_local(&(&a * &b), "q", prod.order()).unwrap();
        prop_assert_eq!(direct, prod);
    }

    #[test]
    fn expansion_is_additive(a in rational(), b in rational()) {
        let sum = expand_local(&a, "q", 2).unwrap().add(&expand_local(&b, "q", 2).unwrap());
        prop_assert_eq!(expand_local(&(&a + &b), "q", 2).unwrap(), sum);
    }

    #[test]
    fn negation_is_an_involution(a in rational()) {
        prop_assert_eq!(a.substitute_negate("q").substitute_negate("q"), a.clone());
        let s = expand_local(&a, "q", 2).unwrap();
        prop_assert_eq!(expand_local(&a.substitute_negate("q"), "q", 2).unwrap(), s.substitute_negate());
    }

    #[test]
    fn total_derivatives_have_no_residue(a in rational()) {
        let s = expand_local(&a, "q", 1).unwrap();
        prop_assert!(s.derivative().residue().unwrap().is_zero());
    }

    #[test]
    fn graphs_round_trip(n in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let family = enumerate_family(GraphFamilyId::Xbar(n), &Limits::default()).unwrap();
        let g = &family[pick.index(family.len())];
        prop_assert_eq!(&parse_graph(&g.render()).unwrap(), g);
    }
}

use proptest::prelude::*;
use vanishing_core::groebner::*;
use vanishing_core::polycore::*;

fn ambient() -> Ambient {
    Ambient::new(&["x", "y", "z"]).unwrap()
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), -3i64..=3), 1..=3).prop_map(|terms| {
        Polynomial::from_terms(
            &ambient(),
            terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), integer(c))),
        )
    })
}

fn small_ideal() -> impl Strategy<Value = IdealBasis> {
    prop::collection::vec(small_poly(), 1..=3).prop_map(|g| IdealBasis::new(&ambient(), g).unwrap())
}

fn orders() -> [MonomialOrder; 3] {
    [
        MonomialOrder::Lex,
        MonomialOrder::DegRevLex,
        MonomialOrder::BlockElimination { front: 1 },
    ]
}

fn certified() -> GroebnerConfig {
    GroebnerConfig {
        certify: true,
        ..GroebnerConfig::with_max_pairs(5_000)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn certificates_reproduce_every_element(ideal in small_ideal(), k in 0usize..3) {
        let order = orders()[k];
        let Ok(gb) = buchberger(&ideal, order, &certified()) else { return Ok(()) };
        let certs = gb.certificates().unwrap();
        for (g, cof) in gb.elements().iter().zip(certs) {
            let combo = cof
                .iter()
                .zip(gb.source_generators())
                .fold(Polynomial::zero(&ambient()), |acc, (c, f)| &acc + &(c * f));
            prop_assert_eq!(&combo, g);
        }
    }

    #[test]
    fn generators_reduce_to_zero_and_normal_form_is_idempotent(ideal in small_ideal(), p in small_poly(), k in 0usize..3) {
        let order = orders()[k];
        let Ok(gb) = buchberger(&ideal, order, &GroebnerConfig::with_max_pairs(5_000)) else { return Ok(()) };
        for g in ideal.generators() {
            prop_assert!(normal_form(g, &gb).unwrap().is_zero());
        }
        let r = normal_form(&p, &gb).unwrap();
        prop_assert_eq!(normal_form(&r, &gb).unwrap(), r.clone());
        // p - r lies in the ideal
        prop_assert!(normal_form(&(&p - &r), &gb).unwrap().is_zero());
    }

    #[test]
    fn elimination_is_inside_the_ideal_and_free_of_dropped(ideal in small_ideal()) {
        let cfg = GroebnerConfig::with_max_pairs(5_000);
        let Ok(kept) = eliminate(&ideal, &["x"], &cfg) else { return Ok(()) };
        prop_assert_eq!(kept.ambient().names(), &["y".to_string(), "z".to_string()][..]);
        let Ok(gb) = buchberger(&ideal, MonomialOrder::DegRevLex, &cfg) else { return Ok(()) };
        for g in kept.generators() {
            let back = g.embed(&ambient()).unwrap();
            prop_assert!(normal_form(&back, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn reduced_basis_is_order_canonical(ideal in small_ideal()) {
        let cfg = GroebnerConfig::with_max_pairs(5_000);
        let Ok(a) = buchberger(&ideal, MonomialOrder::DegRevLex, &cfg) else { return Ok(()) };
        let shuffled = IdealBasis::new(&ambient(), ideal.generators().iter().rev().cloned().collect()).unwrap();
        let Ok(b) = buchberger(&shuffled, MonomialOrder::DegRevLex, &cfg) else { return Ok(()) };
        prop_assert_eq!(a.elements(), b.elements());
    }
}

#[test]
fn quotient_dimension_does_not_depend_on_order() {
    let a = ambient();
    let p = |s: &str| parse_polynomial(s, &a).unwrap();
    let cases: [(&[&str], QuotientDimension); 4] = [
        (&["x^2 - y", "y^2 - z", "z^2"], QuotientDimension::Finite(8)),
        (&["x*y", "y*z", "x*z", "x^2 + y^2 + z^2 - 1"], QuotientDimension::Finite(6)),
        (&["x^3", "y^2", "z"], QuotientDimension::Finite(6)),
        (&["x*y", "z"], QuotientDimension::Infinite),
    ];
    for (gens, expected) in cases {
        let ideal = IdealBasis::new(&a, gens.iter().map(|s| p(s)).collect()).unwrap();
        for order in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            let d = quotient_dimension(&ideal, order, &GroebnerConfig::default()).unwrap();
            assert_eq!(d, expected, "{gens:?} under {order:?}");
        }
    }
}

#[test]
fn twisted_cubic_implicitization() {
    let a = Ambient::new(&["t", "x", "y", "z"]).unwrap();
    let p = |s: &str| parse_polynomial(s, &a).unwrap();
    let ideal = IdealBasis::new(&a, vec![p("x - t"), p("y - t^2"), p("z - t^3")]).unwrap();
    let kept = eliminate(&ideal, &["t"], &GroebnerConfig::default()).unwrap();
    let b = kept.ambient().clone();
    let q = |s: &str| parse_polynomial(s, &b).unwrap();
    // the three 2x2 minors of [[x, y, z], [1, x, y]] up to sign
    let expected = [q("x^2 - y"), q("x*y - z"), q("y^2 - x*z")];
    let cfg = GroebnerConfig::default();
    let gb = buchberger(&kept, MonomialOrder::DegRevLex, &cfg).unwrap();
    for e in &expected {
        assert!(normal_form(e, &gb).unwrap().is_zero(), "{e}");
    }
    let minors = IdealBasis::new(&b, expected.to_vec()).unwrap();
    let gb2 = buchberger(&minors, MonomialOrder::DegRevLex, &cfg).unwrap();
    assert_eq!(gb.elements(), gb2.elements());
}

#[test]
fn radical_but_not_ideal_membership() {
    let a = Ambient::new(&["x", "y"]).unwrap();
    let p = |s: &str| parse_polynomial(s, &a).unwrap();
    let ideal = IdealBasis::new(&a, vec![p("x^2"), p("y^3")]).unwrap();
    let cfg = GroebnerConfig::default();
    assert!(!ideal_membership(&p("x + y"), &ideal, MonomialOrder::DegRevLex, &cfg).unwrap());
    assert!(radical_membership(&p("x + y"), &ideal, &cfg).unwrap());
    assert!(!radical_membership(&p("x + 1"), &ideal, &cfg).unwrap());
}

#[test]
fn budget_errors_are_distinguishable() {
    let a = ambient();
    let p = |s: &str| parse_polynomial(s, &a).unwrap();
    let ideal = IdealBasis::new(&a, vec![p("x^2 - y"), p("x*y - z"), p("y^2 - x*z")]).unwrap();
    let err = buchberger(&ideal, MonomialOrder::Lex, &GroebnerConfig::with_max_pairs(1)).unwrap_err();
    assert!(err.is_resource_limit());
    let cfg = GroebnerConfig {
        time_limit: Some(std::time::Duration::ZERO),
        ..GroebnerConfig::default()
    };
    assert!(buchberger(&ideal, MonomialOrder::Lex, &cfg).unwrap_err().is_resource_limit());
}

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vanishing_core::polycore::*;

fn ambient() -> Ambient {
    Ambient::new(&["x", "y", "z"]).unwrap()
}

fn poly_strategy(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, 3), -6i64..=6, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(|terms| {
        let a = ambient();
        Polynomial::from_terms(
            &a,
            terms
                .into_iter()
                .map(|(e, n, d)| (Monomial::from_exponents(e), rational(n, d))),
        )
    })
}

fn point_strategy() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-5i64..=5, 1i64..=3), 3)
        .prop_map(|v| v.into_iter().map(|(n, d)| rational(n, d)).collect())
}

/// Evaluation by summing `c * x^a * y^b * z^c` term by term with repeated multiplication.
fn naive_eval(p: &Polynomial, point: &[BigRational]) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut v = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                v *= &point[i];
            }
        }
        total += v;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(5, 3), b in poly_strategy(5, 3), c in poly_strategy(5, 3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&ambient()), a.clone());
    }

    #[test]
    fn display_parse_round_trip(a in poly_strategy(6, 4)) {
        let text = a.to_string();
        prop_assert_eq!(parse_polynomial(&text, &ambient()).unwrap(), a);
    }

    #[test]
    fn derivative_is_a_derivation(a in poly_strategy(5, 3), b in poly_strategy(5, 3), i in 0usize..3, s in -4i64..=4) {
        let lhs = (&a * &b).derivative_at(i);
        let rhs = &(&a.derivative_at(i) * &b) + &(&a * &b.derivative_at(i));
        prop_assert_eq!(lhs, rhs);
        let lin = (&a.scale(&integer(s)) + &b).derivative_at(i);
        prop_assert_eq!(lin, &a.derivative_at(i).scale(&integer(s)) + &b.derivative_at(i));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(5, 3), b in poly_strategy(5, 3), pt in point_strategy()) {
        prop_assert_eq!((&a * &b).evaluate_at(&pt), a.evaluate_at(&pt) * b.evaluate_at(&pt));
        prop_assert_eq!((&a + &b).evaluate_at(&pt), a.evaluate_at(&pt) + b.evaluate_at(&pt));
        prop_assert_eq!(a.evaluate_at(&pt), naive_eval(&a, &pt));
    }

    #[test]
    fn order_is_additive(a in poly_strategy(4, 3), b in poly_strategy(4, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).order_at_origin().unwrap(), a.order_at_origin().unwrap() + b.order_at_origin().unwrap());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly_strategy(4, 2), b in poly_strategy(4, 2)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }
}

#[test]
fn one_hundred_random_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = ambient();
    for _ in 0..100 {
        let n = rng.gen_range(0..8);
        let p = Polynomial::from_terms(
            &a,
            (0..n).map(|_| {
                let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..5)).collect();
                (Monomial::from_exponents(e), rational(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            }),
        );
        assert_eq!(parse_polynomial(&p.to_string(), &a).unwrap(), p, "{p}");
    }
}

#[test]
fn multiplication_agrees_with_evaluation_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = ambient();
    let p = parse_polynomial("x^3*y - 2/3*y*z + 5", &a).unwrap();
    let q = parse_polynomial("z^2 - x*y + 1/2", &a).unwrap();
    let pq = &p * &q;
    for _ in 0..20 {
        let pt: Vec<BigRational> = (0..3).map(|_| rational(rng.gen_range(-20..=20), rng.gen_range(1..=7))).collect();
        assert_eq!(pq.evaluate_at(&pt), p.evaluate_at(&pt) * q.evaluate_at(&pt));
    }
}

fn cofactor_det(m: &[Vec<Polynomial>], a: &Ambient) -> Polynomial {
    if m.is_empty() {
        return Polynomial::one(a);
    }
    let mut acc = Polynomial::zero(a);
    for j in 0..m.len() {
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&minor, a);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[test]
fn determinant_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = ambient();
    let vars = ["x", "y", "z", "1", "2", "(-1)", "0"];
    for size in 1..=4 {
        for _ in 0..5 {
            let rows: Vec<Vec<Polynomial>> = (0..size)
                .map(|_| {
                    (0..size)
                        .map(|_| {
                            let s = format!("{}*{} + {}", vars[rng.gen_range(0..7)], vars[rng.gen_range(0..7)], vars[rng.gen_range(0..7)]);
                            parse_polynomial(&s, &a).unwrap()
                        })
                        .collect()
                })
                .collect();
            let m = PolyMatrix::new(size, size, &a, rows.concat()).unwrap();
            assert_eq!(m.determinant().unwrap(), cofactor_det(&rows, &a));
        }
    }
}

#[test]
fn resultant_vanishes_exactly_on_common_factors() {
    let a = Ambient::new(&["x", "y"]).unwrap();
    let p = |s: &str| parse_polynomial(s, &a).unwrap();
    let common = p("x - y");
    let f = &common * &p("x^2 + 1");
    let g = &common * &p("x + 3*y");
    assert!(resultant(&f, &g, "x").unwrap().is_zero());
    let r = resultant(&p("x^2 + 1"), &p("x + 3*y"), "x").unwrap();
    assert_eq!(r, p("9*y^2 + 1"));
    assert!(!r.is_zero());
    let d = resultant(&p("x^2 - y"), &p("2*x"), "x").unwrap();
    assert_eq!(d, p("-4*y"));
}

#[test]
fn squarefree_and_gcd_oracles() {
    let a = Ambient::new(&["s1", "s2"]).unwrap();
    let p = |s: &str| parse_polynomial(s, &a).unwrap();
    let f = p("s1^2*(s1 - s2)^3*(s2^2 + s1)");
    let sq = squarefree_part_bivariate(&f).unwrap();
    assert!(sq.equal_up_to_scalar(&p("s1*(s1 - s2)*(s2^2 + s1)")));
    assert!(is_squarefree_bivariate(&sq).unwrap());
    assert!(!is_squarefree_bivariate(&f).unwrap());
    let g = gcd_bivariate(&p("s1*s2*(s1 - s2)"), &p("s2^2*(s1 - s2)*(s1 + 1)")).unwrap();
    assert!(g.equal_up_to_scalar(&p("s2*(s1 - s2)")));
}

#[test]
fn evaluate_by_name() {
    let a = ambient();
    let p = parse_polynomial("x*y - z^2", &a).unwrap();
    let pt: BTreeMap<&str, i64> = [("x", 2), ("y", 3), ("z", 1)].into();
    let map = pt.iter().map(|(k, v)| (k.to_string(), integer(*v))).collect();
    assert_eq!(p.evaluate(&map).unwrap(), integer(5));
}

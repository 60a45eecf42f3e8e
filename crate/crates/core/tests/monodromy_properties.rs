use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vanishing_core::monodromy::*;

fn datum(label: &str) -> CoxeterDatum {
    CoxeterDatum::parse(label).unwrap()
}

/// Second closure count, keyed on plain row vectors rather than matrices.
fn orbit_closure_size(gens: &[IntMatrix]) -> usize {
    let n = gens[0].rows();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let id = IntMatrix::identity(n);
    seen.insert(id.to_rows());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.to_rows()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

#[test]
fn weyl_generators_are_involutions_satisfying_braid_relations() {
    for label in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4", "G2", "E6", "E7"] {
        let d = datum(label);
        let g = weyl_generators(&d);
        assert_eq!(involution_check(&g), None, "{label}");
        assert_eq!(braid_relation_check(&g, d.coxeter_matrix()).unwrap(), BraidCheck::Holds, "{label}");
    }
}

#[test]
fn braid_relations_fail_with_wrong_exponents() {
    for label in ["A3", "B3", "G2"] {
        let d = datum(label);
        let g = weyl_generators(&d);
        let mut m = d.coxeter_matrix().clone();
        // lower m_12 by one
        m.set(0, 1, m.get(0, 1) - 1);
        m.set(1, 0, m.get(1, 0) - 1);
        assert_eq!(braid_relation_check(&g, &m).unwrap(), BraidCheck::Fails { i: 0, j: 1 });
    }
}

#[test]
fn weyl_group_orders() {
    let golden = [("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("D4", 192), ("F4", 1152), ("E6", 51840)];
    for (label, order) in golden {
        let g = weyl_generators(&datum(label));
        assert_eq!(group_order_bfs(&g, DEFAULT_BFS_CAP).unwrap(), GroupOrder::Finite(order), "{label}");
        if order <= 1152 {
            assert_eq!(orbit_closure_size(&g), order, "{label}");
        }
    }
}

#[test]
fn coxeter_element_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for label in ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4", "G2", "E6"] {
        let t = DynkinType::parse(label).unwrap();
        let g = weyl_generators(&CoxeterDatum::from_type(t));
        let mut order: Vec<usize> = (0..g.len()).collect();
        let h = coxeter_number(t);
        assert_eq!(coxeter_element_order(&g, &order, 1000).unwrap(), Some(h), "{label}");
        for _ in 0..3 {
            order.shuffle(&mut rng);
            assert_eq!(coxeter_element_order(&g, &order, 1000).unwrap(), Some(h), "{label} {order:?}");
        }
    }
}

#[test]
fn picard_lefschetz_reflections() {
    for label in ["A2", "A3", "D4", "E6"] {
        let l = IntersectionLattice::root_lattice(&datum(label)).unwrap();
        let s = l.form();
        for i in 0..l.rank() {
            let h = pl_reflection(&l, i).unwrap();
            assert!(l.preserves_form(&h));
            assert!((&h * &h).is_identity());
            // h(a) = a + (a . D_i) D_i on every basis vector
            for j in 0..l.rank() {
                for r in 0..l.rank() {
                    let expected = i64::from(r == j) + if r == i { s.get(j, i) } else { 0 };
                    assert_eq!(h.get(r, j), expected);
                }
            }
        }
    }
}

#[test]
fn variation_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for label in ["A2", "A3", "D4", "E6"] {
        let l = IntersectionLattice::root_lattice(&datum(label)).unwrap();
        let mut order: Vec<usize> = (0..l.rank()).collect();
        for _ in 0..3 {
            let w = variation_matrix(&l, &order).unwrap();
            assert!(w.is_lower_triangular());
            assert!((0..w.rows()).all(|i| w.get(i, i).abs() == 1));
            assert_eq!(w.determinant().abs(), 1);
            assert_eq!(w.add(&w.transpose()), reordered_form(&l, &order));
            order.shuffle(&mut rng);
        }
    }
}

#[test]
fn foldings() {
    let cases = [
        ("D4", "full", "G2", 6, false),
        ("E6", "flip", "F4", 2, true),
        ("A3", "flip", "C2", 2, true),
        ("A5", "flip", "C3", 2, true),
        ("D5", "flip", "B4", 2, true),
    ];
    for (src, spec, target, order, abelian) in cases {
        let t = DynkinType::parse(src).unwrap();
        let fd = fold(&CoxeterDatum::from_type(t), &automorphisms_from_spec(t, spec).unwrap()).unwrap();
        assert_eq!(fd.identified.as_ref().map(|(t, _)| t.to_string()).as_deref(), Some(target), "{src}");
        assert_eq!(fd.group_order(), order);
        assert_eq!(fd.group_is_abelian(), abelian);
        assert!(quotient_rank_check(&fd));
        let l = IntersectionLattice::root_lattice(&fd.source).unwrap();
        assert!(fd.group.iter().all(|g| l.preserves_form(g)));
        // the folded datum satisfies the Cartan invariants by construction
        assert!(CoxeterDatum::from_cartan("check", fd.folded.cartan().clone()).is_ok());
    }
    for label in ["A1", "A4", "D4", "D5", "E6", "E7", "E8"] {
        let t = DynkinType::parse(label).unwrap();
        let fd = fold(&CoxeterDatum::from_type(t), &automorphisms_from_spec(t, "identity").unwrap()).unwrap();
        assert_eq!(fd.group_order(), 1);
        assert_eq!(fd.folded.rank(), t.rank());
        assert!(quotient_rank_check(&fd));
    }
}

#[test]
fn identification_up_to_relabelling() {
    // F4 with its nodes reversed is still F4
    let c = DynkinType::F4.cartan_matrix();
    let rev = IntMatrix::from_fn(4, 4, |i, j| c.get(3 - i, 3 - j));
    let (t, perm) = identify_cartan(&rev).unwrap();
    assert_eq!(t, DynkinType::F4);
    assert_eq!(perm, vec![3, 2, 1, 0]);
}

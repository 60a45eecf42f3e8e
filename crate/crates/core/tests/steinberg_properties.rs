use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vanishing_core::polycore::*;
use vanishing_core::steinberg::*;
use vanishing_core::symplectic::jacobi_check;

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    loop {
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|_| (0..n).map(|_| rational(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect())
            .collect();
        let m = RatMatrix::from_rows(rows);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// `P X P^{-1}` as a polynomial matrix over the map's ambient.
fn conjugate(s: &SteinbergMap, p: &RatMatrix) -> PolyMatrix {
    let x = s.generic_matrix();
    let pinv = p.inverse().unwrap();
    let n = s.size();
    let a = s.ambient();
    PolyMatrix::from_fn(n, n, a, |i, j| {
        let mut acc = Polynomial::zero(a);
        for k in 0..n {
            for l in 0..n {
                acc = &acc + &x.get(k, l).scale(&(p.get(i, k) * pinv.get(l, j)));
            }
        }
        acc
    })
    .unwrap()
}

#[test]
fn components_are_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for rank in [1, 2] {
        let s = steinberg_map(rank).unwrap();
        for _ in 0..10 {
            let p = random_invertible(&mut rng, rank + 1);
            assert_eq!(s.pullback(&conjugate(&s, &p)).unwrap(), s.components());
        }
    }
}

#[test]
fn characteristic_polynomial_oracle() {
    // c2 is the sum of principal 2x2 minors, c3 = -det X
    let s = steinberg_map(2).unwrap();
    let a = s.ambient();
    let p = |t: &str| parse_polynomial(t, a).unwrap();
    let m33 = "(-m11 - m22)";
    let c2 = p(&format!("m11*m22 - m12*m21 + m11*{m33} - m13*m31 + m22*{m33} - m23*m32"));
    let det = s.generic_matrix().determinant().unwrap();
    assert_eq!(s.components()[0], c2);
    assert_eq!(s.components()[1], -det);
}

#[test]
fn kks_structures_are_poisson() {
    for size in [2, 3] {
        let l = sl_structure(size).unwrap();
        let pi = kks_structure(&l).unwrap();
        assert_eq!(jacobi_check(&pi, None).unwrap(), None);
        for i in 0..pi.dimension() {
            for j in 0..pi.dimension() {
                assert_eq!(*pi.entry(i, j), -pi.entry(j, i).clone());
            }
        }
    }
}

#[test]
fn jacobian_rank_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for rank in [1, 2] {
        let s = steinberg_map(rank).unwrap();
        let n = rank + 1;
        for _ in 0..10 {
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|i| (0..n).map(|j| if i == n - 1 && j == n - 1 { integer(0) } else { integer(rng.gen_range(-5..=5)) }).collect())
                .collect();
            let mut x = RatMatrix::from_rows(rows);
            let tr = (0..n - 1).fold(integer(0), |acc, d| acc + x.get(d, d));
            x.set(n - 1, n - 1, -tr);
            assert!(jacobian_rank_at(&s, &x).unwrap() <= rank);
        }
        // regular semisimple: distinct eigenvalues conjugated by a random matrix
        let eig: Vec<i64> = if rank == 1 { vec![2, -2] } else { vec![1, 2, -3] };
        let d = RatMatrix::from_i64(&(0..n).map(|i| (0..n).map(|j| if i == j { eig[i] } else { 0 }).collect()).collect::<Vec<_>>());
        for _ in 0..3 {
            let p = random_invertible(&mut rng, n);
            let x = p.mul(&d).mul(&p.inverse().unwrap());
            assert_eq!(jacobian_rank_at(&s, &x).unwrap(), rank);
        }
    }
}

#[test]
fn discriminant_multiplicity_equals_rank() {
    for rank in [1, 2] {
        assert_eq!(steinberg_discriminant_multiplicity(rank).unwrap() as usize, rank);
    }
}

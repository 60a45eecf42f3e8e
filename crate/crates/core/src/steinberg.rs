//! The adjoint quotient of sl2 and sl3: structure constants, the
//! Kirillov–Kostant–Souriau bracket, characteristic-polynomial components,
//! their discriminant and the subregular slice.

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polycore::{
    coefficients_in, integer, is_squarefree_bivariate, resultant, squarefree_part_bivariate, Ambient,
    PolyError, PolyMatrix, Polynomial, RatMatrix,
};
use crate::symplectic::{casimir_check, jacobi_check, PoissonStructure, SymplecticError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinbergError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("only sl2 and sl3 are supported, got matrix size {0}")]
    UnsupportedSize(usize),
    #[error("only ranks 1 and 2 are supported, got {0}")]
    UnsupportedRank(usize),
    #[error("structure constants violate the Jacobi identity at basis triple {0:?}")]
    JacobiFailure((usize, usize, usize)),
    #[error("matrix is not traceless")]
    NotTraceless,
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    WrongShape { expected: usize, rows: usize, cols: usize },
}

fn q(n: i64) -> BigRational {
    integer(n)
}

/// A Lie algebra given by a basis of matrices and structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraDatum {
    labels: Vec<String>,
    basis: Vec<RatMatrix>,
    /// `constants[i][j][k]` is the coefficient of `x_k` in `[x_i, x_j]`.
    constants: Vec<Vec<Vec<BigRational>>>,
}

impl LieAlgebraDatum {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.constants[i][j][k]
    }

    /// Coordinates of `[x_i, x_j]` in the basis.
    pub fn bracket_coordinates(&self, i: usize, j: usize) -> &[BigRational] {
        &self.constants[i][j]
    }

    /// Gram matrix of the trace form `tr(B_i B_j)`.
    pub fn trace_form(&self) -> RatMatrix {
        let n = self.dimension();
        let mut k = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let p = self.basis[i].mul(&self.basis[j]);
                let tr = (0..p.rows()).fold(BigRational::zero(), |acc, d| acc + p.get(d, d));
                k.set(i, j, tr);
            }
        }
        k
    }

    /// First basis triple where the Jacobi identity fails.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dimension();
        let bracket_vec = |v: &[BigRational], j: usize| -> Vec<BigRational> {
            let mut out = vec![BigRational::zero(); n];
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for k in 0..n {
                    out[k] += c * &self.constants[i][j][k];
                }
            }
            out
        };
        let unit = |i: usize| -> Vec<BigRational> {
            (0..n).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }).collect()
        };
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let t1 = bracket_vec(&bracket_vec(&unit(a), b), c);
                    let t2 = bracket_vec(&bracket_vec(&unit(b), c), a);
                    let t3 = bracket_vec(&bracket_vec(&unit(c), a), b);
                    if (0..n).any(|k| !(&t1[k] + &t2[k] + &t3[k]).is_zero()) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

fn elementary(size: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(size, size);
    m.set(i, j, q(1));
    m
}

fn commutator(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let ab = a.mul(b);
    let ba = b.mul(a);
    let mut out = RatMatrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, ab.get(i, j) - ba.get(i, j));
        }
    }
    out
}

/// Basis `h_1..h_{N-1}` with `h_i = E_ii - E_{i+1,i+1}`, then `E_ij` for
/// `i < j`, then `E_ij` for `i > j`.
fn sl_basis(size: usize) -> (Vec<String>, Vec<RatMatrix>, Vec<(usize, usize)>) {
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..size - 1 {
        let mut h = RatMatrix::zeros(size, size);
        h.set(i, i, q(1));
        h.set(i + 1, i + 1, q(-1));
        labels.push(if size == 2 { "h".to_string() } else { format!("h{}", i + 1) });
        basis.push(h);
    }
    let mut offdiag = Vec::new();
    for upper in [true, false] {
        for i in 0..size {
            for j in 0..size {
                if (upper && i < j) || (!upper && i > j) {
                    offdiag.push((i, j));
                }
            }
        }
    }
    for &(i, j) in &offdiag {
        labels.push(match (size, i < j) {
            (2, true) => "e".to_string(),
            (2, false) => "f".to_string(),
            _ => format!("e{}{}", i + 1, j + 1),
        });
        basis.push(elementary(size, i, j));
    }
    (labels, basis, offdiag)
}

/// Structure constants of `sl_N` for `N` in {2, 3}, checked against Jacobi.
pub fn sl_structure(size: usize) -> Result<LieAlgebraDatum, SteinbergError> {
    if !(2..=3).contains(&size) {
        return Err(SteinbergError::UnsupportedSize(size));
    }
    let (labels, basis, offdiag) = sl_basis(size);
    let coords = |m: &RatMatrix| -> Vec<BigRational> {
        let mut v = Vec::with_capacity(basis.len());
        let mut partial = BigRational::zero();
        for i in 0..size - 1 {
            partial += m.get(i, i);
            v.push(partial.clone());
        }
        v.extend(offdiag.iter().map(|&(i, j)| m.get(i, j).clone()));
        v
    };
    let constants = basis
        .iter()
        .map(|a| basis.iter().map(|b| coords(&commutator(a, b))).collect())
        .collect();
    let datum = LieAlgebraDatum { labels, basis, constants };
    if let Some(t) = datum.jacobi_failure() {
        return Err(SteinbergError::JacobiFailure(t));
    }
    Ok(datum)
}

/// Linear coordinates `x_<label>` on the dual of the algebra.
pub fn coordinate_ambient(l: &LieAlgebraDatum) -> Ambient {
    let names: Vec<String> = l.labels().iter().map(|s| format!("x_{s}")).collect();
    Ambient::new(&names).expect("labels are identifiers")
}

/// `Π_ij = sum_k c_ij^k x_k`.
pub fn kks_structure(l: &LieAlgebraDatum) -> Result<PoissonStructure, SteinbergError> {
    let a = coordinate_ambient(l);
    let n = l.dimension();
    let m = PolyMatrix::from_fn(n, n, &a, |i, j| {
        l.bracket_coordinates(i, j)
            .iter()
            .enumerate()
            .fold(Polynomial::zero(&a), |acc, (k, c)| &acc + &Polynomial::var_at(&a, k).scale(c))
    })?;
    Ok(PoissonStructure::new(m)?)
}

/// Characteristic-polynomial map on traceless `(r+1) x (r+1)` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinbergMap {
    rank: usize,
    ambient: Ambient,
    /// Position of each matrix entry in the ambient, `None` for the last diagonal entry.
    entries: Vec<Vec<Option<usize>>>,
    components: Vec<Polynomial>,
}

impl SteinbergMap {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// Coefficients of `lambda^{r-1}, ..., lambda^0` in `det(lambda I - X)`.
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn size(&self) -> usize {
        self.rank + 1
    }

    /// The generic traceless matrix over the ambient.
    pub fn generic_matrix(&self) -> PolyMatrix {
        let a = &self.ambient;
        let n = self.size();
        let entry = |i: usize, j: usize| match self.entries[i][j] {
            Some(k) => Polynomial::var_at(a, k),
            None => -(0..n - 1).fold(Polynomial::zero(a), |acc, d| &acc + &Polynomial::var_at(a, self.entries[d][d].unwrap())),
        };
        PolyMatrix::from_fn(n, n, a, entry).expect("single ambient")
    }

    /// Images of the ambient coordinates when `X` is replaced by `m`.
    pub fn coordinates_of(&self, m: &PolyMatrix) -> Result<Vec<Polynomial>, SteinbergError> {
        let n = self.size();
        if m.rows() != n || m.cols() != n {
            return Err(SteinbergError::WrongShape { expected: n, rows: m.rows(), cols: m.cols() });
        }
        let trace = (0..n).fold(Polynomial::zero(m.ambient()), |acc, d| &acc + m.get(d, d));
        if !trace.is_zero() {
            return Err(SteinbergError::NotTraceless);
        }
        let mut images = vec![Polynomial::zero(m.ambient()); self.ambient.len()];
        for i in 0..n {
            for j in 0..n {
                if let Some(k) = self.entries[i][j] {
                    images[k] = m.get(i, j).clone();
                }
            }
        }
        Ok(images)
    }

    /// Components evaluated on the matrix `m` (polynomial entries, any ambient).
    pub fn pullback(&self, m: &PolyMatrix) -> Result<Vec<Polynomial>, SteinbergError> {
        let images = self.coordinates_of(m)?;
        Ok(self
            .components
            .iter()
            .map(|c| c.substitute(&images))
            .collect::<Result<_, _>>()?)
    }

    fn point_of(&self, x: &RatMatrix) -> Result<Vec<BigRational>, SteinbergError> {
        let n = self.size();
        if x.rows() != n || x.cols() != n {
            return Err(SteinbergError::WrongShape { expected: n, rows: x.rows(), cols: x.cols() });
        }
        let trace = (0..n).fold(BigRational::zero(), |acc, d| acc + x.get(d, d));
        if !trace.is_zero() {
            return Err(SteinbergError::NotTraceless);
        }
        let mut point = vec![BigRational::zero(); self.ambient.len()];
        for i in 0..n {
            for j in 0..n {
                if let Some(k) = self.entries[i][j] {
                    point[k] = x.get(i, j).clone();
                }
            }
        }
        Ok(point)
    }
}

pub fn steinberg_map(rank: usize) -> Result<SteinbergMap, SteinbergError> {
    let n = rank + 1;
    let names: Vec<String> = match rank {
        1 => ["a", "b", "c"].map(String::from).to_vec(),
        2 => ["m11", "m22", "m12", "m13", "m21", "m23", "m31", "m32"].map(String::from).to_vec(),
        _ => return Err(SteinbergError::UnsupportedRank(rank)),
    };
    let ambient = Ambient::new(&names)?;
    let mut entries = vec![vec![None; n]; n];
    if rank == 1 {
        entries[0][0] = Some(0);
        entries[0][1] = Some(1);
        entries[1][0] = Some(2);
    } else {
        for (k, name) in names.iter().enumerate() {
            let b = name.as_bytes();
            entries[(b[1] - b'1') as usize][(b[2] - b'1') as usize] = Some(k);
        }
    }
    let mut map = SteinbergMap { rank, ambient, entries, components: Vec::new() };
    let lambda_name = map.ambient.fresh_name("lambda");
    let big = map.ambient.extended(&[lambda_name.as_str()])?;
    let x = map.generic_matrix();
    let lambda = Polynomial::var_at(&big, big.len() - 1);
    let shifted = PolyMatrix::from_fn(n, n, &big, |i, j| {
        let e = x.get(i, j).embed(&big).expect("sub-ambient");
        if i == j {
            &lambda - &e
        } else {
            -e
        }
    })?;
    let charpoly = shifted.determinant()?;
    let coeffs = coefficients_in(&charpoly, big.len() - 1);
    map.components = (0..rank)
        .rev()
        .map(|d| coeffs.get(d).cloned().unwrap_or_else(|| Polynomial::zero(&big)).embed(&map.ambient))
        .collect::<Result<_, _>>()?;
    Ok(map)
}

/// Components expressed in the dual coordinates `x_c`, identifying the dual
/// with the algebra through the trace form.
pub fn components_on_dual(s: &SteinbergMap, l: &LieAlgebraDatum) -> Result<Vec<Polynomial>, SteinbergError> {
    let n = s.size();
    if l.basis().first().map(RatMatrix::rows) != Some(n) {
        return Err(SteinbergError::WrongShape {
            expected: n,
            rows: l.basis().first().map_or(0, RatMatrix::rows),
            cols: l.basis().first().map_or(0, RatMatrix::cols),
        });
    }
    let a = coordinate_ambient(l);
    let kinv = l.trace_form().inverse().expect("trace form of sl_N is nondegenerate");
    let dim = l.dimension();
    // y = K^{-1} x are the coefficients of the matrix dual to x
    let y: Vec<Polynomial> = (0..dim)
        .map(|d| {
            (0..dim).fold(Polynomial::zero(&a), |acc, c| &acc + &Polynomial::var_at(&a, c).scale(kinv.get(d, c)))
        })
        .collect();
    let m = PolyMatrix::from_fn(n, n, &a, |i, j| {
        (0..dim).fold(Polynomial::zero(&a), |acc, d| &acc + &y[d].scale(l.basis()[d].get(i, j)))
    })?;
    s.pullback(&m)
}

/// Whether each component, transported to the dual coordinates, is a Casimir of `pi`.
pub fn casimir_components_check(
    s: &SteinbergMap,
    l: &LieAlgebraDatum,
    pi: &PoissonStructure,
) -> Result<Vec<bool>, SteinbergError> {
    components_on_dual(s, l)?
        .iter()
        .map(|c| Ok(casimir_check(c, pi)?))
        .collect()
}

/// Runs the Jacobi identity on every coordinate triple of the KKS bracket.
pub fn kks_jacobi_holds(pi: &PoissonStructure) -> Result<bool, SteinbergError> {
    Ok(jacobi_check(pi, None)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinbergDiscriminant {
    pub rank: usize,
    /// Resultant of the universal characteristic polynomial and its derivative.
    pub resultant: Polynomial,
    pub reduced: Polynomial,
    pub squarefree: bool,
    pub multiplicity: u32,
}

/// Discriminant of `lambda^{r+1} + s1 lambda^{r-1} + ... + s_r` and its order at the origin.
pub fn steinberg_discriminant(rank: usize) -> Result<SteinbergDiscriminant, SteinbergError> {
    if !(1..=2).contains(&rank) {
        return Err(SteinbergError::UnsupportedRank(rank));
    }
    let mut names: Vec<String> = (1..=rank).map(|i| format!("s{i}")).collect();
    names.push("lambda".into());
    let big = Ambient::new(&names)?;
    let lambda = Polynomial::var_at(&big, rank);
    let mut p = lambda.pow(rank as u32 + 1);
    for i in 0..rank {
        p = &p + &(Polynomial::var_at(&big, i) * lambda.pow((rank - 1 - i) as u32));
    }
    let dp = p.derivative_at(rank);
    let target = Ambient::new(&names[..rank])?;
    let res = resultant(&p, &dp, "lambda")?.embed(&target)?;
    let reduced = squarefree_part_bivariate(&res)?;
    Ok(SteinbergDiscriminant {
        rank,
        squarefree: is_squarefree_bivariate(&reduced)?,
        multiplicity: reduced.order_at_origin()?,
        resultant: res,
        reduced,
    })
}

pub fn steinberg_discriminant_multiplicity(rank: usize) -> Result<u32, SteinbergError> {
    Ok(steinberg_discriminant(rank)?.multiplicity)
}

/// Exact rank of the Jacobian of the components at a traceless rational matrix.
pub fn jacobian_rank_at(s: &SteinbergMap, x: &RatMatrix) -> Result<usize, SteinbergError> {
    let point = s.point_of(x)?;
    let m = s.ambient().len();
    let rows: Vec<Vec<BigRational>> = s
        .components()
        .iter()
        .map(|c| (0..m).map(|j| c.derivative_at(j).evaluate_at(&point)).collect())
        .collect();
    Ok(RatMatrix::from_rows(rows).rank())
}

/// Computations along `X = diag(t, t, -2t) + [[u, v, 0], [w, -u, 0], [0, 0, 0]]`
/// near the subregular semisimple point `t = 1, Y = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceReport {
    /// `c2` and `c3` restricted to the slice, in `(t, u, v, w)`.
    pub restricted: Vec<Polynomial>,
    /// The same components rebuilt from `Q = -(u^2 + vw)` and `t`.
    pub normal_form: Vec<Polynomial>,
    pub matches_normal_form: bool,
    /// Rank of the Hessian of `c2` on the slice in `(u, v, w)`.
    pub quadratic_rank: usize,
    /// Rank of the `t`-derivative of the components at the base point.
    pub linear_rank_in_t: usize,
    /// Gradient in `(u, v, w)` vanishes at `Y = 0` for every `t`.
    pub a1_point: bool,
    /// Determinant of `d(c2, c3)/d(Q, t)` at the base point; nonzero makes
    /// `(c2, c3) -> (Q, t)` a local change of target coordinates.
    pub target_jacobian: BigRational,
}

impl SliceReport {
    pub fn passes(&self) -> bool {
        self.matches_normal_form
            && self.quadratic_rank == 3
            && self.linear_rank_in_t == 1
            && self.a1_point
            && !self.target_jacobian.is_zero()
    }
}

pub fn subregular_slice_check() -> Result<SliceReport, SteinbergError> {
    let s = steinberg_map(2)?;
    let a = Ambient::new(&["t", "u", "v", "w"])?;
    let var = |i| Polynomial::var_at(&a, i);
    let (t, u, v, w) = (var(0), var(1), var(2), var(3));
    let zero = Polynomial::zero(&a);
    let slice = PolyMatrix::new(
        3,
        3,
        &a,
        vec![
            &t + &u, v.clone(), zero.clone(),
            w.clone(), &t - &u, zero.clone(),
            zero.clone(), zero.clone(), t.scale(&q(-2)),
        ],
    )?;
    let restricted = s.pullback(&slice)?;
    let qf = -(&(&u * &u) + &(&v * &w));
    let t2 = &t * &t;
    let normal_form = vec![&qf - &t2.scale(&q(3)), (&t2 + &qf) * t.scale(&q(2))];
    let matches_normal_form = restricted == normal_form;

    let base = [q(1), q(0), q(0), q(0)];
    let hessian = RatMatrix::from_rows(
        (1..4)
            .map(|i| (1..4).map(|j| restricted[0].derivative_at(i).derivative_at(j).evaluate_at(&base)).collect())
            .collect(),
    );
    let dt = RatMatrix::from_rows(restricted.iter().map(|c| vec![c.derivative_at(0).evaluate_at(&base)]).collect());
    let on_axis: Vec<Polynomial> = vec![t.clone(), zero.clone(), zero.clone(), zero];
    let a1_point = restricted.iter().all(|c| {
        (1..4).all(|i| c.derivative_at(i).substitute(&on_axis).map(|p| p.is_zero()).unwrap_or(false))
    });

    let target = Ambient::new(&["Q", "t"])?;
    let (qv, tv) = (Polynomial::var_at(&target, 0), Polynomial::var_at(&target, 1));
    let tt = &tv * &tv;
    let psi = [&qv - &tt.scale(&q(3)), (&tt + &qv) * tv.scale(&q(2))];
    let at = [q(0), q(1)];
    let jac = RatMatrix::from_rows(
        psi.iter().map(|c| (0..2).map(|j| c.derivative_at(j).evaluate_at(&at)).collect()).collect(),
    );
    Ok(SliceReport {
        restricted,
        normal_form,
        matches_normal_form,
        quadratic_rank: hessian.rank(),
        linear_rank_in_t: dt.rank(),
        a1_point,
        target_jacobian: jac.determinant(),
    })
}

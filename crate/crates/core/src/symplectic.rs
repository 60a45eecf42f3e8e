//! Poisson brackets, Hamiltonian vector fields and involutivity.
//!
//! Sign conventions: the canonical bracket is
//! `{f, g} = sum_i df/dq_i * dg/dp_i - df/dp_i * dg/dq_i`, and the Hamiltonian
//! field of `H` is the derivation `g -> {g, H}`, so `q_j' = dH/dp_j` and
//! `p_j' = -dH/dq_j`. With these, `H = p2` has field `d/dq2`.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::polycore::{Ambient, PolyError, PolyMatrix, Polynomial, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("map germ has no symplectic pairing")]
    MissingSymplecticContext,
    #[error("component {index} does not vanish at the origin")]
    NotAGerm { index: usize },
    #[error("a map germ needs at least one component")]
    NoComponents,
    #[error("variable '{0}' appears in more than one conjugate pair")]
    RepeatedPairVariable(String),
    #[error("bracket matrix is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("point {index} is not on the special fibre: component {component} is {value}")]
    OffSpecialFibre {
        index: usize,
        component: usize,
        value: BigRational,
    },
    #[error("point {index} has {found} coordinates, expected {expected}")]
    PointDimension {
        index: usize,
        found: usize,
        expected: usize,
    },
}

/// Conjugate pairs `(q_i, p_i)` inside an ambient, giving it the form `sum dq_i ^ dp_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticContext {
    ambient: Ambient,
    pairs: Vec<(usize, usize)>,
}

impl SymplecticContext {
    pub fn new(ambient: &Ambient, pairs: &[(&str, &str)]) -> Result<Self, SymplecticError> {
        let mut seen = Vec::new();
        let mut idx = Vec::with_capacity(pairs.len());
        for (q, p) in pairs {
            for v in [q, p] {
                if seen.contains(v) {
                    return Err(SymplecticError::RepeatedPairVariable(v.to_string()));
                }
                seen.push(*v);
            }
            idx.push((ambient.require(q)?, ambient.require(p)?));
        }
        Ok(SymplecticContext {
            ambient: ambient.clone(),
            pairs: idx,
        })
    }

    /// Ambient `(q1..qn, p1..pn)` with the obvious pairing.
    pub fn standard(n: usize) -> Self {
        let mut names: Vec<String> = (1..=n).map(|i| format!("q{i}")).collect();
        names.extend((1..=n).map(|i| format!("p{i}")));
        let ambient = Ambient::new(&names).expect("standard names are valid");
        SymplecticContext {
            ambient,
            pairs: (0..n).map(|i| (i, n + i)).collect(),
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn degrees_of_freedom(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn check(&self, f: &Polynomial) -> Result<(), SymplecticError> {
        if f.ambient() != &self.ambient {
            return Err(PolyError::AmbientMismatch {
                left: self.ambient.names().to_vec(),
                right: f.ambient().names().to_vec(),
            }
            .into());
        }
        Ok(())
    }
}

/// Canonical Poisson bracket `{f, g}`.
pub fn poisson_bracket(
    f: &Polynomial,
    g: &Polynomial,
    ctx: &SymplecticContext,
) -> Result<Polynomial, SymplecticError> {
    ctx.check(f)?;
    ctx.check(g)?;
    let mut acc = Polynomial::zero(&ctx.ambient);
    for &(q, p) in &ctx.pairs {
        acc = &acc + &(&f.derivative_at(q) * &g.derivative_at(p));
        acc = &acc - &(&f.derivative_at(p) * &g.derivative_at(q));
    }
    Ok(acc)
}

/// A map germ `(C^m, 0) -> (C^k, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGerm {
    ambient: Ambient,
    components: Vec<Polynomial>,
    symplectic: Option<SymplecticContext>,
}

impl MapGerm {
    pub fn new(
        ambient: &Ambient,
        components: Vec<Polynomial>,
        symplectic: Option<SymplecticContext>,
    ) -> Result<Self, SymplecticError> {
        if components.is_empty() {
            return Err(SymplecticError::NoComponents);
        }
        for (i, c) in components.iter().enumerate() {
            if c.ambient() != ambient {
                return Err(PolyError::AmbientMismatch {
                    left: ambient.names().to_vec(),
                    right: c.ambient().names().to_vec(),
                }
                .into());
            }
            if !c.constant_term().is_zero() {
                return Err(SymplecticError::NotAGerm { index: i });
            }
        }
        if let Some(ctx) = &symplectic {
            if ctx.ambient() != ambient {
                return Err(PolyError::AmbientMismatch {
                    left: ambient.names().to_vec(),
                    right: ctx.ambient().names().to_vec(),
                }
                .into());
            }
        }
        Ok(MapGerm {
            ambient: ambient.clone(),
            components,
            symplectic,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn source_dimension(&self) -> usize {
        self.ambient.len()
    }

    pub fn target_dimension(&self) -> usize {
        self.components.len()
    }

    pub fn symplectic(&self) -> Option<&SymplecticContext> {
        self.symplectic.as_ref()
    }
}

/// Outcome of an involutivity test; the witness is the first nonvanishing bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Involutivity {
    Involutive,
    Witness {
        i: usize,
        j: usize,
        bracket: Polynomial,
    },
}

impl Involutivity {
    pub fn is_involutive(&self) -> bool {
        matches!(self, Involutivity::Involutive)
    }
}

pub fn is_involutive(f: &MapGerm) -> Result<Involutivity, SymplecticError> {
    let ctx = f.symplectic().ok_or(SymplecticError::MissingSymplecticContext)?;
    let c = f.components();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let b = poisson_bracket(&c[i], &c[j], ctx)?;
            if !b.is_zero() {
                return Ok(Involutivity::Witness { i, j, bracket: b });
            }
        }
    }
    Ok(Involutivity::Involutive)
}

/// Vector field given by one coefficient per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// The field as a derivation: `X(g) = sum_i X_i dg/dx_i`.
    pub fn apply(&self, g: &Polynomial) -> Polynomial {
        self.components
            .iter()
            .enumerate()
            .fold(Polynomial::zero(g.ambient()), |acc, (i, c)| {
                &acc + &(c * &g.derivative_at(i))
            })
    }

    pub fn evaluate_at(&self, point: &[BigRational]) -> Vec<BigRational> {
        self.components.iter().map(|c| c.evaluate_at(point)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }
}

pub fn hamiltonian_vector_field(
    h: &Polynomial,
    ctx: &SymplecticContext,
) -> Result<VectorField, SymplecticError> {
    ctx.check(h)?;
    let mut components = vec![Polynomial::zero(&ctx.ambient); ctx.ambient.len()];
    for &(q, p) in &ctx.pairs {
        components[q] = h.derivative_at(p);
        components[p] = -h.derivative_at(q);
    }
    Ok(VectorField { components })
}

/// Antisymmetric matrix of brackets of coordinates, `pi[i][j] = {x_i, x_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonStructure {
    matrix: PolyMatrix,
}

impl PoissonStructure {
    pub fn new(matrix: PolyMatrix) -> Result<Self, SymplecticError> {
        let n = matrix.rows();
        if matrix.cols() != n || matrix.ambient().len() != n {
            return Err(PolyError::DimensionMismatch {
                expected: matrix.ambient().len(),
                found: n,
            }
            .into());
        }
        for i in 0..n {
            for j in i..n {
                if matrix.get(i, j) != &-matrix.get(j, i) {
                    return Err(SymplecticError::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(PoissonStructure { matrix })
    }

    pub fn canonical(ctx: &SymplecticContext) -> Self {
        let a = ctx.ambient();
        let n = a.len();
        let mut entries = vec![Polynomial::zero(a); n * n];
        for &(q, p) in ctx.pairs() {
            entries[q * n + p] = Polynomial::one(a);
            entries[p * n + q] = -Polynomial::one(a);
        }
        PoissonStructure {
            matrix: PolyMatrix::new(n, n, a, entries).expect("square"),
        }
    }

    pub fn ambient(&self) -> &Ambient {
        self.matrix.ambient()
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        self.matrix.get(i, j)
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }
}

/// `{f, g} = sum_{i<j} pi_ij (df/dx_i dg/dx_j - df/dx_j dg/dx_i)`.
pub fn general_bracket(
    f: &Polynomial,
    g: &Polynomial,
    pi: &PoissonStructure,
) -> Result<Polynomial, SymplecticError> {
    for h in [f, g] {
        if h.ambient() != pi.ambient() {
            return Err(PolyError::AmbientMismatch {
                left: pi.ambient().names().to_vec(),
                right: h.ambient().names().to_vec(),
            }
            .into());
        }
    }
    let n = pi.dimension();
    let df: Vec<Polynomial> = (0..n).map(|i| f.derivative_at(i)).collect();
    let dg: Vec<Polynomial> = (0..n).map(|i| g.derivative_at(i)).collect();
    let mut acc = Polynomial::zero(pi.ambient());
    for i in 0..n {
        for j in i + 1..n {
            let e = pi.entry(i, j);
            if e.is_zero() {
                continue;
            }
            let inner = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !inner.is_zero() {
                acc = &acc + &(e * &inner);
            }
        }
    }
    Ok(acc)
}

/// First coordinate triple violating the Jacobi identity, if any.
///
/// With `triples = None` every triple `i < j < k` is checked.
pub fn jacobi_check(
    pi: &PoissonStructure,
    triples: Option<&[(usize, usize, usize)]>,
) -> Result<Option<(usize, usize, usize)>, SymplecticError> {
    let n = pi.dimension();
    let all: Vec<(usize, usize, usize)>;
    let triples = match triples {
        Some(t) => t,
        None => {
            all = (0..n)
                .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
                .collect();
            &all
        }
    };
    let coord = |i: usize| Polynomial::var_at(pi.ambient(), i);
    for &(i, j, k) in triples {
        let mut total = Polynomial::zero(pi.ambient());
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            total = &total + &general_bracket(&coord(a), pi.entry(b, c), pi)?;
        }
        if !total.is_zero() {
            return Ok(Some((i, j, k)));
        }
    }
    Ok(None)
}

/// Whether `c` Poisson-commutes with every coordinate function.
///
/// By linearity and the Leibniz rule, commuting with the coordinates is the
/// same as commuting with every polynomial.
pub fn casimir_check(c: &Polynomial, pi: &PoissonStructure) -> Result<bool, SymplecticError> {
    for i in 0..pi.dimension() {
        let x = Polynomial::var_at(pi.ambient(), i);
        if !general_bracket(c, &x, pi)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of evaluating the Hamiltonian fields of a germ at one sample point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyramidalityProbe {
    pub point: Vec<BigRational>,
    pub rank: usize,
    pub expected_dimension: usize,
}

impl PyramidalityProbe {
    /// Rank equals the stratum dimension. A necessary condition only.
    pub fn consistent(&self) -> bool {
        self.rank == self.expected_dimension
    }
}

/// Rank of the span of the Hamiltonian fields of the components at each
/// point of the special fibre, against the caller's stratum dimension.
pub fn pyramidality_probe(
    f: &MapGerm,
    points: &[Vec<BigRational>],
    expected_dimension: usize,
) -> Result<Vec<PyramidalityProbe>, SymplecticError> {
    let ctx = f.symplectic().ok_or(SymplecticError::MissingSymplecticContext)?;
    let fields = f
        .components()
        .iter()
        .map(|h| hamiltonian_vector_field(h, ctx))
        .collect::<Result<Vec<_>, _>>()?;
    let m = f.source_dimension();
    let mut out = Vec::with_capacity(points.len());
    for (index, point) in points.iter().enumerate() {
        if point.len() != m {
            return Err(SymplecticError::PointDimension {
                index,
                found: point.len(),
                expected: m,
            });
        }
        for (component, c) in f.components().iter().enumerate() {
            let value = c.evaluate_at(point);
            if !value.is_zero() {
                return Err(SymplecticError::OffSpecialFibre {
                    index,
                    component,
                    value,
                });
            }
        }
        let rows: Vec<Vec<BigRational>> = fields.iter().map(|x| x.evaluate_at(point)).collect();
        out.push(PyramidalityProbe {
            point: point.clone(),
            rank: RatMatrix::from_rows(rows).rank(),
            expected_dimension,
        });
    }
    Ok(out)
}

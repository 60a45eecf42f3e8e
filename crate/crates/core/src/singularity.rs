//! Critical loci, discriminants by elimination, and the multiplicity and
//! Betti-number bookkeeping attached to them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::groebner::{
    eliminate_with_basis, quotient_dimension, GroebnerConfig, GroebnerError, IdealBasis,
    MonomialOrder, QuotientDimension,
};
use crate::polycore::{
    gcd_bivariate, squarefree_part_bivariate, Ambient, PolyError, PolyMatrix, Polynomial,
    RatMatrix,
};
use crate::symplectic::{MapGerm, SymplecticContext, SymplecticError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("target coordinate '{0}' clashes with a source variable")]
    TargetNameClash(String),
    #[error("{k} components on a {m}-dimensional source; need k <= m")]
    TooManyComponents { k: usize, m: usize },
    #[error("multiplicity is only defined here for plane discriminants, not k = {0}")]
    UnsupportedTarget(usize),
    #[error("the discriminant does not pass through the origin")]
    NotThroughOrigin,
    #[error("no reduced principal generator is available")]
    NoReducedGenerator,
    #[error("inconsistent dimensions: {0}")]
    InconsistentDimensions(String),
    #[error("linear map is not generic: the minor on columns {columns:?} vanishes")]
    NonGeneric { columns: Vec<usize> },
    #[error("unknown hypothesis '{0}'")]
    UnknownHypothesis(String),
}

/// Hypotheses of the free-basis theorem that the caller asserts and reports restate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hypothesis {
    TnType,
    Simplifiable,
    Calibrated,
    Pyramidal,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::TnType => "Tn-type",
            Hypothesis::Simplifiable => "simplifiable",
            Hypothesis::Calibrated => "calibrated",
            Hypothesis::Pyramidal => "pyramidal",
        })
    }
}

impl FromStr for Hypothesis {
    type Err = SingularityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Tn-type" => Ok(Hypothesis::TnType),
            "simplifiable" => Ok(Hypothesis::Simplifiable),
            "calibrated" => Ok(Hypothesis::Calibrated),
            "pyramidal" => Ok(Hypothesis::Pyramidal),
            other => Err(SingularityError::UnknownHypothesis(other.to_string())),
        }
    }
}

/// `k x m` matrix of partial derivatives of the components.
pub fn jacobian(f: &MapGerm) -> PolyMatrix {
    let m = f.source_dimension();
    PolyMatrix::from_fn(f.target_dimension(), m, f.ambient(), |i, j| {
        f.components()[i].derivative_at(j)
    })
    .expect("components share the ambient")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The graph of `f` over its critical points, in source plus target variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalIdeal {
    ideal: IdealBasis,
    source: Vec<String>,
    target: Vec<String>,
}

impl CriticalIdeal {
    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    pub fn source_variables(&self) -> &[String] {
        &self.source
    }

    pub fn target_variables(&self) -> &[String] {
        &self.target
    }
}

/// Fibre equations `f_i - s_i` followed by the nonzero, pairwise distinct
/// maximal minors of the Jacobian, in lexicographic column-subset order.
pub fn critical_ideal(f: &MapGerm) -> Result<CriticalIdeal, SingularityError> {
    let (k, m) = (f.target_dimension(), f.source_dimension());
    if k > m {
        return Err(SingularityError::TooManyComponents { k, m });
    }
    let source: Vec<String> = f.ambient().names().to_vec();
    let target: Vec<String> = (1..=k).map(|i| format!("s{i}")).collect();
    if let Some(clash) = target.iter().find(|t| source.contains(t)) {
        return Err(SingularityError::TargetNameClash(clash.clone()));
    }
    let ambient = f.ambient().extended(&target)?;
    let mut gens = Vec::new();
    for (i, c) in f.components().iter().enumerate() {
        gens.push(c.embed(&ambient)? - Polynomial::var_at(&ambient, m + i));
    }
    let jac = jacobian(f);
    let rows: Vec<usize> = (0..k).collect();
    let mut minors: Vec<Polynomial> = Vec::new();
    for cols in combinations(m, k) {
        let d = jac.submatrix(&rows, &cols).determinant()?;
        if !d.is_zero() && !minors.contains(&d) {
            minors.push(d);
        }
    }
    for d in minors {
        gens.push(d.embed(&ambient)?);
    }
    Ok(CriticalIdeal {
        ideal: IdealBasis::new(&ambient, gens)?,
        source,
        target,
    })
}

/// The discriminant of a germ as an ideal in the target coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantDescription {
    pub k: usize,
    /// Eliminated ideal, as a reduced Gröbner basis in the target coordinates.
    pub ideal: IdealBasis,
    /// Squarefree generator of the hypersurface part, for k <= 2.
    pub reduced: Option<Polynomial>,
    /// Whether the eliminated ideal was principal.
    pub principal: bool,
    pub pairs_processed: usize,
}

impl DiscriminantDescription {
    /// Wraps a known defining equation of a plane discriminant.
    pub fn from_equation(equation: &Polynomial) -> Result<Self, SingularityError> {
        let k = equation.ambient().len();
        Ok(DiscriminantDescription {
            k,
            ideal: IdealBasis::new(equation.ambient(), vec![equation.clone()])?,
            reduced: Some(squarefree_part_bivariate(equation)?),
            principal: true,
            pairs_processed: 0,
        })
    }
}

/// Eliminates the source variables from the critical ideal.
pub fn discriminant(
    f: &MapGerm,
    config: &GroebnerConfig,
) -> Result<DiscriminantDescription, SingularityError> {
    let crit = critical_ideal(f)?;
    let drop: Vec<&str> = crit.source.iter().map(String::as_str).collect();
    let (ideal, gb) = eliminate_with_basis(&crit.ideal, &drop, config)?;
    let k = crit.target.len();
    let gens = ideal.generators();
    let principal = gens.len() == 1;
    let reduced = if k <= 2 && !gens.is_empty() {
        let mut g = gens[0].clone();
        for h in &gens[1..] {
            g = gcd_bivariate(&g, h)?;
        }
        if g.is_constant() {
            None
        } else {
            Some(squarefree_part_bivariate(&g)?)
        }
    } else {
        None
    };
    Ok(DiscriminantDescription {
        k,
        ideal,
        reduced,
        principal,
        pairs_processed: gb.pairs_processed(),
    })
}

/// Order at the origin of the reduced equation of a plane discriminant.
pub fn multiplicity_at_origin(d: &DiscriminantDescription) -> Result<u32, SingularityError> {
    if d.k != 2 {
        return Err(SingularityError::UnsupportedTarget(d.k));
    }
    let g = d.reduced.as_ref().ok_or(SingularityError::NoReducedGenerator)?;
    if !g.constant_term().is_zero() {
        return Err(SingularityError::NotThroughOrigin);
    }
    Ok(g.order_at_origin()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiPrediction {
    /// Middle dimension `n = m - k - s`.
    pub n: usize,
    /// Predicted rank of the n-th homology of the Milnor fibre.
    pub rank: u32,
    /// Hypotheses the caller asserted; the prediction is conditional on them.
    pub assumed: Vec<Hypothesis>,
}

/// Rank of `H_n` of the Milnor fibre predicted by the discriminant
/// multiplicity, for a germ `C^m -> C^k` with singular locus of dimension `s`.
pub fn betti_prediction(
    discriminant_multiplicity: u32,
    m: usize,
    k: usize,
    s: usize,
    assumed: &[Hypothesis],
) -> Result<BettiPrediction, SingularityError> {
    if discriminant_multiplicity == 0 {
        return Err(SingularityError::InconsistentDimensions(
            "discriminant multiplicity must be positive".into(),
        ));
    }
    if k == 0 || k > m || s > m - k {
        return Err(SingularityError::InconsistentDimensions(format!(
            "need 1 <= k <= m and 0 <= s <= m - k, got m={m}, k={k}, s={s}"
        )));
    }
    let mut assumed = assumed.to_vec();
    assumed.sort();
    assumed.dedup();
    Ok(BettiPrediction {
        n: m - k - s,
        rank: discriminant_multiplicity,
        assumed,
    })
}

/// Dimension of the quotient by the Jacobian ideal of `h`.
pub fn milnor_number(
    h: &Polynomial,
    config: &GroebnerConfig,
) -> Result<QuotientDimension, SingularityError> {
    let gens = (0..h.ambient().len()).map(|i| h.derivative_at(i)).collect();
    let ideal = IdealBasis::new(h.ambient(), gens)?;
    Ok(quotient_dimension(&ideal, MonomialOrder::DegRevLex, config)?)
}

/// The germ `R o g` with `g_i = p_i q_i` on `(q1..qn, p1..pn)`.
pub fn arnold_liouville_germ(n: usize, r: &RatMatrix) -> Result<MapGerm, SingularityError> {
    if r.cols() != n || r.rows() == 0 {
        return Err(SingularityError::InconsistentDimensions(format!(
            "R must be k x {n}, got {}x{}",
            r.rows(),
            r.cols()
        )));
    }
    let ctx = SymplecticContext::standard(n);
    let a = ctx.ambient().clone();
    let products: Vec<Polynomial> = (0..n)
        .map(|j| Polynomial::var_at(&a, j) * Polynomial::var_at(&a, n + j))
        .collect();
    let comps = (0..r.rows())
        .map(|i| {
            products
                .iter()
                .enumerate()
                .fold(Polynomial::zero(&a), |acc, (j, g)| &acc + &g.scale(r.get(i, j)))
        })
        .collect();
    Ok(MapGerm::new(&a, comps, Some(ctx))?)
}

fn check_generic(n: usize, k: usize, r: &RatMatrix) -> Result<(), SingularityError> {
    if r.rows() != k || r.cols() != n || k == 0 || n < k {
        return Err(SingularityError::InconsistentDimensions(format!(
            "need a surjective k x n matrix with 1 <= k <= n, got {}x{} for n={n}, k={k}",
            r.rows(),
            r.cols()
        )));
    }
    let rows: Vec<usize> = (0..k).collect();
    for cols in combinations(n, k) {
        if r.submatrix(&rows, &cols).determinant().is_zero() {
            return Err(SingularityError::NonGeneric { columns: cols });
        }
    }
    Ok(())
}

fn primitive_direction(v: Vec<BigRational>) -> Vec<BigInt> {
    let denom = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&denom / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => BigInt::from(-1),
        _ => BigInt::from(1),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Number of distinct hyperplanes `R(span{e_j : j in J})` over all
/// `(k-1)`-subsets `J`, which are the components of the discriminant of `R o g`.
pub fn count_hyperplane_images(n: usize, k: usize, r: &RatMatrix) -> Result<usize, SingularityError> {
    Ok(hyperplane_images(n, k, r)?.len())
}

/// Distinct primitive normals `a` of the image hyperplanes `a . s = 0`.
pub fn hyperplane_images(n: usize, k: usize, r: &RatMatrix) -> Result<Vec<Vec<BigInt>>, SingularityError> {
    check_generic(n, k, r)?;
    let mut normals = BTreeSet::new();
    for cols in combinations(n, k - 1) {
        // normal vector via signed maximal minors of the k x (k-1) block
        let normal: Vec<BigRational> = (0..k)
            .map(|i| {
                let rows: Vec<usize> = (0..k).filter(|&x| x != i).collect();
                let minor = if cols.is_empty() {
                    BigRational::from_integer(1.into())
                } else {
                    r.submatrix(&rows, &cols).determinant()
                };
                if i % 2 == 0 {
                    minor
                } else {
                    -minor
                }
            })
            .collect();
        normals.insert(primitive_direction(normal));
    }
    Ok(normals.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplicityRoute {
    Elimination,
    SubspaceCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArnoldLiouvilleMultiplicity {
    pub multiplicity: u32,
    pub route: MultiplicityRoute,
    /// Set when elimination was attempted and ran out of budget.
    pub elimination_error: Option<GroebnerError>,
    pub discriminant: Option<DiscriminantDescription>,
}

/// Discriminant multiplicity of `R o g`: by elimination when `k = 2` (falling
/// back to hyperplane counting if the budget runs out), otherwise by counting.
pub fn arnold_liouville_multiplicity(
    n: usize,
    k: usize,
    r: &RatMatrix,
    config: &GroebnerConfig,
) -> Result<ArnoldLiouvilleMultiplicity, SingularityError> {
    check_generic(n, k, r)?;
    let mut elimination_error = None;
    if k == 2 {
        let germ = arnold_liouville_germ(n, r)?;
        match discriminant(&germ, config) {
            Ok(d) => {
                return Ok(ArnoldLiouvilleMultiplicity {
                    multiplicity: multiplicity_at_origin(&d)?,
                    route: MultiplicityRoute::Elimination,
                    elimination_error: None,
                    discriminant: Some(d),
                })
            }
            Err(SingularityError::Groebner(e)) if e.is_resource_limit() => elimination_error = Some(e),
            Err(e) => return Err(e),
        }
    }
    Ok(ArnoldLiouvilleMultiplicity {
        multiplicity: count_hyperplane_images(n, k, r)? as u32,
        route: MultiplicityRoute::SubspaceCount,
        elimination_error,
        discriminant: None,
    })
}

/// Helper for building target-coordinate polynomials `s1..sk`.
pub fn target_ambient(k: usize) -> Ambient {
    let names: Vec<String> = (1..=k).map(|i| format!("s{i}")).collect();
    Ambient::new(&names).expect("valid names")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{integer, parse_polynomial};

    fn basic() -> MapGerm {
        let a = Ambient::new(&["q1", "p1", "q2", "p2"]).unwrap();
        let ctx = SymplecticContext::new(&a, &[("q1", "p1"), ("q2", "p2")]).unwrap();
        let comps = ["p1*q1", "p2"].iter().map(|s| parse_polynomial(s, &a).unwrap()).collect();
        MapGerm::new(&a, comps, Some(ctx)).unwrap()
    }

    fn one_var(expr: &str) -> MapGerm {
        let a = Ambient::new(&["q1"]).unwrap();
        MapGerm::new(&a, vec![parse_polynomial(expr, &a).unwrap()], None).unwrap()
    }

    #[test]
    fn jacobian_of_basic_germ() {
        let j = jacobian(&basic());
        let s: Vec<String> = j.entries().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["p1", "q1", "0", "0", "0", "0", "0", "1"]);
    }

    #[test]
    fn critical_ideals() {
        let c = critical_ideal(&basic()).unwrap();
        let s: Vec<String> = c.ideal().generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["q1*p1 - s1", "p2 - s2", "p1", "q1"]);

        let c = critical_ideal(&one_var("q1")).unwrap();
        let s: Vec<String> = c.ideal().generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["q1 - s1", "1"]);

        let c = critical_ideal(&one_var("q1^2")).unwrap();
        let s: Vec<String> = c.ideal().generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["q1^2 - s1", "2*q1"]);
    }

    #[test]
    fn too_many_components() {
        let a = Ambient::new(&["x"]).unwrap();
        let x = Polynomial::var_at(&a, 0);
        let f = MapGerm::new(&a, vec![x.clone(), x.pow(2)], None).unwrap();
        assert!(matches!(
            critical_ideal(&f),
            Err(SingularityError::TooManyComponents { k: 2, m: 1 })
        ));
    }

    #[test]
    fn basic_discriminant_is_a_line() {
        let d = discriminant(&basic(), &GroebnerConfig::default()).unwrap();
        assert_eq!(d.reduced.as_ref().unwrap().to_string(), "s1");
        assert_eq!(multiplicity_at_origin(&d).unwrap(), 1);
    }

    #[test]
    fn fold_discriminant() {
        let d = discriminant(&one_var("q1^2"), &GroebnerConfig::default()).unwrap();
        assert_eq!(d.ideal.generators()[0].to_string(), "s1");
        assert!(matches!(
            multiplicity_at_origin(&d),
            Err(SingularityError::UnsupportedTarget(1))
        ));
    }

    #[test]
    fn given_equations() {
        let t = target_ambient(2);
        let m = |s: &str| {
            multiplicity_at_origin(&DiscriminantDescription::from_equation(
                &parse_polynomial(s, &t).unwrap(),
            )
            .unwrap())
            .unwrap()
        };
        assert_eq!(m("s2*(s2^3 - s1^4)"), 4);
        assert_eq!(m("s1*s2*(s1 - s2)"), 3);
        assert_eq!(m("s1"), 1);
        assert_eq!(m("s1^2*s2^3"), 2);
        let off = DiscriminantDescription::from_equation(&parse_polynomial("s1 - 1", &t).unwrap()).unwrap();
        assert!(matches!(multiplicity_at_origin(&off), Err(SingularityError::NotThroughOrigin)));
    }

    #[test]
    fn betti_predictions() {
        let hyp = [Hypothesis::TnType, Hypothesis::Simplifiable, Hypothesis::Calibrated];
        let hh = betti_prediction(4, 4, 2, 1, &hyp).unwrap();
        assert_eq!((hh.n, hh.rank), (1, 4));
        assert_eq!(hh.assumed.len(), 3);
        let al = betti_prediction(3, 6, 2, 1, &hyp).unwrap();
        assert_eq!((al.n, al.rank), (3, 3));
        let morse = betti_prediction(1, 2, 1, 0, &[]).unwrap();
        assert_eq!((morse.n, morse.rank), (1, 1));
        assert!(betti_prediction(1, 4, 2, 3, &[]).is_err());
        assert!(betti_prediction(1, 2, 3, 0, &[]).is_err());
    }

    #[test]
    fn milnor_numbers() {
        let a = Ambient::new(&["x", "y"]).unwrap();
        let cfg = GroebnerConfig::default();
        let mu = |s: &str| milnor_number(&parse_polynomial(s, &a).unwrap(), &cfg).unwrap();
        assert_eq!(mu("x^2 + y^2"), QuotientDimension::Finite(1));
        assert_eq!(mu("x^3 + y^2"), QuotientDimension::Finite(2));
        assert_eq!(mu("x^2*y"), QuotientDimension::Infinite);
    }

    #[test]
    fn hypothesis_tokens() {
        for t in ["Tn-type", "simplifiable", "calibrated", "pyramidal"] {
            assert_eq!(t.parse::<Hypothesis>().unwrap().to_string(), t);
        }
        assert!("smooth".parse::<Hypothesis>().is_err());
    }

    #[test]
    fn non_generic_matrix_rejected() {
        let r = RatMatrix::from_rows(vec![
            vec![integer(1), integer(2), integer(3)],
            vec![integer(2), integer(4), integer(1)],
        ]);
        assert!(matches!(
            count_hyperplane_images(3, 2, &r),
            Err(SingularityError::NonGeneric { columns }) if columns == vec![0, 1]
        ));
    }
}

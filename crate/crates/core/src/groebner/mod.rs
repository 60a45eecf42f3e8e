//! Buchberger-based Gröbner bases: normal forms, ideal and radical
//! membership, elimination, and counting standard monomials.

mod buchberger;
mod order;

use std::time::Duration;

use thiserror::Error;

pub use buchberger::buchberger;
pub use order::MonomialOrder;

use crate::polycore::{Ambient, Monomial, PolyError, Polynomial};
use buchberger::GPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResourceLimit {
    Pairs(usize),
    Time(Duration),
}

impl std::fmt::Display for ResourceLimit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResourceLimit::Pairs(n) => write!(f, "{n} S-pairs"),
            ResourceLimit::Time(d) => write!(f, "{:.1}s wall clock", d.as_secs_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("resource limit of {limit} reached after {pairs_processed} pairs (basis size {basis_size})")]
    ResourceLimit {
        pairs_processed: usize,
        basis_size: usize,
        limit: ResourceLimit,
    },
    #[error("variable '{0}' is not in the ambient")]
    UnknownVariable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl GroebnerError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, GroebnerError::ResourceLimit { .. })
    }
}

/// Budget for a Gröbner computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub max_pairs: usize,
    pub time_limit: Option<Duration>,
    /// Track each basis element as a combination of the input generators.
    pub certify: bool,
}

impl GroebnerConfig {
    pub const DEFAULT_MAX_PAIRS: usize = 200_000;

    pub fn with_max_pairs(max_pairs: usize) -> Self {
        GroebnerConfig {
            max_pairs,
            ..Self::default()
        }
    }
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_pairs: Self::DEFAULT_MAX_PAIRS,
            time_limit: None,
            certify: false,
        }
    }
}

/// Generators of a polynomial ideal. Zero generators are dropped; an empty
/// list stands for the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    ambient: Ambient,
    generators: Vec<Polynomial>,
}

impl IdealBasis {
    pub fn new(ambient: &Ambient, generators: Vec<Polynomial>) -> Result<Self, PolyError> {
        if let Some(bad) = generators.iter().find(|g| g.ambient() != ambient) {
            return Err(PolyError::AmbientMismatch {
                left: ambient.names().to_vec(),
                right: bad.ambient().names().to_vec(),
            });
        }
        Ok(IdealBasis {
            ambient: ambient.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by descending leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ambient: Ambient,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    internal: Vec<GPoly>,
    generators: Vec<Polynomial>,
    certificates: Option<Vec<Vec<Polynomial>>>,
    pairs_processed: usize,
}

impl GroebnerBasis {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn pairs_processed(&self) -> usize {
        self.pairs_processed
    }

    /// The generators the basis was computed from.
    pub fn source_generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// For each element, cofactors `c` with `element = sum c[i] * source[i]`,
    /// present when the computation ran with `certify`.
    pub fn certificates(&self) -> Option<&[Vec<Polynomial>]> {
        self.certificates.as_deref()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Leading monomials of the elements under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        buchberger::lead_exponents(&self.internal)
            .into_iter()
            .map(Monomial::from_exponents)
            .collect()
    }
}

/// Remainder of `p` under full division by `basis`.
pub fn normal_form(p: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    if p.ambient() != basis.ambient() {
        return Err(PolyError::AmbientMismatch {
            left: p.ambient().names().to_vec(),
            right: basis.ambient().names().to_vec(),
        }
        .into());
    }
    Ok(buchberger::reduce_by(p, &basis.internal, basis.order))
}

pub fn ideal_membership(
    p: &Polynomial,
    ideal: &IdealBasis,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<bool, GroebnerError> {
    if p.is_zero() {
        return Ok(true);
    }
    let gb = buchberger(ideal, order, config)?;
    Ok(normal_form(p, &gb)?.is_zero())
}

/// Rabinowitsch test: `p` lies in the radical of `ideal` iff
/// `ideal + (1 - t p)` is the unit ideal for a fresh variable `t`.
pub fn radical_membership(
    p: &Polynomial,
    ideal: &IdealBasis,
    config: &GroebnerConfig,
) -> Result<bool, GroebnerError> {
    if p.ambient() != ideal.ambient() {
        return Err(PolyError::AmbientMismatch {
            left: p.ambient().names().to_vec(),
            right: ideal.ambient().names().to_vec(),
        }
        .into());
    }
    if p.is_zero() {
        return Ok(true);
    }
    let t = ideal.ambient().fresh_name("t");
    let extended = ideal.ambient().extended(&[t.as_str()])?;
    let mut gens = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&extended))
        .collect::<Result<Vec<_>, _>>()?;
    let tp = Polynomial::var(&extended, &t)? * p.embed(&extended)?;
    gens.push(Polynomial::one(&extended) - tp);
    let gb = buchberger(&IdealBasis::new(&extended, gens)?, MonomialOrder::DegRevLex, config)?;
    Ok(gb.is_unit())
}

/// Generators of the elimination ideal `ideal ∩ Q[kept variables]`, expressed
/// over the kept variables in their original order.
pub fn eliminate(
    ideal: &IdealBasis,
    drop: &[&str],
    config: &GroebnerConfig,
) -> Result<IdealBasis, GroebnerError> {
    Ok(eliminate_with_basis(ideal, drop, config)?.0)
}

/// As [`eliminate`], also returning the block-order basis it was read from.
pub fn eliminate_with_basis(
    ideal: &IdealBasis,
    drop: &[&str],
    config: &GroebnerConfig,
) -> Result<(IdealBasis, GroebnerBasis), GroebnerError> {
    let ambient = ideal.ambient();
    for name in drop {
        if ambient.index_of(name).is_none() {
            return Err(GroebnerError::UnknownVariable(name.to_string()));
        }
    }
    let kept: Vec<&str> = ambient
        .names()
        .iter()
        .map(String::as_str)
        .filter(|n| !drop.contains(n))
        .collect();
    let dropped: Vec<&str> = ambient
        .names()
        .iter()
        .map(String::as_str)
        .filter(|n| drop.contains(n))
        .collect();
    let mut permuted_names = dropped.clone();
    permuted_names.extend(&kept);
    let permuted = Ambient::new(&permuted_names)?;
    let kept_ambient = Ambient::new(&kept)?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&permuted))
        .collect::<Result<Vec<_>, _>>()?;
    let order = MonomialOrder::BlockElimination {
        front: dropped.len(),
    };
    let gb = buchberger(&IdealBasis::new(&permuted, gens)?, order, config)?;
    let front = dropped.len();
    let survivors = gb
        .elements()
        .iter()
        .filter(|g| g.occurring_variables().iter().all(|&i| i >= front))
        .map(|g| g.embed(&kept_ambient))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((IdealBasis::new(&kept_ambient, survivors)?, gb))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

/// Monomials outside the leading-term ideal of `basis`, or `None` when there
/// are infinitely many.
pub fn standard_monomials(basis: &GroebnerBasis) -> Option<Vec<Monomial>> {
    let n = basis.ambient().len();
    let leads: Vec<Vec<u32>> = basis
        .leading_monomials()
        .into_iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    if leads.is_empty() {
        return if n == 0 { Some(vec![Monomial::one(0)]) } else { None };
    }
    // bound[i]: smallest pure power of x_i among the leading monomials
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let pure = leads
            .iter()
            .filter(|l| l.iter().enumerate().all(|(k, &e)| k == i || e == 0))
            .map(|l| l[i])
            .min()?;
        bounds.push(pure);
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    collect_standard(&leads, &bounds, 0, &mut current, &mut out);
    out.sort();
    Some(out)
}

fn collect_standard(
    leads: &[Vec<u32>],
    bounds: &[u32],
    var: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if var == bounds.len() {
        out.push(Monomial::from_exponents(current.clone()));
        return;
    }
    for e in 0..bounds[var] {
        current[var] = e;
        // divisibility only grows with e, so stop at the first hit
        let hit = leads
            .iter()
            .any(|l| l.iter().zip(current.iter()).all(|(a, b)| a <= b));
        if hit {
            break;
        }
        collect_standard(leads, bounds, var + 1, current, out);
    }
    current[var] = 0;
}

/// Dimension over Q of the quotient ring by `ideal`.
pub fn quotient_dimension(
    ideal: &IdealBasis,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<QuotientDimension, GroebnerError> {
    let gb = buchberger(ideal, order, config)?;
    Ok(match standard_monomials(&gb) {
        Some(ms) => QuotientDimension::Finite(ms.len() as u64),
        None => QuotientDimension::Infinite,
    })
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::PolyError;

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, Eq)]
pub struct Ambient(Arc<[String]>);

impl Ambient {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        let mut seen = std::collections::HashSet::new();
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(PolyError::InvalidVariableName(n.to_string()));
            }
            if !seen.insert(n) {
                return Err(PolyError::DuplicateVariable(n.to_string()));
            }
        }
        Ok(Ambient(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// This ambient with `extra` appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ambient, PolyError> {
        let mut names: Vec<String> = self.0.to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ambient::new(&names)
    }

    /// A name of the form `{stem}`, `{stem}1`, ... not already in use.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (1..)
            .map(|i| format!("{stem}{i}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ambient: Ambient,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(ambient: &Ambient) -> Self {
        Polynomial {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: &Ambient, c: BigRational) -> Self {
        let mut p = Self::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ambient.len()), c);
        }
        p
    }

    pub fn from_int(ambient: &Ambient, c: i64) -> Self {
        Self::constant(ambient, BigRational::from_integer(c.into()))
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::from_int(ambient, 1)
    }

    pub fn var_at(ambient: &Ambient, index: usize) -> Self {
        let mut p = Self::zero(ambient);
        p.terms
            .insert(Monomial::var(ambient.len(), index), BigRational::one());
        p
    }

    pub fn var(ambient: &Ambient, name: &str) -> Result<Self, PolyError> {
        Ok(Self::var_at(ambient, ambient.require(name)?))
    }

    pub fn monomial(ambient: &Ambient, m: Monomial, c: BigRational) -> Self {
        Self::from_terms(ambient, [(m, c)])
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(ambient: &Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(ambient);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ambient.len(), "monomial length");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded reverse lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one(self.ambient.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Leading term in graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    /// Positions of the ambient variables that occur in some term.
    pub fn occurring_variables(&self) -> Vec<usize> {
        (0..self.ambient.len())
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect()
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch {
                left: self.ambient.names().to_vec(),
                right: other.ambient.names().to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        let mut out = Polynomial::zero(&self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ambient);
        }
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ambient);
        }
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ambient);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial, PolyError> {
        Ok(self.derivative_at(self.ambient.require(var)?))
    }

    pub fn derivative_at(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ambient);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derive(index) {
                out.add_term(dm, c * BigRational::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact value under an assignment covering every occurring variable.
    pub fn evaluate(
        &self,
        point: &HashMap<String, BigRational>,
    ) -> Result<BigRational, PolyError> {
        let mut values = Vec::with_capacity(self.ambient.len());
        let occurring = self.occurring_variables();
        for (i, name) in self.ambient.names().iter().enumerate() {
            match point.get(name) {
                Some(v) => values.push(v.clone()),
                None if occurring.contains(&i) => {
                    return Err(PolyError::MissingAssignment(name.clone()))
                }
                None => values.push(BigRational::zero()),
            }
        }
        Ok(self.evaluate_at(&values))
    }

    /// Exact value at a point given in ambient order.
    pub fn evaluate_at(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.ambient.len(), "point dimension");
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Minimal total degree of a term; the zero polynomial has no order.
    pub fn order_at_origin(&self) -> Result<u32, PolyError> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .min()
            .ok_or(PolyError::ZeroHasNoOrder)
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses this polynomial over `target`, matching variables by name.
    pub fn embed(&self, target: &Ambient) -> Result<Polynomial, PolyError> {
        let mut map = Vec::with_capacity(self.ambient.len());
        for (i, name) in self.ambient.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().any(|m| m.exponent(i) > 0) => {
                    return Err(PolyError::UnknownVariable(name.clone()))
                }
                None => map.push(None),
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] = e;
                }
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Replaces the i-th ambient variable by `images[i]`; all images share one ambient.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.ambient.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.ambient.len(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ambient.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            if p.ambient != target {
                return Err(PolyError::AmbientMismatch {
                    left: target.names().to_vec(),
                    right: p.ambient.names().to_vec(),
                });
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ambient);
        while let Some((m, c)) = rem.leading_term() {
            let q = lm.quotient_of(m).ok_or(PolyError::InexactDivision)?;
            let qc = c / &lc;
            rem = &rem - &divisor.mul_monomial(&q, &qc);
            quot.add_term(q, qc);
        }
        Ok(quot)
    }

    /// Integer coefficients with unit content and positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&denom_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut factor = BigRational::new(denom_lcm, num_gcd);
        if self.leading_term().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// True when `other = c * self` for some nonzero rational `c`.
    pub fn equal_up_to_scalar(&self, other: &Polynomial) -> bool {
        self.ambient == other.ambient
            && self.is_zero() == other.is_zero()
            && self.primitive().terms == other.primitive().terms
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = format_monomial(&self.ambient, m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn format_monomial(ambient: &Ambient, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ambient.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ambient.name(i), e)),
        }
    }
    parts.join("*")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials over different ambients")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(names: &[&str]) -> Ambient {
        Ambient::new(names).unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let a = amb(&["x", "y"]);
        let p = Polynomial::var_at(&a, 0) + Polynomial::from_int(&a, 3);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let a = amb(&["x", "y"]);
        let x = Polynomial::var_at(&a, 0);
        let y = Polynomial::var_at(&a, 1);
        let lhs = (&x + &y) * (&x - &y);
        assert_eq!(lhs, x.pow(2) - y.pow(2));
        assert_eq!(lhs.to_string(), "x^2 - y^2");
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let p = Polynomial::var_at(&amb(&["x"]), 0);
        let q = Polynomial::var_at(&amb(&["y"]), 0);
        assert!(matches!(
            p.checked_add(&q),
            Err(PolyError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn partial_derivatives() {
        let a = amb(&["q1", "p1"]);
        let p1q1 = Polynomial::var_at(&a, 0) * Polynomial::var_at(&a, 1);
        assert_eq!(p1q1.partial_derivative("p1").unwrap(), Polynomial::var_at(&a, 0));
        assert!(Polynomial::from_int(&a, 7)
            .partial_derivative("q1")
            .unwrap()
            .is_zero());
        assert!(matches!(
            p1q1.partial_derivative("z"),
            Err(PolyError::UnknownVariable(v)) if v == "z"
        ));
    }

    #[test]
    fn evaluation() {
        let a = amb(&["q1", "p1"]);
        let p1q1 = Polynomial::var_at(&a, 0) * Polynomial::var_at(&a, 1);
        let point: HashMap<String, BigRational> =
            [("q1".to_string(), integer(2)), ("p1".to_string(), integer(3))].into();
        assert_eq!(p1q1.evaluate(&point).unwrap(), integer(6));
        let partial: HashMap<String, BigRational> = [("q1".to_string(), integer(2))].into();
        assert!(matches!(
            p1q1.evaluate(&partial),
            Err(PolyError::MissingAssignment(v)) if v == "p1"
        ));
    }

    #[test]
    fn order_at_origin_cases() {
        let a = amb(&["x", "y"]);
        assert_eq!(Polynomial::from_int(&a, 5).order_at_origin().unwrap(), 0);
        assert!(matches!(
            Polynomial::zero(&a).order_at_origin(),
            Err(PolyError::ZeroHasNoOrder)
        ));
        let x = Polynomial::var_at(&a, 0);
        let y = Polynomial::var_at(&a, 1);
        assert_eq!((x.pow(3) + y.pow(2)).order_at_origin().unwrap(), 2);
    }

    #[test]
    fn exact_division() {
        let a = amb(&["x", "y"]);
        let x = Polynomial::var_at(&a, 0);
        let y = Polynomial::var_at(&a, 1);
        let f = &x + &y;
        let g = &x - &y;
        assert_eq!((&f * &g).div_exact(&g).unwrap(), f);
        assert!(matches!(
            (&f + &Polynomial::one(&a)).div_exact(&g),
            Err(PolyError::InexactDivision)
        ));
    }

    #[test]
    fn primitive_normalizes_scalars() {
        let a = amb(&["x", "y"]);
        let x = Polynomial::var_at(&a, 0);
        let y = Polynomial::var_at(&a, 1);
        let p = (x.scale(&rational(-3, 2)) + y.scale(&integer(6))).primitive();
        assert_eq!(p.to_string(), "x - 4*y");
        assert!(p.equal_up_to_scalar(&p.scale(&rational(-7, 5))));
    }

    #[test]
    fn substitution_composes() {
        let a = amb(&["x", "y"]);
        let t = amb(&["t"]);
        let tt = Polynomial::var_at(&t, 0);
        let p = Polynomial::var_at(&a, 1) - Polynomial::var_at(&a, 0).pow(2);
        let image = p.substitute(&[tt.clone(), tt.pow(2)]).unwrap();
        assert!(image.is_zero());
    }
}

//! Gcd and squarefree reduction for polynomials in at most two variables.
//!
//! A bivariate polynomial is viewed as a polynomial in a main variable `v`
//! with coefficients in `Q[u]`; gcds use the primitive pseudo-remainder
//! sequence, so no rational functions in `u` ever appear.

use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::PolyError;

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly(Vec<BigRational>);

impl UPoly {
    fn trimmed(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        UPoly::trimmed(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::trimmed(c)
    }

    fn scale(&self, s: &BigRational) -> UPoly {
        UPoly::trimmed(self.0.iter().map(|c| c * s).collect())
    }

    fn derivative(&self) -> UPoly {
        UPoly::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        let inv = d.lead().recip();
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &inv;
            for (i, dc) in d.0.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::trimmed(quot), UPoly::trimmed(rem))
    }

    fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Polynomial in `v` with coefficients in `Q[u]`, lowest `v`-degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BPoly(Vec<UPoly>);

impl BPoly {
    fn trimmed(mut c: Vec<UPoly>) -> Self {
        while c.last().is_some_and(UPoly::is_zero) {
            c.pop();
        }
        BPoly(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &UPoly {
        self.0.last().expect("nonzero polynomial")
    }

    fn content(&self) -> UPoly {
        self.0.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
    }

    fn primitive_part(&self) -> BPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        BPoly(self.0.iter().map(|x| x.div_rem(&c).0).collect())
    }

    fn scale_u(&self, s: &UPoly) -> BPoly {
        BPoly::trimmed(self.0.iter().map(|c| c.mul(s)).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &BPoly) -> BPoly {
        let dd = d.degree();
        let ld = d.lead().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let lr = r.lead().clone();
            let mut next = r.scale_u(&ld).0;
            for (i, c) in d.0.iter().enumerate() {
                next[shift + i] = next[shift + i].sub(&c.mul(&lr));
            }
            r = BPoly::trimmed(next);
        }
        r
    }

    fn gcd(&self, o: &BPoly) -> BPoly {
        if self.is_zero() {
            return o.primitive_part();
        }
        if o.is_zero() {
            return self.primitive_part();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree() == 0 {
                // primitive and free of v: a unit
                return BPoly(vec![c]);
            }
            let r = a.prem(&b);
            if r.is_zero() {
                return b.primitive_part().scale_u(&c);
            }
            a = b;
            b = r.primitive_part();
        }
    }
}

fn to_upoly(p: &Polynomial, u: usize) -> UPoly {
    let mut c = vec![BigRational::zero(); p.degree_in(u) as usize + 1];
    for (m, coef) in p.terms() {
        c[m.exponent(u) as usize] += coef;
    }
    UPoly::trimmed(c)
}

fn to_bpoly(p: &Polynomial, u: usize, v: usize) -> BPoly {
    let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); p.degree_in(v) as usize + 1];
    for (m, coef) in p.terms() {
        let row = &mut rows[m.exponent(v) as usize];
        let k = m.exponent(u) as usize;
        if row.len() <= k {
            row.resize(k + 1, BigRational::zero());
        }
        row[k] += coef;
    }
    BPoly::trimmed(rows.into_iter().map(UPoly::trimmed).collect())
}

fn from_bpoly(b: &BPoly, like: &Polynomial, u: usize, v: usize) -> Polynomial {
    let n = like.ambient().len();
    let mut terms = Vec::new();
    for (j, cu) in b.0.iter().enumerate() {
        for (i, c) in cu.0.iter().enumerate() {
            let mut exps = vec![0; n];
            exps[u] = i as u32;
            exps[v] = j as u32;
            terms.push((Monomial::from_exponents(exps), c.clone()));
        }
    }
    Polynomial::from_terms(like.ambient(), terms)
}

fn from_upoly(c: &UPoly, like: &Polynomial, u: usize) -> Polynomial {
    let n = like.ambient().len();
    let terms = c.0.iter().enumerate().map(|(i, c)| {
        let mut exps = vec![0; n];
        exps[u] = i as u32;
        (Monomial::from_exponents(exps), c.clone())
    });
    Polynomial::from_terms(like.ambient(), terms)
}

fn effective_pair(vars: &[usize]) -> Result<(usize, Option<usize>), PolyError> {
    match vars {
        [] => Ok((0, None)),
        [u] => Ok((*u, None)),
        [u, v] => Ok((*u, Some(*v))),
        _ => Err(PolyError::UnsupportedArity { found: vars.len() }),
    }
}

fn union_vars(a: &Polynomial, b: &Polynomial) -> Vec<usize> {
    let mut vars = a.occurring_variables();
    vars.extend(b.occurring_variables());
    vars.sort_unstable();
    vars.dedup();
    vars
}

/// Gcd of two polynomials in at most two effective variables, normalized by
/// [`Polynomial::primitive`].
pub fn gcd_bivariate(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    if a.ambient() != b.ambient() {
        return Err(PolyError::AmbientMismatch {
            left: a.ambient().names().to_vec(),
            right: b.ambient().names().to_vec(),
        });
    }
    let vars = union_vars(a, b);
    let g = match effective_pair(&vars)? {
        _ if a.is_zero() => b.clone(),
        _ if b.is_zero() => a.clone(),
        (_, None) if vars.is_empty() => Polynomial::one(a.ambient()),
        (u, None) => from_upoly(&to_upoly(a, u).gcd(&to_upoly(b, u)), a, u),
        (u, Some(v)) => from_bpoly(&to_bpoly(a, u, v).gcd(&to_bpoly(b, u, v)), a, u, v),
    };
    Ok(g.primitive())
}

/// Product of the distinct irreducible factors of `p`, up to a rational scalar.
///
/// Only polynomials with at most two occurring variables are supported.
pub fn squarefree_part_bivariate(p: &Polynomial) -> Result<Polynomial, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let vars = p.occurring_variables();
    let out = match effective_pair(&vars)? {
        (_, None) if vars.is_empty() => Polynomial::one(p.ambient()),
        (u, None) => {
            let f = to_upoly(p, u);
            let g = f.gcd(&f.derivative());
            from_upoly(&f.div_rem(&g).0, p, u)
        }
        (u, Some(v)) => {
            let b = to_bpoly(p, u, v);
            let content = b.content();
            let content_sf = content.div_rem(&content.gcd(&content.derivative())).0;
            let prim = from_bpoly(&b.primitive_part(), p, u, v);
            let repeated = gcd_bivariate(&prim, &prim.derivative_at(v))?;
            let prim_sf = prim.div_exact(&repeated)?;
            &from_upoly(&content_sf, p, u) * &prim_sf
        }
    };
    Ok(out.primitive())
}

/// No repeated factor: the gcd of `p` with all its partial derivatives is a constant.
pub fn is_squarefree_bivariate(p: &Polynomial) -> Result<bool, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut g = p.clone();
    for i in p.occurring_variables() {
        g = gcd_bivariate(&g, &p.derivative_at(i))?;
    }
    Ok(g.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_polynomial, Ambient};

    fn amb() -> Ambient {
        Ambient::new(&["s1", "s2", "s3"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &amb()).unwrap()
    }

    #[test]
    fn monomial_factors() {
        assert!(squarefree_part_bivariate(&p("s1^2*s2"))
            .unwrap()
            .equal_up_to_scalar(&p("s1*s2")));
    }

    #[test]
    fn repeated_linear_factor() {
        assert!(squarefree_part_bivariate(&p("(s1 - s2)^3"))
            .unwrap()
            .equal_up_to_scalar(&p("s1 - s2")));
    }

    #[test]
    fn cusp_discriminant_already_squarefree() {
        let f = p("4*s1^3 + 27*s2^2");
        assert!(is_squarefree_bivariate(&f).unwrap());
        assert!(squarefree_part_bivariate(&f).unwrap().equal_up_to_scalar(&f));
    }

    #[test]
    fn mixed_content_and_primitive_part() {
        let f = p("7*s1^3*(s1 + 1)^2*(s2^2 - s1)^3*(s2 - 2*s1)");
        let sf = squarefree_part_bivariate(&f).unwrap();
        assert!(sf.equal_up_to_scalar(&p("s1*(s1 + 1)*(s2^2 - s1)*(s2 - 2*s1)")));
        assert!(f.div_exact(&sf).is_ok());
        assert!(is_squarefree_bivariate(&sf).unwrap());
        assert!(!is_squarefree_bivariate(&f).unwrap());
    }

    #[test]
    fn univariate_and_constant_inputs() {
        assert!(squarefree_part_bivariate(&p("s2^3 - s2^2"))
            .unwrap()
            .equal_up_to_scalar(&p("s2^2 - s2")));
        assert_eq!(squarefree_part_bivariate(&p("5")).unwrap(), p("1"));
    }

    #[test]
    fn arity_and_zero_errors() {
        assert!(matches!(
            squarefree_part_bivariate(&p("s1*s2*s3")),
            Err(PolyError::UnsupportedArity { found: 3 })
        ));
        assert!(matches!(
            squarefree_part_bivariate(&p("0")),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn gcd_of_products() {
        let g = gcd_bivariate(&p("(s1 - s2)^2*(s1 + s2)"), &p("(s1 - s2)*(s1^2 + s2)")).unwrap();
        assert!(g.equal_up_to_scalar(&p("s1 - s2")));
        let one = gcd_bivariate(&p("s1"), &p("s2")).unwrap();
        assert_eq!(one, p("1"));
    }
}

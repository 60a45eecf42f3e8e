use super::matrix::PolyMatrix;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::PolyError;

/// Coefficients of `p` as a polynomial in the variable at `index`, lowest power first.
pub fn coefficients_in(p: &Polynomial, index: usize) -> Vec<Polynomial> {
    let deg = p.degree_in(index) as usize;
    let mut buckets: Vec<Vec<(Monomial, _)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let mut exps = m.exponents().to_vec();
        let e = std::mem::replace(&mut exps[index], 0);
        buckets[e as usize].push((Monomial::from_exponents(exps), c.clone()));
    }
    buckets
        .into_iter()
        .map(|terms| Polynomial::from_terms(p.ambient(), terms))
        .collect()
}

/// Sylvester matrix of `p` and `q` with respect to `var`.
pub fn sylvester_matrix(p: &Polynomial, q: &Polynomial, var: &str) -> Result<PolyMatrix, PolyError> {
    let ambient = p.ambient();
    if ambient != q.ambient() {
        return Err(PolyError::AmbientMismatch {
            left: ambient.names().to_vec(),
            right: q.ambient().names().to_vec(),
        });
    }
    let index = ambient.require(var)?;
    let (m, n) = (p.degree_in(index) as usize, q.degree_in(index) as usize);
    if m == 0 || n == 0 {
        return Err(PolyError::ZeroDegree(var.to_string()));
    }
    let pc = coefficients_in(p, index);
    let qc = coefficients_in(q, index);
    let size = m + n;
    PolyMatrix::from_fn(size, size, ambient, |i, j| {
        let (coeffs, deg, shift) = if i < n { (&pc, m, i) } else { (&qc, n, i - n) };
        // row holds the coefficients from the top power down, shifted right
        match j.checked_sub(shift) {
            Some(k) if k <= deg => coeffs[deg - k].clone(),
            _ => Polynomial::zero(ambient),
        }
    })
}

/// Resultant of `p` and `q` in `var`: the Sylvester determinant.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: &str) -> Result<Polynomial, PolyError> {
    sylvester_matrix(p, q, var)?.determinant()
}

use std::fmt;

use super::polynomial::{Ambient, Polynomial};
use super::PolyError;

/// Dense row-major matrix of polynomials over one ambient.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    ambient: Ambient,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        ambient: &Ambient,
        entries: Vec<Polynomial>,
    ) -> Result<Self, PolyError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(PolyError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.ambient() != ambient) {
            return Err(PolyError::AmbientMismatch {
                left: ambient.names().to_vec(),
                right: bad.ambient().names().to_vec(),
            });
        }
        Ok(PolyMatrix {
            rows,
            cols,
            ambient: ambient.clone(),
            entries,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        ambient: &Ambient,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Result<Self, PolyError> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, ambient, entries)
    }

    pub fn identity(n: usize, ambient: &Ambient) -> Self {
        Self::from_fn(n, n, ambient, |i, j| {
            if i == j {
                Polynomial::one(ambient)
            } else {
                Polynomial::zero(ambient)
            }
        })
        .expect("identity dimensions")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    /// Square submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            ambient: self.ambient.clone(),
            entries,
        }
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Polynomial::one(&self.ambient);
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(&self.ambient)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_polynomial;

    #[test]
    fn identity_has_unit_determinant() {
        let a = Ambient::new(&["x"]).unwrap();
        assert_eq!(
            PolyMatrix::identity(3, &a).determinant().unwrap(),
            Polynomial::one(&a)
        );
    }

    #[test]
    fn two_by_two_rule() {
        let a = Ambient::new(&["q1", "p1"]).unwrap();
        let q = |s: &str| parse_polynomial(s, &a).unwrap();
        let m = PolyMatrix::new(2, 2, &a, vec![q("q1"), q("p1"), q("p1"), q("q1")]).unwrap();
        assert_eq!(m.determinant().unwrap(), q("q1^2 - p1^2"));
    }

    #[test]
    fn pivoting_on_zero_diagonal() {
        let a = Ambient::new(&["x"]).unwrap();
        let q = |s: &str| parse_polynomial(s, &a).unwrap();
        let m = PolyMatrix::new(2, 2, &a, vec![q("0"), q("x"), q("1"), q("0")]).unwrap();
        assert_eq!(m.determinant().unwrap(), q("-x"));
    }

    #[test]
    fn non_square_rejected() {
        let a = Ambient::new(&["x"]).unwrap();
        let m = PolyMatrix::from_fn(2, 3, &a, |_, _| Polynomial::one(&a)).unwrap();
        assert!(matches!(
            m.determinant(),
            Err(PolyError::NotSquare { rows: 2, cols: 3 })
        ));
    }
}

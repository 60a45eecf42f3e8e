use super::coxeter::CoxeterDatum;
use super::intmatrix::IntMatrix;
use super::MonodromyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Middle homology of a Milnor fibre with its intersection form in the basis
/// of vanishing cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    form: IntMatrix,
    parity: Parity,
    labels: Vec<String>,
}

impl IntersectionLattice {
    /// `middle_dimension` fixes the parity and so the required symmetry of `form`.
    pub fn new(form: IntMatrix, middle_dimension: usize) -> Result<Self, MonodromyError> {
        if !form.is_square() || form.rows() == 0 {
            return Err(MonodromyError::FormShape("form must be square and nonempty".into()));
        }
        let parity = if middle_dimension.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
        match parity {
            Parity::Even if !form.is_symmetric() => {
                return Err(MonodromyError::FormShape("even middle dimension needs a symmetric form".into()))
            }
            Parity::Odd if !form.is_antisymmetric() => {
                return Err(MonodromyError::FormShape("odd middle dimension needs an antisymmetric form".into()))
            }
            _ => {}
        }
        let labels = (1..=form.rows()).map(|i| format!("D{i}")).collect();
        Ok(IntersectionLattice { form, parity, labels })
    }

    /// The lattice `S = -C` of a simply-laced root system, with self-intersection -2.
    pub fn root_lattice(d: &CoxeterDatum) -> Result<Self, MonodromyError> {
        if !d.is_simply_laced() {
            return Err(MonodromyError::NotSimplyLaced(d.label().to_string()));
        }
        Self::new(d.cartan().neg(), 2)
    }

    pub fn rank(&self) -> usize {
        self.form.rows()
    }

    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `a . b` for coordinate vectors in the cycle basis.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i] * self.form.get(i, j) * b[j])
            .sum()
    }

    /// Whether `gᵀ S g = S`.
    pub fn preserves_form(&self, g: &IntMatrix) -> bool {
        &(&g.transpose() * &self.form) * g == self.form
    }

    fn check_even_index(&self, i: usize) -> Result<(), MonodromyError> {
        if i >= self.rank() {
            return Err(MonodromyError::IndexOutOfRange { index: i, rank: self.rank() });
        }
        if self.parity == Parity::Odd {
            return Err(MonodromyError::OddParity);
        }
        Ok(())
    }
}

/// Matrix of `a -> a + (a . D_i) D_i` in the cycle basis, for any form.
pub fn picard_lefschetz_matrix(form: &IntMatrix, i: usize) -> IntMatrix {
    let mut h = IntMatrix::identity(form.rows());
    for j in 0..form.cols() {
        h.set(i, j, h.get(i, j) + form.get(j, i));
    }
    h
}

/// Monodromy around the critical value of the `i`-th vanishing cycle.
pub fn pl_reflection(l: &IntersectionLattice, i: usize) -> Result<IntMatrix, MonodromyError> {
    l.check_even_index(i)?;
    let v = l.form().get(i, i);
    if v != -2 {
        return Err(MonodromyError::UnsupportedSelfIntersection { index: i, value: v });
    }
    Ok(picard_lefschetz_matrix(l.form(), i))
}

/// Lower-triangular `W` with `W_ii = -1` and `S = W + Wᵀ`, written in the
/// basis reordered by `order` (a permutation of `0..rank`).
pub fn variation_matrix(l: &IntersectionLattice, order: &[usize]) -> Result<IntMatrix, MonodromyError> {
    let n = l.rank();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(MonodromyError::InvalidPermutation(format!("{order:?} is not an ordering of {n} cycles")));
    }
    for i in 0..n {
        l.check_even_index(i)?;
        let v = l.form().get(i, i);
        if v != -2 {
            return Err(MonodromyError::UnsupportedSelfIntersection { index: i, value: v });
        }
    }
    let s = l.form();
    Ok(IntMatrix::from_fn(n, n, |a, b| match a.cmp(&b) {
        std::cmp::Ordering::Equal => -1,
        std::cmp::Ordering::Greater => s.get(order[a], order[b]),
        std::cmp::Ordering::Less => 0,
    }))
}

/// `S` with rows and columns reordered by `order`.
pub fn reordered_form(l: &IntersectionLattice, order: &[usize]) -> IntMatrix {
    IntMatrix::from_fn(order.len(), order.len(), |a, b| l.form().get(order[a], order[b]))
}

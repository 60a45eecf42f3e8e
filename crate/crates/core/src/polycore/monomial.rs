use std::cmp::Ordering;

/// Exponent vector indexed by ambient variable position.
///
/// The `Ord` implementation is graded reverse lexicographic with the first
/// ambient variable largest, which is also the canonical printing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lowers the exponent at `index` by one; `None` if it is already zero.
    pub fn derive(&self, index: usize) -> Option<(u32, Monomial)> {
        let e = self.0[index];
        if e == 0 {
            return None;
        }
        let mut exps = self.0.clone();
        exps[index] -= 1;
        Some((e, Monomial(exps)))
    }

    /// Keeps only the exponents at `positions`, in that order.
    pub fn select(&self, positions: &[usize]) -> Monomial {
        Monomial(positions.iter().map(|&i| self.0[i]).collect())
    }
}

pub fn cmp_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable is larger
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn cmp_lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z < y^2 in grevlex with x > y > z
        let xz = Monomial::from_exponents(vec![1, 0, 1]);
        let yy = Monomial::from_exponents(vec![0, 2, 0]);
        assert!(xz < yy);
        let x = Monomial::var(3, 0);
        let y = Monomial::var(3, 1);
        assert!(x > y);
        assert!(Monomial::one(3) < y);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(vec![2, 1]);
        let b = Monomial::from_exponents(vec![1, 3]);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(vec![2, 3]));
        assert!(!a.divides(&b));
        assert_eq!(
            a.quotient_of(&a.lcm(&b)),
            Some(Monomial::from_exponents(vec![0, 2]))
        );
        assert!(Monomial::var(2, 0).is_coprime(&Monomial::var(2, 1)));
    }
}

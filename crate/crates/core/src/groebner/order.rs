use std::cmp::Ordering;

/// Monomial orders available to the Gröbner engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic with the first ambient variable largest.
    Lex,
    /// Graded reverse lexicographic with the first ambient variable largest.
    DegRevLex,
    /// Two blocks, each ordered by degrevlex: the first `front` variables are
    /// compared first, and any monomial involving them outranks every monomial
    /// in the remaining variables alone.
    BlockElimination { front: usize },
}

impl MonomialOrder {
    /// Integer sort key, linear in the exponent vector, whose lexicographic
    /// order is this monomial order.
    pub(crate) fn key(&self, exps: &[u32]) -> Vec<i64> {
        match *self {
            MonomialOrder::Lex => exps.iter().map(|&e| e as i64).collect(),
            MonomialOrder::DegRevLex => grevlex_key(exps),
            MonomialOrder::BlockElimination { front } => {
                let front = front.min(exps.len());
                let mut k = grevlex_key(&exps[..front]);
                k.extend(grevlex_key(&exps[front..]));
                k
            }
        }
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

fn grevlex_key(exps: &[u32]) -> Vec<i64> {
    let mut k = Vec::with_capacity(exps.len() + 1);
    k.push(exps.iter().map(|&e| e as i64).sum());
    k.extend(exps.iter().rev().map(|&e| -(e as i64)));
    k
}

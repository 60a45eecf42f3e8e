use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::intmatrix::IntMatrix;
use super::MonodromyError;

pub const DEFAULT_BFS_CAP: usize = 1_000_000;

/// Crystallographic Dynkin type with its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl DynkinType {
    pub fn parse(label: &str) -> Result<Self, MonodromyError> {
        let label = label.trim();
        let unknown = || MonodromyError::UnknownType(label.to_string());
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| unknown())?;
        let t = match family {
            'A' if (1..=8).contains(&rank) => DynkinType::A(rank),
            'B' if (2..=8).contains(&rank) => DynkinType::B(rank),
            'C' if (2..=8).contains(&rank) => DynkinType::C(rank),
            'D' if (4..=8).contains(&rank) => DynkinType::D(rank),
            'E' if (6..=8).contains(&rank) => DynkinType::E(rank),
            'F' if rank == 4 => DynkinType::F4,
            'G' if rank == 2 => DynkinType::G2,
            'H' | 'I' => return Err(MonodromyError::NonCrystallographic(label.to_string())),
            _ => return Err(unknown()),
        };
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::B(n) | DynkinType::C(n) | DynkinType::D(n) | DynkinType::E(n) => n,
            DynkinType::F4 => 4,
            DynkinType::G2 => 2,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self, DynkinType::A(_) | DynkinType::D(_) | DynkinType::E(_))
    }

    /// Cartan matrix `C_ij = <alpha_i, alpha_j^vee>` with Bourbaki node labels.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let n = self.rank();
        let mut c = IntMatrix::from_fn(n, n, |i, j| if i == j { 2 } else { 0 });
        let mut bond = |i: usize, j: usize| {
            c.set(i, j, -1);
            c.set(j, i, -1);
        };
        match *self {
            DynkinType::A(_) | DynkinType::B(_) | DynkinType::C(_) => {
                (1..n).for_each(|i| bond(i - 1, i));
            }
            DynkinType::D(_) => {
                (1..n - 1).for_each(|i| bond(i - 1, i));
                bond(n - 3, n - 1);
            }
            DynkinType::E(_) => {
                bond(0, 2);
                (3..n).for_each(|i| bond(i - 1, i));
                bond(1, 3);
            }
            DynkinType::F4 => {
                bond(0, 1);
                bond(1, 2);
                bond(2, 3);
            }
            DynkinType::G2 => bond(0, 1),
        }
        match *self {
            DynkinType::B(_) => c.set(n - 2, n - 1, -2),
            DynkinType::C(_) => c.set(n - 1, n - 2, -2),
            DynkinType::F4 => c.set(1, 2, -2),
            DynkinType::G2 => c.set(1, 0, -3),
            _ => {}
        }
        c
    }

    /// Every supported type of the given rank, in a fixed order.
    pub fn all_of_rank(rank: usize) -> Vec<DynkinType> {
        let labels = ["A", "B", "C", "D", "E", "F", "G"];
        labels
            .iter()
            .filter_map(|l| DynkinType::parse(&format!("{l}{rank}")).ok())
            .collect()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
            DynkinType::F4 => f.write_str("F4"),
            DynkinType::G2 => f.write_str("G2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterDatum {
    label: String,
    cartan: IntMatrix,
    coxeter: IntMatrix,
}

impl CoxeterDatum {
    pub fn from_type(t: DynkinType) -> Self {
        Self::from_cartan(&t.to_string(), t.cartan_matrix()).expect("built-in Cartan matrices are valid")
    }

    pub fn parse(label: &str) -> Result<Self, MonodromyError> {
        Ok(Self::from_type(DynkinType::parse(label)?))
    }

    /// Validates the Cartan invariants and derives the Coxeter matrix.
    pub fn from_cartan(label: &str, cartan: IntMatrix) -> Result<Self, MonodromyError> {
        let invalid = |msg: String| Err(MonodromyError::InvalidCartan(msg));
        if !cartan.is_square() || cartan.rows() == 0 {
            return invalid("Cartan matrix must be square and nonempty".into());
        }
        let n = cartan.rows();
        let mut coxeter = IntMatrix::identity(n);
        for i in 0..n {
            if cartan.get(i, i) != 2 {
                return invalid(format!("diagonal entry {} is not 2", i + 1));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (cartan.get(i, j), cartan.get(j, i));
                if a > 0 || (a == 0) != (b == 0) {
                    return invalid(format!("entries ({},{}) and ({},{}) are incompatible", i + 1, j + 1, j + 1, i + 1));
                }
                let m = match a * b {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    3 => 6,
                    p => return invalid(format!("product {p} at ({},{}) is not of finite type", i + 1, j + 1)),
                };
                coxeter.set(i, j, m);
            }
        }
        Ok(CoxeterDatum {
            label: label.to_string(),
            cartan,
            coxeter,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn coxeter_matrix(&self) -> &IntMatrix {
        &self.coxeter
    }

    pub fn is_simply_laced(&self) -> bool {
        self.cartan.is_symmetric()
    }
}

/// Simple reflections on the root lattice: `s_i(e_j) = e_j - C_ji e_i`.
pub fn weyl_generators(d: &CoxeterDatum) -> Vec<IntMatrix> {
    let c = d.cartan();
    let n = d.rank();
    (0..n)
        .map(|i| {
            let mut s = IntMatrix::identity(n);
            for j in 0..n {
                s.set(i, j, s.get(i, j) - c.get(j, i));
            }
            s
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidCheck {
    Holds,
    /// First pair `i < j` (0-based) whose alternating products differ.
    Fails { i: usize, j: usize },
}

impl BraidCheck {
    pub fn holds(&self) -> bool {
        matches!(self, BraidCheck::Holds)
    }
}

fn alternating(a: &IntMatrix, b: &IntMatrix, len: i64) -> IntMatrix {
    let mut acc = IntMatrix::identity(a.rows());
    for k in 0..len {
        acc = &acc * if k % 2 == 0 { a } else { b };
    }
    acc
}

/// Checks `b_i b_j b_i ... = b_j b_i b_j ...` with `m_ij` factors on each side.
pub fn braid_relation_check(generators: &[IntMatrix], m: &IntMatrix) -> Result<BraidCheck, MonodromyError> {
    check_shapes(generators)?;
    if m.rows() != generators.len() || m.cols() != generators.len() {
        return Err(MonodromyError::DimensionMismatch {
            expected: generators.len(),
            found: m.rows(),
        });
    }
    for j in 0..generators.len() {
        for i in 0..j {
            let len = m.get(i, j);
            if alternating(&generators[i], &generators[j], len) != alternating(&generators[j], &generators[i], len) {
                return Ok(BraidCheck::Fails { i, j });
            }
        }
    }
    Ok(BraidCheck::Holds)
}

/// Index of the first generator that is not an involution.
pub fn involution_check(generators: &[IntMatrix]) -> Option<usize> {
    generators.iter().position(|g| !(g * g).is_identity())
}

fn check_shapes(generators: &[IntMatrix]) -> Result<(), MonodromyError> {
    let n = generators.first().map_or(0, IntMatrix::rows);
    for g in generators {
        if !g.is_square() || g.rows() != n {
            return Err(MonodromyError::DimensionMismatch {
                expected: n,
                found: g.rows(),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(usize),
    /// More than `cap` elements were found.
    ExceedsCap(usize),
}

/// All products of the generators, enumerated breadth-first from the identity.
pub fn enumerate_group(generators: &[IntMatrix], cap: usize) -> Result<Result<Vec<IntMatrix>, usize>, MonodromyError> {
    check_shapes(generators)?;
    let n = generators.first().map_or(0, IntMatrix::rows);
    let id = IntMatrix::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = &x * g;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Ok(Err(cap));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(Ok(elements))
}

pub fn group_order_bfs(generators: &[IntMatrix], cap: usize) -> Result<GroupOrder, MonodromyError> {
    Ok(match enumerate_group(generators, cap)? {
        Ok(elements) => GroupOrder::Finite(elements.len()),
        Err(cap) => GroupOrder::ExceedsCap(cap),
    })
}

/// Order of the product of the generators taken in `order`.
pub fn coxeter_element_order(generators: &[IntMatrix], order: &[usize], cap: u64) -> Result<Option<u64>, MonodromyError> {
    check_shapes(generators)?;
    let n = generators.first().map_or(0, IntMatrix::rows);
    let mut c = IntMatrix::identity(n);
    for &i in order {
        let g = generators.get(i).ok_or(MonodromyError::IndexOutOfRange { index: i, rank: generators.len() })?;
        c = &c * g;
    }
    Ok(c.order(cap))
}

/// Coxeter number of each type, used as the expected Coxeter element order.
pub fn coxeter_number(t: DynkinType) -> u64 {
    match t {
        DynkinType::A(n) => n as u64 + 1,
        DynkinType::B(n) | DynkinType::C(n) => 2 * n as u64,
        DynkinType::D(n) => 2 * n as u64 - 2,
        DynkinType::E(6) => 12,
        DynkinType::E(7) => 18,
        DynkinType::E(_) => 30,
        DynkinType::F4 => 12,
        DynkinType::G2 => 6,
    }
}

use super::coxeter::{enumerate_group, CoxeterDatum, DynkinType, DEFAULT_BFS_CAP};
use super::intmatrix::IntMatrix;
use super::lattice::IntersectionLattice;
use super::MonodromyError;

/// A simply-laced diagram folded along a group of diagram automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldingDatum {
    pub source: CoxeterDatum,
    /// Generating permutations, `perm[i]` is the image of node `i` (0-based).
    pub automorphisms: Vec<Vec<usize>>,
    /// Orbits ordered by their smallest node.
    pub orbits: Vec<Vec<usize>>,
    pub folded: CoxeterDatum,
    /// Name of the matching Dynkin type and the node relabelling used, if any.
    pub identified: Option<(DynkinType, Vec<usize>)>,
    /// Elements of the group generated by the automorphisms, as permutation matrices.
    pub group: Vec<IntMatrix>,
}

impl FoldingDatum {
    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    pub fn group_is_abelian(&self) -> bool {
        let gens: Vec<IntMatrix> = self.automorphisms.iter().map(|p| IntMatrix::permutation(p)).collect();
        gens.iter().all(|a| gens.iter().all(|b| a * b == b * a))
    }

    pub fn generator_matrices(&self) -> Vec<IntMatrix> {
        self.automorphisms.iter().map(|p| IntMatrix::permutation(p)).collect()
    }
}

fn validate_permutation(p: &[usize], n: usize) -> Result<(), MonodromyError> {
    let mut seen = vec![false; n];
    if p.len() != n {
        return Err(MonodromyError::InvalidPermutation(format!("expected {n} images, got {}", p.len())));
    }
    for &x in p {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(MonodromyError::InvalidPermutation(format!("{:?} is not a bijection", p)));
        }
    }
    Ok(())
}

/// First pair `(i, j)` with `C_{σ(i)σ(j)} != C_ij`.
pub fn automorphism_witness(cartan: &IntMatrix, p: &[usize]) -> Option<(usize, usize)> {
    let n = cartan.rows();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| cartan.get(p[i], p[j]) != cartan.get(i, j))
}

fn orbits(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for p in perms {
            for i in 0..n {
                let m = label[i].min(label[p[i]]);
                if label[i] != m || label[p[i]] != m {
                    label[i] = m;
                    label[p[i]] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match out.iter_mut().find(|o| label[o[0]] == label[i]) {
            Some(o) => o.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Matches a Cartan matrix against the known types of its rank, first
/// verbatim and then up to relabelling of nodes. The returned relabelling
/// sends node `i` of the known type to node `perm[i]` of `cartan`.
pub fn identify_cartan(cartan: &IntMatrix) -> Option<(DynkinType, Vec<usize>)> {
    let n = cartan.rows();
    let candidates = DynkinType::all_of_rank(n);
    let identity: Vec<usize> = (0..n).collect();
    if let Some(t) = candidates.iter().find(|t| t.cartan_matrix() == *cartan) {
        return Some((*t, identity));
    }
    let perms = permutations(n);
    candidates.iter().find_map(|t| {
        let c = t.cartan_matrix();
        perms
            .iter()
            .find(|p| (0..n).all(|i| (0..n).all(|j| c.get(i, j) == cartan.get(p[i], p[j]))))
            .map(|p| (*t, p.clone()))
    })
}

/// Folds a simply-laced diagram along the group generated by `automorphisms`.
///
/// The folded Cartan entry for orbits `O`, `O'` is `sum_{j in O'} C_ij` for
/// any fixed `i` in `O`.
pub fn fold(source: &CoxeterDatum, automorphisms: &[Vec<usize>]) -> Result<FoldingDatum, MonodromyError> {
    if !source.is_simply_laced() {
        return Err(MonodromyError::NotSimplyLaced(source.label().to_string()));
    }
    let n = source.rank();
    let c = source.cartan();
    for p in automorphisms {
        validate_permutation(p, n)?;
        if let Some((i, j)) = automorphism_witness(c, p) {
            return Err(MonodromyError::NotADiagramAutomorphism { i, j });
        }
    }
    let orbits = orbits(n, automorphisms);
    for o in &orbits {
        for (a, &i) in o.iter().enumerate() {
            if let Some(&j) = o[a + 1..].iter().find(|&&j| c.get(i, j) != 0) {
                return Err(MonodromyError::AdjacentOrbit { i, j });
            }
        }
    }
    let r = orbits.len();
    let folded = IntMatrix::from_fn(r, r, |a, b| {
        let i = orbits[a][0];
        orbits[b].iter().map(|&j| c.get(i, j)).sum()
    });
    let identified = identify_cartan(&folded);
    let label = match &identified {
        Some((t, _)) => t.to_string(),
        None => format!("{}/fold", source.label()),
    };
    let folded = CoxeterDatum::from_cartan(&label, folded)?;
    let gens: Vec<IntMatrix> = automorphisms.iter().map(|p| IntMatrix::permutation(p)).collect();
    let group = if gens.is_empty() {
        vec![IntMatrix::identity(n)]
    } else {
        enumerate_group(&gens, DEFAULT_BFS_CAP)?.map_err(|_| MonodromyError::GroupTooLarge)?
    };
    Ok(FoldingDatum {
        source: source.clone(),
        automorphisms: automorphisms.to_vec(),
        orbits,
        folded,
        identified,
        group,
    })
}

/// Folded rank equals the orbit count and every generator preserves `S = -C`.
pub fn quotient_rank_check(fd: &FoldingDatum) -> bool {
    let lattice = match IntersectionLattice::root_lattice(&fd.source) {
        Ok(l) => l,
        Err(_) => return false,
    };
    fd.folded.rank() == fd.orbits.len() && fd.generator_matrices().iter().all(|g| lattice.preserves_form(g))
}

/// Generators named by `spec` for the diagram of `source`.
///
/// Accepted: `identity`, `flip`, `triality` (D4), `full` (the whole diagram
/// automorphism group of the source), or `perm:` followed by 1-based images
/// separated by commas, several permutations separated by `;`.
pub fn automorphisms_from_spec(source: DynkinType, spec: &str) -> Result<Vec<Vec<usize>>, MonodromyError> {
    let n = source.rank();
    let unsupported = || MonodromyError::UnknownAutomorphism(format!("'{spec}' for {source}"));
    let from_one_based = |images: &[usize]| images.iter().map(|x| x - 1).collect::<Vec<_>>();
    let flip = || -> Option<Vec<usize>> {
        match source {
            DynkinType::A(n) if n >= 2 => Some((0..n).rev().collect()),
            DynkinType::D(n) => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                Some(p)
            }
            DynkinType::E(6) => Some(from_one_based(&[6, 2, 5, 4, 3, 1])),
            _ => None,
        }
    };
    let triality = || (source == DynkinType::D(4)).then(|| from_one_based(&[3, 2, 4, 1]));
    let spec = spec.trim();
    match spec {
        "identity" => Ok(vec![(0..n).collect()]),
        "flip" => flip().map(|p| vec![p]).ok_or_else(unsupported),
        "triality" => triality().map(|p| vec![p]).ok_or_else(unsupported),
        "full" => Ok(match (triality(), flip()) {
            (Some(t), Some(f)) => vec![t, f],
            (None, Some(f)) => vec![f],
            _ => vec![(0..n).collect()],
        }),
        _ => {
            let body = spec.strip_prefix("perm:").ok_or_else(unsupported)?;
            body.split(';')
                .map(|part| {
                    let images: Vec<usize> = part
                        .split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| MonodromyError::InvalidPermutation(part.trim().to_string()))?;
                    if images.contains(&0) {
                        return Err(MonodromyError::InvalidPermutation(format!("{part}: images are 1-based")));
                    }
                    let p = from_one_based(&images);
                    validate_permutation(&p, n)?;
                    Ok(p)
                })
                .collect()
        }
    }
}

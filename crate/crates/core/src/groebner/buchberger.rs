use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::order::MonomialOrder;
use super::{GroebnerBasis, GroebnerConfig, GroebnerError, IdealBasis, ResourceLimit};
use crate::polycore::{Ambient, Monomial, Polynomial};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    key: Vec<i64>,
    exps: Vec<u32>,
    coef: BigRational,
}

/// Polynomial with terms sorted descending in a fixed monomial order.
#[derive(Clone, Debug, Default)]
pub(crate) struct GPoly(Vec<Term>);

type Work = BTreeMap<Vec<i64>, (Vec<u32>, BigRational)>;

impl GPoly {
    pub(crate) fn from_polynomial(p: &Polynomial, order: MonomialOrder) -> GPoly {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                key: order.key(m.exponents()),
                exps: m.exponents().to_vec(),
                coef: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        GPoly(terms)
    }

    pub(crate) fn to_polynomial(&self, ambient: &Ambient) -> Polynomial {
        Polynomial::from_terms(
            ambient,
            self.0
                .iter()
                .map(|t| (Monomial::from_exponents(t.exps.clone()), t.coef.clone())),
        )
    }

    fn from_work(work: Work) -> GPoly {
        GPoly(
            work.into_iter()
                .rev()
                .map(|(key, (exps, coef))| Term { key, exps, coef })
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &Term {
        &self.0[0]
    }

    fn lead_exps(&self) -> &[u32] {
        &self.0[0].exps
    }

    fn is_constant(&self) -> bool {
        self.0.len() == 1 && self.0[0].exps.iter().all(|&e| e == 0)
    }

    fn monic_factor(&self) -> BigRational {
        self.lead().coef.recip()
    }

    fn scale(&mut self, c: &BigRational) {
        for t in &mut self.0 {
            t.coef *= c;
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn sub_vec(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `work += c * x^shift * p`, skipping the first `skip` terms of `p`.
fn add_multiple(work: &mut Work, p: &GPoly, skip: usize, shift: &[u32], order: MonomialOrder, c: &BigRational) {
    let shift_key = order.key(shift);
    for t in &p.0[skip..] {
        let key: Vec<i64> = t.key.iter().zip(&shift_key).map(|(a, b)| a + b).collect();
        let v = &t.coef * c;
        match work.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                let exps = t.exps.iter().zip(shift).map(|(a, b)| a + b).collect();
                e.insert((exps, v));
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().1 += v;
                if e.get().1.is_zero() {
                    e.remove();
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Element {
    poly: GPoly,
    /// Representation as a combination of the input generators.
    cofactors: Option<Vec<Polynomial>>,
}

fn update_cofactors(
    target: &mut Option<Vec<Polynomial>>,
    reducer: &Option<Vec<Polynomial>>,
    shift: &[u32],
    c: &BigRational,
) {
    if let (Some(t), Some(r)) = (target.as_mut(), reducer.as_ref()) {
        let m = Monomial::from_exponents(shift.to_vec());
        for (ti, ri) in t.iter_mut().zip(r) {
            *ti = &*ti + &ri.mul_monomial(&m, c);
        }
    }
}

/// Full reduction of `work` by the elements of `basis` not excluded.
fn reduce(
    mut work: Work,
    mut cof: Option<Vec<Polynomial>>,
    basis: &[Element],
    exclude: Option<usize>,
    order: MonomialOrder,
) -> (GPoly, Option<Vec<Polynomial>>) {
    let mut done: Work = BTreeMap::new();
    while let Some((key, (exps, coef))) = work.pop_last() {
        let reducer = basis
            .iter()
            .enumerate()
            .find(|(i, e)| Some(*i) != exclude && divides(e.poly.lead_exps(), &exps));
        match reducer {
            Some((_, e)) => {
                let shift = sub_vec(&exps, e.poly.lead_exps());
                let c = -(&coef / &e.poly.lead().coef);
                add_multiple(&mut work, &e.poly, 1, &shift, order, &c);
                update_cofactors(&mut cof, &e.cofactors, &shift, &c);
            }
            None => {
                done.insert(key, (exps, coef));
            }
        }
    }
    (GPoly::from_work(done), cof)
}

fn to_work(p: &GPoly) -> Work {
    p.0.iter()
        .map(|t| (t.key.clone(), (t.exps.clone(), t.coef.clone())))
        .collect()
}

fn make_monic(e: &mut Element) {
    let f = e.poly.monic_factor();
    if f.is_one() {
        return;
    }
    e.poly.scale(&f);
    if let Some(c) = e.cofactors.as_mut() {
        for p in c.iter_mut() {
            *p = p.scale(&f);
        }
    }
}

struct PairQueue {
    ordered: BTreeSet<(Vec<i64>, usize, usize)>,
    members: HashSet<(usize, usize)>,
}

impl PairQueue {
    fn insert(&mut self, i: usize, j: usize, basis: &[Element], order: MonomialOrder) {
        let (i, j) = (i.min(j), i.max(j));
        let l = lcm(basis[i].poly.lead_exps(), basis[j].poly.lead_exps());
        self.ordered.insert((order.key(&l), j, i));
        self.members.insert((i, j));
    }

    fn pop(&mut self) -> Option<(usize, usize)> {
        let (_, j, i) = self.ordered.pop_first()?;
        self.members.remove(&(i, j));
        Some((i, j))
    }

    fn contains(&self, i: usize, j: usize) -> bool {
        self.members.contains(&(i.min(j), i.max(j)))
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
///
/// Pairs are taken smallest-lcm first; pairs with coprime leading monomials
/// and pairs covered by the chain criterion are skipped.
pub fn buchberger(
    ideal: &IdealBasis,
    order: MonomialOrder,
    config: &GroebnerConfig,
) -> Result<GroebnerBasis, GroebnerError> {
    let start = Instant::now();
    let ambient = ideal.ambient().clone();
    let gens = ideal.generators();
    let n = gens.len();
    let mut basis: Vec<Element> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let cofactors = config.certify.then(|| {
                (0..n)
                    .map(|k| if k == i { Polynomial::one(&ambient) } else { Polynomial::zero(&ambient) })
                    .collect()
            });
            let mut e = Element {
                poly: GPoly::from_polynomial(g, order),
                cofactors,
            };
            make_monic(&mut e);
            e
        })
        .collect();

    let mut queue = PairQueue {
        ordered: BTreeSet::new(),
        members: HashSet::new(),
    };
    for j in 0..basis.len() {
        for i in 0..j {
            queue.insert(i, j, &basis, order);
        }
    }

    let mut processed = 0usize;
    let mut unit: Option<Element> = basis.iter().find(|e| e.poly.is_constant()).cloned();
    while unit.is_none() {
        let Some((i, j)) = queue.pop() else { break };
        if processed >= config.max_pairs {
            return Err(GroebnerError::ResourceLimit {
                pairs_processed: processed,
                basis_size: basis.len(),
                limit: ResourceLimit::Pairs(config.max_pairs),
            });
        }
        if let Some(limit) = config.time_limit {
            if start.elapsed() > limit {
                return Err(GroebnerError::ResourceLimit {
                    pairs_processed: processed,
                    basis_size: basis.len(),
                    limit: ResourceLimit::Time(limit),
                });
            }
        }
        processed += 1;

        let (li, lj) = (basis[i].poly.lead_exps(), basis[j].poly.lead_exps());
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].poly.lead_exps(), &l)
                && !queue.contains(i, k)
                && !queue.contains(j, k)
        });
        if chain {
            continue;
        }

        let (si, sj) = (sub_vec(&l, li), sub_vec(&l, lj));
        let mut work = Work::new();
        add_multiple(&mut work, &basis[i].poly, 1, &si, order, &BigRational::one());
        add_multiple(&mut work, &basis[j].poly, 1, &sj, order, &-BigRational::one());
        let mut cof = basis[i].cofactors.as_ref().map(|c| vec![Polynomial::zero(&ambient); c.len()]);
        update_cofactors(&mut cof, &basis[i].cofactors, &si, &BigRational::one());
        update_cofactors(&mut cof, &basis[j].cofactors, &sj, &-BigRational::one());

        let (rem, cof) = reduce(work, cof, &basis, None, order);
        if rem.is_zero() {
            continue;
        }
        let mut e = Element { poly: rem, cofactors: cof };
        make_monic(&mut e);
        if e.poly.is_constant() {
            unit = Some(e);
            break;
        }
        basis.push(e);
        let new = basis.len() - 1;
        for k in 0..new {
            queue.insert(k, new, &basis, order);
        }
    }

    let reduced = match unit {
        Some(u) => vec![u],
        None => interreduce(basis, order),
    };
    let certificates = if config.certify {
        Some(reduced.iter().map(|e| e.cofactors.clone().unwrap()).collect())
    } else {
        None
    };
    let elements: Vec<Polynomial> = reduced.iter().map(|e| e.poly.to_polynomial(&ambient)).collect();
    Ok(GroebnerBasis {
        ambient,
        order,
        internal: reduced.into_iter().map(|e| e.poly).collect(),
        elements,
        generators: gens.to_vec(),
        certificates,
        pairs_processed: processed,
    })
}

fn interreduce(basis: Vec<Element>, order: MonomialOrder) -> Vec<Element> {
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.poly.lead().key.cmp(&b.poly.lead().key));
    let mut kept: Vec<Element> = Vec::new();
    for e in sorted {
        if !kept.iter().any(|k| divides(k.poly.lead_exps(), e.poly.lead_exps())) {
            kept.push(e);
        }
    }
    let mut out: Vec<Element> = (0..kept.len())
        .map(|i| {
            let (poly, cofactors) = reduce(to_work(&kept[i].poly), kept[i].cofactors.clone(), &kept, Some(i), order);
            let mut e = Element { poly, cofactors };
            make_monic(&mut e);
            e
        })
        .collect();
    out.sort_by(|a, b| b.poly.lead().key.cmp(&a.poly.lead().key));
    out
}

/// Remainder of `p` on full division by a Gröbner basis in its order.
pub(crate) fn reduce_by(p: &Polynomial, basis: &[GPoly], order: MonomialOrder) -> Polynomial {
    let elements: Vec<Element> = basis
        .iter()
        .map(|g| Element {
            poly: g.clone(),
            cofactors: None,
        })
        .collect();
    let (rem, _) = reduce(to_work(&GPoly::from_polynomial(p, order)), None, &elements, None, order);
    rem.to_polynomial(p.ambient())
}

pub(crate) fn lead_exponents(basis: &[GPoly]) -> Vec<Vec<u32>> {
    basis.iter().map(|g| g.lead_exps().to_vec()).collect()
}

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Duration;

use vanishing_core::groebner::{GroebnerConfig, GroebnerError, QuotientDimension};
use vanishing_core::monodromy::{
    automorphisms_from_spec, braid_relation_check, coxeter_element_order, coxeter_number, fold, group_order_bfs,
    involution_check, quotient_rank_check, weyl_generators, CoxeterDatum, DynkinType, GroupOrder,
};
use vanishing_core::polycore::{integer, parse_polynomial, RatMatrix};
use vanishing_core::singularity::{
    betti_prediction, discriminant, milnor_number, multiplicity_at_origin, target_ambient, DiscriminantDescription,
    SingularityError,
};
use vanishing_core::steinberg::{
    casimir_components_check, jacobian_rank_at, kks_jacobi_holds, kks_structure, sl_structure, steinberg_discriminant,
    steinberg_map, subregular_slice_check,
};
use vanishing_core::symplectic::poisson_bracket;

use crate::germ::GermFile;
use crate::report::{Check, Report, Status};

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, code: 0 }
    }
}

/// An error reported on stderr, with the process exit code to use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    fn failure(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_FAIL, message: message.into() }
    }
}

pub fn groebner_config(budget: Option<usize>, time_limit: Option<f64>) -> GroebnerConfig {
    let mut cfg = match budget {
        Some(b) => GroebnerConfig::with_max_pairs(b),
        None => GroebnerConfig::default(),
    };
    cfg.time_limit = time_limit.map(Duration::from_secs_f64);
    cfg
}

pub fn bracket(path: &Path, i: usize, j: usize) -> Result<Outcome, CliError> {
    let germ = GermFile::read(path).map_err(CliError::usage)?;
    let ctx = germ
        .symplectic_context()
        .ok_or_else(|| CliError::usage("germ file has no 'symplectic' pairing"))?;
    let k = germ.components.len();
    let pick = |idx: usize| {
        (1..=k)
            .contains(&idx)
            .then(|| &germ.components[idx - 1])
            .ok_or_else(|| CliError::usage(format!("component index {idx} out of range 1..={k}")))
    };
    let b = poisson_bracket(pick(i)?, pick(j)?, &ctx).map_err(|e| CliError::failure(e.to_string()))?;
    Ok(Outcome::ok(format!("{b}\n")))
}

fn budget_message(e: &GroebnerError) -> String {
    match e {
        GroebnerError::ResourceLimit { pairs_processed, basis_size, limit } => format!(
            "budget exhausted: limit of {limit} reached after {pairs_processed} S-pairs with {basis_size} basis elements"
        ),
        other => other.to_string(),
    }
}

fn describe_multiplicity(d: &DiscriminantDescription, germ: Option<&GermFile>, out: &mut String) {
    match multiplicity_at_origin(d) {
        Ok(m) => {
            out.push_str(&format!("multiplicity: {m}\n"));
            if let Some((g, s)) = germ.and_then(|g| g.singular_dim.map(|s| (g, s))) {
                let src = g.vars.len();
                match betti_prediction(m, src, d.k, s, &g.assume) {
                    Ok(b) => {
                        let assumed: Vec<String> = b.assumed.iter().map(ToString::to_string).collect();
                        out.push_str(&format!(
                            "betti: rank H_{} of the Milnor fibre = {} (assuming: {})\n",
                            b.n,
                            b.rank,
                            if assumed.is_empty() { "nothing declared".to_string() } else { assumed.join(", ") }
                        ));
                    }
                    Err(e) => out.push_str(&format!("betti: {e}\n")),
                }
            }
        }
        Err(e) => out.push_str(&format!("multiplicity: unavailable ({e})\n")),
    }
}

pub fn discriminant_cmd(
    path: Option<&Path>,
    given: Option<&str>,
    config: &GroebnerConfig,
) -> Result<Outcome, CliError> {
    let mut out = String::new();
    if let Some(expr) = given {
        let t = target_ambient(2);
        let p = parse_polynomial(expr, &t).map_err(|e| CliError::usage(format!("--given: {e}")))?;
        let d = DiscriminantDescription::from_equation(&p).map_err(|e| CliError::usage(e.to_string()))?;
        out.push_str(&format!("given: {p}\n"));
        if let Some(r) = &d.reduced {
            out.push_str(&format!("reduced: {r}\n"));
        }
        let germ = path.map(GermFile::read).transpose().map_err(CliError::usage)?;
        describe_multiplicity(&d, germ.as_ref(), &mut out);
        return Ok(Outcome::ok(out));
    }
    let path = path.ok_or_else(|| CliError::usage("a germ file or --given is required"))?;
    let germ = GermFile::read(path).map_err(CliError::usage)?;
    let f = germ.map_germ();
    let d = match discriminant(&f, config) {
        Ok(d) => d,
        Err(SingularityError::Groebner(e)) if e.is_resource_limit() => {
            out.push_str(&format!("status: skipped-budget\n{}\n", budget_message(&e)));
            return Ok(Outcome { stdout: out, code: EXIT_BUDGET });
        }
        Err(e) => return Err(CliError::usage(e.to_string())),
    };
    let gens: Vec<String> = d.ideal.generators().iter().map(ToString::to_string).collect();
    out.push_str(&format!("generators: {}\n", if gens.is_empty() { "0".to_string() } else { gens.join("; ") }));
    out.push_str(&format!("S-pairs: {}\n", d.pairs_processed));
    if let Some(r) = &d.reduced {
        out.push_str(&format!("reduced: {r}\n"));
    }
    if d.k == 2 {
        describe_multiplicity(&d, Some(&germ), &mut out);
    } else if d.k == 1 {
        match milnor_number(&f.components()[0], config) {
            Ok(QuotientDimension::Finite(mu)) => out.push_str(&format!("milnor number: {mu}\n")),
            Ok(QuotientDimension::Infinite) => out.push_str("milnor number: infinite (non-isolated critical point)\n"),
            Err(e) => out.push_str(&format!("milnor number: unavailable ({e})\n")),
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CoxeterCheck {
    Braid,
    Order,
    CoxeterElement,
    All,
}

fn grid(m: &vanishing_core::monodromy::IntMatrix) -> String {
    m.to_string()
}

pub fn coxeter(label: &str, check: CoxeterCheck, cap: usize) -> Result<(Report, String), CliError> {
    let t = DynkinType::parse(label).map_err(|e| CliError::usage(e.to_string()))?;
    let d = CoxeterDatum::from_type(t);
    let gens = weyl_generators(&d);
    let header = format!("type {}\ncartan {}\ncoxeter {}\n", d.label(), grid(d.cartan()), grid(d.coxeter_matrix()));
    let mut report = Report::default();
    let want = |c: CoxeterCheck| check == CoxeterCheck::All || check == c;
    if want(CoxeterCheck::Braid) {
        let inv = involution_check(&gens);
        report.push(Check::compare(
            "involutions",
            "all",
            inv.map_or("all".to_string(), |i| format!("s{} fails", i + 1)),
        ));
        let b = braid_relation_check(&gens, d.coxeter_matrix()).map_err(|e| CliError::failure(e.to_string()))?;
        let got = match b {
            vanishing_core::monodromy::BraidCheck::Holds => "holds".to_string(),
            vanishing_core::monodromy::BraidCheck::Fails { i, j } => format!("fails at ({},{})", i + 1, j + 1),
        };
        report.push(Check::compare("braid", "holds", got));
    }
    if want(CoxeterCheck::Order) {
        let got = match group_order_bfs(&gens, cap).map_err(|e| CliError::failure(e.to_string()))? {
            GroupOrder::Finite(n) => n.to_string(),
            GroupOrder::ExceedsCap(c) => format!(">{c}"),
        };
        let expected = classical_weyl_order(t).to_string();
        let mut c = Check::compare("order", expected, got.clone());
        if got.starts_with('>') {
            c.status = Status::SkippedBudget;
            c.note = "enumeration cap reached".into();
        }
        report.push(c);
    }
    if want(CoxeterCheck::CoxeterElement) {
        let order: Vec<usize> = (0..gens.len()).collect();
        let h = coxeter_element_order(&gens, &order, 10_000).map_err(|e| CliError::failure(e.to_string()))?;
        report.push(Check::compare(
            "coxeter-element",
            coxeter_number(t).to_string(),
            h.map_or("none".to_string(), |h| h.to_string()),
        ));
    }
    Ok((report, header))
}

/// Orders of the Weyl groups from their closed formulas.
pub fn classical_weyl_order(t: DynkinType) -> u64 {
    let fact = |n: u64| (1..=n).product::<u64>();
    match t {
        DynkinType::A(n) => fact(n as u64 + 1),
        DynkinType::B(n) | DynkinType::C(n) => (1u64 << n) * fact(n as u64),
        DynkinType::D(n) => (1u64 << (n - 1)) * fact(n as u64),
        DynkinType::E(6) => 51_840,
        DynkinType::E(7) => 2_903_040,
        DynkinType::E(_) => 696_729_600,
        DynkinType::F4 => 1152,
        DynkinType::G2 => 12,
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn permutation_closure(generators: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let n = generators.first().map_or(0, Vec::len);
    let mut seen = BTreeSet::from([(0..n).collect::<Vec<_>>()]);
    let mut frontier: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen
}

pub fn fold_cmd(source: &str, spec: &str) -> Result<(Report, String), CliError> {
    let t = DynkinType::parse(source).map_err(|e| CliError::usage(e.to_string()))?;
    let autos = automorphisms_from_spec(t, spec).map_err(|e| CliError::usage(e.to_string()))?;
    let fd = fold(&CoxeterDatum::from_type(t), &autos).map_err(|e| CliError::usage(e.to_string()))?;
    let orbits: Vec<String> = fd
        .orbits
        .iter()
        .map(|o| format!("{{{}}}", o.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let header = format!(
        "source {}\norbits {}\nfolded cartan {}\nfolded type {}\n",
        t,
        orbits.join(" "),
        grid(fd.folded.cartan()),
        fd.folded.label()
    );
    let mut report = Report::default();
    let (status, note) = match fd.identified {
        Some(_) => (Status::Pass, "matched by Cartan matrix"),
        None => (Status::Fail, "no matching type"),
    };
    report.push(Check::new("folded-type", status, "identified", fd.folded.label()).with_note(note));
    let perms = permutation_closure(&fd.automorphisms);
    let abelian = perms.iter().all(|a| perms.iter().all(|b| compose(a, b) == compose(b, a)));
    report.push(
        Check::compare("group-order", perms.len().to_string(), fd.group_order().to_string())
            .with_note("matrix group against closure of the node permutations"),
    );
    report.push(Check::compare(
        "group-abelian",
        if abelian { "yes" } else { "no" },
        if fd.group_is_abelian() { "yes" } else { "no" },
    ));
    let q = quotient_rank_check(&fd);
    report.push(Check::compare("quotient-rank", "true", q.to_string()).with_note(format!(
        "folded rank {} over {} orbits",
        fd.folded.rank(),
        fd.orbits.len()
    )));
    Ok((report, header))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SteinbergCheck {
    Casimir,
    Rank,
    Discriminant,
    Slice,
    All,
}

fn diag(d: &[i64]) -> RatMatrix {
    RatMatrix::from_i64(&(0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect()).collect::<Vec<_>>())
}

pub fn steinberg_cmd(rank: usize, check: SteinbergCheck) -> Result<Report, CliError> {
    if !(1..=2).contains(&rank) {
        return Err(CliError::usage(format!("unsupported rank {rank}; use 1 or 2")));
    }
    let fail = |e: vanishing_core::steinberg::SteinbergError| CliError::failure(e.to_string());
    let want = |c: SteinbergCheck| check == SteinbergCheck::All || check == c;
    let s = steinberg_map(rank).map_err(fail)?;
    let l = sl_structure(rank + 1).map_err(fail)?;
    let mut report = Report::default();
    let comps: Vec<String> = s.components().iter().map(ToString::to_string).collect();
    report.push(
        Check::new("germ-hypotheses", Status::AssumedHypothesis, "simplifiable calibrated T-type", "assumed")
            .with_note(format!("components {}", comps.join("; "))),
    );
    if want(SteinbergCheck::Casimir) {
        let pi = kks_structure(&l).map_err(fail)?;
        report.push(Check::compare("kks-jacobi", "true", kks_jacobi_holds(&pi).map_err(fail)?.to_string()));
        let flags = casimir_components_check(&s, &l, &pi).map_err(fail)?;
        let got: Vec<String> = flags.iter().map(ToString::to_string).collect();
        let expected = vec!["true"; flags.len()].join(",");
        report.push(Check::compare("casimir", expected, got.join(",")));
    }
    if want(SteinbergCheck::Rank) {
        if rank == 2 {
            report.push(
                Check::compare("rank-subregular", "1", jacobian_rank_at(&s, &diag(&[1, 1, -2])).map_err(fail)?.to_string())
                    .with_note("at diag(1,1,-2)"),
            );
            report.push(
                Check::compare("rank-regular", "2", jacobian_rank_at(&s, &diag(&[1, 2, -3])).map_err(fail)?.to_string())
                    .with_note("at diag(1,2,-3)"),
            );
        } else {
            report.push(
                Check::compare("rank-zero", "0", jacobian_rank_at(&s, &diag(&[0, 0])).map_err(fail)?.to_string())
                    .with_note("at 0"),
            );
            report.push(
                Check::compare("rank-regular", "1", jacobian_rank_at(&s, &diag(&[1, -1])).map_err(fail)?.to_string())
                    .with_note("at diag(1,-1)"),
            );
        }
    }
    if want(SteinbergCheck::Discriminant) {
        let d = steinberg_discriminant(rank).map_err(fail)?;
        report.push(
            Check::compare("discriminant-multiplicity", rank.to_string(), d.multiplicity.to_string())
                .with_note(format!("reduced {}, squarefree {}", d.reduced, d.squarefree)),
        );
    }
    if want(SteinbergCheck::Slice) && rank == 2 {
        let r = subregular_slice_check().map_err(fail)?;
        let sides: Vec<String> = r
            .restricted
            .iter()
            .zip(&r.normal_form)
            .map(|(a, b)| format!("{a} = {b}"))
            .collect();
        report.push(Check::compare("slice-normal-form", "true", r.matches_normal_form.to_string()).with_note(sides.join("; ")));
        report.push(Check::compare("slice-quadratic-rank", "3", r.quadratic_rank.to_string()));
        report.push(Check::compare("slice-linear-rank", "1", r.linear_rank_in_t.to_string()));
        report.push(Check::compare("slice-a1-point", "true", r.a1_point.to_string()));
        report.push(
            Check::compare("slice-target-jacobian", "nonzero", if r.target_jacobian == integer(0) { "0" } else { "nonzero" })
                .with_note(format!("det = {}", r.target_jacobian)),
        );
    }
    Ok(report)
}

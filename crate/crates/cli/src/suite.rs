//! The twelve reproducibility checks run by `vanishing suite`.

use std::time::Duration;

use vanishing_core::groebner::{radical_membership, GroebnerConfig};
use vanishing_core::monodromy::{
    automorphisms_from_spec, braid_relation_check, fold, group_order_bfs, involution_check, pl_reflection,
    quotient_rank_check, variation_matrix, weyl_generators, CoxeterDatum, DynkinType, GroupOrder, IntersectionLattice,
    DEFAULT_BFS_CAP,
};
use num_rational::BigRational;
use vanishing_core::polycore::{parse_polynomial, Ambient, Polynomial, RatMatrix};
use vanishing_core::singularity::{
    arnold_liouville_multiplicity, critical_ideal, discriminant, hyperplane_images, milnor_number, multiplicity_at_origin, target_ambient,
    DiscriminantDescription, MultiplicityRoute, SingularityError,
};
use vanishing_core::symplectic::{is_involutive, Involutivity};

use crate::commands::{classical_weyl_order, steinberg_cmd, SteinbergCheck};
use crate::germ::{parse_germ, GermFile};
use crate::report::{Check, Report, Status};

pub const BASIC_GERM: &str = include_str!("../examples/basic.germ");
pub const AL6_GERM: &str = include_str!("../examples/al6.germ");
pub const HENON_HEILES_GERM: &str = include_str!("../examples/henon_heiles.germ");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub groebner: GroebnerConfig,
}

impl SuiteConfig {
    pub fn with_budget(budget: Option<usize>) -> SuiteConfig {
        SuiteConfig {
            groebner: budget.map_or_else(GroebnerConfig::default, GroebnerConfig::with_max_pairs),
        }
    }
}

pub struct Criterion {
    pub name: &'static str,
    /// Wall-clock bound the check is expected to meet.
    pub bound: Duration,
    pub run: fn(&SuiteConfig) -> Check,
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { name: "involutivity", bound: secs(1), run: involutivity },
        Criterion { name: "basic-discriminant", bound: secs(5), run: basic_discriminant },
        Criterion { name: "arnold-liouville-c6", bound: secs(60), run: arnold_liouville_c6 },
        Criterion { name: "arnold-liouville-binomial", bound: secs(120), run: arnold_liouville_binomial },
        Criterion { name: "henon-heiles", bound: secs(1), run: henon_heiles },
        Criterion { name: "milnor-baseline", bound: secs(1), run: milnor_baseline },
        Criterion { name: "coxeter-braid", bound: secs(30), run: coxeter_braid },
        Criterion { name: "weyl-orders", bound: secs(60), run: weyl_orders },
        Criterion { name: "picard-lefschetz", bound: secs(5), run: picard_lefschetz },
        Criterion { name: "variation-matrix", bound: secs(1), run: variation },
        Criterion { name: "folding-groups", bound: secs(5), run: folding_groups },
        Criterion { name: "steinberg", bound: secs(120), run: steinberg },
    ]
}

pub fn run_suite(config: &SuiteConfig) -> Report {
    Report {
        checks: criteria().iter().map(|c| (c.run)(config)).collect(),
    }
}

fn germ(text: &str) -> GermFile {
    parse_germ(text).expect("bundled germ files parse")
}

fn involutivity(_: &SuiteConfig) -> Check {
    let got: Vec<String> = [BASIC_GERM, HENON_HEILES_GERM]
        .iter()
        .map(|t| match is_involutive(&germ(t).map_germ()) {
            Ok(Involutivity::Involutive) => "0".to_string(),
            Ok(Involutivity::Witness { bracket, .. }) => bracket.to_string(),
            Err(e) => e.to_string(),
        })
        .collect();
    Check::compare("involutivity", "basic:0,henon-heiles:0", format!("basic:{},henon-heiles:{}", got[0], got[1]))
}

fn budget_skip(name: &str, expected: &str, e: &impl std::fmt::Display) -> Check {
    Check::new(name, Status::SkippedBudget, expected, "budget-exhausted").with_note(e.to_string())
}

fn basic_discriminant(cfg: &SuiteConfig) -> Check {
    let name = "basic-discriminant";
    let expected = "s1,multiplicity=1";
    match discriminant(&germ(BASIC_GERM).map_germ(), &cfg.groebner) {
        Ok(d) => {
            let reduced = d.reduced.as_ref().map_or("none".to_string(), ToString::to_string);
            let m = multiplicity_at_origin(&d).map_or_else(|e| e.to_string(), |m| m.to_string());
            Check::compare(name, expected, format!("{reduced},multiplicity={m}"))
        }
        Err(SingularityError::Groebner(e)) if e.is_resource_limit() => budget_skip(name, expected, &e),
        Err(e) => Check::new(name, Status::Fail, expected, e.to_string()),
    }
}

fn arnold_liouville_c6(cfg: &SuiteConfig) -> Check {
    let name = "arnold-liouville-c6";
    let expected = "s1*s2*(s1-s2),multiplicity=3";
    let r = RatMatrix::from_i64(&[vec![1, 1, 0], vec![0, 1, 1]]);
    match arnold_liouville_multiplicity(3, 2, &r, &cfg.groebner) {
        Ok(m) => {
            let t = target_ambient(2);
            let target = parse_polynomial("s1*s2*(s1 - s2)", &t).expect("valid");
            let curve = match m.discriminant.as_ref().and_then(|d| d.reduced.clone()) {
                Some(g) => Ok(g),
                None => line_product(3, 2, &r, &t),
            };
            let curve = match curve {
                Ok(g) if g.equal_up_to_scalar(&target) => "s1*s2*(s1-s2)".to_string(),
                Ok(g) => g.to_string(),
                Err(e) => e,
            };
            let note = match m.route {
                MultiplicityRoute::Elimination => "by elimination".to_string(),
                MultiplicityRoute::SubspaceCount => "elimination budget exhausted; hyperplane images counted".to_string(),
            };
            Check::compare(name, expected, format!("{curve},multiplicity={}", m.multiplicity)).with_note(note)
        }
        Err(e) => Check::new(name, Status::Fail, expected, e.to_string()),
    }
}

/// Product of the image hyperplanes `a . s`.
fn line_product(n: usize, k: usize, r: &RatMatrix, t: &Ambient) -> Result<Polynomial, String> {
    let normals = hyperplane_images(n, k, r).map_err(|e| e.to_string())?;
    Ok(normals.iter().fold(Polynomial::one(t), |acc, a| {
        let form = a.iter().enumerate().fold(Polynomial::zero(t), |f, (i, c)| {
            &f + &Polynomial::var_at(t, i).scale(&BigRational::from_integer(c.clone()))
        });
        &acc * &form
    }))
}

fn arnold_liouville_binomial(cfg: &SuiteConfig) -> Check {
    let name = "arnold-liouville-binomial";
    let r32 = RatMatrix::from_i64(&[vec![1, 2, 3], vec![1, -1, 2]]);
    let r42 = RatMatrix::from_i64(&[vec![1, 2, 3, 5], vec![1, -1, 2, 7]]);
    let r43 = RatMatrix::from_i64(&[vec![1, 2, 3, 5], vec![1, -1, 2, 7], vec![2, 1, -1, 3]]);
    let mut got = Vec::new();
    let mut routes = Vec::new();
    for (n, k, r) in [(3, 2, &r32), (4, 2, &r42), (4, 3, &r43)] {
        match arnold_liouville_multiplicity(n, k, r, &cfg.groebner) {
            Ok(m) => {
                got.push(format!("C({n},{})={}", k - 1, m.multiplicity));
                routes.push(format!("({n},{k}) {:?}", m.route));
            }
            Err(e) => got.push(format!("({n},{k}):{e}")),
        }
    }
    Check::compare(name, "C(3,1)=3,C(4,1)=4,C(4,2)=6", got.join(",")).with_note(routes.join("; "))
}

fn henon_heiles(cfg: &SuiteConfig) -> Check {
    let name = "henon-heiles";
    let given = parse_polynomial("s2*(s2^3 - s1^4)", &target_ambient(2)).expect("valid");
    let m = DiscriminantDescription::from_equation(&given)
        .map_err(|e| e.to_string())
        .and_then(|d| multiplicity_at_origin(&d).map_err(|e| e.to_string()));
    // membership of the printed generator in the radical of the critical ideal
    let crit = critical_ideal(&germ(HENON_HEILES_GERM).map_germ()).expect("valid germ");
    let lifted = parse_polynomial("s2*(s2^3 - s1^4)", crit.ideal().ambient()).expect("valid");
    let stretch = match radical_membership(&lifted, crit.ideal(), &cfg.groebner) {
        Ok(true) => "radical membership holds".to_string(),
        Ok(false) => {
            let computed = discriminant(&germ(HENON_HEILES_GERM).map_germ(), &cfg.groebner);
            match computed {
                Ok(d) => {
                    let order = multiplicity_at_origin(&d).map_or_else(|e| e.to_string(), |m| m.to_string());
                    let g = d.reduced.as_ref().map_or("none".to_string(), ToString::to_string);
                    format!("printed generator is not in the radical; elimination gives {g} of order {order}")
                }
                Err(e) => format!("printed generator is not in the radical; elimination: {e}"),
            }
        }
        Err(e) if e.is_resource_limit() => "radical membership skipped (budget)".to_string(),
        Err(e) => format!("radical membership error: {e}"),
    };
    let got = m.map_or_else(|e| e, |m| m.to_string());
    Check::compare(name, "4", got).with_note(format!("assumes Tn-type, simplifiable, calibrated; {stretch}"))
}

fn milnor_baseline(cfg: &SuiteConfig) -> Check {
    let a = vanishing_core::polycore::Ambient::new(&["x", "y"]).expect("valid");
    let got: Vec<String> = ["x^2 + y^2", "x^3 + y^2", "x^2*y"]
        .iter()
        .map(|h| {
            let h = parse_polynomial(h, &a).expect("valid");
            match milnor_number(&h, &cfg_unbounded(cfg)) {
                Ok(vanishing_core::groebner::QuotientDimension::Finite(n)) => n.to_string(),
                Ok(vanishing_core::groebner::QuotientDimension::Infinite) => "non-isolated".to_string(),
                Err(e) => e.to_string(),
            }
        })
        .collect();
    Check::compare("milnor-baseline", "1,2,non-isolated", got.join(","))
}

/// Milnor numbers of these plane curves take a handful of S-pairs; they are
/// not gated by the elimination budget.
fn cfg_unbounded(_: &SuiteConfig) -> GroebnerConfig {
    GroebnerConfig::default()
}

const BRAID_TYPES: [&str; 8] = ["A2", "A3", "B2", "B3", "D4", "F4", "G2", "E6"];

fn coxeter_braid(_: &SuiteConfig) -> Check {
    let failures: Vec<String> = BRAID_TYPES
        .iter()
        .filter_map(|label| {
            let d = CoxeterDatum::parse(label).expect("supported");
            let g = weyl_generators(&d);
            let braid = braid_relation_check(&g, d.coxeter_matrix()).map(|b| b.holds()).unwrap_or(false);
            (!braid || involution_check(&g).is_some()).then(|| label.to_string())
        })
        .collect();
    let got = if failures.is_empty() { "all-hold".to_string() } else { format!("fails:{}", failures.join(",")) };
    Check::compare("coxeter-braid", "all-hold", got).with_note(BRAID_TYPES.join(" "))
}

fn weyl_orders(_: &SuiteConfig) -> Check {
    let labels = ["A2", "B2", "G2", "A3", "D4", "F4", "E6"];
    let mut expected = Vec::new();
    let mut got = Vec::new();
    for label in labels {
        let t = DynkinType::parse(label).expect("supported");
        expected.push(format!("{label}:{}", classical_weyl_order(t)));
        let g = weyl_generators(&CoxeterDatum::from_type(t));
        got.push(match group_order_bfs(&g, DEFAULT_BFS_CAP) {
            Ok(GroupOrder::Finite(n)) => format!("{label}:{n}"),
            Ok(GroupOrder::ExceedsCap(c)) => format!("{label}:>{c}"),
            Err(e) => format!("{label}:{e}"),
        });
    }
    Check::compare("weyl-orders", expected.join(","), got.join(","))
}

fn simply_laced_lattices() -> Vec<(&'static str, CoxeterDatum, IntersectionLattice)> {
    ["A2", "A3", "D4"]
        .into_iter()
        .map(|l| {
            let d = CoxeterDatum::parse(l).expect("supported");
            let lat = IntersectionLattice::root_lattice(&d).expect("simply laced");
            (l, d, lat)
        })
        .collect()
}

fn picard_lefschetz(_: &SuiteConfig) -> Check {
    let mut bad = Vec::new();
    for (label, d, lat) in simply_laced_lattices() {
        let weyl = weyl_generators(&d);
        for (i, w) in weyl.iter().enumerate() {
            let ok = pl_reflection(&lat, i)
                .map(|h| lat.preserves_form(&h) && (&h * &h).is_identity() && h == *w)
                .unwrap_or(false);
            if !ok {
                bad.push(format!("{label}/{}", i + 1));
            }
        }
    }
    let got = if bad.is_empty() { "all-hold".to_string() } else { format!("fails:{}", bad.join(",")) };
    Check::compare("picard-lefschetz", "all-hold", got).with_note("preserves S, involution, equals Weyl generator on A2 A3 D4")
}

fn variation(_: &SuiteConfig) -> Check {
    let mut bad = Vec::new();
    for (label, _, lat) in simply_laced_lattices() {
        let order: Vec<usize> = (0..lat.rank()).collect();
        let ok = variation_matrix(&lat, &order)
            .map(|w| {
                w.is_lower_triangular()
                    && (0..w.rows()).all(|i| w.get(i, i).abs() == 1)
                    && w.determinant().abs() == 1
                    && w.add(&w.transpose()) == *lat.form()
            })
            .unwrap_or(false);
        if !ok {
            bad.push(label);
        }
    }
    let got = if bad.is_empty() { "all-hold".to_string() } else { format!("fails:{}", bad.join(",")) };
    Check::compare("variation-matrix", "all-hold", got).with_note("triangular, unit diagonal, det +-1, S = W + W^T")
}

fn folding_groups(_: &SuiteConfig) -> Check {
    let describe = |src: &str, spec: &str| -> String {
        let t = DynkinType::parse(src).expect("supported");
        let d = CoxeterDatum::from_type(t);
        let res = automorphisms_from_spec(t, spec).and_then(|a| fold(&d, &a));
        match res {
            Ok(fd) => {
                let ab = if fd.group_is_abelian() { "abelian" } else { "nonabelian" };
                let lattice = IntersectionLattice::root_lattice(&d).expect("simply laced");
                let preserved = fd.group.iter().all(|g| lattice.preserves_form(g));
                let q = if quotient_rank_check(&fd) && preserved { "ok" } else { "bad" };
                format!("{src}->{}|{}|{ab}|{q}", fd.folded.label(), fd.group_order())
            }
            Err(e) => format!("{src}:{e}"),
        }
    };
    let mut got = vec![
        describe("D4", "full"),
        describe("E6", "flip"),
        describe("A3", "flip"),
    ];
    let trivial = ["A3", "D4", "E6"]
        .iter()
        .all(|l| describe(l, "identity") == format!("{l}->{l}|1|abelian|ok"));
    got.push(format!("identity:{}", if trivial { "trivial" } else { "nontrivial" }));
    Check::compare(
        "folding-groups",
        "D4->G2|6|nonabelian|ok,E6->F4|2|abelian|ok,A3->C2|2|abelian|ok,identity:trivial",
        got.join(","),
    )
}

fn steinberg(_: &SuiteConfig) -> Check {
    let expected = "rank(diag(1,1,-2))=1,rank(diag(1,2,-3))=2,m(A2)=2,m(A1)=1,casimir=yes,slice=A1";
    let r2 = match steinberg_cmd(2, SteinbergCheck::All) {
        Ok(r) => r,
        Err(e) => return Check::new("steinberg", Status::Fail, expected, e.message),
    };
    let r1 = match steinberg_cmd(1, SteinbergCheck::Discriminant) {
        Ok(r) => r,
        Err(e) => return Check::new("steinberg", Status::Fail, expected, e.message),
    };
    let get = |r: &Report, n: &str| r.checks.iter().find(|c| c.name == n).map_or("missing".to_string(), |c| c.got.clone());
    let casimir = get(&r2, "casimir") == "true,true" && get(&r2, "kks-jacobi") == "true";
    let slice = ["slice-normal-form", "slice-quadratic-rank", "slice-linear-rank", "slice-a1-point", "slice-target-jacobian"]
        .iter()
        .all(|n| r2.checks.iter().any(|c| c.name == *n && c.status == Status::Pass));
    let got = format!(
        "rank(diag(1,1,-2))={},rank(diag(1,2,-3))={},m(A2)={},m(A1)={},casimir={},slice={}",
        get(&r2, "rank-subregular"),
        get(&r2, "rank-regular"),
        get(&r2, "discriminant-multiplicity"),
        get(&r1, "discriminant-multiplicity"),
        if casimir { "yes" } else { "no" },
        if slice { "A1" } else { "not-A1" },
    );
    Check::compare("steinberg", expected, got).with_note("germ hypotheses of the Steinberg map are assumed")
}

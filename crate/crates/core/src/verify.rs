//! The verification matrix: suites of checks run per order `d`, collected into
//! one deterministic report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::chebyshev::{cheb_eval, cheb_poly, factorization_residual};
use crate::cyclotomic::{make_field, Cyc, Field, FieldExt};
use crate::error::{Error, Result};
use crate::exec;
use crate::modulegen::{gauge_consistent, sweep, Catalog, SolverConfig, SweepGrid, DEFAULT_SOLVER_CAP};
use crate::ncalgebra::{
    alpha_from_ab_gamma, basis_census, beta_from_ab_gamma, bounded_pbw_count, casimir, cheb_image, defining_element,
    graded_quotient_dimension, Central, Defining, Gen, NCPoly, RewriteSystem, DEFAULT_DEGREE_CAP,
};
use crate::qracah::{
    canonical, generate, is_type_d, normalize_congruence, pinch_equivalence_holds, profile_matches_type,
    recurrence_check, SeqType,
};
use crate::report::{CheckEntry, Status};
use crate::samples;
use crate::text::print_qexpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Central,
    Chebyshev,
    Qracah,
    Basis,
    Modules,
    Section5,
    Section6,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Central,
        Suite::Chebyshev,
        Suite::Qracah,
        Suite::Basis,
        Suite::Modules,
        Suite::Section5,
        Suite::Section6,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Central => "central",
            Suite::Chebyshev => "chebyshev",
            Suite::Qracah => "qracah",
            Suite::Basis => "basis",
            Suite::Modules => "modules",
            Suite::Section5 => "section5",
            Suite::Section6 => "section6",
            Suite::Bounds => "bounds",
        }
    }

    fn needs_catalog(self) -> bool {
        matches!(self, Suite::Modules | Suite::Section5 | Suite::Section6 | Suite::Bounds)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationPlan {
    pub d_list: Vec<u32>,
    pub suites: Vec<Suite>,
    pub degree_cap: usize,
    pub solver_cap: usize,
    pub seed: u64,
}

impl VerificationPlan {
    pub fn new(d_list: Vec<u32>, suites: Vec<Suite>, degree_cap: usize, solver_cap: usize, seed: u64) -> Result<Self> {
        if d_list.is_empty() {
            return Err(Error::Config("no orders given".into()));
        }
        for &d in &d_list {
            make_field(d)?;
        }
        if degree_cap == 0 || solver_cap == 0 {
            return Err(Error::Config("caps must be positive".into()));
        }
        let mut suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
        suites.sort();
        suites.dedup();
        Ok(VerificationPlan { d_list, suites, degree_cap, solver_cap, seed })
    }

    pub fn with_defaults(d_list: Vec<u32>, suites: Vec<Suite>) -> Result<Self> {
        VerificationPlan::new(d_list, suites, DEFAULT_DEGREE_CAP, DEFAULT_SOLVER_CAP, 0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub d: u32,
    pub suite: Suite,
    pub entries: Vec<CheckEntry>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        !self.entries.iter().any(CheckEntry::failed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub plan: VerificationPlan,
    pub results: Vec<SuiteReport>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Entries with a given statement across all suites and orders.
    pub fn find<'a>(&'a self, statement: &'a str) -> impl Iterator<Item = (u32, &'a CheckEntry)> + 'a {
        self.results
            .iter()
            .flat_map(move |r| r.entries.iter().filter(move |e| e.statement == statement).map(move |e| (r.d, e)))
    }
}

pub fn run(plan: &VerificationPlan) -> VerificationReport {
    let per_d = exec::map_ordered(plan.d_list.clone(), |d| run_order(plan, d));
    let results: Vec<SuiteReport> = per_d.into_iter().flatten().collect();
    let pass = results.iter().all(SuiteReport::pass);
    VerificationReport { plan: plan.clone(), results, pass }
}

fn run_order(plan: &VerificationPlan, d: u32) -> Vec<SuiteReport> {
    let field = make_field(d).expect("validated");
    let sys = RewriteSystem::shared(&field, plan.degree_cap);
    let catalog = plan.suites.iter().any(|s| s.needs_catalog()).then(|| {
        sweep(&field, &SweepGrid::standard(&field), &SolverConfig::standard(&field).with_cap(plan.solver_cap))
    });
    plan.suites
        .iter()
        .map(|&suite| {
            let entries = match (&sys, suite) {
                (Err(e), Suite::Central | Suite::Chebyshev | Suite::Basis) => {
                    vec![CheckEntry::new("rewrite.completion", false, json!({"error": e.to_string()}))]
                }
                (Ok(sys), Suite::Central) => central_suite(&field, sys),
                (Ok(sys), Suite::Chebyshev) => chebyshev_suite(&field, sys, plan.seed),
                (Ok(sys), Suite::Basis) => basis_suite(&field, sys, plan.seed),
                (_, Suite::Qracah) => qracah_suite(&field, plan.seed),
                (_, Suite::Modules) => modules_suite(&field, catalog.as_ref().expect("built"), plan.solver_cap),
                (_, Suite::Section5) => aggregate(catalog.as_ref().expect("built"), &["decomposition.", "operator."]),
                (_, Suite::Section6) => aggregate(catalog.as_ref().expect("built"), &["dimension."]),
                (_, Suite::Bounds) => bounds_suite(&field, catalog.as_ref().expect("built")),
            };
            SuiteReport { d, suite, entries }
        })
        .collect()
}

fn gen_name(g: Gen) -> char {
    g.symbol()
}

/// `normal_form(p) == 0`, with an overflow reported as `Err`.
fn reduces_to_zero(sys: &RewriteSystem, p: &NCPoly) -> std::result::Result<bool, Error> {
    sys.normal_form(p).map(|r| r.is_zero())
}

pub fn central_suite(field: &Field, sys: &RewriteSystem) -> Vec<CheckEntry> {
    let mut out = Vec::new();
    let elements = [
        ("alpha", defining_element(field, Defining::Alpha)),
        ("beta", defining_element(field, Defining::Beta)),
        ("gamma", defining_element(field, Defining::Gamma)),
        ("casimir", casimir(field)),
    ];
    for (name, x) in &elements {
        for g in Gen::ALL {
            let c = x.commutator(&NCPoly::gen(field, g)).expect("same field");
            let statement = format!("central.{name}-commutes-with-{}", gen_name(g));
            out.push(match reduces_to_zero(sys, &c) {
                Ok(ok) => CheckEntry::new(statement, ok, Value::Null),
                Err(e) => CheckEntry::new(statement, false, json!({"error": e.to_string()})),
            });
        }
    }
    for (name, formula, symbol) in
        [("alpha", alpha_from_ab_gamma(field), Central::Alpha), ("beta", beta_from_ab_gamma(field), Central::Beta)]
    {
        let statement = format!("relations.{name}-from-a-b-gamma");
        let target = NCPoly::central(field, symbol);
        out.push(match sys.normal_form(&formula.sub(&target).expect("same field")) {
            Ok(r) => CheckEntry::new(statement, r.is_zero(), json!({"residual_terms": r.len()})),
            Err(e) => CheckEntry::new(statement, false, json!({"error": e.to_string()})),
        });
    }
    out
}

pub fn chebyshev_suite(field: &Field, sys: &RewriteSystem, seed: u64) -> Vec<CheckEntry> {
    let dbar = field.dbar() as usize;
    // an overflow is a failure for small dbar and a skip beyond
    let mandatory = dbar <= 5;
    let mut out = Vec::new();
    for g in Gen::ALL {
        let t = cheb_image(field, g, dbar);
        for h in Gen::ALL {
            let statement = format!("chebyshev.t-of-{}-commutes-with-{}", gen_name(g), gen_name(h));
            let c = t.commutator(&NCPoly::gen(field, h)).expect("same field");
            out.push(match reduces_to_zero(sys, &c) {
                Ok(ok) => CheckEntry::new(statement, ok, Value::Null),
                Err(e) if !mandatory => CheckEntry::skip(statement, json!({"reason": e.to_string()})),
                Err(e) => CheckEntry::new(statement, false, json!({"error": e.to_string()})),
            });
        }
    }
    let samples = samples::scaled_powers(field, seed, 20);
    let bad: Vec<String> = samples
        .iter()
        .filter(|a| !factorization_residual(a).map(|r| r.is_zero()).unwrap_or(false))
        .map(print_qexpr)
        .collect();
    out.push(CheckEntry::new(
        "chebyshev.factorization-identity",
        bad.is_empty(),
        json!({"samples": samples.len(), "failing": bad}),
    ));
    let monic = (1..=12).all(|n| cheb_poly(n).is_monic() && cheb_poly(n).degree() == Some(n));
    out.push(CheckEntry::new("chebyshev.monic-of-degree-n", monic, json!({"n_max": 12})));
    let x = field.q() + field.rational(1, 3);
    let recurrence = (1..=10).all(|n| cheb_eval(n + 1, &x) == &(&x * &cheb_eval(n, &x)) - &cheb_eval(n - 1, &x));
    out.push(CheckEntry::new("chebyshev.three-term-recurrence", recurrence, json!({"n_max": 10})));
    out
}

pub fn qracah_grid(field: &Field, seed: u64) -> Vec<Cyc> {
    let mut v = samples::qracah_parameters(field);
    v.extend(samples::scaled_powers(field, seed, 50));
    v
}

pub fn qracah_suite(field: &Field, seed: u64) -> Vec<CheckEntry> {
    let grid = qracah_grid(field, seed);
    let mut recurrence = Vec::new();
    let mut pinch = Vec::new();
    let mut round_trip = Vec::new();
    let mut profile = Vec::new();
    let mut non_d = 0;
    for a in &grid {
        let s = generate(a).expect("nonzero sample");
        let name = || print_qexpr(a);
        if !recurrence_check(&s.thetas).all_pass() {
            recurrence.push(name());
        }
        if !pinch_equivalence_holds(&s) {
            pinch.push(name());
        }
        if is_type_d(a) {
            continue;
        }
        non_d += 1;
        match normalize_congruence(&s) {
            Ok((j, c)) => {
                if c.shifted(j as i64) != s.thetas {
                    round_trip.push(name());
                }
                if !profile_matches_type(&c) {
                    profile.push(name());
                }
            }
            Err(_) => round_trip.push(name()),
        }
    }
    // canonical types are pairwise non-congruent
    let dbar = field.dbar() as usize;
    let canon: Vec<(SeqType, Vec<Cyc>)> = SeqType::canonical_for(field.dbar())
        .iter()
        .map(|&t| (t, canonical(field, t).expect("canonical exists").thetas))
        .collect();
    let mut clashes = Vec::new();
    for (i, (t1, s1)) in canon.iter().enumerate() {
        for (t2, s2) in &canon[i + 1..] {
            let rotated = |j: usize| (0..dbar).map(|k| s2[(k + j) % dbar].clone()).collect::<Vec<_>>();
            if (0..dbar).any(|j| &rotated(j) == s1) {
                clashes.push(format!("{t1}~{t2}"));
            }
        }
    }
    vec![
        CheckEntry::new(
            "qracah.recurrence",
            recurrence.is_empty(),
            json!({"samples": grid.len(), "failing": recurrence}),
        ),
        CheckEntry::new("qracah.pinch-equivalence", pinch.is_empty(), json!({"samples": grid.len(), "failing": pinch})),
        CheckEntry::new(
            "qracah.normalization-round-trip",
            round_trip.is_empty(),
            json!({"non_d": non_d, "failing": round_trip}),
        ),
        CheckEntry::new("qracah.multiplicity-pattern", profile.is_empty(), json!({"non_d": non_d, "failing": profile})),
        CheckEntry::new(
            "qracah.canonical-types-distinct",
            clashes.is_empty(),
            json!({"types": canon.len(), "clashes": clashes}),
        ),
    ]
}

pub fn basis_suite(field: &Field, sys: &RewriteSystem, seed: u64) -> Vec<CheckEntry> {
    let dbar = field.dbar() as usize;
    let mut out = Vec::new();
    let census = basis_census(sys, 4);
    let expected = 3 * dbar * dbar - 3 * dbar + 1;
    out.push(CheckEntry::new(
        "basis.bounded-monomial-count",
        census.bounded == expected && bounded_pbw_count(dbar) == expected,
        json!({"census": census.bounded, "expected": expected}),
    ));
    let n = if field.d() == 3 { 4 } else { 2 };
    let q = graded_quotient_dimension(field, sys, n);
    out.push(CheckEntry::new("basis.graded-quotient-agreement", q.agrees(), serde_json::to_value(&q).expect("plain")));

    let mut rng = samples::rng(seed);
    let mut idem_bad = 0;
    let mut overflow = 0;
    for _ in 0..200 {
        let p = samples::random_ncpoly(field, &mut rng, 6, 4);
        match sys.normal_form(&p) {
            Ok(r) => {
                if sys.normal_form(&r).ok().as_ref() != Some(&r) {
                    idem_bad += 1;
                }
            }
            Err(_) => overflow += 1,
        }
    }
    out.push(CheckEntry::new(
        "rewrite.idempotence",
        idem_bad == 0 && overflow == 0,
        json!({"samples": 200, "failing": idem_bad, "overflow": overflow}),
    ));
    let mut hom_bad = 0;
    for _ in 0..100 {
        let p = samples::random_ncpoly(field, &mut rng, 4, 3);
        let r = samples::random_ncpoly(field, &mut rng, 4, 3);
        let lhs = sys.normal_form(&p.multiply(&r).expect("same field"));
        let rhs = sys
            .normal_form(&p)
            .and_then(|np| sys.normal_form(&r).map(|nr| np.multiply(&nr).expect("same field")))
            .and_then(|x| sys.normal_form(&x));
        if lhs.is_err() || lhs != rhs {
            hom_bad += 1;
        }
    }
    out.push(CheckEntry::new("rewrite.homomorphism", hom_bad == 0, json!({"pairs": 100, "failing": hom_bad})));
    out
}

pub fn modules_suite(field: &Field, catalog: &Catalog, solver_cap: usize) -> Vec<CheckEntry> {
    let dbar = field.dbar() as usize;
    let unsound: Vec<usize> = catalog.entries.iter().filter(|e| !e.module_ok).map(|e| e.grid_index).collect();
    let matched: Vec<_> = catalog.entries.iter().filter(|e| e.criterion.is_some()).collect();
    let disagreements: Vec<usize> =
        matched.iter().filter(|e| e.criterion_agrees() == Some(false)).map(|e| e.grid_index).collect();

    // the gauge comparison at small dimension, on the D-type grid parameters
    let cfg = SolverConfig::standard(field).with_cap(solver_cap);
    let grid = SweepGrid::standard(field);
    let mut gauge_cases = 0;
    let mut gauge_bad = Vec::new();
    for a in grid.params.iter().filter(|a| is_type_d(a)) {
        let s = generate(a).expect("nonzero");
        for dim in 2..=3usize.min(dbar) {
            let sup: Vec<Cyc> = (0..dim - 1).map(|i| field.q_power(i as i64 + 1) + field.int(2)).collect();
            for g in &grid.gammas {
                gauge_cases += 1;
                if gauge_consistent(&s.thetas[..dim], g, &sup, &cfg) != Ok(true) {
                    gauge_bad.push(json!({"a": print_qexpr(a), "dim": dim, "gamma": print_qexpr(g)}));
                }
            }
        }
    }
    let irreducible_dims: BTreeMap<usize, usize> = catalog.irreducible().fold(BTreeMap::new(), |mut m, e| {
        *m.entry(e.dim).or_insert(0) += 1;
        m
    });
    vec![
        CheckEntry::new(
            "modules.solver-soundness",
            unsound.is_empty() && !catalog.entries.is_empty(),
            json!({"entries": catalog.entries.len(), "failing": unsound, "rejected_points": catalog.rejected.len()}),
        ),
        CheckEntry::new(
            "modules.gauge-completeness",
            gauge_bad.is_empty(),
            json!({"cases": gauge_cases, "failing": gauge_bad}),
        ),
        CheckEntry::new(
            "modules.criterion-consistency",
            disagreements.is_empty(),
            json!({"matched": matched.len(), "disagreements": disagreements}),
        ),
        CheckEntry::new(
            "modules.tight-dimension-found",
            catalog.found_tight,
            json!({"dbar": dbar, "irreducible_by_dim": irreducible_dims, "limitation": catalog.limitation}),
        ),
    ]
}

/// Folds the per-module analysis entries with the given prefixes into one
/// entry per statement.
pub fn aggregate(catalog: &Catalog, prefixes: &[&str]) -> Vec<CheckEntry> {
    let mut by: BTreeMap<String, (usize, usize, Vec<usize>)> = BTreeMap::new();
    let mut broken = Vec::new();
    for e in catalog.irreducible() {
        for a in &e.analysis {
            if a.statement == "analysis" {
                broken.push(e.grid_index);
                continue;
            }
            if !prefixes.iter().any(|p| a.statement.starts_with(p)) {
                continue;
            }
            let slot = by.entry(a.statement.clone()).or_default();
            match a.status {
                Status::Pass => slot.0 += 1,
                Status::Skip => slot.1 += 1,
                Status::Fail => slot.2.push(e.grid_index),
            }
        }
    }
    let mut out: Vec<CheckEntry> = by
        .into_iter()
        .map(|(statement, (pass, skip, fail))| {
            let detail = json!({"pass": pass, "skipped": skip, "failing_grid_indices": fail});
            if fail.is_empty() && pass == 0 {
                CheckEntry::skip(statement, detail)
            } else {
                CheckEntry::new(statement, fail.is_empty(), detail)
            }
        })
        .collect();
    out.push(CheckEntry::new(
        "analysis.completed",
        broken.is_empty() && catalog.irreducible().next().is_some(),
        json!({"irreducible": catalog.irreducible().count(), "failing": broken}),
    ));
    out
}

pub fn bounds_suite(field: &Field, catalog: &Catalog) -> Vec<CheckEntry> {
    let dbar = field.dbar() as usize;
    let bound = (1..).take_while(|k: &usize| k * k <= 3 * dbar * dbar - 3 * dbar + 1).last().unwrap_or(0);
    let over: Vec<usize> = catalog.irreducible().filter(|e| e.dim > dbar).map(|e| e.grid_index).collect();
    let over_sqrt: Vec<usize> = catalog.irreducible().filter(|e| e.dim > bound).map(|e| e.grid_index).collect();
    let probes = catalog.entries.iter().filter(|e| e.dim > dbar).count();
    let branches: BTreeMap<String, usize> = catalog.irreducible().fold(BTreeMap::new(), |mut m, e| {
        let k = match &e.branch {
            Some(b) => serde_json::to_value(b).expect("plain")["branch"].as_str().unwrap_or("?").to_string(),
            None => "unresolved".into(),
        };
        *m.entry(k).or_insert(0) += 1;
        m
    });
    vec![
        CheckEntry::new(
            "bounds.irreducible-dimension-at-most-dbar",
            over.is_empty(),
            json!({"dbar": dbar, "probes_above_dbar": probes, "failing": over}),
        ),
        CheckEntry::new(
            "bounds.dimension-at-most-sqrt-span-count",
            over_sqrt.is_empty(),
            json!({"bound": bound, "failing": over_sqrt}),
        ),
        CheckEntry::new("bounds.tight-at-dbar", catalog.found_tight, json!({"dbar": dbar})),
        CheckEntry::new("bounds.dichotomy-resolved", !branches.contains_key("unresolved"), json!(branches)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_validation() {
        assert!(matches!(VerificationPlan::with_defaults(vec![4], vec![]), Err(Error::DisallowedOrder(4))));
        assert!(VerificationPlan::with_defaults(vec![], vec![]).is_err());
        assert!(VerificationPlan::new(vec![3], vec![], 0, 1, 0).is_err());
        let p = VerificationPlan::with_defaults(vec![5], vec![Suite::Qracah, Suite::Central, Suite::Qracah]).unwrap();
        assert_eq!(p.suites, vec![Suite::Central, Suite::Qracah]);
        assert_eq!("section6".parse::<Suite>().unwrap(), Suite::Section6);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn qracah_suite_small() {
        let f = make_field(5).unwrap();
        let entries = qracah_suite(&f, 0);
        assert!(entries.iter().all(|e| e.status == Status::Pass), "{entries:?}");
    }
}

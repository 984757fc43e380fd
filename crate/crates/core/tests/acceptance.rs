//! Acceptance run. Prints one line per criterion and exits non-zero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use uawa_core::chebyshev::factorization_residual;
use uawa_core::cyclotomic::admissible_orders;
use uawa_core::modulegen::{sweep, Catalog, CatalogEntry, SolverConfig, SweepGrid};
use uawa_core::ncalgebra::{basis_census, RewriteSystem, DEFAULT_DEGREE_CAP};
use uawa_core::repkit::Branch;
use uawa_core::report::{CheckEntry, Status};
use uawa_core::samples::scaled_powers;
use uawa_core::verify::{basis_suite, central_suite, chebyshev_suite, qracah_suite};
use uawa_core::{make_field, Field};

const MODULE_ORDERS: [u32; 5] = [3, 5, 6, 7, 8];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn field(d: u32) -> Field {
    make_field(d).expect("admissible")
}

fn system(d: u32) -> std::sync::Arc<RewriteSystem> {
    RewriteSystem::shared(&field(d), DEFAULT_DEGREE_CAP).expect("completion")
}

fn status_counts<'a>(entries: impl Iterator<Item = &'a CheckEntry>) -> (usize, usize, usize) {
    entries.fold((0, 0, 0), |(p, s, f), e| match e.status {
        Status::Pass => (p + 1, s, f),
        Status::Skip => (p, s + 1, f),
        Status::Fail => (p, s, f + 1),
    })
}

fn irreducible(catalogs: &[Catalog]) -> impl Iterator<Item = &CatalogEntry> {
    catalogs.iter().flat_map(|c| c.entries.iter()).filter(|e| e.irreducible)
}

fn with_prefix<'a>(e: &'a CatalogEntry, prefix: &'a str) -> impl Iterator<Item = &'a CheckEntry> + 'a {
    e.analysis.iter().filter(move |c| c.statement.starts_with(prefix))
}

fn status_of(e: &CatalogEntry, statement: &str) -> Option<Status> {
    e.analysis.iter().find(|c| c.statement == statement).map(|c| c.status)
}

fn centrality() -> Outcome {
    let mut zero = 0;
    let mut total = 0;
    for d in MODULE_ORDERS {
        let entries = central_suite(&field(d), &system(d));
        for e in entries.iter().filter(|e| e.statement.starts_with("central.")) {
            total += 1;
            zero += (e.status == Status::Pass) as usize;
        }
    }
    outcome(total == 60 && zero == 60, format!("{zero}/{total} commutators reduce to zero"))
}

fn chebyshev_centrality() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for d in MODULE_ORDERS {
        let entries = chebyshev_suite(&field(d), &system(d), 0);
        let (p, s, f) = status_counts(entries.iter().filter(|e| e.statement.starts_with("chebyshev.t-of-")));
        let mandatory = matches!(d, 3 | 5 | 6);
        ok &= f == 0 && p + s == 9 && (!mandatory || p == 9);
        parts.push(format!("d={d}: {p} pass {s} skip {f} fail"));
    }
    outcome(ok, parts.join(", "))
}

fn generator_elimination() -> Outcome {
    let mut bad = Vec::new();
    for d in MODULE_ORDERS {
        let entries = central_suite(&field(d), &system(d));
        let rel: Vec<_> = entries.iter().filter(|e| e.statement.starts_with("relations.")).collect();
        if rel.len() != 2 || rel.iter().any(|e| e.status != Status::Pass) {
            bad.push(d);
        }
    }
    outcome(bad.is_empty(), format!("alpha and beta formulas exact for d in {MODULE_ORDERS:?}, failing {bad:?}"))
}

fn factorization() -> Outcome {
    let orders = admissible_orders(12);
    let mut bad = Vec::new();
    for &d in &orders {
        let f = field(d);
        for a in scaled_powers(&f, 0, 20) {
            if !factorization_residual(&a).map(|r| r.is_zero()).unwrap_or(false) {
                bad.push(d);
                break;
            }
        }
    }
    outcome(bad.is_empty(), format!("20 samples each for d in {orders:?}, failing {bad:?}"))
}

fn census() -> Outcome {
    // 3 dbar^2 - 3 dbar + 1 written out
    let expected: BTreeMap<u32, usize> = [(3, 19), (8, 37), (5, 61), (12, 91)].into();
    let mut parts = Vec::new();
    let mut ok = true;
    for (&d, &want) in &expected {
        let got = basis_census(&system(d), 0).bounded;
        ok &= got == want;
        parts.push(format!("d={d}: {got}"));
    }
    outcome(ok, parts.join(", "))
}

fn qracah() -> Outcome {
    let orders = admissible_orders(16);
    let mut bad = Vec::new();
    for &d in &orders {
        if qracah_suite(&field(d), 0).iter().any(|e| e.status != Status::Pass) {
            bad.push(d);
        }
    }
    outcome(bad.is_empty(), format!("d in {orders:?}, failing {bad:?}"))
}

fn module_pipeline(catalogs: &[Catalog]) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for c in catalogs.iter().filter(|c| matches!(c.d, 3 | 5 | 6 | 7)) {
        let dbar = field(c.d).dbar() as usize;
        let tight = c.entries.iter().filter(|e| e.irreducible && e.dim == dbar).count();
        let above = c.entries.iter().filter(|e| e.irreducible && e.dim > dbar).count();
        ok &= tight > 0 && above == 0 && c.entries.iter().all(|e| e.module_ok);
        parts.push(format!("d={}: {tight} tight, {above} above", c.d));
    }
    outcome(ok, parts.join(", "))
}

fn decomposition(catalogs: &[Catalog]) -> Outcome {
    let mut n = 0;
    let mut bad = 0;
    for e in irreducible(catalogs) {
        n += 1;
        let ok = status_of(e, "decomposition.product-vanishes") == Some(Status::Pass)
            && status_of(e, "decomposition.block-pattern") == Some(Status::Pass);
        bad += (!ok) as usize;
    }
    outcome(n > 0 && bad == 0, format!("{n} irreducible modules, {bad} failing"))
}

fn operators(catalogs: &[Catalog]) -> Outcome {
    let mut n = 0;
    let mut bad = 0;
    for e in irreducible(catalogs).filter(|e| matches!(e.d, 3 | 5 | 6)) {
        n += 1;
        let (p, _, f) = status_counts(with_prefix(e, "operator."));
        bad += (f > 0 || p == 0) as usize;
    }
    outcome(n > 0 && bad == 0, format!("{n} irreducible modules, {bad} failing"))
}

fn dimension(catalogs: &[Catalog]) -> Outcome {
    let mut a = 0;
    let mut b = 0;
    let mut eig_skip = 0;
    let mut bad = Vec::new();
    for e in irreducible(catalogs) {
        let dbar = field(e.d).dbar() as usize;
        let bound = (3 * dbar * dbar - 3 * dbar + 1).isqrt();
        let has = |s: &str| status_of(e, s) == Some(Status::Pass);
        let mut ok = has("dimension.injectivity-dichotomy")
            && e.dim <= bound
            && has("dimension.span-count-bound")
            && status_counts(with_prefix(e, "dimension.")).2 == 0;
        match e.branch {
            Some(Branch::AllInjective) => {
                b += 1;
                ok &= has("dimension.equal-eigenspace-dims")
                    && has("dimension.dbar-times-eigenspace")
                    && has("dimension.equals-dbar")
                    && e.dim == dbar;
            }
            Some(Branch::NonInjective { .. }) => {
                a += 1;
                match status_of(e, "dimension.eigenvector-in-eigenspace") {
                    Some(Status::Pass) => {}
                    Some(Status::Skip) => eig_skip += 1,
                    _ => ok = false,
                }
                ok &= has("dimension.triangular-krylov-span");
            }
            None => ok = false,
        }
        if !ok {
            bad.push(format!("d={} #{}", e.d, e.grid_index));
        }
    }
    outcome(
        bad.is_empty() && b > 0,
        format!("{a} non-injective ({eig_skip} eigenvalue outside the field), {b} all-injective, failing {bad:?}"),
    )
}

fn rewriter() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for d in [3, 5] {
        let entries = basis_suite(&field(d), &system(d), 0);
        for s in ["rewrite.idempotence", "rewrite.homomorphism", "basis.graded-quotient-agreement"] {
            let pass = entries.iter().any(|e| e.statement == s && e.status == Status::Pass);
            ok &= pass;
            if !pass {
                parts.push(format!("d={d} {s}"));
            }
        }
    }
    outcome(ok, format!("d in [3, 5] (graded quotient to degree 4 at d=3), failing {parts:?}"))
}

fn criterion_cross_check(catalogs: &[Catalog]) -> Outcome {
    let matched: Vec<_> = catalogs.iter().flat_map(|c| &c.entries).filter(|e| e.criterion.is_some()).collect();
    let disagree = matched.iter().filter(|e| e.criterion_agrees() == Some(false)).count();
    let reducible = matched.iter().filter(|e| !e.irreducible).count();
    outcome(
        !matched.is_empty() && disagree == 0,
        format!("{} matched instances ({reducible} reducible), {disagree} disagreements", matched.len()),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let catalogs: Vec<Catalog> = MODULE_ORDERS
        .iter()
        .map(|&d| {
            let f = field(d);
            sweep(&f, &SweepGrid::standard(&f), &SolverConfig::standard(&f))
        })
        .collect();
    let results: Vec<(&str, Outcome)> = vec![
        ("centrality", centrality()),
        ("chebyshev centrality", chebyshev_centrality()),
        ("generator elimination", generator_elimination()),
        ("factorization identity", factorization()),
        ("monomial census", census()),
        ("q-Racah suite", qracah()),
        ("module pipeline", module_pipeline(&catalogs)),
        ("decomposition suite", decomposition(&catalogs)),
        ("operator suite", operators(&catalogs)),
        ("dimension suite", dimension(&catalogs)),
        ("rewriter self-consistency", rewriter()),
        ("criterion cross-check", criterion_cross_check(&catalogs)),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.ok;
        println!("criterion {:>2} {:<26} {}  {}", i + 1, name, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} in {:.1?}", if all { "PASS" } else { "FAIL" }, start.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use uawa_core::chebyshev::{cheb_poly, factorization_residual};
use uawa_core::modulegen::{analyze, sweep, SolverConfig, SweepGrid, DEFAULT_SOLVER_CAP};
use uawa_core::ncalgebra::{parse_ncpoly, print_ncpoly, RewriteSystem, DEFAULT_DEGREE_CAP};
use uawa_core::qracah::{classify, generate, is_type_d, normalize_congruence};
use uawa_core::repkit::{burnside_irreducible, check_module, RepBundle};
use uawa_core::text::{parse_qexpr, print_qexpr};
use uawa_core::verify::{run, Suite, VerificationPlan};
use uawa_core::{make_field, Error, Field};

#[derive(Parser)]
#[command(name = "uawa", version, about = "Universal Askey-Wilson algebra at roots of unity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification matrix and print a JSON report.
    Verify(VerifyArgs),
    /// Chebyshev polynomial coefficients, or the factorization residual for a parameter.
    Cheb {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
    },
    /// q-Racah sequences.
    Qracah {
        #[command(subcommand)]
        command: QracahCommand,
    },
    /// Module construction.
    Gen {
        #[command(subcommand)]
        command: GenCommand,
    },
    /// PBW normal form of an element of the algebra.
    Nf {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check a module given as a JSON bundle and run the structural analysis.
    Analyze {
        bundle: PathBuf,
        /// Extra q-Racah parameter to try first when detecting the B-spectrum.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated orders of q.
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<u32>,
    /// Comma-separated suites; all when omitted.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    #[arg(long, default_value_t = DEFAULT_SOLVER_CAP)]
    solver_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum QracahCommand {
    /// Type, canonical shift and terms of the sequence with parameter `a`.
    Classify {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Solve the ansatz over the sample grid and write a JSON-lines catalog.
    Sweep {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = DEFAULT_SOLVER_CAP)]
        solver_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure kinds mapped onto the exit-code contract.
enum Failure {
    Config(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn field(d: u32) -> Result<Field, Failure> {
    Ok(make_field(d)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => println!("{}", text.trim_end()),
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let suites = args.suite.iter().map(|s| s.parse::<Suite>()).collect::<Result<Vec<_>, _>>()?;
    let plan = VerificationPlan::new(args.d, suites, args.degree_cap, args.solver_cap, args.seed)?;
    eprintln!(
        "verifying d = {:?}, suites = {:?}",
        plan.d_list,
        plan.suites.iter().map(|s| s.name()).collect::<Vec<_>>()
    );
    let report = run(&plan);
    for r in &report.results {
        eprintln!("d={} {}: {}", r.d, r.suite, if r.pass() { "pass" } else { "FAIL" });
    }
    emit(&args.out, &report.to_json())?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cheb(n: Option<usize>, d: Option<u32>, a: Option<String>) -> Result<(), Failure> {
    match (n, d, a) {
        (Some(n), None, None) => {
            println!("{}", pretty(&json!({"n": n, "coeffs": cheb_poly(n).coeffs_i64()})));
            Ok(())
        }
        (None, Some(d), Some(a)) => {
            let f = field(d)?;
            let a = parse_qexpr(&f, &a)?;
            let r = factorization_residual(&a)?;
            let coeffs: Vec<String> = r.coeffs.iter().map(print_qexpr).collect();
            println!("{}", pretty(&json!({"d": d, "a": print_qexpr(&a), "residual": coeffs, "zero": r.is_zero()})));
            if r.is_zero() {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        _ => Err(Failure::Config("give either --n, or --d together with --a".into())),
    }
}

fn classify_cmd(d: u32, a: String) -> Result<(), Failure> {
    let f = field(d)?;
    let a = parse_qexpr(&f, &a)?;
    let s = generate(&a)?;
    let thetas: Vec<String> = s.thetas.iter().map(print_qexpr).collect();
    let out = if is_type_d(&a) {
        json!({"d": d, "a": print_qexpr(&a), "type": classify(&s).tag.label(), "thetas": thetas})
    } else {
        let (j, c) = normalize_congruence(&s)?;
        json!({"d": d, "a": print_qexpr(&a), "type": c.tag.label(), "shift": j, "thetas": thetas})
    };
    println!("{}", pretty(&out));
    Ok(())
}

fn sweep_cmd(d: u32, solver_cap: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    if solver_cap == 0 {
        return Err(Failure::Config("solver cap must be positive".into()));
    }
    let f = field(d)?;
    let cat = sweep(&f, &SweepGrid::standard(&f), &SolverConfig::standard(&f).with_cap(solver_cap));
    eprintln!(
        "d={d}: {} modules, {} irreducible, {} grid points rejected, dimension {} reached: {}",
        cat.entries.len(),
        cat.irreducible().count(),
        cat.rejected.len(),
        f.dbar(),
        cat.found_tight
    );
    emit(&out, &cat.to_json_lines())
}

fn nf(d: u32, degree_cap: usize, expr: String) -> Result<(), Failure> {
    let f = field(d)?;
    let p = parse_ncpoly(&f, &expr)?;
    let sys = RewriteSystem::shared(&f, degree_cap)?;
    println!("{}", print_ncpoly(&sys.normal_form(&p)?));
    Ok(())
}

fn analyze_cmd(path: PathBuf, a: Option<String>) -> Result<(), Failure> {
    let text = fs::read_to_string(&path)?;
    let bundle: RepBundle = serde_json::from_str(&text).map_err(|e| Failure::Config(e.to_string()))?;
    let f = field(bundle.d)?;
    let rep = bundle.to_rep(&f)?;
    let extra = a.map(|s| parse_qexpr(&f, &s)).transpose()?.into_iter().collect::<Vec<_>>();
    let module = check_module(&rep);
    let (irreducible, algebra_dim) = burnside_irreducible(&rep);
    let mut report = json!({
        "d": bundle.d,
        "n": rep.n,
        "module": module,
        "irreducible": irreducible,
        "algebra_dim": algebra_dim,
    });
    let mut ok = module.pass;
    if irreducible && module.pass {
        match analyze(&rep, &extra) {
            Ok((t, branch, entries)) => {
                ok &= !entries.iter().any(|e| e.failed());
                report["type"] = json!(t);
                report["branch"] = json!(branch);
                report["checks"] = json!(entries);
            }
            Err(e) => {
                ok = false;
                report["error"] = json!(e.to_string());
            }
        }
    }
    println!("{}", pretty(&report));
    if ok {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Cheb { n, d, a } => cheb(n, d, a),
        Command::Qracah { command: QracahCommand::Classify { d, a } } => classify_cmd(d, a),
        Command::Gen { command: GenCommand::Sweep { d, solver_cap, out } } => sweep_cmd(d, solver_cap, out),
        Command::Nf { d, degree_cap, expr } => nf(d, degree_cap, expr),
        Command::Analyze { bundle, a } => analyze_cmd(bundle, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

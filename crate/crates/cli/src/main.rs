//! `klein`: recompute and verify the Klein Lagrangian data from the command line.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use klein_core::arith::{rational_from_str, Rational};
use klein_core::epw::{build_a, fixed_point_count, gm_dimension, intersection_with_hyperplane, klein_sextic, stratum, EpwError};
use klein_core::fixtures::{FixedCount, FixtureSet, Fixtures};
use klein_core::groebner::{at_primes, parse_ideal, Ideal, SmoothnessOptions};
use klein_core::hermitian::HermMatrix;
use klein_core::klein::{character, extend_to_v6, klein_table, lefschetz_surface_count, pretty_character, RepFunctor};
use klein_core::lattice::Lattice;
use klein_core::polytext::{default_names, emit_polynomial, polynomial_to_json};
use klein_core::suite::{all_passed, find_check, run_checks, suite_checks, RunOptions, Suite};

#[derive(Parser)]
#[command(name = "klein", version, about = "Exact computations for the Klein Lagrangian and its EPW sextic")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Machine-readable output (JSON, or JSON lines for `verify`).
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized steps such as minor sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prime for Gröbner computations; repeat for several (default 32003 and 65537).
    #[arg(long = "prime", global = true)]
    primes: Vec<u32>,
    /// Maximum number of S-pairs per Gröbner basis.
    #[arg(long, global = true)]
    budget_pairs: Option<usize>,
    /// Maximum S-pair degree.
    #[arg(long, global = true)]
    budget_degree: Option<u32>,
    /// Wall-clock limit per Gröbner basis, in seconds.
    #[arg(long, global = true)]
    budget_seconds: Option<u64>,
    /// Try this many random Jacobian minors before the full set.
    #[arg(long, global = true)]
    minor_sample: Option<usize>,
    /// Directory whose files replace the embedded fixtures of the same name.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite of named checks.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Run only these check ids.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Omit timings from JSON output.
        #[arg(long)]
        no_timings: bool,
    },
    /// Print the sextic of the Lagrangian.
    EmitSextic {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the computed characters on each conjugacy class.
    CharTable,
    /// Fixed points of a representative of each class on the surface stratum and on the sextic.
    FixedPoints,
    /// Stratum of a point, or the intersection of the Lagrangian with a hyperplane.
    Stratum {
        /// Six comma-separated rational coordinates.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "hyperplane")]
        point: Option<String>,
        /// Six comma-separated coefficients of a linear form.
        #[arg(long, allow_hyphen_values = true)]
        hyperplane: Option<String>,
    },
    /// Invariants of a lattice given as a JSON Gram matrix or a spec like "U+E8(-1)+(-2)".
    Lattice {
        #[arg(allow_hyphen_values = true)]
        spec: String,
        /// Count vectors with |norm| up to this bound (definite lattices only).
        #[arg(long)]
        short: Option<u64>,
    },
    /// Hermitian Gram matrices over Z[l].
    Hermitian {
        /// Run one of the Hermitian checks.
        #[arg(long, value_enum)]
        check: Option<HermCheck>,
        /// A matrix file (rows separated by newlines or ';', entries like `2l` or `-1-2lb`).
        file: Option<PathBuf>,
    },
    /// Emptiness or smoothness of an ideal file at the chosen primes.
    Groebner {
        file: PathBuf,
        /// Test smoothness of this codimension instead of emptiness.
        #[arg(long)]
        codim: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Lattice,
    Hermitian,
    Group,
    Epw,
    Groebner,
    Slow,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Fast => Suite::Fast,
            SuiteArg::Lattice => Suite::Lattice,
            SuiteArg::Hermitian => Suite::Hermitian,
            SuiteArg::Group => Suite::Group,
            SuiteArg::Epw => Suite::Epw,
            SuiteArg::Groebner => Suite::Groebner,
            SuiteArg::Slow => Suite::Slow,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum HermCheck {
    Hprime,
    Mat10,
    /// Polarization invariants.
    Principal,
}

/// An error that maps to an exit code.
enum Failure {
    Usage(String),
    Verification,
}

type Outcome = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Verify { suite, checks, no_timings } => verify((*suite).into(), checks, !no_timings, g),
        Command::EmitSextic { format } => emit_sextic(if g.json { Format::Json } else { *format }),
        Command::CharTable => char_table(g.json),
        Command::FixedPoints => fixed_points(g.json),
        Command::Stratum { point, hyperplane } => stratum_cmd(point.as_deref(), hyperplane.as_deref(), g.json),
        Command::Lattice { spec, short } => lattice_cmd(spec, *short, g.json),
        Command::Hermitian { check, file } => hermitian_cmd(*check, file.as_ref(), g),
        Command::Groebner { file, codim } => groebner_cmd(file, *codim, g),
    }
}

fn options(g: &Global) -> RunOptions {
    let mut o = RunOptions { seed: g.seed, minor_sample: g.minor_sample, ..RunOptions::default() };
    if !g.primes.is_empty() {
        o.primes = g.primes.clone();
    }
    if let Some(p) = g.budget_pairs {
        o.max_pairs = p;
    }
    if let Some(d) = g.budget_degree {
        o.max_degree = d;
    }
    o.time_limit = g.budget_seconds.map(Duration::from_secs);
    o
}

fn load_fixtures(g: &Global) -> Result<Fixtures, Failure> {
    let set = match &g.fixtures {
        Some(dir) => FixtureSet::with_dir(dir).map_err(usage)?,
        None => FixtureSet::embedded(),
    };
    set.load().map_err(usage)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn verify(suite: Suite, only: &[String], timings: bool, g: &Global) -> Outcome {
    let fixtures = load_fixtures(g)?;
    let checks = if only.is_empty() {
        suite_checks(suite)
    } else {
        only.iter().map(|id| find_check(id).ok_or_else(|| usage(format!("unknown check `{id}`")))).collect::<Result<_, _>>()?
    };
    let opts = options(g);
    let start = Instant::now();
    let reports = run_checks(&checks, &fixtures, &opts);
    for r in &reports {
        if g.json {
            println!("{}", r.to_json(timings));
        } else {
            println!("{r}");
        }
    }
    let passed = reports.iter().filter(|r| r.verdict == klein_core::suite::Verdict::Pass).count();
    if !g.json {
        println!("{suite}: {passed}/{} checks passed in {:.1} s", reports.len(), start.elapsed().as_secs_f64());
    }
    if all_passed(&reports) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn emit_sextic(format: Format) -> Outcome {
    let f = klein_sextic();
    let names = default_names(6);
    match format {
        Format::Text => println!("{}", emit_polynomial(f, &names).map_err(usage)?),
        Format::Json => print_json(&json!({
            "variables": names,
            "order": "grevlex",
            "term_count": f.len().to_string(),
            "text": emit_polynomial(f, &names).map_err(usage)?,
            "terms": polynomial_to_json(f),
        })),
    }
    Ok(())
}

const TABLE_ROWS: [RepFunctor; 4] = [RepFunctor::Trivial, RepFunctor::Xi, RepFunctor::XiDual, RepFunctor::Wedge2];

fn char_table(as_json: bool) -> Outcome {
    let t = klein_table().map_err(usage)?;
    let classes = t.classes();
    let rows: Vec<(&str, Vec<String>)> = TABLE_ROWS
        .iter()
        .map(|&f| (f.name(), classes.iter().map(|c| pretty_character(&character(t, f, c.representative))).collect()))
        .collect();
    if as_json {
        print_json(&json!({
            "classes": classes.iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
            "sizes": classes.iter().map(|c| c.size().to_string()).collect::<Vec<_>>(),
            "orders": classes.iter().map(|c| c.order.to_string()).collect::<Vec<_>>(),
            "characters": rows.iter().map(|(n, v)| (n.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        }));
        return Ok(());
    }
    let cell = |s: &str| format!("{s:>6}");
    let line = |head: &str, cells: Vec<String>| println!("{head:<10}{}", cells.iter().map(|c| cell(c)).collect::<String>());
    line("class", classes.iter().map(|c| c.label.clone()).collect());
    line("size", classes.iter().map(|c| c.size().to_string()).collect());
    line("order", classes.iter().map(|c| c.order.to_string()).collect());
    for (name, vals) in rows {
        line(name, vals);
    }
    Ok(())
}

fn fixed_points(as_json: bool) -> Outcome {
    let t = klein_table().map_err(usage)?;
    let mut out = Vec::new();
    for cl in t.classes().iter().filter(|c| c.order > 1) {
        let surface = match lefschetz_surface_count(t, cl.representative) {
            Ok(n) => FixedCount::Points(n as usize).to_string(),
            Err(_) => "curve".to_string(),
        };
        let g = extend_to_v6(t.element(cl.representative));
        let fourfold = match fixed_point_count(klein_sextic(), &g, cl.order) {
            Ok(c) => FixedCount::Points(c.total()),
            Err(EpwError::PositiveDimensional { dim }) => FixedCount::Dimension(dim),
            Err(e) => return Err(usage(e)),
        };
        out.push((cl.label.clone(), cl.order, surface, fourfold.to_string()));
    }
    if as_json {
        let v: Vec<Value> = out
            .iter()
            .map(|(l, o, s, f)| json!({ "class": l, "order": o.to_string(), "surface": s, "fourfold": f }))
            .collect();
        print_json(&json!(v));
    } else {
        println!("{:<8}{:>6}{:>10}{:>10}", "class", "order", "surface", "fourfold");
        for (l, o, s, f) in out {
            println!("{l:<8}{o:>6}{s:>10}{f:>10}");
        }
    }
    Ok(())
}

fn parse_vector(src: &str) -> Result<Vec<Rational>, Failure> {
    let v: Vec<Rational> = src
        .split(',')
        .map(|x| rational_from_str(x.trim()).ok_or_else(|| usage(format!("bad coordinate `{}`", x.trim()))))
        .collect::<Result<_, _>>()?;
    if v.len() != 6 {
        return Err(usage(format!("expected 6 coordinates, got {}", v.len())));
    }
    Ok(v)
}

fn stratum_cmd(point: Option<&str>, hyperplane: Option<&str>, as_json: bool) -> Outcome {
    let a = build_a();
    let mut out = serde_json::Map::new();
    if let Some(p) = point {
        let l = stratum(&a, &parse_vector(p)?).map_err(usage)?;
        out.insert("l".into(), json!(l.to_string()));
    }
    if let Some(h) = hyperplane {
        let c = parse_vector(h)?;
        let d = intersection_with_hyperplane(&a, &c).map_err(usage)?;
        let n = gm_dimension(&a, &c).map_err(usage)?;
        out.insert("intersection".into(), json!(d.to_string()));
        out.insert("gm_dimension".into(), json!(n.to_string()));
    }
    if as_json {
        print_json(&Value::Object(out));
    } else {
        for (k, v) in out {
            println!("{k}: {}", v.as_str().unwrap_or_default());
        }
    }
    Ok(())
}

fn lattice_cmd(spec: &str, short: Option<u64>, as_json: bool) -> Outcome {
    let l = Lattice::parse_spec(spec).map_err(usage)?;
    let d = l.disc_group().map_err(usage)?;
    let (p, n) = l.signature();
    let isotropic = d.isotropic_elements().map(|v| v.len().to_string()).unwrap_or_else(|e| e.to_string());
    let mut v = json!({
        "rank": l.rank().to_string(),
        "det": l.det().to_string(),
        "signature": [p.to_string(), n.to_string()],
        "even": l.is_even(),
        "disc": d.to_json(),
        "isotropic_elements": isotropic,
    });
    if let Some(bound) = short {
        let vecs = l.short_vectors(bound).map_err(usage)?;
        let mut census = std::collections::BTreeMap::new();
        for sv in vecs {
            *census.entry(sv.norm.to_string()).or_insert(0usize) += 1;
        }
        v["short_vectors"] = json!(census.into_iter().map(|(k, c)| (k, json!(c.to_string()))).collect::<serde_json::Map<_, _>>());
    }
    if as_json {
        print_json(&v);
    } else {
        println!("rank {}  det {}  signature ({p}, {n})  even {}", l.rank(), l.det(), l.is_even());
        println!("disc {d:?}");
        println!("nonzero isotropic elements: {isotropic}");
        if let Some(census) = v.get("short_vectors").and_then(Value::as_object) {
            for (norm, count) in census {
                println!("norm {norm}: {}", count.as_str().unwrap_or_default());
            }
        }
    }
    Ok(())
}

fn hermitian_cmd(check: Option<HermCheck>, file: Option<&PathBuf>, g: &Global) -> Outcome {
    if let Some(c) = check {
        let id = match c {
            HermCheck::Hprime => "hermitian.hprime",
            HermCheck::Mat10 => "hermitian.mat10",
            HermCheck::Principal => "hermitian.polarization",
        };
        return verify(Suite::Hermitian, &[id.to_string()], true, g);
    }
    let Some(path) = file else {
        return Err(usage("give a matrix file or --check"));
    };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let m = HermMatrix::parse(&text).map_err(usage)?;
    let minors: Vec<String> = m.leading_minors().map_err(usage)?.iter().map(|x| x.to_string()).collect();
    let v = json!({
        "size": m.size().to_string(),
        "det": m.det().map_err(usage)?.to_string(),
        "positive_definite": m.is_positive_definite().map_err(usage)?,
        "leading_minors": minors,
        "polarization_invariants": m.polarization_invariants().map(|p| p.iter().map(i64::to_string).collect::<Vec<_>>()).ok(),
    });
    if g.json {
        print_json(&v);
    } else {
        for (k, x) in v.as_object().expect("object") {
            println!("{k}: {x}");
        }
    }
    Ok(())
}

fn groebner_cmd(file: &PathBuf, codim: Option<usize>, g: &Global) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let ideal = parse_ideal(&text).map_err(usage)?;
    if let Some(c) = codim {
        if c == 0 || c >= ideal.names.len() {
            return Err(usage(format!("codimension must be between 1 and {}", ideal.names.len() - 1)));
        }
    }
    let opts = options(g);
    let sm = SmoothnessOptions { minor_sample: opts.minor_sample, seed: opts.seed };
    let start = Instant::now();
    let runs = at_primes(&opts.primes, |p| {
        let mut i = Ideal::from_rational(p, &ideal.polys)?;
        match codim {
            Some(c) => i.smoothness_check(c, &opts.budget(), &sm).map(|s| (s.smooth, s.emptiness.basis_size, Some(s))),
            None => i.projective_empty(&opts.budget()).map(|e| (e.empty, e.basis_size, None)),
        }
    });
    let (verdict, primes, ok) = match runs {
        Ok(runs) => {
            let ok = runs.iter().all(|r| r.result.0);
            let per: Vec<Value> = runs
                .iter()
                .map(|r| {
                    let mut v = json!({
                        "prime": r.prime.to_string(),
                        "holds": r.result.0,
                        "basis_size": r.result.1.to_string(),
                        "elapsed_ms": r.elapsed.as_millis() as u64,
                    });
                    if let Some(s) = &r.result.2 {
                        v["cone_dimension"] = json!(s.cone_dimension.to_string());
                        v["minors_used"] = json!(s.minors_used.to_string());
                    }
                    v
                })
                .collect();
            (if ok { "pass" } else { "fail" }, per, ok)
        }
        Err(klein_core::groebner::GroebnerError::BudgetExhausted { reason, pairs }) => {
            ("budget-exhausted", vec![json!({ "reason": reason, "pairs": pairs.to_string() })], false)
        }
        Err(e) => return Err(usage(e)),
    };
    let v = json!({
        "property": if codim.is_some() { "smooth" } else { "empty" },
        "verdict": verdict,
        "primes": primes,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    });
    if g.json {
        print_json(&v);
    } else {
        println!("{}: {verdict}", v["property"].as_str().unwrap_or_default());
        for p in v["primes"].as_array().into_iter().flatten() {
            println!("  {p}");
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

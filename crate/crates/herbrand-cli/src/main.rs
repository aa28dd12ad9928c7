//! `herbrand`: exact Hasse-Herbrand computations for extension towers,
//! depth and conductor transformation laws, and verification batteries.

mod spec;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use herbrand::cohomology::{full_battery, shapiro_battery, BatteryReport};
use herbrand::depthmap::{
    asai_depth, automorphic_induction_depth, conductor_from_depth, depth_llc_with,
    depth_shapiro_with,
};
use herbrand::exactnum::{PiecewiseLinearFn, Rational};
use herbrand::laurent::{
    as_automorphism, group_closure, measured_break, norm_filtration_probe,
    torus_filtration_check, DEFAULT_PRECISION,
};
use herbrand::ramification::RamificationProfile;

use spec::{CompiledTower, ExtensionSpec, SpecError};

const LONG_ABOUT: &str = "\
Exact computations with Hasse-Herbrand functions of local-field extension towers.

Tower specifications list terms base-field-first, separated by '*':
  unram(f)                      unramified, residue degree f
  tame(e)                       totally tame of degree e (gcd(e, p) = 1)
  as(p, m)                      wild degree p with a single break at m (gcd(m, p) = 1)
  cyclo(p, n)                   p^n-th cyclotomic over Q_p
  breaks(p, e, f, [(u, g)...])  explicit filtration: order g holds up to break u
Arguments may be positional or key=value; the first term carrying p fixes it for
the whole tower. Per the transitivity identity the tower's psi composes
base-first, psi = psi_top o ... o psi_base, and phi is its inverse.

Rationals are written a/b (e.g. --dep 3/2). The HERBRAND_PRECISION environment
variable sets the default working precision for `verify laurent`.

Exit codes: 0 success, 1 verification failure, 2 usage error.";

#[derive(Parser)]
#[command(name = "herbrand", version, about = "Exact Hasse-Herbrand toolkit", long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a tower's Hasse-Herbrand function (and optionally evaluate it)
    Hh(HhArgs),
    /// Apply a depth transformation law to a tower
    Depth(DepthArgs),
    /// Conductor data for GL_n and the Asai / automorphic-induction lift depths
    Conductor(ConductorArgs),
    /// Run verification batteries; exit code 0 iff every check passes
    Verify(VerifyArgs),
}

#[derive(Args)]
struct HhArgs {
    /// Extension tower, e.g. "tame(3) * as(p=2, m=3)"
    #[arg(long)]
    ext: String,
    /// Which of the mutually inverse functions to print
    #[arg(long = "fn", value_enum)]
    function: FnKind,
    /// Evaluate the function at this rational point; the value is printed last
    #[arg(long, allow_hyphen_values = true)]
    eval: Option<String>,
    /// Also print the upper-numbering jumps
    #[arg(long)]
    jumps: bool,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FnKind {
    Phi,
    Psi,
}

impl FnKind {
    fn name(self) -> &'static str {
        match self {
            FnKind::Phi => "phi",
            FnKind::Psi => "psi",
        }
    }
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("law").required(true)))]
struct DepthArgs {
    /// Extension tower the representation lives over
    #[arg(long)]
    ext: String,
    /// Input depth (nonnegative rational)
    #[arg(long, allow_hyphen_values = true)]
    dep: String,
    /// Torus rescaling factor for --llc (positive rational, default 1)
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Langlands-transfer law: phi(kappa * e * d)
    #[arg(long, group = "law")]
    llc: bool,
    /// Shapiro direction: psi(d)
    #[arg(long, group = "law")]
    shapiro: bool,
    /// Weil restriction: e * d
    #[arg(long, group = "law")]
    restrict: bool,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConductorArgs {
    /// GL_n rank (n >= 2)
    #[arg(long)]
    n: u64,
    /// Depth of the essentially square-integrable representation
    #[arg(long, allow_hyphen_values = true)]
    dep: String,
    /// Also print the Asai lift depth (requires --ext of total degree 2)
    #[arg(long)]
    asai: bool,
    /// Also print the automorphic-induction lift depth (requires --ext)
    #[arg(long)]
    ai: bool,
    /// Extension tower for the lifts
    #[arg(long)]
    ext: Option<String>,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which battery to run
    #[arg(value_enum)]
    suite: Suite,
    /// Laurent battery: residue characteristic
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Laurent battery: ramification break (coprime to p)
    #[arg(long, default_value_t = 1)]
    m: u64,
    /// Laurent working precision (default: HERBRAND_PRECISION or 256)
    #[arg(long)]
    prec: Option<usize>,
    /// Trials per norm probe
    #[arg(long, default_value_t = 50)]
    trials: u64,
    /// Seed for all randomized probes
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Shapiro,
    Cohomology,
    Laurent,
    All,
}

/// A failed command: stable code plus message, always exit code 2 (usage);
/// verification failures are reported through the exit code instead.
struct CliFailure {
    code: String,
    message: String,
}

impl From<herbrand::Error> for CliFailure {
    fn from(e: herbrand::Error) -> Self {
        CliFailure { code: e.code().to_string(), message: e.to_string() }
    }
}

impl From<SpecError> for CliFailure {
    fn from(e: SpecError) -> Self {
        CliFailure { code: "E_SPEC".to_string(), message: format!("invalid extension spec {e}") }
    }
}

fn usage(message: impl Into<String>) -> CliFailure {
    CliFailure { code: "E_USAGE".to_string(), message: message.into() }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `herbrand verify all | head`)
    // instead of panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliFailure> {
    match cli.command {
        Command::Hh(args) => cmd_hh(args),
        Command::Depth(args) => cmd_depth(args),
        Command::Conductor(args) => cmd_conductor(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational, CliFailure> {
    Rational::from_str(s)
        .map_err(|e| usage(format!("{flag} expects a rational like 3/2: {e}")))
}

fn parse_tower(text: &str) -> Result<(ExtensionSpec, CompiledTower), CliFailure> {
    let spec = ExtensionSpec::parse(text)?;
    let tower = spec.compile()?;
    Ok((spec, tower))
}

fn segments(func: &PiecewiseLinearFn) -> Vec<String> {
    let points = func.breakpoints();
    let slopes = func.slopes();
    let mut out = Vec::new();
    for (i, slope) in slopes.iter().enumerate() {
        let from = &points[i];
        let range = match points.get(i + 1) {
            Some((next, _)) => format!("[{}, {})", from.0, next),
            None => format!("[{}, oo)", from.0),
        };
        out.push(format!("slope {slope} on {range}, from ({}, {})", from.0, from.1));
    }
    out
}

fn cmd_hh(args: HhArgs) -> Result<ExitCode, CliFailure> {
    let (spec, tower) = parse_tower(&args.ext)?;
    let func = match args.function {
        FnKind::Phi => &tower.phi,
        FnKind::Psi => &tower.psi,
    };
    let evaluated = match &args.eval {
        Some(s) => {
            let x = parse_rational("--eval", s)?;
            let y = func.eval(&x)?;
            Some((x, y))
        }
        None => None,
    };
    let jumps = args.jumps.then(|| tower.upper_jumps());

    if args.json {
        let payload = json!({
            "spec": spec.print(),
            "p": tower.p,
            "e": tower.e,
            "f": tower.f,
            "function": args.function.name(),
            "graph": serde_json::to_value(func).expect("serializable"),
            "eval": evaluated.as_ref().map(|(x, y)| json!({"x": x, "value": y})),
            "upper_jumps": jumps,
        });
        println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
    } else {
        println!("tower: {}", spec.print());
        println!("p: {}  e: {}  f: {}", tower.p, tower.e, tower.f);
        println!("{}:", args.function.name());
        for line in segments(func) {
            println!("  {line}");
        }
        if let Some(jumps) = &jumps {
            if jumps.is_empty() {
                println!("upper jumps: none");
            } else {
                let rendered: Vec<String> = jumps.iter().map(Rational::to_string).collect();
                println!("upper jumps: {}", rendered.join(", "));
            }
        }
        if let Some((_, y)) = &evaluated {
            println!("{y}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_depth(args: DepthArgs) -> Result<ExitCode, CliFailure> {
    let (spec, tower) = parse_tower(&args.ext)?;
    let d = parse_rational("--dep", &args.dep)?;
    if d.is_negative() {
        return Err(usage("--dep must be nonnegative"));
    }
    if args.kappa.is_some() && !args.llc {
        return Err(usage("--kappa only applies to --llc"));
    }
    let kappa = match &args.kappa {
        Some(s) => {
            let k = parse_rational("--kappa", s)?;
            if !(k > Rational::zero()) {
                return Err(usage("--kappa must be positive"));
            }
            k
        }
        None => Rational::one(),
    };

    let (law, result) = if args.llc {
        ("llc", depth_llc_with(&tower.phi, tower.e, &d, &kappa))
    } else if args.shapiro {
        ("shapiro", depth_shapiro_with(&tower.psi, &d)?)
    } else {
        ("restrict", Rational::from(tower.e) * &d)
    };

    if args.json {
        let payload = json!({
            "spec": spec.print(),
            "law": law,
            "depth": d,
            "kappa": if args.llc { Some(&kappa) } else { None },
            "result": result,
        });
        println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
    } else {
        println!("{result}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_conductor(args: ConductorArgs) -> Result<ExitCode, CliFailure> {
    let d = parse_rational("--dep", &args.dep)?;
    let data = conductor_from_depth(args.n, &d)?;

    let mut asai_lift: Option<Rational> = None;
    let mut ai_lift: Option<Rational> = None;
    let mut spec_text: Option<String> = None;
    if args.asai || args.ai {
        let ext = args
            .ext
            .as_deref()
            .ok_or_else(|| usage("--asai and --ai require --ext"))?;
        let (spec, tower) = parse_tower(ext)?;
        spec_text = Some(spec.print());
        if args.asai {
            asai_lift = Some(if tower.profiles.len() == 1 {
                asai_depth(&tower.profiles[0], &d)?
            } else {
                if tower.e * tower.f != 2 {
                    return Err(herbrand::Error::DegreeNotTwo(format!(
                        "Asai lift needs a quadratic extension, got degree {}",
                        tower.e * tower.f
                    ))
                    .into());
                }
                tower.phi.eval(&d)?
            });
        }
        if args.ai {
            ai_lift = Some(if tower.profiles.len() == 1 {
                automorphic_induction_depth(&tower.profiles[0], &d)?
            } else {
                tower.phi.eval(&d)?
            });
        }
    } else if args.ext.is_some() {
        return Err(usage("--ext only applies together with --asai or --ai"));
    }

    if args.json {
        let mut payload = serde_json::to_value(&data).expect("serializable");
        let map = payload.as_object_mut().expect("object");
        map.insert("spec".into(), json!(spec_text));
        map.insert("asai_depth".into(), json!(asai_lift));
        map.insert("automorphic_induction_depth".into(), json!(ai_lift));
        println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
    } else {
        println!("n: {}", data.rank);
        println!("depth: {}", data.depth);
        println!("conductor: {}", data.conductor);
        println!("swan: {}", data.swan);
        if let Some(v) = &asai_lift {
            println!("asai depth: {v}");
        }
        if let Some(v) = &ai_lift {
            println!("automorphic induction depth: {v}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One verification check in the uniform row shape (also the JSON schema).
struct Row {
    case: String,
    expected: String,
    measured: String,
    pass: bool,
}

impl Row {
    fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "expected": self.expected,
            "measured": self.measured,
            "pass": self.pass,
        })
    }
}

fn battery_rows(report: &BatteryReport) -> Vec<Row> {
    report
        .rows
        .iter()
        .map(|r| Row {
            case: r.name.clone(),
            expected: "pass".to_string(),
            measured: r.detail.clone(),
            pass: r.passed,
        })
        .collect()
}

fn render_profile(profile: &RamificationProfile) -> String {
    let steps: Vec<String> = profile
        .lower_jumps()
        .into_iter()
        .map(|u| format!("({u}, {})", profile.order_at(u)))
        .collect();
    format!("p={} e={} f={} breaks=[{}]", profile.p(), profile.e(), profile.f(), steps.join(", "))
}

fn laurent_rows(
    p: u64,
    m: u64,
    prec: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<Row>, CliFailure> {
    let sigma = as_automorphism(p, m, prec)?;
    let mut rows = Vec::new();

    let order = sigma.order(p as usize + 1)?;
    rows.push(Row {
        case: "automorphism-order".into(),
        expected: p.to_string(),
        measured: order.to_string(),
        pass: order == p as usize,
    });

    let measured = measured_break(&sigma)?;
    rows.push(Row {
        case: "measured-break".into(),
        expected: m.to_string(),
        measured: measured.to_string(),
        pass: measured == m,
    });

    let group = group_closure(&[sigma], p, 64)?;
    let catalog = RamificationProfile::artin_schreier(p, m)?;
    let profile = herbrand::laurent::profile_from_group(&group, p, p)?;
    rows.push(Row {
        case: "measured-profile".into(),
        expected: render_profile(&catalog),
        measured: render_profile(&profile),
        pass: profile == catalog,
    });

    let (catalog_phi, measured_phi) = (catalog.build_phi(), profile.build_phi());
    let mut agree = true;
    for i in 0..20 {
        let x = Rational::new(i, 3);
        if catalog_phi.eval(&x)? != measured_phi.eval(&x)? {
            agree = false;
        }
    }
    rows.push(Row {
        case: "phi-agreement".into(),
        expected: "catalog phi = measured phi at 20 points".into(),
        measured: if agree { "agree".into() } else { "disagree".into() },
        pass: agree,
    });

    for n in 1..=3u64 {
        let report = norm_filtration_probe(&group, &catalog, n, trials, seed)?;
        rows.push(Row {
            case: format!("norm-probe(n={n})"),
            expected: format!("valuation >= {} on {} trials", report.required, report.trials),
            measured: format!(
                "{}/{} passed, min valuation {}",
                report.pass_count, report.trials, report.min_valuation
            ),
            pass: report.passed,
        });
    }

    for e in [2u64, 3] {
        for r in [
            Rational::zero(),
            Rational::new(1, 2),
            Rational::new(5, 4),
            Rational::new(3, 2),
            Rational::from_integer(2),
        ] {
            let ok = torus_filtration_check(e, &r, 12, 64)?;
            rows.push(Row {
                case: format!("torus(e={e}, r={r})"),
                expected: "threshold and depth readings agree".into(),
                measured: if ok { "agree".into() } else { "disagree".into() },
                pass: ok,
            });
        }
    }
    Ok(rows)
}

fn default_precision() -> Result<usize, CliFailure> {
    match std::env::var("HERBRAND_PRECISION") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| usage("HERBRAND_PRECISION must be a positive integer")),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliFailure> {
    let prec = match args.prec {
        Some(p) => p,
        None => default_precision()?,
    };

    let mut sections: Vec<(&str, Vec<Row>, usize)> = Vec::new();
    if matches!(args.suite, Suite::Shapiro | Suite::All) {
        let report = shapiro_battery()?;
        sections.push(("shapiro", battery_rows(&report), report.skipped));
    }
    if matches!(args.suite, Suite::Cohomology | Suite::All) {
        let report = full_battery()?;
        sections.push(("cohomology", battery_rows(&report), report.skipped));
    }
    if matches!(args.suite, Suite::Laurent | Suite::All) {
        let rows = laurent_rows(args.p, args.m, prec, args.trials, args.seed)?;
        sections.push(("laurent", rows, 0));
    }

    let all_passed = sections.iter().all(|(_, rows, _)| rows.iter().all(|r| r.pass));

    if args.json {
        let payload = json!({
            "suite": match args.suite {
                Suite::Shapiro => "shapiro",
                Suite::Cohomology => "cohomology",
                Suite::Laurent => "laurent",
                Suite::All => "all",
            },
            "seed": args.seed,
            "sections": sections.iter().map(|(name, rows, skipped)| json!({
                "name": name,
                "rows": rows.iter().map(Row::to_json).collect::<Vec<_>>(),
                "skipped": skipped,
            })).collect::<Vec<_>>(),
            "passed": all_passed,
        });
        println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
    } else {
        for (name, rows, skipped) in &sections {
            let failures: Vec<&Row> = rows.iter().filter(|r| !r.pass).collect();
            for row in &failures {
                println!(
                    "FAIL {name}/{}: expected {}, measured {}",
                    row.case, row.expected, row.measured
                );
            }
            // The batteries have hundreds of rows; print each laurent check
            // but only summarize the cohomology ones.
            if *name == "laurent" {
                for row in rows.iter().filter(|r| r.pass) {
                    println!("ok   {name}/{}: {}", row.case, row.measured);
                }
            }
            println!(
                "{name}: {} checks, {} failures, {} skipped (budget)",
                rows.len(),
                failures.len(),
                skipped
            );
        }
    }

    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

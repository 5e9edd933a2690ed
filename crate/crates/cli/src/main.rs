//! `sl2branch`: decompositions, multiplicities, verification suites and chamber sweeps.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sl2branch::exact::{format_scalar, int, parse_scalar, ComplexExact, ExactScalar};
use sl2branch::fences::{ktype_sweep, pieri_sweep, su2_weight_sweep};
use sl2branch::fusion::{c_bruteforce, c_closed_form, g_form_scalar};
use sl2branch::report::{MultiplicityReport, Status};
use sl2branch::sl2::{pieri_multiplicity, tensor_decomposition, weight_functional, WeightModule};
use sl2branch::suites::{run_suite, Suite, SuiteConfig};
use sl2branch::translation::ktype_multiplicity_discrete;
use sl2branch::verma::{fusion_lw_hom_dim, fusion_lw_scan, fusion_rule_holds, verma_hom_dim, verma_region_scan};
use sl2branch::Sign;

use output::{Emitter, Format};

#[derive(Parser, Debug)]
#[command(name = "sl2branch", version, about = "Exact sl(2) branching computations and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose V_m (x) V_n by the Casimir spectrum.
    Decompose {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One multiplicity from a chosen model.
    Multiplicity {
        #[arg(long, value_enum)]
        model: MultiplicityModel,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lambda1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        lambda2: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        lambda3: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, default_value_t = 40)]
        truncation: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite; exit status 1 if any exact check fails.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long)]
        margin: Option<usize>,
        /// Largest m, n for the fusion constants.
        #[arg(long)]
        max: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Chamber constancy sweep for one multiplicity model.
    Sweep {
        #[arg(long, value_enum)]
        model: SweepModel,
        #[arg(long, alias = "window", default_value_t = 25)]
        max: i64,
        #[arg(long, default_value_t = 3)]
        lambda3: i64,
        #[arg(long, default_value_t = 1)]
        margin: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Grid of fusion chambers and tensor multiplicities for fixed lambda'''.
    Chambers {
        #[arg(long)]
        lambda3: i64,
        #[arg(long, alias = "window", default_value_t = 25)]
        max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verma hom dimensions on [-w, w]^3 with region comparison.
    Verma {
        /// Optional action word; `scan` is the only one.
        #[arg(value_parser = ["scan"], hide = true)]
        action: Option<String>,
        #[arg(long, alias = "max", default_value_t = 20)]
        window: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lowest-weight fusion multiplicities on [1, w]^3 against the fusion rule.
    FusionScan {
        #[arg(long, alias = "window", default_value_t = 12)]
        max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Same as `fusion-scan`.
    Fusion {
        #[command(subcommand)]
        action: FusionAction,
    },
    /// Compute a single quantity.
    Compute {
        #[command(subcommand)]
        what: ComputeCommand,
    },
}

#[derive(Subcommand, Debug)]
enum FusionAction {
    Scan {
        #[arg(long, alias = "window", default_value_t = 12)]
        max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum ComputeCommand {
    /// The fusion scalar c_{delta eps}.
    C {
        #[arg(long, value_enum, default_value_t = CMode::Bruteforce)]
        mode: CMode,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Order l of the Rankin-Cohen operator (k = m + n - 2l).
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lambda1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda3: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        delta: Sign,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        eps: Sign,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MultiplicityModel {
    /// [V_m (x) V_n : V_k]
    Pieri,
    /// [V_{lambda1-1} : C_nu]
    Su2Weight,
    /// [Pi_lambda1 : C_nu] on a truncated model
    Ktype,
    /// dim Hom(M(lambda3), M(lambda1) (x) M(lambda2))
    Verma,
    /// dim Hom(Pi_lambda3, Pi_lambda1 (x) Pi_lambda2)
    FusionLw,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SweepModel {
    Pieri,
    Su2Weights,
    Ktypes,
    Verma,
    FusionLw,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CMode {
    Bruteforce,
    Closed,
    G,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse()
}

/// Error carrying the exit status it maps to.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

type CliResult = Result<ExitCode, CliError>;

fn require<T>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required here")))
}

fn scalar_arg(v: Option<String>, name: &str) -> Result<ExactScalar, CliError> {
    let text = require(v, name)?;
    parse_scalar(&text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn complex_arg(v: Option<String>, name: &str) -> Result<ComplexExact, CliError> {
    let text = require(v, name)?;
    ComplexExact::parse(&text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

#[derive(Serialize)]
struct DecompositionRow {
    k: u32,
    multiplicity: usize,
    predicate: bool,
}

#[derive(Serialize)]
struct Decomposition {
    m: u32,
    n: u32,
    components: Vec<DecompositionRow>,
    agrees_with_predicate: bool,
}

fn cmd_decompose(m: u32, n: u32, output: OutputArgs) -> CliResult {
    let components: Vec<DecompositionRow> = tensor_decomposition(m, n)
        .into_iter()
        .map(|(k, multiplicity)| DecompositionRow {
            k,
            multiplicity,
            predicate: m.abs_diff(n) <= k && k <= m + n && (m + n - k).is_multiple_of(2),
        })
        .collect();
    let agrees = components.iter().all(|r| (r.multiplicity == 1) == r.predicate && r.multiplicity <= 1);
    let report = Decomposition {
        m,
        n,
        components,
        agrees_with_predicate: agrees,
    };
    let emitter = Emitter::new(output);
    match emitter.format() {
        Format::Json => emitter.json(&report)?,
        Format::Csv => {
            let mut text = String::from("k,multiplicity,predicate\n");
            for r in &report.components {
                text.push_str(&format!("{},{},{}\n", r.k, r.multiplicity, r.predicate));
            }
            emitter.text(&text)?;
        }
    }
    Ok(if agrees { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct SingleValue {
    model: String,
    parameters: std::collections::BTreeMap<String, String>,
    value: String,
}

#[allow(clippy::too_many_arguments)]
fn cmd_multiplicity(
    model: MultiplicityModel,
    m: Option<u32>,
    n: Option<u32>,
    k: Option<u32>,
    l1: Option<i64>,
    l2: Option<i64>,
    l3: Option<i64>,
    nu: Option<String>,
    truncation: usize,
    output: OutputArgs,
) -> CliResult {
    let p = |name: &str, v: String| (name.to_string(), v);
    let (params, value) = match model {
        MultiplicityModel::Pieri => {
            let (m, n, k) = (require(m, "m")?, require(n, "n")?, require(k, "k")?);
            (vec![p("m", m.to_string()), p("n", n.to_string()), p("k", k.to_string())], pieri_multiplicity(m, n, k) as u64)
        }
        MultiplicityModel::Su2Weight => {
            let lambda = require(l1, "lambda1")?;
            let nu = scalar_arg(nu, "nu")?;
            if lambda < 1 {
                return Err(CliError::Usage("--lambda1 must be positive".into()));
            }
            let module = WeightModule::finite_irrep(lambda - 1).expect("nonnegative");
            (vec![p("lambda", lambda.to_string()), p("nu", format_scalar(&nu))], module.weight_space(&nu).len() as u64)
        }
        MultiplicityModel::Ktype => {
            let lambda = require(l1, "lambda1")?;
            let nu_s = scalar_arg(nu, "nu")?;
            let module = WeightModule::truncated_lowest_weight(&int(lambda), truncation)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let f = weight_functional(&module, &nu_s).map_err(|e| CliError::Usage(e.to_string()))?;
            let observed = u64::from(!f.matrix().is_zero());
            let mut params = vec![p("lambda", lambda.to_string()), p("nu", format_scalar(&nu_s)), p("truncation", truncation.to_string())];
            if let Some(nu_i) = sl2branch::exact::scalar::to_i64(&nu_s) {
                params.push(p("closed_form", ktype_multiplicity_discrete(lambda, nu_i).to_string()));
            }
            (params, observed)
        }
        MultiplicityModel::Verma => {
            let (a, b, c) = (require(l1, "lambda1")?, require(l2, "lambda2")?, require(l3, "lambda3")?);
            (vec![p("a", a.to_string()), p("b", b.to_string()), p("c", c.to_string())], verma_hom_dim(a, b, c))
        }
        MultiplicityModel::FusionLw => {
            let (a, b, c) = (require(l1, "lambda1")?, require(l2, "lambda2")?, require(l3, "lambda3")?);
            if a < 1 || b < 1 || c < 1 {
                return Err(CliError::Usage("lambda parameters must be positive".into()));
            }
            let mut params = vec![p("lambda1", a.to_string()), p("lambda2", b.to_string()), p("lambda3", c.to_string())];
            params.push(p("fusion_rule", fusion_rule_holds(a, b, c).to_string()));
            (params, fusion_lw_hom_dim(a, b, c))
        }
    };
    let model_name = format!("{model:?}").to_lowercase();
    let emitter = Emitter::new(output);
    match emitter.format() {
        Format::Json => emitter.json(&SingleValue {
            model: model_name,
            parameters: params.iter().cloned().collect(),
            value: value.to_string(),
        })?,
        Format::Csv => {
            let header: Vec<&str> = params.iter().map(|(k, _)| k.as_str()).collect();
            let row: Vec<&str> = params.iter().map(|(_, v)| v.as_str()).collect();
            emitter.text(&format!("{},value\n{},{}\n", header.join(","), row.join(","), value))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: Suite, cfg: SuiteConfig, output: OutputArgs) -> CliResult {
    let report = run_suite(suite, &cfg);
    let emitter = Emitter::new(output);
    match emitter.format() {
        Format::Json => emitter.json(&report)?,
        Format::Csv => {
            let mut text = String::from("identity,status,checked,passed,vacuous,failed\n");
            for i in &report.items {
                text.push_str(&format!("{},{},{},{},{},{}\n", i.identity, i.status, i.checked, i.passed, i.vacuous, i.failed));
            }
            emitter.text(&text)?;
        }
    }
    let flagged = report.count(Status::Flagged);
    eprintln!(
        "{}: {} items, {} checks, {} failed, {} flagged",
        report.suite,
        report.items.len(),
        report.total_checks(),
        report.count(Status::Fail),
        flagged
    );
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn emit_multiplicity(report: &MultiplicityReport, output: OutputArgs) -> Result<(), CliError> {
    let emitter = Emitter::new(output);
    match emitter.format() {
        Format::Json => emitter.json(report),
        Format::Csv => emitter.text(&output::records_csv(report)),
    }
}

fn cmd_sweep(model: SweepModel, max: i64, lambda3: i64, margin: usize, output: OutputArgs) -> CliResult {
    if max < 1 {
        return Err(CliError::Usage("--max must be positive".into()));
    }
    let report = match model {
        SweepModel::Pieri => pieri_sweep(lambda3, max),
        SweepModel::Su2Weights => su2_weight_sweep(max),
        SweepModel::Ktypes => ktype_sweep(max, margin),
        SweepModel::Verma => verma_region_scan(max).report,
        SweepModel::FusionLw => fusion_lw_scan(max).report,
    };
    emit_multiplicity(&report, output)?;
    Ok(if report.violations() == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_chambers(lambda3: i64, max: i64, output: OutputArgs) -> CliResult {
    if lambda3 < 1 || max < 1 {
        return Err(CliError::Usage("--lambda3 and --max must be positive".into()));
    }
    let report = pieri_sweep(lambda3, max);
    let emitter = Emitter::new(output);
    match emitter.format() {
        Format::Csv => emitter.text(&output::chamber_grid_csv(&report, max))?,
        Format::Json => emitter.json(&report)?,
    }
    Ok(if report.violations() == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_scan(scan: sl2branch::verma::RegionScan, output: OutputArgs) -> CliResult {
    let emitter = Emitter::new(output);
    match emitter.format() {
        Format::Json => emitter.json(&scan)?,
        Format::Csv => emitter.text(&output::records_csv(&scan.report))?,
    }
    Ok(if scan.report.violations() == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct ScalarOut {
    mode: String,
    lambda1: String,
    lambda2: String,
    lambda3: String,
    delta: Sign,
    epsilon: Sign,
    value: String,
}

#[allow(clippy::too_many_arguments)]
fn cmd_compute_c(
    mode: CMode,
    m: Option<u32>,
    n: Option<u32>,
    l: Option<u32>,
    k: Option<u32>,
    l1: Option<String>,
    l2: Option<String>,
    l3: Option<String>,
    delta: Sign,
    eps: Sign,
    output: OutputArgs,
) -> CliResult {
    // Finite parameters (m, n, k) determine lambdas as (m+1, n+1, k+1); explicit lambdas override.
    let order = match (m, n, l, k) {
        (Some(m), Some(n), Some(l), _) => Some((m, n, l)),
        (Some(m), Some(n), None, Some(k)) => {
            if k > m + n || (m + n - k) % 2 != 0 {
                return Err(CliError::Usage("k must satisfy k <= m+n with m+n-k even".into()));
            }
            Some((m, n, (m + n - k) / 2))
        }
        _ => None,
    };
    let (lp, lpp, lppp) = match order {
        Some((m, n, l)) if l1.is_none() => {
            let k = (m + n).checked_sub(2 * l).ok_or_else(|| CliError::Usage("l exceeds min(m, n)".into()))?;
            (ComplexExact::from_int(m as i64 + 1), ComplexExact::from_int(n as i64 + 1), ComplexExact::from_int(k as i64 + 1))
        }
        _ => (complex_arg(l1, "lambda1")?, complex_arg(l2, "lambda2")?, complex_arg(l3, "lambda3")?),
    };
    let value: ComplexExact = match mode {
        CMode::Bruteforce => {
            let (m, n, l) = order.ok_or_else(|| CliError::Usage("bruteforce mode needs --m --n and --l or --k".into()))?;
            c_bruteforce(m, n, l, delta, eps).map_err(|e| CliError::Usage(e.to_string()))?.into()
        }
        CMode::Closed => c_closed_form(&lp, &lpp, &lppp, delta, eps).map_err(|e| CliError::Usage(e.to_string()))?,
        CMode::G => {
            let ints: Option<Vec<i64>> = [&lp, &lpp, &lppp]
                .iter()
                .map(|z| z.as_integer().and_then(|b| i64::try_from(b).ok()))
                .collect();
            let ints = ints.ok_or_else(|| CliError::Usage("g mode needs integer parameters".into()))?;
            g_form_scalar(ints[0], ints[1], ints[2], delta, eps)
                .map_err(|e| CliError::Usage(e.to_string()))?
                .into()
        }
    };
    let out = ScalarOut {
        mode: format!("{mode:?}").to_lowercase(),
        lambda1: lp.to_string(),
        lambda2: lpp.to_string(),
        lambda3: lppp.to_string(),
        delta,
        epsilon: eps,
        value: value.to_string(),
    };
    let emitter = Emitter::new(output);
    match emitter.format() {
        Format::Json => emitter.json(&out)?,
        Format::Csv => emitter.text(&format!(
            "mode,lambda1,lambda2,lambda3,delta,epsilon,value\n{},{},{},{},{},{},{}\n",
            out.mode, out.lambda1, out.lambda2, out.lambda3, delta, eps, out.value
        ))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Decompose { m, n, output } => cmd_decompose(m, n, output),
        Command::Multiplicity {
            model,
            m,
            n,
            k,
            lambda1,
            lambda2,
            lambda3,
            nu,
            truncation,
            output,
        } => cmd_multiplicity(model, m, n, k, lambda1, lambda2, lambda3, nu, truncation, output),
        Command::Verify {
            suite,
            samples,
            seed,
            truncation,
            margin,
            max,
            output,
        } => {
            let mut cfg = SuiteConfig::default();
            if let Some(s) = samples {
                cfg.samples = s;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(t) = truncation {
                if t < 4 {
                    return Err(CliError::Usage("--truncation must be at least 4".into()));
                }
                cfg.truncation = t;
            }
            if let Some(m) = margin {
                cfg.margin = m;
            }
            if let Some(m) = max {
                cfg.fusion_max = m;
            }
            cmd_verify(suite, cfg, output)
        }
        Command::Sweep {
            model,
            max,
            lambda3,
            margin,
            output,
        } => cmd_sweep(model, max, lambda3, margin, output),
        Command::Chambers { lambda3, max, output } => cmd_chambers(lambda3, max, output),
        Command::Verma { window, output, .. } => {
            if window < 0 {
                return Err(CliError::Usage("--window must be nonnegative".into()));
            }
            cmd_scan(verma_region_scan(window), output)
        }
        Command::FusionScan { max, output }
        | Command::Fusion {
            action: FusionAction::Scan { max, output },
        } => {
            if max < 1 {
                return Err(CliError::Usage("--max must be positive".into()));
            }
            cmd_scan(fusion_lw_scan(max), output)
        }
        Command::Compute {
            what:
                ComputeCommand::C {
                    mode,
                    m,
                    n,
                    l,
                    k,
                    lambda1,
                    lambda2,
                    lambda3,
                    delta,
                    eps,
                    output,
                },
        } => cmd_compute_c(mode, m, n, l, k, lambda1, lambda2, lambda3, delta, eps, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

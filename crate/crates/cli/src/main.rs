//! skit: formulate, solve, bound, and certify real osculating instances of
//! Schubert problems on Grassmannians.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use skit_core::algebra::parse_poly_gaussian;
use skit_core::bounds;
use skit_core::certify::{
    alpha_number, certify_with_refinement, classify, NumericPoint, NumericSystem,
};
use skit_core::combinatorics::{SchubertCondition, SchubertProblem};
use skit_core::geometry::OsculationPoint;
use skit_core::harness::{replay_hash, run_experiment, ExperimentConfig};
use skit_core::solver::{solve_instance, SolveBudget};
use skit_core::systems::{
    determinantal_instance, primal_dual_half_instance, primal_dual_instance, CoordChoice,
    FormulationTag, InstanceSpec, PolySystem,
};

#[derive(Parser)]
#[command(name = "skit", version, about = "Schubert calculus toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorial bounds and congruence criteria.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Build polynomial systems for an instance.
    System {
        #[command(subcommand)]
        which: SystemCommand,
    },
    /// Solve an instance symbolically and count real solutions.
    Solve(SolveArgs),
    /// Run a seeded batch experiment and tally a frequency table.
    Experiment(ExperimentArgs),
    /// Certify numeric points against a square system.
    Certify(CertifyArgs),
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Topological degree of the real Wronski map.
    Sigma {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Sign imbalance Sigma(alpha, beta) of the skew shape alpha'/beta.
    Imbalance {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated entries, e.g. "2,3,6".
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Factorization lower bound (and the gap set over an osculation type).
    Factor {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Real-root count R of the derivative; emits one count.
        #[arg(long, conflicts_with = "osculation")]
        real_roots: Option<usize>,
        /// Number of real points r in the type (1, r); emits the gap set.
        #[arg(long)]
        osculation: Option<usize>,
    },
    /// Congruence-modulo-four criteria for a symmetric problem.
    Mod4 {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        complex_count: Option<u64>,
    },
}

#[derive(Subcommand)]
enum SystemCommand {
    /// Emit the polynomial system for an instance.
    Build(BuildArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// det, pd, or pd-half
    #[arg(long)]
    formulation: String,
    /// Path to the problem JSON {"k":..,"n":..,"conditions":[[..],..]}.
    #[arg(long)]
    problem: PathBuf,
    /// Comma-separated point literals, e.g. "inf,0,1,2".
    #[arg(long)]
    points: String,
    /// Chart for the determinantal formulation: pair, schubert, grass.
    #[arg(long, default_value = "pair")]
    coords: String,
    /// Impose leftover hypersurfaces as primal determinants (pd-half).
    #[arg(long)]
    hybrid: bool,
    /// Emit the JSON variant instead of the text dump.
    #[arg(long)]
    json: bool,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: PathBuf,
    #[arg(long)]
    points: String,
    #[arg(long, default_value = "pair")]
    coords: String,
    /// Wall-clock budget in seconds (also via SKIT_BUDGET_SECS).
    #[arg(long)]
    budget_secs: Option<f64>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Path to the experiment config JSON.
    #[arg(long)]
    config: PathBuf,
    /// Master seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Trial count override.
    #[arg(long)]
    trials: Option<usize>,
    /// JSONL output path (one trial record per line).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Frequency table format: md or csv.
    #[arg(long, default_value = "md")]
    table: String,
}

#[derive(Args)]
struct CertifyArgs {
    /// System JSON as produced by `skit system build --json`.
    #[arg(long)]
    system: PathBuf,
    /// Points JSON: [[ [re, im], ... per coordinate ], ... per point].
    #[arg(long)]
    points: PathBuf,
    /// Newton refinement steps.
    #[arg(long, default_value_t = 3)]
    steps: usize,
}

fn parse_condition_list(k: usize, n: usize, s: &str) -> Result<SchubertCondition> {
    let entries: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().context("bad condition entry"))
        .collect::<Result<_>>()?;
    SchubertCondition::new(k, n, entries).map_err(|e| anyhow!("{e}"))
}

fn load_problem(path: &PathBuf) -> Result<SchubertProblem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
    let problem: SchubertProblem = serde_json::from_str(&text).context("parsing problem JSON")?;
    problem.validate().map_err(|e| anyhow!("{e}"))?;
    Ok(problem)
}

fn parse_points(s: &str) -> Result<Vec<OsculationPoint>> {
    s.split(',')
        .map(|t| OsculationPoint::parse(t).map_err(|e| anyhow!("{e}")))
        .collect()
}

fn parse_coords(s: &str) -> Result<CoordChoice> {
    match s {
        "pair" => Ok(CoordChoice::Pair),
        "schubert" => Ok(CoordChoice::Schubert),
        "grass" | "grassmannian" => Ok(CoordChoice::Grassmannian),
        other => bail!("unknown coords `{other}` (expected pair, schubert, or grass)"),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {path:?}"))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run_bounds(cmd: BoundsCommand) -> Result<()> {
    let json = match cmd {
        BoundsCommand::Sigma { k, n } => {
            let value = bounds::sigma(k, n).map_err(|e| anyhow!("{e}"))?;
            serde_json::json!({
                "kind": "Sigma",
                "value": value,
                "note": format!("topological degree of the real Wronski map for Gr({k},{n})"),
            })
        }
        BoundsCommand::Imbalance { k, n, alpha, beta } => {
            let a = parse_condition_list(k, n, &alpha)?;
            let b = parse_condition_list(k, n, &beta)?;
            let report = bounds::eg_ss_bound(&a, &b).map_err(|e| anyhow!("{e}"))?;
            let mut value = serde_json::to_value(&report)?;
            value.as_object_mut().unwrap().insert(
                "diagrams".to_string(),
                serde_json::json!({
                    "alpha": a.render_diagram(),
                    "beta": b.render_diagram(),
                }),
            );
            value
        }
        BoundsCommand::Factor { k, n, real_roots, osculation } => match (real_roots, osculation) {
            (Some(r), _) => {
                let value = bounds::factorization_count(k, n, r).map_err(|e| anyhow!("{e}"))?;
                serde_json::json!({
                    "kind": "Factorization",
                    "value": value,
                    "note": format!("real factorizations with {r} real roots of the derivative"),
                })
            }
            (None, Some(r)) => {
                let set = bounds::gap_set(k, n, r).map_err(|e| anyhow!("{e}"))?;
                let binomial = bounds::lagrangian_binomial(k, n);
                serde_json::json!({
                    "kind": "Factorization",
                    "value": set.first().copied().unwrap_or(0),
                    "note": format!(
                        "gap set {set:?} for osculation type (1, {r}); type-independent binomial bound {binomial:?}"
                    ),
                })
            }
            (None, None) => bail!("factor needs --real-roots or --osculation"),
        },
        BoundsCommand::Mod4 { problem, complex_count } => {
            let p = load_problem(&problem)?;
            let report = bounds::mod4_check(&p, None, complex_count).map_err(|e| anyhow!("{e}"))?;
            serde_json::to_value(&report)?
        }
    };
    println!("{}", serde_json::to_string_pretty(&json)?);
    Ok(())
}

fn run_build(args: BuildArgs) -> Result<()> {
    let problem = load_problem(&args.problem)?;
    let points = parse_points(&args.points)?;
    let spec = InstanceSpec::new(problem, points).map_err(|e| anyhow!("{e}"))?;
    let (text, json) = match args.formulation.as_str() {
        "det" => {
            let sys = determinantal_instance(&spec, parse_coords(&args.coords)?)
                .map_err(|e| anyhow!("{e}"))?;
            (sys.to_text(), sys.to_json())
        }
        "pd" => {
            let pd = primal_dual_instance(&spec).map_err(|e| anyhow!("{e}"))?;
            (pd.system.to_text(), pd.system.to_json())
        }
        "pd-half" => {
            let pd = primal_dual_half_instance(&spec, args.hybrid).map_err(|e| anyhow!("{e}"))?;
            (pd.system.to_text(), pd.system.to_json())
        }
        other => bail!("unknown formulation `{other}` (expected det, pd, or pd-half)"),
    };
    if args.json {
        emit(&args.out, &format!("{}\n", serde_json::to_string_pretty(&json)?))
    } else {
        emit(&args.out, &text)
    }
}

fn run_solve(args: SolveArgs) -> Result<()> {
    let problem = load_problem(&args.problem)?;
    let points = parse_points(&args.points)?;
    let spec = InstanceSpec::new(problem, points).map_err(|e| anyhow!("{e}"))?;
    let env_secs =
        std::env::var("SKIT_BUDGET_SECS").ok().and_then(|s| s.parse::<f64>().ok());
    let budget = SolveBudget {
        max_pairs: 500_000,
        wall_secs: args.budget_secs.or(env_secs).or(Some(300.0)),
    };
    let res = solve_instance(&spec, parse_coords(&args.coords)?, &budget)
        .map_err(|e| anyhow!("{e}"))?;
    let json = serde_json::json!({
        "complex_count": res.complex_count,
        "real_count": res.real_count,
        "multiplicity_detected": res.multiplicity_detected,
        "in_shape": res.shape.in_shape,
        "degree": res.shape.degree,
        "square_free": res.shape.square_free,
        "eliminant": format!("{}", res.shape.eliminant),
    });
    println!("{}", serde_json::to_string_pretty(&json)?);
    Ok(())
}

fn run_experiment_cmd(args: ExperimentArgs) -> Result<()> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {:?}", args.config))?;
    let mut cfg: ExperimentConfig = serde_json::from_str(&text).context("parsing config")?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    let mut sink: Option<Box<dyn Write>> = match &args.out {
        Some(path) => Some(Box::new(
            fs::File::create(path).with_context(|| format!("creating {path:?}"))?,
        )),
        None => None,
    };
    let (table, records) =
        run_experiment(&cfg, sink.as_mut().map(|b| b.as_mut() as &mut dyn Write))
            .map_err(|e| anyhow!("{e}"))?;
    match args.table.as_str() {
        "csv" => print!("{}", table.render_csv()),
        _ => print!("{}", table.render_markdown()),
    }
    eprintln!("replay hash: {:016x}", replay_hash(&records));
    Ok(())
}

fn run_certify(args: CertifyArgs) -> Result<()> {
    let sys_text = fs::read_to_string(&args.system)
        .with_context(|| format!("reading {:?}", args.system))?;
    let sys_json: serde_json::Value = serde_json::from_str(&sys_text)?;
    let vars = sys_json["vars"]
        .as_array()
        .ok_or_else(|| anyhow!("system JSON missing vars"))?
        .len();
    let equations = sys_json["equations"]
        .as_array()
        .ok_or_else(|| anyhow!("system JSON missing equations"))?
        .iter()
        .map(|e| {
            let text = e.as_str().ok_or_else(|| anyhow!("equation is not a string"))?;
            parse_poly_gaussian(text, vars).map_err(|e| anyhow!("{e}"))
        })
        .collect::<Result<Vec<_>>>()?;
    let system = PolySystem::new(vars, equations, FormulationTag::PrimalDual);
    let nsys = NumericSystem::new(&system).map_err(|e| anyhow!("{e}"))?;

    let pts_text = fs::read_to_string(&args.points)
        .with_context(|| format!("reading {:?}", args.points))?;
    let raw: Vec<Vec<[f64; 2]>> = serde_json::from_str(&pts_text).context("parsing points")?;
    let points: Vec<NumericPoint> = raw
        .into_iter()
        .map(|coords| {
            NumericPoint(
                coords
                    .into_iter()
                    .map(|[re, im]| skit_core::certify::complex(re, im))
                    .collect(),
            )
        })
        .collect();

    let mut reports = Vec::new();
    let mut certified_points = Vec::new();
    for p in &points {
        match certify_with_refinement(&nsys, p, args.steps)
            .or_else(|_| alpha_number(&nsys, p))
        {
            Ok(report) => {
                if report.certified {
                    certified_points.push((p.clone(), report.clone()));
                }
                reports.push(serde_json::to_value(&report)?);
            }
            Err(e) => reports.push(serde_json::json!({
                "certified": false,
                "error": format!("{e}"),
            })),
        }
    }
    let classification = if !certified_points.is_empty() {
        let identity: Vec<usize> = (0..vars).collect();
        Some(classify(&nsys, &certified_points, &identity).map_err(|e| anyhow!("{e}"))?)
    } else {
        None
    };
    let json = serde_json::json!({
        "reports": reports,
        "classification": classification,
    });
    println!("{}", serde_json::to_string_pretty(&json)?);
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Bounds { which } => run_bounds(which),
        Command::System { which } => match which {
            SystemCommand::Build(args) => run_build(args),
        },
        Command::Solve(args) => run_solve(args),
        Command::Experiment(args) => run_experiment_cmd(args),
        Command::Certify(args) => run_certify(args),
    }
}

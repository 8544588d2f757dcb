//! `clubgood`: solve, sweep, and chart the congestible club good model of
//! globalization, and run proximity co-occurrence queries over text corpora.

mod emit;
mod svg;

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgMatches, Args, ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use clubgood_core::{
    analyze_fracture, builtin_presets, classify_zone, find_preset, optimal_m_closed_form,
    sensitivity_sweep, welfare_curve, FracturedEconomy, ModelParams, SweptParameter,
};
use clubgood_index::{
    build_index_counting, placebo_compare, read_corpus, read_query, read_series_csv, CountMode,
};

#[derive(Parser)]
#[command(
    name = "clubgood",
    version,
    about = "Optimal globalization intensity under institutional congestion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the optimal intensity M* of one scenario
    Solve(SolveArgs),
    /// Sample benefit, cost, and welfare curves on a uniform grid
    Curve(CurveArgs),
    /// Re-solve the equilibrium across values of one parameter
    Sweep(SweepArgs),
    /// Per-group equilibria for capacity groups sharing one economy
    Fracture(FractureArgs),
    /// Yearly proximity co-occurrence counts over a document corpus
    Index(IndexArgs),
    /// Compare a treatment series' growth against a control topic
    Placebo(PlaceboArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

/// Scenario selection: a preset, inline parameters, or a preset with
/// individual fields overridden.
#[derive(Args)]
struct ScenarioArgs {
    /// Built-in preset name (see `--help` for the list)
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Baseline technology α > 0
    #[arg(long)]
    alpha: Option<f64>,
    /// Catch-up parameter δ ≥ 0
    #[arg(long)]
    delta: Option<f64>,
    /// Benefit elasticity θ in (0, 1)
    #[arg(long)]
    theta: Option<f64>,
    /// Disorder sensitivity γ > 0
    #[arg(long)]
    gamma: Option<f64>,
    /// Congestion elasticity φ > 1
    #[arg(long)]
    phi: Option<f64>,
    /// Institutional capacity K > 0
    #[arg(long)]
    capacity: Option<f64>,
}

impl ScenarioArgs {
    /// Resolved parameters plus the preset's current intensity, if any.
    fn resolve(&self) -> Result<(ModelParams, Option<f64>)> {
        match &self.preset {
            Some(name) => {
                let preset = find_preset(name).ok_or_else(|| {
                    let known: Vec<&str> = builtin_presets().iter().map(|p| p.name).collect();
                    anyhow!("unknown preset {name:?} (available: {})", known.join(", "))
                })?;
                let params = ModelParams::new(
                    self.alpha.unwrap_or(preset.params.alpha()),
                    self.delta.unwrap_or(preset.params.delta()),
                    self.theta.unwrap_or(preset.params.theta()),
                    self.gamma.unwrap_or(preset.params.gamma()),
                    self.phi.unwrap_or(preset.params.phi()),
                    self.capacity.unwrap_or(preset.params.capacity()),
                )?;
                Ok((params, Some(preset.m_actual)))
            }
            None => {
                let need = |value: Option<f64>, flag: &str| {
                    value.ok_or_else(|| anyhow!("--{flag} is required when no --preset is given"))
                };
                let params = ModelParams::new(
                    need(self.alpha, "alpha")?,
                    need(self.delta, "delta")?,
                    need(self.theta, "theta")?,
                    need(self.gamma, "gamma")?,
                    need(self.phi, "phi")?,
                    need(self.capacity, "capacity")?,
                )?;
                Ok((params, None))
            }
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output path, or `-` for standard output
    #[arg(long, value_name = "PATH", default_value = "-")]
    out: String,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Also classify this actual intensity against M*
    #[arg(long, value_name = "M")]
    at: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Upper end of the m grid
    #[arg(long = "m-max", value_name = "R", default_value_t = 12.0)]
    m_max: f64,
    /// Number of grid points (endpoints included)
    #[arg(long, value_name = "N", default_value_t = 121)]
    points: usize,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Parameter to sweep: alpha|delta|theta|gamma|phi|capacity
    #[arg(long, value_name = "PARAM")]
    param: SweptParameter,
    /// Comma-separated parameter values
    #[arg(long, value_delimiter = ',', required = true, value_name = "V1,V2,...")]
    values: Vec<f64>,
    /// Reference intensity to classify under each value
    #[arg(long, value_name = "M")]
    at: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct FractureArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Comma-separated `label=CAPACITY` pairs, at least two
    #[arg(long, value_delimiter = ',', required = true, value_name = "L=K,...")]
    groups: Vec<String>,
    /// Shared actual intensity
    #[arg(long, value_name = "M")]
    at: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct IndexArgs {
    /// Newline-delimited JSON corpus file
    #[arg(long, value_name = "PATH")]
    corpus: PathBuf,
    /// JSON query file with group_a, group_b, window
    #[arg(long, value_name = "PATH")]
    query: PathBuf,
    /// Only scan documents with this source tag
    #[arg(long, value_name = "TAG")]
    source: Option<String>,
    /// Count qualifying term occurrences instead of hit documents
    #[arg(long)]
    per_occurrence: bool,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct PlaceboArgs {
    /// Treatment series CSV (as written by `index`)
    #[arg(long, value_name = "PATH")]
    treatment: PathBuf,
    /// Control series CSV
    #[arg(long, value_name = "PATH")]
    control: PathBuf,
    #[arg(long, value_name = "YEAR")]
    from: i32,
    #[arg(long, value_name = "YEAR")]
    to: i32,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
    let color = if no_color {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let matches: ArgMatches = Cli::command().color(color).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(err) => err.exit(),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Fracture(args) => cmd_fracture(args),
        Command::Index(args) => cmd_index(args),
        Command::Placebo(args) => cmd_placebo(args),
    }
}

fn reject_svg(format: Format, command: &str) -> Result<()> {
    if format == Format::Svg {
        bail!("svg output is only supported for the curve and index commands, not {command}");
    }
    Ok(())
}

fn require_non_negative(at: Option<f64>) -> Result<Option<f64>> {
    if let Some(m) = at {
        if !(m >= 0.0) {
            bail!("--at must be non-negative (got {m})");
        }
    }
    Ok(at)
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    reject_svg(args.format, "solve")?;
    let (params, _) = args.scenario.resolve()?;
    let equilibrium = optimal_m_closed_form(&params);
    let diagnosis = require_non_negative(args.at)?.map(|m| classify_zone(&params, m));
    let rendered = match args.format {
        Format::Json => emit::solve_json(&equilibrium, diagnosis.as_ref()),
        Format::Csv => emit::solve_csv(&equilibrium, diagnosis.as_ref()),
        Format::Svg => unreachable!(),
    };
    write_output(&args.output.out, &rendered)
}

fn cmd_curve(args: CurveArgs) -> Result<()> {
    let (params, _) = args.scenario.resolve()?;
    if !(args.m_max > 0.0) {
        bail!("--m-max must be positive (got {})", args.m_max);
    }
    if args.points < 2 {
        bail!("--points must be at least 2 (got {})", args.points);
    }
    let curve = welfare_curve(&params, args.m_max, args.points);
    let rendered = match args.format {
        Format::Json => emit::json(&curve),
        Format::Csv => emit::curve_csv(&curve),
        Format::Svg => svg::render_curve(&curve),
    };
    write_output(&args.output.out, &rendered)
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    reject_svg(args.format, "sweep")?;
    let (params, preset_m) = args.scenario.resolve()?;
    let reference_m = require_non_negative(args.at)?
        .or(preset_m)
        .ok_or_else(|| anyhow!("--at is required when no --preset supplies an intensity"))?;
    let sweep = sensitivity_sweep(&params, args.param, &args.values, reference_m);
    let rendered = match args.format {
        Format::Json => emit::json(&sweep),
        Format::Csv => emit::sweep_csv(&sweep),
        Format::Svg => unreachable!(),
    };
    write_output(&args.output.out, &rendered)
}

fn cmd_fracture(args: FractureArgs) -> Result<()> {
    reject_svg(args.format, "fracture")?;
    let (params, preset_m) = args.scenario.resolve()?;
    let m_actual = require_non_negative(args.at)?
        .or(preset_m)
        .ok_or_else(|| anyhow!("--at is required when no --preset supplies an intensity"))?;
    let groups = parse_groups(&args.groups)?;
    let economy = FracturedEconomy::new(&params, &groups, m_actual)?;
    let report = analyze_fracture(&economy);
    let rendered = match args.format {
        Format::Json => emit::json(&report),
        Format::Csv => emit::fracture_csv(&report),
        Format::Svg => unreachable!(),
    };
    write_output(&args.output.out, &rendered)
}

fn parse_groups(specs: &[String]) -> Result<Vec<(String, f64)>> {
    specs
        .iter()
        .map(|spec| {
            let (label, capacity) = spec
                .split_once('=')
                .ok_or_else(|| anyhow!("group {spec:?} must look like label=CAPACITY"))?;
            let capacity: f64 = capacity
                .parse()
                .with_context(|| format!("bad capacity in group {spec:?}"))?;
            Ok((label.to_owned(), capacity))
        })
        .collect()
}

fn cmd_index(args: IndexArgs) -> Result<()> {
    let corpus_file = File::open(&args.corpus)
        .with_context(|| format!("cannot open corpus {}", args.corpus.display()))?;
    let corpus = read_corpus(BufReader::new(corpus_file))
        .with_context(|| format!("reading corpus {}", args.corpus.display()))?;
    let query_text = read_to_string(&args.query)
        .with_context(|| format!("cannot read query {}", args.query.display()))?;
    let query = read_query(&query_text)
        .with_context(|| format!("parsing query {}", args.query.display()))?;
    let mode = if args.per_occurrence {
        CountMode::Occurrences
    } else {
        CountMode::Documents
    };
    let series = build_index_counting(&corpus, &query, args.source.as_deref(), mode);
    let rendered = match args.format {
        Format::Csv => emit::series_csv(&series),
        Format::Json => emit::json(&series),
        Format::Svg => svg::render_series(&series),
    };
    write_output(&args.output.out, &rendered)
}

fn cmd_placebo(args: PlaceboArgs) -> Result<()> {
    reject_svg(args.format, "placebo")?;
    let read_series = |path: &Path, label: &str| -> Result<_> {
        let file =
            File::open(path).with_context(|| format!("cannot open series {}", path.display()))?;
        read_series_csv(BufReader::new(file), label)
            .with_context(|| format!("reading series {}", path.display()))
    };
    let treatment = read_series(&args.treatment, "treatment")?;
    let control = read_series(&args.control, "control")?;
    let comparison = placebo_compare(&treatment, &control, args.from, args.to)?;
    let rendered = match args.format {
        Format::Json => emit::json(&comparison),
        Format::Csv => emit::placebo_csv(&comparison),
        Format::Svg => unreachable!(),
    };
    write_output(&args.output.out, &rendered)
}

fn read_to_string(path: &Path) -> Result<String> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    Ok(text)
}

fn write_output(out: &str, rendered: &str) -> Result<()> {
    if out == "-" {
        std::io::stdout()
            .write_all(rendered.as_bytes())
            .context("writing to standard output")
    } else {
        std::fs::write(out, rendered).with_context(|| format!("cannot write {out}"))
    }
}

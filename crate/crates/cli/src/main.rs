mod checks;
mod commands;
mod error;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use birat::qpoly::DEFAULT_PRIME;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Center, Options};
use error::CliError;
use input::{FieldSpec, InputSpec};
use report::{Echo, Report};

#[derive(Parser, Debug)]
#[command(name = "birat", version, about = "Exact checks for weighted complete intersections and their Sarkisov links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Seed for sampling and random members (overrides the input file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Irreducibility witnesses per check.
    #[arg(long, global = true, default_value_t = 20)]
    trials: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `q` for the rationals, `fp` or a prime for a finite field (overrides the input file).
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<FieldSpec>,
    /// Run independent check batches on worker threads.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct CenterArgs {
    /// Variable whose coordinate point is blown up.
    #[arg(long)]
    point: String,
    /// Weights of the remaining variables, in order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Vec<i64>,
    /// Common denominator of the weights (defaults to the point's weight).
    #[arg(long)]
    denominator: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ambient data and singularity census.
    Analyze { input: PathBuf },
    /// Quasismoothness at coordinate points and at sampled points.
    Qsmooth { input: PathBuf },
    /// Discrepancy of a weighted blowup of a coordinate point.
    Blowup {
        input: PathBuf,
        #[command(flatten)]
        center: CenterArgs,
    },
    /// 2-ray game of the toric weighted blowup.
    TwoRay {
        input: PathBuf,
        #[command(flatten)]
        center: CenterArgs,
    },
    /// Normal form and the link to the degree-7 hypersurface.
    Link { input: PathBuf },
    /// Classification of links from X and from the degree-7 hypersurface.
    Classify { input: PathBuf },
    /// Full pipeline on a seeded random member (or the given input).
    VerifyPaper { input: Option<PathBuf> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Qsmooth { .. } => "qsmooth",
            Command::Blowup { .. } => "blowup",
            Command::TwoRay { .. } => "two-ray",
            Command::Link { .. } => "link",
            Command::Classify { .. } => "classify",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }

    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::Analyze { input }
            | Command::Qsmooth { input }
            | Command::Blowup { input, .. }
            | Command::TwoRay { input, .. }
            | Command::Link { input }
            | Command::Classify { input } => Some(input),
            Command::VerifyPaper { input } => input.as_ref(),
        }
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    match s.to_ascii_lowercase().as_str() {
        "q" => Ok(FieldSpec::Q),
        "fp" => Ok(FieldSpec::Fp(DEFAULT_PRIME)),
        n => n.parse().map(FieldSpec::Fp).map_err(|_| format!("expected q, fp or a prime, got {s}")),
    }
}

fn field_label(f: FieldSpec) -> String {
    match f {
        FieldSpec::Q => "Q".into(),
        FieldSpec::Fp(p) => format!("F_{p}"),
    }
}

fn center(c: &CenterArgs) -> Center {
    Center { point: c.point.clone(), weights: c.weights.clone(), denominator: c.denominator }
}

fn execute(cli: &Cli, input: &InputSpec, o: &Options, r: &mut Report) -> Result<(), CliError> {
    match &cli.command {
        Command::Analyze { .. } => commands::analyze(input, o, r),
        Command::Qsmooth { .. } => commands::qsmooth(input, o, r),
        Command::Blowup { center: c, .. } => commands::blowup(input, &center(c), o, r),
        Command::TwoRay { center: c, .. } => commands::two_ray(input, &center(c), r),
        Command::Link { .. } => commands::link(input, o, r),
        Command::Classify { .. } => commands::classify(input, o, r),
        Command::VerifyPaper { .. } => {
            let x = input.variety(o.field, o.seed)?;
            let (list, assumptions) = checks::run(&x, o)?;
            let failed: Vec<&str> = list.iter().filter(|c| !c.passed).map(|c| c.check.as_str()).collect();
            r.assumptions = assumptions;
            r.push("checks", &list)?;
            if !failed.is_empty() {
                return Err(CliError::Inconsistency(format!("{} paper checks failed: {}", failed.len(), failed.join("; "))));
            }
            r.status.message = "all paper checks passed".into();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let g = &cli.global;
    let input = match cli.command.input() {
        Some(path) => InputSpec::read(path),
        None => Ok(InputSpec::random_x1214(g.seed.unwrap_or(0))),
    };
    let seed = g.seed.or(input.as_ref().ok().map(|i| i.seed)).unwrap_or(0);
    let field = g.field.or(input.as_ref().ok().map(|i| i.field)).unwrap_or_default();
    let o = Options { seed, samples: g.samples, trials: g.trials, field, parallel: g.parallel };
    let echo = Echo {
        name: cli.command.name().into(),
        input: cli.command.input().map(|p| p.display().to_string()),
        seed,
        samples: g.samples,
        trials: g.trials,
        field: field_label(field),
        parallel: g.parallel,
    };
    let mut report = Report::new(echo);
    if let Err(e) = input.and_then(|i| execute(&cli, &i, &o, &mut report)) {
        report.fail(&e);
    }
    match g.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.status.exit_code as u8)
}

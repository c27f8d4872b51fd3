//! `tessella` — sequence tables, tile censuses, verification suites,
//! gross-number evaluation, and disk-patch rendering from one binary.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails (or on an
//! I/O / resource error), 2 on invalid arguments.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::{self, ExitCode};

use clap::{Args, Parser, Subcommand, ValueEnum};

use tessella::census::{census_report, Splitting, SplittingScheme, TilingFamily};
use tessella::geometry::{self, expand_with_cap, render_svg, GeometryError, SvgStyle};
use tessella::grossone::{Budget, GrossNumber};
use tessella::sequences::{CoefficientSource, CumulativeTable, Family, RecurrenceSpec};
use tessella::suites::{run_suite, SuiteConfig, SuiteName};
use tessella::Mode;

#[derive(Parser)]
#[command(name = "tessella", version, about = "Exact censuses of hyperbolic {p,q} tilings")]
struct Cli {
    /// Write the emitted artifact here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a CSV table of levels: n, u_n, U_n.
    Seq(SeqArgs),
    /// Emit a JSON census report for one splitting scheme.
    Census(CensusArgs),
    /// Run verification suites; any failing check makes the exit code 1.
    Verify(VerifyArgs),
    /// Parse a gross-number expression; print it canonically or evaluate it.
    Gross(GrossArgs),
    /// Construct a disk patch and emit it as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct SeqArgs {
    #[arg(long, value_enum, default_value_t = SeqFamily::P4Standard)]
    family: SeqFamily,
    #[arg(long, default_value_t = 5)]
    p: u32,
    #[arg(long, default_value_t = 4)]
    q: u32,
    /// Highest level n to tabulate.
    #[arg(long, default_value_t = 12)]
    levels: u64,
    /// Read the recurrence coefficients in their alternate sign convention.
    #[arg(long)]
    text_variant: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqFamily {
    Fib,
    P4Standard,
    P4Smaller,
    P4SiblingV,
    PqEven,
    PqOddV1,
    PqOddV2,
}

impl From<SeqFamily> for Family {
    fn from(value: SeqFamily) -> Family {
        match value {
            SeqFamily::Fib => Family::Fib,
            SeqFamily::P4Standard => Family::P4Standard,
            SeqFamily::P4Smaller => Family::P4Smaller,
            SeqFamily::P4SiblingV => Family::P4SiblingV,
            SeqFamily::PqEven => Family::PqEven,
            SeqFamily::PqOddV1 => Family::PqOddV1,
            SeqFamily::PqOddV2 => Family::PqOddV2,
        }
    }
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, value_enum)]
    family: CensusFamily,
    /// Polygon size; defaults to the family's reference tiling.
    #[arg(long)]
    p: Option<u32>,
    /// Vertex degree; defaults to the family's reference tiling.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, value_enum)]
    splitting: SplittingArg,
    /// Ball radius for the r-augmented splitting.
    #[arg(long)]
    r: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,
    /// Finite stand-in for G, as a decimal string of any size.
    #[arg(long)]
    budget: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusFamily {
    Penta,
    Hepta,
    P4,
    P23,
    PqEven,
    PqOddV1,
    PqOddV2,
}

impl CensusFamily {
    fn family(self) -> TilingFamily {
        match self {
            CensusFamily::Penta => TilingFamily::Penta,
            CensusFamily::Hepta => TilingFamily::Hepta,
            CensusFamily::P4 => TilingFamily::P4,
            CensusFamily::P23 => TilingFamily::P23,
            CensusFamily::PqEven => TilingFamily::PqEven,
            CensusFamily::PqOddV1 => TilingFamily::PqOddV1,
            CensusFamily::PqOddV2 => TilingFamily::PqOddV2,
        }
    }

    /// The `(p, q)` filled in when the flags are omitted.
    fn default_tiling(self) -> (u32, u32) {
        match self {
            CensusFamily::Penta => (5, 4),
            CensusFamily::Hepta => (7, 3),
            CensusFamily::P4 => (5, 4),
            CensusFamily::P23 => (5, 3),
            CensusFamily::PqEven => (5, 4),
            CensusFamily::PqOddV1 | CensusFamily::PqOddV2 => (5, 5),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SplittingArg {
    Even,
    Odd,
    OddR,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Symbolic,
    Concrete,
}

impl From<ModeArg> for Mode {
    fn from(value: ModeArg) -> Mode {
        match value {
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::Concrete => Mode::Concrete,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run; may be repeated.
    #[arg(long = "suite", value_name = "SUITE")]
    suites: Vec<String>,
    /// Run every suite.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct GrossArgs {
    /// Expression over G, e.g. "3*G^2 + 2*G + 5 + 7*G^-1".
    #[arg(long)]
    eval: String,
    /// Evaluate at this finite budget instead of printing symbolically.
    #[arg(long)]
    budget: Option<String>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, default_value_t = 5)]
    p: u32,
    #[arg(long, default_value_t = 4)]
    q: u32,
    /// Rounds of reflection around the central tile.
    #[arg(long, default_value_t = 3)]
    depth: u32,
    #[arg(long, default_value_t = 800)]
    size_px: u32,
}

/// How a run ended, short of success.
enum Failure {
    /// Arguments parsed but make no sense together — exit 2.
    Usage(String),
    /// A suite reported FAIL lines — exit 1, lines already printed.
    Verification,
    /// I/O or resource exhaustion — exit 1.
    Runtime(String),
}

fn usage<E: std::fmt::Display>(err: E) -> Failure {
    Failure::Usage(err.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Seq(ref args) => seq(args, &cli.output),
        Command::Census(ref args) => census(args, &cli.output),
        Command::Verify(ref args) => verify(args, &cli.output),
        Command::Gross(ref args) => gross(args, &cli.output),
        Command::Render(ref args) => render(args, &cli.output),
    }
}

/// `TESSELLA_CAP` overrides both the tree node cap and the patch tile cap.
fn cap_override() -> Result<Option<u64>, Failure> {
    match std::env::var("TESSELLA_CAP") {
        Ok(raw) => raw
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("TESSELLA_CAP is not a count: {raw:?}"))),
        Err(_) => Ok(None),
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|err| Failure::Runtime(format!("cannot write {}: {err}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            let write = stdout.write_all(content.as_bytes()).and_then(|()| {
                if content.ends_with('\n') {
                    Ok(())
                } else {
                    stdout.write_all(b"\n")
                }
            });
            match write {
                Ok(()) => Ok(()),
                // A closed pipe (e.g. `tessella ... | head`) is not our error;
                // stop emitting without the noise of a panic.
                Err(err) if err.kind() == io::ErrorKind::BrokenPipe => {
                    process::exit(0);
                }
                Err(err) => Err(Failure::Runtime(format!("cannot write stdout: {err}"))),
            }
        }
    }
}

fn parse_budget(raw: &Option<String>) -> Result<Option<Budget>, Failure> {
    raw.as_deref()
        .map(|text| Budget::parse_decimal(text).map_err(usage))
        .transpose()
}

fn seq(args: &SeqArgs, output: &Option<PathBuf>) -> Result<(), Failure> {
    let source = if args.text_variant {
        CoefficientSource::TextVariant
    } else {
        CoefficientSource::Polynomial
    };
    let family = Family::from(args.family);
    let (p, q) = if family == Family::Fib { (5, 4) } else { (args.p, args.q) };
    let spec = RecurrenceSpec::with_source(family, p, q, source).map_err(usage)?;
    let table = CumulativeTable::build(&spec, args.levels);
    let mut csv = Vec::new();
    table
        .write_csv(&mut csv)
        .map_err(|err| Failure::Runtime(format!("cannot format table: {err}")))?;
    emit(
        output,
        std::str::from_utf8(&csv).expect("CSV output is ASCII"),
    )
}

fn census(args: &CensusArgs, output: &Option<PathBuf>) -> Result<(), Failure> {
    let (default_p, default_q) = args.family.default_tiling();
    let splitting = match args.splitting {
        SplittingArg::Even => Splitting::Even,
        SplittingArg::Odd => Splitting::Odd,
        SplittingArg::OddR => Splitting::OddR(
            args.r
                .ok_or_else(|| Failure::Usage("--splitting odd-r needs --r".into()))?,
        ),
    };
    if args.r.is_some() && !matches!(splitting, Splitting::OddR(_)) {
        return Err(Failure::Usage("--r only applies to --splitting odd-r".into()));
    }
    let scheme = SplittingScheme::new(
        args.family.family(),
        args.p.unwrap_or(default_p),
        args.q.unwrap_or(default_q),
        splitting,
    )
    .map_err(usage)?;
    let budget = parse_budget(&args.budget)?;
    let report = census_report(&scheme, args.mode.into(), budget.as_ref()).map_err(usage)?;
    emit(output, &report.to_json())
}

fn verify(args: &VerifyArgs, output: &Option<PathBuf>) -> Result<(), Failure> {
    let suites: Vec<SuiteName> = if args.all {
        SuiteName::all().to_vec()
    } else if args.suites.is_empty() {
        return Err(Failure::Usage(
            "pick at least one --suite, or pass --all".into(),
        ));
    } else {
        args.suites
            .iter()
            .map(|name| name.parse().map_err(Failure::Usage))
            .collect::<Result<_, _>>()?
    };
    let mut cfg = SuiteConfig::default();
    if let Some(cap) = cap_override()? {
        cfg.node_cap = cap;
        cfg.tile_cap = cap;
    }
    let mut lines = Vec::new();
    let mut all_passed = true;
    for suite in suites {
        let report = run_suite(suite, &cfg);
        all_passed &= report.passed();
        lines.extend(report.lines());
    }
    let mut text = lines.join("\n");
    text.push('\n');
    emit(output, &text)?;
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn gross(args: &GrossArgs, output: &Option<PathBuf>) -> Result<(), Failure> {
    let number: GrossNumber = args.eval.parse().map_err(usage)?;
    let text = match parse_budget(&args.budget)? {
        Some(budget) => number.evaluate(&budget).map_err(usage)?.to_string(),
        None => number.to_string(),
    };
    emit(output, &text)
}

fn render(args: &RenderArgs, output: &Option<PathBuf>) -> Result<(), Failure> {
    let cap = cap_override()?.unwrap_or(geometry::DEFAULT_TILE_CAP);
    let patch = expand_with_cap(args.p, args.q, args.depth, cap).map_err(|err| match err {
        GeometryError::NotHyperbolic { .. } => usage(err),
        other => Failure::Runtime(other.to_string()),
    })?;
    let style = SvgStyle {
        size_px: args.size_px,
        ..SvgStyle::default()
    };
    emit(output, &render_svg(&patch, &style))
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use msoct_cli::{
    cmd_case, cmd_figure, cmd_pair, write_atomic, CaseSpec, CliError, FigureKind, FlowChoice,
};

#[derive(Parser)]
#[command(
    name = "msoct",
    version,
    about = "Inversive distance circle packings of the octahedron"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Labels, extrema and the criticality check for one case.
    Case {
        #[command(flatten)]
        case: CaseArgs,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Two configurations with the same outer label, lifted and compared.
    Pair {
        #[command(flatten)]
        case: CaseArgs,
        /// Target label on the outer face.
        #[arg(long)]
        d: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write an SVG figure.
    Figure {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_enum, default_value_t = Kind::Flow)]
        kind: Kind,
        /// Flow time for the sphere view; defaults to the critical time.
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CaseArgs {
    /// Label on the edges of the inner face.
    #[arg(
        long,
        conflicts_with = "y",
        required_unless_present = "y",
        allow_hyphen_values = true
    )]
    a: Option<f64>,
    /// Pencil parameter; 0 gives the tangent pencil.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    /// Pencil used with a nonzero --y.
    #[arg(long, value_enum, default_value_t = Flow::Elliptic)]
    flow: Flow,
    #[arg(long, default_value_t = 1.7)]
    x1: f64,
    #[arg(long, default_value_t = 3.0)]
    x2: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flow {
    Hyperbolic,
    Elliptic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Flow,
    Graph,
    Sphere,
}

impl CaseArgs {
    fn spec(&self) -> CaseSpec {
        let flow = match self.flow {
            Flow::Hyperbolic => FlowChoice::Hyperbolic,
            Flow::Elliptic => FlowChoice::Elliptic,
        };
        CaseSpec {
            a: self.a,
            y: self.y,
            flow,
            x1: self.x1,
            x2: self.x2,
        }
    }
}

fn emit(report: &msoct_cli::RunReport, json: Option<&PathBuf>) -> Result<(), CliError> {
    let text = report.to_json();
    print!("{text}");
    if let Some(path) = json {
        write_atomic(path, text.as_bytes())?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Case { case, json } => {
            let (report, code) = cmd_case(&case.spec())?;
            emit(&report, json.as_ref())?;
            Ok(code)
        }
        Command::Pair { case, d, json } => {
            let (report, code) = cmd_pair(&case.spec(), d)?;
            emit(&report, json.as_ref())?;
            Ok(code)
        }
        Command::Figure { case, kind, t, out } => {
            let kind = match kind {
                Kind::Flow => FigureKind::Flow,
                Kind::Graph => FigureKind::Graph,
                Kind::Sphere => FigureKind::Sphere,
            };
            cmd_figure(&case.spec(), kind, t, &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("msoct: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

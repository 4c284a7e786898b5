use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotoid::{
    fixtures, gordian_decomposition, parse_collection, parse_gauss_code, run_selftest,
    singular_h_with, GaussDiagram, GordianReport, HOptions, ReductionPolicy, RenderFormat,
    SelftestConfig,
};
use rayon::prelude::*;

const EXIT_PROPERTY: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Index-type invariants of planar knotoids from Gauss codes.
#[derive(Parser)]
#[command(name = "knotoid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute H for one Gauss code or every entry of a .gko file.
    Compute(ComputeArgs),
    /// Compare the invariants of two Gauss codes.
    Compare(CompareArgs),
    /// Lower bound on the Gordian distance between two homotopic knotoids.
    Gordian(GordianArgs),
    /// Run the randomized property suite.
    Selftest(SelftestArgs),
    /// Print the bundled reference fixtures.
    Fixtures {
        /// Print only the Gauss code of this entry.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Quotient,
    Literal,
}

impl From<Mode> for ReductionPolicy {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Quotient => ReductionPolicy::Quotient,
            Mode::Literal => ReductionPolicy::Literal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

impl From<Format> for RenderFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => RenderFormat::Text,
            Format::Json => RenderFormat::Json,
            Format::Latex => RenderFormat::Latex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Reverse,
    Mirror,
    None,
}

#[derive(Args)]
#[group(id = "input", required = true, multiple = false)]
struct Input {
    /// Gauss code, e.g. "O1+ O2- U1 U2".
    #[arg(long, allow_hyphen_values = true)]
    code: Option<String>,
    /// Collection file with one `name: code` per line.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "quotient")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Keep the n = 0 bucket.
    #[arg(long)]
    include_n0: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: String,
    #[arg(long, value_enum, default_value = "quotient")]
    mode: Mode,
    /// Also test H(B) against the reverse or mirror transform of H(A).
    #[arg(long, value_enum, default_value = "none")]
    check: Check,
}

#[derive(Args)]
struct GordianArgs {
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: String,
    #[arg(long, value_enum, default_value = "quotient")]
    mode: Mode,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 8)]
    max_chords: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Compare(args) => compare(args),
        Command::Gordian(args) => gordian(args),
        Command::Selftest(args) => selftest(args),
        Command::Fixtures { name } => print_fixtures(name.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn parse(code: &str) -> Result<GaussDiagram, String> {
    parse_gauss_code(code).map_err(|e| format!("`{code}`: {e}"))
}

fn compute(args: ComputeArgs) -> CmdResult {
    let opts = HOptions {
        policy: args.mode.into(),
        include_n0: args.include_n0,
    };
    let format = args.format.into();
    if let Some(code) = args.input.code {
        println!("{}", singular_h_with(&parse(&code)?, &opts).render(format));
        return Ok(ExitCode::SUCCESS);
    }
    let path = args.input.file.expect("clap enforces one input");
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let entries = parse_collection(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let lines: Vec<String> = entries
        .par_iter()
        .map(|e| {
            let inv = singular_h_with(&e.diagram, &opts);
            match format {
                RenderFormat::Json => {
                    serde_json::json!({ "name": e.name, "invariant": inv.to_json_value() })
                        .to_string()
                }
                _ => format!("{}: {}", e.name, inv.render(format)),
            }
        })
        .collect();
    for line in lines {
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn compare(args: CompareArgs) -> CmdResult {
    let opts = HOptions {
        policy: args.mode.into(),
        include_n0: false,
    };
    let ha = singular_h_with(&parse(&args.a)?, &opts);
    let hb = singular_h_with(&parse(&args.b)?, &opts);
    println!("{}", if ha == hb { "equal" } else { "distinct" });
    let expected = match args.check {
        Check::None => return Ok(ExitCode::SUCCESS),
        Check::Reverse => ha.subst_t_inverse(),
        Check::Mirror => ha.subst_t_inverse().subst_z_inverse().neg(),
    };
    if expected == hb {
        println!("identity holds");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("identity fails");
        Ok(ExitCode::from(EXIT_PROPERTY))
    }
}

fn gordian(args: GordianArgs) -> CmdResult {
    let a = parse(&args.a)?;
    let b = parse(&args.b)?;
    let report = GordianReport::from_result(gordian_decomposition(&a, &b, args.mode.into()))
        .map_err(|e| e.to_string())?;
    if args.json {
        println!("{}", report.to_json());
    } else if let Some(bound) = report.bound {
        println!("bound: {bound}");
    } else {
        println!("{}", report.status);
    }
    Ok(ExitCode::SUCCESS)
}

fn selftest(args: SelftestArgs) -> CmdResult {
    let report = run_selftest(SelftestConfig {
        samples: args.samples,
        max_chords: args.max_chords,
        seed: args.seed,
    });
    print!("{}", report.to_json_lines());
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_PROPERTY)
    })
}

fn print_fixtures(name: Option<&str>) -> CmdResult {
    let Some(name) = name else {
        print!("{}", fixtures::SOURCE);
        return Ok(ExitCode::SUCCESS);
    };
    let entry = fixtures::all()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| format!("no fixture named `{name}`"))?;
    println!("{}", entry.diagram);
    Ok(ExitCode::SUCCESS)
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use downleft::acceptance::Profile;
use downleft::commands::{self, AnalyzeFlags, CommandError, ExitStatus, OracleFlags};
use downleft::{io, Limits};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "downleft", version, about = "Down-left graphs, edge-ideal regularity and toric ideals of bipartite graphs")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add `timing_ms` to JSON reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the edge-list file of a down-left graph.
    Gen(GenArgs),
    /// Check well-coveredness, C5-freeness, vertex decomposability, induced matchings and regularity.
    Analyze(AnalyzeArgs),
    /// Graded Betti numbers and regularity through Hochster's formula.
    Oracle(OracleArgs),
    /// Regularity of the toric ideal of a chordal bipartite graph.
    Toric(FileArg),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Spec file: `m n`, then the a row, then the b row.
    spec: Option<PathBuf>,
    /// Number of rows.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    m: Option<usize>,
    /// Number of columns.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    n: Option<usize>,
    /// Comma-separated, defaults to all zeros.
    #[arg(long, value_delimiter = ',', conflicts_with = "spec")]
    a: Option<Vec<usize>>,
    /// Comma-separated, defaults to all n + 1.
    #[arg(long, value_delimiter = ',', conflicts_with = "spec")]
    b: Option<Vec<usize>>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Edge-list file or spec file.
    file: PathBuf,
    #[arg(long)]
    well_covered: bool,
    #[arg(long)]
    c5: bool,
    #[arg(long)]
    vd: bool,
    #[arg(long)]
    im: bool,
    #[arg(long)]
    reg: bool,
    /// Use the Hochster oracle for regularity.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    #[arg(long)]
    betti: bool,
    #[arg(long)]
    reg: bool,
    /// Largest vertex count the oracle accepts.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct FileArg {
    /// Edge-list file of a bipartite graph, or a 0/1 matrix file.
    file: PathBuf,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    #[arg(long)]
    full: bool,
}

enum Output {
    Text(String),
    Report(Value),
}

fn read(path: &Path) -> Result<String, CommandError> {
    fs::read_to_string(path).map_err(|e| CommandError {
        status: ExitStatus::InvalidInput,
        message: format!("cannot read {}: {e}", path.display()),
        report: None,
    })
}

fn run(command: Command, limits: &Limits) -> Result<Output, CommandError> {
    match command {
        Command::Gen(g) => {
            let spec = match &g.spec {
                Some(path) => io::parse_spec(&read(path)?)?,
                None => commands::spec_from_flags(g.m.unwrap_or(0), g.n.unwrap_or(0), g.a, g.b)?,
            };
            Ok(Output::Text(commands::cmd_gen(&spec)))
        }
        Command::Analyze(a) => {
            let flags = AnalyzeFlags {
                well_covered: a.well_covered,
                c5: a.c5,
                vd: a.vd,
                im: a.im,
                reg: a.reg,
                oracle: a.oracle,
            };
            commands::cmd_analyze(&read(&a.file)?, flags, limits).map(Output::Report)
        }
        Command::Oracle(o) => {
            let flags = OracleFlags {
                betti: o.betti,
                reg: o.reg,
                cap: o.cap,
            };
            commands::cmd_oracle(&read(&o.file)?, flags, limits).map(Output::Report)
        }
        Command::Toric(t) => commands::cmd_toric(&read(&t.file)?, limits).map(Output::Report),
        Command::Selftest(s) => {
            let profile = if s.full { Profile::Full } else { Profile::Quick };
            commands::cmd_selftest(profile).map(Output::Report)
        }
    }
}

fn with_timing(mut v: Value, start: Instant, enabled: bool) -> Value {
    if enabled {
        if let Value::Object(map) = &mut v {
            map.insert("timing_ms".into(), Value::from(start.elapsed().as_millis() as u64));
        }
    }
    v
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ExitStatus::InvalidInput.code() as u8 } else { 0 });
        }
    };
    let start = Instant::now();
    let limits = Limits::default();
    let (text, code) = match run(cli.command, &limits) {
        Ok(Output::Text(t)) => (t, ExitStatus::Ok),
        Ok(Output::Report(v)) => (commands::render(&with_timing(v, start, cli.timing)), ExitStatus::Ok),
        Err(e) => {
            eprintln!("error: {}", e.message);
            match e.report {
                Some(v) => (commands::render(&with_timing(v, start, cli.timing)), e.status),
                None => return ExitCode::from(e.status.code() as u8),
            }
        }
    };
    if let Err(msg) = emit(&text, cli.out.as_deref()) {
        eprintln!("error: {msg}");
        return ExitCode::from(ExitStatus::InvalidInput.code() as u8);
    }
    ExitCode::from(code.code() as u8)
}

//! `bbd`: command-line front end for the decider library.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bb_deciders::db::SeedDatabase;
use bb_deciders::machine::TransitionTable;
use bb_deciders::pipeline::{
    default_deciders, parse_pipeline_spec, run_pipeline, verify_file, CertKind, PipelineConfig,
};
use bb_deciders::spacetime::{render_spacetime, DiagramOptions};
use bb_deciders::tape::{simulate, SimulationOutcome};

#[derive(Parser)]
#[command(name = "bbd", about = "Busy beaver non-halting deciders and certificate verifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a machine from the all-0 tape and report the outcome.
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        machine: String,
        /// Maximum number of steps to run.
        #[arg(long)]
        steps: u64,
    },
    /// Run the decider pipeline over one machine or a seed database.
    Decide(DecideArgs),
    /// Verify a certificate file (JSON or JSON lines).
    Verify {
        /// Certificate kind: far | bouncer.
        #[arg(long)]
        kind: CertKind,
        file: PathBuf,
    },
    /// Render a space-time diagram as a binary PPM image.
    Diagram {
        #[arg(long, allow_hyphen_values = true)]
        machine: String,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        out: PathBuf,
        /// Square pixels per tape cell.
        #[arg(long, default_value_t = 1)]
        scale: u32,
    },
    /// Seed database operations.
    #[command(subcommand)]
    Db(DbCommand),
}

#[derive(Subcommand)]
enum DbCommand {
    /// List records of a seed database as machine strings.
    Scan {
        #[arg(long)]
        db: PathBuf,
        /// Record range `start..end` (end exclusive); the whole file if omitted.
        #[arg(long)]
        index: Option<String>,
        /// Decode the move bit with flipped polarity (1 = R instead of 1 = L).
        #[arg(long)]
        flip_move_bit: bool,
    },
}

#[derive(Args)]
struct DecideArgs {
    /// A single machine in compact text form.
    #[arg(long, conflicts_with = "db", allow_hyphen_values = true)]
    machine: Option<String>,
    /// A seed database file.
    #[arg(long)]
    db: Option<PathBuf>,
    /// Record range `start..end` within the database (end exclusive).
    #[arg(long, requires = "db")]
    index: Option<String>,
    /// Decode the move bit with flipped polarity.
    #[arg(long, requires = "db")]
    flip_move_bit: bool,
    /// Decider cascade, e.g. `cyclers:1000,backward:50,bouncers:10000:1000:64`.
    #[arg(long)]
    pipeline: Option<String>,
    /// Steps of plain simulation used to catch halting machines first.
    #[arg(long)]
    halt_check: Option<u64>,
    /// Worker threads (0 = automatic).
    #[arg(long)]
    threads: Option<usize>,
    /// Directory for results.jsonl and certificate files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional key = value configuration file; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Simulate { machine, steps } => {
            let table = parse_machine(&machine)?;
            match simulate(&table, steps) {
                SimulationOutcome::Halted(halt) => {
                    println!(
                        "halted at step {} reading {} in state {}",
                        halt.step,
                        halt.read,
                        bb_deciders::machine::state_letter(halt.state)
                    );
                }
                SimulationOutcome::RunningAtLimit(config) => {
                    println!(
                        "running after {steps} steps: state {}, head {}, {} tape cells set",
                        bb_deciders::machine::state_letter(config.state),
                        config.head,
                        config.tape.to_map().len()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decide(args) => decide(args),
        Command::Verify { kind, file } => {
            let contents =
                fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let reports = verify_file(&contents, kind);
            let mut all_ok = true;
            for report in &reports {
                println!("{report}");
                all_ok &= report.ok;
            }
            if reports.is_empty() {
                return Err("no certificates found in file".into());
            }
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Diagram { machine, steps, out, scale } => {
            let table = parse_machine(&machine)?;
            if steps == 0 {
                return Err("--steps must be at least 1".into());
            }
            let diagram = render_spacetime(&table, steps, &DiagramOptions { scale });
            let file = fs::File::create(&out).map_err(|e| format!("{}: {e}", out.display()))?;
            diagram.write_ppm(io::BufWriter::new(file)).map_err(|e| e.to_string())?;
            println!("wrote {} ({}x{})", out.display(), diagram.width, diagram.height);
            Ok(ExitCode::SUCCESS)
        }
        Command::Db(DbCommand::Scan { db, index, flip_move_bit }) => {
            let mut database = SeedDatabase::open(&db).map_err(|e| e.to_string())?;
            database.move_one_is_left = !flip_move_bit;
            let range = parse_range(index.as_deref(), database.count())?;
            for i in range {
                match database.machine(i) {
                    Ok(table) => println!("{i}\t{table}"),
                    Err(e) => println!("{i}\terror: {e}"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_machine(text: &str) -> Result<TransitionTable, String> {
    text.parse().map_err(|e| format!("cannot parse machine {text:?}: {e}"))
}

fn parse_range(range: Option<&str>, count: usize) -> Result<std::ops::Range<usize>, String> {
    match range {
        None => Ok(0..count),
        Some(text) => {
            let (start, end) = text
                .split_once("..")
                .ok_or_else(|| format!("range must look like start..end, got {text:?}"))?;
            let start: usize = start.parse().map_err(|_| format!("bad range start {start:?}"))?;
            let end: usize = end.parse().map_err(|_| format!("bad range end {end:?}"))?;
            if start > end || end > count {
                return Err(format!("range {start}..{end} out of bounds for {count} records"));
            }
            Ok(start..end)
        }
    }
}

/// Key = value configuration file: `halt-check`, `pipeline`, `threads`.
fn read_config_file(path: &Path) -> Result<Vec<(String, String)>, String> {
    let contents = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut pairs = Vec::new();
    for (lineno, line) in contents.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), lineno + 1))?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn decide(args: DecideArgs) -> Result<ExitCode, String> {
    // Configuration file first, explicit flags win.
    let mut pipeline_spec: Option<String> = None;
    let mut halt_check: Option<u64> = None;
    let mut threads: Option<usize> = None;
    if let Some(path) = &args.config {
        for (key, value) in read_config_file(path)? {
            match key.as_str() {
                "pipeline" => pipeline_spec = Some(value),
                "halt-check" => {
                    halt_check = Some(value.parse().map_err(|_| format!("bad halt-check {value:?}"))?)
                }
                "threads" => {
                    threads = Some(value.parse().map_err(|_| format!("bad threads {value:?}"))?)
                }
                other => return Err(format!("unknown configuration key {other:?}")),
            }
        }
    }
    if args.pipeline.is_some() {
        pipeline_spec = args.pipeline.clone();
    }
    if args.halt_check.is_some() {
        halt_check = args.halt_check;
    }
    if args.threads.is_some() {
        threads = args.threads;
    }

    let deciders = match pipeline_spec {
        Some(spec) => parse_pipeline_spec(&spec).map_err(|e| e.to_string())?,
        None => default_deciders(),
    };
    let config = PipelineConfig {
        halt_check_steps: halt_check.unwrap_or(1_000_000),
        deciders,
        threads: threads.unwrap_or(0),
    };

    let machines: Vec<TransitionTable> = if let Some(machine) = &args.machine {
        vec![parse_machine(machine)?]
    } else if let Some(db_path) = &args.db {
        let mut database = SeedDatabase::open(db_path).map_err(|e| e.to_string())?;
        database.move_one_is_left = !args.flip_move_bit;
        let range = parse_range(args.index.as_deref(), database.count())?;
        // A corrupt record is reported and skipped; it never aborts the run.
        let mut out = Vec::with_capacity(range.len());
        for i in range {
            match database.machine(i) {
                Ok(table) => out.push(table),
                Err(e) => eprintln!("skipping record {i}: {e}"),
            }
        }
        out
    } else {
        return Err("provide --machine or --db".into());
    };

    let reports = run_pipeline(&machines, &config);

    let out_dir = args.out.as_deref();
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    let mut results_file = match out_dir {
        Some(dir) => {
            let path = dir.join("results.jsonl");
            Some(fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?)
        }
        None => None,
    };
    for (i, mut report) in reports.into_iter().enumerate() {
        if let Some(dir) = out_dir {
            if let Some(cert) = &report.far_certificate {
                let name = format!("cert_{i}_far.json");
                fs::write(dir.join(&name), cert.to_json())
                    .map_err(|e| format!("writing {name}: {e}"))?;
                report.decision.certificate = Some(name);
            }
            if let Some(cert) = &report.bouncer_certificate {
                let name = format!("cert_{i}_bouncer.json");
                fs::write(dir.join(&name), cert.to_json())
                    .map_err(|e| format!("writing {name}: {e}"))?;
                report.decision.certificate = Some(name);
            }
        }
        let line = report.decision.to_json();
        println!("{line}");
        if let Some(file) = &mut results_file {
            writeln!(file, "{line}").map_err(|e| e.to_string())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

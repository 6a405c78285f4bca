use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ellbundle_cli::{analyze, exit_code, parse_divisor, parse_job, rr_text, spectral_text, sweep, CliError, Job};

#[derive(Parser)]
#[command(name = "ellbundle", version, about = "Semistability and splitting types of degree-zero bundles on elliptic curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verdict, spectral divisor and splitting type
    Analyze {
        file: String,
        #[arg(long)]
        json: bool,
        /// Twist divisor for the general-twist cross-check, e.g. "1*inf + 1*(0,0)"
        #[arg(long)]
        twist: Option<String>,
    },
    /// Spectral divisor only
    Spectral { file: String },
    /// Basis of L(D) for the job's `divisor` line
    Rr { file: String },
    /// Analyze every instantiation of the template's `$name` slots
    Sweep {
        file: String,
        /// name=lo..hi, name=v1,v2,... or name=all; repeatable
        #[arg(long = "slot", required = true)]
        slots: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })
}

fn load(path: &str) -> Result<Job, CliError> {
    Ok(parse_job(&read(path)?)?)
}

fn run(cmd: &Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Analyze { file, json, twist } => {
            let job = load(file)?;
            let twist = twist.as_deref().map(|t| parse_divisor(&job.curve, t)).transpose()?;
            let rep = analyze(&job, twist.as_ref())?;
            if *json {
                println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
            } else {
                print!("{}", rep.human());
            }
            Ok(exit_code(&rep))
        }
        Cmd::Spectral { file } => {
            let (text, ok) = spectral_text(&load(file)?)?;
            print!("{text}");
            Ok(if ok { 0 } else { 2 })
        }
        Cmd::Rr { file } => {
            print!("{}", rr_text(&load(file)?)?);
            Ok(0)
        }
        Cmd::Sweep { file, slots, json } => {
            let text = read(file)?;
            // the field is needed to enumerate `all`; parse the header alone
            let header: String = text
                .lines()
                .filter(|l| matches!(l.split_whitespace().next(), Some("curve" | "ext" | "mark")))
                .collect::<Vec<_>>()
                .join("\n");
            let field = parse_job(&header).ok().map(|j| j.curve.field().clone());
            let ranges = slots.iter().map(|s| sweep::parse_slot(s, field.as_ref())).collect::<Result<Vec<_>, _>>()?;
            let sw = sweep::run(&text, &ranges)?;
            if *json {
                println!("{}", serde_json::to_string_pretty(&sw).expect("sweep serializes"));
            } else {
                print!("{}", sw.human());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = matches!(cli.cmd, Cmd::Analyze { json: true, .. } | Cmd::Sweep { json: true, .. });
    match run(&cli.cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            if json {
                let v = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
                println!("{v}");
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

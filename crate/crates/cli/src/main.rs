//! `qplane`: sectors, case classification and simple modules of lifted
//! quantum planes, checked against a brute-force oracle.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails
//! (the report is still printed), 2 for unusable input.

mod document;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qplane_core::lifting::{sectors, LiftingDatum};
use qplane_core::pipeline::{self, Mode, PipelineOptions};
use qplane_core::reps::NumericOptions;

#[derive(Parser, Debug)]
#[command(name = "qplane", version, about = "Representations of lifted quantum planes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input document (JSON); a previously written report is accepted too.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Restrict to one sector.
    #[arg(long, global = true)]
    sector: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Zero threshold for numeric checks.
    #[arg(long, global = true, default_value_t = 1e-25)]
    tolerance: f64,
    /// Working precision in bits for numeric checks.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest sector dimension for which the oracle is built.
    #[arg(long = "max-dim", global = true, default_value_t = 4096)]
    max_dim: u64,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check the datum constraints.
    Validate,
    /// List the sectors with their characters and dimensions.
    Sectors,
    /// Assign a case to every sector.
    Classify,
    /// Build the simple modules and print their matrices.
    Reps,
    /// Run every check and print the verdicts.
    Verify,
    /// Full pipeline with everything it computes.
    Report,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Exact,
    Numeric,
}

struct Output {
    json: Value,
    text: Vec<String>,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(path) = cli.input.clone() else {
        eprintln!("error: --input is required");
        return ExitCode::from(2);
    };
    let datum = match document::read_datum(&path) {
        Ok(d) => d,
        Err(e) => return invalid(&cli, &e),
    };
    if cli.tolerance.is_nan() || cli.tolerance <= 0.0 || cli.precision < 16 {
        eprintln!("error: tolerance must be positive and precision at least 16 bits");
        return ExitCode::from(2);
    }
    match execute(&cli, &datum) {
        Ok(out) => {
            emit(&cli, &out);
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            let out = Output {
                json: json!({ "command": command_name(cli.command), "error": e.to_string(), "pass": false }),
                text: vec![format!("error: {e}")],
                failed: true,
            };
            emit(&cli, &out);
            ExitCode::from(match e {
                qplane_core::Error::Domain(_) => 2,
                _ => 1,
            })
        }
    }
}

fn invalid(cli: &Cli, e: &anyhow::Error) -> ExitCode {
    let problems: Vec<String> = match e.downcast_ref::<qplane_core::Error>() {
        Some(qplane_core::Error::InvalidDatum(list)) => list.clone(),
        _ => vec![format!("{e:#}")],
    };
    if cli.json {
        let v = json!({ "command": command_name(cli.command), "valid": false, "problems": problems });
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        eprintln!("invalid input:");
        for p in &problems {
            eprintln!("  {p}");
        }
    }
    ExitCode::from(2)
}

fn emit(cli: &Cli, out: &Output) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = if cli.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("json"))
    } else {
        out.text.iter().try_for_each(|line| writeln!(stdout, "{line}"))
    };
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Sectors => "sectors",
        Command::Classify => "classify",
        Command::Reps => "reps",
        Command::Verify => "verify",
        Command::Report => "report",
    }
}

fn options(cli: &Cli) -> PipelineOptions {
    PipelineOptions {
        numeric: NumericOptions { bits: cli.precision, tolerance: cli.tolerance },
        mode: match cli.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        },
        max_dim: cli.max_dim,
        seed: cli.seed,
        ..PipelineOptions::default()
    }
}

fn execute(cli: &Cli, d: &LiftingDatum) -> qplane_core::Result<Output> {
    let name = command_name(cli.command);
    match cli.command {
        Command::Validate => {
            let json = json!({
                "command": name,
                "valid": true,
                "input": render::input(d),
                "rank": d.theta(),
                "group_order": d.group().order(),
                "dim_A": d.dim(),
                "lambda": d.lambda().members().iter().map(|g| g.exponents().to_vec()).collect::<Vec<_>>(),
            });
            let text = vec![format!(
                "valid: rank {}, |group| = {}, dim A = {}, |Lambda| = {}",
                d.theta(),
                d.group().order(),
                d.dim(),
                d.lambda().len()
            )];
            Ok(Output { json, text, failed: false })
        }
        Command::Sectors | Command::Classify => {
            let all = sectors(d)?;
            let sum: u64 = all.iter().map(|s| s.dim).sum();
            if let Some(i) = cli.sector {
                if i >= all.len() {
                    return Err(qplane_core::Error::Domain(format!(
                        "sector {i} does not exist ({} sectors)",
                        all.len()
                    )));
                }
            }
            let mut values = Vec::new();
            let mut text = Vec::new();
            for s in all.iter().filter(|s| cli.sector.is_none_or(|i| i == s.index)) {
                let mut v = render::sector_basic(d, s);
                text.push(render::sector_header(d, s));
                if cli.command == Command::Classify {
                    let (case, sd) = pipeline::classify(d, s)?;
                    v["case_tag"] = json!(case.map(|c| c.name()));
                    v["swapped"] = json!(sd.as_ref().is_some_and(|sd| sd.swapped));
                    if let Some(sd) = &sd {
                        v["scalars"] = render::scalars(sd);
                        text.push(format!(
                            "  case {}{}  alpha={} beta={} nu={} q={}",
                            sd.case,
                            if sd.swapped { " (swapped)" } else { "" },
                            sd.alpha,
                            sd.beta,
                            sd.nu,
                            sd.q
                        ));
                    } else {
                        let tag = case.map(|c| c.name().to_string()).unwrap_or_else(|| "-".into());
                        text.push(format!("  case {tag}"));
                    }
                }
                values.push(v);
            }
            let failed = sum != d.dim();
            text.push(format!("sector dimensions sum to {sum} (dim A = {})", d.dim()));
            let json = json!({
                "command": name,
                "input": render::input(d),
                "dim_A": d.dim(),
                "sector_dim_sum": sum,
                "sectors": values,
                "pass": !failed,
            });
            Ok(Output { json, text, failed })
        }
        Command::Reps => {
            let opts = PipelineOptions { max_dim: 0, ..options(cli) };
            let r = pipeline::run_sectors(d, &opts, cli.sector)?;
            let so = render::SectorOptions { oracle: false, matrices: true };
            Ok(Output { json: render::report(name, &r, &so), text: render::report_text(&r, &so), failed: r.failed() })
        }
        Command::Verify | Command::Report => {
            let r = pipeline::run_sectors(d, &options(cli), cli.sector)?;
            let so = render::SectorOptions { oracle: true, matrices: false };
            let mut json = render::report(name, &r, &so);
            if cli.command == Command::Verify {
                for s in json["sectors"].as_array_mut().expect("sectors array") {
                    let keep = ["index", "case_tag", "dim", "checks", "verified", "semisimple", "radical_dim"];
                    s.as_object_mut().expect("object").retain(|k, _| keep.contains(&k.as_str()));
                }
            }
            Ok(Output { json, text: render::report_text(&r, &so), failed: r.failed() })
        }
    }
}

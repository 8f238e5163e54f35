use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use curvereg::corpus::run_corpus;
use curvereg::field::DEFAULT_PRIME;
use curvereg::report::{analyze_file, AnalysisOptions, FieldSpec, TimedReport};
use curvereg::verify::{parse_theorem_list, TheoremId, TheoremVerdict};
use curvereg::Error;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "curvereg", version, about = "Regularity and singularity invariants of plane curve arrangements")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Fp")]
    Fp,
}

#[derive(Args)]
struct GlobalOpts {
    /// Coefficient field; overrides the one in the definition file.
    #[arg(long, global = true, value_enum)]
    field: Option<FieldArg>,
    /// Prime for `--field Fp`.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Refuse curves of larger degree.
    #[arg(long, global = true, default_value_t = 12)]
    max_degree: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all invariants and checks for one definition file.
    Analyze {
        file: PathBuf,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print JSON instead of the text summary.
        #[arg(long)]
        json: bool,
    },
    /// Run selected checks on one definition file.
    Verify {
        file: PathBuf,
        /// Comma-separated ids, or `all`.
        #[arg(long, default_value = "all")]
        theorems: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Batch operations on a directory of definition files.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Analyze every `*.json` file in the directory.
    Run {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
        /// Worker threads (default: available cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the summary JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn field_override(g: &GlobalOpts) -> Result<Option<FieldSpec>, Error> {
    let spec = match (g.field, g.p) {
        (None, None) => None,
        (Some(FieldArg::Q), None) => Some(FieldSpec::Q),
        (Some(FieldArg::Q), Some(_)) => return Err(Error::InvalidField("--p requires --field Fp".into())),
        (Some(FieldArg::Fp), p) | (None, p @ Some(_)) => Some(FieldSpec::Fp(p.unwrap_or(DEFAULT_PRIME))),
    };
    if let Some(FieldSpec::Fp(p)) = spec {
        curvereg::PrimeField::new(p)?;
    }
    Ok(spec)
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, format!("{text}\n")).map_err(Error::from)
}

fn timed_json(t: &TimedReport) -> Result<String, Error> {
    // Validates the report body before emitting it.
    t.report.to_validated_json()?;
    Ok(serde_json::to_string_pretty(t)?)
}

/// The non-array entries of a JSON object, for one-line display.
fn scalars(v: &serde_json::Value) -> serde_json::Value {
    let m: serde_json::Map<_, _> = v
        .as_object()
        .map(|m| m.iter().filter(|(_, x)| !x.is_array()).map(|(k, x)| (k.clone(), x.clone())).collect())
        .unwrap_or_default();
    serde_json::Value::Object(m)
}

/// Writes to stdout; a closed pipe ends the output silently.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        std::process::exit(EXIT_PASS as i32);
    }
}

fn verdict_lines(v: &TheoremVerdict) -> Vec<String> {
    let mut lines = vec![format!("{:<7} {}", v.theorem.as_str(), v.status)];
    for h in v.hypotheses.iter().filter(|h| !h.holds) {
        lines.push(format!("        hypothesis not met: {}", h.name));
    }
    if v.theorem == TheoremId::RkS {
        if let Some(rows) = v.computed.get("comparison").and_then(|c| c.as_array()) {
            lines.push(format!("        {:>4} {:>4} {:>12} {:>7}", "C_s", "m0", "uncorrected", "reg D0"));
            for r in rows {
                let cell = |k: &str| r[k].to_string();
                lines.push(format!(
                    "        {:>4} {:>4} {:>12} {:>7}",
                    cell("C_s"),
                    cell("m0"),
                    cell("uncorrected_bound"),
                    cell("reg_D0")
                ));
            }
        }
    } else if !v.predicted.as_object().is_some_and(|m| m.is_empty()) {
        lines.push(format!("        predicted {}", scalars(&v.predicted)));
        lines.push(format!("        computed  {}", scalars(&v.computed)));
    }
    lines.extend(v.notes.iter().map(|n| format!("        {n}")));
    lines
}

fn run(cli: Cli) -> Result<u8, Error> {
    let field = field_override(&cli.global)?;
    let base = AnalysisOptions { field, max_degree: cli.global.max_degree, theorems: TheoremId::ALL.to_vec() };
    match cli.command {
        Command::Analyze { file, out, json } => {
            let t = analyze_file(&file, &base)?;
            let text = timed_json(&t)?;
            if let Some(out) = out {
                write_file(&out, &text)?;
            }
            if json {
                emit(&format!("{text}\n"));
            } else {
                emit(&t.report.to_text());
            }
            Ok(if t.report.passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Verify { file, theorems, out, json } => {
            let opts = AnalysisOptions { theorems: parse_theorem_list(&theorems)?, ..base };
            let t = analyze_file(&file, &opts)?;
            if t.report.heuristic {
                eprintln!("warning: prime-field runs compute Hilbert data only; no checks were run");
            }
            let verdicts = serde_json::to_string_pretty(&t.report.verdicts)?;
            if let Some(out) = out {
                write_file(&out, &verdicts)?;
            }
            if json {
                emit(&format!("{verdicts}\n"));
            } else {
                let mut text = format!("{}: {}\n", t.report.input.name, t.report.input.polynomial);
                for v in &t.report.verdicts {
                    for l in verdict_lines(v) {
                        text.push_str(&l);
                        text.push('\n');
                    }
                }
                if let Some(e) = &t.report.expected {
                    for m in &e.mismatches {
                        text.push_str(&format!("expected {m}\n"));
                    }
                }
                emit(&text);
            }
            Ok(if t.report.passed() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Corpus { action: CorpusAction::Run { dir, jobs, out, json } } => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
            let run = run_corpus(&dir, &base, jobs)?;
            let summary = serde_json::to_string_pretty(&run.summary)?;
            if let Some(out) = out {
                let doc = json!({ "summary": run.summary, "timing": { "seconds": run.seconds } });
                write_file(&out, &serde_json::to_string_pretty(&doc)?)?;
            }
            if json {
                emit(&format!("{summary}\n"));
            } else {
                emit(&run.summary.to_table());
            }
            let s = &run.summary;
            Ok(if s.fail > 0 {
                EXIT_FAIL
            } else if s.error > 0 {
                EXIT_INPUT
            } else {
                EXIT_PASS
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { EXIT_FAIL })
        }
    }
}

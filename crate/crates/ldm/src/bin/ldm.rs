//! Command-line surface: build, verify, classify, and test labelability
//! of light dual multinets stored in the `ldm-1` JSON format.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/input error.
//! Reports go to stdout as JSON; diagnostics go to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ldm::constructions::{
    build_conic_line, build_order18, build_tetrahedron, build_triangle, LabelMode,
};
use ldm::field::Field;
use ldm::io::{read_multinet, write_multinet};
use ldm::loops::DEFAULT_CLOSURE_CAP;
use ldm::multinet::{LabeledMultinet, Obstruction};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ldm", about = "light dual multinet toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructionType {
    Triangle,
    ConicLine,
    Tetrahedron,
    Order18,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance of one of the four families
    Construct {
        #[arg(long = "type", value_enum)]
        ctype: ConstructionType,
        /// Family parameter m (ignored by order18)
        #[arg(long)]
        m: Option<usize>,
        /// Extension parameter for conic-line
        #[arg(long)]
        k: Option<usize>,
        /// Tetrahedron face (1..=4)
        #[arg(long)]
        face: Option<usize>,
        /// Seed for the tetrahedron projection center
        #[arg(long)]
        seed: Option<u64>,
        /// Field: prime:P or cyclotomic:N
        #[arg(long)]
        field: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check injectivity, disjointness, and the multinet law
    Verify { file: PathBuf },
    /// Count belonging lines per length
    Spectrum { file: PathBuf },
    /// Run the cover/conic/cubic classification cascade
    Classify { file: PathBuf },
    /// Test the group-labelability obstruction
    Labelcheck { file: PathBuf },
    /// Print the partial latin square (0 marks undetermined entries)
    Latin { file: PathBuf },
    /// Relabel through a belonging line by a principal isotope
    Isotope {
        file: PathBuf,
        /// Index into the sorted belonging-line list
        #[arg(long)]
        line: usize,
        /// First component label on the line (name or 0-based index)
        #[arg(long)]
        u: String,
        /// Second component label on the line (name or 0-based index)
        #[arg(long)]
        v: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_field(spec: &str) -> Result<Field, String> {
    let (kind, num) = spec
        .split_once(':')
        .ok_or_else(|| format!("bad field spec {spec:?}; expected prime:P or cyclotomic:N"))?;
    let n: u64 = num
        .parse()
        .map_err(|_| format!("bad field number {num:?}"))?;
    match kind {
        "prime" => Field::prime(n).map_err(|e| e.to_string()),
        "cyclotomic" => Ok(Field::cyclotomic(n)),
        _ => Err(format!("unknown field kind {kind:?}")),
    }
}

fn load(path: &PathBuf) -> Result<LabeledMultinet, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    read_multinet(&text).map_err(|e| e.to_string())
}

fn closure_cap() -> usize {
    std::env::var("LDM_CLOSURE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CLOSURE_CAP)
}

fn emit(report: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}

fn spectrum_json(m: &LabeledMultinet) -> Result<serde_json::Value, String> {
    let spec = m.length_spectrum().map_err(|e| e.to_string())?;
    Ok(spec
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect::<serde_json::Map<_, _>>()
        .into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct {
            ctype,
            m,
            k,
            face,
            seed,
            field,
            output,
        } => {
            let f = match parse_field(&field) {
                Ok(f) => f,
                Err(e) => return usage_error(e),
            };
            let built = match ctype {
                ConstructionType::Triangle => {
                    let Some(m) = m else {
                        return usage_error("--m is required for triangle");
                    };
                    build_triangle(m, &f)
                }
                ConstructionType::ConicLine => {
                    let Some(m) = m else {
                        return usage_error("--m is required for conic-line");
                    };
                    build_conic_line(m, k.unwrap_or(0), &f)
                }
                ConstructionType::Tetrahedron => {
                    let Some(m) = m else {
                        return usage_error("--m is required for tetrahedron");
                    };
                    build_tetrahedron(m, &f, face.unwrap_or(1), seed.unwrap_or(0))
                }
                ConstructionType::Order18 => build_order18(&f, LabelMode::FirstFit).or_else(|_| {
                    eprintln!(
                        "note: no latin completion of the partial square; \
                             writing an unlabeled instance"
                    );
                    build_order18(&f, LabelMode::Unlabeled)
                }),
            };
            let built = match built {
                Ok(b) => b,
                Err(e) => return usage_error(e),
            };
            let text = write_multinet(&built);
            if let Err(e) = std::fs::write(&output, text) {
                return usage_error(format!("{}: {e}", output.display()));
            }
            let spectrum = match spectrum_json(&built) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            emit(json!({
                "ok": true,
                "order": built.order(),
                "spectrum": spectrum,
                "provenance": built.provenance(),
                "output": output.display().to_string(),
            }));
            ExitCode::SUCCESS
        }
        Command::Verify { file } => {
            let m = match load(&file) {
                Ok(m) => m,
                Err(e) => return usage_error(e),
            };
            let rep = m.verify();
            emit(json!({
                "ok": rep.pass(),
                "injective": rep.injective,
                "injective_witness": rep.injective_witness,
                "disjoint": rep.disjoint,
                "disjoint_witness": rep.disjoint_witness,
                "law": rep.law,
                "law_witness": rep.law_witness,
            }));
            if rep.pass() {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Command::Spectrum { file } => {
            let m = match load(&file) {
                Ok(m) => m,
                Err(e) => return usage_error(e),
            };
            match spectrum_json(&m) {
                Ok(s) => {
                    emit(json!({"ok": true, "lengths": s}));
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Classify { file } => {
            let m = match load(&file) {
                Ok(m) => m,
                Err(e) => return usage_error(e),
            };
            match m.classify() {
                Ok(c) => {
                    emit(json!({
                        "ok": true,
                        "verdict": c.verdict.as_str(),
                        "lines": c
                            .lines
                            .iter()
                            .map(|l| l.coords().iter().map(|x| x.to_json()).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "conic": c.conic.as_ref().map(|q| {
                            q.coeffs().iter().map(|x| x.to_json()).collect::<Vec<_>>()
                        }),
                        "cubic": c.cubic.as_ref().map(|q| {
                            q.coeffs().iter().map(|x| x.to_json()).collect::<Vec<_>>()
                        }),
                    }));
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Labelcheck { file } => {
            let m = match load(&file) {
                Ok(m) => m,
                Err(e) => return usage_error(e),
            };
            match m.group_labeling_obstruction(closure_cap()) {
                Ok(Obstruction::Obstructed(t)) => {
                    emit(json!({"ok": true, "verdict": "OBSTRUCTED", "quotient_order": t}));
                    ExitCode::SUCCESS
                }
                Ok(Obstruction::Inconclusive) => {
                    emit(json!({"ok": true, "verdict": "INCONCLUSIVE"}));
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Latin { file } => {
            let m = match load(&file) {
                Ok(m) => m,
                Err(e) => return usage_error(e),
            };
            match m.partial_latin_square() {
                Ok(s) => {
                    let rows: Vec<Vec<usize>> = s
                        .rows()
                        .iter()
                        .map(|r| r.iter().map(|e| e.map_or(0, |x| x + 1)).collect())
                        .collect();
                    emit(json!({
                        "ok": true,
                        "order": s.order(),
                        "square": rows,
                        "undetermined": s.undetermined_count(),
                    }));
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Isotope {
            file,
            line,
            u,
            v,
            output,
        } => {
            let m = match load(&file) {
                Ok(m) => m,
                Err(e) => return usage_error(e),
            };
            let Some(table) = m.labels() else {
                return usage_error("multinet carries no label table");
            };
            let resolve = |token: &str| -> Option<usize> {
                table
                    .names()
                    .iter()
                    .position(|n| n == token)
                    .or_else(|| token.parse::<usize>().ok().filter(|&i| i < table.order()))
            };
            let (Some(ui), Some(vi)) = (resolve(&u), resolve(&v)) else {
                return usage_error("unknown label for --u or --v");
            };
            let records = m.belonging_lines();
            let Some(rec) = records.get(line) else {
                return usage_error(format!(
                    "line index {line} out of range (have {})",
                    records.len()
                ));
            };
            match m.relabel_through_line(rec, ui, vi) {
                Ok(out) => {
                    let text = write_multinet(&out);
                    if let Err(e) = std::fs::write(&output, text) {
                        return usage_error(format!("{}: {e}", output.display()));
                    }
                    emit(json!({
                        "ok": true,
                        "unit": out.labels().unwrap().identity(),
                        "output": output.display().to_string(),
                    }));
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 when the command succeeds or the checked property holds,
//! 1 when the property fails (evidence is printed), 2 on usage, I/O or
//! parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::adapt::{self, AdaptRelation, Mode};
use crate::ctl::{parse_ctl, sat_set};
use crate::export;
use crate::flatten::{build_flat, build_flat_seeded, display, FlatState};
use crate::gen::gen_random;
use crate::kripke::to_kripke;
use crate::model::{load_model, parse_model, to_dsl, validate, SbSystem, Severity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sbcheck", version, about = "Adaptability checker for two-level S[B] systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Weak,
    Strong,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Weak => Mode::Weak,
            ModeArg::Strong => Mode::Strong,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Flat,
    Kripke,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a model and report well-formedness diagnostics.
    Validate { file: PathBuf },
    /// Print the reachable flat LTS.
    Flatten {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide weak or strong adaptability of the system.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the weak adaptability relation, or the strong adaptation
    /// over the reachable steady states.
    Relation {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that a given relation is a weak or strong adaptation.
    VerifyRelation {
        file: PathBuf,
        #[arg(long)]
        relation: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Evaluate a CTL formula at the initial state or at `(q, r, ∅)`.
    Ctl {
        file: PathBuf,
        #[arg(long = "ctl")]
        formula: String,
        /// `<q>,<r>`; the structural id follows the last comma.
        #[arg(long)]
        at: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write the flat LTS or its Kripke structure as DOT or JSON.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long, value_enum, default_value = "flat")]
        stage: Stage,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a seeded random system in the model language.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long = "b-states", default_value_t = 6)]
        b_states: usize,
        #[arg(long = "s-states", default_value_t = 2)]
        s_states: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Error that ends the run with exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    color: bool,
}

impl Io<'_> {
    fn verdict(&self, holds: bool) -> String {
        let word = if holds { "holds" } else { "fails" };
        match (self.color, holds) {
            (false, _) => word.to_string(),
            (true, true) => format!("\x1b[32m{word}\x1b[0m"),
            (true, false) => format!("\x1b[31m{word}\x1b[0m"),
        }
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<SbSystem, Fatal> {
    load_model(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, io: &mut Io<'_>, text: &str) -> Result<(), Fatal> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Fatal(format!("{}: {e}", p.display()))),
        None => Ok(io.out.write_all(text.as_bytes())?),
    }
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn exit_for(holds: bool) -> i32 {
    if holds {
        EXIT_OK
    } else {
        EXIT_FAILS
    }
}

fn parse_at(sys: &SbSystem, at: &str) -> Result<(usize, usize), Fatal> {
    let (q, r) = at.rsplit_once(',').ok_or_else(|| Fatal(format!("--at expects <q>,<r>, got `{at}`")))?;
    let qi = sys.b.index_of(q.trim()).ok_or_else(|| Fatal(format!("unknown behavioural state `{q}`")))?;
    let ri = sys.s.index_of(r.trim()).ok_or_else(|| Fatal(format!("unknown structural state `{r}`")))?;
    if !sys.satisfies_label(qi, ri) {
        return Err(Fatal(format!("`{q}` does not satisfy the constraint of `{r}`")));
    }
    Ok((qi, ri))
}

fn execute(cmd: Command, io: &mut Io<'_>) -> Result<i32, Fatal> {
    match cmd {
        Command::Validate { file } => {
            let sys = parse_model(&read(&file)?).map_err(|e| Fatal(format!("{}: {e}", file.display())))?;
            let diags = validate(&sys);
            for d in &diags {
                writeln!(io.out, "{d}")?;
            }
            let ok = !diags.iter().any(|d| d.severity == Severity::Error);
            if ok {
                writeln!(
                    io.out,
                    "{}: ok ({} behavioural states, {} structural states)",
                    sys.name,
                    sys.b.len(),
                    sys.s.len()
                )?;
            }
            Ok(exit_for(ok))
        }
        Command::Flatten { file, format } => {
            let sys = load(&file)?;
            let flat = build_flat(&sys);
            let text = match format {
                Format::Json => export::flat_json(&sys, &flat) + "\n",
                Format::Dot => export::flat_dot(&sys, &flat),
                Format::Text => {
                    let mut s = format!("{}: {} states, {} transitions\n", sys.name, flat.len(), flat.edges().len());
                    for &(a, _, b) in flat.edges() {
                        s += &format!("{} -> {}\n", display(&sys, flat.state(a)), display(&sys, flat.state(b)));
                    }
                    for i in (0..flat.len()).filter(|&i| flat.out_degree(i) == 0) {
                        s += &format!("dead: {}\n", display(&sys, flat.state(i)));
                    }
                    s
                }
            };
            write_to(None, io, &text)?;
            Ok(EXIT_OK)
        }
        Command::Check { file, mode, format } => {
            let sys = load(&file)?;
            let v = adapt::check(&sys, mode.into());
            match format {
                Format::Json => write_to(None, io, &json_text(&v.to_json(&sys)))?,
                _ => {
                    let text = v.render(&sys);
                    let text = text.replacen(if v.holds { "holds" } else { "fails" }, &io.verdict(v.holds), 1);
                    write_to(None, io, &text)?
                }
            }
            Ok(exit_for(v.holds))
        }
        Command::Relation { file, mode, format } => {
            let sys = load(&file)?;
            let (rel, holds) = match Mode::from(mode) {
                Mode::Weak => {
                    let rel = adapt::weak_relation(&sys);
                    let holds = rel.contains(sys.b.initial(), sys.s.initial());
                    (Some(rel), holds)
                }
                Mode::Strong => {
                    let rel = adapt::strong_relation(&sys);
                    let holds = rel.is_some();
                    (rel, holds)
                }
            };
            match format {
                Format::Json => {
                    let v = json!({
                        "system": sys.name,
                        "mode": Mode::from(mode).to_string(),
                        "holds": holds,
                        "relation": rel.as_ref().map(|r| r.to_json(&sys)),
                    });
                    write_to(None, io, &json_text(&v))?
                }
                _ => match &rel {
                    Some(r) => write_to(None, io, &r.render(&sys))?,
                    None => {
                        writeln!(io.out, "# {}: no strong adaptation contains the reachable steady states", sys.name)?
                    }
                },
            }
            Ok(exit_for(holds))
        }
        Command::VerifyRelation { file, relation, mode } => {
            let sys = load(&file)?;
            let rel = AdaptRelation::parse(&sys, &read(&relation)?)
                .map_err(|e| Fatal(format!("{}: {e}", relation.display())))?;
            let report = match Mode::from(mode) {
                Mode::Weak => adapt::is_weak_adaptation(&sys, &rel),
                Mode::Strong => adapt::is_strong_adaptation(&sys, &rel),
            };
            write_to(None, io, &report.render(&sys))?;
            writeln!(io.out, "{} adaptation ({} pairs): {}", Mode::from(mode), rel.len(), io.verdict(report.holds()))?;
            Ok(exit_for(report.holds()))
        }
        Command::Ctl { file, formula, at, format } => {
            let sys = load(&file)?;
            let phi = parse_ctl(&formula).map_err(|e| Fatal(format!("--ctl: {e}")))?;
            let flat = match &at {
                Some(at) => {
                    let (q, r) = parse_at(&sys, at)?;
                    build_flat_seeded(&sys, &[FlatState::steady(q, r)])
                }
                None => build_flat(&sys),
            };
            let k = to_kripke(&flat);
            let holds = sat_set(&k, &phi).contains(k.initial());
            let state = display(&sys, flat.state(flat.initial())).to_string();
            match format {
                Format::Json => {
                    let v = json!({"system": sys.name, "formula": phi.to_string(), "state": state, "holds": holds});
                    write_to(None, io, &json_text(&v))?
                }
                _ => writeln!(io.out, "{phi} {} at {state}", io.verdict(holds))?,
            }
            Ok(exit_for(holds))
        }
        Command::Export { file, format, stage, output } => {
            let sys = load(&file)?;
            let flat = build_flat(&sys);
            let text = match (stage, format) {
                (Stage::Flat, ExportFormat::Dot) => export::flat_dot(&sys, &flat),
                (Stage::Flat, ExportFormat::Json) => export::flat_json(&sys, &flat) + "\n",
                (Stage::Kripke, ExportFormat::Dot) => export::kripke_dot(&sys, &flat, &to_kripke(&flat)),
                (Stage::Kripke, ExportFormat::Json) => export::kripke_json(&sys, &flat, &to_kripke(&flat)) + "\n",
            };
            write_to(output.as_deref(), io, &text)?;
            Ok(EXIT_OK)
        }
        Command::Gen { seed, b_states, s_states, density, output } => {
            let sys = gen_random(seed, b_states, s_states, density)?;
            write_to(output.as_deref(), io, &to_dsl(&sys))?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs with explicit output streams; `color` enables ANSI verdicts.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { out, color };
    match execute(cli.command, &mut io) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

/// Entry point used by the binary. `SBCHECK_COLOR=1` turns on coloured
/// verdicts.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let color = std::env::var("SBCHECK_COLOR").is_ok_and(|v| v == "1");
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock(), color)
}

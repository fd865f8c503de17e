//! The `wdta` command-line interface.
//!
//! Exit codes: 0 on success, 1 on domain errors (unreadable or malformed
//! files, inexact semifields, a dirty comparison, a failed check), 2 on
//! usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::automaton::Wdta;
use crate::format::{parse_automaton, serialize_automaton, AnyWdta};
use crate::hyperminimize::hyper_minimize;
use crate::minimize::minimize;
use crate::oracle::{
    compare_languages, hyper_minimality_check, random_wdta, RandomSpec, ReportDisplay,
};
use crate::semifield::{
    Boolean, MaxTimes, Rational, Semifield, SemifieldKind, Tropical, TropicalFloat,
};
use crate::terms::parse_term;
use crate::topology::StateClassification;
use crate::with_any_wdta;

#[derive(Debug, Parser)]
#[command(
    name = "wdta",
    version,
    about = "Deterministic weighted tree automata: evaluation, minimization and hyper-minimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the weight the automaton assigns to a tree.
    Eval {
        file: PathBuf,
        /// Tree in term syntax, e.g. `g(g(a))`.
        #[arg(short, long)]
        term: String,
    },
    /// Write the minimal equivalent automaton.
    Minimize {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Write the hyper-minimal almost-equivalent automaton.
    Hyperminimize {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
        /// Print the pipeline report (to stderr when writing the automaton to stdout).
        #[arg(long)]
        report: bool,
    },
    /// Print the kernel, preamble, co-kernel and co-preamble states.
    Kernels { file: PathBuf },
    /// Compare two automata on all trees up to a height; exits 1 on a dirty verdict.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        height: usize,
        /// The verdict is clean if no mismatch has height in `[height - tail, height]`.
        #[arg(long, default_value_t = 3)]
        tail: usize,
    },
    /// Decide hyper-minimality; exits 1 with a witness if the check fails.
    Check { file: PathBuf },
    /// Emit a random trimmed automaton.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct Output {
    /// Output file; stdout if absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of states.
    #[arg(long, default_value_t = 5)]
    states: usize,
    /// Maximum number of symbols.
    #[arg(long, default_value_t = 3)]
    symbols: usize,
    #[arg(long, default_value_t = 2)]
    max_rank: usize,
    #[arg(long, default_value = "rational", value_parser = parse_kind_arg)]
    kind: SemifieldKind,
    #[arg(long, default_value_t = 0.5)]
    sink_probability: f64,
    #[arg(long, default_value_t = 0.8)]
    density: f64,
    #[arg(long, default_value_t = 0.3)]
    clone_rate: f64,
    #[command(flatten)]
    output: Output,
}

fn parse_kind_arg(s: &str) -> Result<SemifieldKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn probability(name: &str, p: f64) -> Result<f64, String> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("--{name} must lie in [0, 1], got {p}"))
    }
}

/// Runs the binary with the process arguments and standard streams.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

fn read(path: &Path) -> Result<AnyWdta, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_automaton(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, output: &Output, out: &mut dyn Write) -> Result<(), String> {
    match &output.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::Eval { file, term } => {
            let any = read(&file)?;
            let weight = with_any_wdta!(&any, a => eval(a, &term)?.to_string());
            writeln!(out, "{weight}").map_err(io)?;
        }
        Command::Minimize { file, output } => {
            let any = read(&file)?;
            let text = with_any_wdta!(&any, a => serialize_automaton(&minimize(a).map_err(|e| e.to_string())?));
            emit(&text, &output, out)?;
        }
        Command::Hyperminimize {
            file,
            output,
            report,
        } => {
            let any = read(&file)?;
            let (text, summary) = with_any_wdta!(&any, a => {
                let (h, r) = hyper_minimize(a).map_err(|e| e.to_string())?;
                (serialize_automaton(&h), r.to_string())
            });
            emit(&text, &output, out)?;
            if report {
                let sink: &mut dyn Write = if output.output.is_some() { out } else { err };
                sink.write_all(summary.as_bytes()).map_err(io)?;
            }
        }
        Command::Kernels { file } => {
            let any = read(&file)?;
            let text = with_any_wdta!(&any, a => kernels(a)?);
            out.write_all(text.as_bytes()).map_err(io)?;
        }
        Command::Compare { a, b, height, tail } => {
            if tail > height {
                return Err(format!("--tail ({tail}) exceeds --height ({height})"));
            }
            let (x, y) = (read(&a)?, read(&b)?);
            let (text, clean) = match (&x, &y) {
                (AnyWdta::Boolean(x), AnyWdta::Boolean(y)) => compare(x, y, height, tail)?,
                (AnyWdta::Rational(x), AnyWdta::Rational(y)) => compare(x, y, height, tail)?,
                (AnyWdta::Tropical(x), AnyWdta::Tropical(y)) => compare(x, y, height, tail)?,
                (AnyWdta::MaxTimes(x), AnyWdta::MaxTimes(y)) => compare(x, y, height, tail)?,
                (AnyWdta::TropicalFloat(x), AnyWdta::TropicalFloat(y)) => {
                    compare(x, y, height, tail)?
                }
                _ => {
                    return Err(format!(
                        "semifield mismatch: `{}` vs `{}`",
                        x.kind(),
                        y.kind()
                    ))
                }
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            return Ok(if clean { 0 } else { 1 });
        }
        Command::Check { file } => {
            let any = read(&file)?;
            let verdict = with_any_wdta!(&any, a => check(a)?);
            return Ok(match verdict {
                None => {
                    writeln!(out, "hyper-minimal").map_err(io)?;
                    0
                }
                Some(witness) => {
                    writeln!(out, "not hyper-minimal: {witness}").map_err(io)?;
                    1
                }
            });
        }
        Command::Gen(args) => {
            let spec = RandomSpec {
                max_states: args.states.max(1),
                max_symbols: args.symbols.max(1),
                max_rank: args.max_rank,
                sink_probability: probability("sink-probability", args.sink_probability)?,
                density: probability("density", args.density)?,
                clone_rate: probability("clone-rate", args.clone_rate)?,
            };
            let text = match args.kind {
                SemifieldKind::Boolean => {
                    serialize_automaton(&random_wdta::<Boolean>(args.seed, &spec))
                }
                SemifieldKind::Rational => {
                    serialize_automaton(&random_wdta::<Rational>(args.seed, &spec))
                }
                SemifieldKind::Tropical => {
                    serialize_automaton(&random_wdta::<Tropical>(args.seed, &spec))
                }
                SemifieldKind::MaxTimes => {
                    serialize_automaton(&random_wdta::<MaxTimes>(args.seed, &spec))
                }
                SemifieldKind::TropicalFloat => {
                    serialize_automaton(&random_wdta::<TropicalFloat>(args.seed, &spec))
                }
            };
            emit(&text, &args.output, out)?;
        }
    }
    Ok(0)
}

fn eval<W: Semifield>(a: &Wdta<W>, term: &str) -> Result<W, String> {
    let tree = parse_term(term, a.alphabet(), &[]).map_err(|e| e.to_string())?;
    a.semantics(&tree).map_err(|e| e.to_string())
}

fn kernels<W: Semifield>(a: &Wdta<W>) -> Result<String, String> {
    let trimmed = a.trim();
    let c = StateClassification::compute(&trimmed).map_err(|e| e.to_string())?;
    let set = |v: &[bool]| format!("{{{}}}", trimmed.state_set_names(v).join(","));
    let mut text = String::new();
    let reached = a.reachable();
    if reached.iter().any(|&r| !r) {
        let dropped: Vec<bool> = reached.iter().map(|&r| !r).collect();
        text.push_str(&format!(
            "unreachable = {{{}}}\n",
            a.state_set_names(&dropped).join(",")
        ));
    }
    text.push_str(&format!("kernel = {}\n", set(&c.kernel)));
    text.push_str(&format!("preamble = {}\n", set(&c.preamble())));
    text.push_str(&format!("cokernel = {}\n", set(&c.cokernel)));
    text.push_str(&format!("copreamble = {}\n", set(&c.copreamble())));
    Ok(text)
}

fn compare<W: Semifield>(
    a: &Wdta<W>,
    b: &Wdta<W>,
    height: usize,
    tail: usize,
) -> Result<(String, bool), String> {
    let report = compare_languages(a, b, height, tail).map_err(|e| e.to_string())?;
    let text = ReportDisplay {
        report: &report,
        automaton: a,
    }
    .to_string();
    Ok((text, report.is_clean()))
}

fn check<W: Semifield>(a: &Wdta<W>) -> Result<Option<String>, String> {
    if !W::EXACT {
        return Err(format!("semifield `{}` has inexact equality", W::KIND));
    }
    Ok(hyper_minimality_check(a).err().map(|w| w.to_string()))
}

//! Command-line front end.
//!
//! JSON goes to standard output, human-readable summaries to standard error.
//! Exit codes: 0 success, 2 negative semantic outcome (fails, rules out, no
//! embedding, verification failure), 3 search budget exhausted, 64 usage
//! error, 66 unreadable or malformed input file.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AtomStructure, Element};
use crate::bounds::{emit_table, TableFormat};
use crate::eqlang::{holds_with_workers, parse_equation, Equation};
use crate::geometry::{bruck_ryser, ProjectivePlane};
use crate::lyndon::{build_lyndon, representability_status};
use crate::representation::build_affine_representation_unchecked;
use crate::subalgebra::{
    find_embedding_with_budget, generate, EmbeddingOutcome, SubalgebraJson, DEFAULT_EMBED_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 66;

#[derive(Debug, Parser)]
#[command(name = "relalg", version, about = "Finite relation algebra workbench")]
struct Cli {
    /// Worker threads for exhaustive checks. Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the Lyndon algebra E_{n+1} as JSON.
    Lyndon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the relation algebra axioms on an atom structure.
    Axioms {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Emit PG(2, q) as JSON.
    Plane {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        validate: bool,
    },
    /// Apply the Bruck–Ryser test to a plane order.
    Br {
        #[arg(long)]
        order: u64,
    },
    /// Build the affine representation of E_{q+2} from PG(2, q).
    Repr {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Representability status of E_{n+1}.
    Status {
        #[arg(long)]
        n: usize,
    },
    /// Equation tools.
    Eq {
        #[command(subcommand)]
        command: EqCommand,
    },
    /// Subalgebra generated by a list of elements.
    Subalg {
        #[arg(long)]
        algebra: PathBuf,
        /// Comma-separated elements, each a `+`-joined list of atom names.
        #[arg(long, allow_hyphen_values = true)]
        generators: String,
    },
    /// Search for an embedding between atom structures.
    Embed {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EMBED_BUDGET)]
        budget: u64,
    },
    /// Table of equation-complexity lower bounds.
    Bounds {
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum EqCommand {
    /// Check an equation exhaustively over an algebra.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        equation: String,
        /// JSON array of elements (lists of atom names) or a subalgebra dump.
        #[arg(long)]
        restrict: Option<PathBuf>,
    },
    /// Print the length of an equation.
    Length {
        #[arg(long, allow_hyphen_values = true)]
        equation: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Everything a command produced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

#[derive(Default)]
struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Output {
    fn json(&mut self, value: &impl Serialize) {
        self.stdout
            .push_str(&serde_json::to_string_pretty(value).expect("serializable"));
        self.stdout.push('\n');
    }

    fn note(&mut self, line: impl AsRef<str>) {
        self.stderr.push_str(line.as_ref());
        self.stderr.push('\n');
    }

    /// Writes `value` to `out` when given, else to standard output.
    fn emit(&mut self, value: &impl Serialize, out: Option<&Path>) -> Result<(), Failure> {
        match out {
            Some(path) => {
                let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
                fs::write(path, text)
                    .map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
                self.note(format!("wrote {}", path.display()));
                Ok(())
            }
            None => {
                self.json(value);
                Ok(())
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<AtomStructure, Failure> {
    AtomStructure::from_json_str(&read(path)?)
        .map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse_eq(text: &str) -> Result<Equation, Failure> {
    parse_equation(text).map_err(|e| usage(format!("equation syntax error: {e}")))
}

fn parse_element(alg: &AtomStructure, text: &str) -> Result<Element, Failure> {
    let text = text.trim();
    if text == "0" {
        return Ok(Element::EMPTY);
    }
    let names: Vec<&str> = text.split('+').map(str::trim).collect();
    alg.element_from_names(&names)
        .map_err(|e| usage(format!("bad element `{text}`: {e}")))
}

fn load_restriction(path: &Path, alg: &AtomStructure) -> Result<Vec<Element>, Failure> {
    let text = read(path)?;
    let bad = |e: &dyn std::fmt::Display| input(format!("{}: {e}", path.display()));
    let lists: Vec<Vec<String>> = match serde_json::from_str::<SubalgebraJson>(&text) {
        Ok(sub) => sub.elements,
        Err(_) => serde_json::from_str(&text).map_err(|e| bad(&e))?,
    };
    lists
        .iter()
        .map(|names| alg.element_from_names(names).map_err(|e| bad(&e)))
        .collect()
}

fn execute(cli: Cli, out: &mut Output) -> Result<(), Failure> {
    let workers = cli
        .threads
        .map_or_else(crate::eqlang::default_workers, |t| t as usize);
    match cli.command {
        Command::Lyndon { n, out: file } => {
            let alg = build_lyndon(n).map_err(|e| usage(e.to_string()))?;
            out.emit(&alg.to_json(), file.as_deref())?;
            out.note(format!("{}: {} atoms", alg.name(), alg.atom_count()));
        }
        Command::Axioms { algebra } => {
            let alg = load_algebra(&algebra)?;
            let report = alg.check_axioms();
            out.json(&report.to_json(&alg));
            if report.all_pass() {
                out.note(format!("{}: all axioms hold", alg.name()));
            } else {
                let failed: Vec<_> = report.failed().iter().map(|a| a.name()).collect();
                out.note(format!("{}: fails {}", alg.name(), failed.join(", ")));
                out.code = EXIT_NEGATIVE;
            }
        }
        Command::Plane {
            q,
            out: file,
            validate,
        } => {
            let plane = ProjectivePlane::build(q).map_err(|e| usage(e.to_string()))?;
            out.emit(&plane.to_json(), file.as_deref())?;
            out.note(format!("PG(2,{q}): {} points", plane.points().len()));
            if validate {
                match plane.validate() {
                    Ok(()) => out.note("valid"),
                    Err(v) => {
                        out.note(format!(
                            "invalid: {}",
                            serde_json::to_string(&v).expect("serializable")
                        ));
                        out.code = EXIT_NEGATIVE;
                    }
                }
            }
        }
        Command::Br { order } => {
            let verdict = bruck_ryser(order);
            out.json(&verdict);
            if verdict.rules_out() {
                out.note(format!("no projective plane of order {order}"));
                out.code = EXIT_NEGATIVE;
            } else {
                out.note(format!("order {order}: no conclusion"));
            }
        }
        Command::Repr {
            q,
            verify,
            out: file,
        } => {
            let plane = ProjectivePlane::build(q).map_err(|e| usage(e.to_string()))?;
            let rep =
                build_affine_representation_unchecked(&plane).map_err(|e| usage(e.to_string()))?;
            out.emit(&rep.to_json(), file.as_deref())?;
            out.note(format!("{} on {} points", rep.target().name(), rep.base()));
            if verify {
                match rep.verify() {
                    Ok(()) => out.note("verified"),
                    Err(v) => {
                        out.note(format!(
                            "verification failed: {}",
                            serde_json::to_string(&v).expect("serializable")
                        ));
                        out.code = EXIT_NEGATIVE;
                    }
                }
            }
        }
        Command::Status { n } => {
            let status = representability_status(n).map_err(|e| usage(e.to_string()))?;
            let value = status.to_json(n);
            out.note(format!(
                "E{}: {}",
                n + 1,
                value["status"].as_str().unwrap_or("?")
            ));
            out.json(&value);
        }
        Command::Eq { command } => match command {
            EqCommand::Check {
                algebra,
                equation,
                restrict,
            } => {
                let alg = load_algebra(&algebra)?;
                let eq = parse_eq(&equation)?;
                let domain = restrict
                    .as_deref()
                    .map(|p| load_restriction(p, &alg))
                    .transpose()?;
                let result = holds_with_workers(&eq, &alg, domain.as_deref(), workers)
                    .map_err(|e| usage(e.to_string()))?;
                out.json(&result.to_json(&alg));
                if result.holds() {
                    out.note(format!("holds in {}", alg.name()));
                } else {
                    out.note(format!("fails in {}", alg.name()));
                    out.code = EXIT_NEGATIVE;
                }
            }
            EqCommand::Length { equation } => {
                let eq = parse_eq(&equation)?;
                out.stdout.push_str(&format!("{}\n", eq.length()));
            }
        },
        Command::Subalg {
            algebra,
            generators,
        } => {
            let alg = load_algebra(&algebra)?;
            let gens = generators
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_element(&alg, s))
                .collect::<Result<Vec<_>, _>>()?;
            let sub = generate(&alg, &gens);
            let mut value = serde_json::to_value(sub.to_json()).expect("serializable");
            value["size"] = json!(sub.len());
            value["proper"] = json!(sub.is_proper());
            out.json(&value);
            out.note(format!(
                "{} elements, {}",
                sub.len(),
                if sub.is_proper() {
                    "proper"
                } else {
                    "not proper"
                }
            ));
        }
        Command::Embed {
            source,
            target,
            budget,
        } => {
            let src = load_algebra(&source)?;
            let tgt = load_algebra(&target)?;
            let outcome =
                find_embedding_with_budget(&src, &tgt, budget).map_err(|e| input(e.to_string()))?;
            match outcome {
                EmbeddingOutcome::Found(emb) => {
                    out.json(&emb.to_json(&src, &tgt));
                    out.note(format!("{} embeds into {}", src.name(), tgt.name()));
                }
                EmbeddingOutcome::None => {
                    out.json(&Value::Null);
                    out.note(format!("{} does not embed into {}", src.name(), tgt.name()));
                    out.code = EXIT_NEGATIVE;
                }
                EmbeddingOutcome::Exhausted { nodes } => {
                    out.json(&Value::Null);
                    out.note(format!("search budget exhausted after {nodes} nodes"));
                    out.code = EXIT_EXHAUSTED;
                }
            }
        }
        Command::Bounds { n_max, format } => {
            let format = match format {
                Format::Csv => TableFormat::Csv,
                Format::Json => TableFormat::Json,
            };
            out.stdout.push_str(&emit_table(n_max, format));
        }
    }
    Ok(())
}

/// Runs the command line `args`, whose first item is the program name.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = Output::default();
    match execute(cli, &mut out) {
        Ok(()) => CommandResult {
            code: out.code,
            stdout: out.stdout,
            stderr: out.stderr,
        },
        Err(Failure { code, message }) => CommandResult {
            code,
            stdout: String::new(),
            stderr: format!("{}error: {message}\n", out.stderr),
        },
    }
}

/// Entry point for the binary; returns the exit code.
pub fn main() -> i32 {
    use std::io::Write;
    let result = run(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(result.stdout.as_bytes());
    let _ = std::io::stderr().write_all(result.stderr.as_bytes());
    result.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandResult {
        run(std::iter::once("relalg").chain(args.iter().copied()))
    }

    #[test]
    fn length() {
        let r = run_args(&["eq", "length", "--equation", "(x + y) . z = x . z + y . z"]);
        assert_eq!((r.code, r.stdout.as_str()), (0, "12\n"));
    }

    #[test]
    fn syntax_error_is_usage() {
        let r = run_args(&["eq", "length", "--equation", "x + = y"]);
        assert_eq!(r.code, EXIT_USAGE);
        assert!(r.stderr.contains("position 4"));
    }

    #[test]
    fn bad_flags_are_usage() {
        assert_eq!(run_args(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["br"]).code, EXIT_USAGE);
        assert_eq!(
            run_args(&["--threads", "0", "br", "--order", "6"]).code,
            EXIT_USAGE
        );
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn missing_file() {
        let r = run_args(&["axioms", "--algebra", "/nonexistent/alg.json"]);
        assert_eq!(r.code, EXIT_INPUT);
    }

    #[test]
    fn bruck_ryser_codes() {
        let r = run_args(&["br", "--order", "54"]);
        assert_eq!(r.code, EXIT_NEGATIVE);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["outcome"], "rules_out");
        assert_eq!(run_args(&["br", "--order", "10"]).code, EXIT_OK);
    }

    #[test]
    fn repr_q2_fails_verification() {
        let r = run_args(&["repr", "--q", "2", "--verify"]);
        assert_eq!(r.code, EXIT_NEGATIVE, "{}", r.stderr);
        assert!(r.stderr.contains("composition"));
        assert_eq!(run_args(&["repr", "--q", "3", "--verify"]).code, EXIT_OK);
    }
}

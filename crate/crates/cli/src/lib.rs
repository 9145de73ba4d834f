//! The `dchain` command line: check proof files, compute with terms, run the
//! standard library suite and ask the doors heuristic for maps.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use dchain::doors::{self, Synthesis};
use dchain::kernel::{self, DEFAULT_FUEL};
use dchain::stdlib::{self, DeclError, LoadError};
use dchain::surface::{parse_term_with, print_term_in};
use dchain::{Context, Environment, Fuel, KernelError, Tm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FUEL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "dchain", version, about = "Checks deductive chains in dependent type theory")]
pub struct Cli {
    /// Evaluation budget per declaration or query.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    pub fuel: u64,
    /// Start from an empty environment.
    #[arg(long, global = true)]
    pub no_stdlib: bool,
    /// Print the composite witness of each verified theorem.
    #[arg(long, global = true)]
    pub print_witness: bool,
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify every declaration of a file on top of the standard library.
    Check { file: PathBuf },
    /// Print the normal form of a term.
    Normalize {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// A variable in scope, as `name : type`. Repeatable.
        #[arg(long = "var", short = 'v')]
        vars: Vec<String>,
    },
    /// Decide definitional equality of two terms.
    Eq {
        left: String,
        right: String,
        #[arg(long = "var", short = 'v')]
        vars: Vec<String>,
    },
    /// Search for a map from one type to another.
    Doors {
        source: String,
        target: String,
        #[arg(long = "var", short = 'v')]
        vars: Vec<String>,
        #[arg(long, default_value_t = doors::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Re-verify every theorem of the standard library.
    Stdlib,
}

/// Exit code and text produced by one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    fn out(code: i32, stdout: String) -> Self {
        Run {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: i32, stderr: String) -> Self {
        Run {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Serialize)]
struct JsonEntry {
    name: String,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    link: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

#[derive(Serialize)]
struct JsonReport {
    ok: bool,
    results: Vec<JsonEntry>,
}

/// Runs the command line `args`, the first of which is the program name.
pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Run::out(code, text)
            } else {
                Run::err(code, text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Run {
    let env = if cli.no_stdlib {
        Environment::new()
    } else {
        match stdlib::load_with(cli.fuel) {
            Ok(env) => env,
            Err(e) => return load_failure(&e),
        }
    };
    match &cli.command {
        Command::Check { file } => check(cli, &env, file),
        Command::Normalize { expr, vars } => normalize(cli, &env, vars, expr),
        Command::Eq { left, right, vars } => equal(cli, &env, vars, left, right),
        Command::Doors {
            source,
            target,
            vars,
            depth,
        } => synthesize(cli, &env, vars, source, target, *depth),
        Command::Stdlib => verify_stdlib(cli, &env),
    }
}

fn load_failure(e: &LoadError) -> Run {
    let code = match e {
        LoadError::Declaration { source, .. } if source.is_fuel_exhausted() => EXIT_FUEL,
        LoadError::Declaration { .. } => EXIT_FAIL,
        _ => EXIT_USAGE,
    };
    Run::err(code, format!("error: standard library: {e}\n"))
}

fn failure_code(errors: &[&DeclError]) -> i32 {
    if errors.iter().any(|e| e.is_fuel_exhausted()) {
        EXIT_FUEL
    } else if errors.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn render(cli: &Cli, entries: Vec<JsonEntry>) -> String {
    if cli.json {
        let ok = entries.iter().all(|e| e.ok);
        let mut s = serde_json::to_string_pretty(&JsonReport { ok, results: entries }).expect("serializable report");
        s.push('\n');
        return s;
    }
    let mut s = String::new();
    for e in entries {
        if e.ok {
            s.push_str(&format!("OK {}\n", e.name));
        } else {
            s.push_str(&format!(
                "FAIL {} {} {}\n",
                e.name,
                e.link.unwrap_or(0),
                e.reason.as_deref().unwrap_or("")
            ));
        }
        if let Some(w) = e.witness {
            s.push_str(&format!("  witness: {w}\n"));
        }
    }
    s
}

fn check(cli: &Cli, env: &Environment, file: &PathBuf) -> Run {
    let shown = file.display().to_string();
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return Run::err(EXIT_USAGE, format!("error: {shown}: {e}\n")),
    };
    let (_, outcomes) = match stdlib::check_source(env, &text, cli.fuel) {
        Ok(r) => r,
        Err(e) => return Run::err(EXIT_USAGE, format!("error: {shown}:{e}\n")),
    };
    let mut errors = Vec::new();
    let mut entries = Vec::new();
    for o in &outcomes {
        match &o.result {
            Ok(result) => {
                if !o.is_theorem {
                    continue;
                }
                let witness = match (cli.print_witness, result) {
                    (true, Some(r)) => {
                        let names = theorem_names(env, &text, &o.name);
                        Some(print_term_in(&names, &r.witness))
                    }
                    _ => None,
                };
                entries.push(JsonEntry {
                    name: o.name.clone(),
                    ok: true,
                    link: None,
                    reason: None,
                    witness,
                });
            }
            Err(e) => {
                errors.push(e);
                entries.push(JsonEntry {
                    name: o.name.clone(),
                    ok: false,
                    link: Some(e.link_index()),
                    reason: Some(format!("{shown}: {e}")),
                    witness: None,
                });
            }
        }
    }
    Run::out(failure_code(&errors), render(cli, entries))
}

/// Telescope names of theorem `name` as declared in `text`.
fn theorem_names(env: &Environment, text: &str, name: &str) -> Vec<String> {
    dchain::surface::parse_file_with(env, text)
        .ok()
        .and_then(|f| {
            f.declarations.into_iter().find_map(|d| match d {
                dchain::surface::Decl::Theorem { name: n, telescope, .. } if n == name => Some(telescope.names()),
                _ => None,
            })
        })
        .unwrap_or_default()
}

fn verify_stdlib(cli: &Cli, env: &Environment) -> Run {
    let report = stdlib::verify_all_with(env, cli.fuel);
    let mut errors = Vec::new();
    let mut entries = Vec::new();
    for entry in &report.entries {
        let witness = if cli.print_witness && entry.result.is_ok() {
            env.theorem(&entry.name).and_then(|record| {
                let scope = env.prefix(env.position(&entry.name)?);
                let r = stdlib::verify_theorem(&scope, record, &Fuel::new(cli.fuel)).ok()?;
                Some(print_term_in(&record.telescope.names(), &r.witness))
            })
        } else {
            None
        };
        match &entry.result {
            Ok(()) => entries.push(JsonEntry {
                name: entry.name.clone(),
                ok: true,
                link: None,
                reason: None,
                witness,
            }),
            Err(e) => {
                errors.push(e);
                entries.push(JsonEntry {
                    name: entry.name.clone(),
                    ok: false,
                    link: Some(e.link_index()),
                    reason: Some(e.to_string()),
                    witness: None,
                });
            }
        }
    }
    Run::out(failure_code(&errors), render(cli, entries))
}

enum Failure {
    Usage(String),
    Kernel(KernelError),
}

impl Failure {
    fn into_run(self) -> Run {
        match self {
            Failure::Usage(m) => Run::err(EXIT_USAGE, format!("error: {m}\n")),
            Failure::Kernel(e) => {
                let code = if e.is_fuel_exhausted() { EXIT_FUEL } else { EXIT_FAIL };
                Run::err(code, format!("error: {e}\n"))
            }
        }
    }
}

/// Builds the context given by `--var name : type` flags.
fn scope(env: &Environment, vars: &[String], fuel: &Fuel) -> Result<Context, Failure> {
    let mut ctx = Context::new();
    for v in vars {
        let (name, ty) = v
            .split_once(':')
            .ok_or_else(|| Failure::Usage(format!("`{v}` is not of the form `name : type`")))?;
        let ty = parse(env, &ctx, ty)?;
        kernel::check_type(env, &ctx, &ty, fuel).map_err(Failure::Kernel)?;
        ctx.push(name.trim(), ty);
    }
    Ok(ctx)
}

fn parse(env: &Environment, ctx: &Context, text: &str) -> Result<Tm, Failure> {
    parse_term_with(env, ctx, text).map_err(|e| Failure::Usage(format!("`{text}`: {e}")))
}

fn json_line(value: serde_json::Value) -> String {
    format!("{value}\n")
}

fn normalize(cli: &Cli, env: &Environment, vars: &[String], expr: &str) -> Run {
    let fuel = Fuel::new(cli.fuel);
    let result = (|| -> Result<(String, String), Failure> {
        let ctx = scope(env, vars, &fuel)?;
        let t = parse(env, &ctx, expr)?;
        let ty = kernel::infer(env, &ctx, &t, &fuel).map_err(Failure::Kernel)?;
        let nf = kernel::normalize(env, &ctx, &t, &fuel).map_err(Failure::Kernel)?;
        let names = ctx.names();
        Ok((print_term_in(&names, &nf), print_term_in(&names, &ty)))
    })();
    match result {
        Ok((nf, ty)) if cli.json => Run::out(EXIT_OK, json_line(serde_json::json!({ "normal_form": nf, "type": ty }))),
        Ok((nf, _)) => Run::out(EXIT_OK, format!("{nf}\n")),
        Err(f) => f.into_run(),
    }
}

fn equal(cli: &Cli, env: &Environment, vars: &[String], left: &str, right: &str) -> Run {
    let fuel = Fuel::new(cli.fuel);
    let result = (|| -> Result<bool, Failure> {
        let ctx = scope(env, vars, &fuel)?;
        let (a, b) = (parse(env, &ctx, left)?, parse(env, &ctx, right)?);
        let ta = kernel::infer(env, &ctx, &a, &fuel).map_err(Failure::Kernel)?;
        let tb = kernel::infer(env, &ctx, &b, &fuel).map_err(Failure::Kernel)?;
        let same_type = kernel::def_eq(env, &ctx, &ta, &tb, &fuel).map_err(Failure::Kernel)?;
        Ok(same_type && kernel::def_eq(env, &ctx, &a, &b, &fuel).map_err(Failure::Kernel)?)
    })();
    match result {
        Ok(eq) if cli.json => Run::out(EXIT_OK, json_line(serde_json::json!({ "equal": eq }))),
        Ok(eq) => Run::out(EXIT_OK, format!("{eq}\n")),
        Err(f) => f.into_run(),
    }
}

fn synthesize(cli: &Cli, env: &Environment, vars: &[String], source: &str, target: &str, depth: usize) -> Run {
    let fuel = Fuel::new(cli.fuel);
    let prepared = (|| -> Result<(Context, Tm, Tm), Failure> {
        let ctx = scope(env, vars, &fuel)?;
        let (s, t) = (parse(env, &ctx, source)?, parse(env, &ctx, target)?);
        kernel::check_type(env, &ctx, &s, &fuel).map_err(Failure::Kernel)?;
        kernel::check_type(env, &ctx, &t, &fuel).map_err(Failure::Kernel)?;
        Ok((ctx, s, t))
    })();
    let (ctx, s, t) = match prepared {
        Ok(p) => p,
        Err(f) => return f.into_run(),
    };
    let names = ctx.names();
    match doors::synthesize_with(env, &ctx, &s, &t, depth) {
        Synthesis::Found(m) => {
            let shown = print_term_in(&names, &m);
            if cli.json {
                Run::out(EXIT_OK, json_line(serde_json::json!({ "candidate": shown })))
            } else {
                Run::out(EXIT_OK, format!("{shown}\n"))
            }
        }
        Synthesis::NoCandidate => {
            if cli.json {
                Run::out(EXIT_OK, json_line(serde_json::json!({ "candidate": null })))
            } else {
                Run::out(EXIT_OK, "no candidate\n".to_string())
            }
        }
        Synthesis::Rejected(m, e) => {
            let mut run = if cli.json {
                Run::out(
                    EXIT_FAIL,
                    json_line(serde_json::json!({ "candidate": null, "rejected": e.to_string() })),
                )
            } else {
                Run::out(EXIT_FAIL, "no candidate\n".to_string())
            };
            run.stderr = format!("rejected {}: {e}\n", print_term_in(&names, &m));
            run
        }
    }
}

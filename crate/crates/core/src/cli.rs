//! The `lsv` command line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{self, bracket, Window, Witness};
use crate::automorphisms::{automorphism_sweep, factor, iso_test, AutomorphismWord};
use crate::cohomology::{central_extend, cocycle_sweep, reduce, CentralExtension, ExtendedElement};
use crate::config::{
    classes_to_json, cocycle_from_json, derivation_from_json, derivation_to_json, factor_to_json, load_config,
    read_json, reduction_to_json, word_from_json,
};
use crate::derivations::{decompose, derivation_sweep};
use crate::error::Error;
use crate::parse::{parse_element, parse_int, parse_scalar};
use crate::scalars::{GroupData, Scalar};

#[derive(Parser, Debug)]
#[command(name = "lsv", version, about = "Exact computation in generalized loop Schrodinger-Virasoro algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Group configuration (JSON); defaults to Gamma = Z, s = 1/2.
    #[arg(long, global = true, env = "LSV_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub gamma_height: Option<u32>,
    #[arg(long, global = true)]
    pub loop_bound: Option<u32>,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall time in JSON reports.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bracket of two elements.
    Bracket { x: String, y: String },
    /// Split an element into ad L(0,0)-weight components.
    Grade { x: String },
    /// Exhaustive checks on the window.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Decompose a derivation given as a JSON tuple.
    DecomposeDerivation { file: PathBuf },
    /// Factor an automorphism given as a JSON generator word.
    FactorAutomorphism { file: PathBuf },
    /// Same as factor-automorphism.
    Factor {
        #[command(subcommand)]
        what: FactorCommand,
    },
    /// Reduce a cocycle to its class coefficients.
    CocycleClass {
        file: PathBuf,
        /// Also print the recovered functional on the window.
        #[arg(long)]
        with_f: bool,
    },
    /// Bracket in the central extension (universal unless classes are given).
    Extend {
        x: String,
        y: String,
        /// Class weight `k=c`; repeatable.
        #[arg(long = "class", value_name = "K=C")]
        classes: Vec<String>,
    },
    /// Search for a scaling a with a·Gamma' = Gamma and a·Gamma'_1 = Gamma_1.
    Iso {
        /// One file compares the configured group with it; two compare each other.
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    Jacobi,
    Derivation { file: PathBuf },
    Automorphism { file: PathBuf },
    Cocycle { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum FactorCommand {
    Automorphism { file: PathBuf },
}

/// Outcome of one command.
pub struct Report {
    pub pass: bool,
    /// Plain-text output.
    pub text: String,
    pub payload: Value,
    pub witnesses: Vec<String>,
}

impl Report {
    fn ok(text: String, payload: Value) -> Self {
        Report { pass: true, text, payload, witnesses: Vec::new() }
    }

    fn sweep(witnesses: &[Witness]) -> Self {
        let w: Vec<String> = witnesses.iter().map(|w| w.to_string()).collect();
        sweep_report(w)
    }
}

fn sweep_report(witnesses: Vec<String>) -> Report {
    let pass = witnesses.is_empty();
    let mut text = String::from(if pass { "pass" } else { "fail" });
    for w in witnesses.iter().take(20) {
        text.push('\n');
        text.push_str(w);
    }
    if witnesses.len() > 20 {
        text.push_str(&format!("\n... {} more", witnesses.len() - 20));
    }
    Report { pass, text, payload: json!({ "failures": witnesses.len() }), witnesses }
}

fn setup(opts: &GlobalOpts) -> Result<(GroupData, Window), Error> {
    let (group, mut window) = match &opts.config {
        Some(p) => load_config(p)?,
        None => (GroupData::integers_half(), Window::default()),
    };
    if let Some(h) = opts.gamma_height {
        window.gamma_height = h;
    }
    if let Some(b) = opts.loop_bound {
        window.loop_bound = b;
    }
    if window.gamma_height == 0 {
        return Err(Error::Config("gamma_height must be positive".into()));
    }
    Ok((group, window))
}

fn parse_class(text: &str) -> Result<(i64, Scalar), Error> {
    let (k, c) = text
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("--class expects K=C, found {text}")))?;
    Ok((parse_int(k)?, parse_scalar(c)?))
}

fn factor_file(file: &Path, group: &GroupData, window: &Window) -> Result<Report, Error> {
    let word = AutomorphismWord::new(group, word_from_json(group, &read_json(file)?)?)?;
    let f = factor(&word.operator(), group, window)?;
    let payload = factor_to_json(&f);
    Ok(Report::ok(payload.to_string(), payload))
}

/// Run one command.
pub fn run(cli: &Cli) -> Result<Report, Error> {
    let (group, window) = setup(&cli.global)?;
    let g = &group;
    match &cli.command {
        Command::Bracket { x, y } => {
            let r = bracket(&parse_element(g, x)?, &parse_element(g, y)?);
            Ok(Report::ok(r.to_string(), Value::String(r.to_string())))
        }
        Command::Grade { x } => {
            let parts = algebra::grade(&parse_element(g, x)?);
            let text = parts.iter().map(|(w, e)| format!("{w}: {e}")).collect::<Vec<_>>().join("\n");
            let payload =
                Value::Object(parts.iter().map(|(w, e)| (w.to_string(), Value::String(e.to_string()))).collect());
            Ok(Report::ok(text, payload))
        }
        Command::Check { what } => match what {
            CheckCommand::Jacobi => {
                let mut w = algebra::antisymmetry_sweep(g, &window);
                w.extend(algebra::jacobi_sweep(g, &window));
                Ok(Report::sweep(&w))
            }
            CheckCommand::Derivation { file } => {
                let d = derivation_from_json(g, &read_json(file)?)?;
                Ok(Report::sweep(&derivation_sweep(&d.to_operator(g), g, &window)))
            }
            CheckCommand::Automorphism { file } => {
                let word = AutomorphismWord::new(g, word_from_json(g, &read_json(file)?)?)?;
                Ok(Report::sweep(&automorphism_sweep(&word.operator(), g, &window)))
            }
            CheckCommand::Cocycle { file } => {
                let c = cocycle_from_json(g, &window, &read_json(file)?)?;
                Ok(Report::sweep(&cocycle_sweep(&c, g, &window)))
            }
        },
        Command::DecomposeDerivation { file } => {
            let d = derivation_from_json(g, &read_json(file)?)?;
            let out = decompose(&d.to_operator(g), g, &window)?;
            let mut payload = derivation_to_json(&out);
            payload["residual"] = Value::String("0".into());
            Ok(Report::ok(payload.to_string(), payload))
        }
        Command::FactorAutomorphism { file } | Command::Factor { what: FactorCommand::Automorphism { file } } => {
            factor_file(file, g, &window)
        }
        Command::CocycleClass { file, with_f } => {
            let c = cocycle_from_json(g, &window, &read_json(file)?)?;
            let r = reduce(&c, g, &window)?;
            let payload = reduction_to_json(&r, g, &window, *with_f);
            let witnesses = r
                .residual
                .entries
                .iter()
                .map(|e| format!("({}, {}) -> {}", e.x, e.y, e.value))
                .collect();
            Ok(Report { pass: r.passes(), text: payload.to_string(), payload, witnesses })
        }
        Command::Extend { x, y, classes } => {
            let ext = if classes.is_empty() {
                CentralExtension::Universal
            } else {
                let mut m = BTreeMap::new();
                for c in classes {
                    let (k, v) = parse_class(c)?;
                    m.insert(k, v);
                }
                central_extend(m)
            };
            let r = ext.bracket(&ExtendedElement::parse(g, x)?, &ExtendedElement::parse(g, y)?);
            let payload = json!({
                "base": r.base.to_string(),
                "central": classes_to_json(&r.central),
            });
            Ok(Report::ok(r.to_string(), payload))
        }
        Command::Iso { files } => {
            let (g1, g2) = match files.as_slice() {
                [other] => (group.clone(), load_config(other)?.0),
                [a, b] => (load_config(a)?.0, load_config(b)?.0),
                _ => unreachable!("clap enforces one or two files"),
            };
            if g1.field() != g2.field() {
                return Err(Error::FieldMismatch("both groups must use the same field".into()));
            }
            let a = iso_test(&g1, &g2);
            let text = a.as_ref().map_or_else(|| "none".to_string(), |a| a.to_string());
            Ok(Report::ok(text, json!({ "a": a.map(|a| a.to_string()) })))
        }
    }
}

/// Exit code for an error: 1 when the computation produced a witness, 2 for
/// bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Shape { .. }
        | Error::Inconsistent { .. }
        | Error::NotPureDegree { .. }
        | Error::NotACocycle { .. }
        | Error::FactorStep { .. }
        | Error::Recomposition { .. } => 1,
        _ => 2,
    }
}

/// Parse arguments, run, print, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    let ms = start.elapsed().as_millis() as u64;
    let json_out = cli.global.json;
    let with_time = |mut v: Value| {
        if cli.global.timing {
            v["timing_ms"] = json!(ms);
        }
        v
    };
    match result {
        Ok(r) => {
            if json_out {
                let v = json!({
                    "status": if r.pass { "pass" } else { "fail" },
                    "payload": r.payload,
                    "witnesses": r.witnesses,
                });
                println!("{}", with_time(v));
            } else {
                println!("{}", r.text);
            }
            if r.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if json_out {
                let status = if code == 1 { "fail" } else { "error" };
                let v = json!({"status": status, "payload": Value::Null, "witnesses": [e.to_string()]});
                println!("{}", with_time(v));
            } else {
                eprintln!("error: {e}");
            }
            code
        }
    }
}

//! Command-line front end. Every subcommand prints JSON on stdout (or DOT
//! with `poset --dot`); output depends only on the inputs.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::multiplicity::{mult, mult_matrix, same_relation_type};
use crate::multisegment::Multisegment;
use crate::poset::{generate_poset_capped, hasse_dot, DEFAULT_MAX_SIZE};
use crate::ring::{derivative, to_l_basis, to_pi_basis, RingElement};
use crate::symmetrization::{lift_stepwise, symmetrize};
use crate::truncation::{descent_set_side, truncate, truncate_path, DescentPath, Side};
use crate::weyl::{kl_polynomial, phi, phi_inverse, Permutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "multiseg",
    about = "Multisegment posets, truncations, symmetrization and multiplicities",
    disable_version_flag = true
)]
pub struct Cli {
    /// Print the version and the golden-corpus hash.
    #[arg(long)]
    version: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

/// Multisegment arguments are file paths, or inline values such as
/// `{[1],[2,3]}` or `{"segments":[[1,1]]}`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// The poset S(a) as JSON, or its Hasse diagram as DOT.
    Poset {
        a: String,
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
    },
    /// End or begin truncation, or truncation along a descent path.
    Truncate {
        a: String,
        #[command(flatten)]
        how: TruncateArgs,
    },
    /// The elements of S(a) satisfying the truncation hypothesis at k.
    DescentSet {
        a: String,
        #[arg(short)]
        k: i64,
        #[arg(long, value_enum, default_value = "end")]
        side: SideArg,
    },
    /// The symmetric multisegment and descent data for a.
    Symmetrize { a: String },
    /// The lift of b ≤ a into the poset of the symmetrization of a.
    Lift { a: String, b: String },
    /// Φ(w) for a symmetric base, or with --of, the permutation of b.
    Phi {
        base: String,
        #[arg(long, required_unless_present = "of")]
        w: Option<String>,
        #[arg(long, conflicts_with = "w")]
        of: Option<String>,
    },
    /// Coefficients of the Kazhdan-Lusztig polynomial P_{x,w}, constant first.
    Kl {
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// The multiplicity m(b, a).
    Mult { b: String, a: String },
    /// m(b, a) for every b in S(a).
    MultMatrix {
        a: String,
        /// Write the matrix to this file instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// The relation-type bijection between two multisegments, or null.
    RelationType { a: String, a2: String },
    /// Ring computations on expressions in the pi or L basis.
    Ring {
        #[command(subcommand)]
        op: RingCommand,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TruncateArgs {
    #[arg(long)]
    end: Option<i64>,
    #[arg(long)]
    begin: Option<i64>,
    /// Descent path such as `{"side":"end","steps":[3,4]}`.
    #[arg(long)]
    path: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum RingCommand {
    /// Apply a partial derivative to a pi-basis expression.
    Derive {
        expr: String,
        #[arg(long, group = "index")]
        end: Option<i64>,
        #[arg(long, group = "index")]
        begin: Option<i64>,
    },
    /// Convert a pi-basis expression to the L basis.
    ToL { expr: String },
    /// Convert an L-basis expression to the pi basis.
    ToPi { expr: String },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum SideArg {
    End,
    Begin,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::End => Side::End,
            SideArg::Begin => Side::Begin,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) | Failure::Lib(Error::Parse(_)) => EXIT_PARSE,
            Failure::Lib(Error::ResourceLimit { .. }) => EXIT_RESOURCE,
            Failure::Lib(Error::Invariant(_)) => EXIT_INTERNAL,
            Failure::Lib(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_text(arg: &str) -> Outcome<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_owned());
    }
    fs::read_to_string(arg).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))
}

fn read_json<T: DeserializeOwned>(arg: &str) -> Outcome<T> {
    let text = read_text(arg)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON in {arg}: {e}")))
}

fn read_multisegment(arg: &str) -> Outcome<Multisegment> {
    let text = read_text(arg)?;
    if let Ok(m) = serde_json::from_str::<Multisegment>(&text) {
        return Ok(m);
    }
    text.trim()
        .parse()
        .map_err(|e| Failure::Input(format!("invalid multisegment in {arg}: {e}")))
}

fn read_permutation(arg: &str) -> Outcome<Permutation> {
    arg.parse()
        .map_err(|e| Failure::Input(format!("invalid permutation {arg}: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("library values serialize")
}

fn matrix_json(a: &Multisegment) -> Outcome<serde_json::Value> {
    let matrix = mult_matrix(a)?;
    let entries: Vec<_> = matrix
        .iter()
        .map(|(b, m)| json!({"multisegment": b, "mult": m}))
        .collect();
    Ok(json!({"root": a, "entries": entries}))
}

fn execute(command: Command) -> Outcome<String> {
    Ok(match command {
        Command::Poset { a, dot, max_size } => {
            let p = generate_poset_capped(&read_multisegment(&a)?, max_size)?;
            if dot {
                return Ok(hasse_dot(&p).trim_end().to_owned());
            }
            to_json(&json!({"elements": p.elements(), "covers": p.cover_edges()}))
        }
        Command::Truncate { a, how } => {
            let a = read_multisegment(&a)?;
            let out = match (how.end, how.begin, how.path) {
                (Some(k), _, _) => truncate(&a, Side::End, k),
                (_, Some(k), _) => truncate(&a, Side::Begin, k),
                (_, _, Some(p)) => truncate_path(&a, &read_json::<DescentPath>(&p)?),
                _ => unreachable!("clap requires one truncation mode"),
            };
            to_json(&out)
        }
        Command::DescentSet { a, k, side } => {
            to_json(&descent_set_side(&read_multisegment(&a)?, side.into(), k)?)
        }
        Command::Symmetrize { a } => to_json(&symmetrize(&read_multisegment(&a)?)?),
        Command::Lift { a, b } => {
            let data = symmetrize(&read_multisegment(&a)?)?;
            to_json(&lift_stepwise(&data, &read_multisegment(&b)?)?)
        }
        Command::Phi { base, w, of } => {
            let base = read_multisegment(&base)?;
            match (w, of) {
                (Some(w), _) => to_json(&phi(&base, &read_permutation(&w)?)?),
                (_, Some(b)) => to_json(&phi_inverse(&base, &read_multisegment(&b)?)?),
                _ => unreachable!("clap requires --w or --of"),
            }
        }
        Command::Kl { x, w } => {
            let p = kl_polynomial(&read_permutation(&x)?, &read_permutation(&w)?)?;
            to_json(&p)
        }
        Command::Mult { b, a } => mult(&read_multisegment(&b)?, &read_multisegment(&a)?)?.to_string(),
        Command::MultMatrix { a, json } => {
            let text = to_json(&matrix_json(&read_multisegment(&a)?)?);
            match json {
                Some(path) => {
                    fs::write(&path, format!("{text}\n")).map_err(|e| {
                        Failure::Input(format!("cannot write {}: {e}", path.display()))
                    })?;
                    String::new()
                }
                None => text,
            }
        }
        Command::RelationType { a, a2 } => {
            to_json(&same_relation_type(&read_multisegment(&a)?, &read_multisegment(&a2)?))
        }
        Command::Ring { op } => match op {
            RingCommand::Derive { expr, end, begin } => {
                let x: RingElement = read_json(&expr)?;
                let (side, k) = match (end, begin) {
                    (Some(k), _) => (Side::End, k),
                    (_, Some(k)) => (Side::Begin, k),
                    _ => return Err(Failure::Input("ring derive needs --end or --begin".into())),
                };
                to_json(&derivative(&x, side, k)?)
            }
            RingCommand::ToL { expr } => to_json(&to_l_basis(&read_json(&expr)?)?),
            RingCommand::ToPi { expr } => to_json(&to_pi_basis(&read_json(&expr)?)?),
        },
    })
}

/// Canonical text of a fixed set of computed reference results.
pub fn golden_corpus() -> String {
    let ms = |s: &str| s.parse::<Multisegment>().expect("corpus literal");
    let perm = |s: &str| s.parse::<Permutation>().expect("corpus literal");
    let a = ms("{[1],[2],[2],[3]}");
    let lines = [
        to_json(&symmetrize(&a).ok()),
        to_json(&mult(&ms("{[1,2],[2,3]}"), &a).ok()),
        to_json(&kl_polynomial(&perm("1324"), &perm("3412")).ok()),
        to_json(&matrix_json(&a).ok()),
        to_json(&generate_poset_capped(&a, DEFAULT_MAX_SIZE).ok().map(|p| p.cover_edges())),
    ];
    lines.join("\n")
}

pub fn golden_corpus_hash() -> String {
    Sha256::digest(golden_corpus().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Parses `args` (including the program name), runs the command, and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    if cli.version {
        let _ = writeln!(
            out,
            "multiseg {} (golden corpus sha256 {})",
            env!("CARGO_PKG_VERSION"),
            golden_corpus_hash()
        );
        return EXIT_OK;
    }
    let Some(command) = cli.command else {
        let _ = writeln!(err, "no subcommand given; see --help");
        return EXIT_PARSE;
    };
    match execute(command) {
        Ok(text) => {
            if !text.is_empty() {
                let _ = writeln!(out, "{text}");
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

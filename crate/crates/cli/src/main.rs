use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use quintic_cli::{run, run_batch, Options, Request, Response};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  I/O failure (unreadable input, unwritable output)
  2  contract violation: malformed JSON, schema error or failed precondition
     (the response carries a JSON pointer to the offending field)
  3  unsupported decision (e.g. a solvability question over Q(s,t), or the
     witness search limit was exceeded)

With --batch the exit code is the largest one among the responses.

Environment:
  QF_MAX_SEARCH  cap on candidate pairs in the rational-point witness search
                 (default 10000000)";

/// Exact computations for conics, apolarity, quadratic involutions and
/// intersection numbers. Payloads are JSON objects read from --input or stdin;
/// responses are canonical JSON written to --output or stdout.
#[derive(Parser)]
#[command(name = "quintic", version, after_help = EXIT_CODES)]
struct Cli {
    /// Read the payload (or, with --batch, request lines) from FILE.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write the response to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Process JSON lines of {"command", "payload", "version"} envelopes.
    #[arg(long)]
    batch: bool,
    /// Seed for commands that draw random data (vsp pullback with "random": true).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    group: Option<Group>,
}

#[derive(Subcommand)]
enum Group {
    /// Ternary quadratic forms over Q, Q(sqrt d) and Q(s,t).
    Conic {
        #[command(subcommand)]
        op: ConicOp,
    },
    /// Apolar schemes, trisecant lines and special lines of VSP(f).
    Vsp {
        #[command(subcommand)]
        op: VspOp,
    },
    /// Base schemes of quadratic involutions.
    Involution {
        #[command(subcommand)]
        op: InvolutionOp,
    },
    /// Intersection numbers on P^1-bundles over P^2.
    Chow {
        #[command(subcommand)]
        op: ChowOp,
    },
}

#[derive(Subcommand)]
enum ConicOp {
    /// Smoothness, determinant and dual conic: {"gram"}.
    Invariants,
    /// Rational point or obstruction: {"gram"}.
    Solve,
    /// Polar line of a point: {"gram", "point"}.
    Polar,
    /// Parametrization from a point on the conic: {"gram", "point"}.
    Parametrize,
    /// Rational point from a point over Q(sqrt d): {"gram", "point"}.
    Descend,
}

#[derive(Subcommand)]
enum VspOp {
    /// Waring decomposition f = sum of lambda_i l_i^2: {"gram"}.
    Decompose,
    /// Apolarity of a length-3 scheme: {"gram", "scheme"}.
    ApolarCheck,
    /// Stratum O / S2 / C6: {"gram", "scheme"}.
    Stratum,
    /// Pluecker coordinates of the trisecant line: {"gram", "scheme"}.
    Trisecant,
    /// Conics and length of a line's pullback: {"gram", "line" | "scheme" | "random"}.
    Pullback,
    /// Whether a point of P(V*) lies on the dual conic: {"gram", "point"}.
    SpecialLine,
    /// Polar line with respect to the dual conic: {"gram", "point"}.
    Incidence,
    /// A^2 / A^3 cylinder decision: {"gram", optional "witness"}.
    Cylinders,
    /// A rational point of the Hilbert scheme of lines: {"gram"}.
    HilbertPoint,
}

#[derive(Subcommand)]
enum InvolutionOp {
    /// Type I / II / III: {"scheme", optional "generators"}.
    Classify,
    /// Divisor identities on the blow-up of three points: {"points"}.
    #[command(name = "verify-type1")]
    VerifyType1,
    /// Length of the scheme cut out by forms: {"generators"}.
    Length,
}

#[derive(Subcommand)]
enum ChowOp {
    /// D1.D2.D3 in the Chow ring of P(E).
    Triple {
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c2: Option<i64>,
        /// Three classes separated by commas, e.g. "-2xi-4A,-2xi-4A,xi+A".
        #[arg(long, allow_hyphen_values = true)]
        classes: Option<String>,
    },
    /// Intersection numbers of the link to V5.
    Sarkisov,
    /// Divisor identities of the link to the quadric.
    QuadricLink,
}

/// Command name, and an inline payload when the arguments provide one.
fn command_of(g: &Group) -> (String, Option<Value>) {
    let (group, op, inline) = match g {
        Group::Conic { op } => (
            "conic",
            match op {
                ConicOp::Invariants => "invariants",
                ConicOp::Solve => "solve",
                ConicOp::Polar => "polar",
                ConicOp::Parametrize => "parametrize",
                ConicOp::Descend => "descend",
            },
            None,
        ),
        Group::Vsp { op } => (
            "vsp",
            match op {
                VspOp::Decompose => "decompose",
                VspOp::ApolarCheck => "apolar-check",
                VspOp::Stratum => "stratum",
                VspOp::Trisecant => "trisecant",
                VspOp::Pullback => "pullback",
                VspOp::SpecialLine => "special-line",
                VspOp::Incidence => "incidence",
                VspOp::Cylinders => "cylinders",
                VspOp::HilbertPoint => "hilbert-point",
            },
            None,
        ),
        Group::Involution { op } => (
            "involution",
            match op {
                InvolutionOp::Classify => "classify",
                InvolutionOp::VerifyType1 => "verify-type1",
                InvolutionOp::Length => "length",
            },
            None,
        ),
        Group::Chow { op } => match op {
            ChowOp::Triple { c1, c2, classes } => {
                let inline = match (c1, c2, classes) {
                    (Some(c1), Some(c2), Some(cl)) => {
                        let cl: Vec<&str> = cl.split(',').map(str::trim).collect();
                        Some(json!({"c1": c1, "c2": c2, "classes": cl}))
                    }
                    _ => None,
                };
                ("chow", "triple", inline)
            }
            ChowOp::Sarkisov => ("chow", "sarkisov", Some(json!({}))),
            ChowOp::QuadricLink => ("chow", "quadric-link", Some(json!({}))),
        },
    };
    (format!("{group} {op}"), inline)
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = match Options::from_env() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    opts.seed = cli.seed;

    let (text, code) = if cli.batch {
        let input = match read_input(&cli.input) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        };
        let responses = run_batch(&input, &opts);
        let code = responses.iter().map(|r| r.exit_code()).max().unwrap_or(0);
        let mut out = String::new();
        for r in &responses {
            out.push_str(&r.to_canonical_json());
            out.push('\n');
        }
        (out, code)
    } else {
        let Some(group) = &cli.group else {
            eprintln!("error: a subcommand is required unless --batch is given (see --help)");
            return ExitCode::from(2);
        };
        let (command, inline) = command_of(group);
        let payload = match inline {
            Some(p) if cli.input.is_none() => Ok(p),
            _ => match read_input(&cli.input) {
                Ok(s) => serde_json::from_str::<Value>(&s).map_err(|e| e.to_string()),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            },
        };
        let resp = match payload {
            Ok(p) => run(&Request::new(&command, p), &opts),
            Err(e) => Response::schema_error(&command, format!("malformed JSON: {e}")),
        };
        let code = resp.exit_code();
        (resp.to_canonical_json() + "\n", code)
    };
    if let Err(e) = write_output(&cli.output, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}

//! Request/response layer of the `quintic` command-line tool.
//!
//! A [`Request`] names a command (`"conic solve"`, `"vsp cylinders"`, …) and
//! carries a JSON payload; [`run`] returns a [`Response`] whose canonical
//! serialization (sorted keys, exact scalars as strings) is deterministic.

mod commands;
pub mod json;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use json::{Fail, Res};

pub const VERSION: &str = "1";

/// Default witness-search limit, overridden by `QF_MAX_SEARCH`.
pub const SEARCH_LIMIT_ENV: &str = "QF_MAX_SEARCH";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Request {
    pub command: String,
    #[serde(default = "empty_object")]
    pub payload: Value,
    #[serde(default)]
    pub version: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

impl Request {
    pub fn new(command: &str, payload: Value) -> Self {
        Request {
            command: command.to_string(),
            payload,
            version: Some(VERSION.to_string()),
            seed: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub pointer: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub status: Status,
    pub command: String,
    pub version: String,
    pub result: Value,
    pub certificate: Value,
    pub citation: Option<String>,
    pub error: Option<ErrorBody>,
}

impl Response {
    /// 0 on success, 2 on a contract violation, 3 on an unsupported decision.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Error => 2,
            Status::Unsupported => 3,
        }
    }

    pub fn to_value(&self) -> Value {
        // serde_json's map is ordered, so this sorts every object's keys
        serde_json::to_value(self).expect("responses serialize")
    }

    pub fn to_canonical_json(&self) -> String {
        self.to_value().to_string()
    }

    /// A schema failure not tied to a parsed request, e.g. unparseable JSON.
    pub fn schema_error(command: &str, message: impl Into<String>) -> Self {
        Self::failure(command, Fail::schema("", message))
    }

    fn failure(command: &str, f: Fail) -> Self {
        Response {
            status: if f.unsupported { Status::Unsupported } else { Status::Error },
            command: command.to_string(),
            version: VERSION.to_string(),
            result: Value::Null,
            certificate: Value::Null,
            citation: None,
            error: Some(ErrorBody {
                code: f.code,
                pointer: f.pointer,
                message: f.message,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub search_limit: u64,
    pub seed: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            search_limit: quintic_core::conics::DEFAULT_SEARCH_LIMIT,
            seed: None,
        }
    }
}

impl Options {
    /// Defaults with the search limit taken from `QF_MAX_SEARCH` if set.
    pub fn from_env() -> Result<Self, String> {
        let mut o = Options::default();
        if let Ok(v) = std::env::var(SEARCH_LIMIT_ENV) {
            o.search_limit = v.trim().parse().map_err(|_| format!("{SEARCH_LIMIT_ENV} must be a positive integer"))?;
        }
        Ok(o)
    }
}

type Handler = fn(&Value, &Options) -> Res<commands::Outcome>;

/// Every command, as `"group op"`.
pub const COMMANDS: [(&str, Handler); 20] = [
    ("conic invariants", commands::conic_invariants_cmd),
    ("conic solve", commands::conic_solve),
    ("conic polar", commands::conic_polar),
    ("conic parametrize", commands::conic_parametrize),
    ("conic descend", commands::conic_descend),
    ("vsp decompose", commands::vsp_decompose),
    ("vsp apolar-check", commands::vsp_apolar_check),
    ("vsp stratum", commands::vsp_stratum),
    ("vsp trisecant", commands::vsp_trisecant),
    ("vsp pullback", commands::vsp_pullback),
    ("vsp special-line", commands::vsp_special_line),
    ("vsp incidence", commands::vsp_incidence),
    ("vsp cylinders", commands::vsp_cylinders),
    ("vsp hilbert-point", commands::vsp_hilbert_point),
    ("involution classify", commands::involution_classify),
    ("involution verify-type1", commands::involution_verify_type1),
    ("involution length", commands::involution_length),
    ("chow triple", commands::chow_triple),
    ("chow sarkisov", commands::chow_sarkisov),
    ("chow quadric-link", commands::chow_quadric_link),
];

/// `"vsp.apolar_check"` and `"vsp  apolar-check"` both become `"vsp apolar-check"`.
fn normalize_command(c: &str) -> String {
    let words: Vec<String> = c.split(|ch: char| ch.is_whitespace() || ch == '.').filter(|w| !w.is_empty()).map(|w| w.replace('_', "-")).collect();
    words.join(" ")
}

pub fn run(req: &Request, opts: &Options) -> Response {
    let command = normalize_command(&req.command);
    if let Some(v) = &req.version {
        if v != VERSION {
            return Response::failure(&command, Fail::schema("/version", format!("unsupported version \"{v}\"")));
        }
    }
    let Some((_, handler)) = COMMANDS.iter().find(|(name, _)| *name == command) else {
        return Response::failure(&command, Fail::schema("/command", format!("unknown command \"{}\"", req.command)));
    };
    if !req.payload.is_object() {
        return Response::failure(&command, Fail::schema("", "payload must be a JSON object"));
    }
    let mut opts = opts.clone();
    if req.seed.is_some() {
        opts.seed = req.seed;
    }
    match handler(&req.payload, &opts) {
        Ok(out) => Response {
            status: Status::Ok,
            command,
            version: VERSION.to_string(),
            result: out.result,
            certificate: out.certificate,
            citation: out.citation.map(str::to_string),
            error: None,
        },
        Err(f) => Response::failure(&command, f),
    }
}

/// Runs one request per non-empty line, in parallel, keeping input order.
/// A line that is not a request envelope yields an error response.
pub fn run_batch(input: &str, opts: &Options) -> Vec<Response> {
    let lines: Vec<&str> = input.lines().filter(|l| !l.trim().is_empty()).collect();
    lines
        .par_iter()
        .map(|line| match serde_json::from_str::<Request>(line) {
            Ok(req) => run(&req, opts),
            Err(e) => Response::schema_error("", format!("malformed request: {e}")),
        })
        .collect()
}

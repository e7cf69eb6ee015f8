use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde_json::{Map, Value};

pub const EX_FOUND: u8 = 0;
pub const EX_NONE: u8 = 1;
pub const EX_BUDGET: u8 = 2;
pub const EX_USAGE: u8 = 64;
pub const EX_DATAERR: u8 = 65;
pub const EX_SOFTWARE: u8 = 70;
pub const EX_IOERR: u8 = 74;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(EX_USAGE, message)
    }
}

impl From<listpack::Error> for Failure {
    fn from(e: listpack::Error) -> Self {
        use listpack::Error::*;
        let code = match e {
            InvalidGraph(_) | InvalidLists(_) | InvalidCover(_) | SizeMismatch(_) | Parse(_) => {
                EX_DATAERR
            }
            Precondition(_) | NotBipartite | MatrixTooLarge { .. } => EX_NONE,
            BudgetExceeded { .. } => EX_BUDGET,
            Overflow | Internal(_) => EX_SOFTWARE,
        };
        Failure::new(code, e.to_string())
    }
}

/// Reads a file, or stdin for `-`.
pub fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::new(EX_DATAERR, format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::new(EX_DATAERR, format!("{path}: {e}")))
    }
}

/// Writes `text` (newline-terminated) to `path`, or stdout when `path` is
/// absent or `-`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::new(EX_IOERR, e.to_string());
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).map_err(io_err),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(io_err)
        }
    }
}

/// Stamps `fields` with the schema name and the tool version.
pub fn record(schema: &str, fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(format!("listpack.{schema}")));
    m.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
    if let Value::Object(extra) = fields {
        m.extend(extra);
    }
    Value::Object(m)
}

pub fn line(v: &Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

/// `--budget`, else `LISTPACK_BUDGET`, else the library default.
pub fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("LISTPACK_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("LISTPACK_BUDGET={s:?} is not a node count"))),
        Err(_) => Ok(listpack::DEFAULT_BUDGET),
    }
}

//! Input files and flag values.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde_json::Value;

use shv_core::circlesheaf::CircleSheaf;
use shv_core::exactalg::Rational;
use shv_core::linesheaf::{Covector, Interval, LineSheaf, Sign};
use shv_core::quiverrep::{RepJson, RepKind};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{path}: {msg}")]
    Shape { path: PathBuf, msg: String },
    #[error("--{flag}: {msg}")]
    Flag { flag: &'static str, msg: String },
    #[error("{0}")]
    Domain(String),
}

/// A parsed input document.
#[derive(Debug, Clone)]
pub enum Document {
    Line(LineSheaf),
    Circle(CircleSheaf),
    Rep(RepJson),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Line(_) => "line sheaf",
            Document::Circle(_) => "circle sheaf",
            Document::Rep(r) => match r.kind {
                RepKind::Line => "line representation",
                RepKind::Circle => "circle representation",
            },
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Document::Line(s) => serde_json::to_string_pretty(s),
            Document::Circle(s) => serde_json::to_string_pretty(s),
            Document::Rep(r) => serde_json::to_string_pretty(r),
        };
        f.write_str(&s.map_err(|_| fmt::Error)?)
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(path: &Path, e: serde_json::Error) -> InputError {
    InputError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    }
}

/// Parses `text` as `T`, reporting the location of the first problem.
pub fn parse_as<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| parse_err(path, e))
}

/// Reads a sheaf or representation, telling them apart by their keys.
pub fn read_document(path: &Path) -> Result<Document, InputError> {
    let text = read(path)?;
    parse_document(path, &text)
}

pub fn parse_document(path: &Path, text: &str) -> Result<Document, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(path, e))?;
    let obj = v.as_object().ok_or_else(|| InputError::Shape {
        path: path.to_path_buf(),
        msg: "expected a JSON object".into(),
    })?;
    if obj.contains_key("summands") {
        parse_as(path, text).map(Document::Line)
    } else if obj.contains_key("kind") || obj.contains_key("arrows") {
        parse_as(path, text).map(Document::Rep)
    } else if obj.contains_key("wrapped") || obj.contains_key("local") {
        parse_as(path, text).map(Document::Circle)
    } else {
        Err(InputError::Shape {
            path: path.to_path_buf(),
            msg: "expected `summands` (line sheaf), `wrapped`/`local` (circle sheaf) or `kind` (representation)"
                .into(),
        })
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = read(path)?;
    parse_as(path, &text)
}

pub fn rational_flag(flag: &'static str, s: &str) -> Result<Rational, InputError> {
    s.parse().map_err(|e| InputError::Flag {
        flag,
        msg: format!("{e}"),
    })
}

/// A covector written `base,sign` with an optional `,deg`, e.g. `1/2,-` or `0,+,1`.
pub fn covector_flag(flag: &'static str, s: &str) -> Result<Covector, InputError> {
    let bad = |msg: String| InputError::Flag { flag, msg };
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(bad(format!("`{s}`: expected `base,sign[,deg]`")));
    }
    let base: Rational = parts[0].parse().map_err(|e| bad(format!("{e}")))?;
    let sign = match parts[1] {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        other => return Err(bad(format!("`{other}`: sign must be `+` or `-`"))),
    };
    let deg = match parts.get(2) {
        Some(d) => d.parse().map_err(|_| bad(format!("`{d}`: not an integer degree")))?,
        None => 0,
    };
    Ok(Covector::new(base, sign, deg))
}

pub fn interval_flag(flag: &'static str, s: &str) -> Result<Interval, InputError> {
    s.parse().map_err(|e| InputError::Flag {
        flag,
        msg: format!("{e}"),
    })
}

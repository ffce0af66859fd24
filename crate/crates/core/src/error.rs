use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// One failed condition, tagged with the degree it was found at when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: Option<i64>,
    pub message: String,
}

impl Violation {
    pub fn at(degree: i64, message: impl Into<String>) -> Self {
        Violation { degree: Some(degree), message: message.into() }
    }

    pub fn global(message: impl Into<String>) -> Self {
        Violation { degree: None, message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            Some(d) => write!(f, "degree {d}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn join(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("validation failed: {}", join(.0))]
    Validation(Vec<Violation>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("splice disagreement at degree {degree}: {msg}")]
    Splice { degree: i64, msg: String },
    #[error("generator gave up: {0}")]
    Generator(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Turn a violation list into `Ok(())` when empty.
    pub fn check(vs: Vec<Violation>) -> Result<()> {
        if vs.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(vs))
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

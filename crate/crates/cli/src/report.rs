use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use tree_status::io::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Ok,
    Realizable,
    NotRealizable,
    True,
    False,
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

/// One structured document per invocation.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[u64; 2]>>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn new(command: &'static str, verdict: Verdict) -> Self {
        Report {
            command,
            verdict,
            sequence: None,
            edges: None,
            witness: Value::Null,
            text: String::new(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::NotRealizable | Verdict::False | Verdict::Fail => 1,
            _ => 0,
        }
    }

    pub fn print(&self, json: bool) {
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(self).expect("report serializes")
            );
        } else {
            print!("{}", self.text);
        }
    }
}

/// Input error, reported with exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl CliError {
    pub fn parse(path: &Path, err: ParseError) -> Self {
        match err {
            ParseError::Syntax {
                line,
                column,
                message,
            } => CliError(format!("{}:{line}:{column}: {message}", path.display())),
            other => CliError(format!("{}: {other}", path.display())),
        }
    }

    pub fn print(&self, json: bool) {
        if json {
            let doc = serde_json::json!({ "verdict": "input-error", "error": self.0 });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("error serializes")
            );
        }
        eprintln!("error: {}", self.0);
    }
}

impl<E: fmt::Display> From<E> for CliError {
    fn from(err: E) -> Self {
        CliError(err.to_string())
    }
}

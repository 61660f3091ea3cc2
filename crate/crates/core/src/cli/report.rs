use std::fmt;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Refused,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Refused => "REFUSED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness,
        }
    }

    /// A failure always carries its witness.
    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    /// An inconclusive result always carries `caveat`.
    pub fn inconclusive(name: impl Into<String>, caveat: &str, detail: Option<String>) -> Self {
        let witness = match detail {
            Some(d) => format!("{d}; {caveat}"),
            None => caveat.to_string(),
        };
        Check {
            name: name.into(),
            status: Status::Inconclusive,
            witness: Some(witness),
        }
    }

    pub fn refused(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Refused,
            witness: Some(witness.into()),
        }
    }

    pub fn from_outcome(name: impl Into<String>, passed: bool, witness: Option<String>) -> Self {
        if passed {
            Check::pass(name, witness)
        } else {
            Check::fail(name, witness.unwrap_or_else(|| "no witness recorded".into()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub target: String,
    pub checks: Vec<Check>,
    pub timing_ms: u64,
}

impl Report {
    /// 1 if anything failed, else 3 if anything was refused, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Refused) {
            3
        } else {
            0
        }
    }

    pub fn print(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{} [{}]", self.command, self.target)?;
        for c in &self.checks {
            match &c.witness {
                Some(w) => writeln!(out, "  {:<12} {}: {}", c.status, c.name, w)?,
                None => writeln!(out, "  {:<12} {}", c.status, c.name)?,
            }
        }
        writeln!(out, "  ({} ms)", self.timing_ms)
    }

    pub fn write_json(&self, path: &Path) -> io::Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        std::fs::write(path, text + "\n")
    }
}

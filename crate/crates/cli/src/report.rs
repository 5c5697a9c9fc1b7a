use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Format, Global};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_TRUE: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<towerset::Error> for Failure {
    fn from(e: towerset::Error) -> Self {
        let code = if e.is_invariant_violation() {
            EXIT_INVARIANT
        } else {
            EXIT_INPUT
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Raw bytes of an input file (`-` reads standard input) and their hash.
pub struct Input {
    pub bytes: Vec<u8>,
    pub sha256: String,
}

impl Input {
    pub fn read(path: &Path) -> Result<Self, Failure> {
        let bytes = if path.as_os_str() == "-" {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
            buf
        } else {
            fs::read(path)
                .map_err(|e| Failure::input(format!("reading {}: {e}", path.display())))?
        };
        Ok(Self::from_bytes(bytes))
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let sha256 = hex::encode(Sha256::digest(&bytes));
        Self { bytes, sha256 }
    }

    pub fn parse<T: DeserializeOwned>(&self, what: &str) -> Result<T, Failure> {
        serde_json::from_slice(&self.bytes)
            .map_err(|e| Failure::input(format!("invalid {what}: {e}")))
    }
}

/// Hash over several inputs: the hash of their hashes joined by newlines.
pub fn combined_hash(inputs: &[&Input]) -> String {
    if let [one] = inputs {
        return one.sha256.clone();
    }
    let joined: Vec<&str> = inputs.iter().map(|i| i.sha256.as_str()).collect();
    hex::encode(Sha256::digest(joined.join("\n").as_bytes()))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    input_sha256: &'a str,
    status: &'a str,
    result: &'a T,
}

/// Rows for `--format tsv`, header first.
pub type Table = Vec<Vec<String>>;

pub struct Report<T: Serialize> {
    pub command: &'static str,
    pub input_sha256: String,
    pub positive: bool,
    pub result: T,
    pub table: Option<Table>,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &'static str, input_sha256: String, positive: bool, result: T) -> Self {
        Self {
            command,
            input_sha256,
            positive,
            result,
            table: None,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn emit(&self, global: &Global) -> Result<u8, Failure> {
        let status = if self.positive { "true" } else { "false" };
        let text = match global.format {
            Format::Json => {
                let env = Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: self.command,
                    input_sha256: &self.input_sha256,
                    status,
                    result: &self.result,
                };
                let mut s = if global.pretty {
                    serde_json::to_string_pretty(&env)
                } else {
                    serde_json::to_string(&env)
                }
                .map_err(|e| Failure {
                    code: EXIT_INVARIANT,
                    message: format!("serializing report: {e}"),
                })?;
                s.push('\n');
                s
            }
            Format::Tsv => {
                let table = self.table.as_ref().ok_or_else(|| {
                    Failure::input(format!("{} has no tabular output", self.command))
                })?;
                let mut s = format!(
                    "# schema_version={SCHEMA_VERSION}\tcommand={}\tinput_sha256={}\tstatus={status}\n",
                    self.command, self.input_sha256
                );
                for row in table {
                    s.push_str(&row.join("\t"));
                    s.push('\n');
                }
                s
            }
        };
        match &global.output {
            Some(path) => fs::write(path, text)
                .map_err(|e| Failure::input(format!("writing {}: {e}", path.display())))?,
            None => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Failure::input(format!("writing standard output: {e}")))?;
            }
        }
        Ok(if self.positive { EXIT_TRUE } else { EXIT_FALSE })
    }
}

use std::fmt;
use std::io::Read;

use serde::de::DeserializeOwned;

/// Malformed or invalid user input; mapped to exit code 2.
#[derive(Debug)]
pub struct BadInput(pub String);

impl fmt::Display for BadInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

pub fn bad(msg: impl fmt::Display) -> anyhow::Error {
    BadInput(msg.to_string()).into()
}

/// Reads inline JSON (anything starting with `{` or `[`), stdin for `-`, or a file.
pub fn read_source(src: &str) -> anyhow::Result<String> {
    let trimmed = src.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(src.to_string());
    }
    if src == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| bad(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(src).map_err(|e| bad(format!("reading {src}: {e}")))
}

pub fn parse<T: DeserializeOwned>(src: &str) -> anyhow::Result<T> {
    let text = read_source(src)?;
    serde_json::from_str(&text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

/// Converts a core validation error on user data into a bad-input error.
pub fn invalid<T>(r: bombprize::Result<T>) -> anyhow::Result<T> {
    r.map_err(bad)
}

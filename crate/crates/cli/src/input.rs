//! Whitespace-separated signed decimal integers.

use std::io::Read;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid integer {token:?} at token {position}")]
pub struct ParseError {
    pub token: String,
    /// 1-based token index.
    pub position: usize,
}

/// Parses every whitespace-separated token of `text` as an `i64`.
pub fn parse_input(text: &str) -> Result<Vec<i64>, ParseError> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, token)| {
            token.parse().map_err(|_| ParseError {
                token: token.to_owned(),
                position: i + 1,
            })
        })
        .collect()
}

pub fn read_input<R: Read>(mut reader: R) -> Result<Vec<i64>, crate::CliError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    Ok(parse_input(&text)?)
}

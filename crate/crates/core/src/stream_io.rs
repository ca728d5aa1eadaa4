//! Reading cash-flow streams from CSV (`time,amount` header) or JSON
//! (`[{"time": .., "amount": ..}]`).

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::valuation::{CashFlow, CashFlowStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamFormat {
    Csv,
    Json,
}

impl StreamFormat {
    /// `.json` files are JSON; everything else is read as CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => StreamFormat::Json,
            _ => StreamFormat::Csv,
        }
    }
}

fn parse_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_csv(text: &str) -> Result<CashFlowStream> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| parse_error(1, e.to_string()))?
        .clone();
    let is_empty_file = headers.is_empty() || (headers.len() == 1 && headers.get(0) == Some(""));
    if is_empty_file {
        return Ok(CashFlowStream::default());
    }
    if headers.len() != 2 || &headers[0] != "time" || &headers[1] != "amount" {
        return Err(parse_error(1, "expected header `time,amount`"));
    }

    let mut flows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |j: usize, name: &str| -> Result<f64> {
            record[j]
                .parse::<f64>()
                .map_err(|_| parse_error(line, format!("{name} `{}` is not a number", &record[j])))
        };
        let flow = CashFlow::new(field(0, "time")?, field(1, "amount")?)
            .map_err(|e| parse_error(line, e.to_string()))?;
        flows.push(flow);
    }
    Ok(CashFlowStream::new(flows))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFlow {
    time: f64,
    amount: f64,
}

pub fn parse_json(text: &str) -> Result<CashFlowStream> {
    if text.trim().is_empty() {
        return Ok(CashFlowStream::default());
    }
    let raw: Vec<JsonFlow> = serde_json::from_str(text)
        .map_err(|e| parse_error(e.line() as u64, e.to_string()))?;
    let flows = raw
        .into_iter()
        .enumerate()
        .map(|(j, f)| {
            CashFlow::new(f.time, f.amount)
                .map_err(|e| parse_error(0, format!("entry {j}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CashFlowStream::new(flows))
}

pub fn parse_stream(text: &str, format: StreamFormat) -> Result<CashFlowStream> {
    match format {
        StreamFormat::Csv => parse_csv(text),
        StreamFormat::Json => parse_json(text),
    }
}

pub fn load_stream(path: &Path) -> Result<CashFlowStream> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    parse_stream(&text, StreamFormat::from_path(path))
}

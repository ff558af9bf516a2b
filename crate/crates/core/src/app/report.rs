//! Output records and their plain, JSON and CSV renderings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::counters::{CountResult, Method};
use crate::error::{Error, Result};
use crate::model::ProblemTag;
use crate::ENGINE_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Serialized form of a [`CountResult`]; the value travels as a decimal
/// string so that no JSON reader truncates it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub problem: String,
    pub n: usize,
    pub method: String,
    pub value: String,
    pub elapsed_s: f64,
    pub kernel_calls: u64,
    pub engine_version: String,
}

impl From<&CountResult> for Record {
    fn from(r: &CountResult) -> Self {
        Record {
            problem: r.problem.as_str().to_string(),
            n: r.n,
            method: r.method.as_str().to_string(),
            value: r.value.to_string(),
            elapsed_s: r.elapsed_s,
            kernel_calls: r.kernel_calls,
            engine_version: ENGINE_VERSION.to_string(),
        }
    }
}

impl TryFrom<&Record> for CountResult {
    type Error = Error;

    fn try_from(r: &Record) -> Result<CountResult> {
        let bad = |message: String| Error::Parse { line: 0, message };
        Ok(CountResult {
            problem: r.problem.parse::<ProblemTag>().map_err(bad)?,
            n: r.n,
            method: r.method.parse::<Method>().map_err(bad)?,
            value: r
                .value
                .parse::<BigInt>()
                .map_err(|_| bad(format!("bad value `{}`", r.value)))?,
            elapsed_s: r.elapsed_s,
            kernel_calls: r.kernel_calls,
        })
    }
}

pub const CSV_HEADER: &str = "problem,n,method,value,elapsed_s,kernel_calls,engine_version";

pub fn render(results: &[CountResult], format: Format) -> String {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str(CSV_HEADER);
        out.push('\n');
    }
    for r in results {
        let rec = Record::from(r);
        match format {
            Format::Plain => {
                let _ = writeln!(
                    out,
                    "{} n={} method={} value={} kernel_calls={} elapsed={:.3}s",
                    rec.problem, rec.n, rec.method, rec.value, rec.kernel_calls, rec.elapsed_s
                );
            }
            Format::Json => {
                out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
                out.push('\n');
            }
            Format::Csv => {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    rec.problem, rec.n, rec.method, rec.value, rec.elapsed_s, rec.kernel_calls, rec.engine_version
                );
            }
        }
    }
    out
}

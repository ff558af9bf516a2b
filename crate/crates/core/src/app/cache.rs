//! Append-only JSON-lines result cache keyed by
//! `(problem, n, method, engine_version)`.
//!
//! Every append rewrites the file through a sibling temporary and a rename,
//! so readers never observe a torn line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::report::Record;
use crate::counters::{CountResult, Method};
use crate::error::{Error, Result};
use crate::model::ProblemTag;
use crate::ENGINE_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Entry {
    #[serde(flatten)]
    record: Record,
    timestamp: u64,
}

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn entries(&self) -> Result<Vec<Entry>> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        // Lines that fail to parse are ignored: a cache miss is harmless.
        Ok(text
            .lines()
            .filter_map(|l| serde_json::from_str::<Entry>(l).ok())
            .collect())
    }

    /// Most recent entry for this key written by this engine version.
    pub fn lookup(&self, problem: ProblemTag, n: usize, method: Method) -> Result<Option<CountResult>> {
        let hit = self.entries()?.into_iter().rev().find(|e| {
            e.record.problem == problem.as_str()
                && e.record.n == n
                && e.record.method == method.as_str()
                && e.record.engine_version == ENGINE_VERSION
        });
        hit.map(|e| CountResult::try_from(&e.record)).transpose()
    }

    pub fn append(&self, result: &CountResult) -> Result<()> {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = Entry {
            record: Record::from(result),
            timestamp,
        };
        let line = serde_json::to_string(&entry).map_err(|e| Error::Io(e.to_string()))?;

        let mut body = match fs::read(&self.path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        if !body.is_empty() && !body.ends_with(b"\n") {
            body.push(b'\n');
        }
        body.extend_from_slice(line.as_bytes());
        body.push(b'\n');

        let mut tmp_name = self.path.file_name().unwrap_or_default().to_os_string();
        tmp_name.push(format!(".tmp{}", std::process::id()));
        let tmp = self.path.with_file_name(tmp_name);
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&body)?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}

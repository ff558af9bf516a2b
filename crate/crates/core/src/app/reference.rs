//! OEIS b-file ingestion.
//!
//! A b-file is ASCII text with one `index value` pair per line, separated by
//! a single space. Leading whitespace is allowed, `#` starts a comment line,
//! blank lines are ignored, and lines may end in LF or CRLF. Values are
//! arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::model::ProblemTag;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSeries {
    pub series_id: String,
    pub entries: BTreeMap<i64, BigInt>,
    pub source_path: PathBuf,
}

/// How a series index maps onto one of our problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesSpec {
    pub id: &'static str,
    pub problem: ProblemTag,
    /// Board order for index `k` is `stride * k + offset`.
    pub stride: i64,
    pub offset: i64,
    pub file: &'static str,
}

impl SeriesSpec {
    pub fn board_order(&self, index: i64) -> Option<usize> {
        let n = self.stride * index + self.offset;
        (n >= 1).then_some(n as usize)
    }

    pub fn index_of(&self, n: usize) -> Option<i64> {
        let n = n as i64 - self.offset;
        (n >= 0 && n % self.stride == 0).then_some(n / self.stride)
    }
}

pub const KNOWN_SERIES: [SeriesSpec; 5] = [
    SeriesSpec {
        id: "A000170",
        problem: ProblemTag::Queens,
        stride: 1,
        offset: 0,
        file: "b000170.txt",
    },
    SeriesSpec {
        id: "A051906",
        problem: ProblemTag::Toroidal,
        stride: 1,
        offset: 0,
        file: "b051906.txt",
    },
    SeriesSpec {
        id: "A099152",
        problem: ProblemTag::SemiQueens,
        stride: 1,
        offset: 0,
        file: "b099152.txt",
    },
    // Odd orders only: index k is order 2k + 1.
    SeriesSpec {
        id: "A006717",
        problem: ProblemTag::ToroidalSemi,
        stride: 2,
        offset: 1,
        file: "b006717.txt",
    },
    SeriesSpec {
        id: "A003112",
        problem: ProblemTag::Schur,
        stride: 2,
        offset: 1,
        file: "b003112.txt",
    },
];

pub fn series_spec(id: &str) -> Option<&'static SeriesSpec> {
    KNOWN_SERIES.iter().find(|s| s.id.eq_ignore_ascii_case(id))
}

/// `b000170.txt` -> `A000170`.
pub fn series_id_from_path(path: &Path) -> Option<String> {
    let stem = path.file_stem()?.to_str()?;
    let digits = stem.strip_prefix('b')?;
    (digits.len() == 6 && digits.bytes().all(|b| b.is_ascii_digit())).then(|| format!("A{digits}"))
}

pub fn parse_bfile(text: &str, series_id: &str, source_path: &Path) -> Result<ReferenceSeries> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let line = line.trim_start();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let (index, value) = line
            .split_once(' ')
            .ok_or_else(|| bad(format!("expected `index value`, got `{line}`")))?;
        let value = value.trim_end();
        let index: i64 = index
            .parse()
            .map_err(|_| bad(format!("bad index `{index}`")))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| bad(format!("bad value `{value}`")))?;
        if let Some((&last, _)) = entries.last_key_value() {
            if index == last || entries.contains_key(&index) {
                return Err(bad(format!("duplicate index {index}")));
            }
            if index < last {
                return Err(bad(format!("index {index} follows {last}")));
            }
        }
        entries.insert(index, value);
    }
    Ok(ReferenceSeries {
        series_id: series_id.to_string(),
        entries,
        source_path: source_path.to_path_buf(),
    })
}

/// Reads a b-file. The series id comes from `series_id` or, failing that,
/// from a file name of the form `bNNNNNN.txt`.
pub fn load_reference(path: &Path, series_id: Option<&str>) -> Result<ReferenceSeries> {
    let id = match series_id {
        Some(id) => id.to_string(),
        None => series_id_from_path(path).unwrap_or_else(|| "unknown".to_string()),
    };
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_bfile(&text, &id, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ReferenceSeries> {
        parse_bfile(text, "A000170", Path::new("mem"))
    }

    #[test]
    fn parses_prefix() {
        let s = parse("1 1\n2 0\n3 0\n4 2\n5 10").unwrap();
        assert_eq!(s.entries.len(), 5);
        assert_eq!(s.entries[&5], BigInt::from(10));
    }

    #[test]
    fn skips_comments_blank_lines_and_crlf() {
        let s = parse("# A000170\r\n\r\n  1 1\r\n2 0\r\n# trailing\n").unwrap();
        assert_eq!(s.entries.len(), 2);
        let big = parse("1 123456789012345678901234567890\n").unwrap();
        assert_eq!(big.entries[&1].to_string(), "123456789012345678901234567890");
        let neg = parse("0 1\n1 -3\n").unwrap();
        assert_eq!(neg.entries[&1], BigInt::from(-3));
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse("4 two"),
            Err(Error::Parse {
                line: 1,
                message: "bad value `two`".into()
            })
        );
        assert!(matches!(parse("1 1\n1 1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse("# c\n2 1\n1 1"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse("5"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("1\t1"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn index_mapping() {
        let ts = series_spec("A006717").unwrap();
        assert_eq!(ts.board_order(0), Some(1));
        assert_eq!(ts.board_order(3), Some(7));
        assert_eq!(ts.index_of(7), Some(3));
        assert_eq!(ts.index_of(6), None);
        let q = series_spec("a000170").unwrap();
        assert_eq!(q.board_order(0), None);
        assert_eq!(q.board_order(8), Some(8));
        assert_eq!(series_id_from_path(Path::new("data/b051906.txt")).as_deref(), Some("A051906"));
        assert_eq!(series_id_from_path(Path::new("data/notes.txt")), None);
    }
}

//! Expected-verdict corpus: JSON lines, one row per pair.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{classify, ClassifyConfig, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub group: String,
    pub subgroup: String,
    pub expected_formal: bool,
    #[serde(default, alias = "expected_HS_equals_H", skip_serializing_if = "Option::is_none")]
    pub expected_hs_equals_h: Option<bool>,
    /// (m, n) with H*(G/H) ≅ H*(S^n × S^m).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_mn: Option<(usize, usize)>,
    /// Group spec of H itself, for the degree screen.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_group: Option<String>,
    pub source: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowOutcome {
    pub line: usize,
    pub row: CorpusRow,
    pub verdict: Option<Verdict>,
    pub error: Option<String>,
    pub diffs: Vec<String>,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.diffs.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub rows: Vec<RowOutcome>,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusReport {
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            0
        } else {
            1
        }
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &RowOutcome> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

/// Parses JSON lines; blank lines and lines starting with `#` are skipped.
/// Returns (1-based line number, row).
pub fn parse_corpus(text: &str) -> Result<Vec<(usize, CorpusRow)>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let row: CorpusRow =
            serde_json::from_str(t).map_err(|e| Error::invalid(format!("corpus line {}: {e}", i + 1)))?;
        if row.source.trim().is_empty() {
            return Err(Error::invalid(format!("corpus line {}: empty source", i + 1)));
        }
        rows.push((i + 1, row));
    }
    Ok(rows)
}

pub fn load_corpus(path: &Path) -> Result<Vec<(usize, CorpusRow)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    parse_corpus(&text)
}

pub fn check_row(line: usize, row: &CorpusRow, config: &ClassifyConfig) -> RowOutcome {
    let mut out = RowOutcome { line, row: row.clone(), verdict: None, error: None, diffs: Vec::new() };
    let v = match classify(&row.group, &row.subgroup, config) {
        Ok(v) => v,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    if v.formal != Some(row.expected_formal) {
        out.diffs.push(format!("formal: expected {}, got {:?} ({})", row.expected_formal, v.formal, v.branch));
    }
    if let Some(want) = row.expected_hs_equals_h {
        if v.pair.hs_equals_h != want {
            out.diffs.push(format!("H_S = H: expected {want}, got {}", v.pair.hs_equals_h));
        }
    }
    // (m, n) describes G/H, so it is only comparable when H_S = H is asserted.
    if let (Some(want), Some(true)) = (row.expected_mn, row.expected_hs_equals_h) {
        if v.mn != Some(want) {
            out.diffs.push(format!("(m,n): expected {want:?}, got {:?}", v.mn));
        }
    }
    out.verdict = Some(v);
    out
}

/// Checks rows concurrently; the report keeps input order. `filter` keeps rows
/// whose group, subgroup or source contains the given substring.
pub fn verify_rows(rows: &[(usize, CorpusRow)], config: &ClassifyConfig, filter: Option<&str>) -> CorpusReport {
    let selected: Vec<&(usize, CorpusRow)> = rows
        .iter()
        .filter(|(_, r)| filter.is_none_or(|f| r.group.contains(f) || r.subgroup.contains(f) || r.source.contains(f)))
        .collect();
    let outcomes: Vec<RowOutcome> = selected.par_iter().map(|(line, row)| check_row(*line, row, config)).collect();
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    CorpusReport { failed: outcomes.len() - passed, passed, rows: outcomes }
}

pub fn verify_corpus(path: &Path, config: &ClassifyConfig, filter: Option<&str>) -> Result<CorpusReport> {
    Ok(verify_rows(&load_corpus(path)?, config, filter))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROWS: &str = r#"
# comment
{"group":"SU(4)","subgroup":"sub(roots=a1,a3)","expected_formal":true,"expected_HS_equals_H":true,"expected_mn":[4,5],"source":"t"}
{"group":"SU(5)","subgroup":"sub(roots=a1,a3,a4)","expected_formal":false,"expected_HS_equals_H":true,"source":"t"}
"#;

    #[test]
    fn empty_corpus_passes() {
        let r = verify_rows(&parse_corpus("").unwrap(), &ClassifyConfig::default(), None);
        assert_eq!((r.rows.len(), r.exit_code()), (0, 0));
    }

    #[test]
    fn flipped_expectation_is_flagged_once() {
        let rows = parse_corpus(ROWS).unwrap();
        assert_eq!(verify_rows(&rows, &ClassifyConfig::default(), None).failed, 0);
        let mut flipped = rows.clone();
        flipped[1].1.expected_formal = true;
        let r = verify_rows(&flipped, &ClassifyConfig::default(), None);
        assert_eq!((r.failed, r.exit_code()), (1, 1));
        assert_eq!(r.mismatches().next().unwrap().line, 4);
    }

    #[test]
    fn filter_and_parse_errors() {
        let rows = parse_corpus(ROWS).unwrap();
        assert_eq!(verify_rows(&rows, &ClassifyConfig::default(), Some("SU(5)")).rows.len(), 1);
        assert!(parse_corpus("{not json").is_err());
        assert!(parse_corpus(r#"{"group":"A2","subgroup":"v=1,0,-1","expected_formal":true,"source":" "}"#).is_err());
    }
}

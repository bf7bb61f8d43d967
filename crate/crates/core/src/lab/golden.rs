//! Pinned verdicts: claim -> instance key -> verdict, stored as JSON.

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Claim, LabReport, Verdict};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GoldenFile {
    pub verdicts: BTreeMap<Claim, BTreeMap<String, Verdict>>,
}

/// A pinned verdict that changed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Regression {
    pub claim: Claim,
    pub instance: String,
    pub pinned: Verdict,
    pub found: Verdict,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GoldenDiff {
    pub regressions: Vec<Regression>,
    /// Reports with no pinned verdict, as (claim, instance key).
    pub unpinned: Vec<(Claim, String)>,
}

impl GoldenDiff {
    pub fn is_clean(&self) -> bool {
        self.regressions.is_empty()
    }

    /// Claims with at least one regression, each once, in order.
    pub fn regressed_claims(&self) -> Vec<Claim> {
        let mut claims: Vec<Claim> = self.regressions.iter().map(|r| r.claim).collect();
        claims.sort();
        claims.dedup();
        claims
    }
}

impl GoldenFile {
    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a LabReport>) -> Self {
        let mut golden = GoldenFile::default();
        for r in reports {
            golden.verdicts.entry(r.claim).or_default().insert(r.instance.key(), r.verdict);
        }
        golden
    }

    pub fn len(&self) -> usize {
        self.verdicts.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, claim: Claim, key: &str) -> Option<Verdict> {
        self.verdicts.get(&claim)?.get(key).copied()
    }

    pub fn compare<'a>(&self, reports: impl IntoIterator<Item = &'a LabReport>) -> GoldenDiff {
        let mut diff = GoldenDiff::default();
        for r in reports {
            let key = r.instance.key();
            match self.get(r.claim, &key) {
                Some(pinned) if pinned != r.verdict => {
                    diff.regressions.push(Regression { claim: r.claim, instance: key, pinned, found: r.verdict })
                }
                Some(_) => {}
                None => diff.unpinned.push((r.claim, key)),
            }
        }
        diff
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("golden files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// `Ok(None)` when the file does not exist.
    pub fn load(path: &Path) -> io::Result<Option<Self>> {
        match std::fs::read_to_string(path) {
            Ok(text) => {
                GoldenFile::from_json(&text).map(Some).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.to_json())
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::topo::{homology, SimplicialComplex};

/// Bumped whenever a harness changes what it computes; part of every
/// report and cache key.
pub const VERSION: &str = concat!("brauer-", env!("CARGO_PKG_VERSION"), "+r1");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

/// Unreduced integral homology by degree, from 0 to the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRecord {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
}

impl HomologyRecord {
    pub fn of(c: &SimplicialComplex) -> Result<HomologyRecord> {
        let h = homology(c, false)?;
        Ok(HomologyRecord {
            betti: h.groups.iter().map(|g| g.betti).collect(),
            torsion: h.groups.iter().map(|g| g.torsion.clone()).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub task: String,
    pub instance: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub homology: BTreeMap<String, HomologyRecord>,
    pub counts: BTreeMap<String, usize>,
    pub timing_ms: Option<u64>,
    pub version: String,
}

impl VerificationReport {
    pub fn new(task: &str, instance: impl Into<String>) -> VerificationReport {
        VerificationReport {
            task: task.to_string(),
            instance: instance.into(),
            pass: true,
            checks: Vec::new(),
            homology: BTreeMap::new(),
            counts: BTreeMap::new(),
            timing_ms: None,
            version: VERSION.to_string(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, witness: Vec<String>) {
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness,
        });
    }

    /// A check whose failure is an `Err` carrying the witness.
    pub fn require(&mut self, name: impl Into<String>, outcome: std::result::Result<(), String>) {
        match outcome {
            Ok(()) => self.check(name, true, Vec::new()),
            Err(w) => self.check(name, false, vec![w]),
        }
    }

    pub fn count(&mut self, name: impl Into<String>, n: usize) {
        self.counts.insert(name.into(), n);
    }

    pub fn record_homology(
        &mut self,
        name: impl Into<String>,
        c: &SimplicialComplex,
    ) -> Result<()> {
        self.homology.insert(name.into(), HomologyRecord::of(c)?);
        Ok(())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Appends the checks of `other` under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for c in other.checks {
            self.check(format!("{prefix}{}", c.name), c.pass, c.witness);
        }
        for (k, v) in other.homology {
            self.homology.insert(format!("{prefix}{k}"), v);
        }
        for (k, v) in other.counts {
            self.counts.insert(format!("{prefix}{k}"), v);
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{} {} [{verdict}]", self.task, self.instance);
        for c in &self.checks {
            let _ = writeln!(s, "  {:<4} {}", if c.pass { "ok" } else { "FAIL" }, c.name);
            for w in &c.witness {
                let _ = writeln!(s, "         witness: {w}");
            }
        }
        for (k, h) in &self.homology {
            let _ = writeln!(
                s,
                "  homology {k}: betti {:?} torsion {:?}",
                h.betti, h.torsion
            );
        }
        for (k, n) in &self.counts {
            let _ = writeln!(s, "  count {k} = {n}");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "  timing_ms = {t}");
        }
        let _ = writeln!(s, "  version {}", self.version);
        s
    }
}

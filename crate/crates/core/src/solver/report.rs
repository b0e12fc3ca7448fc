use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::boost::ConstraintSystem;
use crate::symbolic::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintRecord {
    pub id: String,
    pub slot: Option<String>,
    pub equation: String,
}

/// A derived statement together with the constraint ids it rests on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    pub backed_by: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremFlag {
    pub name: String,
    pub statement: String,
    pub holds: bool,
    pub backed_by: Vec<String>,
}

/// Comparison of an obtained closed form with the expected one (exact equality).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub obtained: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub pipeline: String,
    pub constraints: Vec<ConstraintRecord>,
    pub forced_zero: Vec<Claim>,
    pub ratios: Vec<Claim>,
    pub multiplier: Option<Claim>,
    pub final_equation: Option<String>,
    pub theorems: Vec<TheoremFlag>,
    pub checks: Vec<Check>,
    pub trace: Vec<String>,
    pub verdict: String,
}

impl DerivationReport {
    pub fn new(pipeline: &str) -> Self {
        DerivationReport {
            pipeline: pipeline.to_string(),
            ..Default::default()
        }
    }

    /// Record a constraint system under a stage label; returns the stage
    /// label so callers can form global ids with [`gid`].
    pub fn record(&mut self, stage: &str, cs: &ConstraintSystem) {
        for c in &cs.equations {
            self.constraints.push(ConstraintRecord {
                id: gid(stage, &c.id),
                slot: c.slot.map(|s| s.to_string()),
                equation: format!("{} = 0", c.expr),
            });
        }
        self.note(format!("[{stage}] {} equation(s)", cs.len()));
        for c in &cs.equations {
            self.note(format!("  {} : {} = 0", gid(stage, &c.id), c.expr));
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    pub fn forced(&mut self, statement: impl Into<String>, backed_by: Vec<String>) {
        self.forced_zero.push(Claim {
            statement: statement.into(),
            backed_by,
        });
    }

    pub fn ratio(&mut self, statement: impl Into<String>, backed_by: Vec<String>) {
        self.ratios.push(Claim {
            statement: statement.into(),
            backed_by,
        });
    }

    pub fn theorem(&mut self, name: &str, statement: &str, holds: bool, backed_by: Vec<String>) {
        self.theorems.push(TheoremFlag {
            name: name.into(),
            statement: statement.into(),
            holds,
            backed_by,
        });
    }

    pub fn check(&mut self, name: &str, expected: &Scalar, obtained: &Scalar) -> bool {
        let pass = expected == obtained;
        self.checks.push(Check {
            name: name.into(),
            expected: expected.to_string(),
            obtained: obtained.to_string(),
            pass,
        });
        pass
    }

    pub fn check_text(&mut self, name: &str, expected: &str, obtained: &str) -> bool {
        let pass = expected == obtained;
        self.checks.push(Check {
            name: name.into(),
            expected: expected.into(),
            obtained: obtained.into(),
            pass,
        });
        pass
    }

    pub fn check_flag(&mut self, name: &str, pass: bool) -> bool {
        self.checks.push(Check {
            name: name.into(),
            expected: "true".into(),
            obtained: pass.to_string(),
            pass,
        });
        pass
    }

    /// True when every check passed and every theorem flag holds.
    pub fn reproduced(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.theorems.iter().all(|t| t.holds)
    }

    /// Ids cited by claims or theorem flags that do not name a recorded constraint.
    pub fn dangling_citations(&self) -> Vec<String> {
        let known: std::collections::BTreeSet<&str> = self.constraints.iter().map(|c| c.id.as_str()).collect();
        let claims = self
            .forced_zero
            .iter()
            .chain(&self.ratios)
            .chain(&self.multiplier)
            .flat_map(|c| c.backed_by.iter());
        let flags = self.theorems.iter().flat_map(|t| t.backed_by.iter());
        claims
            .chain(flags)
            .filter(|id| !known.contains(id.as_str()))
            .cloned()
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let cite = |ids: &[String]| {
            if ids.is_empty() {
                String::new()
            } else {
                format!("  [{}]", ids.join(", "))
            }
        };
        let _ = writeln!(s, "pipeline: {}", self.pipeline);
        for line in &self.trace {
            let _ = writeln!(s, "{line}");
        }
        if !self.forced_zero.is_empty() {
            let _ = writeln!(s, "forced:");
            for c in &self.forced_zero {
                let _ = writeln!(s, "  {}{}", c.statement, cite(&c.backed_by));
            }
        }
        if !self.ratios.is_empty() {
            let _ = writeln!(s, "solved:");
            for c in &self.ratios {
                let _ = writeln!(s, "  {}{}", c.statement, cite(&c.backed_by));
            }
        }
        if let Some(g) = &self.multiplier {
            let _ = writeln!(s, "multiplier: {}{}", g.statement, cite(&g.backed_by));
        }
        for t in &self.theorems {
            let mark = if t.holds { "holds" } else { "FAILS" };
            let _ = writeln!(s, "{} ({mark}): {}{}", t.name, t.statement, cite(&t.backed_by));
        }
        for c in &self.checks {
            let mark = if c.pass { "ok" } else { "MISMATCH" };
            let _ = writeln!(s, "check {} {mark}: expected {} obtained {}", c.name, c.expected, c.obtained);
        }
        let _ = writeln!(s, "verdict: {}", self.verdict);
        if let Some(eq) = &self.final_equation {
            let _ = writeln!(s, "{eq}");
        }
        s
    }
}

/// Report-wide constraint id: stage label plus the id inside its system.
pub fn gid(stage: &str, local: &str) -> String {
    format!("{stage}.{local}")
}

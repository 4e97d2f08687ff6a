//! Serializable records and the text, JSON and CSV renderings.

use nilvar_core::invariants::InvariantProfile;
use serde::{Deserialize, Serialize};

use crate::checks::Check;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub name: String,
    pub orbit_dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub betti: Vec<usize>,
    pub max_abelian_lower: usize,
    pub max_abelian_upper: usize,
    pub nilpotency_class: usize,
}

impl ProfileRow {
    pub fn new(name: &str, p: &InvariantProfile) -> Self {
        ProfileRow {
            name: name.into(),
            orbit_dim: p.orbit_dim,
            center_dim: p.center_dim,
            derived_dim: p.derived_dim,
            betti: p.betti.clone(),
            max_abelian_lower: p.max_abelian.lower,
            max_abelian_upper: p.max_abelian.upper,
            nilpotency_class: p.nilpotency_class,
        }
    }

    pub fn max_abelian(&self) -> String {
        if self.max_abelian_lower == self.max_abelian_upper {
            self.max_abelian_lower.to_string()
        } else {
            format!("{}..{}", self.max_abelian_lower, self.max_abelian_upper)
        }
    }

    pub const CSV_HEADER: &'static str = "name,orbit,center,derived,betti,max_abelian,class";

    pub fn csv(&self) -> String {
        let betti: Vec<String> = self.betti.iter().map(ToString::to_string).collect();
        format!(
            "{},{},{},{},{},{},{}",
            csv_field(&self.name),
            self.orbit_dim,
            self.center_dim,
            self.derived_dim,
            betti.join(" "),
            self.max_abelian(),
            self.nilpotency_class
        )
    }

    pub fn text(&self) -> String {
        format!(
            "{:<12} orbit {:>2}  center {}  derived {}  betti {:?}  max-abelian {}",
            self.name,
            self.orbit_dim,
            self.center_dim,
            self.derived_dim,
            self.betti,
            self.max_abelian()
        )
    }
}

/// Quotes a CSV field when it contains a separator, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
            for d in &c.details {
                out.push_str("    ");
                out.push_str(d);
                out.push('\n');
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{passed}/{} checks pass\n", self.checks.len()));
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("id,title,passed,summary\n");
        for c in &self.checks {
            out.push_str(&format!("{},{},{},{}\n", c.id, csv_field(&c.title), c.passed, csv_field(&c.summary)));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Text | Format::Dot => self.text(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            seed: 7,
            checks: vec![Check {
                id: "1".into(),
                title: "orbit, dims".into(),
                passed: false,
                summary: "say \"hi\"".into(),
                details: vec!["a".into()],
            }],
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(Report::from_json(&r.json()).unwrap(), r);
        assert!(!r.passed());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(sample().csv().lines().nth(1).unwrap(), "1,\"orbit, dims\",false,\"say \"\"hi\"\"\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}

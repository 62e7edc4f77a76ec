//! What every command emits. The machine form is JSON and parses back into
//! [`Report`]; the table form is for people.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use reflexive_core::linalg::HomologyGroup;
use reflexive_core::validation::{Check, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub n: usize,
    /// Tensor weight, for weight-graded tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl DegreeRecord {
    pub fn new(n: usize, g: &HomologyGroup) -> Self {
        DegreeRecord {
            n,
            q: None,
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
        }
    }

    pub fn weighted(n: usize, q: usize, g: &HomologyGroup) -> Self {
        DegreeRecord { q: Some(q), ..Self::new(n, g) }
    }
}

/// One labelled homology sequence, e.g. `HR+(Z) [bicomplex]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub label: String,
    pub degrees: Vec<DegreeRecord>,
}

impl Section {
    pub fn new(label: impl Into<String>, groups: &[HomologyGroup]) -> Self {
        Section {
            label: label.into(),
            degrees: groups.iter().enumerate().map(|(n, g)| DegreeRecord::new(n, g)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
    #[serde(default)]
    pub sections: Vec<Section>,
    #[serde(default)]
    pub violations: Vec<Violation>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
}

impl Report {
    pub fn new(command: &str, ring: impl Into<String>) -> Self {
        Report {
            command: command.to_string(),
            ring: ring.into(),
            sign: None,
            sections: Vec::new(),
            violations: Vec::new(),
            checks: Vec::new(),
            summary: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for section in &self.sections {
            let _ = writeln!(out, "{}", section.label);
            let weighted = section.degrees.iter().any(|d| d.q.is_some());
            if weighted {
                let _ = writeln!(out, "  {:>3}  {:>3}  group", "n", "q");
            } else {
                let _ = writeln!(out, "  {:>3}  group", "n");
            }
            for d in &section.degrees {
                let g = render(&self.ring, d);
                match d.q {
                    Some(q) => {
                        let _ = writeln!(out, "  {:>3}  {:>3}  {g}", d.n, q);
                    }
                    None => {
                        let _ = writeln!(out, "  {:>3}  {g}", d.n);
                    }
                }
            }
            out.push('\n');
        }
        if !self.violations.is_empty() {
            let _ = writeln!(out, "violations:");
            for v in &self.violations {
                let _ = writeln!(out, "  {v}");
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let _ = writeln!(out, "  {c}");
            }
        }
        if let Some(s) = &self.summary {
            let _ = writeln!(out, "{s}");
        }
        out
    }
}

fn render(ring: &str, d: &DegreeRecord) -> String {
    let mut parts = Vec::new();
    match d.free_rank {
        0 => {}
        1 => parts.push(ring.to_string()),
        r => parts.push(format!("{ring}^{r}")),
    }
    let mut i = 0;
    while i < d.torsion.len() {
        let t = d.torsion[i];
        let run = d.torsion[i..].iter().take_while(|&&x| x == t).count();
        parts.push(if run == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{run}") });
        i += run;
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use reflexive_core::linalg::Ring;

    #[test]
    fn machine_form_round_trips() {
        let mut r = Report::new("compute", "Z");
        r.sign = Some("+".into());
        r.sections.push(Section::new(
            "HR+",
            &[HomologyGroup::free(Ring::Integers, 1), HomologyGroup::new(Ring::Integers, 0, &[2])],
        ));
        r.checks.push(Check::new("x", true, ""));
        let back: Report = serde_json::from_str(&r.machine()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn table_rendering() {
        let mut r = Report::new("compute", "Z");
        r.sections.push(Section::new("HR+", &[HomologyGroup::new(Ring::Integers, 1, &[2]), HomologyGroup::zero(Ring::Integers)]));
        assert_eq!(r.table(), "HR+\n    n  group\n    0  Z + Z/2\n    1  0\n\n");
    }
}

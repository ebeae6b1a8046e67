use serde::Serialize;

use crate::io::{sig17, sig17_pairs};

/// Direction of the comparison between `observed` and `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Passes when `observed ≤ bound`.
    AtMost,
    /// Passes when `observed ≥ bound`.
    AtLeast,
    /// Passes when `observed == bound` (integer-valued checks).
    Equal,
}

/// The vector that realizes the worst observed value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Space the coordinates live in (`C0`, `C1`, `C2`, or `T` for edges).
    pub space: String,
    #[serde(serialize_with = "sig17_pairs")]
    pub coords: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaCheck {
    pub check: String,
    pub relation: Relation,
    #[serde(serialize_with = "sig17")]
    pub bound: f64,
    #[serde(serialize_with = "sig17")]
    pub observed: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl LemmaCheck {
    pub fn new(check: impl Into<String>, relation: Relation, bound: f64, observed: f64) -> Self {
        let pass = match relation {
            Relation::AtMost => observed <= bound,
            Relation::AtLeast => observed >= bound,
            Relation::Equal => observed == bound,
        };
        Self { check: check.into(), relation, bound, observed, pass, witness: None }
    }

    pub fn at_most(check: impl Into<String>, bound: f64, observed: f64) -> Self {
        Self::new(check, Relation::AtMost, bound, observed)
    }

    pub fn at_least(check: impl Into<String>, bound: f64, observed: f64) -> Self {
        Self::new(check, Relation::AtLeast, bound, observed)
    }

    /// Attaches a witness; kept only on failing checks.
    pub fn with_witness(mut self, witness: Witness) -> Self {
        if !self.pass {
            self.witness = Some(witness);
        }
        self
    }

    /// `observed − bound` signed so that positive means violation.
    pub fn excess(&self) -> f64 {
        match self.relation {
            Relation::AtLeast => self.bound - self.observed,
            _ => self.observed - self.bound,
        }
    }
}

/// A list of checks, serialized as a JSON array sorted by check name.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn new(mut checks: Vec<LemmaCheck>) -> Self {
        checks.sort_by(|a, b| a.check.cmp(&b.check));
        Self { checks }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn merge(reports: impl IntoIterator<Item = LemmaReport>) -> Self {
        Self::new(reports.into_iter().flat_map(|r| r.checks).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("in-memory serialization")
    }
}

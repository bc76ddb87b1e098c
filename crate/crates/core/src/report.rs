//! Pass/fail records for checked identities.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::laurent::LaurentPolynomial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub identity: String,
    pub params: Value,
    pub pass: bool,
    /// Number of terms of `lhs - rhs`; zero iff the identity holds.
    pub residual_terms: usize,
}

impl Report {
    pub fn compare(identity: impl Into<String>, params: Value, lhs: &LaurentPolynomial, rhs: &LaurentPolynomial) -> Self {
        let residual_terms = if lhs.nvars() == rhs.nvars() { (lhs - rhs).len() } else { usize::MAX };
        Report { identity: identity.into(), params, pass: residual_terms == 0, residual_terms }
    }

    pub fn flag(identity: impl Into<String>, params: Value, pass: bool) -> Self {
        Report { identity: identity.into(), params, pass, residual_terms: usize::from(!pass) }
    }
}

/// Reports plus a verdict over all of them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    pub name: String,
    pub reports: Vec<Report>,
}

impl Suite {
    pub fn new(name: impl Into<String>) -> Self {
        Suite { name: name.into(), reports: Vec::new() }
    }

    pub fn push(&mut self, r: Report) {
        self.reports.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = Report>) {
        self.reports.extend(rs);
    }

    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Report> {
        self.reports.iter().filter(|r| !r.pass)
    }
}

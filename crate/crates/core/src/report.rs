//! Residual bookkeeping: named sup/mean statistics against tolerances.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, Serialize)]
pub struct ResidualEntry {
    pub name: String,
    pub sup: f64,
    pub mean: f64,
    pub count: usize,
    pub tol: f64,
    pub pass: bool,
}

/// A set of named residuals with metadata. `pass` holds iff every entry's
/// sup is within its tolerance.
#[derive(Clone, Debug, Serialize, Default)]
pub struct ResidualReport {
    pub label: String,
    pub seed: u64,
    pub entries: Vec<ResidualEntry>,
}

impl ResidualReport {
    pub fn new(label: impl Into<String>, seed: u64) -> Self {
        ResidualReport {
            label: label.into(),
            seed,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, sup: f64, mean: f64, count: usize, tol: f64) {
        self.entries.push(ResidualEntry {
            name: name.into(),
            sup,
            mean,
            count,
            tol,
            pass: sup <= tol && sup.is_finite(),
        });
    }

    /// Record a sample set: sup and mean are computed here.
    pub fn push_samples(&mut self, name: impl Into<String>, samples: &[f64], tol: f64) {
        let sup = samples.iter().cloned().fold(0.0f64, f64::max);
        let mean = if samples.is_empty() {
            0.0
        } else {
            samples.iter().sum::<f64>() / samples.len() as f64
        };
        self.push(name, sup, mean, samples.len(), tol);
    }

    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn merge(&mut self, other: ResidualReport) {
        self.entries.extend(other.entries);
    }

    pub fn sup(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.sup)
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] seed={}", self.label, self.seed)?;
        for e in &self.entries {
            writeln!(
                f,
                "  {}  {:<44} sup={:<12.4e} mean={:<12.4e} n={:<5} tol={:.1e}",
                if e.pass { "PASS" } else { "FAIL" },
                e.name,
                e.sup,
                e.mean,
                e.count,
                e.tol
            )?;
        }
        Ok(())
    }
}

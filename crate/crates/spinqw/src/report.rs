//! Verification reports shared by the Yang-Baxter checker and the identity suites.

use serde::Serialize;

use crate::algebra::{format_q, Field, Q};

/// Failures kept verbatim in a report; the rest are only counted.
pub const MAX_LISTED: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    pub boundaries_checked: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    pub max_deviation: f64,
    pub passed: bool,
    pub skipped: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, mode: Mode, seed: u64) -> Self {
        VerificationReport {
            name: name.into(),
            mode,
            seed,
            trials: 0,
            boundaries_checked: 0,
            failure_count: 0,
            failures: Vec::new(),
            max_deviation: 0.0,
            passed: true,
            skipped: false,
            notes: Vec::new(),
        }
    }

    /// Records one exact comparison.
    pub fn exact<K: Field>(&mut self, instance: impl FnOnce() -> String, lhs: &K, rhs: &K) {
        self.boundaries_checked += 1;
        if lhs != rhs {
            let dev = (lhs.clone() - rhs.clone()).magnitude();
            self.max_deviation = self.max_deviation.max(dev);
            self.fail(instance(), fmt_scalar(lhs), fmt_scalar(rhs));
        }
    }

    /// Records one numeric comparison with tolerance `tol`.
    pub fn numeric<K: Field>(&mut self, instance: impl FnOnce() -> String, lhs: &K, rhs: &K, tol: f64) {
        self.boundaries_checked += 1;
        let dev = (lhs.clone() - rhs.clone()).magnitude();
        if dev.is_nan() || dev > self.max_deviation {
            self.max_deviation = if dev.is_nan() { f64::INFINITY } else { dev };
        }
        if !(dev <= tol) {
            self.fail(instance(), fmt_scalar(lhs), fmt_scalar(rhs));
        }
    }

    pub fn fail(&mut self, instance: String, lhs: String, rhs: String) {
        self.failure_count += 1;
        self.passed = false;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(Failure { instance, lhs, rhs });
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn skip(&mut self, why: impl Into<String>) {
        self.skipped = true;
        self.notes.push(why.into());
    }

    /// Folds another report's counts into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.trials += other.trials;
        self.boundaries_checked += other.boundaries_checked;
        self.failure_count += other.failure_count;
        self.passed &= other.passed;
        self.max_deviation = self.max_deviation.max(other.max_deviation);
        for f in other.failures {
            if self.failures.len() < MAX_LISTED {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }
}

fn fmt_scalar<K: Field>(x: &K) -> String {
    let c = x.to_c64();
    if c.im == 0.0 {
        if let Some(q) = as_q(x) {
            return format_q(&q);
        }
    }
    format!("{c}")
}

fn as_q<K: Field>(x: &K) -> Option<Q> {
    let any: &dyn std::any::Any = x;
    any.downcast_ref::<Q>().cloned()
}

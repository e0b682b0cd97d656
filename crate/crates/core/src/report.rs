//! Machine-readable verdicts for the numerical checkers.
//!
//! A checker can certify a violation (with a witness) but can never certify
//! the positive property beyond the resolution it was run at, so the passing
//! verdicts are `Pass` (exact/analytic checks) and `Inconclusive` with a
//! resolution descriptor (semi-decision procedures).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Violation,
    Inconclusive,
}

/// Structured payload locating a violation or summarizing a statistic.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Derivative order (complete-monotonicity checks).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    /// Location on the evaluation axis; `None` with `at_origin_limit` set
    /// means the t -> 0+ limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_origin_limit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub statistic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Grid/order/trial limits the check was run at. Always present for
    /// `Inconclusive`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<String>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport {
            verdict: Verdict::Pass,
            witness: None,
            resolution: None,
        }
    }

    pub fn pass_at(resolution: impl Into<String>) -> Self {
        CheckReport {
            verdict: Verdict::Pass,
            witness: None,
            resolution: Some(resolution.into()),
        }
    }

    pub fn pass_with(witness: Witness, resolution: impl Into<String>) -> Self {
        CheckReport {
            verdict: Verdict::Pass,
            witness: Some(witness),
            resolution: Some(resolution.into()),
        }
    }

    /// A violation always carries its witness.
    pub fn violation(witness: Witness) -> Self {
        CheckReport {
            verdict: Verdict::Violation,
            witness: Some(witness),
            resolution: None,
        }
    }

    pub fn violation_at(witness: Witness, resolution: impl Into<String>) -> Self {
        CheckReport {
            verdict: Verdict::Violation,
            witness: Some(witness),
            resolution: Some(resolution.into()),
        }
    }

    /// An inconclusive verdict always states the resolution it stopped at.
    pub fn inconclusive(resolution: impl Into<String>) -> Self {
        CheckReport {
            verdict: Verdict::Inconclusive,
            witness: None,
            resolution: Some(resolution.into()),
        }
    }

    pub fn inconclusive_with(witness: Witness, resolution: impl Into<String>) -> Self {
        CheckReport {
            verdict: Verdict::Inconclusive,
            witness: Some(witness),
            resolution: Some(resolution.into()),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violation_carries_witness_and_inconclusive_carries_resolution() {
        let v = CheckReport::violation(Witness {
            order: Some(2),
            at_origin_limit: Some("-inf".into()),
            ..Default::default()
        });
        assert!(v.witness.is_some());
        let i = CheckReport::inconclusive("no violation up to order 12");
        assert!(i.resolution.is_some());
    }

    #[test]
    fn json_round_trip() {
        let r = CheckReport::violation_at(
            Witness {
                eigenvalue: Some(-0.25),
                nodes: Some(vec![0.0, 1.0]),
                ..Default::default()
            },
            "grid tmax=10 n=256",
        );
        let s = r.to_json();
        let back: CheckReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(s.contains("VIOLATION"));
    }
}

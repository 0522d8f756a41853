use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    /// |actual − expected| ≤ tol.
    pub fn close(name: &str, expected: f64, actual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            expected: json!(expected),
            actual: json!(actual),
            tolerance: Some(tol),
            pass: (actual - expected).abs() <= tol,
        }
    }

    /// actual ≤ bound + tol.
    pub fn at_most(name: &str, bound: f64, actual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            expected: json!(format!("<= {bound}")),
            actual: json!(actual),
            tolerance: Some(tol),
            pass: actual <= bound + tol,
        }
    }

    /// actual ≥ bound − tol.
    pub fn at_least(name: &str, bound: f64, actual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            expected: json!(format!(">= {bound}")),
            actual: json!(actual),
            tolerance: Some(tol),
            pass: actual >= bound - tol,
        }
    }

    pub fn equal<T: Serialize + PartialEq>(name: &str, expected: T, actual: T) -> Self {
        let pass = expected == actual;
        Check {
            name: name.into(),
            expected: json!(expected),
            actual: json!(actual),
            tolerance: None,
            pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite: suite.into(),
            seed,
            pass: checks.iter().all(|c| c.pass),
            checks,
            wall_time_s: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_pass_needs_every_check() {
        let ok = Check::close("a", 1.0, 1.0 + 1e-9, 1e-6);
        let bad = Check::at_most("b", 0.5, 0.6, 1e-6);
        assert!(SuiteReport::new("s", 1, vec![ok.clone()]).pass);
        assert!(!SuiteReport::new("s", 1, vec![ok, bad]).pass);
        assert!(SuiteReport::new("s", 1, vec![]).pass);
    }

    #[test]
    fn timing_omitted_by_default() {
        let r = SuiteReport::new("s", 7, vec![Check::equal("n", 0, 0)]);
        let s = serde_json::to_string(&r).unwrap();
        assert!(!s.contains("wall_time"));
        assert!(s.contains("\"seed\":7"));
    }
}

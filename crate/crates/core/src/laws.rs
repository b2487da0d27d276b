//! Law-check reports shared by the monad and effect-algebra suites.

use serde::Serialize;
use serde_json::Value;

/// Tally for a single law: how many instances were checked and how many
/// failed, with the first failing instance kept for replay.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub checked: usize,
    pub violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    /// Largest distance observed where the law demands equality (only
    /// reported by laws on floating-point carriers).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_spread: Option<f64>,
}

impl LawCheck {
    fn new(law: &str) -> Self {
        Self {
            law: law.to_string(),
            checked: 0,
            violations: 0,
            counterexample: None,
            max_spread: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub laws: Vec<LawCheck>,
}

impl LawReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        Self {
            suite: suite.into(),
            seed,
            pass: true,
            laws: Vec::new(),
        }
    }

    fn entry(&mut self, law: &str) -> &mut LawCheck {
        let idx = match self.laws.iter().position(|l| l.law == law) {
            Some(i) => i,
            None => {
                self.laws.push(LawCheck::new(law));
                self.laws.len() - 1
            }
        };
        &mut self.laws[idx]
    }

    /// Registers a law so it shows up in the report even if no instance of
    /// its premise was found.
    pub fn declare(&mut self, law: &str) {
        self.entry(law);
    }

    /// Records one instance of `law`. The witness is only built on failure.
    pub fn check(&mut self, law: &str, holds: bool, witness: impl FnOnce() -> Value) {
        let e = self.entry(law);
        e.checked += 1;
        if !holds {
            e.violations += 1;
            if e.counterexample.is_none() {
                e.counterexample = Some(witness());
            }
            self.pass = false;
        }
    }

    pub fn spread(&mut self, law: &str, distance: f64) {
        let e = self.entry(law);
        e.max_spread = Some(e.max_spread.map_or(distance, |m| m.max(distance)));
    }

    pub fn law(&self, law: &str) -> Option<&LawCheck> {
        self.laws.iter().find(|l| l.law == law)
    }

    pub fn total_checked(&self) -> usize {
        self.laws.iter().map(|l| l.checked).sum()
    }

    pub fn total_violations(&self) -> usize {
        self.laws.iter().map(|l| l.violations).sum()
    }

    /// Combines two reports over disjoint samples. Order of laws follows
    /// first appearance; the earlier report's counterexamples win.
    pub fn merge(mut self, other: LawReport) -> LawReport {
        for l in other.laws {
            let e = self.entry(&l.law);
            e.checked += l.checked;
            e.violations += l.violations;
            if e.counterexample.is_none() {
                e.counterexample = l.counterexample;
            }
            e.max_spread = match (e.max_spread, l.max_spread) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            };
        }
        self.pass = self.laws.iter().all(LawCheck::passed);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn records_first_counterexample() {
        let mut r = LawReport::new("t", 7);
        r.check("a", true, || json!(0));
        r.check("a", false, || json!(1));
        r.check("a", false, || json!(2));
        let a = r.law("a").unwrap();
        assert_eq!((a.checked, a.violations), (3, 2));
        assert_eq!(a.counterexample, Some(json!(1)));
        assert!(!r.pass);
    }

    #[test]
    fn merge_is_associative_on_tallies() {
        let mk = |n: usize, bad: bool| {
            let mut r = LawReport::new("t", 0);
            for i in 0..n {
                r.check("x", !(bad && i == 0), || json!(i));
            }
            r.spread("x", n as f64);
            r
        };
        let left = mk(2, false).merge(mk(3, true)).merge(mk(1, false));
        let right = mk(2, false).merge(mk(3, true).merge(mk(1, false)));
        assert_eq!(left, right);
        assert_eq!(left.law("x").unwrap().checked, 6);
        assert_eq!(left.law("x").unwrap().max_spread, Some(3.0));
        assert!(!left.pass);
    }
}

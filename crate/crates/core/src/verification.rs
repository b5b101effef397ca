//! Outcome of a finite verification sweep.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Verification {
    pub passed: bool,
    pub checked: u64,
    pub skipped: u64,
    /// The first failing instance, if any.
    pub counterexample: Option<Value>,
    pub details: Map<String, Value>,
}

impl Default for Verification {
    fn default() -> Self {
        Verification::new()
    }
}

impl Verification {
    pub fn new() -> Verification {
        Verification {
            passed: true,
            checked: 0,
            skipped: 0,
            counterexample: None,
            details: Map::new(),
        }
    }

    /// Records one checked instance; the witness is built only on the first
    /// failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
        ok
    }

    pub fn fail(&mut self, witness: Value) {
        if self.passed {
            self.counterexample = Some(witness);
        }
        self.passed = false;
    }

    pub fn skip(&mut self, n: u64) {
        self.skipped += n;
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(
            key.to_string(),
            serde_json::to_value(value).expect("plain data serializes"),
        );
    }

    /// Fails unless at least `floor` instances were checked.
    pub fn require_floor(&mut self, floor: u64) {
        self.detail("floor", floor);
        if self.checked < floor {
            self.fail(serde_json::json!({
                "reason": "too few checked instances",
                "checked": self.checked,
                "floor": floor,
            }));
        }
    }

    /// Folds another sweep into this one, prefixing its details.
    pub fn absorb(&mut self, prefix: &str, other: Verification) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        if !other.passed {
            let mut w = Map::new();
            w.insert("part".into(), Value::String(prefix.into()));
            w.insert("witness".into(), other.counterexample.unwrap_or(Value::Null));
            self.fail(Value::Object(w));
        }
        for (k, v) in other.details {
            self.details.insert(format!("{prefix}.{k}"), v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keeps_first_failure() {
        let mut v = Verification::new();
        v.record(true, || json!(0));
        v.record(false, || json!(1));
        v.record(false, || json!(2));
        assert!(!v.passed);
        assert_eq!(v.checked, 3);
        assert_eq!(v.counterexample, Some(json!(1)));
    }

    #[test]
    fn floor_enforced() {
        let mut v = Verification::new();
        v.record(true, || json!(null));
        v.require_floor(2);
        assert!(!v.passed);
    }
}

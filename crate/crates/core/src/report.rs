//! Parameter records, check reports and the batch suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::checks::{self, CHECK_NAMES};
use crate::curve::{CurveTag, CurveType};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::string_group::WeightSeq;

/// A `key → value` parameter record. Keys are normalized so that `n-max`
/// and `n_max` coincide.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, String>);

fn normalize(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('-', "_")
}

impl Params {
    pub fn new() -> Params {
        Params::default()
    }

    pub fn set(&mut self, key: &str, value: &str) -> &mut Params {
        self.0.insert(normalize(key), value.trim().to_string());
        self
    }

    pub fn with(mut self, key: &str, value: &str) -> Params {
        self.set(key, value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(&normalize(key)).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Entries of `other` override entries of `self`.
    pub fn merged(&self, other: &Params) -> Params {
        let mut out = self.clone();
        out.0.extend(other.0.iter().map(|(k, v)| (k.clone(), v.clone())));
        out
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse_config(text: &str) -> Result<Params> {
        let mut p = Params::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", i + 1)))?;
            p.set(k, v);
        }
        Ok(p)
    }

    pub fn int(&self, key: &str, default: i64) -> Result<i64> {
        match self.get(key) {
            None => Ok(default),
            Some(s) => s
                .parse()
                .map_err(|_| Error::Usage(format!("`{key}` expects an integer, got `{s}`"))),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        matches!(self.get(key), Some("1" | "true" | "yes"))
    }

    pub fn seed(&self) -> Result<u64> {
        Ok(self.int("seed", 42)? as u64)
    }

    /// Weights from `p`, or from `type` when only that is given.
    pub fn weights(&self) -> Result<Arc<WeightSeq>> {
        match (self.get("p"), self.get("type")) {
            (Some(p), _) => WeightSeq::parse(p),
            (None, Some(t)) => Ok(CurveTag::parse(t)?.weights()),
            (None, None) => Err(Error::Usage("a weight sequence `p` or curve `type` is required".into())),
        }
    }

    pub fn curve_tag(&self) -> Result<CurveTag> {
        match (self.get("type"), self.get("p")) {
            (Some(t), _) => CurveTag::parse(t),
            (None, Some(_)) => CurveTag::from_weights(&*self.weights()?),
            (None, None) => Err(Error::Usage("a curve `type` or weight sequence `p` is required".into())),
        }
    }

    /// The field from `field`, falling back to `default` and then to the
    /// rationals.
    pub fn field(&self, default: Option<Field>) -> Result<Field> {
        match self.get("field") {
            Some(f) => Field::parse(f),
            None => Ok(default.unwrap_or(Field::Rational)),
        }
    }

    /// The comma-separated `lambda` values in `field`.
    pub fn lambdas(&self, field: Field) -> Result<Vec<Scalar>> {
        match self.get("lambda") {
            None => Ok(Vec::new()),
            Some(s) => s.split(',').map(|t| field.parse_scalar(t)).collect(),
        }
    }

    /// The curve algebra; with `split` the default field contains the
    /// `p`-th roots of unity.
    pub fn curve(&self, split: bool) -> Result<Arc<CurveType>> {
        let tag = self.curve_tag()?;
        let default = if split { Some(Field::cyclotomic(tag.p() as u8)?) } else { None };
        let field = self.field(default)?;
        let lambda = match tag {
            CurveTag::T2222 => Some(self.lambdas(field)?.into_iter().next().unwrap_or(field.parse_scalar("5/3")?)),
            _ => None,
        };
        CurveType::new(tag, lambda, field)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub checked: u64,
    pub skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Params,
    pub status: Status,
    pub counterexample: Option<Value>,
    pub stats: Stats,
    pub reference: String,
    pub details: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Process exit code: 0 pass, 1 fail, 2 error.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs one named check. Unknown names are an error; failures inside the
/// check become reports with status `error`.
pub fn run_check(name: &str, params: &Params) -> Result<CheckReport> {
    if !CHECK_NAMES.contains(&name) {
        return Err(Error::UnknownCheck(name.to_string()));
    }
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| checks::run(name, params))
        .unwrap_or_else(|e| Err(Error::Internal(panic_message(&*e))));
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let base = CheckReport {
        check: name.to_string(),
        params: params.clone(),
        status: Status::Error,
        counterexample: None,
        stats: Stats { checked: 0, skipped: 0 },
        reference: checks::reference(name).to_string(),
        details: Map::new(),
        error: None,
        elapsed_ms,
    };
    Ok(match outcome {
        Ok(v) => CheckReport {
            status: if v.passed { Status::Pass } else { Status::Fail },
            counterexample: v.counterexample,
            stats: Stats {
                checked: v.checked,
                skipped: v.skipped,
            },
            details: v.details,
            ..base
        },
        Err(e) => CheckReport {
            error: Some(e.to_string()),
            ..base
        },
    })
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    match (payload.downcast_ref::<&str>(), payload.downcast_ref::<String>()) {
        (Some(s), _) => format!("check panicked: {s}"),
        (_, Some(s)) => format!("check panicked: {s}"),
        _ => "check panicked".to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn parse(text: &str) -> Result<Profile> {
        match text {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::Usage(format!("unknown profile `{text}`"))),
        }
    }
}

const TYPES: [&str; 4] = ["2222", "333", "442", "632"];

/// The batch of checks run by [`run_suite`].
pub fn suite_plan(profile: Profile, seed: u64) -> Vec<(&'static str, Params)> {
    let full = profile == Profile::Full;
    let pick = |quick: i64, full_value: i64| if full { full_value } else { quick }.to_string();
    let seed = seed.to_string();
    let mut plan = Vec::new();
    for p in ["2,2,2,2", "3,3,3", "4,4,2", "6,3,2", "2,3,7", "5,4"] {
        let mut q = Params::new().with("p", p).with("n_max", &pick(6, 10));
        if p == "2,2,2,2" {
            q.set("lambda", "5/3");
        }
        plan.push(("mult-formula", q));
    }
    for t in TYPES {
        let ty = Params::new().with("type", t);
        plan.push(("lemma-7-1", ty.clone().with("n_max", &pick(30, 100))));
        plan.push(("table-1", ty.clone()));
        plan.push(("lemma-7-2", ty.clone().with("n_max", &pick(10, 30))));
        plan.push(("theorem-7-3", ty.clone().with("n_max", &pick(5, 15))));
        plan.push(("table-2-degrees", ty.clone()));
        plan.push(("table-3", ty.clone()));
        plan.push(("refinement", ty.clone()));
        plan.push(("monad-laws", ty.clone().with("band", &pick(3, 4))));
        plan.push(("triangles", ty.clone().with("band", "4")));
        plan.push(("theta-roundtrip", ty.clone().with("band", "3")));
        plan.push(("gamma-roundtrip", ty.clone().with("band", "3")));
        plan.push(("correspondence", ty.clone().with("seed", &seed)));
        plan.push(("effective", ty.clone()));
        plan.push(("gsupp", ty.clone().with("band", &pick(2, 4))));
    }
    plan.push(("gsupp", Params::new().with("p", "2,3,7").with("band", &pick(2, 4))));
    plan.push((
        "group-ring",
        Params::new().with("p", "6,3,2").with("trials", &pick(50, 200)).with("seed", &seed),
    ));
    for t in ["2222", "333"] {
        plan.push((
            "delta-roundtrip",
            Params::new().with("type", t).with("band", "3").with("seed", &seed),
        ));
    }
    plan
}

/// Runs the suite in parallel; reports come back in plan order.
pub fn run_suite(profile: Profile, seed: u64) -> Vec<CheckReport> {
    let plan = suite_plan(profile, seed);
    std::thread::scope(|s| {
        let handles: Vec<_> = plan
            .iter()
            .map(|(name, params)| s.spawn(move || run_check(name, params).expect("registered check")))
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread")).collect()
    })
}

/// Human-readable table, one row per report.
pub fn render_table(reports: &[CheckReport]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            [
                r.check.clone(),
                params.join(" "),
                status.to_string(),
                format!("{}/{}", r.stats.checked, r.stats.skipped),
                format!("{}", r.elapsed_ms),
            ]
        })
        .collect();
    let header = ["check", "params", "status", "checked/skipped", "ms"].map(String::from);
    let mut widths = header.clone().map(|h| h.len());
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    for r in reports {
        if let Some(e) = &r.error {
            let _ = writeln!(out, "{}: error: {e}", r.check);
        } else if let Some(c) = &r.counterexample {
            let _ = writeln!(out, "{}: counterexample: {c}", r.check);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_normalize_and_merge() {
        let a = Params::new().with("--n-max", "3").with("p", "6,3,2");
        assert_eq!(a.get("n_max"), Some("3"));
        let b = Params::parse_config("# defaults\nn-max = 7\nfield = prime:7\n").unwrap();
        let m = b.merged(&a);
        assert_eq!(m.int("n_max", 0).unwrap(), 3);
        assert_eq!(m.field(None).unwrap(), Field::Prime(7));
        assert!(Params::parse_config("oops").is_err());
    }

    #[test]
    fn report_statuses() {
        let ok = run_check("table-1", &Params::new().with("p", "2,2,2,2")).unwrap();
        assert_eq!(ok.status, Status::Pass);
        assert_eq!(ok.details["elements"], serde_json::json!(["1*c + 1*x1", "1*x2 + 1*x3 + 1*x4"]));
        let fail = run_check("effective", &Params::new().with("p", "6,3,2").with("gens", "c")).unwrap();
        assert_eq!(fail.exit_code(), 1);
        assert!(fail.counterexample.is_some());
        let err = run_check("table-1", &Params::new().with("p", "2,3,7")).unwrap();
        assert_eq!(err.exit_code(), 2);
        assert!(run_check("bogus", &Params::new()).is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let p = Params::new().with("p", "6,3,2").with("trials", "20").with("seed", "9");
        let mut a = run_check("group-ring", &p).unwrap();
        let mut b = run_check("group-ring", &p).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a.to_json(), b.to_json());
    }
}

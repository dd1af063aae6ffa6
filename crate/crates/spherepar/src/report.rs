//! Structured verification reports with a fixed, byte-stable JSON encoding.
//!
//! The JSON layout is the machine contract:
//!
//! ```json
//! {"config": {...},
//!  "checks": [{"id": ..., "paper_tag": ..., "status": "pass",
//!              "residual": ..., "normal_form": ..., "ms": ...}, ...],
//!  "summary": {"passed": N, "failed": N, "skipped": N}}
//! ```
//!
//! Keys are emitted in a fixed order and floats with 17 significant digits,
//! so identical configurations produce byte-identical output. `residual`,
//! `normal_form`, and `ms` appear only when present; timing fields are
//! opt-in precisely because wall-clock values would break that guarantee.

use std::fmt::Write as _;

/// Outcome of one identity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One verification record: which identity, against which tag, and how far
/// off it was (a max residual for numeric checks, a normal form for
/// symbolic ones — both when a symbolic failure is also sampled).
#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub paper_tag: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub normal_form: Option<String>,
    pub ms: Option<u128>,
}

impl Check {
    pub fn new(id: &str, paper_tag: &str, status: Status) -> Self {
        Self {
            id: id.to_string(),
            paper_tag: paper_tag.to_string(),
            status,
            residual: None,
            normal_form: None,
            ms: None,
        }
    }

    pub fn pass(id: &str, paper_tag: &str) -> Self {
        Self::new(id, paper_tag, Status::Pass)
    }

    pub fn fail(id: &str, paper_tag: &str) -> Self {
        Self::new(id, paper_tag, Status::Fail)
    }

    pub fn skipped(id: &str, paper_tag: &str) -> Self {
        Self::new(id, paper_tag, Status::Skipped)
    }

    /// Pass/fail from a residual against a tolerance.
    pub fn from_residual(id: &str, paper_tag: &str, residual: f64, tolerance: f64) -> Self {
        let status = if residual.is_finite() && residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self::new(id, paper_tag, status).with_residual(residual)
    }

    pub fn with_residual(mut self, r: f64) -> Self {
        self.residual = Some(r);
        self
    }

    pub fn with_normal_form(mut self, nf: String) -> Self {
        self.normal_form = Some(nf);
        self
    }

    pub fn with_ms(mut self, ms: Option<u128>) -> Self {
        self.ms = ms;
        self
    }
}

/// Pass/fail/skip totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Typed configuration values echoed back into the report.
#[derive(Debug, Clone)]
pub enum ConfigValue {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    IntList(Vec<i64>),
}

/// Ordered echo of the run configuration.
#[derive(Debug, Clone)]
pub struct ConfigEcho {
    fields: Vec<(String, ConfigValue)>,
}

impl ConfigEcho {
    pub fn new(command: &str) -> Self {
        Self {
            fields: vec![(
                "command".to_string(),
                ConfigValue::Str(command.to_string()),
            )],
        }
    }

    pub fn push(mut self, key: &str, value: ConfigValue) -> Self {
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn fields(&self) -> &[(String, ConfigValue)] {
        &self.fields
    }
}

/// A full report: configuration echo, ordered checks, derived summary.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(config: ConfigEcho) -> Self {
        Self {
            config,
            checks: Vec::new(),
        }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            passed: 0,
            failed: 0,
            skipped: 0,
        };
        for c in &self.checks {
            match c.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"config\": {");
        for (i, (k, v)) in self.config.fields().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write_str(&mut out, k);
            out.push_str(": ");
            write_value(&mut out, v);
        }
        out.push_str("}, \"checks\": [");
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str("{\"id\": ");
            write_str(&mut out, &c.id);
            out.push_str(", \"paper_tag\": ");
            write_str(&mut out, &c.paper_tag);
            out.push_str(", \"status\": ");
            write_str(&mut out, c.status.as_str());
            if let Some(r) = c.residual {
                out.push_str(", \"residual\": ");
                write_float(&mut out, r);
            }
            if let Some(nf) = &c.normal_form {
                out.push_str(", \"normal_form\": ");
                write_str(&mut out, nf);
            }
            if let Some(ms) = c.ms {
                let _ = write!(out, ", \"ms\": {ms}");
            }
            out.push('}');
        }
        let s = self.summary();
        let _ = write!(
            out,
            "], \"summary\": {{\"passed\": {}, \"failed\": {}, \"skipped\": {}}}}}",
            s.passed, s.failed, s.skipped
        );
        out
    }

    /// Human-readable mirror of the JSON content.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("config:");
        for (k, v) in self.config.fields() {
            out.push(' ');
            out.push_str(k);
            out.push('=');
            match v {
                ConfigValue::Int(i) => {
                    let _ = write!(out, "{i}");
                }
                ConfigValue::Float(f) => {
                    let _ = write!(out, "{f:e}");
                }
                ConfigValue::Bool(b) => {
                    let _ = write!(out, "{b}");
                }
                ConfigValue::Str(s) => out.push_str(s),
                ConfigValue::IntList(list) => {
                    let items: Vec<String> = list.iter().map(|i| i.to_string()).collect();
                    out.push_str(&items.join(","));
                }
            }
        }
        out.push('\n');
        for c in &self.checks {
            let _ = write!(out, "[{:<7}] {} (tag {})", c.status.as_str(), c.id, c.paper_tag);
            if let Some(r) = c.residual {
                let _ = write!(out, " residual={r:.3e}");
            }
            if let Some(nf) = &c.normal_form {
                let _ = write!(out, " normal_form={nf}");
            }
            if let Some(ms) = c.ms {
                let _ = write!(out, " ms={ms}");
            }
            out.push('\n');
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "summary: passed={} failed={} skipped={}",
            s.passed, s.failed, s.skipped
        );
        out
    }
}

fn write_str(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// 17 significant digits in scientific notation; enough to round-trip any
/// f64 and fixed-width enough to be byte-stable.
fn write_float(out: &mut String, v: f64) {
    if v.is_finite() {
        let _ = write!(out, "{v:.16e}");
    } else {
        out.push_str("null");
    }
}

fn write_value(out: &mut String, v: &ConfigValue) {
    match v {
        ConfigValue::Int(i) => {
            let _ = write!(out, "{i}");
        }
        ConfigValue::Float(f) => write_float(out, *f),
        ConfigValue::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        ConfigValue::Str(s) => write_str(out, s),
        ConfigValue::IntList(list) => {
            out.push('[');
            for (i, item) in list.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{item}");
            }
            out.push(']');
        }
    }
}

/// Time a closure, returning its result and the elapsed milliseconds when
/// timing is enabled (timings are opt-in to keep reports byte-stable).
pub fn timed<T>(enabled: bool, f: impl FnOnce() -> T) -> (T, Option<u128>) {
    if enabled {
        let start = std::time::Instant::now();
        let v = f();
        (v, Some(start.elapsed().as_millis()))
    } else {
        (f(), None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> VerificationReport {
        let config = ConfigEcho::new("verify")
            .push("frame", ConfigValue::Str("P".into()))
            .push("m", ConfigValue::Int(4))
            .push("n", ConfigValue::Int(3))
            .push("tolerance", ConfigValue::Float(1e-9))
            .push("symbolic", ConfigValue::Bool(true));
        let mut r = VerificationReport::new(config);
        r.checks.push(
            Check::from_residual("orthonormality", "remor", 3.5e-16, 1e-9),
        );
        r.checks
            .push(Check::skipped("structure_equations", "struc3"));
        r.checks.push(
            Check::fail("bracket_table_symbolic", "genbracket")
                .with_normal_form("x1*y2 - y2".into()),
        );
        r
    }

    #[test]
    fn json_is_deterministic_and_fixed_format() {
        let r = sample_report();
        let a = r.to_json();
        let b = r.to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"residual\": 3.5000000000000002e-16"));
        assert!(a.contains("\"tolerance\": 1.0000000000000001e-9"));
        assert!(a.contains("\"summary\": {\"passed\": 1, \"failed\": 1, \"skipped\": 1}"));
        assert!(!a.contains("\"ms\""));
    }

    #[test]
    fn summary_counts_and_gate() {
        let r = sample_report();
        let s = r.summary();
        assert_eq!((s.passed, s.failed, s.skipped), (1, 1, 1));
        assert!(!r.all_passed());
    }

    #[test]
    fn text_mirrors_json_content() {
        let r = sample_report();
        let t = r.to_text();
        assert!(t.contains("orthonormality"));
        assert!(t.contains("normal_form=x1*y2 - y2"));
        assert!(t.contains("summary: passed=1 failed=1 skipped=1"));
    }

    #[test]
    fn strings_are_escaped() {
        let mut out = String::new();
        write_str(&mut out, "a\"b\\c\nd");
        assert_eq!(out, "\"a\\\"b\\\\c\\nd\"");
    }
}

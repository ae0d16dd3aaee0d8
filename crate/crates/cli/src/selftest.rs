//! The regression table: every check stored beside the built-ins.
//!
//! An expected file holds `{"checks": [...]}`; each check runs `args`
//! with `--json` appended and compares the exit status (default 0) and,
//! if present, `expect` against the report. Objects match when every
//! expected key matches; arrays match element-wise with equal length.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::builtins::expected_files;
use crate::commands::{run_args, Outcome, Report};
use crate::render::table;
use crate::{EXIT_CROSS_CHECK, EXIT_OK};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFile {
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub args: Vec<String>,
    #[serde(default)]
    pub exit: i32,
    #[serde(default)]
    pub expect: Option<Value>,
}

/// Whether `actual` contains `expected` in the sense described above.
pub fn matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e.iter().all(|(k, v)| a.get(k).is_some_and(|x| matches(v, x))),
        (Value::Array(e), Value::Array(a)) => e.len() == a.len() && e.iter().zip(a).all(|(x, y)| matches(x, y)),
        (e, a) => e == a,
    }
}

/// Runs one check; `Err` describes the mismatch.
pub fn run_check(check: &Check) -> Result<(), String> {
    let mut args = check.args.clone();
    args.push("--json".into());
    let out = run_args(args);
    if out.code != check.exit {
        return Err(format!("exit {} (expected {}): {}", out.code, check.exit, out.stderr.trim()));
    }
    if let Some(e) = &check.expect {
        let actual: Value = serde_json::from_str(&out.stdout).map_err(|err| format!("output is not JSON: {err}"))?;
        if !matches(e, &actual) {
            return Err(format!("report {actual} does not contain {e}"));
        }
    }
    Ok(())
}

/// All checks of all built-ins, as `(builtin, check)`.
pub fn all_checks() -> Vec<(&'static str, Check)> {
    let mut out = Vec::new();
    for (name, text) in expected_files() {
        let file: ExpectedFile =
            serde_json::from_str(text).unwrap_or_else(|e| panic!("expected outputs of `{name}` do not parse: {e}"));
        out.extend(file.checks.into_iter().map(|c| (name, c)));
    }
    out
}

/// Runs the whole table.
pub fn run_all() -> Outcome {
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut failed = 0;
    for (name, check) in all_checks() {
        let res = run_check(&check);
        let cmd = check.args.join(" ");
        let (status, message) = match &res {
            Ok(()) => ("pass", String::new()),
            Err(m) => {
                failed += 1;
                ("FAIL", m.clone())
            }
        };
        rows.push(vec![name.to_string(), status.to_string(), cmd.clone()]);
        results.push(json!({ "builtin": name, "args": check.args, "passed": res.is_ok(), "message": message }));
    }
    let mut text = table(&["built-in", "result", "command"], &rows);
    for r in &results {
        if r["passed"] == json!(false) {
            text.push_str(&format!("\n{} `{}`: {}\n", r["builtin"], r["args"], r["message"]));
        }
    }
    text.push_str(&format!("\n{} checks, {} failed\n", results.len(), failed));
    let json = json!({ "command": "selftest", "checks": results, "total": rows.len(), "failed": failed });
    Outcome { report: Report { text, json }, status: if failed == 0 { EXIT_OK } else { EXIT_CROSS_CHECK } }
}

use ess_cli::run_args;
use ess_cli::selftest::all_checks;
use serde_json::Value;

/// Every JSON report parses and re-emits byte for byte.
#[test]
fn json_round_trip() {
    for (name, check) in all_checks().into_iter().filter(|(_, c)| c.exit == 0) {
        let mut args = check.args.clone();
        args.push("--json".into());
        let out = run_args(args);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let again = format!("{}\n", serde_json::to_string_pretty(&v).unwrap());
        assert_eq!(again, out.stdout, "{name} {:?}", check.args);
    }
}

/// Text and JSON are produced for the same command.
#[test]
fn text_reports() {
    for (name, check) in all_checks().into_iter().filter(|(_, c)| c.exit == 0) {
        let out = run_args(check.args.clone());
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert!(!out.stdout.trim().is_empty(), "{name} {:?}", check.args);
        assert!(!out.stdout.trim_start().starts_with('{'), "{name} {:?}", check.args);
    }
}

#[test]
fn pages_text_shows_collapse() {
    let out = run_args(["pages", "--builtin", "circle", "--group-quotient", "Zmod:3", "--field", "Fp:3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("E^inf = E^3"));
    assert!(out.stdout.contains("window collapse: E^2 = E^3"));
}

#[test]
fn bounds_text_table() {
    let out = run_args(["bounds", "--builtin", "comm-p:3", "--p", "3", "--r", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let row = out.stdout.lines().find(|l| l.starts_with("1 ")).unwrap();
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(&cells[..4], ["1", "0", "1", "2"]);
}

#[test]
fn q_range_filters() {
    let out = run_args(["twisted", "--builtin", "trefoil", "--d", "6", "--q-range", "1..2", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["degrees"], serde_json::json!([1, 2]));
    assert_eq!(v["betti"], serde_json::json!([1, 1]));
    assert_eq!(run_args(["twisted", "--builtin", "trefoil", "--d", "6", "--q-range", "2..1"]).code, 2);
    assert_eq!(run_args(["twisted", "--builtin", "trefoil", "--d", "6", "--q-range", "a"]).code, 2);
}

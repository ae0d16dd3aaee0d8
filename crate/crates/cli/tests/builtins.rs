use ess_cli::builtins::{self, DEFAULT_INSTANCES};
use ess_cli::input::build_space;
use ess_cli::run_args;
use ess_cli::selftest::{all_checks, run_check};
use ess_core::pages::compute_pages;

#[test]
fn every_builtin_validates() {
    for name in DEFAULT_INSTANCES {
        let out = run_args(["validate", "--builtin", name]);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert!(out.stdout.contains("valid"), "{name}");
    }
}

#[test]
fn stored_expected_outputs() {
    let checks = all_checks();
    assert!(checks.len() >= 60);
    let failures: Vec<String> =
        checks.iter().filter_map(|(name, c)| run_check(c).err().map(|e| format!("{name} {:?}: {e}", c.args))).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_builtin_has_checks() {
    let checks = all_checks();
    for name in builtins::names() {
        let base = name.split(':').next().unwrap();
        assert!(checks.iter().any(|(b, _)| *b == base), "{base} has no stored checks");
    }
}

#[test]
fn selftest_passes() {
    let out = run_args(["selftest"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains(", 0 failed"));
}

#[test]
fn parametrized_builtins() {
    assert_eq!(run_args(["validate", "--builtin", "comm-p:7"]).code, 0);
    for bad in ["comm-p", "comm-p:0", "comm-p:x", "circle:2", "nosuch"] {
        let out = run_args(["validate", "--builtin", bad]);
        assert_eq!(out.code, 2, "{bad}");
        assert!(!out.stderr.is_empty());
    }
}

/// Pages on a window agree with the same pages on a larger window.
#[test]
fn window_stability() {
    for name in DEFAULT_INSTANCES {
        let space = build_space(&builtins::load(name).unwrap()).unwrap();
        let mut c = space.complex;
        if !c.ring().is_field() {
            c = c.change_coefficients("Q".parse().unwrap()).unwrap();
        }
        let small = compute_pages(&c, 2, 2).unwrap();
        let big = compute_pages(&c, 3, 4).unwrap();
        for r in 1..=2 {
            for e in &small.page(r).entries {
                assert_eq!(e.dim, big.page(r).dim(e.s, e.q), "{name}: E^{r}({}, {})", e.s, e.q);
                assert_eq!(e.d_rank, big.page(r).d_rank(e.s, e.q), "{name}: d^{r}({}, {})", e.s, e.q);
            }
        }
    }
}

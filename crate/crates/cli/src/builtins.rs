//! Built-in spaces. Each ships as a JSON description under `builtins/`,
//! with the expected outputs of a few commands stored beside it.
//! Parametrized entries are written `name:<n>`.

use crate::input::{parse_document, Document};
use crate::CliError;

struct Builtin {
    name: &'static str,
    /// Placeholder substituted by the parameter, if any.
    param: Option<&'static str>,
    source: &'static str,
    expected: &'static str,
}

macro_rules! builtin {
    ($name:literal, $param:expr) => {
        Builtin {
            name: $name,
            param: $param,
            source: include_str!(concat!("../builtins/", $name, ".json")),
            expected: include_str!(concat!("../builtins/", $name, ".expected.json")),
        }
    };
}

const BUILTINS: &[Builtin] = &[
    builtin!("circle", None),
    builtin!("wedge2", None),
    builtin!("torus2", None),
    builtin!("torus3", None),
    builtin!("trefoil", None),
    builtin!("figure8", None),
    builtin!("zxf2", None),
    builtin!("lyndon", Some("@D@")),
    builtin!("comm-p", Some("@P@")),
    builtin!("torsfree", None),
    builtin!("minimal-check", None),
];

/// Instances exercised by the test suite and `selftest`.
pub const DEFAULT_INSTANCES: &[&str] = &[
    "circle",
    "wedge2",
    "torus2",
    "torus3",
    "trefoil",
    "figure8",
    "zxf2",
    "lyndon:6",
    "comm-p:3",
    "comm-p:5",
    "torsfree",
    "minimal-check",
];

/// Base names, with `:<n>` marking parametrized entries.
pub fn names() -> Vec<String> {
    BUILTINS.iter().map(|b| if b.param.is_some() { format!("{}:<n>", b.name) } else { b.name.to_string() }).collect()
}

fn lookup(name: &str) -> Result<(&'static Builtin, Option<u64>), CliError> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let b = BUILTINS
        .iter()
        .find(|b| b.name == base)
        .ok_or_else(|| CliError::Input(format!("unknown built-in `{name}`; available: {}", names().join(", "))))?;
    match (b.param, arg) {
        (None, None) => Ok((b, None)),
        (None, Some(_)) => Err(CliError::Input(format!("built-in `{base}` takes no parameter"))),
        (Some(_), None) => Err(CliError::Input(format!("built-in `{base}` needs a parameter, e.g. `{base}:3`"))),
        (Some(_), Some(a)) => {
            let n: u64 = a.parse().ok().filter(|&n| (1..=1000).contains(&n)).ok_or_else(|| {
                CliError::Input(format!("parameter `{a}` of `{base}` must be an integer in 1..=1000"))
            })?;
            Ok((b, Some(n)))
        }
    }
}

fn substitute(b: &Builtin, text: &str, n: Option<u64>) -> String {
    match (b.param, n) {
        (Some(p), Some(n)) => text.replace(p, &n.to_string()),
        _ => text.to_string(),
    }
}

/// The description of a built-in.
pub fn load(name: &str) -> Result<Document, CliError> {
    let (b, n) = lookup(name)?;
    parse_document(&substitute(b, b.source, n))
}

/// The stored expected outputs of every built-in, as `(name, json)`.
pub fn expected_files() -> Vec<(&'static str, &'static str)> {
    BUILTINS.iter().map(|b| (b.name, b.expected)).collect()
}

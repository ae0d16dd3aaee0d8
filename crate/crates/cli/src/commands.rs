//! Command-line parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use ess_core::aomoto::{aomoto_betti, aomoto_specialize, universal_aomoto};
use ess_core::coeffs::CoeffRing;
use ess_core::complex::EquivariantComplex;
use ess_core::groupring::GroupDescriptor;
use ess_core::modz::{einf_gr_module, homology_decomposition, integral_torsion_check, monodromy_report};
use ess_core::pages::{
    compute_pages, d1_closed_form, d1_from_engine, e_infinity_z, jordan_witness, reznikov_collapse, truncation_level,
    Engine,
};
use ess_core::twisted::{alexander_polynomial, bounds_report, twisted_betti_along, Verdict};

use crate::input::{build_space, parse_document, parse_nu, Space};
use crate::render::{decomposition, list, table, yes_no};
use crate::{builtins, selftest, CliError, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK};

/// Exact equivariant spectral sequences, twisted and Aomoto Betti numbers,
/// and monodromy of CW-complexes given by presentations or boundary matrices.
///
/// Built-in spaces: circle, wedge2, torus2, torus3, trefoil, figure8, zxf2,
/// lyndon:<d>, comm-p:<p>, torsfree, minimal-check.
///
/// Exit status: 0 success, 2 input error, 3 hypothesis not met (with
/// --strict, or a non-minimal complex where one is required), 4 internal
/// cross-check failure.
#[derive(Debug, Parser)]
#[command(name = "ess", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pages E^1..E^R over filtration degrees 0..=S; adds E^inf for G = Z and the
    /// collapse analysis for G = Z/p^r in characteristic p.
    Pages(PagesArgs),
    /// Structure of H_q(X, kZ) over k[t, t^-1].
    Decompose(InputArgs),
    /// Triviality of the monodromy on H_q(X, kZ), decided three ways.
    Monodromy(InputArgs),
    /// Aomoto Betti numbers through E^2 of the spectral sequence over kZ.
    Aomoto(InputArgs),
    /// The universal Aomoto complex of a minimal complex over kZ^n.
    UniversalAomoto(UniversalArgs),
    /// Twisted Betti numbers b_q(X, nu/d) at a primitive d-th root of unity.
    Twisted(TwistedArgs),
    /// Alexander polynomial of a complex over kZ.
    Alexander(InputArgs),
    /// Compares b_q(X, nu/p^r), beta_q(X, nu mod p) and b_q(X, F_p).
    Bounds(BoundsArgs),
    /// Betti numbers over the coefficient field, and integral homology over Z.
    Betti(InputArgs),
    /// Parses and validates a space description.
    Validate(InputArgs),
    /// Runs the stored expected outputs of every built-in.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Path to a JSON space description.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub input: Option<PathBuf>,
    /// Name of a built-in space, e.g. `trefoil` or `comm-p:3`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Coefficients: Z, Q, Fp:<p> or cyclotomic:<d> [default: as in the input].
    #[arg(long)]
    pub field: Option<String>,
    /// Replace G = Z by Z/m, written `Zmod:<m>`; applied after --nu.
    #[arg(long)]
    pub group_quotient: Option<String>,
    /// Map from G = Z^n to Z by generator images, e.g. "a=2,b=1,c=1"
    /// [default: the input's default_nu].
    #[arg(long)]
    pub nu: Option<String>,
    /// Degrees to report: `q` or `lo..hi` (inclusive) [default: all].
    #[arg(long)]
    pub q_range: Option<String>,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Exit with status 3 when a hypothesis of the computed statement is not met.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PagesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Last page computed.
    #[arg(long = "R", default_value_t = 3)]
    pub r: usize,
    /// Largest filtration degree shown.
    #[arg(long = "S", default_value_t = 3)]
    pub s: usize,
    /// Also print d^1 in homology bases, computed from the pages and in closed form.
    #[arg(long)]
    pub d1: bool,
}

#[derive(Debug, Clone, Args)]
pub struct UniversalArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Also specialize at the point z, e.g. "1,-2,1/2".
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct TwistedArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Order of the root of unity.
    #[arg(long)]
    pub d: u32,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// The prime p.
    #[arg(long)]
    pub p: u64,
    /// The exponent r, so that d = p^r.
    #[arg(long, default_value_t = 1)]
    pub r: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
}

/// A report in both renderings.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

/// A finished command: its report and exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub status: i32,
}

/// Captured result of a full invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (without the program name), runs the command and renders
/// its output.
pub fn run_args<I, S>(args: I) -> Execution
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("ess".to_string()).chain(args.into_iter().map(Into::into)).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Execution { code, stdout: text, stderr: String::new() }
            } else {
                Execution { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json = cli.wants_json();
    match run(&cli) {
        Ok(out) => Execution { code: out.status, stdout: emit(&out.report, json), stderr: String::new() },
        Err(e) => Execution { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn emit(report: &Report, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        report.text.clone()
    }
}

impl Cli {
    fn wants_json(&self) -> bool {
        match &self.command {
            Command::Pages(a) => a.input.json,
            Command::UniversalAomoto(a) => a.input.json,
            Command::Twisted(a) => a.input.json,
            Command::Bounds(a) => a.input.json,
            Command::Selftest(a) => a.json,
            Command::Decompose(a)
            | Command::Monodromy(a)
            | Command::Aomoto(a)
            | Command::Alexander(a)
            | Command::Betti(a)
            | Command::Validate(a) => a.json,
        }
    }
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Pages(a) => pages(a),
        Command::Decompose(a) => decompose(a),
        Command::Monodromy(a) => monodromy(a),
        Command::Aomoto(a) => aomoto(a),
        Command::UniversalAomoto(a) => universal(a),
        Command::Twisted(a) => twisted(a),
        Command::Alexander(a) => alexander(a),
        Command::Bounds(a) => bounds(a),
        Command::Betti(a) => betti(a),
        Command::Validate(a) => validate(a),
        Command::Selftest(_) => Ok(selftest::run_all()),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn ok(report: Report) -> Result<Outcome, CliError> {
    Ok(Outcome { report, status: EXIT_OK })
}

/// A space after `--field`, with the map to `Z` resolved.
struct Loaded {
    space: Space,
    complex: EquivariantComplex,
    nu: Option<Vec<i64>>,
}

impl Loaded {
    fn header(&self, command: &str) -> (String, Map<String, Value>) {
        let c = &self.complex;
        let text = format!("{command}: {}  coefficients {}  group {}\n", self.space.name, c.ring(), c.group());
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert("space".into(), json!(self.space.name));
        m.insert("coefficients".into(), json!(c.ring().to_string()));
        m.insert("group".into(), json!(c.group().to_string()));
        (text, m)
    }

    /// The complex over `kZ` obtained along `nu`.
    fn over_z(&self) -> Result<EquivariantComplex, CliError> {
        let c = &self.complex;
        match c.group() {
            GroupDescriptor::FreeAbelian(_) => {}
            g => return Err(CliError::Input(format!("this command needs G = Z or Z^n, the input has {g}"))),
        }
        let nu = self
            .nu
            .as_ref()
            .ok_or_else(|| CliError::Input(format!("the group is {}; pass --nu to choose a map onto Z", c.group())))?;
        if c.group() == GroupDescriptor::FreeAbelian(1) && nu == &[1] {
            return Ok(c.clone());
        }
        let images: Vec<Vec<i64>> = nu.iter().map(|&x| vec![x]).collect();
        c.base_change(GroupDescriptor::FreeAbelian(1), &images)
            .map_err(|e| CliError::Input(format!("nu = {} does not give a complex over Z: {e}", list(nu))))
    }

    fn nu(&self) -> Result<&[i64], CliError> {
        self.nu.as_deref().ok_or_else(|| {
            CliError::Input(format!("the group is {}; pass --nu to choose a map to Z", self.complex.group()))
        })
    }
}

fn load(a: &InputArgs) -> Result<Loaded, CliError> {
    let doc = match (&a.input, &a.builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            parse_document(&text)?
        }
        (None, Some(name)) => builtins::load(name)?,
        _ => return Err(CliError::Input("give exactly one of an input path and --builtin".into())),
    };
    let space = build_space(&doc)?;
    let mut complex = space.complex.clone();
    if let Some(f) = &a.field {
        let ring: CoeffRing = f.parse().map_err(|e| CliError::Input(format!("--field: {e}")))?;
        if ring == CoeffRing::Integers && complex.ring() != CoeffRing::Integers {
            return Err(CliError::Input(format!("cannot lift {} coefficients to Z", complex.ring())));
        }
        complex = complex.change_coefficients(ring)?;
    }
    let nu = match (complex.group(), &a.nu) {
        (GroupDescriptor::FreeAbelian(_), Some(t)) => Some(parse_nu(t, &space.generator_names)?),
        (GroupDescriptor::FreeAbelian(1), None) => Some(vec![1]),
        (GroupDescriptor::FreeAbelian(_), None) => {
            space.default_nu.as_deref().map(|t| parse_nu(t, &space.generator_names)).transpose()?
        }
        (g, Some(_)) => return Err(CliError::Input(format!("--nu needs G = Z^n, the input has {g}"))),
        (_, None) => None,
    };
    Ok(Loaded { space, complex, nu })
}

fn require_field(c: &EquivariantComplex) -> Result<(), CliError> {
    if c.ring().is_field() {
        Ok(())
    } else {
        Err(CliError::Input("this command works over a field; pass --field Q or --field Fp:<p>".into()))
    }
}

fn with_quotient(c: EquivariantComplex, spec: &str) -> Result<EquivariantComplex, CliError> {
    let g: GroupDescriptor = spec.parse().map_err(|e| CliError::Input(format!("--group-quotient: {e}")))?;
    if !matches!(g, GroupDescriptor::Cyclic { .. }) {
        return Err(CliError::Input(format!("--group-quotient expects Zmod:<m>, got {g}")));
    }
    Ok(c.base_change(g, &[vec![1]])?)
}

/// Degrees `lo..=hi` selected by `--q-range`, clipped to `0..=top`.
fn degrees(a: &InputArgs, top: usize) -> Result<Vec<usize>, CliError> {
    let Some(spec) = &a.q_range else { return Ok((0..=top).collect()) };
    let bad = || CliError::Input(format!("--q-range `{spec}` is not of the form q or lo..hi"));
    let (lo, hi) = match spec.split_once("..") {
        Some((l, h)) => (l.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?),
        None => {
            let q: usize = spec.trim().parse().map_err(|_| bad())?;
            (q, q)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi.min(top)).collect())
}

fn pages(a: &PagesArgs) -> Result<Outcome, CliError> {
    let l = load(&a.input)?;
    require_field(&l.complex)?;
    if a.r == 0 {
        return Err(CliError::Input("--R must be at least 1".into()));
    }
    let mut c = l.complex.clone();
    if a.input.nu.is_some() || a.input.group_quotient.is_some() {
        c = l.over_z()?;
    }
    if let Some(q) = &a.input.group_quotient {
        c = with_quotient(c, q)?;
    }
    let (mut text, mut m) = l.header("pages");
    if c.group() != l.complex.group() {
        text.push_str(&format!("computed over {}\n", c.group()));
        m.insert("group".into(), json!(c.group().to_string()));
    }
    let qs = degrees(&a.input, c.top_degree())?;
    let ss = compute_pages(&c, a.r, a.s)?;
    let mut shown = ss.clone();
    for p in &mut shown.pages {
        p.entries.retain(|e| qs.contains(&e.q));
    }
    for p in &shown.pages {
        text.push('\n');
        text.push_str(&p.render());
    }
    match ss.window_collapse {
        Some(r) => text.push_str(&format!("\nwindow collapse: E^{r} = E^{} on the window\n", r + 1)),
        None => text.push_str(&format!("\nno collapse on the window through E^{}\n", a.r + 1)),
    }
    m.insert("pages".into(), to_value(&shown));

    if let GroupDescriptor::Cyclic { prime_power: Some((p, r)), .. } = c.group() {
        if c.ring().characteristic() == p {
            let rep = reznikov_collapse(&c)?;
            text.push_str(&format!(
                "\nG = Z/{p}^{r} in characteristic {p}: E^inf = E^{}; dim H_q(X, kG) = {}\n",
                p.pow(r),
                list(&rep.homology_dims)
            ));
            text.push_str(&rep.e_infinity.render());
            let mut rz = Map::new();
            rz.insert("p".into(), json!(p));
            rz.insert("r".into(), json!(r));
            rz.insert("collapse_page".into(), json!(rep.sequence.window_collapse));
            rz.insert("e_infinity".into(), to_value(&rep.e_infinity));
            rz.insert("homology_dims".into(), json!(rep.homology_dims));
            if r == 1 {
                let mut ws = Vec::new();
                let mut rows = Vec::new();
                for &q in &qs {
                    let w = jordan_witness(&c, q)?;
                    rows.push(vec![
                        q.to_string(),
                        w.betti.to_string(),
                        w.rank_out.to_string(),
                        w.rank_in.to_string(),
                        yes_no(w.acyclic),
                        yes_no(w.j2_kills),
                    ]);
                    ws.push(to_value(&w));
                }
                text.push('\n');
                text.push_str(&table(&["q", "b_q", "rank d1 out", "rank d1 in", "d1 exact", "(t-1)^2 H_q = 0"], &rows));
                rz.insert("jordan".into(), Value::Array(ws));
            }
            m.insert("reznikov".into(), Value::Object(rz));
        }
    }

    if c.group() == GroupDescriptor::FreeAbelian(1) {
        let einf = e_infinity_z(&c, a.s)?;
        for &q in &qs {
            let gr = einf_gr_module(&homology_decomposition(&c, q)?).dims(a.s);
            let col: Vec<usize> = (0..=a.s).map(|s| einf.dim(s, q)).collect();
            if gr != col {
                return Err(CliError::CrossCheck(format!(
                    "degree {q}: E^inf gives {col:?}, the Smith form gives gr dims {gr:?}"
                )));
            }
        }
        let mut shown = einf.clone();
        shown.entries.retain(|e| qs.contains(&e.q));
        text.push_str("\nE^inf (agrees with the Smith form)\n");
        text.push_str(&shown.render().replacen(&format!("E^{}\n", shown.page), "", 1));
        m.insert("e_infinity".into(), to_value(&shown));
    }

    if a.d1 {
        let engine = Engine::new(&c, truncation_level(a.r, a.s));
        let mut out = Vec::new();
        for &q in qs.iter().filter(|&&q| q >= 1) {
            let closed = d1_closed_form(&c, q)?;
            let from_pages = d1_from_engine(&engine, q)?;
            if closed != from_pages {
                return Err(CliError::CrossCheck(format!("d^1 out of degree {q}: closed form and pages disagree")));
            }
            if closed.rank() != ss.page(1).d_rank(0, q) {
                return Err(CliError::CrossCheck(format!(
                    "d^1 out of degree {q}: rank {} in homology bases, {} on E^1",
                    closed.rank(),
                    ss.page(1).d_rank(0, q)
                )));
            }
            let rep = closed.report();
            text.push_str(&format!(
                "\nd^1 : H_{q} -> gr^1 ⊗ H_{} ({} x {}, rank {})\n",
                q - 1,
                rep.rows,
                rep.cols,
                rep.rank
            ));
            for row in &rep.matrix {
                text.push_str(&format!("  [{}]\n", row.join(", ")));
            }
            out.push(to_value(&rep));
        }
        m.insert("d1".into(), Value::Array(out));
    }
    ok(Report { text, json: Value::Object(m) })
}

fn decompose(a: &InputArgs) -> Result<Outcome, CliError> {
    let l = load(a)?;
    require_field(&l.complex)?;
    let c = l.over_z()?;
    let (mut text, mut m) = l.header("decompose");
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for q in degrees(a, c.top_degree())? {
        let d = homology_decomposition(&c, q)?.report();
        rows.push(vec![q.to_string(), decomposition(&d), yes_no(d.separated)]);
        out.push(to_value(&d));
    }
    text.push_str(&format!("Λ = {}[t, t^-1], nu = {}\n\n", c.field().descriptor(), list(l.nu()?)));
    text.push_str(&table(&["q", "H_q(X, kZ)", "separated"], &rows));
    m.insert("nu".into(), json!(l.nu()?));
    m.insert("degrees".into(), Value::Array(out));
    ok(Report { text, json: Value::Object(m) })
}

fn monodromy(a: &InputArgs) -> Result<Outcome, CliError> {
    let l = load(a)?;
    require_field(&l.complex)?;
    let c = l.over_z()?;
    let qs = degrees(a, c.top_degree())?;
    let k_max = qs.last().copied().unwrap_or(0);
    let rep = monodromy_report(&c, k_max)?;
    let (mut text, mut m) = l.header("monodromy");
    let rows: Vec<Vec<String>> = rep
        .degrees
        .iter()
        .filter(|d| qs.contains(&d.q))
        .map(|d| {
            vec![
                d.q.to_string(),
                decomposition(&d.decomposition),
                d.einf_s1.to_string(),
                d.aomoto_betti.to_string(),
                yes_no(d.monodromy_trivial),
            ]
        })
        .collect();
    text.push_str(&format!("nu = {}\n\n", list(l.nu()?)));
    text.push_str(&table(&["q", "H_q(X, kZ)", "dim E^inf(1, q)", "beta_q", "trivial through q"], &rows));
    let mut v = to_value(&rep);
    if let Some(Value::Array(ds)) = v.get_mut("degrees") {
        ds.retain(|d| d["q"].as_u64().is_some_and(|q| qs.contains(&(q as usize))));
    }
    m.insert("nu".into(), json!(l.nu()?));
    m.insert("monodromy".into(), v);
    ok(Report { text, json: Value::Object(m) })
}

fn aomoto(a: &InputArgs) -> Result<Outcome, CliError> {
    let l = load(a)?;
    require_field(&l.complex)?;
    let c = l.over_z()?;
    let data = aomoto_betti(&c)?;
    let (mut text, mut m) = l.header("aomoto");
    let qs = degrees(a, c.top_degree())?;
    let rows: Vec<Vec<String>> = qs
        .iter()
        .map(|&q| vec![q.to_string(), data.betti[q].to_string(), data.ranks[q].to_string(), data.betas[q].to_string()])
        .collect();
    text.push_str(&format!("nu = {}\n\n", list(l.nu()?)));
    text.push_str(&table(&["q", "b_q", "rank d^1 into H_(q-1)", "beta_q"], &rows));
    m.insert("nu".into(), json!(l.nu()?));
    m.insert("aomoto".into(), to_value(&data));
    ok(Report { text, json: Value::Object(m) })
}

fn universal(a: &UniversalArgs) -> Result<Outcome, CliError> {
    let l = load(&a.input)?;
    require_field(&l.complex)?;
    if a.input.nu.is_some() || a.input.group_quotient.is_some() {
        return Err(CliError::Input("universal-aomoto uses the whole group; drop --nu and --group-quotient".into()));
    }
    let u = universal_aomoto(&l.complex)?;
    let (mut text, mut m) = l.header("universal-aomoto");
    let rep = u.report();
    text.push_str(&format!("variables e1..e{}, cells {}\n", rep.n, list(&rep.dims)));
    for (q, d) in rep.differentials.iter().enumerate() {
        text.push_str(&format!("\nD^{q} ({} x {})\n", d.len(), d.first().map_or(0, Vec::len)));
        for row in d {
            text.push_str(&format!("  [{}]\n", row.join(", ")));
        }
    }
    text.push_str("\nD D = 0 in Sym(H_1)\n");
    m.insert("universal_aomoto".into(), to_value(&rep));
    if let Some(at) = &a.at {
        let f = u.field.clone();
        let z = at
            .split(',')
            .map(|s| {
                let r: BigRational = s
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Input(format!("--at entry `{s}` is not a rational number")))?;
                f.from_rational(&r).map_err(CliError::from)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let data = aomoto_specialize(&u, &z)?;
        text.push_str(&format!("\nat z = ({}): beta = {}\n", at, list(&data.betas)));
        m.insert("at".into(), json!(at));
        m.insert("specialization".into(), to_value(&data));
    }
    ok(Report { text, json: Value::Object(m) })
}

fn twisted(a: &TwistedArgs) -> Result<Outcome, CliError> {
    let l = load(&a.input)?;
    if a.d == 0 {
        return Err(CliError::Input("--d must be at least 1".into()));
    }
    let nu = l.nu()?;
    let b = twisted_betti_along(&l.complex, nu, a.d)?;
    let (mut text, mut m) = l.header("twisted");
    let qs = degrees(&a.input, l.complex.top_degree())?;
    let shown: Vec<usize> = qs.iter().map(|&q| b[q]).collect();
    let rows: Vec<Vec<String>> = qs.iter().map(|&q| vec![q.to_string(), b[q].to_string()]).collect();
    text.push_str(&format!("nu = {}, d = {}\n\n", list(nu), a.d));
    text.push_str(&table(&["q", "b_q(X, nu/d)"], &rows));
    m.insert("nu".into(), json!(nu));
    m.insert("d".into(), json!(a.d));
    m.insert("degrees".into(), json!(qs));
    m.insert("betti".into(), json!(shown));
    ok(Report { text, json: Value::Object(m) })
}

fn alexander(a: &InputArgs) -> Result<Outcome, CliError> {
    let l = load(a)?;
    let c = l.over_z()?;
    let poly = alexander_polynomial(&c)?;
    let (mut text, mut m) = l.header("alexander");
    let rep = poly.report();
    text.push_str(&format!("nu = {}\nΔ(t) = {}\n", list(l.nu()?), rep.polynomial));
    if let Some(n) = &rep.notice {
        text.push_str(&format!("note: {n}\n"));
    }
    m.insert("nu".into(), json!(l.nu()?));
    m.insert("alexander".into(), to_value(&rep));
    ok(Report { text, json: Value::Object(m) })
}

fn bounds(a: &BoundsArgs) -> Result<Outcome, CliError> {
    let l = load(&a.input)?;
    let nu = l.nu()?;
    let rep = bounds_report(&l.complex, nu, a.p, a.r)?;
    let (mut text, mut m) = l.header("bounds");
    let qs = degrees(&a.input, l.complex.top_degree())?;
    let d = a.p.pow(a.r);
    let rows: Vec<Vec<String>> = rep
        .degrees
        .iter()
        .filter(|g| qs.contains(&g.q))
        .map(|g| {
            vec![
                g.q.to_string(),
                g.twisted.to_string(),
                g.beta.to_string(),
                g.betti_fp.to_string(),
                g.torsion_free.map_or("?".into(), yes_no),
            ]
        })
        .collect();
    text.push_str(&format!("nu = {}, p = {}, r = {}\n\n", list(nu), a.p, a.r));
    text.push_str(&table(
        &[
            "q",
            &format!("b_q(X, nu/{d})"),
            &format!("beta_q(X, nu mod {})", a.p),
            &format!("b_q(X, F_{})", a.p),
            "H_q(X, Z) torsion-free",
        ],
        &rows,
    ));
    text.push_str(&format!("\nb(nu/{d}) <= b(F_{}): {}\n", a.p, rep.betti_bound));
    text.push_str(&format!("b(nu/{d}) <= beta: {}\n", rep.aomoto_bound));
    for n in &rep.notices {
        text.push_str(&format!("note: {n}\n"));
    }
    let mut v = to_value(&rep);
    if let Some(Value::Array(ds)) = v.get_mut("degrees") {
        ds.retain(|g| g["q"].as_u64().is_some_and(|q| qs.contains(&(q as usize))));
    }
    m.insert("bounds".into(), v);
    let status = if a.input.strict && rep.aomoto_bound == Verdict::NotApplicable {
        text.push_str("strict: integral homology has torsion, the bound by beta is not applicable\n");
        EXIT_HYPOTHESIS
    } else {
        EXIT_OK
    };
    Ok(Outcome { report: Report { text, json: Value::Object(m) }, status })
}

fn betti(a: &InputArgs) -> Result<Outcome, CliError> {
    let l = load(a)?;
    let c = &l.complex;
    let (mut text, mut m) = l.header("betti");
    let qs = degrees(a, c.top_degree())?;
    if c.ring().is_field() {
        let b = c.betti_numbers()?;
        let rows: Vec<Vec<String>> = qs.iter().map(|&q| vec![q.to_string(), b[q].to_string()]).collect();
        text.push_str(&table(&["q", "b_q"], &rows));
        m.insert("betti".into(), json!(qs.iter().map(|&q| b[q]).collect::<Vec<_>>()));
    } else {
        let t = integral_torsion_check(c)?;
        let rows: Vec<Vec<String>> = t
            .homology
            .iter()
            .filter(|h| qs.contains(&h.q))
            .map(|h| {
                let mut parts = Vec::new();
                if h.rank > 0 {
                    parts.push(if h.rank == 1 { "Z".into() } else { format!("Z^{}", h.rank) });
                }
                parts.extend(h.torsion.iter().map(|n| format!("Z/{n}")));
                let group = if parts.is_empty() { "0".into() } else { parts.join(" ⊕ ") };
                vec![h.q.to_string(), h.rank.to_string(), group]
            })
            .collect();
        text.push_str(&table(&["q", "b_q", "H_q(X, Z)"], &rows));
        let mut v = to_value(&t);
        if let Some(Value::Array(hs)) = v.get_mut("homology") {
            hs.retain(|h| h["q"].as_u64().is_some_and(|q| qs.contains(&(q as usize))));
        }
        m.insert("betti".into(), json!(qs.iter().map(|&q| t.homology[q].rank).collect::<Vec<_>>()));
        m.insert("integral".into(), v);
    }
    m.insert("degrees".into(), json!(qs));
    ok(Report { text, json: Value::Object(m) })
}

fn validate(a: &InputArgs) -> Result<Outcome, CliError> {
    let l = load(a)?;
    let c = &l.complex;
    let (mut text, mut m) = l.header("validate");
    text.push_str(&format!(
        "valid: cells {}, Euler characteristic {}, minimal: {}\n",
        list(c.dims()),
        c.euler_characteristic(),
        yes_no(c.is_minimal())
    ));
    if let Some((p, _)) = c.presentation() {
        text.push_str(&format!("presentation {p}\n"));
        m.insert("presentation".into(), json!(p.to_string()));
    }
    if let Some(nu) = &l.nu {
        text.push_str(&format!("nu = {}\n", list(nu)));
        m.insert("nu".into(), json!(nu));
    }
    m.insert("valid".into(), json!(true));
    m.insert("dims".into(), json!(c.dims()));
    m.insert("provenance".into(), to_value(&c.provenance()));
    m.insert("euler_characteristic".into(), json!(c.euler_characteristic()));
    m.insert("minimal".into(), json!(c.is_minimal()));
    let boundaries: Vec<Vec<Vec<String>>> = c
        .boundaries()
        .iter()
        .map(|b| b.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect())
        .collect();
    m.insert("boundaries".into(), json!(boundaries));
    ok(Report { text, json: Value::Object(m) })
}

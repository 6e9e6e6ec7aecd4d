use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde_json::{json, Map, Value};

use asepx::asep::{gillespie, markov_sector, stationary_kernel, Multiplicity, SectorBasis};
use asepx::checks::{
    check_hat, check_ltt, check_ms, check_quasi_periodicity, check_recursion, check_rll, check_rtt, check_ybe,
    check_zf, verify_stationary, CheckReport,
};
use asepx::ctm::{build_all_x, build_x, mp_stationary, XOperator};
use asepx::mlq::{mlq_queues, mlq_state};
use asepx::oscillator::FockTruncation;
use asepx::scalar::json::{parse_rational, poly_to_json};
use asepx::{Error, PolyT, Rational};

const SCHEMA: &str = "asepx/1";

#[derive(Parser)]
#[command(name = "asepx", version, about = "Exact stationary states of the multispecies ASEP on a ring")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Sector basis and Markov matrix.
    Sector(SectorArgs),
    /// Stationary vector of a sector.
    Stationary(StationaryArgs),
    /// Run an identity check.
    Verify(VerifyArgs),
    /// Continuous-time simulation of the ring.
    Simulate(SimulateArgs),
    /// Term lists of the layer operators X_α(z).
    DumpX(DumpXArgs),
    /// Every multiline queue of a sector with its arrows.
    DumpMlq(DumpMlqArgs),
}

#[derive(Args)]
struct SectorArgs {
    /// Number of particle species.
    #[arg(long)]
    n: usize,
    /// Ring length.
    #[arg(long = "L")]
    len: usize,
    /// Multiplicities m0,m1,...,mn.
    #[arg(long)]
    mult: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Kernel,
    Mlq,
    Mp,
}

#[derive(Args)]
struct StationaryArgs {
    #[command(flatten)]
    sector: SectorArgs,
    #[arg(long, value_enum, default_value_t = Method::Kernel)]
    method: Method,
    /// Queue parameter q as "p/q" (mlq only).
    #[arg(long)]
    q: Option<String>,
    /// Run kernel, mlq (q = 1) and mp and compare.
    #[arg(long)]
    all_methods: bool,
    /// Include every multiline queue (mlq only).
    #[arg(long)]
    dump_mlq: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Ybe,
    Rll,
    LtLink,
    Qp,
    Rtt,
    Zf,
    Hat,
    MsTheorem,
    Stationary,
    Recursion,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[arg(long)]
    n: usize,
    /// Level of the L operator (rll) or maximal ring length (ms-theorem).
    #[arg(long)]
    l: Option<usize>,
    /// Ring length (stationary); every basic sector of that length is checked.
    #[arg(long = "L")]
    len: Option<usize>,
    #[arg(long, default_value_t = 10)]
    fock_dim: usize,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    sector: SectorArgs,
    /// Hopping asymmetry t (decimal).
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 10_000.0)]
    horizon: f64,
    #[arg(long, default_value_t = 100.0)]
    burn_in: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct DumpXArgs {
    #[arg(long)]
    n: usize,
    /// Single operator index; all of them when omitted.
    #[arg(long)]
    alpha: Option<usize>,
}

#[derive(Args)]
struct DumpMlqArgs {
    #[command(flatten)]
    sector: SectorArgs,
    /// Queue parameter q as "p/q".
    #[arg(long, default_value = "1")]
    q: String,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Emitted document plus whether the requested check held.
struct Outcome {
    doc: Value,
    text: Vec<String>,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe (`| head`) is not an error
            let _ = match cli.format {
                Format::Json => writeln!(stdout, "{}", serde_json::to_string_pretty(&out.doc).expect("json")),
                Format::Text => out.text.iter().try_for_each(|l| writeln!(stdout, "{l}")),
            };
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Sector(a) => sector(a),
        Command::Stationary(a) => stationary(a),
        Command::Verify(a) => verify(a),
        Command::Simulate(a) => simulate(a),
        Command::DumpX(a) => dump_x(a),
        Command::DumpMlq(a) => dump_mlq(a),
    }
}

fn header(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m
}

fn multiplicity(a: &SectorArgs) -> Result<Multiplicity, Failure> {
    let m: Multiplicity = a.mult.parse()?;
    if m.n() != a.n {
        return Err(Failure::Usage(format!("--mult has {} entries, expected n + 1 = {}", m.counts().len(), a.n + 1)));
    }
    if m.len() != a.len {
        return Err(Failure::Usage(format!("--mult sums to {}, expected L = {}", m.len(), a.len)));
    }
    Ok(m)
}

fn rational(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn state_map(basis: &SectorBasis, v: &[PolyT]) -> (Value, Vec<String>) {
    let mut map = Map::new();
    let mut text = Vec::new();
    for (c, p) in basis.configs().iter().zip(v) {
        map.insert(c.to_string(), poly_to_json(p));
        text.push(format!("{c} {p}"));
    }
    (Value::Object(map), text)
}

fn sector(a: &SectorArgs) -> Result<Outcome, Failure> {
    let m = multiplicity(a)?;
    let (basis, h) = markov_sector(&m);
    let mut rows: Map<String, Value> = Map::new();
    let mut text = Vec::new();
    for ((r, c), e) in &h.entries {
        let (rc, cc) = (basis.configs()[*r].to_string(), basis.configs()[*c].to_string());
        text.push(format!("{rc} {cc} {e}"));
        rows.entry(rc)
            .or_insert_with(|| Value::Object(Map::new()))
            .as_object_mut()
            .expect("object")
            .insert(cc, poly_to_json(e));
    }
    let mut doc = header("sector");
    doc.insert("mult".into(), json!(m.counts()));
    doc.insert("basis".into(), json!(basis.configs().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
    doc.insert("matrix".into(), Value::Object(rows));
    Ok(Outcome { doc: Value::Object(doc), text, ok: true })
}

fn compute(m: &Multiplicity, method: Method, q: &Rational) -> Result<(SectorBasis, Vec<PolyT>), Failure> {
    Ok(match method {
        Method::Kernel => stationary_kernel(m)?,
        Method::Mlq => {
            let v = mlq_state(m, q)?;
            let c = v.canonical()?;
            (v.basis, c)
        }
        Method::Mp => {
            let v = mp_stationary(m)?;
            let c = v.canonical()?;
            (v.basis, c)
        }
    })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Kernel => "kernel",
        Method::Mlq => "mlq",
        Method::Mp => "mp",
    }
}

fn stationary(a: &StationaryArgs) -> Result<Outcome, Failure> {
    let m = multiplicity(&a.sector)?;
    if a.q.is_some() && a.method != Method::Mlq && !a.all_methods {
        return Err(Failure::Usage("--q applies to --method mlq".into()));
    }
    if a.dump_mlq && a.method != Method::Mlq {
        return Err(Failure::Usage("--dump-mlq applies to --method mlq".into()));
    }
    if a.all_methods && a.q.is_some() {
        return Err(Failure::Usage("--all-methods compares at q = 1".into()));
    }
    let q = match &a.q {
        Some(s) => rational(s)?,
        None => Rational::one(),
    };
    let mut doc = header("stationary");
    doc.insert("mult".into(), json!(m.counts()));
    let mut ok = true;
    let mut text = Vec::new();
    if a.all_methods {
        let methods = [Method::Kernel, Method::Mlq, Method::Mp];
        let mut results = Vec::new();
        for &meth in &methods {
            results.push(compute(&m, meth, &q)?);
        }
        let equal = results.windows(2).all(|w| w[0].1 == w[1].1);
        ok = equal;
        let status = if equal { "EQUAL" } else { "DIFFERENT" };
        doc.insert("status".into(), json!(status));
        text.push(status.to_string());
        let mut per = Map::new();
        for (meth, (basis, v)) in methods.iter().zip(&results) {
            per.insert(method_name(*meth).into(), state_map(basis, v).0);
        }
        doc.insert("methods".into(), Value::Object(per));
        let (basis, v) = &results[0];
        let (state, lines) = state_map(basis, v);
        doc.insert("state".into(), state);
        text.extend(lines);
    } else {
        let (basis, v) = compute(&m, a.method, &q)?;
        doc.insert("method".into(), json!(method_name(a.method)));
        if a.method == Method::Mlq {
            doc.insert("q".into(), json!(q.to_string()));
        }
        let (state, lines) = state_map(&basis, &v);
        doc.insert("state".into(), state);
        text.extend(lines);
        if a.dump_mlq {
            doc.insert("queues".into(), queues_json(&m, &q)?);
        }
    }
    Ok(Outcome { doc: Value::Object(doc), text, ok })
}

fn queues_json(m: &Multiplicity, q: &Rational) -> Result<Value, Failure> {
    m.require_basic()?;
    let queues = mlq_queues(m)?;
    Ok(Value::Array(
        queues
            .iter()
            .map(|qu| {
                let w = qu.weight(q);
                json!({
                    "rows": qu.rows.iter().rev().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "arrows": qu.arrows.iter().map(|a| json!([a.source + 1, a.target + 1, a.row])).collect::<Vec<_>>(),
                    "config": qu.config.to_string(),
                    "weight": w.to_string(),
                })
            })
            .collect(),
    ))
}

fn dump_mlq(a: &DumpMlqArgs) -> Result<Outcome, Failure> {
    let m = multiplicity(&a.sector)?;
    let q = rational(&a.q)?;
    let queues = queues_json(&m, &q)?;
    let text = queues
        .as_array()
        .expect("array")
        .iter()
        .map(|v| format!("{} {} {}", v["config"], v["rows"], v["weight"]))
        .collect();
    let mut doc = header("dump-mlq");
    doc.insert("mult".into(), json!(m.counts()));
    doc.insert("q".into(), json!(q.to_string()));
    doc.insert("queues".into(), queues);
    Ok(Outcome { doc: Value::Object(doc), text, ok: true })
}

fn report_json(r: &CheckReport) -> Value {
    json!({
        "name": r.name,
        "n": r.n,
        "passed": r.passed(),
        "covered": r.covered(),
        "comparisons": r.comparisons,
        "points": r.points,
        "degree_bound": r.degree_bound,
        "witness": r.failure,
    })
}

/// Every basic sector with `n` species on a ring of length `len`.
fn basic_sectors(n: usize, len: usize) -> Vec<Multiplicity> {
    fn rec(rest: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Multiplicity>) {
        if parts == 1 {
            if rest >= 1 {
                cur.push(rest);
                out.push(Multiplicity::new(cur.clone()));
                cur.pop();
            }
            return;
        }
        for k in 1..rest {
            cur.push(k);
            rec(rest - k, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, n + 1, &mut Vec::new(), &mut out);
    out
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    if a.fock_dim < 2 {
        return Err(Failure::Usage("--fock-dim must be at least 2".into()));
    }
    if a.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let fock = FockTruncation::new(a.fock_dim);
    let reports = match a.check {
        Check::Ybe => vec![check_ybe(a.n, a.trials, a.seed)?],
        Check::Rll => vec![check_rll(a.n, a.l.unwrap_or(1), a.trials, a.seed)?],
        Check::LtLink => vec![check_ltt(a.n)],
        Check::Qp => vec![check_quasi_periodicity(a.n, a.trials, a.seed)?],
        Check::Rtt => vec![check_rtt(a.n, a.trials, a.seed, fock)?],
        Check::Zf => vec![check_zf(a.n, a.trials, a.seed, fock)?],
        Check::Hat => vec![check_hat(a.n, fock)?],
        Check::Recursion => {
            if a.n < 2 {
                return Err(Failure::Usage("recursion needs --n 2 or more".into()));
            }
            vec![check_recursion(a.n, a.trials, a.seed, fock)?]
        }
        Check::MsTheorem => vec![check_ms(a.l.unwrap_or(7), a.trials, 3, a.seed)?],
        Check::Stationary => {
            let len = a.len.unwrap_or(a.n + 1);
            if len <= a.n {
                return Err(Failure::Usage("--L must exceed --n for a basic sector".into()));
            }
            basic_sectors(a.n, len)
                .iter()
                .map(|m| {
                    let r = verify_stationary(m)?;
                    let mut c = r.check.clone();
                    c.name = format!("stationary {:?}", m.counts());
                    Ok(c)
                })
                .collect::<Result<Vec<_>, Error>>()?
        }
    };
    let ok = reports.iter().all(|r| r.passed());
    let mut doc = header("verify");
    doc.insert("passed".into(), json!(ok));
    doc.insert("reports".into(), Value::Array(reports.iter().map(report_json).collect()));
    let text = reports.iter().map(|r| r.to_string()).collect();
    Ok(Outcome { doc: Value::Object(doc), text, ok })
}

fn simulate(a: &SimulateArgs) -> Result<Outcome, Failure> {
    let m = multiplicity(&a.sector)?;
    let (basis, emp) = gillespie(&m, a.t, a.horizon, a.burn_in, a.seed)?;
    let mut map = Map::new();
    let mut text = Vec::new();
    for (k, c) in basis.configs().iter().enumerate() {
        map.insert(c.to_string(), json!({ "mass": emp.mass[k], "stderr": emp.stderr[k] }));
        text.push(format!("{c} {:.6} {:.6}", emp.mass[k], emp.stderr[k]));
    }
    let mut doc = header("simulate");
    doc.insert("mult".into(), json!(m.counts()));
    doc.insert("t".into(), json!(a.t));
    doc.insert("events".into(), json!(emp.events));
    doc.insert("distribution".into(), Value::Object(map));
    Ok(Outcome { doc: Value::Object(doc), text, ok: true })
}

fn x_json(x: &XOperator) -> Value {
    json!(x
        .rendered()
        .into_iter()
        .map(|(d, w)| json!({ "zdeg": d, "word": w }))
        .collect::<Vec<_>>())
}

fn dump_x(a: &DumpXArgs) -> Result<Outcome, Failure> {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let ops: Vec<(usize, XOperator)> = match a.alpha {
        Some(al) => vec![(al, build_x(a.n, al)?)],
        None => build_all_x(a.n).into_iter().enumerate().collect(),
    };
    let mut map = Map::new();
    let mut text = Vec::new();
    for (al, x) in &ops {
        map.insert(al.to_string(), x_json(x));
        text.push(format!("X_{al} = {x}"));
    }
    let mut doc = header("dump-x");
    doc.insert("n".into(), json!(a.n));
    doc.insert("modes".into(), json!(asepx::ctm::mode_count(a.n)));
    doc.insert("operators".into(), Value::Object(map));
    Ok(Outcome { doc: Value::Object(doc), text, ok: true })
}

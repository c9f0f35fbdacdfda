//! Verification suites: closed form against the quadrature oracle, one entry
//! per case, gathered into a [`SuiteReport`].

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use qbessel::closed_form::{
    airy_quartic, airy_s57, evaluate, i2k2_family, BesselFactor, BesselKind, EvalResult,
    I2K2Branch, IntegralSpec,
};
use qbessel::quadrature::{integrate, OracleSpec, QuadratureOptions};

use crate::error::{CliError, CliResult};
use crate::spec_text::{parse_spec, render};

pub const DEFAULT_SEED: u64 = 20_240_917;
/// Cases drawn per shape by `generic-random`.
pub const RANDOM_PER_SHAPE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    PaperCore,
    PaperElementary,
    PaperAiry,
    GenericRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TableFamily {
    K4Digamma,
    Ik3Digamma,
    I2k2Elementary,
    Airy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    /// Short case label: the order for table rows.
    pub label: String,
    pub formula_id: String,
    pub params: String,
    pub closed_value: Option<f64>,
    pub oracle_value: Option<f64>,
    pub rel_gap: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub suite: String,
    pub oracle_rel_tol: f64,
    pub oracle_abs_tol: f64,
    pub seed: Option<u64>,
    /// Seconds since the Unix epoch; absent with `--no-timestamp`.
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub entries: Vec<Entry>,
    pub metadata: Metadata,
}

impl SuiteReport {
    /// Every entry that ran passed.
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub quadrature: QuadratureOptions,
    pub seed: u64,
    pub timestamp: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            quadrature: QuadratureOptions {
                rel_tol: 1e-12,
                ..Default::default()
            },
            seed: DEFAULT_SEED,
            timestamp: true,
        }
    }
}

/// How the closed value of a case is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Closed {
    /// [`closed_value`]: the Bessel dispatcher or the Airy catalog.
    Dispatch,
    /// The explicit binomial-sum variant of the α = 0, s = 1 I²K² form.
    Ox2,
    /// The second form of the Bi·Ai·Ai² integral.
    S57,
}

#[derive(Debug, Clone)]
struct Case {
    label: String,
    /// Formula the case is expected to reach; `None` accepts any.
    expect: Option<&'static str>,
    spec: OracleSpec,
    tol: f64,
    closed: Closed,
}

fn case(label: impl Into<String>, expect: &'static str, text: &str, tol: f64) -> Case {
    let spec = parse_spec(text).unwrap_or_else(|e| panic!("catalog spec '{text}': {e}"));
    Case {
        label: label.into(),
        expect: Some(expect),
        spec,
        tol,
        closed: Closed::Dispatch,
    }
}

fn paper_core() -> Vec<Case> {
    let mut v = vec![
        case("K0^4", "fox1", "x^2 * K(0,1)^4", 1e-9),
        case("I0 K0^3", "fox2", "x^2 * I(0,1) * K(0,1)^3", 1e-9),
        case("a=1 b=2", "li2", "x^2 * K(0,1)^2 * K(0,2)^2", 1e-9),
        case("a=1 b=2", "lili", "x^2 * I(0,1) * K(0,1) * K(0,2)^2", 1e-9),
        case("a=2 b=1", "lilix", "x^2 * I(0,2) * K(0,2) * K(0,1)^2", 1e-9),
        case("a=1 b=2", "kab13", "x^2 * K(1/3,1)^2 * K(1/3,2)^2", 1e-9),
        case("a=1 b=3", "kab13", "x^2 * K(1/3,1)^2 * K(1/3,3)^2", 1e-9),
        case(
            "a=1 b=2",
            "k14-acoth",
            "x^2 * K(1/4,1)^2 * K(1/4,2)^2",
            1e-9,
        ),
        case("α=0.1", "slv1", "x^1 * K(0.1,1)^2 * K(0.1,2)^2", 1e-9),
        case("α=0.3", "forab", "x^2 * K(0.3,1)^2 * K(0.3,2)^2", 1e-9),
        case("α=0.3", "foraa", "x^2 * K(0.3,1)^4", 1e-9),
        case(
            "α=0.2",
            "sch1",
            "x^1 * I(0.2,1) * K(0.2,1) * K(0.2,2)^2",
            1e-9,
        ),
        case(
            "α=0.3",
            "forab2",
            "x^2 * I(0.3,1) * K(0.3,1) * K(0.3,2)^2",
            1e-9,
        ),
        case(
            "α=-0.3",
            "forab2",
            "x^2 * I(-0.3,1) * K(0.3,1) * K(0.3,2)^2",
            1e-9,
        ),
        case("α=0.3", "foraa2", "x^2 * I(0.3,1) * K(0.3,1)^3", 1e-9),
        case(
            "α=1/2",
            "ikk2-elementary",
            "x^2 * I(1/2,1) * K(1/2,1) * K(1/2,2)^2",
            1e-9,
        ),
        case(
            "α=1/4",
            "ikk2-elementary",
            "x^2 * I(1/4,1) * K(1/4,1) * K(1/4,2)^2",
            1e-9,
        ),
        case(
            "α=-1/4",
            "ikk2-elementary",
            "x^2 * I(-1/4,1) * K(1/4,1) * K(1/4,2)^2",
            1e-9,
        ),
        case("α=0.3", "haw", "x^1 * I(0.3,1)^2 * K(0.3,2)^2", 1e-9),
        case("α=0.3", "2f1ab", "x^2 * I(0.3,1)^2 * K(0.3,2)^2", 1e-9),
        case("a=1 b=2", "ox1", "x^1 * I(0,1)^2 * K(0,2)^2", 1e-9),
        case(
            "generic",
            "for1",
            "x^1.3 * K(0.21,1) * K(0.17,1) * K(0.11,2) * K(0.07,2)",
            1e-7,
        ),
        case(
            "generic",
            "k3igen",
            "x^1.2 * I(0.3,1) * K(0.25,1) * K(0.2,2) * K(0.15,2)",
            1e-7,
        ),
        case(
            "generic",
            "iikkgen",
            "x^1.1 * I(0.2,1) * I(0.4,1) * K(0.1,2) * K(0.3,2)",
            1e-8,
        ),
        case("n=1", "thm1.2for", "x^1.5 * I(0.3,1) * K(0.2,3)", 1e-9),
        case(
            "n=2",
            "thm1.2for",
            "x^1.7 * I(0.25,1) * I(0.5,0.5) * K(0.4,2.5)",
            1e-9,
        ),
        case(
            "n=3",
            "thm1.2for",
            "x^2 * I(1/3,1)^2 * I(-1/3,1) * K(1/3,4)",
            1e-6,
        ),
        case(
            "μ=0.3 ν=0.2",
            "mellin1",
            "x^1.5 * K(0.3,1) * K(0.2,1)",
            1e-9,
        ),
    ];
    let mut ox2 = case("a=1 b=2", "ox2", "x^1 * I(0,1)^2 * K(0,2)^2", 1e-9);
    ox2.closed = Closed::Ox2;
    v.push(ox2);
    v
}

fn k4_digamma() -> Vec<Case> {
    [3, 4, 6, 8, 10, 12]
        .iter()
        .map(|m| {
            case(
                format!("1/{m}"),
                "k4-table",
                &format!("x^2 * K(1/{m},1)^4"),
                1e-9,
            )
        })
        .collect()
}

fn ik3_digamma() -> Vec<Case> {
    ["1/2", "1/3", "-1/3", "1/4", "-1/4"]
        .iter()
        .map(|o| {
            let k = o.trim_start_matches('-');
            case(
                *o,
                "ik3-table",
                &format!("x^2 * I({o},1) * K({k},1)^3"),
                1e-9,
            )
        })
        .collect()
}

fn i2k2_elementary() -> Vec<Case> {
    [
        ("0", "i2k2-integer"),
        ("1/2", "i2k2-half-integer"),
        ("1", "i2k2-integer"),
        ("3/2", "i2k2-half-integer"),
        ("2", "i2k2-integer"),
        ("5/2", "i2k2-half-integer"),
    ]
    .iter()
    .map(|(o, id)| case(*o, id, &format!("x^2 * I({o},1)^2 * K({o},2)^2"), 1e-9))
    .collect()
}

fn airy() -> Vec<Case> {
    vec![
        case("Ai^4", "ai4", "x^1 * Ai(1)^4", 1e-9),
        case("Bi Ai^3", "ai3bi", "x^1 * Bi(1) * Ai(1)^3", 1e-9),
        case("a=1 b=2", "ai22", "x^1 * Ai(1)^2 * Ai(2)^2", 1e-8),
        case("a=1 b=2", "lion", "x^1 * Bi(1) * Ai(1) * Ai(2)^2", 1e-8),
        case("a=1 b=2", "lion2", "x^1 * Bi(1)^2 * Ai(2)^2", 1e-8),
        case("a=1 b=4", "lion3", "x^1 * Bi(1)^3 * Ai(4)", 1e-5),
    ]
}

fn table_cases(family: TableFamily) -> Vec<Case> {
    match family {
        TableFamily::K4Digamma => k4_digamma(),
        TableFamily::Ik3Digamma => ik3_digamma(),
        TableFamily::I2k2Elementary => i2k2_elementary(),
        TableFamily::Airy => airy(),
    }
}

/// Parameter windows for `generic-random`, one shape each:
///
/// - K_α(x)K_β(x)K_γ(bx)K_δ(bx): s ∈ [1.1, 2.5], orders ∈ [0.02, 0.25], b ∈ [1.2, 2.5]
/// - I_α(x)K_β(x)K_γ(bx)K_δ(bx): same windows
/// - I_α(x)I_β(x)K_γ(bx)K_δ(bx): same windows
/// - Πₖ I_{αₖ}(aₖx)·K_β(bx), n ∈ {1,2,3}: s ∈ [0.8, 2.5], αₖ ∈ [0, 0.5],
///   aₖ ∈ [0.2, 0.6], β ∈ [0, 0.4], b − Σaₖ ∈ [0.3, 1.5]
fn generic_random(seed: u64) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let (i, k) = (BesselFactor::i, BesselFactor::k);
    for shape in 0..4 {
        for n in 0..RANDOM_PER_SHAPE {
            let spec = if shape < 3 {
                let s = rng.gen_range(1.1..2.5);
                let o: Vec<f64> = (0..4).map(|_| rng.gen_range(0.02..0.25)).collect();
                let b = rng.gen_range(1.2..2.5);
                let head = [shape >= 1, shape >= 2];
                let f = |j: usize, c: f64| {
                    if j < 2 && head[j] {
                        i(o[j], c)
                    } else {
                        k(o[j], c)
                    }
                };
                IntegralSpec::new(s, vec![f(0, 1.0), f(1, 1.0), f(2, b), f(3, b)])
            } else {
                let count = 1 + n % 3;
                let s = rng.gen_range(0.8..2.5);
                let mut fs: Vec<BesselFactor> = (0..count)
                    .map(|_| i(rng.gen_range(0.0..0.5), rng.gen_range(0.2..0.6)))
                    .collect();
                let sum: f64 = fs.iter().map(|f| f.scale).sum();
                fs.push(k(rng.gen_range(0.0..0.4), sum + rng.gen_range(0.3..1.5)));
                IntegralSpec::new(s, fs)
            };
            let spec = spec.expect("window specs are valid");
            out.push(Case {
                label: format!("shape {shape} #{n}"),
                expect: None,
                spec: spec.into(),
                tol: 1e-8,
                closed: Closed::Dispatch,
            });
        }
    }
    out
}

/// Closed form for any spec the catalog covers.
pub fn closed_value(spec: &OracleSpec) -> qbessel::Result<EvalResult> {
    match spec {
        OracleSpec::Bessel(b) => evaluate(b),
        OracleSpec::Airy(a) => airy_quartic(a),
    }
}

fn scale_of(spec: &OracleSpec, kind: BesselKind) -> f64 {
    match spec {
        OracleSpec::Bessel(b) => b
            .factors
            .iter()
            .find(|f| f.kind == kind)
            .map_or(f64::NAN, |f| f.scale),
        OracleSpec::Airy(_) => f64::NAN,
    }
}

fn run_closed(case: &Case) -> qbessel::Result<EvalResult> {
    match case.closed {
        Closed::Dispatch => closed_value(&case.spec),
        Closed::Ox2 => {
            let (a, b) = (
                scale_of(&case.spec, BesselKind::I),
                scale_of(&case.spec, BesselKind::K),
            );
            i2k2_family(I2K2Branch::Ox2, 0.0, a, b)
        }
        Closed::S57 => match &case.spec {
            OracleSpec::Airy(a) => {
                let (_, a, b) = a.pattern()?;
                airy_s57(a, b)
            }
            OracleSpec::Bessel(_) => Err(qbessel::Error::Domain("s57 needs an Airy spec".into())),
        },
    }
}

fn run_case(case: &Case, quad: &QuadratureOptions) -> Entry {
    let mut e = Entry {
        label: case.label.clone(),
        formula_id: case.expect.unwrap_or("").to_string(),
        params: render(&case.spec),
        closed_value: None,
        oracle_value: None,
        rel_gap: None,
        tolerance: case.tol,
        status: Status::Fail,
        reason: None,
    };
    let closed = match run_closed(case) {
        Ok(r) => r,
        Err(err) if err.is_evaluator_limit() => {
            e.status = Status::Skipped;
            e.reason = Some(err.to_string());
            return e;
        }
        Err(err) => {
            e.reason = Some(format!("closed form: {err}"));
            return e;
        }
    };
    e.closed_value = Some(closed.value);
    e.formula_id = closed.formula_id.clone();
    match integrate(&case.spec, quad) {
        Ok(q) => e.oracle_value = Some(q.value),
        Err(err) => {
            e.reason = Some(format!("oracle: {err}"));
            return e;
        }
    }
    let (c, o) = (closed.value, e.oracle_value.unwrap_or(f64::NAN));
    let gap = (c - o).abs() / o.abs().max(1e-300);
    e.rel_gap = Some(gap);
    match case.expect {
        Some(id) if id != closed.formula_id => {
            e.reason = Some(format!("expected {id}, routed to {}", closed.formula_id));
        }
        _ if gap <= case.tol => e.status = Status::Pass,
        _ => e.reason = Some(format!("gap {gap:.3e} above {:.0e}", case.tol)),
    }
    e
}

fn run_cases(name: &str, cases: &[Case], opts: &SuiteOptions, seed: Option<u64>) -> SuiteReport {
    // par_iter().collect() keeps entry order
    let entries = cases
        .par_iter()
        .map(|c| run_case(c, &opts.quadrature))
        .collect();
    let timestamp = opts.timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    SuiteReport {
        entries,
        metadata: Metadata {
            suite: name.to_string(),
            oracle_rel_tol: opts.quadrature.rel_tol,
            oracle_abs_tol: opts.quadrature.abs_tol,
            seed,
            timestamp,
        },
    }
}

fn suite_cases(name: SuiteName, seed: u64) -> Vec<Case> {
    match name {
        SuiteName::PaperCore => paper_core(),
        SuiteName::PaperElementary => [k4_digamma(), ik3_digamma(), i2k2_elementary()].concat(),
        SuiteName::PaperAiry => {
            let mut v = airy();
            let mut s57 = case("a=1 b=2", "s57", "x^1 * Bi(1) * Ai(1) * Ai(2)^2", 1e-8);
            s57.closed = Closed::S57;
            v.push(s57);
            v
        }
        SuiteName::GenericRandom => generic_random(seed),
    }
}

fn suite_label(name: SuiteName) -> &'static str {
    match name {
        SuiteName::PaperCore => "paper-core",
        SuiteName::PaperElementary => "paper-elementary",
        SuiteName::PaperAiry => "paper-airy",
        SuiteName::GenericRandom => "generic-random",
    }
}

/// All specs a suite would run, for inspection and round-trip checks.
pub fn suite_specs(name: SuiteName, seed: u64) -> Vec<OracleSpec> {
    suite_cases(name, seed)
        .into_iter()
        .map(|c| c.spec)
        .collect()
}

pub fn run_suite(name: SuiteName, opts: &SuiteOptions) -> SuiteReport {
    let seed = (name == SuiteName::GenericRandom).then_some(opts.seed);
    run_cases(suite_label(name), &suite_cases(name, opts.seed), opts, seed)
}

fn table_label(family: TableFamily) -> &'static str {
    match family {
        TableFamily::K4Digamma => "k4-digamma",
        TableFamily::Ik3Digamma => "ik3-digamma",
        TableFamily::I2k2Elementary => "i2k2-elementary",
        TableFamily::Airy => "airy",
    }
}

pub fn run_table(family: TableFamily, opts: &SuiteOptions) -> SuiteReport {
    run_cases(table_label(family), &table_cases(family), opts, None)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

fn write_entries_csv<W: Write>(entries: &[Entry], first: &str, out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        first,
        "formula_id",
        "params",
        "closed_value",
        "oracle_value",
        "rel_gap",
        "tolerance",
        "status",
        "reason",
    ])?;
    for e in entries {
        let status = match e.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        w.write_record([
            e.label.as_str(),
            &e.formula_id,
            &e.params,
            &opt(e.closed_value),
            &opt(e.oracle_value),
            &opt(e.rel_gap),
            &e.tolerance.to_string(),
            status,
            e.reason.as_deref().unwrap_or(""),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// A full report: JSON object, or CSV of its entries.
pub fn write_report<W: Write>(report: &SuiteReport, format: Format, mut out: W) -> CliResult<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
            Ok(())
        }
        Format::Csv => write_entries_csv(&report.entries, "case", out),
    }
}

/// One of the tables: CSV with an `order` column, or a JSON array of entries.
pub fn emit_table<W: Write>(
    family: TableFamily,
    format: Format,
    opts: &SuiteOptions,
    mut out: W,
) -> CliResult<SuiteReport> {
    let report = run_table(family, opts);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report.entries)?;
            writeln!(out)?;
        }
        Format::Csv => write_entries_csv(&report.entries, "order", &mut out)?,
    }
    Ok(report)
}

/// Open `path` for writing, or stdout when absent.
pub fn sink(path: Option<&std::path::Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).map_err(CliError::Io)?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

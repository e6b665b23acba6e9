//! Batch front end: dimensions, bases, single products, verification sweeps
//! and product tables.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 configuration error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qschur::schurd::{mult_fund_d, SchurB};
use qschur::verify::{self, Report, FLAG_BUDGET};
use qschur::{
    classify, dim_b, dim_d, enumerate_xi_b, enumerate_xi_d, mult_fund_b, CoxeterType, Error,
    FormulaCase, Fundamental, MatB, MatD, SchurElt, Tag,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "qschur", version, about = "Exact computations in q-Schur algebras of types B and D")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    B,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Dimensions,
    BOracle,
    DOracle,
    Halving,
    Geom,
    Bijections,
    Structure,
    Embedding,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerated and closed-form dimensions of both algebras.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Cap on the number of enumerated indices.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Lists the natural basis indices.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "type", value_enum, default_value_t = Kind::B)]
        kind: Kind,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Product of a fundamental (or diagonal) left factor with a basis element.
    Mult {
        #[arg(long = "type", value_enum, default_value_t = Kind::B)]
        kind: Kind,
        /// Left matrix as JSON rows, e.g. "[[1,1,0],[0,0,0],[0,1,1]]".
        #[arg(long)]
        left: String,
        /// Right matrix as JSON rows.
        #[arg(long)]
        right: String,
        /// Tag of the left factor in type D: dot, ++, --, +- or -+.
        #[arg(long)]
        left_tag: Option<String>,
        #[arg(long)]
        right_tag: Option<String>,
    },
    /// Runs a verification sweep and exits 1 on any mismatch.
    Verify {
        /// Suite name; may also be given with --suite.
        #[arg(value_enum)]
        which: Option<Suite>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Odd prime for the geometric suite.
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Cap on the number of enumerated flags.
        #[arg(long, default_value_t = FLAG_BUDGET)]
        budget: usize,
        /// Check only this many left factors, drawn with --seed.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Table of every fundamental product at (n, r).
    Export {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "type", value_enum, default_value_t = Kind::B)]
        kind: Kind,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
}

/// Why a command stopped early.
enum Failure {
    Mismatch(Value),
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(format!("i/o: {e}"))
    }
}

/// Rendered command output.
enum Output {
    Json(Value),
    /// Header and rows.
    Table(Vec<String>, Vec<Vec<String>>),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            return config_error("--workers must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            return config_error(&e.to_string());
        }
    }
    let res = run(&cli.command, cli.format);
    let (out, code) = match res {
        Ok(out) => (out, ExitCode::SUCCESS),
        Err(Failure::Mismatch(v)) => (Output::Json(v), ExitCode::from(1)),
        Err(Failure::Config(msg)) => return config_error(&msg),
    };
    match emit(&out, cli.out.as_ref()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => config_error(&format!("i/o: {e}")),
        _ => code,
    }
}

fn config_error(msg: &str) -> ExitCode {
    eprintln!("qschur: {msg}");
    ExitCode::from(2)
}

fn emit(out: &Output, path: Option<&PathBuf>) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    match out {
        Output::Json(v) => {
            serde_json::to_writer(&mut sink, v)?;
            writeln!(sink)?;
        }
        Output::Table(header, rows) => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(header)?;
            for row in rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn check_rank(n: usize, r: usize) -> Result<(), Failure> {
    if n == 0 || r == 0 {
        return Err(Failure::Config("--n and --r must be positive".into()));
    }
    Ok(())
}

fn run(cmd: &Command, format: Format) -> Result<Output, Failure> {
    match cmd {
        Command::Dim { n, r, budget } => cmd_dim(*n, *r, *budget, format),
        Command::Basis { n, r, kind, budget } => cmd_basis(*n, *r, *kind, *budget, format),
        Command::Mult {
            kind,
            left,
            right,
            left_tag,
            right_tag,
        } => cmd_mult(*kind, left, right, left_tag.as_deref(), right_tag.as_deref()).map(Output::Json),
        Command::Verify {
            which,
            suite,
            n,
            r,
            p,
            budget,
            sample,
            seed,
        } => {
            let suite = match (which, suite) {
                (Some(a), Some(b)) if a != b => return Err(Failure::Config("two different suites given".into())),
                (Some(s), _) | (None, Some(s)) => *s,
                (None, None) => return Err(Failure::Config("no suite given".into())),
            };
            cmd_verify(suite, *n, *r, *p, *budget, *sample, *seed, format)
        }
        Command::Export { n, r, kind, budget } => cmd_export(*n, *r, *kind, *budget, format),
    }
}

fn cmd_dim(n: usize, r: usize, budget: usize, format: Format) -> Result<Output, Failure> {
    check_rank(n, r)?;
    let eb = enumerate_xi_b(n, r, budget)?.len();
    let ed = enumerate_xi_d(n, r, budget)?.len();
    let (fb, fd) = (dim_b(n, r), dim_d(n, r));
    let rows = [
        ("B", eb, fb.to_string(), fb.to_string() == eb.to_string()),
        ("D", ed, fd.to_string(), fd.to_string() == ed.to_string()),
    ];
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema": SCHEMA,
            "n": n,
            "r": r,
            "dimensions": rows.iter().map(|(t, e, f, ok)| json!({
                "type": t, "enumerated": e, "formula": f, "enumeration = formula": ok,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => Output::Table(
            vec!["type".into(), "enumerated".into(), "formula".into(), "agree".into()],
            rows.iter()
                .map(|(t, e, f, ok)| vec![t.to_string(), e.to_string(), f.clone(), ok.to_string()])
                .collect(),
        ),
    })
}

fn entries_json(m: &MatB) -> String {
    serde_json::to_string(&m.rows()).expect("rows serialize")
}

fn cmd_basis(n: usize, r: usize, kind: Kind, budget: usize, format: Format) -> Result<Output, Failure> {
    check_rank(n, r)?;
    let rows: Vec<(MatB, Option<Tag>)> = match kind {
        Kind::B => enumerate_xi_b(n, r, budget)?.into_iter().map(|a| (a, None)).collect(),
        Kind::D => enumerate_xi_d(n, r, budget)?.into_iter().map(|a| (a.base, Some(a.tag))).collect(),
    };
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema": SCHEMA,
            "type": type_name(kind),
            "n": n,
            "r": r,
            "count": rows.len(),
            "basis": rows.iter().map(|(m, t)| {
                let mut v = json!({"entries": m.rows(), "class": classify(m).label()});
                if let Some(t) = t {
                    v["tag"] = json!(t.as_str());
                }
                v
            }).collect::<Vec<_>>(),
        })),
        Format::Csv => Output::Table(
            vec!["entries".into(), "tag".into(), "class".into()],
            rows.iter()
                .map(|(m, t)| {
                    vec![
                        entries_json(m),
                        t.map(|t| t.as_str().to_string()).unwrap_or_default(),
                        classify(m).label().to_string(),
                    ]
                })
                .collect(),
        ),
    })
}

fn type_name(kind: Kind) -> &'static str {
    match kind {
        Kind::B => "B",
        Kind::D => "D",
    }
}

fn parse_matrix(s: &str) -> Result<MatB, Failure> {
    let rows: Vec<Vec<u32>> =
        serde_json::from_str(s).map_err(|e| Failure::Config(format!("cannot parse matrix {s:?}: {e}")))?;
    Ok(MatB::new(rows)?)
}

/// The given tag, or the only admissible one.
fn signed_index(m: MatB, tag: Option<&str>) -> Result<MatD, Failure> {
    let tag = match tag {
        Some(t) => Tag::parse(t)?,
        None => match MatD::tags_for(&m).as_slice() {
            [only] => *only,
            _ => return Err(Failure::Config(format!("{m} needs a sign tag"))),
        },
    };
    Ok(MatD::new(m, tag)?)
}

fn product_json<I: Ord + Clone + serde::Serialize>(
    kind: Kind,
    left: Value,
    right: Value,
    case: &str,
    product: &SchurElt<I>,
) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "type": type_name(kind),
        "n": product.n(),
        "r": product.r(),
        "left": left,
        "right": right,
        "case": case,
        "product": product,
    });
    if case == FormulaCase::WeightMismatch.name() {
        v["reason"] = json!("weight-mismatch");
    }
    v
}

/// Type-B product with the case that produced it.
fn mult_b(left: &MatB, right: &MatB) -> Result<(&'static str, SchurB), Failure> {
    if left.n() != right.n() || left.r() != right.r() {
        return Err(Failure::Config("factors have different (n, r)".into()));
    }
    let mut out = SchurB::zero(CoxeterType::B, right.n(), right.r());
    if left.co() != right.ro() {
        return Ok((FormulaCase::WeightMismatch.name(), out));
    }
    if left.is_diagonal() {
        out.add_term(right.clone(), &qschur::PolyQ::one());
        return Ok((FormulaCase::Idempotent.name(), out));
    }
    let f = Fundamental::from_matrix(left)?;
    let case = match f.direction {
        qschur::Direction::Raise => "raise",
        qschur::Direction::Lower => "lower",
    };
    Ok((case, mult_fund_b(&f, right)?))
}

fn cmd_mult(
    kind: Kind,
    left: &str,
    right: &str,
    left_tag: Option<&str>,
    right_tag: Option<&str>,
) -> Result<Value, Failure> {
    let (l, r) = (parse_matrix(left)?, parse_matrix(right)?);
    match kind {
        Kind::B => {
            if left_tag.is_some() || right_tag.is_some() {
                return Err(Failure::Config("tags only apply to type D".into()));
            }
            let (case, p) = mult_b(&l, &r)?;
            Ok(product_json(kind, json!(l), json!(r), case, &p))
        }
        Kind::D => {
            let (l, r) = (signed_index(l, left_tag)?, signed_index(r, right_tag)?);
            let p = mult_fund_d(&l, &r)?;
            Ok(product_json(kind, json!(l), json!(r), p.case.name(), &p.value))
        }
    }
}

fn sample_indices(len: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, len, k.min(len)).into_vec();
    idx.sort_unstable();
    idx
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: Suite,
    n: usize,
    r: usize,
    p: u32,
    budget: usize,
    sample: Option<usize>,
    seed: u64,
    format: Format,
) -> Result<Output, Failure> {
    check_rank(n, r)?;
    if sample.is_some() && !matches!(suite, Suite::BOracle | Suite::DOracle) {
        return Err(Failure::Config("--sample applies to b-oracle and d-oracle only".into()));
    }
    let mut summary = None;
    let report: Report = match suite {
        Suite::Dimensions => verify::dimensions(n, r)?,
        Suite::BOracle => {
            let all = Fundamental::all(n, r);
            let lefts: Vec<Fundamental> = match sample {
                Some(k) => sample_indices(all.len(), k, seed).into_iter().map(|i| all[i].clone()).collect(),
                None => all.clone(),
            };
            let rep = verify::b_oracle_for(n, r, &lefts)?;
            summary = Some(if lefts.len() == all.len() {
                "products checked: all fundamental pairs".to_string()
            } else {
                format!("products checked: {} of {} left factors (seed {seed})", lefts.len(), all.len())
            });
            rep
        }
        Suite::DOracle => {
            if r < 4 {
                return Err(Error::RankTooSmall(r).into());
            }
            let all = verify::d_left_factors(n, r);
            let lefts: Vec<MatD> = match sample {
                Some(k) => sample_indices(all.len(), k, seed).into_iter().map(|i| all[i].clone()).collect(),
                None => all.clone(),
            };
            let rep = verify::d_oracle_for(n, r, &lefts)?;
            let missing = verify::missing_branches([&rep]);
            summary = Some(if missing.is_empty() {
                "every formula branch fired".to_string()
            } else {
                format!("branches not fired: {}", missing.join(", "))
            });
            rep
        }
        Suite::Halving => verify::halving_algebraic(n, r)?,
        Suite::Geom => verify::geom(n, r, p, budget)?,
        Suite::Bijections => verify::bijections(n, r)?,
        Suite::Structure => verify::structure(r, n, r)?,
        Suite::Embedding => verify::embedding(n, r)?,
    };
    let passed = report.passed();
    let out = match format {
        Format::Json => {
            let mut v = json!({"schema": SCHEMA, "passed": passed});
            if let (Value::Object(dst), Value::Object(src)) =
                (&mut v, serde_json::to_value(&report).expect("report serializes"))
            {
                dst.extend(src);
            }
            if let Some(s) = summary {
                v["summary"] = json!(s);
            }
            if sample.is_some() {
                v["seed"] = json!(seed);
            }
            v
        }
        Format::Csv => {
            let table = Output::Table(
                ["suite", "n", "r", "checked", "failures", "passed"].map(String::from).to_vec(),
                vec![vec![
                    report.suite.clone(),
                    n.to_string(),
                    r.to_string(),
                    report.checked.to_string(),
                    report.failures.to_string(),
                    passed.to_string(),
                ]],
            );
            if passed {
                return Ok(table);
            }
            json!({"schema": SCHEMA, "passed": false, "first_failure": report.first_failure})
        }
    };
    if passed {
        Ok(Output::Json(out))
    } else {
        Err(Failure::Mismatch(out))
    }
}

fn cmd_export(n: usize, r: usize, kind: Kind, budget: usize, format: Format) -> Result<Output, Failure> {
    check_rank(n, r)?;
    // (left, right, case, product terms as (index, tag, coefficient)).
    type Row = (String, String, String, Vec<(String, String, Value)>);
    let mut rows: Vec<Row> = Vec::new();
    let mut products = Vec::new();
    match kind {
        Kind::B => {
            let xb = enumerate_xi_b(n, r, budget)?;
            for f in Fundamental::all(n, r) {
                for a in xb.iter().filter(|a| a.ro() == f.matrix.co()) {
                    let (case, p) = mult_b(&f.matrix, a)?;
                    let terms = p
                        .terms()
                        .iter()
                        .map(|(i, c)| (entries_json(i), String::new(), json!(c)))
                        .collect();
                    rows.push((entries_json(&f.matrix), entries_json(a), case.to_string(), terms));
                    products.push(product_json(kind, json!(f.matrix), json!(a), case, &p));
                }
            }
        }
        Kind::D => {
            if r < 4 {
                return Err(Error::RankTooSmall(r).into());
            }
            let xd = enumerate_xi_d(n, r, budget)?;
            for f in verify::d_left_factors(n, r) {
                for a in xd.iter().filter(|a| a.row_weight() == f.col_weight()) {
                    let p = mult_fund_d(&f, a)?;
                    let terms = p
                        .value
                        .terms()
                        .iter()
                        .map(|(i, c)| (entries_json(&i.base), i.tag.as_str().to_string(), json!(c)))
                        .collect();
                    rows.push((f.to_string(), a.to_string(), p.case.name().to_string(), terms));
                    products.push(product_json(kind, json!(f), json!(a), p.case.name(), &p.value));
                }
            }
        }
    }
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema": SCHEMA,
            "type": type_name(kind),
            "n": n,
            "r": r,
            "count": products.len(),
            "products": products,
        })),
        Format::Csv => Output::Table(
            ["left", "right", "case", "result", "result_tag", "coefficient"].map(String::from).to_vec(),
            rows.into_iter()
                .flat_map(|(l, r, case, terms)| {
                    terms.into_iter().map(move |(i, t, c)| {
                        vec![l.clone(), r.clone(), case.clone(), i, t, c.to_string()]
                    })
                })
                .collect(),
        ),
    })
}

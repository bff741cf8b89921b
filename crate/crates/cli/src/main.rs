//! `cqsym`: JSON front end to the cqsym library.
//!
//! Every command reads one payload (`--in` inline JSON, a file path, or `-`
//! for standard input) and writes one JSON value to standard output.
//! Binary operations take a JSON array of two payloads.

use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use cqsym::characters::{self, Psi};
use cqsym::combinat::{count_compositions, count_peak_compositions, enumerate_compositions, Cycloribbon};
use cqsym::hopf::{HopfAlgebra, PosetHopf, QSymHopf};
use cqsym::json::{
    self as wire, Coeff, CompositionJson, JsonError, PermutationJson, PolynomialJson, PosetElementJson, PosetJson,
    PosetTensorJson, QSymJson, TensorJson,
};
use cqsym::oracle;
use cqsym::poset::enumerate_canonical;
use cqsym::qsym::{self, Basis};
use cqsym::verify::{self, Grid};
use cqsym::Error;

#[derive(Parser)]
#[command(name = "cqsym", version, about = "Colored posets, quasisymmetric and peak functions")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Payload: inline JSON, a file path, or `-` for standard input.
    #[arg(long = "in", global = true)]
    input: Option<String>,
    /// Number of colors (an upper bound for `verify`).
    #[arg(long, global = true)]
    m: Option<u32>,
    #[arg(long = "max-n", global = true)]
    max_n: Option<usize>,
    /// Alphabet size for the oracle.
    #[arg(long = "max-N", global = true)]
    max_big_n: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    suite: Option<String>,
    /// Target basis for conversions.
    #[arg(long, global = true)]
    basis: Option<Basis>,
    /// Pretty-print with this many spaces.
    #[arg(long = "json-indent", global = true)]
    json_indent: Option<usize>,
}

#[derive(Subcommand)]
enum Verb {
    /// Colored compositions.
    Comp {
        #[command(subcommand)]
        op: CompOp,
    },
    /// Colored permutations.
    Perm {
        #[command(subcommand)]
        op: PermOp,
    },
    /// Colored posets and their Hopf algebra.
    Poset {
        #[command(subcommand)]
        op: PosetOp,
    },
    /// Colored quasisymmetric functions.
    Qsym {
        #[command(subcommand)]
        op: QsymOp,
    },
    /// Characters and the universal morphism.
    Char {
        #[command(subcommand)]
        op: CharOp,
    },
    /// Brute-force P-partition enumeration.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Run a property suite over a parameter grid.
    Verify { name: Option<String> },
    /// Dimension rows of QSym^(m) and the peak algebra.
    Dims,
}

#[derive(Subcommand)]
enum CompOp {
    Hat,
    Star,
    Conjugate,
    Reverse,
    IsPeak,
    Rainbow,
    Coarsenings,
    Refinements,
    /// Input `[a, b]`: does `a` refine `b`?
    Refines,
    /// Cycloribbon diagram rows.
    Diagram,
    /// All compositions of weight `--max-n` with `--m` colors.
    Enumerate,
}

#[derive(Subcommand)]
enum PermOp {
    Descent,
    Peak,
    DescentSet,
    PeakSet,
    Standardize,
    Reverse,
    /// Input `[u, v]` with disjoint values.
    Shuffle,
}

#[derive(Subcommand)]
enum PosetOp {
    Canonical,
    /// Input `[p, q]`.
    Equivalent,
    Extensions,
    Ideals,
    /// Input `[p, q]`.
    Product,
    Coproduct,
    Antipode,
    Gamma,
    Lambda,
    /// Canonical posets of size `--max-n` with `--m` colors.
    Enumerate,
}

#[derive(Subcommand)]
enum QsymOp {
    /// Re-express in `--basis` (M or F).
    Convert,
    /// Input `[a, b]`.
    Multiply,
    Coproduct,
    Antipode,
    Theta,
}

#[derive(Subcommand)]
enum CharOp {
    /// Evaluate a named character (`counit`, `zetaP[:j]`, `nuP[:j]`) on a poset.
    Poset { name: String },
    /// Evaluate a named character (`counit`, `zetaQ[:j]`, `nuQ[:j]`) on a QSym element.
    Qsym { name: String },
    /// Universal morphism of a poset tuple family (`zetaP` or `nuP`), M basis.
    Psi { family: String },
}

#[derive(Subcommand)]
enum OracleOp {
    /// Colored P-partitions into `[N]_m`.
    Ppartitions,
    /// Colored enriched P-partitions into `[N]_m^±`.
    Enriched,
    /// Restrict a QSym element to the first N indices.
    Truncate,
    /// Split-alphabet check over two copies of `[N]_m`.
    Split,
}

enum Failure {
    Usage(String),
    Parse { line: usize, column: usize, message: String },
    Domain(Error),
    Unverified(Value),
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Parse { line, column, message } => Failure::Parse { line, column, message },
            JsonError::Domain(e) => Failure::Domain(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<Value, Failure>;

fn read_payload(opts: &Opts) -> Result<String, Failure> {
    let source = opts.input.as_deref().unwrap_or("-");
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(source.to_string());
    }
    if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(source).map_err(|e| Failure::Usage(format!("reading {source}: {e}")))
}

fn payload<T: for<'de> serde::Deserialize<'de>>(opts: &Opts) -> Result<T, Failure> {
    Ok(wire::parse(&read_payload(opts)?)?)
}

fn pair<T: for<'de> serde::Deserialize<'de>>(opts: &Opts) -> Result<(T, T), Failure> {
    Ok(wire::parse_pair(&read_payload(opts)?)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("wire types serialize")
}

fn coeff(r: &cqsym::Rational) -> Value {
    to_value(&Coeff::from_rational(r))
}

fn number(text: String) -> Value {
    serde_json::from_str(&text).unwrap_or(Value::String(text))
}

fn comp_value(a: &cqsym::ColoredComposition) -> Value {
    to_value(&CompositionJson::from_comp(a))
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T, Failure> {
    x.ok_or_else(|| Failure::Usage(format!("missing {flag}")))
}

fn comp(op: &CompOp, opts: &Opts) -> Outcome {
    if let CompOp::Enumerate = op {
        let (m, n) = (need(opts.m, "--m")?, need(opts.max_n, "--max-n")?);
        if m == 0 {
            return Err(Error::NoColors.into());
        }
        let all: Vec<Value> = enumerate_compositions(m, n as u32).iter().map(comp_value).collect();
        return Ok(json!({ "m": m, "n": n, "count": all.len(), "compositions": all }));
    }
    if let CompOp::Refines = op {
        let (a, b) = pair::<CompositionJson>(opts)?;
        return Ok(json!({ "refines": a.to_comp()?.refines(&b.to_comp()?) }));
    }
    let a = payload::<CompositionJson>(opts)?.to_comp()?;
    Ok(match op {
        CompOp::Hat => comp_value(&a.hat()),
        CompOp::Star => comp_value(&a.star()),
        CompOp::Conjugate => comp_value(&a.conjugate()),
        CompOp::Reverse => comp_value(&a.reverse()),
        CompOp::IsPeak => json!({ "peak": a.is_peak_composition() }),
        CompOp::Rainbow => {
            let blocks: Vec<Value> =
                a.rainbow_decompose().blocks.iter().map(|b| json!({ "color": b.color, "sizes": b.sizes })).collect();
            json!({ "m": a.m(), "blocks": blocks })
        }
        CompOp::Coarsenings => Value::Array(a.coarsenings().iter().map(comp_value).collect()),
        CompOp::Refinements => Value::Array(a.refinements().iter().map(comp_value).collect()),
        CompOp::Diagram => {
            let d = Cycloribbon::from_composition(&a);
            let rows: Vec<String> = d.render().lines().map(str::to_string).collect();
            let conj: Vec<String> = d.transpose().render().lines().map(str::to_string).collect();
            json!({ "rows": rows, "transpose": conj, "conjugate": comp_value(&a.conjugate()) })
        }
        CompOp::Refines | CompOp::Enumerate => unreachable!("handled above"),
    })
}

fn perm(op: &PermOp, opts: &Opts) -> Outcome {
    if let PermOp::Shuffle = op {
        let (u, v) = pair::<PermutationJson>(opts)?;
        let all = u.to_perm()?.shuffles(&v.to_perm()?)?;
        return Ok(Value::Array(all.iter().map(|w| to_value(&PermutationJson::from_perm(w))).collect()));
    }
    let p = payload::<PermutationJson>(opts)?.to_perm()?;
    Ok(match op {
        PermOp::Descent => comp_value(&p.descent_composition()),
        PermOp::Peak => comp_value(&p.peak_composition()),
        PermOp::DescentSet => json!(p.descent_set()),
        PermOp::PeakSet => json!(p.peak_set()),
        PermOp::Standardize => to_value(&PermutationJson::from_perm(&p.standardize())),
        PermOp::Reverse => to_value(&PermutationJson::from_perm(&p.reversed())),
        PermOp::Shuffle => unreachable!("handled above"),
    })
}

fn poset_value(p: &cqsym::ColoredPoset) -> Value {
    to_value(&PosetJson::from_poset(p))
}

fn poset(op: &PosetOp, opts: &Opts) -> Outcome {
    match op {
        PosetOp::Enumerate => {
            let (m, n) = (need(opts.m, "--m")?, need(opts.max_n, "--max-n")?);
            if m == 0 {
                return Err(Error::NoColors.into());
            }
            let all = enumerate_canonical(m, n);
            let list: Vec<Value> = all.iter().map(poset_value).collect();
            return Ok(json!({ "m": m, "n": n, "count": list.len(), "posets": list }));
        }
        PosetOp::Equivalent | PosetOp::Product => {
            let (a, b) = pair::<PosetJson>(opts)?;
            let (p, q) = (a.to_poset()?, b.to_poset()?);
            if p.m() != q.m() {
                return Err(Error::ColorCountMismatch(p.m(), q.m()).into());
            }
            return Ok(match op {
                PosetOp::Equivalent => json!({ "equivalent": p.is_equivalent(&q) }),
                _ => poset_value(&p.disjoint_union(&q)?.canonical_form()),
            });
        }
        _ => {}
    }
    let p = payload::<PosetJson>(opts)?.to_poset()?;
    let alg = PosetHopf::new(p.m());
    Ok(match op {
        PosetOp::Canonical => poset_value(&p.canonical_form()),
        PosetOp::Extensions => {
            Value::Array(p.linear_extensions().iter().map(|w| to_value(&PermutationJson::from_perm(w))).collect())
        }
        PosetOp::Ideals => Value::Array(p.ideals().iter().map(poset_value).collect()),
        PosetOp::Coproduct => to_value(&PosetTensorJson::from_tensor(p.m(), &alg.comul_key(&alg.canonical(&p)))),
        PosetOp::Antipode => to_value(&PosetElementJson::from_linear(p.m(), &alg.antipode_key(&p))),
        PosetOp::Gamma => to_value(&QSymJson::from_element(&qsym::gamma(&p))),
        PosetOp::Lambda => to_value(&QSymJson::from_element(&qsym::lambda(&p))),
        PosetOp::Equivalent | PosetOp::Product | PosetOp::Enumerate => unreachable!("handled above"),
    })
}

fn qsym_op(op: &QsymOp, opts: &Opts) -> Outcome {
    if let QsymOp::Multiply = op {
        let (a, b) = pair::<QSymJson>(opts)?;
        return Ok(to_value(&QSymJson::from_element(&qsym::multiply(&a.to_element()?, &b.to_element()?)?)));
    }
    let e = payload::<QSymJson>(opts)?.to_element()?;
    let out = match op {
        QsymOp::Convert => match need(opts.basis, "--basis")? {
            Basis::M => e.to_m(),
            Basis::F => e.to_f(),
            Basis::K if e.basis() == Basis::K => e,
            Basis::K => return Err(Error::WrongBasis { expected: Basis::K, found: e.basis() }.into()),
        },
        QsymOp::Coproduct => return Ok(to_value(&TensorJson::from_tensor(&qsym::coproduct(&e)?))),
        QsymOp::Antipode => qsym::antipode(&e)?,
        QsymOp::Theta => qsym::theta(&e)?,
        QsymOp::Multiply => unreachable!("handled above"),
    };
    Ok(to_value(&QSymJson::from_element(&out)))
}

fn char_op(op: &CharOp, opts: &Opts) -> Outcome {
    match op {
        CharOp::Poset { name } => {
            let p = payload::<PosetJson>(opts)?.to_poset()?;
            let alg = Arc::new(PosetHopf::new(p.m()));
            let chi = characters::poset_character(&alg, name)?;
            Ok(json!({ "character": name, "value": coeff(&chi.eval_key(&alg.canonical(&p))) }))
        }
        CharOp::Qsym { name } => {
            let e = payload::<QSymJson>(opts)?.to_element()?;
            let alg = Arc::new(QSymHopf::new(e.m()));
            let chi = characters::qsym_character(&alg, name)?;
            Ok(json!({ "character": name, "value": coeff(&characters::eval_qsym(&chi, &e)) }))
        }
        CharOp::Psi { family } => {
            let p = payload::<PosetJson>(opts)?.to_poset()?;
            let alg = Arc::new(PosetHopf::new(p.m()));
            let psi = Psi::new(characters::poset_tuple(&alg, family)?);
            let img = psi.apply(&alg.element(&p));
            Ok(to_value(&QSymJson::from_element(&img)))
        }
    }
}

fn oracle_op(op: &OracleOp, opts: &Opts) -> Outcome {
    let n = need(opts.max_big_n, "--max-N")?;
    if let OracleOp::Truncate = op {
        let e = payload::<QSymJson>(opts)?.to_element()?;
        return Ok(to_value(&PolynomialJson::from_poly(&oracle::truncate(&e, n))));
    }
    let p = payload::<PosetJson>(opts)?.to_poset()?;
    Ok(match op {
        OracleOp::Ppartitions => to_value(&PolynomialJson::from_poly(&oracle::enumerate_ppartitions(&p, n))),
        OracleOp::Enriched => to_value(&PolynomialJson::from_poly(&oracle::enumerate_enriched(&p, n))),
        OracleOp::Split => {
            let s = oracle::split_alphabet_check(&p, n);
            json!({
                "direct_count": coeff(&s.direct_count),
                "split_count": coeff(&s.split_count),
                "polynomials_equal": s.polynomials_equal,
                "holds": s.holds(),
            })
        }
        OracleOp::Truncate => unreachable!("handled above"),
    })
}

fn run_verify(suite: Option<&str>, opts: &Opts) -> Outcome {
    let suite = suite
        .or(opts.suite.as_deref())
        .ok_or_else(|| Failure::Usage(format!("name a suite: {}", verify::SUITES.join(", "))))?;
    let d = Grid::default_for(suite);
    let grid = Grid {
        max_m: opts.m.unwrap_or(d.max_m),
        max_n: opts.max_n.unwrap_or(d.max_n),
        max_big_n: opts.max_big_n.unwrap_or(d.max_big_n),
        seed: opts.seed.unwrap_or(d.seed),
    };
    let report = to_value(&verify::run(suite, &grid)?);
    if report["passed"] == Value::Bool(true) {
        Ok(report)
    } else {
        Err(Failure::Unverified(report))
    }
}

fn dims(opts: &Opts) -> Outcome {
    let m = opts.m.unwrap_or(1);
    let max_n = opts.max_n.unwrap_or(5) as u32;
    if m == 0 {
        return Err(Error::NoColors.into());
    }
    let qsym: Vec<Value> = (1..=max_n).map(|n| number(count_compositions(m, n).to_string())).collect();
    let peak: Vec<Value> = (1..=max_n).map(|n| number(count_peak_compositions(m, n).to_string())).collect();
    Ok(json!({ "m": m, "n": (1..=max_n).collect::<Vec<_>>(), "qsym": qsym, "peak": peak }))
}

fn dispatch(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    match &cli.verb {
        Verb::Comp { op } => comp(op, opts),
        Verb::Perm { op } => perm(op, opts),
        Verb::Poset { op } => poset(op, opts),
        Verb::Qsym { op } => qsym_op(op, opts),
        Verb::Char { op } => char_op(op, opts),
        Verb::Oracle { op } => oracle_op(op, opts),
        Verb::Verify { name } => run_verify(name.as_deref(), opts),
        Verb::Dims => dims(opts),
    }
}

fn emit(v: &Value, indent: Option<usize>) {
    // round-trip through Value so object keys come out sorted
    let text = match indent {
        Some(k) if k > 0 => {
            let pad = vec![b' '; k];
            let mut buf = Vec::new();
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
            serde::Serialize::serialize(v, &mut ser).expect("in-memory write");
            String::from_utf8(buf).expect("JSON is UTF-8")
        }
        _ => v.to_string(),
    };
    println!("{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit(&json!({ "error": { "kind": "usage", "message": e.to_string().trim_end() } }), None);
            return ExitCode::from(2);
        }
    };
    let indent = cli.opts.json_indent;
    match dispatch(&cli) {
        Ok(v) => {
            emit(&v, indent);
            ExitCode::SUCCESS
        }
        Err(Failure::Unverified(report)) => {
            emit(&report, indent);
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            emit(&json!({ "error": { "kind": "usage", "message": message } }), indent);
            ExitCode::from(2)
        }
        Err(Failure::Parse { line, column, message }) => {
            emit(&json!({ "error": { "kind": "parse", "line": line, "column": column, "message": message } }), indent);
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            emit(&json!({ "error": { "kind": "domain", "invariant": e.invariant(), "message": e.to_string() } }), indent);
            ExitCode::from(3)
        }
    }
}

//! Command dispatch for the `edr` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use edr_core::smith::verify_smith;
use edr_core::{
    BezoutDomain, ChainComplex, Edr, Matrix, ModuleDecomposition, Presentation, Strategy,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::input::{parse_raw, print_matrix, ComplexFile, MatrixJson, RawMatrix, RingTag};
use crate::{selftest, with_ring, CliError, Outcome};

/// Largest transition matrix printed without `--full`.
pub const PRINT_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Smith normal form `d`, with transitions `P`, `Q`.
    Smith,
    /// Re-check a stored `smith --json` result against its matrix.
    Verify,
    /// Number of invariant factors.
    Rank,
    /// Kernel matrix `K` with `X·M = 0` iff `X = Y·K`.
    Kernel,
    /// Cokernel matrix `C` with `M·X = 0` iff `X = C·Y`.
    Cokernel,
    /// Solve `X·M = B` for `X`.
    Solve,
    /// Decide whether two presentations give isomorphic modules.
    Iso,
    /// Homology of a chain complex file.
    Homology,
}

impl Command {
    fn arity(&self) -> usize {
        match self {
            Command::Verify | Command::Solve | Command::Iso => 2,
            _ => 1,
        }
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

/// Exact linear algebra over elementary divisor rings.
#[derive(Debug, Parser)]
#[command(name = "edr", version)]
pub struct Args {
    #[arg(value_enum, required_unless_present = "selftest")]
    pub command: Option<Command>,
    pub files: Vec<PathBuf>,
    /// Smith strategy: euclidean, pid or kaplansky.
    #[arg(long, value_parser = parse_strategy)]
    pub strategy: Option<Strategy>,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
    /// Print transition matrices of any size.
    #[arg(long)]
    pub full: bool,
    /// Run a single-file command on every file, concurrently.
    #[arg(long)]
    pub each: bool,
    /// Homology in every degree (the default).
    #[arg(long, conflicts_with = "degree")]
    pub all: bool,
    /// Homology in one degree.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Run the built-in property suites; `EDR_SEED` fixes the seed.
    #[arg(long)]
    pub selftest: bool,
}

pub fn run(args: &Args) -> Outcome {
    if args.selftest {
        return run_selftest();
    }
    let Some(command) = args.command else {
        return Outcome::from_error(CliError::Input("missing command".into()));
    };
    if args.each {
        if command.arity() != 1 {
            return Outcome::from_error(CliError::Input(format!(
                "--each needs a single-file command, not {command:?}"
            )));
        }
        let outcomes: Vec<Outcome> = std::thread::scope(|s| {
            let handles: Vec<_> = args
                .files
                .iter()
                .map(|f| s.spawn(move || run_files(command, std::slice::from_ref(f), args)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        let mut total = Outcome::default();
        for (file, o) in args.files.iter().zip(outcomes) {
            total
                .stdout
                .push_str(&format!("== {} ==\n{}", file.display(), o.stdout));
            total.stderr.push_str(&o.stderr);
            total.code = total.code.max(o.code);
        }
        return total;
    }
    run_files(command, &args.files, args)
}

fn run_selftest() -> Outcome {
    let seed = match std::env::var("EDR_SEED") {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(v) => v,
            Err(_) => {
                return Outcome::from_error(CliError::Input(format!(
                    "EDR_SEED must be an integer, got {s:?}"
                )))
            }
        },
        Err(_) => selftest::DEFAULT_SEED,
    };
    let results = selftest::run_all(seed, &selftest::Scale::full());
    let mut out = Outcome::default();
    out.stdout.push_str(&format!("seed {seed}\n"));
    for r in &results {
        out.stdout.push_str(&r.line());
        out.stdout.push('\n');
    }
    if results.iter().any(|r| !r.passed) {
        out.code = 3;
    }
    out
}

fn run_files(command: Command, files: &[PathBuf], args: &Args) -> Outcome {
    if files.len() != command.arity() {
        return Outcome::from_error(CliError::Input(format!(
            "{} expects {} file(s), got {}",
            format!("{command:?}").to_lowercase(),
            command.arity(),
            files.len()
        )));
    }
    match dispatch(command, files, args) {
        Ok((stdout, positive)) => Outcome {
            code: if positive { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::from_error(e),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<RawMatrix, CliError> {
    let raw = parse_raw(&read(path)?).map_err(|e| e.context(path))?;
    let ring = raw
        .ring
        .instantiate()
        .map_err(|e| CliError::Input(e.to_string()))?;
    with_ring!(&ring, |r| raw.build(r).map(|_| ())).map_err(|e| e.context(path))?;
    Ok(raw)
}

fn same_ring(a: RingTag, b: RingTag) -> Result<RingTag, CliError> {
    if a == b {
        Ok(a)
    } else {
        Err(CliError::Input(format!("ring mismatch: {a} vs {b}")))
    }
}

fn edr<R: BezoutDomain + Clone>(r: &R, args: &Args) -> Result<Edr<R>, CliError> {
    let e = match args.strategy {
        Some(s) => Edr::with_strategy(r.clone(), s),
        None => Edr::new(r.clone()),
    };
    e.map_err(|e| CliError::Input(e.to_string()))
}

type Reply = (String, bool);

fn dispatch(command: Command, files: &[PathBuf], args: &Args) -> Result<Reply, CliError> {
    if command == Command::Homology {
        let (tag, file) =
            ComplexFile::parse(&read(&files[0])?).map_err(|e| e.context(&files[0]))?;
        let ring = tag
            .instantiate()
            .map_err(|e| CliError::Input(e.to_string()))?;
        return with_ring!(&ring, |r| homology(r, tag, &file, args));
    }
    let first = load(&files[0])?;
    let ring = first
        .ring
        .instantiate()
        .map_err(|e| CliError::Input(e.to_string()))?;
    match command {
        Command::Smith => with_ring!(&ring, |r| smith_cmd(r, &first, args)),
        Command::Verify => {
            let stored = read(&files[1])?;
            with_ring!(&ring, |r| verify_cmd(r, &first, &stored, args))
        }
        Command::Rank => with_ring!(&ring, |r| rank_cmd(r, &first, args)),
        Command::Kernel => with_ring!(&ring, |r| kernel_cmd(r, &first, args, false)),
        Command::Cokernel => with_ring!(&ring, |r| kernel_cmd(r, &first, args, true)),
        Command::Solve | Command::Iso => {
            let second = load(&files[1])?;
            same_ring(first.ring, second.ring)?;
            if command == Command::Solve {
                with_ring!(&ring, |r| solve_cmd(r, &first, &second, args))
            } else {
                with_ring!(&ring, |r| iso_cmd(r, &first, &second, args))
            }
        }
        Command::Homology => unreachable!("handled above"),
    }
}

fn row_strings<R: BezoutDomain>(r: &R, m: &Matrix<R::Elem>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| r.format(e)).collect())
        .collect()
}

fn text_block<R: BezoutDomain>(r: &R, name: &str, m: &Matrix<R::Elem>, full: bool) -> String {
    if !full && (m.rows() > PRINT_LIMIT || m.cols() > PRINT_LIMIT) {
        return format!(
            "{name}: suppressed ({}x{}, use --full)\n",
            m.rows(),
            m.cols()
        );
    }
    let mut out = format!("{name}:\n");
    for row in row_strings(r, m) {
        out.push_str("  ");
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn seq<R: BezoutDomain>(r: &R, d: &[R::Elem]) -> String {
    let parts: Vec<String> = d.iter().map(|x| r.format(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn smith_cmd<R: BezoutDomain + Clone>(
    r: &R,
    raw: &RawMatrix,
    args: &Args,
) -> Result<Reply, CliError> {
    let m = raw.build(r)?;
    let e = edr(r, args)?;
    let res = e.smith(&m)?;
    let report = verify_smith(r, &m, &res);
    if !report.all_pass() {
        return Err(CliError::Internal(format!(
            "Smith result failed verification: {}",
            report.failures().join(", ")
        )));
    }
    if args.json {
        let v = json!({
            "ring": r.tag(),
            "strategy": e.strategy().to_string(),
            "d": res.d.iter().map(|x| r.format(x)).collect::<Vec<_>>(),
            "P": row_strings(r, &res.p),
            "Q": row_strings(r, &res.q),
        });
        return Ok((pretty(&v), true));
    }
    let mut out = format!("d: {}\n", seq(r, &res.d));
    out.push_str(&text_block(r, "P", &res.p, args.full));
    out.push_str(&text_block(r, "Q", &res.q, args.full));
    Ok((out, true))
}

#[derive(Deserialize)]
struct StoredSmith {
    ring: String,
    d: Vec<Value>,
    #[serde(rename = "P")]
    p: Vec<Vec<Value>>,
    #[serde(rename = "Q")]
    q: Vec<Vec<Value>>,
}

fn elem<R: BezoutDomain>(r: &R, v: &Value) -> Result<R::Elem, CliError> {
    let tok = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(CliError::Input(format!(
                "entry {other} is neither a number nor a string"
            )))
        }
    };
    r.parse(&tok).map_err(|e| CliError::Input(e.to_string()))
}

fn json_matrix<R: BezoutDomain>(
    r: &R,
    rows: &[Vec<Value>],
    name: &str,
) -> Result<Matrix<R::Elem>, CliError> {
    let cols = rows.first().map_or(0, Vec::len);
    let parsed = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| elem(r, v))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed, cols).map_err(|e| CliError::Input(format!("{name}: {e}")))
}

fn verify_cmd<R: BezoutDomain>(
    r: &R,
    raw: &RawMatrix,
    stored: &str,
    args: &Args,
) -> Result<Reply, CliError> {
    let m = raw.build(r)?;
    let s: StoredSmith =
        serde_json::from_str(stored).map_err(|e| CliError::Input(format!("stored result: {e}")))?;
    same_ring(
        raw.ring,
        s.ring.parse::<RingTag>().map_err(CliError::Input)?,
    )?;
    let d =
        s.d.iter()
            .map(|v| elem(r, v))
            .collect::<Result<Vec<_>, _>>()?;
    let res = edr_core::SmithResult {
        p: json_matrix(r, &s.p, "P")?,
        d,
        q: json_matrix(r, &s.q, "Q")?,
    };
    let rep = verify_smith(r, &m, &res);
    let clauses = [
        ("shapes", rep.shapes),
        ("product", rep.product),
        ("sorted", rep.sorted),
        ("p_unit", rep.p_unit),
        ("q_unit", rep.q_unit),
        ("nonzero", rep.nonzero),
        ("canonical", rep.canonical),
    ];
    if args.json {
        let mut obj = serde_json::Map::new();
        for (k, ok) in clauses {
            obj.insert(k.to_string(), Value::Bool(ok));
        }
        obj.insert("verified".into(), Value::Bool(rep.all_pass()));
        return Ok((pretty(&Value::Object(obj)), rep.all_pass()));
    }
    let mut out = String::new();
    for (k, ok) in clauses {
        out.push_str(&format!("{k}: {}\n", if ok { "ok" } else { "FAILED" }));
    }
    out.push_str(if rep.all_pass() {
        "verified\n"
    } else {
        "not verified\n"
    });
    Ok((out, rep.all_pass()))
}

fn rank_cmd<R: BezoutDomain + Clone>(
    r: &R,
    raw: &RawMatrix,
    args: &Args,
) -> Result<Reply, CliError> {
    let m = raw.build(r)?;
    let rank = edr(r, args)?.mxrank(&m)?;
    if args.json {
        return Ok((pretty(&json!({ "ring": r.tag(), "rank": rank })), true));
    }
    Ok((format!("rank: {rank}\n"), true))
}

fn kernel_cmd<R: BezoutDomain + Clone>(
    r: &R,
    raw: &RawMatrix,
    args: &Args,
    coker: bool,
) -> Result<Reply, CliError> {
    let m = raw.build(r)?;
    let e = edr(r, args)?;
    let k = if coker { e.cokermx(&m)? } else { e.kermx(&m)? };
    if args.json {
        let key = if coker { "cokermx" } else { "kermx" };
        let v =
            json!({ "ring": r.tag(), "rank": e.mxrank(&m)?, key: MatrixJson::from_matrix(r, &k) });
        return Ok((pretty(&v), true));
    }
    Ok((print_matrix(r, &k), true))
}

fn solve_cmd<R: BezoutDomain + Clone>(
    r: &R,
    m: &RawMatrix,
    b: &RawMatrix,
    args: &Args,
) -> Result<Reply, CliError> {
    let (m, b) = (m.build(r)?, b.build(r)?);
    let x = edr(r, args)?.solve_xm_eq_b(&m, &b)?;
    if args.json {
        let v = json!({
            "ring": r.tag(),
            "solvable": x.is_some(),
            "X": x.as_ref().map(|x| MatrixJson::from_matrix(r, x)),
        });
        return Ok((pretty(&v), x.is_some()));
    }
    match x {
        Some(x) => Ok((print_matrix(r, &x), true)),
        None => Ok(("no solution\n".to_string(), false)),
    }
}

/// `Z^2 + Z/2 + Z/6`, or `0` for the trivial module.
pub fn describe<R: BezoutDomain>(r: &R, tag: RingTag, d: &ModuleDecomposition<R::Elem>) -> String {
    let sym = tag.symbol();
    let mut parts = Vec::new();
    match d.free_rank {
        0 => {}
        1 => parts.push(sym.clone()),
        k => parts.push(format!("{sym}^{k}")),
    }
    parts.extend(d.torsion.iter().map(|t| torsion_name(r, tag, t)));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn torsion_name<R: BezoutDomain>(r: &R, tag: RingTag, t: &R::Elem) -> String {
    match tag {
        RingTag::Int => format!("Z/{}", r.format(t)),
        _ => format!("{}/({})", tag.symbol(), r.format(t)),
    }
}

fn module_json<R: BezoutDomain>(r: &R, tag: RingTag, d: &ModuleDecomposition<R::Elem>) -> Value {
    json!({
        "free_rank": d.free_rank,
        "torsion": d.torsion.iter().map(|t| torsion_name(r, tag, t)).collect::<Vec<_>>(),
        "module": describe(r, tag, d),
    })
}

fn iso_cmd<R: BezoutDomain + Clone>(
    r: &R,
    a: &RawMatrix,
    b: &RawMatrix,
    args: &Args,
) -> Result<Reply, CliError> {
    let e = edr(r, args)?;
    let (pa, pb) = (
        Presentation::new(a.build(r)?),
        Presentation::new(b.build(r)?),
    );
    let (da, db) = (e.decompose(&pa)?, e.decompose(&pb)?);
    let iso = da == db;
    if args.json {
        let v = json!({
            "isomorphic": iso,
            "left": module_json(r, a.ring, &da),
            "right": module_json(r, b.ring, &db),
        });
        return Ok((pretty(&v), iso));
    }
    Ok((
        if iso {
            "isomorphic\n"
        } else {
            "not isomorphic\n"
        }
        .to_string(),
        iso,
    ))
}

fn homology<R: BezoutDomain + Clone>(
    r: &R,
    tag: RingTag,
    file: &ComplexFile,
    args: &Args,
) -> Result<Reply, CliError> {
    let boundaries = file
        .boundaries
        .iter()
        .enumerate()
        .map(|(k, b)| {
            b.build(r)
                .map_err(|e| CliError::Input(format!("boundary {}: {e}", k + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let complex = ChainComplex::new(r, boundaries)?;
    let e = edr(r, args)?;
    let degrees: Vec<usize> = match args.degree {
        Some(k) => vec![k],
        None => (0..=complex.top()).collect(),
    };
    let groups = degrees
        .iter()
        .map(|&k| e.homology(&complex, k).map(|h| (k, h)))
        .collect::<Result<Vec<_>, _>>()?;
    if args.json {
        let hs: Vec<Value> = groups
            .iter()
            .map(|(k, h)| {
                let mut v = module_json(r, tag, h);
                v["degree"] = json!(k);
                v
            })
            .collect();
        let v = json!({ "ring": tag.to_string(), "euler_characteristic": complex.euler_characteristic(), "homology": hs });
        return Ok((pretty(&v), true));
    }
    let mut out = String::new();
    for (k, h) in &groups {
        out.push_str(&format!("H{k}: {}\n", describe(r, tag, h)));
    }
    Ok((out, true))
}

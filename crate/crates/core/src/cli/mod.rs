//! Command-line front end. [`run_command`] does all the work and returns the
//! output as strings so that the binary, tests and golden checks share it.

pub mod cache;
pub mod parser;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::serial::{basis_json, bidegree_json, polynomial_json};
use crate::algebra::{basis, hilbert_count, Bidegree};
use crate::cohomology::verify::{suite_ids, verify_theorem, Report, Status};
use crate::cohomology::{contra_pieces, covariant_piece, CohomologyPiece, PieceKind};
use crate::derivation::apply_d;
use crate::error::{Error, Result};
use crate::tor::{builtin, builtin_names, module_from_presentation, parse_module_spec, tor_dims};
use crate::SCHEMA_VERSION;

use cache::{request_digest, Cache};
pub use parser::{parse_expression, Expr};

pub const CACHE_ENV: &str = "MMM_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "mmm", version, about = "Exact computations in the stable cohomology polynomial model")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Cache directory; caching is off unless this or MMM_CACHE_DIR is set.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Covariant,
    Contravariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Ker,
    Coker,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheOp {
    Gc,
    Clear,
    Stat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical monomial basis of one bidegree.
    Basis {
        #[arg(long)]
        deg: u32,
        #[arg(long)]
        wt: u32,
    },
    /// Dimension of one bidegree from the generating function.
    Count {
        #[arg(long)]
        deg: u32,
        #[arg(long)]
        wt: u32,
    },
    /// Apply D to an expression.
    Derive {
        #[arg(long)]
        expr: String,
        /// Print the result in unbarred classes m(i,j).
        #[arg(long)]
        unbarred: bool,
    },
    /// Kernel or cokernel pieces.
    Cohom {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Covariant)]
        variant: VariantArg,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, conflicts_with = "deg_max", required_unless_present = "deg_max")]
        deg: Option<u32>,
        #[arg(long)]
        deg_max: Option<u32>,
    },
    /// Tor dimensions of a module over the e-classes.
    Tor {
        /// Builtin module name or path to a JSON module spec.
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        j_max: usize,
        #[arg(long, default_value_t = 16)]
        deg_max: u32,
    },
    /// Run verification suites.
    Verify {
        /// Suite id, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        deg_max: Option<u32>,
    },
    /// Inspect or clean the result cache.
    Cache {
        #[arg(value_enum)]
        op: CacheOp,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn emit(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn with_schema(mut v: Value) -> Value {
    v["schema"] = json!(SCHEMA_VERSION);
    v
}

fn tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join("\t");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join("\t"));
        s.push('\n');
    }
    s
}

fn piece_row(p: &CohomologyPiece) -> Vec<String> {
    let kind = match p.kind {
        PieceKind::Kernel => "ker",
        PieceKind::Cokernel => "coker",
    };
    vec![p.d.to_string(), p.degree.to_string(), kind.into(), p.ambient().len().to_string(), p.rank().to_string(), p.dim().to_string()]
}

fn report_row(r: &Report) -> Vec<String> {
    vec![r.theorem.clone(), r.status().as_str().into(), r.details.len().to_string(), r.failures().len().to_string()]
}

/// Parameters that identify a request for caching; `None` for uncached commands.
fn cache_key(cli: &Cli) -> Option<(&'static str, Value)> {
    let f = match cli.format {
        Format::Json => "json",
        Format::Tsv => "tsv",
    };
    let (name, params) = match &cli.command {
        Command::Basis { deg, wt } => ("basis", json!({"deg": deg, "wt": wt})),
        Command::Count { deg, wt } => ("count", json!({"deg": deg, "wt": wt})),
        Command::Derive { expr, unbarred } => ("derive", json!({"expr": expr, "unbarred": unbarred})),
        Command::Cohom { d, variant, kind, deg, deg_max } => (
            "cohom",
            json!({"d": d, "variant": format!("{variant:?}"), "kind": format!("{kind:?}"), "deg": deg, "deg_max": deg_max}),
        ),
        Command::Tor { module, j_max, deg_max } => {
            // file contents, not the path, identify a spec file
            let src = std::fs::read_to_string(module).unwrap_or_else(|_| module.clone());
            ("tor", json!({"module": src, "j_max": j_max, "deg_max": deg_max}))
        }
        Command::Verify { suite, deg_max } => ("verify", json!({"suite": suite, "deg_max": deg_max})),
        Command::Cache { .. } => return None,
    };
    Some((name, json!({"format": f, "args": params})))
}

/// Runs one parsed command; the returned code is 0 or 1.
fn execute(cli: &Cli) -> Result<(i32, String)> {
    let fmt = cli.format;
    Ok(match &cli.command {
        Command::Basis { deg, wt } => {
            let t = basis(Bidegree::new(*deg, *wt));
            let out = match fmt {
                Format::Json => emit(&with_schema(basis_json(&t))),
                Format::Tsv => tsv(
                    &["index", "monomial"],
                    t.monomials().iter().enumerate().map(|(k, m)| vec![k.to_string(), m.to_string()]),
                ),
            };
            (0, out)
        }
        Command::Count { deg, wt } => {
            let b = Bidegree::new(*deg, *wt);
            let n = hilbert_count(b);
            let out = match fmt {
                Format::Json => emit(&with_schema(json!({"bidegree": bidegree_json(b), "count": n}))),
                Format::Tsv => tsv(&["degree", "weight", "count"], [vec![deg.to_string(), wt.to_string(), n.to_string()]]),
            };
            (0, out)
        }
        Command::Derive { expr, unbarred } => {
            let p = parse_expression(expr)?.eval()?;
            let dp = apply_d(&p);
            let result = if *unbarred { dp.to_unbarred_expr() } else { dp.to_expr() };
            let out = match fmt {
                Format::Json => emit(&with_schema(json!({
                    "input": expr,
                    "bidegree": p.bidegree().map(bidegree_json),
                    "polynomial": polynomial_json(&p),
                    "derivative": polynomial_json(&dp),
                    "result": result,
                }))),
                Format::Tsv => tsv(&["input", "result"], [vec![expr.clone(), result]]),
            };
            (0, out)
        }
        Command::Cohom { d, variant, kind, deg, deg_max } => {
            let degrees: Vec<u32> = match (deg, deg_max) {
                (Some(t), _) => vec![*t],
                (None, Some(mx)) => {
                    let want = match (variant, kind) {
                        (VariantArg::Covariant, KindArg::Coker) => (d + 1) % 2,
                        _ => d % 2,
                    };
                    (0..=*mx).filter(|t| t % 2 == want).collect()
                }
                (None, None) => unreachable!("clap requires one of --deg, --deg-max"),
            };
            let mut pieces = Vec::new();
            for t in degrees {
                let p = match (variant, kind) {
                    (VariantArg::Covariant, KindArg::Ker) => covariant_piece(PieceKind::Kernel, *d, t)?,
                    (VariantArg::Covariant, KindArg::Coker) => covariant_piece(PieceKind::Cokernel, *d, t)?,
                    (VariantArg::Contravariant, KindArg::Ker) => contra_pieces(*d, t)?.0,
                    (VariantArg::Contravariant, KindArg::Coker) => contra_pieces(*d, t)?.1,
                };
                pieces.push(p);
            }
            let out = match fmt {
                Format::Json => emit(&with_schema(json!({"pieces": pieces.iter().map(|p| p.to_json()).collect::<Vec<_>>()}))),
                Format::Tsv => tsv(&["d", "degree", "kind", "ambient", "rank", "dim"], pieces.iter().map(|p| piece_row(p))),
            };
            (0, out)
        }
        Command::Tor { module, j_max, deg_max } => {
            let pres = if std::path::Path::new(module).is_file() {
                parse_module_spec(&std::fs::read_to_string(module)?)?
            } else {
                builtin(module)?
            };
            let m = module_from_presentation(&pres, *deg_max)?;
            let t = tor_dims(&m, *j_max, *deg_max);
            let out = match fmt {
                Format::Json => emit(&with_schema(json!({
                    "module": module,
                    "dims": (0..=*deg_max).map(|k| m.dim(k)).collect::<Vec<_>>(),
                    "tor": t.to_json(),
                }))),
                Format::Tsv => t.to_tsv(),
            };
            (0, out)
        }
        Command::Verify { suite, deg_max } => {
            let ids: Vec<&str> = if suite == "all" { suite_ids() } else { vec![suite.as_str()] };
            let reports = ids.iter().map(|id| verify_theorem(id, *deg_max)).collect::<Result<Vec<_>>>()?;
            let failed = reports.iter().any(|r| r.status() == Status::Fail);
            let out = match fmt {
                Format::Json if reports.len() == 1 => emit(&with_schema(reports[0].to_json())),
                Format::Json => {
                    let status = if failed { "fail" } else { "pass" };
                    emit(&with_schema(json!({
                        "status": status,
                        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
                    })))
                }
                Format::Tsv => tsv(&["suite", "status", "checks", "failures"], reports.iter().map(report_row)),
            };
            (i32::from(failed), out)
        }
        Command::Cache { op } => {
            let dir = cli
                .cache_dir
                .clone()
                .ok_or_else(|| Error::Io(format!("no cache directory; pass --cache-dir or set {CACHE_ENV}")))?;
            let c = Cache::open(dir)?;
            let v = match op {
                CacheOp::Stat => {
                    let s = c.stat()?;
                    json!({"entries": s.entries, "bytes": s.bytes, "stale": s.stale})
                }
                CacheOp::Gc => json!({"removed": c.gc()?}),
                CacheOp::Clear => json!({"removed": c.clear()?}),
            };
            let out = match fmt {
                Format::Json => emit(&with_schema(v)),
                Format::Tsv => {
                    let obj = v.as_object().expect("object");
                    tsv(&["key", "value"], obj.iter().map(|(k, x)| vec![k.clone(), x.to_string()]))
                }
            };
            (0, out)
        }
    })
}

/// Parses `argv` (program name first) and runs it. Exit codes: 0 success,
/// 1 verification failure, 2 usage or input error.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let key = cache_key(&cli);
    let cache = match (&cli.cache_dir, &key) {
        (Some(dir), Some(_)) => match Cache::open(dir) {
            Ok(c) => Some(c),
            Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
        },
        _ => None,
    };
    let digest = key.as_ref().map(|(name, params)| request_digest(name, params));
    if let (Some(c), Some(dg)) = (&cache, &digest) {
        if let Some(hit) = c.get(dg) {
            return Outcome { code: 0, stdout: hit, stderr: String::new() };
        }
    }
    match execute(&cli) {
        Ok((code, stdout)) => {
            let mut stderr = String::new();
            // only successful results are cached
            if let (Some(c), Some(dg), 0) = (&cache, &digest, code) {
                if let Err(e) = c.put(dg, &stdout) {
                    stderr = format!("warning: cache write failed: {e}\n");
                }
            }
            Outcome { code, stdout, stderr }
        }
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// [`run_command`] with the program name prepended; returns code and stdout.
pub fn run_captured(args: &[&str]) -> (i32, String) {
    let o = run_command(std::iter::once("mmm").chain(args.iter().copied()));
    (o.code, o.stdout)
}

/// Names accepted by `tor --module` besides file paths.
pub fn module_names() -> &'static [&'static str] {
    builtin_names()
}

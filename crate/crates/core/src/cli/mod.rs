//! Command-line front end.
//!
//! Exit codes: 0 verified or success, 1 refuted, 2 usage or parse error,
//! 3 undecided within the budget.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::approx::{catalog, Side, Var};
use crate::exact::{parse_constant, Interval, PiExpr};
use crate::prover::{enclose_at, prove_claim, Claim, Expr, Status};
use crate::series::SeriesId;
use crate::suite::{self, Format, Params, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "trigcert", version, about = "Certified polynomial bounds for trigonometric functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Requested π precision, echoed in reports; exact signs refine π adaptively.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision_bits: u32,
    /// Subdivision depth budget.
    #[arg(long, global = true, env = "TRIGCERT_MAX_DEPTH", default_value_t = 40)]
    pub max_depth: u32,
    /// Smallest interval width the prover splits.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub min_width: f64,
    /// Grid size for sampled checks and tightness comparisons.
    #[arg(long, global = true, default_value_t = 1000)]
    pub grid_points: usize,
    /// Output format; the suite defaults to json, other commands to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact series coefficients.
    Coeffs {
        /// sinc, tan, cot, steckin_alpha (alpha), becker_stark_C (C), psi_product (psi) or psi_conjecture.
        series: String,
        /// Inclusive index range `a..b`, or a single index.
        range: String,
    },
    /// Named bounds as exact polynomials.
    Bounds {
        names: Vec<String>,
        /// Rewrite each bound in this variable (x or t).
        #[arg(long)]
        var: Option<char>,
        /// Also prove that each bound lies on its claimed side on its domain.
        #[arg(long)]
        verify: bool,
    },
    /// Decide a claim `<expr> < <expr> on (a,b) [in t]`.
    Prove {
        claim: String,
        /// Record the subdivision leaves in the certificate.
        #[arg(long)]
        leaves: bool,
    },
    /// Run verification cases.
    Suite {
        /// Comma-separated glob patterns over case ids.
        #[arg(long)]
        filter: Option<String>,
        /// Include wall-clock times per case.
        #[arg(long)]
        timings: bool,
    },
    /// Sample functions and bounds on a grid, as CSV.
    Grid {
        targets: Vec<String>,
        #[arg(long, default_value = "0")]
        from: String,
        #[arg(long, default_value = "pi/2")]
        to: String,
        /// Number of points, endpoints included.
        #[arg(short, long, default_value_t = 101)]
        n: usize,
        #[arg(long, default_value_t = 'x')]
        var: char,
    },
    /// Check the psi coefficient identity and the partial-sum brackets.
    Conjecture {
        /// Highest coefficient index compared exactly.
        #[arg(long, default_value_t = 40)]
        order: usize,
        /// A single bracket level; all of 1..=5 by default.
        #[arg(long)]
        level: Option<usize>,
    },
}

impl GlobalArgs {
    pub fn config(&self, default_format: Format) -> RunConfig {
        RunConfig {
            precision_bits: self.precision_bits,
            max_depth: self.max_depth,
            min_width: self.min_width,
            grid_points: self.grid_points,
            format: self.format.unwrap_or(default_format),
            output: self.output.clone(),
            timings: false,
        }
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, msg: msg.into() }
}

impl From<crate::prover::ProveError> for Failure {
    fn from(e: crate::prover::ProveError) -> Self {
        usage(e.to_string())
    }
}

impl From<crate::suite::SuiteError> for Failure {
    fn from(e: crate::suite::SuiteError) -> Self {
        usage(e.to_string())
    }
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Verified => EXIT_OK,
        Status::Refuted => EXIT_REFUTED,
        Status::Undecided => EXIT_UNDECIDED,
    }
}

fn parse_var(c: char) -> Result<Var, Failure> {
    Var::from_symbol(c).ok_or_else(|| usage(format!("unknown variable '{c}', expected x or t")))
}

fn constant(s: &str) -> Result<PiExpr, Failure> {
    parse_constant(s.trim()).map_err(|e| usage(format!("bad constant '{s}': {}", e.msg)))
}

/// Parses `<expr> < <expr> on (a,b)`, optionally followed by `in x` or `in t`.
pub fn parse_claim(s: &str) -> Result<Claim, String> {
    let err = |m: &str| format!("cannot parse claim '{s}': {m}");
    let (body, range) = s.rsplit_once(" on ").ok_or_else(|| err("missing ' on (a,b)'"))?;
    let (range, var) = match range.trim().rsplit_once(" in ") {
        Some((r, v)) => {
            let mut cs = v.trim().chars();
            let var = match (cs.next(), cs.next()) {
                (Some(c), None) => Var::from_symbol(c),
                _ => None,
            };
            (r.trim(), Some(var.ok_or_else(|| err("the variable must be x or t"))?))
        }
        None => (range.trim(), None),
    };
    let inner = range
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err("the interval must be written (a,b)"))?;
    let (lo, hi) = inner.split_once(',').ok_or_else(|| err("the interval needs two endpoints"))?;
    let lo = parse_constant(lo.trim()).map_err(|e| err(&e.msg))?;
    let hi = parse_constant(hi.trim()).map_err(|e| err(&e.msg))?;
    let mut sides = body.split('<');
    let (Some(l), Some(r), None) = (sides.next(), sides.next(), sides.next()) else {
        return Err(err("expected exactly one '<'"));
    };
    let dv = var.unwrap_or(Var::X);
    let lhs = Expr::parse(l, dv).map_err(|e| err(&e.to_string()))?;
    let rhs = Expr::parse(r, dv).map_err(|e| err(&e.to_string()))?;
    let claim = Claim::new(lhs, rhs, lo, hi);
    Ok(match var {
        Some(v) => claim.in_var(v),
        None => claim,
    })
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || usage(format!("bad index range '{s}', expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn json_string(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

fn cmd_coeffs(series: &str, range: &str, format: Format) -> Result<(String, i32), Failure> {
    let id: SeriesId = series.parse().map_err(usage)?;
    let (a, b) = parse_range(range)?;
    if a < id.first_index() {
        return Err(usage(format!("{id} starts at index {}", id.first_index())));
    }
    let rows: Vec<(usize, PiExpr, Interval)> = (a..=b)
        .map(|k| {
            let c = id.coeff(k);
            let iv = c.enclose();
            (k, c, iv)
        })
        .collect();
    let out = match format {
        Format::Text => rows.iter().map(|(k, c, iv)| format!("{k}\t{c}\t{iv}\n")).collect(),
        Format::Csv => {
            let mut table = vec![vec!["k".to_string(), "exact".into(), "lo".into(), "hi".into()]];
            table.extend(
                rows.iter().map(|(k, c, iv)| vec![k.to_string(), c.to_string(), iv.lo.to_string(), iv.hi.to_string()]),
            );
            csv_string(table)
        }
        Format::Json => json_string(&json!({
            "series": id,
            "coefficients": rows
                .iter()
                .map(|(k, c, iv)| json!({"k": k, "exact": c.to_string(), "enclosure": [iv.lo, iv.hi]}))
                .collect::<Vec<_>>(),
        })),
    };
    Ok((out, EXIT_OK))
}

fn cmd_bounds(names: &[String], var: Option<char>, verify: bool, cfg: &RunConfig) -> Result<(String, i32), Failure> {
    let var = var.map(parse_var).transpose()?;
    let mut status = Status::Verified;
    let mut items = Vec::new();
    for name in names {
        let mut b = catalog::named(name).map_err(|e| usage(e.to_string()))?;
        let proof = if verify {
            let f = Expr::function(b.target);
            let bound = Expr::Bound(b.clone());
            let (lhs, rhs) = if b.side == Side::Lower { (bound, f) } else { (f, bound) };
            let claim = Claim::new(lhs, rhs, b.domain.lo.clone(), b.domain.hi.clone()).in_var(b.var());
            let cert = prove_claim(&claim, &cfg.prove_options())?;
            status = status.and(cert.status);
            Some(cert)
        } else {
            None
        };
        if let Some(v) = var {
            b = b.in_var(v).map_err(|e| usage(e.to_string()))?;
        }
        items.push((b, proof));
    }
    let out = match cfg.format {
        Format::Text => items
            .iter()
            .map(|(b, p)| match p {
                Some(c) => format!("{b}\n    {}\n", c.status),
                None => format!("{b}\n"),
            })
            .collect(),
        Format::Csv => {
            let mut table =
                vec![["name", "target", "side", "var", "domain", "body", "status"].map(String::from).to_vec()];
            table.extend(items.iter().map(|(b, p)| {
                vec![
                    b.name.clone(),
                    b.target.to_string(),
                    b.side.to_string(),
                    b.var().to_string(),
                    b.domain.to_string(),
                    b.body.to_string(),
                    p.as_ref().map(|c| c.status.to_string()).unwrap_or_default(),
                ]
            }));
            csv_string(table)
        }
        Format::Json => {
            json_string(&items.iter().map(|(b, p)| json!({"bound": b, "certificate": p})).collect::<Vec<_>>())
        }
    };
    Ok((out, exit_code(status)))
}

fn cmd_prove(claim: &str, leaves: bool, cfg: &RunConfig) -> Result<(String, i32), Failure> {
    let claim = parse_claim(claim).map_err(usage)?;
    let mut opts = cfg.prove_options();
    opts.record_leaves = leaves;
    let cert = prove_claim(&claim, &opts)?;
    let out = match cfg.format {
        Format::Json => json_string(&cert),
        Format::Csv => csv_string(vec![
            ["claim", "status", "leaf_count", "max_depth", "witness"].map(String::from).to_vec(),
            vec![
                cert.claim.clone(),
                cert.status.to_string(),
                cert.leaf_count.to_string(),
                cert.max_depth.to_string(),
                cert.witness.as_ref().map(|w| w.point.to_string()).unwrap_or_default(),
            ],
        ]),
        Format::Text => {
            let mut s =
                format!("{}: {} ({} leaves, depth {})\n", cert.status, cert.claim, cert.leaf_count, cert.max_depth);
            for e in &cert.endpoints {
                let order = e.order.map_or("?".to_string(), |o| o.to_string());
                s += &format!("  endpoint {} ({}): order {order}, {}\n", e.at, e.side, e.status);
            }
            if let Some(w) = &cert.witness {
                s += &format!("  witness at {}: lhs in {}, rhs in {}\n", w.point, w.lhs, w.rhs);
            }
            s
        }
    };
    Ok((out, exit_code(cert.status)))
}

fn cmd_grid(
    targets: &[String],
    (from, to): (&str, &str),
    n: usize,
    var: char,
    warn: &mut dyn Write,
) -> Result<(String, i32), Failure> {
    if n < 2 {
        return Err(usage("a grid needs at least 2 points"));
    }
    let var = parse_var(var)?;
    let (a, b) = (constant(from)?.approx(), constant(to)?.approx());
    let exprs =
        targets.iter().map(|t| Expr::parse(t, var).map_err(|e| usage(e.to_string()))).collect::<Result<Vec<_>, _>>()?;
    let mut header = vec![var.to_string()];
    header.extend(targets.iter().cloned());
    let mut rows = vec![header];
    if !exprs.is_empty() {
        for i in 0..n {
            let w = a + (b - a) * i as f64 / (n - 1) as f64;
            let mut row = vec![w.to_string()];
            for (e, name) in exprs.iter().zip(targets) {
                row.push(match enclose_at(e, var, w) {
                    Ok(iv) => iv.mid().to_string(),
                    Err(err) => {
                        let _ = writeln!(warn, "warning: {name} at {var} = {w}: {err}");
                        "NaN".into()
                    }
                });
            }
            rows.push(row);
        }
    }
    Ok((csv_string(rows), EXIT_OK))
}

fn cmd_suite(filter: Option<&str>, timings: bool, cfg: &RunConfig) -> Result<(String, i32), Failure> {
    let cfg = RunConfig { timings, ..cfg.clone() };
    let report = suite::run_all(filter, &cfg)?;
    Ok((report.render(cfg.format), exit_code(report.status())))
}

fn cmd_conjecture(order: usize, level: Option<usize>, cfg: &RunConfig) -> Result<(String, i32), Failure> {
    if level == Some(0) {
        return Err(usage("levels start at 1"));
    }
    let a = suite::run_case("CONJ1a", &Params { big_m: Some(order), ..Params::default() }, cfg)?;
    let b = suite::run_case("CONJ1b", &Params { l: level, ..Params::default() }, cfg)?;
    let report = suite::SuiteReport::new(cfg, vec![a, b]);
    Ok((report.render(cfg.format), exit_code(report.status())))
}

/// Runs the command line `args` (program name first), writing results to
/// `out` (or the `--output` file) and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let default_format = if matches!(cli.command, Command::Suite { .. } | Command::Conjecture { .. }) {
        Format::Json
    } else {
        Format::Text
    };
    let cfg = cli.global.config(default_format);
    if let Err(m) = cfg.validate() {
        let _ = writeln!(err, "error: {m}");
        return EXIT_USAGE;
    }
    let result = match &cli.command {
        Command::Coeffs { series, range } => cmd_coeffs(series, range, cfg.format),
        Command::Bounds { names, var, verify } => cmd_bounds(names, *var, *verify, &cfg),
        Command::Prove { claim, leaves } => cmd_prove(claim, *leaves, &cfg),
        Command::Suite { filter, timings } => cmd_suite(filter.as_deref(), *timings, &cfg),
        Command::Grid { targets, from, to, n, var } => cmd_grid(targets, (from, to), *n, *var, err),
        Command::Conjecture { order, level } => cmd_conjecture(*order, *level, &cfg),
    };
    match result {
        Ok((text, code)) => {
            let written = match &cfg.output {
                Some(path) => std::fs::write(path, text),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

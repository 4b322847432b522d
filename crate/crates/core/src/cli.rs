//! Command-line front end.
//!
//! [`run`] takes an argument vector and returns the exit code together with
//! everything that would be printed, so the whole surface can be driven from
//! tests and examples without spawning a process. Exit codes:
//!
//! * `0`: the command ran and the answer is positive (accepted, found, bent);
//! * `1`: the command ran and the answer is negative (rejecting certificate,
//!   nothing found, not bent);
//! * `2`: the request could not be run (usage or parse error).
//!
//! With `--json` every outcome, including errors, is a single JSON object on
//! stdout conforming to `schema/report.schema.json`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bent::{is_bent_ds, walsh_oracle, BooleanFunction};
use crate::characters::psi_all;
use crate::designs::{
    verify, verify_generalized, Certificate, DesignParams, GeneralizedParams, Method,
};
use crate::error::Error;
use crate::group::GroupSpec;
use crate::ringpoly::Subset;
use crate::search::{export_system, search, Dedup, SearchConfig};

/// JSON schema for `--json` output.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Environment variable capping internal parallelism; `0` or unset means
/// one thread per core.
pub const THREADS_ENV: &str = "DIFFSET_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "diffset",
    version,
    about = "Verify, search and certify difference sets in finite abelian groups"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a set is a (v,k,lambda) difference set.
    Verify(VerifyArgs),
    /// Check a generalized difference set relative to a set M.
    VerifyGds(GdsArgs),
    /// Enumerate all difference sets with the given parameters.
    Search(SearchArgs),
    /// Print Psi at every character.
    Chars(CharsArgs),
    /// Export the defining polynomial system.
    Ideal(IdealArgs),
    /// Boolean-function tools.
    #[command(subcommand)]
    Bent(BentCommand),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Cyclic orders, e.g. `4,4`.
    #[arg(long)]
    pub group: String,
    /// Elements separated by `;`, e.g. `(0,1);(1,0)`.
    #[arg(long)]
    pub set: String,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub lambda: u64,
    #[arg(long, default_value = "all", value_parser = parse_method)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct GdsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
    #[arg(long = "m-set")]
    pub m_set: String,
    #[arg(long)]
    pub lambda1: u64,
    #[arg(long)]
    pub lambda2: u64,
    /// Defaults to the size of the set.
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, default_value = "all", value_parser = parse_method)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub lambda: u64,
    #[arg(long, default_value = "none", value_parser = parse_dedup)]
    pub dedup: Dedup,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CharsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
    /// Defaults to the size of the set.
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub lambda: u64,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub lambda: u64,
    /// Write the system here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BentCommand {
    /// Test a truth table for bentness.
    Check(BentCheckArgs),
    /// Print the inner-product function on 2m variables.
    Mm {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("table").required(true).args(["tt", "tt_file"])))]
pub struct BentCheckArgs {
    #[arg(long)]
    pub vars: usize,
    /// Truth table as `0`/`1` in rank order, or hex with a `0x` prefix.
    #[arg(long)]
    pub tt: Option<String>,
    /// File holding the truth table in either format.
    #[arg(long = "tt-file")]
    pub tt_file: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dedup(s: &str) -> Result<Dedup, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses a `;`-separated element list against an already parsed group.
pub fn parse_set(text: &str, g: &GroupSpec) -> crate::Result<Subset> {
    Subset::parse(text, g)
}

/// A failure that stops a command before it produces an answer.
struct Failure {
    flag: &'static str,
    error: String,
    position: Option<usize>,
}

fn fail(flag: &'static str) -> impl Fn(Error) -> Failure {
    move |e| Failure {
        flag,
        position: match &e {
            Error::Parse { pos, .. } => Some(*pos),
            _ => None,
        },
        error: e.to_string(),
    }
}

/// Text and JSON renderings of a completed command.
struct Report {
    verdict: bool,
    text: String,
    json: Value,
}

/// Runs one command line. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                };
            }
            let stdout = if wants_json {
                error_json("usage", &text, None)
            } else {
                String::new()
            };
            return Outcome {
                code: 2,
                stdout,
                stderr: text,
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: if report.verdict { 0 } else { 1 },
            stdout: if cli.json {
                let mut j = report.json;
                j["command"] = json!(name);
                j["verdict"] = json!(report.verdict);
                format!("{}\n", serde_json::to_string_pretty(&j).expect("serializable"))
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err(f) => {
            let message = format!("error: --{}: {}\n", f.flag, f.error);
            Outcome {
                code: 2,
                stdout: if cli.json {
                    error_json(name, &format!("--{}: {}", f.flag, f.error), f.position)
                } else {
                    String::new()
                },
                stderr: message,
            }
        }
    }
}

fn error_json(command: &str, message: &str, position: Option<usize>) -> String {
    let j = json!({
        "command": command,
        "verdict": null,
        "error": { "message": message.trim_end(), "position": position },
    });
    format!("{}\n", serde_json::to_string_pretty(&j).expect("serializable"))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify(_) => "verify",
        Command::VerifyGds(_) => "verify-gds",
        Command::Search(_) => "search",
        Command::Chars(_) => "chars",
        Command::Ideal(_) => "ideal",
        Command::Bent(BentCommand::Check(_)) => "bent-check",
        Command::Bent(BentCommand::Mm { .. }) => "bent-mm",
    }
}

fn execute(c: &Command) -> Result<Report, Failure> {
    match c {
        Command::Verify(a) => run_verify(a),
        Command::VerifyGds(a) => run_gds(a),
        Command::Search(a) => run_search(a),
        Command::Chars(a) => run_chars(a),
        Command::Ideal(a) => run_ideal(a),
        Command::Bent(BentCommand::Check(a)) => run_bent_check(a),
        Command::Bent(BentCommand::Mm { m }) => run_bent_mm(*m),
    }
}

fn group_arg(text: &str) -> Result<GroupSpec, Failure> {
    GroupSpec::parse(text).map_err(fail("group"))
}

fn certificate_text(d: &Subset, c: &Certificate, what: &str) -> String {
    let mut s = format!(
        "{}: {{{}}} {} {what} (method {})\n",
        if c.verdict { "accepted" } else { "rejected" },
        d,
        if c.verdict { "is a" } else { "is not a" },
        c.method
    );
    if let Some(w) = &c.witness {
        s.push_str(&format!("witness: {w}\n"));
    }
    for r in &c.runs {
        s.push_str(&format!(
            "  {:<17} {}\n",
            r.method.as_str(),
            if r.verdict { "accept" } else { "reject" }
        ));
    }
    s
}

fn run_verify(a: &VerifyArgs) -> Result<Report, Failure> {
    let g = group_arg(&a.group)?;
    let d = parse_set(&a.set, &g).map_err(fail("set"))?;
    let p = DesignParams::for_group(&g, a.k, a.lambda).map_err(fail("k"))?;
    let c = verify(&d, &p, a.method).map_err(fail("method"))?;
    Ok(Report {
        verdict: c.verdict,
        text: certificate_text(&d, &c, &format!("{p} difference set in {}", group_label(&g))),
        json: json!({ "group": g, "set": d.to_string(), "certificate": c }),
    })
}

fn run_gds(a: &GdsArgs) -> Result<Report, Failure> {
    let g = group_arg(&a.group)?;
    let d = parse_set(&a.set, &g).map_err(fail("set"))?;
    let m = parse_set(&a.m_set, &g).map_err(fail("m-set"))?;
    let gp = GeneralizedParams::new(m, a.lambda1, a.lambda2).map_err(fail("m-set"))?;
    let k = a.k.unwrap_or(d.len() as u64);
    let c = verify_generalized(&d, &gp, k, a.method).map_err(fail("k"))?;
    let what = format!(
        "({}, {}, {k}, {}, {}) generalized difference set relative to {{{}}}",
        g.order(),
        gp.m_set().len(),
        a.lambda1,
        a.lambda2,
        gp.m_set()
    );
    Ok(Report {
        verdict: c.verdict,
        text: certificate_text(&d, &c, &what),
        json: json!({ "group": g, "set": d.to_string(), "certificate": c }),
    })
}

fn run_search(a: &SearchArgs) -> Result<Report, Failure> {
    let g = group_arg(&a.group)?;
    let p = DesignParams::for_group(&g, a.k, a.lambda).map_err(fail("k"))?;
    let mut cfg = SearchConfig::new(p).dedup(a.dedup);
    if let Some(l) = a.limit {
        cfg = cfg.limit(usize::try_from(l).unwrap_or(usize::MAX));
    }
    let r = search(&g, &cfg).map_err(fail("k"))?;
    let mut text = String::new();
    if let Some(n) = &r.note {
        text.push_str(&format!("note: {n}\n"));
    }
    for s in &r.sets {
        text.push_str(&format!("{s}\n"));
    }
    text.push_str(&format!(
        "{} {p} difference set{} in {}{}\n",
        r.sets.len(),
        if r.sets.len() == 1 { "" } else { "s" },
        group_label(&g),
        if r.truncated { " (truncated by --limit)" } else { "" }
    ));
    Ok(Report {
        verdict: !r.sets.is_empty(),
        text,
        json: json!({
            "group": g,
            "params": p,
            "dedup": a.dedup,
            "count": r.sets.len(),
            "truncated": r.truncated,
            "note": r.note,
            "sets": r.sets.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        }),
    })
}

#[derive(Serialize)]
struct CharRow {
    character: Vec<usize>,
    roots: Vec<String>,
    value: String,
    approx: [f64; 2],
    is_zero: bool,
    float_is_zero: bool,
}

fn run_chars(a: &CharsArgs) -> Result<Report, Failure> {
    let g = group_arg(&a.group)?;
    let d = parse_set(&a.set, &g).map_err(fail("set"))?;
    let k = a.k.unwrap_or(d.len() as u64);
    let reports = psi_all(&d, k, a.lambda).map_err(fail("k"))?;
    let rows: Vec<CharRow> = reports
        .iter()
        .map(|r| CharRow {
            character: r.character.exps().to_vec(),
            roots: r.character.root_labels(),
            value: r.value.to_string(),
            approx: [clean(r.approx.re), clean(r.approx.im)],
            is_zero: r.is_zero,
            float_is_zero: r.float_is_zero,
        })
        .collect();
    let verdict = rows.iter().all(|r| r.is_zero);
    let mut text = format!(
        "{:<14} {:<20} {:<24} {:<24} zero\n",
        "character", "roots", "exact (z = e(1/m))", "float"
    );
    for r in &rows {
        let exps: Vec<String> = r.character.iter().map(|a| a.to_string()).collect();
        text.push_str(&format!(
            "{:<14} {:<20} {:<24} {:<24} {}\n",
            format!("({})", exps.join(",")),
            format!("({})", r.roots.join(",")),
            r.value,
            format!("{:.6}{:+.6}i", r.approx[0], r.approx[1]),
            if r.is_zero { "yes" } else { "no" }
        ));
    }
    text.push_str(&format!(
        "Psi vanishes at {} of {} characters (m = {})\n",
        rows.iter().filter(|r| r.is_zero).count(),
        rows.len(),
        g.exponent()
    ));
    Ok(Report {
        verdict,
        text,
        json: json!({
            "group": g,
            "set": d.to_string(),
            "k": k,
            "lambda": a.lambda,
            "modulus": g.exponent(),
            "characters": rows,
        }),
    })
}

/// Rounds away float noise like `-0.000000000001` for display.
fn clean(x: f64) -> f64 {
    if x.abs() < 1e-9 {
        0.0
    } else {
        x
    }
}

fn run_ideal(a: &IdealArgs) -> Result<Report, Failure> {
    let g = group_arg(&a.group)?;
    let p = DesignParams::for_group(&g, a.k, a.lambda).map_err(fail("k"))?;
    let sys = export_system(&g, &p).map_err(fail("k"))?;
    let rendered = sys.render();
    let (text, out) = match &a.out {
        Some(path) => {
            std::fs::write(path, &rendered).map_err(|e| Failure {
                flag: "out",
                error: format!("{}: {e}", path.display()),
                position: None,
            })?;
            (
                format!(
                    "wrote {} generators in {} variables to {}\n",
                    sys.generators.len(),
                    g.order(),
                    path.display()
                ),
                Some(path.display().to_string()),
            )
        }
        None => (rendered.clone(), None),
    };
    Ok(Report {
        verdict: true,
        text,
        json: json!({
            "group": g,
            "params": p,
            "generators": sys.generators.len(),
            "out": out,
            "system": if a.out.is_none() { Some(rendered) } else { None },
        }),
    })
}

fn run_bent_check(a: &BentCheckArgs) -> Result<Report, Failure> {
    let (flag, raw) = match (&a.tt, &a.tt_file) {
        (Some(tt), _) => ("tt", tt.clone()),
        (None, Some(path)) => (
            "tt-file",
            std::fs::read_to_string(path).map_err(|e| Failure {
                flag: "tt-file",
                error: format!("{}: {e}", path.display()),
                position: None,
            })?,
        ),
        (None, None) => unreachable!("clap requires one of --tt, --tt-file"),
    };
    let f = BooleanFunction::parse(a.vars, &raw).map_err(fail(flag))?;
    let r = is_bent_ds(&f).map_err(fail("vars"))?;
    let walsh = walsh_oracle(&f);
    let agreement = walsh.bent == r.bent;
    let mut text = format!(
        "{}: t = {}, |support| = {}",
        if r.bent { "bent" } else { "not bent" },
        r.vars,
        r.k
    );
    match (r.sign, r.lambda) {
        (Some(s), Some(l)) => text.push_str(&format!(
            ", target ({}, {}, {l}) [sign {s}]",
            1u64 << r.vars,
            r.k
        )),
        _ => text.push_str(", matches neither bent support size"),
    }
    text.push('\n');
    if r.outside_stated_range {
        text.push_str("note: t = 2 is outside the usual range of the characterization; Walsh oracle agrees\n");
    }
    if let Some(w) = r.certificate.as_ref().and_then(|c| c.witness.as_ref()) {
        text.push_str(&format!("witness: {w}\n"));
    }
    text.push_str(&format!(
        "walsh oracle: {} ({})\n",
        if walsh.bent { "bent" } else { "not bent" },
        if agreement { "agrees" } else { "DISAGREES" }
    ));
    Ok(Report {
        verdict: r.bent,
        text,
        json: json!({
            "vars": r.vars,
            "bent": r.bent,
            "k": r.k,
            "lambda": r.lambda,
            "sign": r.sign,
            "method_agreement": agreement,
            "outside_stated_range": r.outside_stated_range,
            "certificate": r.certificate,
        }),
    })
}

fn run_bent_mm(m: usize) -> Result<Report, Failure> {
    let f = BooleanFunction::inner_product(m).map_err(fail("m"))?;
    Ok(Report {
        verdict: true,
        text: format!("{f}\n"),
        json: json!({
            "m": m,
            "vars": f.vars(),
            "truth_table": f.to_bit_string(),
            "hex": f.to_hex(),
            "weight": f.weight(),
        }),
    })
}

fn group_label(g: &GroupSpec) -> String {
    g.orders()
        .iter()
        .map(|n| format!("Z{n}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Sizes the global thread pool from [`THREADS_ENV`]. Call once, before any
/// parallel work.
pub fn init_threads_from_env() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV} must be a nonnegative integer, got `{raw}`"))?;
    if n == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

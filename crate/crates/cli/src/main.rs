use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lba_core::constructions::{self, ConstructionError, ScalarExtension};
use lba_core::gf::factor_prime_power;
use lba_core::io::{self, AlgebraJson, IoError, IsotopismJson, SemifieldJson};
use lba_core::liealg::{Enumeration, LieAlgebra, LieError, DEFAULT_BUDGET};
use lba_core::semifield::{self, Semifield, SemifieldError};
use lba_core::suites::{self, SuiteError, SuiteParams, DEFAULT_SEED};
use lba_core::{FieldTower, Subspace};

#[derive(Parser)]
#[command(name = "lba", version, about = "Nilpotent Lie algebras and semifields over finite fields")]
struct Cli {
    /// Output format for reports
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for enumerations (results do not depend on it)
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Enumeration budget in coset representatives (default: $LBA_BUDGET or 78125)
    #[arg(long, global = true)]
    budget: Option<u128>,
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
    /// Build a named algebra and write it as JSON
    Construct(ConstructArgs),
    /// Report invariants of an algebra file
    Analyze(AnalyzeArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Build and inspect semifields
    #[command(subcommand)]
    Semifield(SemifieldCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Gm,
    Lm,
    U3,
    U5,
    V,
    LfDickson,
    LfField,
}

#[derive(Args)]
struct FieldArgs {
    /// Field order (a prime power)
    #[arg(long)]
    q: Option<u64>,
    /// Characteristic, with --s instead of --q
    #[arg(long)]
    p: Option<u64>,
    /// Degree over the prime field, with --p
    #[arg(long)]
    s: Option<u32>,
}

impl FieldArgs {
    fn order(&self) -> Result<u64> {
        match (self.q, self.p, self.s) {
            (Some(q), None, None) => Ok(q),
            (None, Some(p), Some(s)) => p.checked_pow(s).ok_or_else(|| anyhow!("p^s overflows")),
            (Some(q), Some(p), Some(s)) if p.checked_pow(s) == Some(q) => Ok(q),
            (Some(_), Some(_), Some(_)) => bail!("--q disagrees with --p/--s"),
            _ => bail!("give the field as --q Q or as --p P --s S"),
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[command(flatten)]
    field: FieldArgs,
    /// Extension degree m (for lf-field: the semifield dimension n)
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Defining polynomial of F_{q^m} over F_q, comma-separated coefficients
    /// (constant term first, elements of F_q by canonical index)
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u32>>,
    /// Frobenius power for lf-dickson
    #[arg(long, default_value_t = 1)]
    sigma: u32,
    /// Nonsquare for lf-dickson (canonical index; default: first nonsquare)
    #[arg(long)]
    k: Option<u32>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long)]
    breadth: bool,
    #[arg(long)]
    series: bool,
    #[arg(long)]
    fingerprint: bool,
}

#[derive(Args)]
struct VerifyArgs {
    suite: String,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Record wall-clock time in the report (makes output non-reproducible)
    #[arg(long)]
    timing: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SemifieldCommand {
    /// Dickson's commutative semifield over F_q (stored over the prime field)
    Dickson {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        sigma: u32,
        #[arg(long)]
        k: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// F_{q^n} as an n-dimensional algebra over F_q
    Field {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover a presemifield from an algebra file
    Extract {
        file: PathBuf,
        /// How to choose the two abelian ideals
        #[arg(long, value_enum, default_value_t = Stars::Centralizers)]
        stars: Stars,
        /// Replace the result by an isotopic semifield with identity
        #[arg(long)]
        normalize: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Middle nucleus of a semifield file
    Mid { file: PathBuf },
    /// Check an isotopism between two semifield files
    IsotopyCheck { from: PathBuf, to: PathBuf, isotopism: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stars {
    /// Centralizers of the first two suitable coset representatives
    Centralizers,
    /// Coordinate blocks A+C and B+C of a 3n-dimensional basis
    Blocks,
}

/// A check ran and its verdict was negative.
#[derive(Debug)]
struct Failed;

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Failed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Failed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("lba: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn is_budget(e: &LieError) -> bool {
    matches!(e, LieError::BudgetExceeded { .. })
}

fn semifield_budget(e: &SemifieldError) -> bool {
    matches!(e, SemifieldError::Lie(l) if is_budget(l))
}

fn construction_budget(e: &ConstructionError) -> bool {
    match e {
        ConstructionError::Lie(l) => is_budget(l),
        ConstructionError::Semifield(s) => semifield_budget(s),
        _ => false,
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        let budget = cause.downcast_ref::<LieError>().is_some_and(is_budget)
            || cause.downcast_ref::<SemifieldError>().is_some_and(semifield_budget)
            || cause.downcast_ref::<ConstructionError>().is_some_and(construction_budget)
            || matches!(cause.downcast_ref::<SuiteError>(), Some(SuiteError::Construction(c)) if construction_budget(c))
            || matches!(cause.downcast_ref::<SuiteError>(), Some(SuiteError::Semifield(s)) if semifield_budget(s))
            || matches!(cause.downcast_ref::<IoError>(), Some(IoError::Lie(l)) if is_budget(l))
            || matches!(cause.downcast_ref::<IoError>(), Some(IoError::Semifield(s)) if semifield_budget(s));
        if budget {
            return 3;
        }
    }
    2
}

impl Cli {
    fn enumeration(&self) -> Result<Enumeration> {
        let budget = match (self.budget, std::env::var("LBA_BUDGET")) {
            (Some(b), _) => b,
            (None, Ok(s)) => s.trim().parse().context("LBA_BUDGET must be a nonnegative integer")?,
            (None, Err(_)) => DEFAULT_BUDGET,
        };
        Ok(Enumeration::default().with_budget(budget).with_workers(self.workers))
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Analyze(a) => analyze(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Semifield(s) => semifield_cmd(cli, s),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn construct(a: &ConstructArgs) -> Result<()> {
    let q = a.field.order()?;
    let algebra = match a.kind {
        Kind::LfDickson => {
            let d = semifield::dickson(&FieldTower::for_order(q)?, a.sigma, a.k)?;
            semifield::lie_of(d.semifield().pre())
        }
        Kind::LfField => {
            let sf = semifield::field_semifield(&FieldTower::for_order(q)?, a.m)?;
            semifield::lie_of(sf.pre())
        }
        kind => {
            let ext = ScalarExtension::with_poly(q, a.m, a.poly.clone())?;
            match kind {
                Kind::Gm => constructions::gm_direct(&ext)?,
                Kind::Lm => constructions::lm_matrix_algebra(&ext)?,
                Kind::U3 => constructions::u_n_restricted(3, &ext)?,
                Kind::U5 => constructions::u_n_restricted(5, &ext)?,
                Kind::V => constructions::v_presentation(&ext)?.0,
                Kind::LfDickson | Kind::LfField => unreachable!(),
            }
        }
    };
    emit(a.output.as_deref(), &io::to_json_string(&io::algebra_to_json(&algebra)))
}

fn read_algebra(path: &Path) -> Result<LieAlgebra> {
    let j: AlgebraJson = io::read_json(path).with_context(|| format!("reading {}", path.display()))?;
    io::algebra_from_json(&j).with_context(|| format!("loading {}", path.display()))
}

fn analyze(cli: &Cli, a: &AnalyzeArgs) -> Result<()> {
    let l = read_algebra(&a.file)?;
    let opts = cli.enumeration()?;
    let series_wanted = a.series || !(a.breadth || a.fingerprint);
    let mut out = json!({ "dim": l.dim(), "q": l.field().size() });
    if series_wanted {
        out["series"] = serde_json::to_value(l.series())?;
    }
    if a.breadth {
        out["breadth"] = serde_json::to_value(l.breadth_report(&opts)?)?;
    }
    if a.fingerprint {
        out["fingerprint"] = serde_json::to_value(l.fingerprint(&opts)?)?;
    }
    let text = match cli.format {
        Format::Json => io::to_json_string(&out),
        Format::Text => text_summary(&out),
    };
    emit(None, &text)
}

/// Flattens a JSON object into `key: value` lines.
fn text_summary(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<()> {
    let q = a.field.order()?;
    factor_prime_power(q)?;
    let opts = cli.enumeration()?;
    let params = SuiteParams { q, m: a.m, seed: a.seed, budget: opts.budget, workers: opts.workers };
    let mut report = suites::run_suite(&a.suite, &params)?;
    if !a.timing {
        report.elapsed_ms = 0;
    }
    let text = match cli.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => {
            let mut s = format!("suite {} (q = {}, m = {}, seed = {})\n", report.suite, q, a.m, a.seed);
            for c in &report.checks {
                let status = serde_json::to_value(c.status)?;
                s.push_str(&format!("{:<8} {}  [{}]\n", status.as_str().unwrap_or("?"), c.name, c.details));
            }
            s.push_str(if report.passed() { "overall: pass\n" } else { "overall: fail\n" });
            s
        }
    };
    emit(a.output.as_deref(), &text)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failed.into())
    }
}

fn read_semifield(path: &Path) -> Result<(semifield::PreSemifield, Option<Vec<u32>>)> {
    let j: SemifieldJson = io::read_json(path).with_context(|| format!("reading {}", path.display()))?;
    io::semifield_from_json(&j).with_context(|| format!("loading {}", path.display()))
}

fn semifield_cmd(cli: &Cli, cmd: &SemifieldCommand) -> Result<()> {
    let opts = cli.enumeration()?;
    match cmd {
        SemifieldCommand::Dickson { field, sigma, k, output } => {
            let d = semifield::dickson(&FieldTower::for_order(field.order()?)?, *sigma, *k)?;
            let sf = d.semifield();
            emit(output.as_deref(), &io::to_json_string(&io::semifield_to_json(sf.pre(), Some(sf.identity()))))
        }
        SemifieldCommand::Field { field, n, output } => {
            let sf = semifield::field_semifield(&FieldTower::for_order(field.order()?)?, *n)?;
            emit(output.as_deref(), &io::to_json_string(&io::semifield_to_json(sf.pre(), Some(sf.identity()))))
        }
        SemifieldCommand::Extract { file, stars, normalize, output } => {
            let l = read_algebra(file)?;
            let pre = match stars {
                Stars::Centralizers => suites::semifield_from_centralizers(&l, &opts)?.0,
                Stars::Blocks => {
                    if l.dim() % 3 != 0 {
                        bail!("block ideals need dimension 3n, got {}", l.dim());
                    }
                    let n = l.dim() / 3;
                    let a = Subspace::coordinate(l.field(), 3 * n, (0..n).chain(2 * n..3 * n));
                    let b = Subspace::coordinate(l.field(), 3 * n, (n..3 * n).collect::<Vec<_>>());
                    semifield::extract(&l, &a, &b, &opts)?
                }
            };
            let j = if *normalize {
                let (sf, _) = semifield::normalize_to_semifield(&pre)?;
                io::semifield_to_json(sf.pre(), Some(sf.identity()))
            } else {
                io::semifield_to_json(&pre, semifield::find_identity(&pre).as_deref())
            };
            emit(output.as_deref(), &io::to_json_string(&j))
        }
        SemifieldCommand::Mid { file } => {
            let (pre, _) = read_semifield(file)?;
            let sf = Semifield::from_pre(pre)
                .map_err(|_| anyhow!("the semifield has no identity; extract with --normalize first"))?;
            let mid = semifield::middle_nucleus(&sf)?;
            let basis: Vec<Vec<io::Coords>> = mid
                .subspace
                .basis_vectors()
                .iter()
                .map(|v| v.iter().map(|&x| io::encode(sf.pre().field(), x)).collect())
                .collect();
            let out = json!({
                "size": mid.size,
                "dim": mid.subspace.dim(),
                "is_field": mid.is_field,
                "basis": basis,
            });
            let text = match cli.format {
                Format::Json => io::to_json_string(&out),
                Format::Text => text_summary(&out),
            };
            emit(None, &text)
        }
        SemifieldCommand::IsotopyCheck { from, to, isotopism } => {
            let (f1, _) = read_semifield(from)?;
            let (f2, _) = read_semifield(to)?;
            let j: IsotopismJson = io::read_json(isotopism)?;
            let (_, iso) = io::isotopism_from_json(&j)?;
            let valid = semifield::verify_isotopism(&f1, &f2, &iso);
            let lie = semifield::block_map_preserves_brackets(&f1, &f2, &iso);
            let out = json!({ "isotopism_valid": valid, "lie_isomorphism_verified": lie });
            let text = match cli.format {
                Format::Json => io::to_json_string(&out),
                Format::Text => text_summary(&out),
            };
            emit(None, &text)?;
            if valid && lie {
                Ok(())
            } else {
                Err(Failed.into())
            }
        }
    }
}

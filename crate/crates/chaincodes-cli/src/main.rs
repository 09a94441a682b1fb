//! `chaincodes`: cyclotomic cosets, chain rings and cyclic codes from the command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource bound.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use chaincodes::arith::{gcd, mult_order};
use chaincodes::catalog::{self, CodeReport, OutputFormat, DEFAULT_MAX_ENUM};
use chaincodes::codes::{self, CodeContext, CyclicCode};
use chaincodes::cyclotomic::CycContext;
use chaincodes::linalg::DEFAULT_MAX_WEIGHT_ENUM;
use chaincodes::ring::Family;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] chaincodes::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_resource_bound() => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    #[value(name = "gr", alias = "galois-ring")]
    Gr,
    #[value(name = "ec", alias = "equal-characteristic")]
    Ec,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Gr => Family::GaloisRing,
            FamilyArg::Ec => Family::EqualCharacteristic,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
    Markdown,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => OutputFormat::Table,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Markdown => OutputFormat::Markdown,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "chaincodes", version, about = "Cyclic codes over finite chain rings")]
struct Cli {
    /// Residue characteristic of the base ring.
    #[arg(long, global = true, default_value_t = 2)]
    p: u64,
    /// Residue field degree: the residue field has q = p^n elements.
    #[arg(long, global = true, default_value_t = 1)]
    n: u32,
    /// Nilpotency index of the maximal ideal.
    #[arg(long, global = true, default_value_t = 2)]
    s: u32,
    /// Ring family: Galois rings or truncated polynomial rings over F_q.
    #[arg(long, global = true, value_enum, default_value_t = FamilyArg::Gr)]
    family: FamilyArg,
    /// Code length, coprime to q.
    #[arg(long, global = true, default_value_t = 7)]
    length: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Largest catalog that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ENUM)]
    max_enum: u64,
    /// Largest number of words a minimum-weight search may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WEIGHT_ENUM)]
    max_weight_enum: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the q-cyclotomic cosets modulo the length.
    Cosets {
        /// Multiplier; defaults to p^n.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Describe the base ring and its extension containing a root of unity of order length.
    RingInfo,
    /// Report on one code given by its partition.
    Info {
        #[arg(long)]
        partition: String,
        /// Also compute the minimum Hamming weight.
        #[arg(long)]
        min_weight: bool,
    },
    /// Sum, intersection or dual of codes given by partitions.
    Algebra {
        #[arg(value_enum)]
        op: AlgebraOp,
        partitions: Vec<String>,
    },
    /// Report on every cyclic code of the given length.
    Enumerate {
        #[arg(long)]
        with_weights: bool,
    },
    /// Compare the catalog with reference data and check the lattice identities.
    Verify {
        /// Reference CSV; defaults to the bundled catalog of Z_4-codes of length 7.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Only check the lattice identities.
        #[arg(long)]
        identities_only: bool,
        /// Number of seeded random duality checks.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Report on the MDS family over the Galois ring of invariants (2^degree, s).
    Mds {
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// List the self-dual codes.
    Selfdual,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraOp {
    Sum,
    Meet,
    Dual,
}

/// Result of a command: its output and whether every check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Cosets { q } => cosets(cli, *q).map(Outcome::ok),
        Command::RingInfo => ring_info(cli).map(Outcome::ok),
        Command::Info { partition, min_weight } => info(cli, partition, *min_weight).map(Outcome::ok),
        Command::Algebra { op, partitions } => algebra(cli, *op, partitions).map(Outcome::ok),
        Command::Enumerate { with_weights } => enumerate(cli, *with_weights).map(Outcome::ok),
        Command::Verify { golden, identities_only, samples } => {
            verify(cli, golden.as_deref(), *identities_only, *samples)
        }
        Command::Mds { degree } => mds(cli, *degree).map(Outcome::ok),
        Command::Selfdual => selfdual(cli).map(Outcome::ok),
    }
}

fn context(cli: &Cli) -> CliResult<Arc<CodeContext>> {
    let q = cli.p.checked_pow(cli.n).ok_or_else(|| CliError::Usage("p^n overflows".into()))?;
    if gcd(cli.length as u64, q) != 1 {
        return Err(CliError::Usage(format!("length {} is not coprime to q = {q}", cli.length)));
    }
    Ok(CodeContext::new(cli.p, cli.n, cli.s, cli.family.into(), cli.length)?)
}

fn json_text(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("values serialize") + "\n"
}

fn render_rows(format: FormatArg, header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    Ok(match format {
        FormatArg::Table => catalog::render_table(header, rows),
        FormatArg::Markdown => catalog::render_markdown(header, rows),
        FormatArg::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| CliError::Usage(e.to_string());
            w.write_record(header).map_err(err)?;
            for r in rows {
                w.write_record(r).map_err(err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?).expect("utf-8")
        }
        FormatArg::Json => {
            let objects: Vec<serde_json::Map<String, serde_json::Value>> =
                rows.iter().map(|r| header.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect()).collect();
            json_text(&objects)
        }
    })
}

fn fmt_set(members: &[usize]) -> String {
    let parts: Vec<String> = members.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn cosets(cli: &Cli, q: Option<u64>) -> CliResult<String> {
    let q = match q {
        Some(q) => q,
        None => cli.p.checked_pow(cli.n).ok_or_else(|| CliError::Usage("p^n overflows".into()))?,
    };
    if q < 2 || cli.length == 0 || gcd(cli.length as u64, q) != 1 {
        return Err(CliError::Usage(format!("length {} is not coprime to q = {q}", cli.length)));
    }
    let ctx = CycContext::new(cli.length, q, cli.s)?;
    let order = mult_order(q, cli.length as u64);
    if let FormatArg::Json = cli.format {
        let cosets: Vec<_> = ctx
            .cosets()
            .iter()
            .enumerate()
            .map(|(i, c)| json!({"rep": c[0], "size": c.len(), "members": c, "opposite": ctx.cosets()[ctx.opposite_index(i)][0]}))
            .collect();
        return Ok(json_text(&json!({"q": q, "length": cli.length, "order": order, "cosets": cosets})));
    }
    let header = ["rep", "size", "members", "opposite"];
    let rows: Vec<Vec<String>> = ctx
        .cosets()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![c[0].to_string(), c.len().to_string(), fmt_set(c), ctx.cosets()[ctx.opposite_index(i)][0].to_string()]
        })
        .collect();
    let mut out = String::new();
    if let FormatArg::Table | FormatArg::Markdown = cli.format {
        let _ = writeln!(out, "q = {q}, length = {}, ord = {order}, cosets = {}", cli.length, ctx.coset_count());
    }
    out += &render_rows(cli.format, &header, &rows)?;
    Ok(out)
}

fn ring_info(cli: &Cli) -> CliResult<String> {
    let ctx = context(cli)?;
    let ring = ctx.ring();
    let fields = vec![
        ("p", ring.p().to_string()),
        ("n", ring.n().to_string()),
        ("s", ring.s().to_string()),
        ("m", ring.m().to_string()),
        ("family", ring.family().to_string()),
        ("modulus", format!("{:?}", ring.modulus())),
        ("q", ring.q().to_string()),
        ("extension_q", ring.q_ext().to_string()),
        ("base_size", ring.q().pow(ring.s()).to_string()),
        ("extension_size", ring.size().to_string()),
        ("theta", ring.format(ring.theta())),
        ("xi", ring.format(ring.xi())),
        ("eta", ring.format(ctx.eta())),
        ("length", ctx.ell().to_string()),
    ];
    if let FormatArg::Json = cli.format {
        let mut obj = serde_json::Map::new();
        obj.insert("descriptor".into(), serde_json::to_value(ring.descriptor()).expect("serializes"));
        for (k, v) in fields {
            obj.insert(k.into(), json!(v));
        }
        return Ok(json_text(&obj));
    }
    let rows: Vec<Vec<String>> = fields.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
    render_rows(cli.format, &["field", "value"], &rows)
}

fn label_of(ctx: &CodeContext, code: &CyclicCode) -> Option<String> {
    catalog::labels_for(ctx).get(&code.partition().to_string()).cloned()
}

fn code_report(cli: &Cli, ctx: &CodeContext, code: &CyclicCode, weight: bool) -> CliResult<CodeReport> {
    Ok(catalog::report(code, label_of(ctx, code), weight.then_some(cli.max_weight_enum))?)
}

fn info(cli: &Cli, partition: &str, min_weight: bool) -> CliResult<String> {
    let ctx = context(cli)?;
    let code = ctx.code_from_str(partition)?;
    let report = code_report(cli, &ctx, &code, min_weight)?;
    let mut out = catalog::render_reports(&[report], cli.format.into())?;
    if let FormatArg::Table = cli.format {
        for (t, set) in code.partition().sets().iter().enumerate() {
            let _ = writeln!(out, "A_{t} = {set}");
        }
        let _ = writeln!(out, "zero set = {}", code.zero_set());
    }
    Ok(out)
}

fn algebra(cli: &Cli, op: AlgebraOp, partitions: &[String]) -> CliResult<String> {
    let arity = match op {
        AlgebraOp::Dual => 1,
        AlgebraOp::Sum | AlgebraOp::Meet => 2,
    };
    if partitions.len() != arity {
        return Err(CliError::Usage(
            format!("{op:?} takes {arity} partition(s), got {}", partitions.len()).to_lowercase(),
        ));
    }
    let ctx = context(cli)?;
    let codes: Vec<CyclicCode> = partitions.iter().map(|p| ctx.code_from_str(p)).collect::<Result<_, _>>()?;
    let result = match op {
        AlgebraOp::Sum => codes[0].sum(&codes[1])?,
        AlgebraOp::Meet => codes[0].meet(&codes[1])?,
        AlgebraOp::Dual => codes[0].dual(),
    };
    let report = code_report(cli, &ctx, &result, false)?;
    let mut out = String::new();
    if let FormatArg::Table = cli.format {
        let _ = writeln!(out, "result = {}", result.partition());
    }
    out += &catalog::render_reports(&[report], cli.format.into())?;
    Ok(out)
}

fn enumerate(cli: &Cli, with_weights: bool) -> CliResult<String> {
    let ctx = context(cli)?;
    let reports = catalog::enumerate_all(&ctx, cli.max_enum, with_weights.then_some(cli.max_weight_enum))?;
    Ok(catalog::render_reports(&reports, cli.format.into())?)
}

fn verify(cli: &Cli, golden: Option<&std::path::Path>, identities_only: bool, samples: usize) -> CliResult<Outcome> {
    let ctx = context(cli)?;
    let mut out = String::new();
    let mut passed = true;
    let mut line = |ok: bool, text: String| {
        passed &= ok;
        let _ = writeln!(out, "{} {text}", if ok { "PASS" } else { "FAIL" });
    };
    let table1 = catalog::is_table1_context(&ctx);
    if !identities_only {
        let text = match golden {
            Some(path) => {
                std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?
            }
            None if table1 => catalog::bundled_table1().to_string(),
            None => return Err(CliError::Usage("no bundled reference for these parameters; pass --golden".into())),
        };
        let rows = catalog::parse_golden(&text)?;
        let reports = catalog::enumerate_all(&ctx, cli.max_enum, None)?;
        let outcome = catalog::verify_against(&ctx, &reports, &rows)?;
        line(outcome.passed(), format!("catalog: {}/{} rows match", outcome.matched, outcome.total));
        for d in &outcome.diffs {
            line(false, d.clone());
        }
    }
    if table1 {
        for id in catalog::table1_identities(&ctx)? {
            line(
                id.holds(),
                format!("{} (partitions: {}, codewords: {})", id.name, id.partition_level, id.codeword_level),
            );
        }
    } else if identities_only {
        return Err(CliError::Usage("the identities refer to Z_4 codes of length 7".into()));
    }
    if samples > 0 {
        let checks = catalog::random_duality_checks(&ctx, samples, cli.seed, cli.max_weight_enum)?;
        let agree = checks.iter().filter(|c| c.agrees).count();
        line(agree == checks.len(), format!("duality: {agree}/{} seeded partitions (seed {})", checks.len(), cli.seed));
        for c in checks.iter().filter(|c| !c.agrees) {
            line(false, format!("duality [{}]", c.partition));
        }
    }
    Ok(Outcome { text: out, passed })
}

fn mds(cli: &Cli, degree: u32) -> CliResult<String> {
    let r = codes::mds_family(degree, cli.s, cli.family.into(), cli.max_weight_enum)?;
    if let FormatArg::Json = cli.format {
        return Ok(json_text(&r));
    }
    let rows = vec![
        vec!["q".into(), r.q.to_string()],
        vec!["s".into(), r.s.to_string()],
        vec!["length".into(), r.ell.to_string()],
        vec!["d".into(), r.d.to_string()],
        vec!["A".into(), fmt_set(&r.defining_set)],
        vec!["dual set".into(), fmt_set(&r.dual_set)],
        vec!["dual set = A + {0}".into(), r.dual_set_is_defining_plus_zero.to_string()],
        vec!["L(A)^perp = L(dual set)".into(), r.dual_relation_holds.to_string()],
        vec!["rank".into(), r.rank.to_string()],
        vec!["min weight".into(), r.min_weight.to_string()],
        vec!["singleton bound".into(), r.singleton_bound.to_string()],
        vec!["mds".into(), r.mds.to_string()],
        vec!["self-orthogonal".into(), r.self_orthogonal.to_string()],
        vec!["<1,1> coefficients".into(), format!("{:?}", r.all_ones_inner_product)],
        vec!["L(A) rank".into(), r.dual_code.rank.to_string()],
        vec!["L(A) min weight".into(), r.dual_code.min_weight.to_string()],
        vec!["L(A) mds".into(), r.dual_code.mds.to_string()],
        vec!["L(A) self-orthogonal".into(), r.dual_code.self_orthogonal.to_string()],
    ];
    render_rows(cli.format, &["field", "value"], &rows)
}

fn selfdual(cli: &Cli) -> CliResult<String> {
    let ctx = context(cli)?;
    let reports = ctx
        .self_dual_partitions()
        .into_iter()
        .map(|p| code_report(cli, &ctx, &ctx.code(p)?, false))
        .collect::<CliResult<Vec<_>>>()?;
    let mut out = catalog::render_reports(&reports, cli.format.into())?;
    if let FormatArg::Table = cli.format {
        match ctx.self_dual_construction() {
            Some(p) => {
                let _ = writeln!(out, "construction: {p}");
            }
            None => {
                let _ = writeln!(out, "construction: none (odd s or every coset is its own opposite)");
            }
        }
    }
    Ok(out)
}

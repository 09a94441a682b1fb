//! Code reports, full catalogs, bundled reference data and output rendering.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{CodeContext, CyclicCode};
use crate::cyclotomic::CycPartition;
use crate::error::{Error, Result};
use crate::linalg::{self, RMatrix};
use crate::ring::Family;

/// Default bound on the number of codes in a catalog.
pub const DEFAULT_MAX_ENUM: u64 = 1 << 16;

const TABLE1: &str = include_str!("../data/table1_z4_len7.csv");

/// The bundled reference catalog of cyclic `Z_4`-codes of length 7.
pub fn bundled_table1() -> &'static str {
    TABLE1
}

/// Computed attributes of one cyclic code.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CodeReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub partition: String,
    #[serde(rename = "type")]
    pub type_vector: Vec<usize>,
    pub rank: usize,
    pub cardinality: String,
    #[serde(skip)]
    pub q: u64,
    #[serde(skip)]
    pub exponent: u64,
    pub bch_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_weight: Option<usize>,
    pub self_dual: bool,
    pub self_orthogonal: bool,
    pub free: bool,
}

impl CodeReport {
    /// Cardinality as `q^e`.
    pub fn cardinality_power(&self) -> String {
        format!("{}^{}", self.q, self.exponent)
    }
}

/// Builds the report of a code; `weight_limit` enables the minimum-weight search.
pub fn report(code: &CyclicCode, label: Option<String>, weight_limit: Option<u64>) -> Result<CodeReport> {
    let min_weight = weight_limit.map(|l| code.min_weight(l)).transpose()?;
    Ok(CodeReport {
        label,
        partition: code.partition().to_string(),
        type_vector: code.type_vector(),
        rank: code.rank(),
        cardinality: code.cardinality().to_string(),
        q: code.context().q(),
        exponent: code.cardinality_exponent(),
        bch_bound: code.bch_bound(),
        min_weight,
        self_dual: code.is_self_dual(),
        self_orthogonal: code.is_self_orthogonal(),
        free: code.is_free(),
    })
}

/// Whether `ctx` is the context of the bundled reference catalog.
pub fn is_table1_context(ctx: &CodeContext) -> bool {
    let r = ctx.ring();
    r.p() == 2 && r.n() == 1 && r.s() == 2 && r.family() == Family::GaloisRing && ctx.ell() == 7
}

/// Display labels keyed by partition string, when `ctx` matches the bundled data.
pub fn labels_for(ctx: &CodeContext) -> HashMap<String, String> {
    if !is_table1_context(ctx) {
        return HashMap::new();
    }
    parse_golden(TABLE1).expect("bundled data parses").into_iter().map(|r| (r.partition, r.label)).collect()
}

/// Reports for all `(s+1)^{#cosets}` codes, sorted by partition string.
pub fn enumerate_all(ctx: &Arc<CodeContext>, max_enum: u64, weight_limit: Option<u64>) -> Result<Vec<CodeReport>> {
    let count = ctx.cyc().partition_count();
    match count {
        Some(c) if c <= max_enum => {}
        _ => {
            let total = BigUint::from(ctx.s() + 1).pow(ctx.cyc().coset_count() as u32);
            return Err(Error::EnumerationBound { count: total.to_string(), limit: max_enum });
        }
    }
    let labels = labels_for(ctx);
    let partitions: Vec<CycPartition> = CycPartition::all(ctx.cyc()).collect();
    let mut reports = partitions
        .into_par_iter()
        .map(|p| {
            let label = labels.get(&p.to_string()).cloned();
            report(&ctx.code(p)?, label, weight_limit)
        })
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.partition.cmp(&b.partition));
    Ok(reports)
}

/// One row of a reference catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub label: String,
    pub partition: String,
    pub bch_bound: usize,
    pub type_vector: Vec<usize>,
    pub cardinality: BigUint,
    pub erratum: Option<String>,
}

fn parse_type(text: &str) -> Result<Vec<usize>> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|t| usize::from_str(t.trim()).map_err(|_| Error::Golden(format!("bad type '{text}'"))))
        .collect()
}

fn parse_cardinality(text: &str) -> Result<BigUint> {
    let bad = || Error::Golden(format!("bad cardinality '{text}'"));
    match text.trim().split_once('^') {
        Some((b, e)) => {
            let b = BigUint::from_str(b.trim()).map_err(|_| bad())?;
            let e = u32::from_str(e.trim()).map_err(|_| bad())?;
            Ok(b.pow(e))
        }
        None => BigUint::from_str(text.trim()).map_err(|_| bad()),
    }
}

/// Parses reference CSV (`label,partition,bch_bound,type,cardinality[,erratum]`,
/// `#` comments allowed). Cardinalities may be decimal or `b^e`.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenRow>> {
    let mut reader =
        csv::ReaderBuilder::new().comment(Some(b'#')).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Golden(e.to_string()))?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Golden(format!("missing column '{name}'")))
    };
    let (c_label, c_part, c_bch, c_type, c_card) =
        (col("label")?, col("partition")?, col("bch_bound")?, col("type")?, col("cardinality")?);
    let c_err = headers.iter().position(|h| h == "erratum");
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Golden(e.to_string()))?;
        let field = |c: usize| rec.get(c).ok_or_else(|| Error::Golden(format!("row {}: too few fields", i + 1)));
        rows.push(GoldenRow {
            label: field(c_label)?.to_string(),
            partition: field(c_part)?.to_string(),
            bch_bound: usize::from_str(field(c_bch)?)
                .map_err(|_| Error::Golden(format!("row {}: bad bch_bound", i + 1)))?,
            type_vector: parse_type(field(c_type)?)?,
            cardinality: parse_cardinality(field(c_card)?)?,
            erratum: c_err.and_then(|c| rec.get(c)).filter(|e| !e.is_empty()).map(str::to_string),
        });
    }
    Ok(rows)
}

/// Result of diffing a computed catalog against reference rows.
#[derive(Clone, Debug, Default)]
pub struct VerifyOutcome {
    pub total: usize,
    pub matched: usize,
    pub diffs: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

/// Compares type, cardinality and BCH bound row by row (keyed by partition).
pub fn verify_against(ctx: &CodeContext, reports: &[CodeReport], golden: &[GoldenRow]) -> Result<VerifyOutcome> {
    let mut out = VerifyOutcome { total: golden.len(), ..Default::default() };
    let by_part: HashMap<String, &CodeReport> = reports.iter().map(|r| (r.partition.clone(), r)).collect();
    let mut seen = HashSet::new();
    for row in golden {
        // normalise the key so omitted representatives and ordering do not matter
        let key = CycPartition::parse(ctx.cyc(), &row.partition)?.to_string();
        seen.insert(key.clone());
        let Some(rep) = by_part.get(&key) else {
            out.diffs.push(format!("{} [{}]: no such code", row.label, row.partition));
            continue;
        };
        let mut problems = Vec::new();
        if rep.type_vector != row.type_vector {
            problems.push(format!("type {:?} != {:?}", rep.type_vector, row.type_vector));
        }
        if BigUint::from_str(&rep.cardinality).ok() != Some(row.cardinality.clone()) {
            problems.push(format!("cardinality {} != {}", rep.cardinality, row.cardinality));
        }
        if rep.bch_bound != row.bch_bound {
            problems.push(format!("bch_bound {} != {}", rep.bch_bound, row.bch_bound));
        }
        if problems.is_empty() {
            out.matched += 1;
        } else {
            out.diffs.push(format!("{} [{}]: {}", row.label, key, problems.join("; ")));
        }
    }
    for rep in reports {
        if !seen.contains(&rep.partition) {
            out.diffs.push(format!("[{}]: computed code missing from reference", rep.partition));
        }
    }
    Ok(out)
}

/// One lattice identity among the reference codes.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub partition_level: bool,
    pub codeword_level: bool,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.partition_level && self.codeword_level
    }
}

enum Op {
    Sum,
    Meet,
    Dual,
}

/// Checks the identities `C_8 + C_12 = C_15`, `C_19 + C_12 = C_20`,
/// `C_8^⊥ = C_19`, `C_12^⊥ = C_12` and `C_8 ∩ C_12 = C_6`, both on partitions
/// and on enumerated codeword sets.
pub fn table1_identities(ctx: &Arc<CodeContext>) -> Result<Vec<IdentityCheck>> {
    if !is_table1_context(ctx) {
        return Err(Error::InvalidParameter("identities refer to Z_4 codes of length 7".into()));
    }
    let by_label: HashMap<String, String> = parse_golden(TABLE1)?.into_iter().map(|r| (r.label, r.partition)).collect();
    let code = |label: &str| ctx.code_from_str(&by_label[label]);
    let cases = [
        ("C_8 + C_12 = C_15", Op::Sum, "C_8", "C_12", "C_15"),
        ("C_19 + C_12 = C_20", Op::Sum, "C_19", "C_12", "C_20"),
        ("C_8^⊥ = C_19", Op::Dual, "C_8", "", "C_19"),
        ("C_12^⊥ = C_12", Op::Dual, "C_12", "", "C_12"),
        ("C_8 ∩ C_12 = C_6", Op::Meet, "C_8", "C_12", "C_6"),
    ];
    const LIMIT: u64 = 1 << 14;
    let words = |g: &RMatrix| linalg::enumerate_span(g, LIMIT);
    let mut out = Vec::new();
    for (name, op, a, b, target) in cases {
        let a = code(a)?;
        let target = code(target)?;
        let target_words = words(target.generator())?;
        let (partition_level, codeword_level) = match op {
            Op::Sum => {
                let b = code(b)?;
                (
                    a.sum(&b)?.partition() == target.partition(),
                    words(&a.generator().stack(b.generator())?)? == target_words,
                )
            }
            Op::Meet => {
                let b = code(b)?;
                let wa = words(a.generator())?;
                let wb = words(b.generator())?;
                let inter: HashSet<Vec<u32>> = wa.intersection(&wb).cloned().collect();
                (a.meet(&b)?.partition() == target.partition(), inter == target_words)
            }
            Op::Dual => {
                (a.dual().partition() == target.partition(), words(&linalg::kernel(a.generator()))? == target_words)
            }
        };
        out.push(IdentityCheck { name: name.to_string(), partition_level, codeword_level });
    }
    Ok(out)
}

/// Outcome of one seeded duality spot check.
#[derive(Clone, Debug, Serialize)]
pub struct DualitySample {
    pub partition: String,
    pub agrees: bool,
}

/// For `samples` seeded random partitions, compares the codeword set of the
/// partition dual with the span of the kernel of the generator matrix.
pub fn random_duality_checks(
    ctx: &Arc<CodeContext>,
    samples: usize,
    seed: u64,
    limit: u64,
) -> Result<Vec<DualitySample>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let levels = (0..ctx.cyc().coset_count()).map(|_| rng.gen_range(0..=ctx.s())).collect();
        let code = ctx.code(CycPartition::new(ctx.cyc(), levels)?)?;
        let by_partition = linalg::enumerate_span(code.dual().generator(), limit)?;
        let by_kernel = linalg::enumerate_span(&linalg::kernel(code.generator()), limit)?;
        out.push(DualitySample { partition: code.partition().to_string(), agrees: by_partition == by_kernel });
    }
    Ok(out)
}

/// Output styles shared by the command-line tools.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            other => Err(Error::InvalidParameter(format!("unknown format '{other}'"))),
        }
    }
}

pub const CSV_COLUMNS: [&str; 9] =
    ["partition", "type", "rank", "cardinality", "bch_bound", "min_weight", "self_dual", "self_orthogonal", "free"];

fn fmt_type(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn text_rows(reports: &[CodeReport]) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let header =
        vec!["label", "partition", "type", "rank", "cardinality", "bch", "min_wt", "self_dual", "self_orth", "free"];
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.label.clone().unwrap_or_default(),
                r.partition.clone(),
                fmt_type(&r.type_vector),
                r.rank.to_string(),
                format!("{} = {}", r.cardinality_power(), r.cardinality),
                r.bch_bound.to_string(),
                r.min_weight.map(|w| w.to_string()).unwrap_or_else(|| "-".into()),
                r.self_dual.to_string(),
                r.self_orthogonal.to_string(),
                r.free.to_string(),
            ]
        })
        .collect();
    (header, rows)
}

/// Renders reports in the requested format.
pub fn render_reports(reports: &[CodeReport], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            Ok(serde_json::to_string_pretty(reports).map_err(|e| Error::InvalidParameter(e.to_string()))? + "\n")
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::InvalidParameter(e.to_string());
            w.write_record(CSV_COLUMNS).map_err(io)?;
            for r in reports {
                w.write_record([
                    r.partition.clone(),
                    fmt_type(&r.type_vector),
                    r.rank.to_string(),
                    r.cardinality.clone(),
                    r.bch_bound.to_string(),
                    r.min_weight.map(|w| w.to_string()).unwrap_or_default(),
                    r.self_dual.to_string(),
                    r.self_orthogonal.to_string(),
                    r.free.to_string(),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        OutputFormat::Table => {
            let (header, rows) = text_rows(reports);
            Ok(render_table(&header, &rows))
        }
        OutputFormat::Markdown => {
            let (header, rows) = text_rows(reports);
            Ok(render_markdown(&header, &rows))
        }
    }
}

/// Left-aligned plain-text table.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&mut out, header.to_vec());
    for row in rows {
        line(&mut out, row.iter().map(String::as_str).collect());
    }
    out
}

pub fn render_markdown(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    out
}

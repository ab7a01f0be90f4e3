//! Command-line front end: decide pairs, sweep catalogs of pairs, tabulate
//! the quadratic case, and inspect the companion codes and sequences.
//!
//! Exit codes encode the verdict: 0 for a standard pair, 10 for a
//! non-standard pair, 2 for any error. Catalogs are JSON lines, one entry
//! per pair, emitted in a deterministic order so that reruns diff cleanly.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use nslrs::code::CyclicCode;
use nslrs::context::PairContext;
use nslrs::nonstd::{self, classify, liftext, FamilyTag, Method, PairReport, SearchBudget};
use nslrs::qlin::QLinearMap;
use nslrs::{lrs, num, poly};

#[derive(Parser)]
#[command(name = "nslrs", version, about = "Linear maps fixing a roots-of-unity group")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct BudgetArgs {
    /// node budget for the pruned search
    #[arg(long, value_name = "N")]
    budget_nodes: Option<u64>,
    /// wall-clock budget for the pruned search, in seconds
    #[arg(long, value_name = "S")]
    budget_seconds: Option<f64>,
    /// weight bound for harvested parity checks (default m + 2)
    #[arg(long, value_name = "W")]
    wmax: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(n) = self.budget_nodes {
            b.max_nodes = n;
        }
        if let Some(s) = self.budget_seconds {
            b.max_seconds = s;
        }
        b.parity_weight_bound = self.wmax;
        b
    }
}

#[derive(Args)]
struct OutputArgs {
    /// machine-readable JSON instead of the human summary
    #[arg(long)]
    json: bool,
    /// write to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the full group of one pair and report the verdict
    Check {
        n: u64,
        q: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide every coprime pair with q and n up to the bounds; JSON lines
    Sweep {
        q_max: u64,
        n_max: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the quadratic pairs for fields up to q_max against the
    /// predicted verdicts
    ClassifyM2 {
        q_max: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the trace code of a pair: generator, parity check, weights
    Code {
        n: u64,
        q: u64,
        /// emit the weight table as CSV
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate a map along the powers of the canonical root and dump the
    /// resulting sequence
    Seq {
        n: u64,
        q: u64,
        /// JSON file with {"coeffs": [...]}
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify that supplied maps fix the root group and report the order of
    /// the group they generate together with the standard maps
    Certify {
        n: u64,
        q: u64,
        /// JSON file with {"maps": [[...], ...]} or a single {"coeffs": [...]}
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide a pair, then transport its group to the coprime-degree field
    /// extension (n, q^t)
    Lift {
        n: u64,
        q: u64,
        t: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide a pair, then extend the length to (n·f, q) for a divisor f of
    /// (q-1)/e
    Extend {
        n: u64,
        q: u64,
        f: u64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// One catalog line: the pair report plus provenance of the run.
#[derive(Debug, Serialize, Deserialize)]
struct CatalogEntry {
    timestamp: u64,
    version: String,
    budget: SearchBudget,
    #[serde(flatten)]
    report: PairReport,
}

impl CatalogEntry {
    fn new(report: PairReport, budget: &SearchBudget) -> CatalogEntry {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        CatalogEntry {
            timestamp,
            version: env!("CARGO_PKG_VERSION").to_string(),
            budget: *budget,
            report,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    init_threads()?;
    match cli.cmd {
        Cmd::Check { n, q, budget, output } => cmd_check(n, q, &budget.budget(), &output),
        Cmd::Sweep { q_max, n_max, budget, output } => {
            cmd_sweep(q_max, n_max, &budget.budget(), &output)
        }
        Cmd::ClassifyM2 { q_max, budget, output } => {
            cmd_classify_m2(q_max, &budget.budget(), &output)
        }
        Cmd::Code { n, q, csv, output } => cmd_code(n, q, csv, &output),
        Cmd::Seq { n, q, map, output } => cmd_seq(n, q, &map, &output),
        Cmd::Certify { n, q, map, output } => cmd_certify(n, q, &map, &output),
        Cmd::Lift { n, q, t, budget, output } => cmd_lift(n, q, t, &budget.budget(), &output),
        Cmd::Extend { n, q, f, budget, output } => cmd_extend(n, q, f, &budget.budget(), &output),
    }
}

/// NSLRS_THREADS caps the worker pool for sweeps and searches.
fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("NSLRS_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&k| k > 0)
        .with_context(|| format!("NSLRS_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("worker pool already initialized")?;
    Ok(())
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match out {
        Some(path) => {
            let file = fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            Ok(Box::new(std::io::BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn verdict_code(report: &PairReport) -> u8 {
    if report.nonstandard {
        10
    } else {
        0
    }
}

fn family_label(family: &FamilyTag) -> String {
    match family {
        FamilyTag::Golay23_2 => "GOLAY23_2".into(),
        FamilyTag::Golay11_3 => "GOLAY11_3".into(),
        FamilyTag::Repetition => "REPETITION".into(),
        FamilyTag::Simplex => "SIMPLEX".into(),
        FamilyTag::EquallySpaced { k, n_0 } => format!("EQUALLY_SPACED(k={k}, n_0={n_0})"),
        FamilyTag::LiftExtend { base_n, base_q, t, f } => {
            format!("LIFT_EXTEND(base=({base_n},{base_q}), t={t}, f={f})")
        }
        FamilyTag::NoneKnown => "NONE_KNOWN".into(),
    }
}

fn method_label(method: Method) -> &'static str {
    match method {
        Method::FullEnumeration => "full_enumeration",
        Method::PrunedSearch => "pruned_search",
        Method::Certified => "certified",
    }
}

fn write_report(w: &mut dyn Write, report: &PairReport, json: bool) -> Result<()> {
    if json {
        writeln!(w, "{}", serde_json::to_string(report)?)?;
        return Ok(());
    }
    writeln!(w, "pair ({}, {})  m={}  d={}", report.n, report.q, report.m, report.d)?;
    let verdict = if report.nonstandard { "nonstandard" } else { "standard" };
    writeln!(
        w,
        "order {}  standard {}  verdict {}",
        report.order, report.standard_order, verdict
    )?;
    writeln!(
        w,
        "family {}  method {}",
        family_label(&report.family),
        method_label(report.method)
    )?;
    writeln!(w, "nodes {}  seconds {:.3}", report.stats.nodes, report.stats.seconds)?;
    for g in &report.generators {
        writeln!(w, "generator {g}")?;
    }
    if report.prediction_mismatch {
        writeln!(w, "MISMATCH: recognized family but no extra maps found")?;
    }
    Ok(())
}

fn cmd_check(n: u64, q: u64, budget: &SearchBudget, output: &OutputArgs) -> Result<u8> {
    let dec = nonstd::decide(n, q, budget)?;
    let mut w = sink(&output.out)?;
    write_report(&mut w, &dec.report, output.json)?;
    w.flush()?;
    Ok(verdict_code(&dec.report))
}

/// All coprime pairs of the sweep rectangle: q over prime powers ascending,
/// then n ascending.
fn sweep_pairs(q_max: u64, n_max: u64) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for q in 2..=q_max.max(1) {
        if num::as_prime_power(q).is_none() {
            continue;
        }
        for n in 1..=n_max {
            if num::gcd(n, q) == 1 {
                pairs.push((n, q));
            }
        }
    }
    pairs
}

fn cmd_sweep(q_max: u64, n_max: u64, budget: &SearchBudget, output: &OutputArgs) -> Result<u8> {
    use rayon::prelude::*;
    let pairs = sweep_pairs(q_max, n_max);
    let decisions: Vec<nslrs::Result<nonstd::Decision>> = pairs
        .par_iter()
        .map(|&(n, q)| nonstd::decide(n, q, budget))
        .collect();
    let mut w = sink(&output.out)?;
    for ((n, q), dec) in pairs.into_iter().zip(decisions) {
        let dec = dec.with_context(|| format!("pair ({n}, {q})"))?;
        let entry = CatalogEntry::new(dec.report, budget);
        writeln!(w, "{}", serde_json::to_string(&entry)?)?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_classify_m2(q_max: u64, budget: &SearchBudget, output: &OutputArgs) -> Result<u8> {
    let rows = classify::classify_m2(q_max, budget)?;
    let mut w = sink(&output.out)?;
    if output.json {
        for row in &rows {
            writeln!(w, "{}", serde_json::to_string(row)?)?;
        }
        w.flush()?;
        return Ok(0);
    }
    writeln!(w, "{:>4} {:>6} {:>20} {:>20}  agree", "q", "n", "predicted", "computed")?;
    let mut mismatches = 0usize;
    for row in &rows {
        let predicted = format!(
            "{} {}",
            if row.predicted_nonstandard { "nonstandard" } else { "standard" },
            row.predicted_order
        );
        let computed = format!(
            "{} {}",
            if row.report.nonstandard { "nonstandard" } else { "standard" },
            row.report.order
        );
        let agree = if row.agree {
            "yes"
        } else {
            mismatches += 1;
            "MISMATCH"
        };
        writeln!(w, "{:>4} {:>6} {:>20} {:>20}  {}", row.q, row.n, predicted, computed, agree)?;
    }
    writeln!(w, "{} rows, {} mismatches", rows.len(), mismatches)?;
    w.flush()?;
    Ok(0)
}

fn cmd_code(n: u64, q: u64, csv: bool, output: &OutputArgs) -> Result<u8> {
    let pc = PairContext::new(n, q)?;
    let code = CyclicCode::from_pair(&pc)?;
    let dual = code.dual()?;
    let weights = match code.weight_distribution() {
        Ok(dist) => Some(dist),
        Err(nslrs::Error::TooLarge(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut w = sink(&output.out)?;
    if csv {
        let dist = weights.context("weight table too large for CSV export")?;
        writeln!(w, "weight,count")?;
        for (wt, count) in dist.iter().enumerate() {
            writeln!(w, "{wt},{count}")?;
        }
        w.flush()?;
        return Ok(0);
    }
    if output.json {
        let obj = serde_json::json!({
            "n": code.n,
            "q": code.q(),
            "dimension": code.dimension,
            "generator": code.generator.to_json(),
            "parity_check": code.parity_check.to_json(),
            "dual_generator": dual.generator.to_json(),
            "weight_distribution": weights,
        });
        writeln!(w, "{obj}")?;
        w.flush()?;
        return Ok(0);
    }
    writeln!(w, "code ({}, {})  dimension {}", code.n, code.q(), code.dimension)?;
    writeln!(w, "generator      {}", code.generator.to_json())?;
    writeln!(w, "parity check   {}", code.parity_check.to_json())?;
    writeln!(w, "dual generator {}", dual.generator.to_json())?;
    match weights {
        Some(dist) => {
            writeln!(w, "weight  count")?;
            for (wt, count) in dist.iter().enumerate() {
                if *count > 0 {
                    writeln!(w, "{wt:>6}  {count}")?;
                }
            }
        }
        None => writeln!(w, "weight table omitted: too many words")?,
    }
    w.flush()?;
    Ok(0)
}

/// A single map from {"coeffs": [...]}; elements are prime-field residues or
/// coordinate lists, matching the "generators" encoding of reports.
fn parse_map(pc: &PairContext, v: &serde_json::Value) -> Result<QLinearMap> {
    let arr = match v {
        serde_json::Value::Object(obj) => obj
            .get("coeffs")
            .and_then(|c| c.as_array())
            .context("map object needs a \"coeffs\" array")?,
        serde_json::Value::Array(a) => a,
        _ => bail!("map must be an object with \"coeffs\" or a coefficient array"),
    };
    let mut coeffs = Vec::with_capacity(arr.len());
    for item in arr {
        coeffs.push(poly::element_from_json(&pc.top, item)?);
    }
    Ok(QLinearMap::new(&pc.top, pc.pp.s, coeffs)?)
}

fn read_maps_file(pc: &PairContext, path: &PathBuf) -> Result<Vec<QLinearMap>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("{} is not valid JSON", path.display()))?;
    if let Some(list) = v.get("maps").and_then(|m| m.as_array()) {
        return list.iter().map(|mv| parse_map(pc, mv)).collect();
    }
    Ok(vec![parse_map(pc, &v)?])
}

fn cmd_seq(n: u64, q: u64, map_path: &PathBuf, output: &OutputArgs) -> Result<u8> {
    let pc = PairContext::new(n, q)?;
    let maps = read_maps_file(&pc, map_path)?;
    let [map] = maps.as_slice() else {
        bail!("seq needs exactly one map");
    };
    let seq = lrs::seq_from_map(map, &pc.unity, pc.n as usize);
    let stays = seq.iter().all(|&u| pc.unity.contains(u));
    let cyclic = lrs::is_geometric(&pc.top, &seq);
    let mut seen = seq.clone();
    seen.sort_unstable();
    seen.dedup();
    let represents = stays && seen.len() == pc.n as usize;
    let mut w = sink(&output.out)?;
    if output.json {
        let obj = serde_json::json!({
            "n": pc.n,
            "q": pc.q,
            "coeffs": map.coeffs_json(),
            "sequence": seq.iter().map(|&u| poly::element_to_json(&pc.top, u)).collect::<Vec<_>>(),
            "stays_in_group": stays,
            "cyclic": cyclic,
            "represents": represents,
        });
        writeln!(w, "{obj}")?;
        w.flush()?;
        return Ok(0);
    }
    writeln!(w, "sequence of map {} on pair ({}, {})", map.coeffs_json(), pc.n, pc.q)?;
    for (t, u) in seq.iter().enumerate() {
        writeln!(w, "{t:>4}  {}", poly::element_to_json(&pc.top, *u))?;
    }
    writeln!(w, "stays_in_group {stays}  cyclic {cyclic}  represents {represents}")?;
    w.flush()?;
    Ok(0)
}

fn cmd_certify(n: u64, q: u64, map_path: &PathBuf, output: &OutputArgs) -> Result<u8> {
    let pc = PairContext::new(n, q)?;
    let maps = read_maps_file(&pc, map_path)?;
    let dec = nonstd::certify(n, q, &maps)?;
    let mut w = sink(&output.out)?;
    write_report(&mut w, &dec.report, output.json)?;
    w.flush()?;
    Ok(verdict_code(&dec.report))
}

fn cmd_lift(n: u64, q: u64, t: u64, budget: &SearchBudget, output: &OutputArgs) -> Result<u8> {
    let dec = nonstd::decide(n, q, budget)?;
    let lifted = liftext::lift(&dec, t)?;
    let mut w = sink(&output.out)?;
    write_report(&mut w, &lifted.report, output.json)?;
    w.flush()?;
    Ok(verdict_code(&lifted.report))
}

fn cmd_extend(n: u64, q: u64, f: u64, budget: &SearchBudget, output: &OutputArgs) -> Result<u8> {
    let dec = nonstd::decide(n, q, budget)?;
    let extended = liftext::extend(&dec, f)?;
    let mut w = sink(&output.out)?;
    write_report(&mut w, &extended.report, output.json)?;
    w.flush()?;
    Ok(verdict_code(&extended.report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entry_round_trips() {
        let dec = nonstd::decide(8, 3, &SearchBudget::default()).unwrap();
        let entry = CatalogEntry::new(dec.report, &SearchBudget::default());
        let line = serde_json::to_string(&entry).unwrap();
        let back: CatalogEntry = serde_json::from_str(&line).unwrap();
        assert_eq!(back.report.n, 8);
        assert_eq!(back.report.order, 48);
        assert_eq!(back.version, env!("CARGO_PKG_VERSION"));
        assert_eq!(back.budget.max_nodes, SearchBudget::default().max_nodes);
        assert_eq!(serde_json::to_string(&back).unwrap(), line);
    }

    #[test]
    fn sweep_pairs_are_sorted_and_coprime() {
        let pairs = sweep_pairs(4, 10);
        assert!(pairs.windows(2).all(|w| (w[0].1, w[0].0) < (w[1].1, w[1].0)));
        assert!(pairs.iter().all(|&(n, q)| num::gcd(n, q) == 1));
        assert!(pairs.contains(&(7, 2)));
        assert!(pairs.contains(&(9, 2)));
        assert!(!pairs.iter().any(|&(_, q)| q == 6));
        assert!(sweep_pairs(1, 10).is_empty());
    }

    #[test]
    fn map_files_accept_both_shapes() {
        let pc = PairContext::new(7, 2).unwrap();
        let single: serde_json::Value = serde_json::json!({"coeffs": [[1], [0], [0]]});
        let map = parse_map(&pc, &single).unwrap();
        assert_eq!(map.coeffs(), &[1, 0, 0]);
        let bare: serde_json::Value = serde_json::json!([1, 0, 0]);
        assert!(parse_map(&pc, &bare).is_err());
        let prime_pc = PairContext::new(4, 3).unwrap();
        let nested = serde_json::json!({"coeffs": [[0, 1], [2]]});
        assert!(parse_map(&prime_pc, &nested).is_ok());
    }

    #[test]
    fn family_labels_are_stable() {
        assert_eq!(family_label(&FamilyTag::Simplex), "SIMPLEX");
        assert_eq!(
            family_label(&FamilyTag::EquallySpaced { k: 2, n_0: 4 }),
            "EQUALLY_SPACED(k=2, n_0=4)"
        );
        assert_eq!(method_label(Method::PrunedSearch), "pruned_search");
    }
}

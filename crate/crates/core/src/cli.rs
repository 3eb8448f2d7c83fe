//! Command-line front end: enumeration, single-step dynamics, orbit
//! census, verification suites, and table emission.
//!
//! Everything funnels through [`run`], which takes the argument list and an
//! output writer so the whole surface is drivable in-process from tests.
//! Exit codes: 0 success, 1 verification failure or dynamics runaway,
//! 2 usage error. Output is byte-deterministic for fixed inputs and flags.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use crate::dynamics::{
    all_orbits, is_swap_closed, orbit_size_table, orbit_size_via_deflation, promote,
    promote_inverse, promotion_orbit, promotion_order, sliding_subposet, swap, OrderMode,
    SlideDirection,
};
use crate::error::{Error, Result};
use crate::labeling::{enumerate_inc, enumerate_packed, sample_inc, IncLabeling};
use crate::mesy::{
    census, classify_z4_orbit, global_average, is_homomesic, orbit_average,
    z4_exterior_sum_closed_form, z4_interior_sum_closed_form, CensusReport, Rat, Statistic,
};
use crate::poset::{parse_fence_word, Poset};

#[derive(Parser)]
#[command(
    name = "orbitmesy",
    about = "Promotion dynamics and exact orbit statistics on increasing poset labelings",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and optionally list) the increasing labelings of a poset.
    Enumerate(EnumerateArgs),
    /// Apply promotion steps to a labeling (negative steps invert).
    Promote(PromoteArgs),
    /// Print the promotion orbit of a labeling.
    Orbit(OrbitArgs),
    /// Print the order of promotion, brute-force and by formula.
    Order(OrderArgs),
    /// Emit the symbolic orbit-size table of a fence as CSV.
    Table(TableArgs),
    /// Tabulate every promotion orbit with statistic averages.
    Census(CensusArgs),
    /// Run a named verification suite and exit nonzero on failure.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Poset spec: zigzag:N, chain:N, fence:WORD, or file:PATH.
    #[arg(long)]
    poset: String,
    /// Label bound; labelings use labels in 1..=q.
    #[arg(long, conflicts_with = "packed")]
    q: Option<u32>,
    /// Enumerate packed labelings over all label counts instead.
    #[arg(long)]
    packed: bool,
    /// Print the labelings, not only the count.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct PromoteArgs {
    /// Labeling: shorthand "1,6,2,4@q=6" (needs --poset), inline JSON, or
    /// file:PATH of a JSON labeling.
    #[arg(long)]
    labeling: String,
    /// Poset spec for shorthand labelings.
    #[arg(long)]
    poset: Option<String>,
    /// Number of promotion steps; negative applies inverse promotion.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    steps: i64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    labeling: String,
    #[arg(long)]
    poset: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long)]
    poset: String,
    #[arg(long)]
    q: u32,
    /// brute, formula, or both (both asserts agreement).
    #[arg(long, default_value = "both")]
    mode: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    poset: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    poset: String,
    #[arg(long)]
    q: u32,
    /// Comma list of statistics: ae, ai, tot. Default: ae,ai,tot on
    /// self-dual posets, tot otherwise.
    #[arg(long)]
    stats: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for per-orbit processing (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; `all` runs every suite.
    #[arg(value_enum)]
    suite: Suite,
    /// Inclusive label-bound range "A..B" overriding the suite default.
    #[arg(long, value_parser = parse_q_range)]
    q_range: Option<(u32, u32)>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(name = "thm-3.13")]
    OrbitSizeFormula,
    #[value(name = "cor-4.1")]
    OrderZigzag3,
    #[value(name = "cor-4.2")]
    OrderZigzag4,
    #[value(name = "cor-4.3")]
    OrderZigzag5,
    #[value(name = "prop-5.5")]
    SwapBattery,
    #[value(name = "thm-5.12")]
    SwapClosedOrbits,
    #[value(name = "lem-6.1")]
    GlobalAverages,
    #[value(name = "thm-7.6")]
    Classification,
    #[value(name = "cor-7.10")]
    TotalHomomesy,
    All,
}

/// Entry point shared by the binary and the in-process tests. Writes all
/// output (including error messages) to `out` and returns the exit code.
pub fn run<I, T, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = write!(out, "{}", err.render());
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(out, "error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NonReturn { .. }
        | Error::Closure
        | Error::NotHomomesic
        | Error::Symmetry { .. }
        | Error::Counterexample(_) => 1,
        _ => 2,
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<i32> {
    match command {
        Command::Enumerate(args) => cmd_enumerate(args, out),
        Command::Promote(args) => cmd_promote(args, out),
        Command::Orbit(args) => cmd_orbit(args, out),
        Command::Order(args) => cmd_order(args, out),
        Command::Table(args) => cmd_table(args, out),
        Command::Census(args) => cmd_census(args, out),
        Command::Verify(args) => cmd_verify(args, out),
    }
}

/// Parse `zigzag:N | chain:N | fence:WORD | file:PATH`.
pub fn parse_poset_spec(spec: &str) -> Result<Arc<Poset>> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("poset spec `{spec}` needs kind:value")))?;
    let poset = match kind {
        "zigzag" | "chain" => {
            let n: usize = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad element count `{rest}`")))?;
            if n == 0 {
                return Err(Error::Parse("poset needs at least one element".into()));
            }
            if kind == "zigzag" {
                Poset::zigzag(n)
            } else {
                Poset::chain(n)
            }
        }
        "fence" => Poset::fence(&parse_fence_word(rest)?),
        "file" => {
            let text = fs::read_to_string(rest)
                .map_err(|e| Error::Parse(format!("cannot read {rest}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{rest}: {e}")))?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown poset kind `{other}` (expected zigzag, chain, fence, or file)"
            )))
        }
    };
    Ok(Arc::new(poset))
}

/// Parse a labeling from shorthand `1,6,2,4@q=6` (with a poset), inline
/// JSON, or `file:PATH` of a JSON labeling. A JSON labeling carries its own
/// poset; if a poset is also supplied the two must agree structurally.
pub fn parse_labeling_input(text: &str, poset: Option<&Arc<Poset>>) -> Result<IncLabeling> {
    let trimmed = text.trim();
    if let Some(path) = trimmed.strip_prefix("file:") {
        let content = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        return parse_labeling_input(&content, poset);
    }
    if trimmed.starts_with('{') {
        let labeling: IncLabeling =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(p) = poset {
            if p.n() != labeling.poset().n() || p.covers() != labeling.poset().covers() {
                return Err(Error::WrongPoset);
            }
        }
        return Ok(labeling);
    }
    let (labels, q) = trimmed
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("labeling `{trimmed}` needs labels@q=N")))?;
    let q: u32 = q
        .trim()
        .strip_prefix("q=")
        .ok_or_else(|| Error::Parse(format!("expected q=N after @, got `{q}`")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad label bound in `{q}`")))?;
    let labels = labels
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad label `{s}`")))
        })
        .collect::<Result<Vec<u32>>>()?;
    let poset = poset.ok_or_else(|| {
        Error::Parse("shorthand labelings need --poset".into())
    })?;
    IncLabeling::new(Arc::clone(poset), q, labels)
}

fn parse_q_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected inclusive range A..B, got `{s}`"))?;
    let b = b.trim().strip_prefix('=').unwrap_or(b.trim());
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: u32 = b.parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_stats(spec: Option<&str>, poset: &Arc<Poset>) -> Result<Vec<Statistic>> {
    let spec = match spec {
        Some(s) => s.to_string(),
        None => {
            if poset.n() >= 2 && poset.canonical_involution().is_ok() {
                "ae,ai,tot".into()
            } else {
                "tot".into()
            }
        }
    };
    let mut stats = Vec::new();
    for token in spec.split(',') {
        let stat = match token.trim().to_ascii_lowercase().as_str() {
            "ae" => Statistic::exterior(&poset.canonical_involution()?),
            "ai" => {
                if poset.n() < 2 {
                    return Err(Error::IndexOutOfRange { index: 1, n: poset.n() });
                }
                Statistic::interior(&poset.canonical_involution()?)
            }
            "tot" => Statistic::total(),
            other => {
                return Err(Error::Parse(format!(
                    "unknown statistic `{other}` (expected ae, ai, or tot)"
                )))
            }
        };
        if !stats.iter().any(|s: &Statistic| s.label() == stat.label()) {
            stats.push(stat);
        }
    }
    Ok(stats)
}

fn format_labels(labels: &[u32]) -> String {
    let parts: Vec<String> = labels.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn cmd_enumerate<W: Write>(args: EnumerateArgs, out: &mut W) -> Result<i32> {
    let poset = parse_poset_spec(&args.poset)?;
    let labelings = if args.packed {
        enumerate_packed(&poset)
    } else {
        let q = args.q.ok_or_else(|| {
            Error::Parse("enumerate needs --q (or --packed)".into())
        })?;
        enumerate_inc(&poset, q)
    };
    match args.format {
        Format::Text => {
            if args.list {
                for f in &labelings {
                    if args.packed {
                        let _ = writeln!(out, "{} q={}", f, f.q());
                    } else {
                        let _ = writeln!(out, "{f}");
                    }
                }
            }
            let _ = writeln!(out, "count={}", labelings.len());
        }
        Format::Json => {
            let mut doc = serde_json::json!({
                "poset": poset.as_ref(),
                "count": labelings.len(),
            });
            if let Some(q) = args.q {
                doc["q"] = q.into();
            }
            if args.list {
                doc["labelings"] = labelings
                    .iter()
                    .map(|f| serde_json::json!({"q": f.q(), "labels": f.labels()}))
                    .collect::<Vec<_>>()
                    .into();
            }
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Csv => return Err(Error::Parse("enumerate has no csv format".into())),
    }
    Ok(0)
}

fn cmd_promote<W: Write>(args: PromoteArgs, out: &mut W) -> Result<i32> {
    let poset = args.poset.as_deref().map(parse_poset_spec).transpose()?;
    let mut f = parse_labeling_input(&args.labeling, poset.as_ref())?;
    for _ in 0..args.steps.unsigned_abs() {
        f = if args.steps >= 0 {
            promote(&f)
        } else {
            promote_inverse(&f)
        };
    }
    match args.format {
        Format::Text => {
            let _ = writeln!(out, "{f}");
        }
        Format::Json => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&f).expect("json"));
        }
        Format::Csv => return Err(Error::Parse("promote has no csv format".into())),
    }
    Ok(0)
}

fn cmd_orbit<W: Write>(args: OrbitArgs, out: &mut W) -> Result<i32> {
    let poset = args.poset.as_deref().map(parse_poset_spec).transpose()?;
    let f = parse_labeling_input(&args.labeling, poset.as_ref())?;
    let orbit = promotion_orbit(&f)?;
    match args.format {
        Format::Text => {
            let _ = writeln!(out, "action={} size={}", orbit.action(), orbit.size());
            for state in orbit.states() {
                let _ = writeln!(out, "{state}");
            }
        }
        Format::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&orbit).expect("json")
            );
        }
        Format::Csv => return Err(Error::Parse("orbit has no csv format".into())),
    }
    Ok(0)
}

fn cmd_order<W: Write>(args: OrderArgs, out: &mut W) -> Result<i32> {
    let poset = parse_poset_spec(&args.poset)?;
    let (brute, formula) = match args.mode.as_str() {
        "brute" => (Some(promotion_order(&poset, args.q, OrderMode::Brute)?), None),
        "formula" => (None, Some(promotion_order(&poset, args.q, OrderMode::Formula)?)),
        "both" => (
            Some(promotion_order(&poset, args.q, OrderMode::Brute)?),
            Some(promotion_order(&poset, args.q, OrderMode::Formula)?),
        ),
        other => {
            return Err(Error::Parse(format!(
                "unknown mode `{other}` (expected brute, formula, or both)"
            )))
        }
    };
    if args.format == Format::Json {
        let mut doc = serde_json::Map::new();
        if let Some(b) = brute {
            doc.insert("brute".into(), b.into());
        }
        if let Some(f) = formula {
            doc.insert("formula".into(), f.into());
        }
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("json")
        );
    } else {
        match (brute, formula) {
            (Some(b), Some(f)) => {
                let _ = writeln!(out, "{b} (brute) = {f} (formula)");
            }
            (Some(b), None) => {
                let _ = writeln!(out, "{b} (brute)");
            }
            (None, Some(f)) => {
                let _ = writeln!(out, "{f} (formula)");
            }
            (None, None) => unreachable!("mode always selects at least one"),
        }
    }
    if let (Some(b), Some(f)) = (brute, formula) {
        if b != f {
            let _ = writeln!(out, "MISMATCH: brute {b} != formula {f}");
            return Ok(1);
        }
    }
    Ok(0)
}

fn cmd_table<W: Write>(args: TableArgs, out: &mut W) -> Result<i32> {
    let poset = parse_poset_spec(&args.poset)?;
    let table = orbit_size_table(&poset)?;
    match args.format {
        Format::Csv | Format::Text => {
            let _ = write!(out, "{}", table.to_csv());
        }
        Format::Json => return Err(Error::Parse("table has no json format".into())),
    }
    Ok(0)
}

fn census_text<W: Write>(report: &CensusReport, out: &mut W) {
    for orbit in &report.orbits {
        let mut line = format!("rep={} size={}", format_labels(&orbit.rep), orbit.size);
        for (label, avg) in &orbit.averages {
            let mark = if orbit.orbitmesic[label] { "" } else { "!" };
            line.push_str(&format!(" {label}={avg}{mark}"));
        }
        let certs = if orbit.certificates.is_empty() {
            "-".to_string()
        } else {
            orbit.certificates.join(",")
        };
        line.push_str(&format!(" certs={certs}"));
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "{}", report.summary_line());
}

fn cmd_census<W: Write>(args: CensusArgs, out: &mut W) -> Result<i32> {
    let poset = parse_poset_spec(&args.poset)?;
    let stats = parse_stats(args.stats.as_deref(), &poset)?;
    let report = match args.jobs {
        None => census(&poset, args.q, &stats)?,
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
            pool.install(|| census(&poset, args.q, &stats))?
        }
    };
    match args.format {
        Format::Text => census_text(&report, out),
        Format::Json => {
            let _ = writeln!(out, "{}", report.to_json());
        }
        Format::Csv => {
            let _ = write!(out, "{}", report.to_csv());
        }
    }
    Ok(0)
}

struct SuiteRun {
    name: &'static str,
    min_q: u32,
    default_range: (u32, u32),
    run: fn(RangeInclusive<u32>) -> Result<String>,
}

const SUITES: &[SuiteRun] = &[
    SuiteRun {
        name: "thm-3.13",
        min_q: 2,
        default_range: (2, 8),
        run: suite_orbit_size_formula,
    },
    SuiteRun {
        name: "cor-4.1",
        min_q: 4,
        default_range: (4, 7),
        run: suite_order_zigzag3,
    },
    SuiteRun {
        name: "cor-4.2",
        min_q: 5,
        default_range: (5, 7),
        run: suite_order_zigzag4,
    },
    SuiteRun {
        name: "cor-4.3",
        min_q: 6,
        default_range: (6, 7),
        run: suite_order_zigzag5,
    },
    SuiteRun {
        name: "prop-5.5",
        min_q: 2,
        default_range: (2, 6),
        run: suite_swap_battery,
    },
    SuiteRun {
        name: "thm-5.12",
        min_q: 2,
        default_range: (2, 6),
        run: suite_swap_closed_orbits,
    },
    SuiteRun {
        name: "lem-6.1",
        min_q: 2,
        default_range: (2, 8),
        run: suite_global_averages,
    },
    SuiteRun {
        name: "thm-7.6",
        min_q: 2,
        default_range: (4, 8),
        run: suite_classification,
    },
    SuiteRun {
        name: "cor-7.10",
        min_q: 2,
        default_range: (2, 8),
        run: suite_total_homomesy,
    },
];

fn suite_index(suite: Suite) -> Option<usize> {
    match suite {
        Suite::OrbitSizeFormula => Some(0),
        Suite::OrderZigzag3 => Some(1),
        Suite::OrderZigzag4 => Some(2),
        Suite::OrderZigzag5 => Some(3),
        Suite::SwapBattery => Some(4),
        Suite::SwapClosedOrbits => Some(5),
        Suite::GlobalAverages => Some(6),
        Suite::Classification => Some(7),
        Suite::TotalHomomesy => Some(8),
        Suite::All => None,
    }
}

fn cmd_verify<W: Write>(args: VerifyArgs, out: &mut W) -> Result<i32> {
    let selected: Vec<&SuiteRun> = match suite_index(args.suite) {
        Some(i) => vec![&SUITES[i]],
        None => SUITES.iter().collect(),
    };
    let mut failures = 0;
    for suite in selected {
        let (lo, hi) = args.q_range.unwrap_or(suite.default_range);
        let lo = lo.max(suite.min_q);
        if lo > hi {
            return Err(Error::Parse(format!(
                "suite {} needs q >= {}, but the range ends at {hi}",
                suite.name, suite.min_q
            )));
        }
        match (suite.run)(lo..=hi) {
            Ok(detail) => {
                let _ = writeln!(out, "PASS {}: {detail}", suite.name);
            }
            Err(err) => {
                let _ = writeln!(out, "FAIL {}: {err}", suite.name);
                failures += 1;
            }
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}

fn suite_orbit_size_formula(range: RangeInclusive<u32>) -> Result<String> {
    let mut checked = 0u64;
    for n in [3usize, 4] {
        let poset = Arc::new(Poset::zigzag(n));
        for q in range.clone() {
            for orbit in all_orbits("promotion", promote, &enumerate_inc(&poset, q))? {
                for f in orbit.states() {
                    let predicted = orbit_size_via_deflation(f)?;
                    if predicted != orbit.size() {
                        return Err(Error::Counterexample(format!(
                            "formula gives {predicted} but the orbit of {f} has size {}",
                            orbit.size()
                        )));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "orbit-size formula matches brute force on {checked} labelings (zig-zags 3 and 4, q {}..{})",
        range.start(),
        range.end()
    ))
}

fn suite_order(n: usize, factor: u64, range: RangeInclusive<u32>) -> Result<String> {
    let poset = Arc::new(Poset::zigzag(n));
    for q in range.clone() {
        let expected = factor * q as u64;
        for mode in [OrderMode::Brute, OrderMode::Formula] {
            let got = promotion_order(&poset, q, mode)?;
            if got != expected {
                return Err(Error::Counterexample(format!(
                    "promotion order on the {n}-element zig-zag at q={q} is {got}, expected {expected}"
                )));
            }
        }
    }
    Ok(format!(
        "promotion order on the {n}-element zig-zag is {factor}q for q {}..{} (brute and formula)",
        range.start(),
        range.end()
    ))
}

fn suite_order_zigzag3(range: RangeInclusive<u32>) -> Result<String> {
    suite_order(3, 2, range)
}

fn suite_order_zigzag4(range: RangeInclusive<u32>) -> Result<String> {
    suite_order(4, 15, range)
}

fn suite_order_zigzag5(range: RangeInclusive<u32>) -> Result<String> {
    suite_order(5, 120, range)
}

fn swap_battery_one(f: &IncLabeling, kappa: &crate::poset::Involution) -> Result<()> {
    let swapped = swap(f, kappa);
    if swapped.content() != f.content().reversed() {
        return Err(Error::Counterexample(format!(
            "content of swap({f}) is not the reversed content"
        )));
    }
    if swapped.deflate() != swap(&f.deflate(), kappa) {
        return Err(Error::Counterexample(format!(
            "deflation does not commute with swap on {f}"
        )));
    }
    let forward = sliding_subposet(&swapped, SlideDirection::Forward);
    let inverse = sliding_subposet(f, SlideDirection::Inverse);
    let mapped: Vec<Vec<usize>> = inverse
        .layers()
        .iter()
        .map(|layer| {
            let mut v: Vec<usize> = layer.iter().map(|&x| kappa.apply(x)).collect();
            v.sort_unstable();
            v
        })
        .collect();
    if forward.layers() != mapped.as_slice() {
        return Err(Error::Counterexample(format!(
            "sliding subposets of {f} are not dual layer by layer"
        )));
    }
    if swap(&promote_inverse(f), kappa) != promote(&swapped) {
        return Err(Error::Counterexample(format!(
            "swap does not anticommute with promotion on {f}"
        )));
    }
    Ok(())
}

fn suite_swap_battery(range: RangeInclusive<u32>) -> Result<String> {
    let z4 = Arc::new(Poset::zigzag(4));
    let kappa4 = z4.canonical_involution()?;
    let mut checked = 0u64;
    for q in range.clone() {
        for f in enumerate_inc(&z4, q) {
            swap_battery_one(&f, &kappa4)?;
            checked += 1;
        }
    }
    let example = crate::examples::ten_element_poset();
    let kappa10 = example.canonical_involution()?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0b17);
    for _ in 0..500 {
        let f = sample_inc(&example, 9, &mut rng)?;
        swap_battery_one(&f, &kappa10)?;
        checked += 1;
    }
    Ok(format!(
        "content reversal, deflation commutation, sliding duality, and anticommutation hold on {checked} labelings (zig-zag 4 at q {}..{} plus 500 seeded draws on the ten-element poset)",
        range.start(),
        range.end()
    ))
}

fn suite_swap_closed_orbits(range: RangeInclusive<u32>) -> Result<String> {
    let mut closed = 0u64;
    let mut posets: Vec<(Arc<Poset>, Vec<u32>)> = Vec::new();
    posets.push((
        Arc::new(Poset::zigzag(4)),
        range.clone().collect(),
    ));
    posets.push((Arc::new(Poset::zigzag(6)), vec![5]));
    for (poset, qs) in &posets {
        let kappa = poset.canonical_involution()?;
        let n = poset.n();
        for &q in qs {
            let states = enumerate_inc(poset, q);
            if states.is_empty() {
                continue;
            }
            let global_tot = global_average(&states, &Statistic::total())?;
            let antipodal: Vec<Statistic> = (0..n)
                .map(|x| Statistic::antipodal(format!("A_{x}"), x, kappa.clone()))
                .collect();
            let global_antipodal = global_average(&states, &antipodal[0])?;
            for orbit in all_orbits("promotion", promote, &states)? {
                if !is_swap_closed(&orbit, &kappa)? {
                    continue;
                }
                closed += 1;
                for stat in &antipodal {
                    let avg = orbit_average(&orbit, stat)?;
                    if avg != global_antipodal {
                        return Err(Error::Counterexample(format!(
                            "swap-closed orbit of {} has {}-average {avg}, global {global_antipodal}",
                            orbit.canonical_rep(),
                            stat.label()
                        )));
                    }
                }
                let avg = orbit_average(&orbit, &Statistic::total())?;
                if avg != global_tot {
                    return Err(Error::Counterexample(format!(
                        "swap-closed orbit of {} has total-average {avg}, global {global_tot}",
                        orbit.canonical_rep()
                    )));
                }
            }
        }
    }
    Ok(format!(
        "all {closed} swap-closed promotion orbits are orbitmesic for every antipodal statistic and the total (zig-zag 4 at q {}..{}, zig-zag 6 at q 5)",
        range.start(),
        range.end()
    ))
}

fn suite_global_averages(range: RangeInclusive<u32>) -> Result<String> {
    let mut pairs = 0u64;
    let mut targets: Vec<(Arc<Poset>, Vec<u32>)> = Vec::new();
    targets.push((Arc::new(Poset::zigzag(4)), range.clone().collect()));
    targets.push((Arc::new(Poset::zigzag(6)), vec![4, 5]));
    targets.push((Arc::new(Poset::chain(4)), vec![6]));
    for (poset, qs) in &targets {
        let kappa = poset.canonical_involution()?;
        let n = poset.n();
        for &q in qs {
            let states = enumerate_inc(poset, q);
            if states.is_empty() {
                continue;
            }
            for x in 0..n {
                let stat = Statistic::antipodal(format!("A_{x}"), x, kappa.clone());
                let avg = global_average(&states, &stat)?;
                if avg != Rat::from_integer(q as i64 + 1) {
                    return Err(Error::Counterexample(format!(
                        "global average of A_{x} at q={q} on {n} elements is {avg}, expected {}",
                        q + 1
                    )));
                }
            }
            let avg = global_average(&states, &Statistic::total())?;
            if avg != Rat::new(n as i64 * (q as i64 + 1), 2) {
                return Err(Error::Counterexample(format!(
                    "global average of the total at q={q} on {n} elements is {avg}"
                )));
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "enumerated global averages equal q+1 per element pair and n(q+1)/2 in total on {pairs} (poset, q) pairs"
    ))
}

fn suite_classification(range: RangeInclusive<u32>) -> Result<String> {
    let z4 = Arc::new(Poset::zigzag(4));
    let kappa = z4.canonical_involution()?;
    let mut orbits_seen = 0u64;
    let mut with_pattern = 0u64;
    let mut bad = 0u64;
    for q in range.clone() {
        for orbit in all_orbits("promotion", promote, &enumerate_inc(&z4, q))? {
            let class = classify_z4_orbit(&orbit)?;
            orbits_seen += 1;
            if !class.actual_orbitmesic {
                bad += 1;
            }
            if let Some(profile) = class.gap_profile {
                with_pattern += 1;
                let brute_ext: i64 = orbit
                    .states()
                    .iter()
                    .map(|s| Statistic::exterior(&kappa).eval_labeling(s))
                    .sum::<Result<i64>>()?;
                let brute_int: i64 = orbit
                    .states()
                    .iter()
                    .map(|s| Statistic::interior(&kappa).eval_labeling(s))
                    .sum::<Result<i64>>()?;
                match z4_exterior_sum_closed_form(&profile) {
                    Ok(ext) => {
                        let int = z4_interior_sum_closed_form(&profile)?;
                        if ext != brute_ext || int != brute_int || orbit.size() != q as u64 {
                            return Err(Error::Counterexample(format!(
                                "gap-profile sums ({ext}, {int}) disagree with brute ({brute_ext}, {brute_int}) on the size-{} orbit of {}",
                                orbit.size(),
                                orbit.canonical_rep()
                            )));
                        }
                    }
                    Err(Error::Symmetry { symmetric_sum }) => {
                        if symmetric_sum != brute_ext
                            || symmetric_sum != brute_int
                            || orbit.size() * 2 != q as u64
                        {
                            return Err(Error::Counterexample(format!(
                                "symmetric-profile sum {symmetric_sum} disagrees with brute ({brute_ext}, {brute_int}) on the size-{} orbit of {}",
                                orbit.size(),
                                orbit.canonical_rep()
                            )));
                        }
                    }
                    Err(other) => return Err(other),
                }
            }
        }
    }
    Ok(format!(
        "pattern/balance classification matches brute force on {orbits_seen} orbits ({with_pattern} contain the pattern, {bad} are not orbitmesic) for q {}..{}",
        range.start(),
        range.end()
    ))
}

fn suite_total_homomesy(range: RangeInclusive<u32>) -> Result<String> {
    let z4 = Arc::new(Poset::zigzag(4));
    for q in range.clone() {
        let states = enumerate_inc(&z4, q);
        if states.is_empty() {
            continue;
        }
        let value = is_homomesic("promotion", promote, &states, &Statistic::total())?;
        if value != Some(Rat::from_integer(2 * (q as i64 + 1))) {
            return Err(Error::Counterexample(format!(
                "promotion total-sum orbit averages at q={q} are {value:?}, expected 2(q+1)"
            )));
        }
    }
    Ok(format!(
        "promotion is homomesic for the label total with value 2(q+1) on the four-element zig-zag for q {}..{}",
        range.start(),
        range.end()
    ))
}

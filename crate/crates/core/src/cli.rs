//! Command-line front end.
//!
//! Every subcommand produces a text rendering and a JSON document; `--json`
//! selects the latter. JSON documents carry a `command` tag, the tool
//! version and a SHA-256 hash of the input block file.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::analysis::{classify, ClassificationReport, Verdict};
use crate::counting::{
    check_submultiplicativity, check_vn_bound, count_series, estimate_entropy, ut_check, uk_check, BoundCheck,
    CountKind, CountSeries,
};
use crate::cover::{is_coverable, lemma1_exhaustive, lemma1_fuzz, lemma1_report, rho, uncovered_cells, Lemma1Report};
use crate::engine::Limits;
use crate::error::{Error, Result};
use crate::grid::{Block, Cell, Fragment, Placement};
use crate::pairs::{
    build_periodic_witness, construct_pair_any, entropy_lower_bound, search_pairs, swap_enumeration,
    EntropyCertificate, InterchangeablePair, PairSearchReport, SearchOutcome, WitnessChecks,
};
use crate::sft::{compile_predicate, DEFAULT_MATERIALIZATION_CAP};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "coverable", version, about = "Entropy analysis of block-coverable 2D subshifts")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for counting.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search node budget.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Wall-clock budget per search, in seconds.
    #[arg(long = "time-limit", global = true)]
    pub time_limit: Option<f64>,
    /// Include per-entry running times in count series.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl GlobalArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            node_budget: self.budget,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
            jobs: self.jobs.max(1),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a block and run the matching construction.
    Analyze {
        block: PathBuf,
        /// Run a bounded pair search when the verdict is UNKNOWN_GAP.
        #[arg(long)]
        search_pairs: bool,
        /// Search window, `RxS`; defaults to 3w x 3h.
        #[arg(long, value_parser = parse_window)]
        window: Option<(u32, u32)>,
        /// Append count series up to this size, with bound checks.
        #[arg(long, value_name = "N")]
        count: Option<u32>,
    },
    /// Borders, condition (*) and the verdict only.
    Classify { block: PathBuf },
    /// Print the forbidden-window presentation.
    CompileSft {
        block: PathBuf,
        /// Print the header only.
        #[arg(long)]
        header_only: bool,
        /// Largest window space to enumerate.
        #[arg(long, default_value_t = DEFAULT_MATERIALIZATION_CAP)]
        cap: u64,
    },
    /// Check whether a fragment is covered by occurrences of the block.
    Cover {
        block: PathBuf,
        /// A `.blk` fragment (`.` marks cells outside the domain), or a
        /// placement list with `--placements`.
        target: PathBuf,
        /// Read the target as `x y` positions of the block, one per line.
        #[arg(long)]
        placements: bool,
    },
    /// Interchangeable pairs, periodic witnesses and swap counts.
    Pair {
        block: PathBuf,
        /// Build the pair from the sufficient condition.
        #[arg(long)]
        construct: bool,
        /// Search for a pair inside a bounded window.
        #[arg(long)]
        search: bool,
        #[arg(long, value_parser = parse_window)]
        window: Option<(u32, u32)>,
        /// Emit the periodic witness (lattice and placements).
        #[arg(long)]
        witness: bool,
        /// Count swap-rendered patterns in a `t x t` window.
        #[arg(long)]
        swaps: bool,
        #[arg(long, value_name = "T")]
        size: Option<u32>,
    },
    /// Exact pattern counts.
    Count {
        block: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Loc)]
        kind: KindArg,
        #[arg(long = "max-n", default_value_t = 4)]
        max_n: u32,
    },
    /// The rightmost occurrence map and its local determinism.
    Rho {
        block: PathBuf,
        /// A `.blk` fragment to map.
        #[arg(long)]
        fragment: Option<PathBuf>,
        /// Check this many seeded random patches.
        #[arg(long, value_name = "N")]
        fuzz: Option<usize>,
        /// Check every covered coloring of the 6w x 6h rectangle.
        #[arg(long)]
        exhaustive: bool,
        /// Largest number of colorings examined by `--exhaustive`.
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Loc,
    Central,
}

impl From<KindArg> for CountKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Loc => CountKind::LocAdmissible,
            KindArg::Central => CountKind::CoverableCentral,
        }
    }
}

fn parse_window(s: &str) -> std::result::Result<(u32, u32), String> {
    let (r, c) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected RxS, got {s:?}"))?;
    let r: u32 = r.trim().parse().map_err(|e| format!("{e}"))?;
    let c: u32 = c.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((r, c))
}

/// What a subcommand produced.
pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Process exit code for an error: 2 for unreadable input, 3 when a
/// construction fails its own checks, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidBlock(_) => 2,
        e if e.is_verification_failure() => 3,
        _ => 1,
    }
}

struct Input {
    block: Block,
    hash: String,
}

fn read_block(path: &Path) -> Result<Input> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Parse { line: 0, reason: "input is not UTF-8".into() })?;
    let block = Block::parse(&text)?;
    Ok(Input { block, hash: hex::encode(Sha256::digest(&bytes)) })
}

/// Reads a fragment; `.` marks cells outside the domain. The bottom-left
/// cell of the text sits at the origin.
fn read_fragment(path: &Path) -> Result<Fragment> {
    let text = std::fs::read_to_string(path)?;
    let lines: Vec<&str> = text.lines().collect();
    if lines.is_empty() {
        return Err(Error::Parse { line: 1, reason: "empty fragment".into() });
    }
    let width = lines[0].chars().count();
    let h = lines.len() as i32;
    let mut cells = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        if line.chars().count() != width {
            return Err(Error::Parse { line: i + 1, reason: "ragged row".into() });
        }
        for (x, s) in line.chars().enumerate() {
            if s != '.' {
                cells.push((Cell::new(x as i32, h - 1 - i as i32), s));
            }
        }
    }
    Fragment::from_cells(cells)
}

fn read_placements(q: &Block, path: &Path) -> Result<Vec<Placement>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<i32> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse { line: i + 1, reason: format!("bad coordinate {t:?}") }))
            .collect::<Result<_>>()?;
        match nums[..] {
            [x, y] => out.push(Placement::of(q, Cell::new(x, y))),
            _ => return Err(Error::Parse { line: i + 1, reason: "expected `x y`".into() }),
        }
    }
    Ok(out)
}

fn envelope(command: &str, hash: &str, result: impl Serialize) -> Value {
    json!({
        "command": command,
        "version": VERSION,
        "input_hash": hash,
        "result": serde_json::to_value(result).expect("serializable"),
    })
}

/// Everything `analyze` learns about one block.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisBundle {
    pub command: &'static str,
    pub version: &'static str,
    pub input_hash: String,
    pub report: ClassificationReport,
    pub pair: Option<InterchangeablePair>,
    pub lattice: Option<[Cell; 2]>,
    pub witness_checks: Option<WitnessChecks>,
    pub certificate: Option<EntropyCertificate>,
    pub pair_search: Option<PairSearchReport>,
    pub counts: Vec<CountSeries>,
    pub bound_checks: Vec<BoundCheck>,
    pub notes: Vec<String>,
}

pub fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { block, search_pairs, window, count } => {
            let input = read_block(block)?;
            let bundle = analyze(&input.block, input.hash, g, *search_pairs, *window, *count)?;
            Ok(Output { text: analysis_text(&bundle), json: serde_json::to_value(&bundle).expect("serializable") })
        }
        Command::Classify { block } => {
            let input = read_block(block)?;
            let report = classify(&input.block);
            Ok(Output { text: report_text(&report), json: envelope("classify", &input.hash, &report) })
        }
        Command::CompileSft { block, header_only, cap } => {
            let input = read_block(block)?;
            let mut d = compile_predicate(&input.block);
            d.forbidden = d.materialize(*cap).ok();
            let text = if *header_only { d.header() } else { d.listing() };
            let forbidden: Option<Vec<Vec<String>>> =
                d.forbidden.as_ref().map(|l| l.iter().map(Block::rows).collect());
            let result = json!({
                "source": input.block.rows(),
                "alphabet": d.alphabet.iter().collect::<String>(),
                "window": [d.window_width, d.window_height],
                "window_count": d.window_count.to_string(),
                "forbidden_count": d.forbidden_count(),
                "forbidden": if *header_only { None } else { forbidden },
            });
            Ok(Output { text, json: envelope("compile-sft", &input.hash, result) })
        }
        Command::Cover { block, target, placements } => {
            let input = read_block(block)?;
            cover(&input, target, *placements)
        }
        Command::Pair { block, construct, search, window, witness, swaps, size } => {
            let input = read_block(block)?;
            pair(&input, g, *construct, *search, *window, *witness, *swaps, *size)
        }
        Command::Count { block, kind, max_n } => {
            let input = read_block(block)?;
            count(&input, g, (*kind).into(), *max_n)
        }
        Command::Rho { block, fragment, fuzz, exhaustive, cap } => {
            let input = read_block(block)?;
            rho_cmd(&input, g, fragment.as_deref(), *fuzz, *exhaustive, *cap)
        }
    }
}

pub fn analyze(
    q: &Block,
    input_hash: String,
    g: &GlobalArgs,
    search: bool,
    window: Option<(u32, u32)>,
    count: Option<u32>,
) -> Result<AnalysisBundle> {
    let limits = g.limits();
    let report = classify(q);
    let r = report.analyzed().clone();
    let mut bundle = AnalysisBundle {
        command: "analyze",
        version: VERSION,
        input_hash,
        report,
        pair: None,
        lattice: None,
        witness_checks: None,
        certificate: None,
        pair_search: None,
        counts: Vec::new(),
        bound_checks: Vec::new(),
        notes: Vec::new(),
    };
    if bundle.report.verdict == Verdict::PositiveEntropy {
        let (pair, skipped) = construct_pair_any(&r)?;
        if skipped > 0 {
            bundle.notes.push(format!("{skipped} witness(es) of the sufficient condition failed their runtime checks"));
        }
        let pw = build_periodic_witness(&r, &pair)?;
        let cert = entropy_lower_bound(&pw);
        if Some(cert.bound) != bundle.report.entropy_lower_bound {
            return Err(Error::WitnessInvalid(format!("certificate {} disagrees with the classification", cert.bound)));
        }
        bundle.notes.extend(pw.notes.iter().cloned());
        bundle.lattice = Some(pw.lattice);
        bundle.witness_checks = Some(pw.checks.clone());
        bundle.certificate = Some(cert);
        bundle.pair = Some(pair);
    }
    if search && bundle.report.verdict == Verdict::UnknownGap {
        let win = window.unwrap_or((3 * r.width(), 3 * r.height()));
        bundle.pair_search = Some(search_pairs(&r, win, limits));
    }
    if let Some(n) = count {
        let mut est = estimate_entropy(&r, n, limits);
        if let Some(s) = &bundle.pair_search {
            if s.outcome == SearchOutcome::Exhausted {
                for e in &est.central.entries {
                    if let Ok(c) = check_vn_bound(&r, e.n, s, limits) {
                        est.checks.push(c);
                    }
                }
            }
        }
        if !g.timings {
            est.loc.strip_timings();
            est.central.strip_timings();
        }
        bundle.counts = vec![est.loc, est.central];
        bundle.bound_checks = est.checks;
        bundle.notes.extend(est.notes);
    }
    Ok(bundle)
}

fn report_text(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "block {} ({}x{})", r.input_block, r.input_block.width(), r.input_block.height());
    if !r.primitive {
        let _ = writeln!(s, "primitive root {} repeated {}x{}", r.root.root, r.root.h_reps, r.root.v_reps);
    }
    if r.borders.is_empty() {
        let _ = writeln!(s, "borders: none");
    } else {
        let _ = writeln!(s, "borders:");
        for b in &r.borders {
            let _ = writeln!(s, "  {b}");
        }
    }
    match &r.star {
        Some(w) => {
            let _ = writeln!(s, "condition (*): holds, {w}");
        }
        None => {
            let _ = writeln!(s, "condition (*): fails");
        }
    }
    if let Some(t) = &r.thm3 {
        let _ = writeln!(s, "sufficient condition: {t}");
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    if let Some(b) = r.entropy_lower_bound {
        let _ = writeln!(s, "entropy lower bound: {b}");
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn analysis_text(b: &AnalysisBundle) -> String {
    let mut s = report_text(&b.report);
    if let Some(p) = &b.pair {
        let _ = writeln!(s, "\ninterchangeable pair:\n{p}");
    }
    if let Some([v1, v2]) = b.lattice {
        let _ = writeln!(s, "period lattice: {v1}, {v2}");
    }
    if let Some(c) = &b.certificate {
        let _ = writeln!(s, "certificate: h(X) >= {} (pair bounding box gives {})", c.bound, c.tighter_bound);
    }
    if let Some(ps) = &b.pair_search {
        let _ = writeln!(
            s,
            "pair search in {}x{}: {:?} after {} nodes",
            ps.window.0, ps.window.1, ps.outcome, ps.nodes
        );
        if let Some(p) = &ps.pair {
            let _ = writeln!(s, "{p}");
        }
    }
    for series in &b.counts {
        s.push_str(&series_text(series));
    }
    for c in &b.bound_checks {
        let _ = writeln!(s, "check {c}");
    }
    for n in &b.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn series_text(series: &CountSeries) -> String {
    let mut s = String::new();
    let label = match series.kind {
        CountKind::LocAdmissible => "locally admissible",
        CountKind::CoverableCentral => "coverable central",
    };
    let _ = writeln!(s, "{label} counts{}:", if series.complete { "" } else { " (INCOMPLETE)" });
    for (e, (_, est)) in series.entries.iter().zip(&series.estimates) {
        let _ = write!(s, "  n={:<3} {}  estimate {:.6}", e.n, e.count, est);
        if let Some(t) = e.seconds {
            let _ = write!(s, "  {t:.3}s");
        }
        s.push('\n');
    }
    s
}

fn cover(input: &Input, target: &Path, as_placements: bool) -> Result<Output> {
    let q = &input.block;
    let (fragment, listed) = if as_placements {
        let pl = read_placements(q, target)?;
        let f = Fragment::from_placements(q, &pl)?;
        (f, Some(pl))
    } else {
        (read_fragment(target)?, None)
    };
    let witness = is_coverable(q, &fragment);
    let uncovered = uncovered_cells(q, &fragment);
    let mut text = String::new();
    let _ = writeln!(text, "{fragment}");
    match &witness {
        Some(w) => {
            let _ = writeln!(text, "coverable: yes, {} occurrences", w.placements.len());
            for p in &w.placements {
                let _ = writeln!(text, "  {}", p.position);
            }
        }
        None => {
            let cells: Vec<String> = uncovered.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(text, "coverable: no, uncovered cells {}", cells.join(" "));
        }
    }
    let result = json!({
        "fragment": fragment,
        "listed_placements": listed,
        "coverable": witness.is_some(),
        "placements": witness.map(|w| w.placements),
        "uncovered": uncovered,
    });
    Ok(Output { text, json: envelope("cover", &input.hash, result) })
}

#[allow(clippy::too_many_arguments)]
fn pair(
    input: &Input,
    g: &GlobalArgs,
    construct: bool,
    search: bool,
    window: Option<(u32, u32)>,
    witness: bool,
    swaps: bool,
    size: Option<u32>,
) -> Result<Output> {
    let q = &input.block;
    let construct = construct || witness || swaps || !search;
    let mut text = String::new();
    let mut result = BTreeMap::new();
    if construct {
        let (pair, _) = construct_pair_any(q)?;
        let pw = build_periodic_witness(q, &pair)?;
        let cert = entropy_lower_bound(&pw);
        let _ = writeln!(text, "interchangeable pair:\n{pair}");
        let _ = writeln!(text, "certificate: h(X) >= {} (pair bounding box gives {})", cert.bound, cert.tighter_bound);
        result.insert("pair", serde_json::to_value(&pair).expect("serializable"));
        result.insert("certificate", serde_json::to_value(cert).expect("serializable"));
        if witness {
            let [v1, v2] = pw.lattice;
            let _ = writeln!(text, "period lattice: {v1}, {v2}");
            let _ = writeln!(text, "fundamental window: {:?}", pw.fundamental_window);
            for n in &pw.notes {
                let _ = writeln!(text, "note: {n}");
            }
            let value = json!({
                "lattice": pw.lattice,
                "placements": pw.placements,
                "fundamental_window": pw.fundamental_window,
                "rect_size": pw.rect_size,
                "checks": pw.checks,
                "notes": pw.notes,
            });
            result.insert("witness", value);
        }
        if swaps {
            let t = size.unwrap_or(4 * q.width().max(q.height()) + 4);
            let rep = swap_enumeration(q, &pw, t);
            let _ = writeln!(
                text,
                "swaps in {t}x{t}: {} sites, {} pairwise disjoint, {} distinct patterns ({:?})",
                rep.sites, rep.disjoint_sites, rep.distinct_patterns, rep.method
            );
            result.insert("swaps", serde_json::to_value(rep).expect("serializable"));
        }
    }
    if search {
        let win = window.unwrap_or((3 * q.width(), 3 * q.height()));
        let rep = search_pairs(q, win, g.limits());
        let _ = writeln!(text, "pair search in {}x{}: {:?} after {} nodes", win.0, win.1, rep.outcome, rep.nodes);
        if let Some(p) = &rep.pair {
            let _ = writeln!(text, "{p}");
        }
        result.insert("search", serde_json::to_value(rep).expect("serializable"));
    }
    Ok(Output { text, json: envelope("pair", &input.hash, result) })
}

fn count(input: &Input, g: &GlobalArgs, kind: CountKind, max_n: u32) -> Result<Output> {
    let q = &input.block;
    let limits = g.limits();
    let mut series = count_series(q, kind, max_n, limits);
    let report = classify(q);
    let mut checks = Vec::new();
    match kind {
        CountKind::LocAdmissible => {
            for e in series.entries.iter().filter(|e| e.n >= 2) {
                match check_submultiplicativity(q, e.n, limits) {
                    Ok(c) => checks.extend(c),
                    Err(_) => break,
                }
            }
            if report.primitive && report.verdict == Verdict::PositiveEntropy {
                checks.extend(series.entries.iter().map(|e| ut_check(q, e.n, e.count.clone())));
            }
        }
        CountKind::CoverableCentral => {
            if report.primitive && report.verdict == Verdict::ZeroEntropy {
                checks.extend(series.entries.iter().map(|e| uk_check(q, e.n, e.count.clone())));
            }
        }
    }
    if !g.timings {
        series.strip_timings();
    }
    let mut text = series_text(&series);
    for c in &checks {
        let _ = writeln!(text, "check {c}");
    }
    let result = json!({ "series": series, "bound_checks": checks });
    Ok(Output { text, json: envelope("count", &input.hash, result) })
}

fn rho_cmd(
    input: &Input,
    g: &GlobalArgs,
    fragment: Option<&Path>,
    fuzz: Option<usize>,
    exhaustive: bool,
    cap: usize,
) -> Result<Output> {
    let q = &input.block;
    let mut text = String::new();
    let mut result = BTreeMap::new();
    if let Some(path) = fragment {
        let f = read_fragment(path)?;
        let map = rho(q, &f);
        let _ = writeln!(text, "rho on {} of {} cells:", map.len(), f.len());
        for (c, p) in &map.assignment {
            let _ = writeln!(text, "  {c} -> {}", p.position);
        }
        let entries: Vec<Value> =
            map.assignment.iter().map(|(c, p)| json!({ "cell": c, "occurrence": p.position })).collect();
        result.insert("rho", Value::Array(entries));
        if let Ok(rep) = lemma1_report(q, &f) {
            let _ = writeln!(text, "{}", lemma1_text("fragment", &rep, 1));
            result.insert("fragment_check", serde_json::to_value(rep).expect("serializable"));
        }
    }
    if let Some(n) = fuzz {
        let (rep, made) = lemma1_fuzz(q, n, g.seed)?;
        let _ = writeln!(text, "{}", lemma1_text("fuzz", &rep, made));
        result.insert("fuzz", json!({ "patches": made, "seed": g.seed, "report": rep }));
    }
    if exhaustive {
        let (rep, seen) = lemma1_exhaustive(q, cap, g.limits())?;
        let _ = writeln!(text, "{}", lemma1_text("exhaustive", &rep, seen));
        result.insert("exhaustive", json!({ "colorings": seen, "cap": cap, "report": rep }));
    }
    Ok(Output { text, json: envelope("rho", &input.hash, result) })
}

fn lemma1_text(label: &str, r: &Lemma1Report, patches: usize) -> String {
    let mut seen = HashSet::new();
    let ties = r.rightmost_ties.iter().filter(|c| seen.insert(**c)).count();
    format!(
        "{label}: {patches} patch(es), {} interior cells, {} violations, {} rightmost ties",
        r.checked_cells,
        r.violations.len(),
        ties
    )
}

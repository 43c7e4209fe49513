//! Exact pattern counts and the counting bounds built on them.
//!
//! Two surrogates stand in for the language of `X_q`:
//!
//! * `LOC_ADMISSIBLE` counts grids in which every cell far enough from the
//!   edges is covered by an in-grid occurrence. This over-approximates the
//!   globally admissible patterns.
//! * `COVERABLE_CENTRAL` counts the contents of a central `k × k` window over
//!   colorings whose every cell within a margin of `(2w, 2h)` around the
//!   window is covered. Such a patch need not extend to a configuration.
//!
//! Neither count is reported as the language itself.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{CheckedAdd, One, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::analysis::{classify, condition_star, is_primitive, Verdict};
use crate::engine::{Board, CoverSearch, Limits, Meter, UNSET};
use crate::error::{Error, Result};
use crate::grid::Block;
use crate::pairs::{PairSearchReport, SearchOutcome};
use crate::rational::Rational;

/// Decimal-string serialization for exact counts.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Largest number of profile states kept in one sweep step.
const MAX_STATES: usize = 1 << 24;

trait Tally: Clone + Zero + One + CheckedAdd + Send + Sync + Into<BigUint> {}
impl Tally for u128 {}
impl Tally for BigUint {}

/// Column sweep over a `width × height` grid that tracks the last
/// `(qw−1)·height + qh−1` symbols and which of those cells are already
/// covered. A cell leaves the profile exactly when its last possible
/// covering occurrence has been decided, so uncovered required cells are
/// rejected there.
struct Sweep {
    width: usize,
    height: usize,
    k: u64,
    bits: usize,
    span: usize,
    pat_mask: u128,
    pat_val: u128,
    occ_cover: u128,
    qw: usize,
    qh: usize,
    required: Vec<bool>,
}

impl Sweep {
    fn new(q: &Block, width: usize, height: usize, required: Vec<bool>) -> Result<Self> {
        let alphabet = q.alphabet();
        let k = alphabet.len() as u64;
        let bits = (u64::BITS - (k - 1).leading_zeros()) as usize;
        let (qw, qh) = (q.width() as usize, q.height() as usize);
        let span = (qw - 1) * height + qh - 1;
        if (span + 1) * bits > 128 || span * (bits + 1) > 128 {
            return Err(Error::ResourceLimit { nodes: 0, what: "profile wider than 128 bits", partial: None });
        }
        let (mut pat_mask, mut pat_val, mut occ_cover) = (0u128, 0u128, 0u128);
        let sym_mask = (1u128 << bits) - 1;
        for b in 0..qh {
            for a in 0..qw {
                let age = (qw - 1 - a) * height + (qh - 1 - b);
                let s = alphabet.binary_search(&q.at(a as u32, b as u32)).unwrap() as u128;
                pat_mask |= sym_mask << (age * bits);
                pat_val |= s << (age * bits);
                occ_cover |= 1 << age;
            }
        }
        Ok(Sweep { width, height, k, bits, span, pat_mask, pat_val, occ_cover, qw, qh, required })
    }

    fn content_mask(&self) -> u128 {
        low_bits(self.span * self.bits)
    }

    fn cells(&self) -> usize {
        self.width * self.height
    }

    /// Advances every state by cell `i`.
    fn step<C: Tally>(&self, i: usize, cur: &FxHashMap<u128, C>, meter: &mut Meter) -> Result<FxHashMap<u128, C>> {
        meter.add(cur.len() as u64 * self.k)?;
        let (x, y) = (i / self.height, i % self.height);
        let completes = x + 1 >= self.qw && y + 1 >= self.qh;
        let leaving_required = i >= self.span && self.required[i - self.span];
        let shift = self.span * self.bits;
        let cmask = self.content_mask();
        let mmask = low_bits(self.span);
        let mut next: FxHashMap<u128, C> = FxHashMap::default();
        for (&key, cnt) in cur {
            let content = key & cmask;
            let mask = key >> shift;
            for s in 0..self.k as u128 {
                let ext_c = (content << self.bits) | s;
                let mut ext_m = mask << 1;
                if completes && ext_c & self.pat_mask == self.pat_val {
                    ext_m |= self.occ_cover;
                }
                if leaving_required && (ext_m >> self.span) & 1 == 0 {
                    continue;
                }
                let nk = (ext_c & cmask) | ((ext_m & mmask) << shift);
                let slot = next.entry(nk).or_insert_with(C::zero);
                *slot = slot.checked_add(cnt).ok_or(Overflow)?;
            }
        }
        if next.len() > MAX_STATES {
            return Err(Error::ResourceLimit { nodes: meter.nodes, what: "profile state table", partial: None });
        }
        Ok(next)
    }

    fn finish<C: Tally>(&self, states: &FxHashMap<u128, C>) -> Result<C> {
        let n = self.cells();
        let mut need = 0u128;
        for age in 0..self.span.min(n) {
            if self.required[n - 1 - age] {
                need |= 1 << age;
            }
        }
        let shift = self.span * self.bits;
        let mut total = C::zero();
        for (&key, cnt) in states {
            if (key >> shift) & need == need {
                total = total.checked_add(cnt).ok_or(Overflow)?;
            }
        }
        Ok(total)
    }

    fn run<C: Tally>(&self, limits: Limits) -> Result<C> {
        let mut meter = Meter::new(limits, "profile sweep");
        let mut cur: FxHashMap<u128, C> = FxHashMap::default();
        cur.insert(0, C::one());
        let n = self.cells();
        let split = self.height.min(n);
        for i in 0..split {
            cur = self.step(i, &cur, &mut meter)?;
        }
        if limits.jobs <= 1 || cur.len() < 2 {
            for i in split..n {
                cur = self.step(i, &cur, &mut meter)?;
            }
            return self.finish(&cur);
        }
        // Distinct first columns evolve independently; sum the subtotals.
        let mut roots: Vec<(u128, C)> = cur.into_iter().collect();
        roots.sort_by_key(|(k, _)| *k);
        let chunk = roots.len().div_ceil(limits.jobs);
        let groups: Vec<FxHashMap<u128, C>> = roots.chunks(chunk).map(|c| c.iter().cloned().collect()).collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.jobs)
            .build()
            .map_err(|e| Error::PreconditionViolated(e.to_string()))?;
        let parts: Vec<Result<C>> = pool.install(|| {
            groups
                .into_par_iter()
                .map(|mut g| {
                    let mut meter = Meter::new(limits, "profile sweep");
                    for i in split..n {
                        g = self.step(i, &g, &mut meter)?;
                    }
                    self.finish(&g)
                })
                .collect()
        });
        let mut total = C::zero();
        for p in parts {
            total = total.checked_add(&p?).ok_or(Overflow)?;
        }
        Ok(total)
    }
}

#[derive(Debug)]
struct Overflow;

impl From<Overflow> for Error {
    fn from(_: Overflow) -> Self {
        Error::PreconditionViolated("count overflow".into())
    }
}

fn low_bits(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Counts the colorings of a `width × height` grid over `Σ(q)` in which every
/// cell with `required(x, y)` is covered by an occurrence of `q` inside the grid.
pub fn count_covered_colorings<F>(q: &Block, width: usize, height: usize, required: F, limits: Limits) -> Result<BigUint>
where
    F: Fn(usize, usize) -> bool,
{
    let (qw, qh) = (q.width() as usize, q.height() as usize);
    // Sweep along whichever axis keeps the profile shorter.
    let by_columns = (qw - 1) * height + qh <= (qh - 1) * width + qw;
    let (qq, gw, gh) = if by_columns { (q.clone(), width, height) } else { (q.transpose(), height, width) };
    let mut req = vec![false; width * height];
    for x in 0..gw {
        for y in 0..gh {
            let (ox, oy) = if by_columns { (x, y) } else { (y, x) };
            req[x * gh + y] = required(ox, oy);
        }
    }
    let sweep = Sweep::new(&qq, gw, gh, req)?;
    match sweep.run::<u128>(limits) {
        Ok(n) => Ok(n.into()),
        Err(Error::PreconditionViolated(m)) if m == "count overflow" => sweep.run::<BigUint>(limits),
        Err(e) => Err(e),
    }
}

/// Whether `(x, y)` is at least `w−1` columns and `h−1` rows from the edges.
pub fn is_interior(q: &Block, width: usize, height: usize, x: usize, y: usize) -> bool {
    let (qw, qh) = (q.width() as usize, q.height() as usize);
    x + 1 >= qw && x + qw <= width && y + 1 >= qh && y + qh <= height
}

pub fn count_loc_admissible(q: &Block, n: usize, limits: Limits) -> Result<BigUint> {
    count_loc_admissible_rect(q, n, n, limits)
}

pub fn count_loc_admissible_rect(q: &Block, width: usize, height: usize, limits: Limits) -> Result<BigUint> {
    count_covered_colorings(q, width, height, |x, y| is_interior(q, width, height, x, y), limits)
}

/// Geometry of the central-window count: the window sits inside the
/// required region inflated by `(2w, 2h)`, which sits inside the board
/// inflated by `(w−1, h−1)`.
#[derive(Clone, Copy, Debug)]
struct CentralFrame {
    k: usize,
    width: usize,
    height: usize,
    cx: usize,
    cy: usize,
    qw: usize,
    qh: usize,
}

impl CentralFrame {
    fn new(q: &Block, k: usize) -> Self {
        let (qw, qh) = (q.width() as usize, q.height() as usize);
        CentralFrame { k, width: k + 6 * qw - 2, height: k + 6 * qh - 2, cx: 3 * qw - 1, cy: 3 * qh - 1, qw, qh }
    }

    fn required(&self) -> Vec<bool> {
        let (x0, y0) = (self.qw - 1, self.qh - 1);
        let (x1, y1) = (self.width - self.qw + 1, self.height - self.qh + 1);
        let mut r = vec![false; self.width * self.height];
        for y in y0..y1 {
            for x in x0..x1 {
                r[y * self.width + x] = true;
            }
        }
        r
    }

    /// Board cells of the central window, column-major.
    fn window_cells(&self) -> Vec<usize> {
        (0..self.k)
            .flat_map(|x| (0..self.k).map(move |y| (self.cy + y) * self.width + self.cx + x))
            .collect()
    }
}

/// Enumerates the central windows, calling `visit` with each window's
/// symbols (column-major) in lexicographic order.
fn central_windows<F>(q: &Block, k: usize, limits: Limits, mut visit: F) -> Result<()>
where
    F: FnMut(&[u8]),
{
    let frame = CentralFrame::new(q, k);
    let board = Board::new(q, frame.width, frame.height);
    let required = frame.required();
    let cells = frame.window_cells();
    let mut meter = Meter::new(limits, "coverable central count");
    let mut prefix: Vec<u8> = Vec::with_capacity(cells.len());
    let mut witness: Option<Vec<u8>> = None;
    central_descend(&board, &required, &cells, &mut prefix, &mut witness, &mut meter, &mut visit)
}

fn central_descend<F>(
    board: &Board,
    required: &[bool],
    cells: &[usize],
    prefix: &mut Vec<u8>,
    witness: &mut Option<Vec<u8>>,
    meter: &mut Meter,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[u8]),
{
    if prefix.len() == cells.len() {
        visit(prefix);
        return Ok(());
    }
    for s in 0..board.alphabet.len() as u8 {
        prefix.push(s);
        let known = witness.as_ref().is_some_and(|w| w[..prefix.len()] == prefix[..]);
        let feasible = known || {
            let mut search = CoverSearch::new(board, required.to_vec());
            for (&c, &v) in cells.iter().zip(prefix.iter()) {
                search.fix(c, v);
            }
            match search.solve(meter)? {
                Some(sol) => {
                    let w: Vec<u8> = cells.iter().map(|&c| sol.grid[c]).collect();
                    debug_assert!(w.iter().all(|&v| v != UNSET));
                    *witness = Some(w);
                    true
                }
                None => false,
            }
        };
        if feasible {
            central_descend(board, required, cells, prefix, witness, meter, visit)?;
        }
        prefix.pop();
    }
    Ok(())
}

pub fn count_coverable_central(q: &Block, k: usize, limits: Limits) -> Result<BigUint> {
    let mut n = 0u64;
    central_windows(q, k, limits, |_| n += 1)?;
    Ok(n.into())
}

/// The distinct central windows themselves, sorted.
pub fn coverable_central_windows(q: &Block, k: usize, limits: Limits) -> Result<Vec<Block>> {
    let alphabet = q.alphabet();
    let mut out = Vec::new();
    central_windows(q, k, limits, |w| {
        let mut cells = vec![alphabet[0]; k * k];
        for x in 0..k {
            for y in 0..k {
                cells[y * k + x] = alphabet[w[x * k + y] as usize];
            }
        }
        out.push(Block::new(k as u32, k as u32, cells).unwrap());
    })?;
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CountKind {
    LocAdmissible,
    CoverableCentral,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountEntry {
    pub n: u32,
    #[serde(with = "decimal")]
    pub count: BigUint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountSeries {
    pub kind: CountKind,
    pub entries: Vec<CountEntry>,
    /// `(n, log2(count) / n²)`, labelled estimates of the entropy.
    pub estimates: Vec<(u32, f64)>,
    /// False when a resource cap stopped the series early.
    pub complete: bool,
}

impl CountSeries {
    pub fn count(&self, n: u32) -> Option<&BigUint> {
        self.entries.iter().find(|e| e.n == n).map(|e| &e.count)
    }

    pub fn strip_timings(&mut self) {
        for e in &mut self.entries {
            e.seconds = None;
        }
    }
}

pub fn log2_big(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().unwrap().log2()
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().unwrap().log2() + shift as f64
    }
}

/// Counts of the given kind for `n = 1..=n_max`, stopping at the first
/// resource cap.
pub fn count_series(q: &Block, kind: CountKind, n_max: u32, limits: Limits) -> CountSeries {
    let mut entries = Vec::new();
    let mut complete = true;
    for n in 1..=n_max {
        let start = Instant::now();
        let r = match kind {
            CountKind::LocAdmissible => count_loc_admissible(q, n as usize, limits),
            CountKind::CoverableCentral => count_coverable_central(q, n as usize, limits),
        };
        match r {
            Ok(count) => entries.push(CountEntry { n, count, seconds: Some(start.elapsed().as_secs_f64()) }),
            Err(_) => {
                complete = false;
                break;
            }
        }
    }
    let estimates = entries.iter().map(|e| (e.n, log2_big(&e.count) / (e.n as f64 * e.n as f64))).collect();
    CountSeries { kind, entries, estimates, complete }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundName {
    UK,
    VN,
    #[serde(rename = "POW2_UT")]
    Pow2Ut,
    Submultiplicativity,
    SurrogateOrdering,
}

/// A measured count compared against a formula. `holds` means `lhs ≤ rhs`
/// for upper bounds and `lhs ≥ rhs` for the lower bound `POW2_UT`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: BoundName,
    pub parameters: BTreeMap<String, String>,
    #[serde(with = "decimal")]
    pub lhs: BigUint,
    #[serde(with = "decimal")]
    pub rhs: BigUint,
    pub holds: bool,
}

impl fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let rel = if self.name == BoundName::Pow2Ut { ">=" } else { "<=" };
        write!(
            f,
            "{:?}({}): {} {} {} {}",
            self.name,
            params.join(", "),
            self.lhs,
            rel,
            self.rhs,
            if self.holds { "holds" } else { "FAILS" }
        )
    }
}

fn params<const N: usize>(items: [(&str, String); N]) -> BTreeMap<String, String> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// `(2k+1)² · (wh)^{2k+1}`.
pub fn uk_rhs(q: &Block, k: u32) -> BigUint {
    let s = BigUint::from(2 * k + 1);
    &s * &s * BigUint::from(q.area()).pow(2 * k + 1)
}

/// `(n + 2|q|)² · |q|^{4n}` with `|q| = wh`.
pub fn vn_rhs(q: &Block, n: u32) -> BigUint {
    let a = q.area();
    let s = BigUint::from(n + 2 * a);
    &s * &s * BigUint::from(a).pow(4 * n)
}

/// `u_t = (t/(3w) − 2)(t/(3h) − 2)`, each factor floored at 0.
pub fn u_t(q: &Block, t: u32) -> Rational {
    let (w, h) = (q.width() as u64, q.height() as u64);
    let t = t as u64;
    if t <= 6 * w || t <= 6 * h {
        return Rational::new(0, 1);
    }
    Rational::new((t - 6 * w) * (t - 6 * h), 9 * w * h)
}

/// Smallest integer `m` with `m ≥ 2^u`.
pub fn ceil_pow2(u: Rational) -> BigUint {
    let (p, d) = (u.numer(), u.denom());
    let target = BigUint::one() << p;
    // m^d ≥ 2^p; m lies in [1, 2^ceil(p/d)].
    let (mut lo, mut hi) = (BigUint::one(), BigUint::one() << p.div_ceil(d));
    while lo < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if mid.pow(d as u32) >= target {
            hi = mid;
        } else {
            lo = mid + 1u32;
        }
    }
    lo
}

/// Checks the count of central windows against `u_k` for a primitive block
/// failing condition (*).
pub fn check_uk_bound(q: &Block, k: u32, limits: Limits) -> Result<BoundCheck> {
    if !is_primitive(q) {
        return Err(Error::PreconditionViolated(format!("{q} is not primitive")));
    }
    if let Some(w) = condition_star(q) {
        return Err(Error::PreconditionViolated(format!("{q} satisfies condition (*): {w}")));
    }
    Ok(uk_check(q, k, count_coverable_central(q, k as usize, limits)?))
}

/// The `u_k` comparison for an already computed central count.
pub fn uk_check(q: &Block, k: u32, central: BigUint) -> BoundCheck {
    let rhs = uk_rhs(q, k);
    BoundCheck { name: BoundName::UK, parameters: params([("k", k.to_string())]), holds: central <= rhs, lhs: central, rhs }
}

/// Checks the count of central windows against `v_n`. The pair search must
/// have ruled out interchangeable pairs in a window of at least
/// `(n + 4w) × (n + 4h)`.
pub fn check_vn_bound(q: &Block, n: u32, search: &PairSearchReport, limits: Limits) -> Result<BoundCheck> {
    let need = (n + 4 * q.width(), n + 4 * q.height());
    if search.outcome != SearchOutcome::Exhausted {
        return Err(Error::PreconditionViolated(format!(
            "pair search outcome is {:?}, not an exhausted search",
            search.outcome
        )));
    }
    if search.window.0 < need.0 || search.window.1 < need.1 {
        return Err(Error::PreconditionViolated(format!(
            "pair search window {}x{} is smaller than {}x{}",
            search.window.0, search.window.1, need.0, need.1
        )));
    }
    let lhs = count_coverable_central(q, n as usize, limits)?;
    let rhs = vn_rhs(q, n);
    Ok(BoundCheck { name: BoundName::VN, parameters: params([("n", n.to_string())]), holds: lhs <= rhs, lhs, rhs })
}

/// Compares a locally admissible count against `2^{u_t}`.
pub fn check_ut_bound(q: &Block, t: u32, limits: Limits) -> Result<BoundCheck> {
    Ok(ut_check(q, t, count_loc_admissible(q, t as usize, limits)?))
}

/// The `2^{u_t}` comparison for an already computed count.
pub fn ut_check(q: &Block, t: u32, loc: BigUint) -> BoundCheck {
    let u = u_t(q, t);
    let rhs = ceil_pow2(u);
    BoundCheck {
        name: BoundName::Pow2Ut,
        parameters: params([("t", t.to_string()), ("u_t", u.to_string())]),
        holds: loc >= rhs,
        lhs: loc,
        rhs,
    }
}

/// `count(n × n) ≤ count(a × n) · count((n−a) × n)` for every split `a ≤ n−a`.
pub fn check_submultiplicativity(q: &Block, n: u32, limits: Limits) -> Result<Vec<BoundCheck>> {
    let whole = count_loc_admissible(q, n as usize, limits)?;
    let mut out = Vec::new();
    for a in 1..=n / 2 {
        let left = count_loc_admissible_rect(q, a as usize, n as usize, limits)?;
        let right = count_loc_admissible_rect(q, (n - a) as usize, n as usize, limits)?;
        let rhs = left * right;
        out.push(BoundCheck {
            name: BoundName::Submultiplicativity,
            parameters: params([("n", n.to_string()), ("split", a.to_string())]),
            holds: whole <= rhs,
            lhs: whole.clone(),
            rhs,
        });
    }
    Ok(out)
}

pub fn check_surrogate_ordering(k: u32, central: &BigUint, loc: &BigUint) -> BoundCheck {
    BoundCheck {
        name: BoundName::SurrogateOrdering,
        parameters: params([("k", k.to_string())]),
        lhs: central.clone(),
        rhs: loc.clone(),
        holds: central <= loc,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub loc: CountSeries,
    pub central: CountSeries,
    /// Latest `log2(count)/n²` of the locally admissible series.
    pub upper_indicator: Option<f64>,
    pub lower_bound: Option<Rational>,
    pub checks: Vec<BoundCheck>,
    pub notes: Vec<String>,
}

pub fn estimate_entropy(q: &Block, n_max: u32, limits: Limits) -> EntropyEstimate {
    let loc = count_series(q, CountKind::LocAdmissible, n_max, limits);
    let central = count_series(q, CountKind::CoverableCentral, n_max, limits);
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for e in &central.entries {
        if let Some(l) = loc.count(e.n) {
            checks.push(check_surrogate_ordering(e.n, &e.count, l));
        }
    }
    for e in loc.entries.iter().filter(|e| e.n >= 2) {
        match check_submultiplicativity(q, e.n, limits) {
            Ok(c) => checks.extend(c),
            Err(_) => {
                notes.push(format!("submultiplicativity checks stopped at n = {}", e.n));
                break;
            }
        }
    }
    let report = classify(q);
    if report.primitive && report.verdict == Verdict::ZeroEntropy {
        for e in &central.entries {
            checks.push(uk_check(q, e.n, e.count.clone()));
        }
    }
    if report.primitive && report.verdict == Verdict::PositiveEntropy {
        for e in &loc.entries {
            checks.push(ut_check(q, e.n, e.count.clone()));
        }
    }
    if !loc.complete {
        notes.push(format!("locally admissible series INCOMPLETE after n = {}", loc.entries.len()));
    }
    if !central.complete {
        notes.push(format!("coverable central series INCOMPLETE after n = {}", central.entries.len()));
    }
    notes.push("estimates are normalized logarithms of surrogate counts, not entropy values".into());
    EntropyEstimate {
        upper_indicator: loc.estimates.last().map(|&(_, v)| v),
        lower_bound: report.entropy_lower_bound,
        loc,
        central,
        checks,
        notes,
    }
}

//! Interchangeable pairs: two different `q`-coverable patterns on the same
//! domain.
//!
//! A pair is either built from a witness of the sufficient condition or
//! found by an exhaustive search inside a bounded window. A constructed pair
//! tiles the plane along a lattice, and swapping copies independently yields
//! exponentially many patterns, which gives the entropy certificate.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::analysis::{borders, theorem3_candidates, Theorem3Variant, Theorem3Witness};
use crate::cover::is_coverable;
use crate::engine::{Limits, Meter};
use crate::error::{Error, Result};
use crate::grid::{occurs_at, Block, Cell, Domain, Fragment, Placement, Rect};
use crate::rational::Rational;
use crate::sft::compile_predicate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Constructed(Theorem3Witness),
    Searched { window: (u32, u32) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterchangeablePair {
    pub p1: Fragment,
    pub p2: Fragment,
    pub placements1: Vec<Placement>,
    pub placements2: Vec<Placement>,
    pub domain: Domain,
    /// Cells where the two patterns differ.
    pub swap_region: Domain,
    pub provenance: Provenance,
}

impl InterchangeablePair {
    fn assemble(q: &Block, mut pl1: Vec<Placement>, mut pl2: Vec<Placement>, provenance: Provenance) -> Result<Self> {
        let all: Domain = pl1.iter().chain(&pl2).flat_map(|p| p.rect().cells()).collect();
        let o = all.bounding_box().map(|r| r.origin()).unwrap_or_default();
        let shift = Cell::ORIGIN - o;
        for p in pl1.iter_mut().chain(pl2.iter_mut()) {
            *p = p.translate(shift);
        }
        pl1.sort();
        pl2.sort();
        let p1 = Fragment::from_placements(q, &pl1)
            .map_err(|e| Error::ConstructionInconsistent(format!("first pattern: {e}")))?;
        let p2 = Fragment::from_placements(q, &pl2)
            .map_err(|e| Error::ConstructionInconsistent(format!("second pattern: {e}")))?;
        let domain = p1.domain();
        if domain != p2.domain() {
            return Err(Error::ConstructionInconsistent("the two patterns have different domains".into()));
        }
        if p1 == p2 {
            return Err(Error::NotPrimitive);
        }
        let swap_region = p1.cells().filter(|&(c, s)| p2.get(c) != Some(s)).map(|(c, _)| c).collect();
        let pair = InterchangeablePair { p1, p2, placements1: pl1, placements2: pl2, domain, swap_region, provenance };
        for (f, pl) in [(&pair.p1, &pair.placements1), (&pair.p2, &pair.placements2)] {
            if let Some(p) = pl.iter().find(|p| !occurs_at(q, f, p.position)) {
                return Err(Error::ConstructionInconsistent(format!("placement at {} does not match", p.position)));
            }
        }
        verify_pair(q, &pair).map_err(|e| Error::ConstructionInconsistent(e.to_string()))?;
        Ok(pair)
    }

    pub fn bounding_box(&self) -> Rect {
        self.p1.bounding_box()
    }
}

impl fmt::Display for InterchangeablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.p1.to_string(), self.p2.to_string());
        for (l, r) in a.lines().zip(b.lines()) {
            writeln!(f, "{l}   {r}")?;
        }
        Ok(())
    }
}

/// Independent re-check of a pair: same domain, different contents, and both
/// patterns covered by their own occurrences of `q`.
pub fn verify_pair(q: &Block, pair: &InterchangeablePair) -> Result<()> {
    if pair.p1.domain() != pair.p2.domain() {
        return Err(Error::WitnessInvalid("domains differ".into()));
    }
    if pair.p1 == pair.p2 {
        return Err(Error::WitnessInvalid("patterns are equal".into()));
    }
    for (name, f) in [("first", &pair.p1), ("second", &pair.p2)] {
        if is_coverable(q, f).is_none() {
            return Err(Error::WitnessInvalid(format!("{name} pattern is not coverable")));
        }
    }
    Ok(())
}

/// Maps the normalized construction frame back to the frame of `q`.
#[derive(Clone, Copy, Debug)]
struct FrameMap {
    mirrored: bool,
    transposed: bool,
    /// Width of the frame block.
    fw: i32,
    fh: i32,
}

impl FrameMap {
    fn new(q: &Block, wit: &Theorem3Witness) -> Self {
        let transposed = wit.variant == Theorem3Variant::Horizontal;
        let (fw, fh) = if transposed { (q.height(), q.width()) } else { q.dims() };
        FrameMap { mirrored: wit.mirrored, transposed, fw: fw as i32, fh: fh as i32 }
    }

    fn vector(&self, v: Cell) -> Cell {
        let v = if self.mirrored { Cell::new(-v.x, v.y) } else { v };
        if self.transposed {
            Cell::new(v.y, v.x)
        } else {
            v
        }
    }

    fn rect(&self, r: Rect) -> Rect {
        let a = self.vector(r.origin());
        let b = self.vector(Cell::new(r.right() - 1, r.top() - 1));
        let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
        let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
        Rect::new(x0, y0, (x1 - x0 + 1) as u32, (y1 - y0 + 1) as u32)
    }

    fn placement(&self, pos: Cell) -> Placement {
        let r = self.rect(Rect::new(pos.x, pos.y, self.fw as u32, self.fh as u32));
        Placement { position: r.origin(), width: r.width, height: r.height }
    }
}

/// Frame positions of the seven placements of the first pattern. The second
/// pattern moves the centre copy one column to the right of the overlap.
fn frame_positions(wit: &Theorem3Witness, q: &Block) -> (Vec<Cell>, Vec<Cell>) {
    let d = wit.frame_dims(q);
    let (w, h, c, h1, h2) = (d.w as i32, d.h as i32, d.c as i32, d.h1 as i32, d.h2 as i32);
    let p1 = vec![
        Cell::new(w - c, 0),
        Cell::new(w - c, h),
        Cell::new(w - c, 2 * h),
        Cell::new(0, h2),
        Cell::new(0, h2 + h),
        Cell::new(2 * w - c, h1),
        Cell::new(2 * w - c, h1 + h),
    ];
    let mut p2 = p1.clone();
    p2[1] = Cell::new(w, h);
    (p1, p2)
}

/// Builds the interchangeable pair of a sufficient-condition witness and
/// checks it at runtime: each pattern is consistent, both share a domain,
/// they differ, and both are covered.
pub fn construct_pair(q: &Block, wit: &Theorem3Witness) -> Result<InterchangeablePair> {
    let map = FrameMap::new(q, wit);
    let (f1, f2) = frame_positions(wit, q);
    let pl1 = f1.into_iter().map(|p| map.placement(p)).collect();
    let pl2 = f2.into_iter().map(|p| map.placement(p)).collect();
    InterchangeablePair::assemble(q, pl1, pl2, Provenance::Constructed(wit.clone()))
}

/// Tries every witness of the sufficient condition, best first, and returns
/// the first pair passing its runtime checks together with the number of
/// witnesses that failed before it. Fails with the first witness's error.
pub fn construct_pair_any(q: &Block) -> Result<(InterchangeablePair, usize)> {
    let mut first_err = None;
    for (i, wit) in theorem3_candidates(q, &borders(q)).iter().enumerate() {
        match construct_pair(q, wit) {
            Ok(pair) => return Ok((pair, i)),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap_or_else(|| Error::PreconditionViolated("the sufficient condition fails".into())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchOutcome {
    Found,
    Exhausted,
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSearchReport {
    pub outcome: SearchOutcome,
    pub window: (u32, u32),
    pub nodes: u64,
    pub pair: Option<InterchangeablePair>,
}

/// Two partial patterns grown around the first cell where they differ.
struct Closure<'a> {
    q: &'a Block,
    window: (i32, i32),
    layers: [FxHashMap<Cell, (char, u32)>; 2],
    /// Cells of the other layer's domain missing from this layer.
    pending: [BTreeSet<Cell>; 2],
    chosen: [Vec<Cell>; 2],
}

/// Cells strictly before the origin in row-major order must agree.
fn before_origin(c: Cell) -> bool {
    (c.y, c.x) < (0, 0)
}

impl<'a> Closure<'a> {
    fn new(q: &'a Block, window: (u32, u32)) -> Self {
        Closure {
            q,
            window: (window.0 as i32, window.1 as i32),
            layers: [FxHashMap::default(), FxHashMap::default()],
            pending: [BTreeSet::new(), BTreeSet::new()],
            chosen: [Vec::new(), Vec::new()],
        }
    }

    fn bbox(&self) -> Option<(Cell, Cell)> {
        let mut it = self.layers.iter().flat_map(|l| l.keys());
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), c| {
            (Cell::new(lo.x.min(c.x), lo.y.min(c.y)), Cell::new(hi.x.max(c.x), hi.y.max(c.y)))
        }))
    }

    fn fits(&self, pos: Cell, bbox: Option<(Cell, Cell)>) -> bool {
        let (qw, qh) = (self.q.width() as i32, self.q.height() as i32);
        let (mut lo, mut hi) = (pos, Cell::new(pos.x + qw - 1, pos.y + qh - 1));
        if let Some((a, b)) = bbox {
            lo = Cell::new(lo.x.min(a.x), lo.y.min(a.y));
            hi = Cell::new(hi.x.max(b.x), hi.y.max(b.y));
        }
        hi.x - lo.x < self.window.0 && hi.y - lo.y < self.window.1
    }

    fn consistent(&self, layer: usize, pos: Cell) -> bool {
        let other = 1 - layer;
        Placement::of(self.q, pos).rect().cells().all(|c| {
            let s = self.q.get(c.x - pos.x, c.y - pos.y);
            self.layers[layer].get(&c).is_none_or(|&(t, _)| t == s)
                && (!before_origin(c) || self.layers[other].get(&c).is_none_or(|&(t, _)| t == s))
        })
    }

    fn add(&mut self, layer: usize, pos: Cell) {
        let other = 1 - layer;
        for c in Placement::of(self.q, pos).rect().cells() {
            let s = self.q.get(c.x - pos.x, c.y - pos.y);
            let e = self.layers[layer].entry(c).or_insert((s, 0));
            e.1 += 1;
            if e.1 == 1 && !self.pending[layer].remove(&c) {
                self.pending[other].insert(c);
            }
        }
        self.chosen[layer].push(pos);
    }

    fn remove(&mut self, layer: usize, pos: Cell) {
        let other = 1 - layer;
        for c in Placement::of(self.q, pos).rect().cells() {
            let e = self.layers[layer].get_mut(&c).unwrap();
            e.1 -= 1;
            if e.1 == 0 {
                self.layers[layer].remove(&c);
                if !self.pending[other].remove(&c) {
                    self.pending[layer].insert(c);
                }
            }
        }
        self.chosen[layer].pop();
    }

    fn options(&self, layer: usize, c: Cell, bbox: Option<(Cell, Cell)>) -> Vec<Cell> {
        let (qw, qh) = (self.q.width() as i32, self.q.height() as i32);
        let mut out = Vec::new();
        for dx in 0..qw {
            for dy in 0..qh {
                let pos = Cell::new(c.x - dx, c.y - dy);
                if self.fits(pos, bbox) && self.consistent(layer, pos) {
                    out.push(pos);
                }
            }
        }
        out.sort();
        out
    }

    fn descend(&mut self, meter: &mut Meter) -> Result<bool> {
        let bbox = self.bbox();
        let mut best: Option<(usize, Cell, Vec<Cell>)> = None;
        for layer in 0..2 {
            for &c in &self.pending[layer] {
                let opts = self.options(layer, c, bbox);
                if best.as_ref().is_none_or(|(_, _, b)| opts.len() < b.len()) {
                    let done = opts.is_empty();
                    best = Some((layer, c, opts));
                    if done {
                        return Ok(false);
                    }
                }
            }
        }
        let Some((layer, _, opts)) = best else {
            return Ok(true);
        };
        for pos in opts {
            meter.tick()?;
            self.add(layer, pos);
            if self.descend(meter)? {
                return Ok(true);
            }
            self.remove(layer, pos);
        }
        Ok(false)
    }
}

/// Searches for an interchangeable pair whose bounding box fits in an
/// `R × S` window. The two patterns are grown from the first cell (in
/// row-major order) where they differ, adding occurrences until both have
/// the same domain. The search is complete: `Exhausted` certifies that no
/// pair fits the window.
pub fn search_pairs(q: &Block, window: (u32, u32), limits: Limits) -> PairSearchReport {
    let mut meter = Meter::new(limits, "pair search");
    let mut st = Closure::new(q, window);
    let (qw, qh) = (q.width() as i32, q.height() as i32);
    let offsets: Vec<Cell> = (0..qh).flat_map(|y| (0..qw).map(move |x| Cell::new(x, y))).collect();
    let report = |outcome, nodes, pair| PairSearchReport { outcome, window, nodes, pair };
    if window.0 < q.width() || window.1 < q.height() {
        return report(SearchOutcome::Exhausted, 0, None);
    }
    for &o0 in &offsets {
        for &o1 in &offsets {
            let (s0, s1) = (q.get(o0.x, o0.y), q.get(o1.x, o1.y));
            if s0 >= s1 {
                continue;
            }
            let (a, b) = (Cell::ORIGIN - o0, Cell::ORIGIN - o1);
            if !st.fits(b, Some((a, Cell::new(a.x + qw - 1, a.y + qh - 1)))) {
                continue;
            }
            st.add(0, a);
            if !st.consistent(1, b) {
                st.remove(0, a);
                continue;
            }
            st.add(1, b);
            let found = match meter.tick().and_then(|_| st.descend(&mut meter)) {
                Ok(f) => f,
                Err(_) => return report(SearchOutcome::Budget, meter.nodes, None),
            };
            if found {
                let pl = |v: &Vec<Cell>| v.iter().map(|&p| Placement::of(q, p)).collect::<Vec<_>>();
                let provenance = Provenance::Searched { window };
                let pair = InterchangeablePair::assemble(q, pl(&st.chosen[0]), pl(&st.chosen[1]), provenance)
                    .expect("closure search yields a valid pair");
                return report(SearchOutcome::Found, meter.nodes, Some(pair));
            }
            st.remove(1, b);
            st.remove(0, a);
        }
    }
    report(SearchOutcome::Exhausted, meter.nodes, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessChecks {
    /// Lattice translates of the first pattern agree wherever they overlap.
    pub consistent: bool,
    /// The translates cover the fundamental window, hence the plane.
    pub covers_plane: bool,
    /// The `k × ℓ` rectangles anchored at the lattice points cover the plane
    /// and each holds a full translate.
    pub rects_cover: bool,
    /// Every `k × ℓ` rectangle, anchored anywhere, holds a full translate.
    pub every_window_contains_translate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicWitness {
    pub lattice: [Cell; 2],
    pub placements: Vec<Placement>,
    pub fundamental_window: Rect,
    pub rect_size: (u32, u32),
    pub pair: InterchangeablePair,
    pub checks: WitnessChecks,
    pub notes: Vec<String>,
}

impl PeriodicWitness {
    /// Lattice points `L` for which `reach + L` meets `region`.
    pub fn lattice_points(&self, region: Rect, reach: Rect) -> Vec<Cell> {
        let [v1, v2] = self.lattice;
        let det = (v1.x as i64 * v2.y as i64 - v1.y as i64 * v2.x as i64) as f64;
        let lo = Cell::new(region.x - reach.right() + 1, region.y - reach.top() + 1);
        let hi = Cell::new(region.right() - 1 - reach.x, region.top() - 1 - reach.y);
        let corners = [lo, hi, Cell::new(lo.x, hi.y), Cell::new(hi.x, lo.y)];
        let coords: Vec<(f64, f64)> = corners
            .iter()
            .map(|c| {
                let (x, y) = (c.x as f64, c.y as f64);
                ((x * v2.y as f64 - y * v2.x as f64) / det, (v1.x as f64 * y - v1.y as f64 * x) / det)
            })
            .collect();
        let (i0, i1) = bounds(coords.iter().map(|c| c.0));
        let (j0, j1) = bounds(coords.iter().map(|c| c.1));
        let mut out = Vec::new();
        for i in i0..=i1 {
            for j in j0..=j1 {
                let l = Cell::new(i * v1.x + j * v2.x, i * v1.y + j * v2.y);
                if reach.translate(l).intersects(&region) {
                    out.push(l);
                }
            }
        }
        out.sort();
        out
    }

    fn translates_near(&self, region: Rect) -> Vec<Cell> {
        self.lattice_points(region, self.pair.p1.bounding_box())
    }

    /// The periodic configuration on `region`, with the second pattern
    /// substituted at the swapped lattice points.
    pub fn render(&self, region: Rect, swapped: &HashSet<Cell>) -> Block {
        let near = self.translates_near(region);
        let mut cells = Vec::with_capacity(region.area() as usize);
        for c in region.cells() {
            let mut sym = None;
            for &l in &near {
                let local = c - l;
                if swapped.contains(&l) && self.pair.swap_region.contains(local) {
                    sym = self.pair.p2.get(local);
                    break;
                }
                if sym.is_none() {
                    sym = self.pair.p1.get(local);
                }
            }
            cells.push(sym.expect("translates cover the plane"));
        }
        Block::new(region.width, region.height, cells).expect("nonempty region")
    }
}

fn bounds(it: impl Iterator<Item = f64>) -> (i32, i32) {
    let v: Vec<f64> = it.collect();
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min).floor() as i32 - 1;
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() as i32 + 1;
    (lo, hi)
}

/// Tiles the plane with the first pattern of a constructed pair and checks
/// the tiling at runtime.
///
/// In the construction frame the lattice is spanned by `(2w − c, h1 − h2)`,
/// which sends the left column of copies onto the right one, and `(0, 2h)`.
pub fn build_periodic_witness(q: &Block, pair: &InterchangeablePair) -> Result<PeriodicWitness> {
    let Provenance::Constructed(wit) = &pair.provenance else {
        return Err(Error::PreconditionViolated("periodic witnesses need a constructed pair".into()));
    };
    let map = FrameMap::new(q, wit);
    let d = wit.frame_dims(q);
    let (w, h, c) = (d.w as i32, d.h as i32, d.c as i32);
    let lattice = [map.vector(Cell::new(2 * w - c, d.h1 as i32 - d.h2 as i32)), map.vector(Cell::new(0, 2 * h))];
    // The frame's fundamental window starts at the frame origin of the first pattern.
    let (f1, _) = frame_positions(wit, q);
    let frame_p1: Vec<Placement> = f1.iter().map(|&p| map.placement(p)).collect();
    let mapped_origin = frame_p1
        .iter()
        .chain(&frame_positions(wit, q).1.iter().map(|&p| map.placement(p)).collect::<Vec<_>>())
        .flat_map(|p| p.rect().cells())
        .collect::<Domain>()
        .bounding_box()
        .unwrap()
        .origin();
    let fundamental_window =
        map.rect(Rect::new(0, 0, (2 * w - c) as u32, (2 * h) as u32)).translate(Cell::ORIGIN - mapped_origin);
    let rect_size = (3 * q.width(), 3 * q.height());
    let mut witness = PeriodicWitness {
        lattice,
        placements: pair.placements1.clone(),
        fundamental_window,
        rect_size,
        pair: pair.clone(),
        checks: WitnessChecks {
            consistent: false,
            covers_plane: false,
            rects_cover: false,
            every_window_contains_translate: false,
        },
        notes: Vec::new(),
    };
    let p1 = &pair.p1;
    let bbox = p1.bounding_box();

    witness.checks.consistent = witness
        .translates_near(bbox)
        .into_iter()
        .filter(|&l| l != Cell::ORIGIN)
        .all(|l| p1.cells().all(|(cell, s)| p1.get(cell - l).is_none_or(|t| t == s)));

    let near = witness.translates_near(fundamental_window);
    witness.checks.covers_plane =
        fundamental_window.cells().all(|cell| near.iter().any(|&l| p1.contains(cell - l)));

    let rect0 = Rect::new(bbox.x, bbox.y, rect_size.0, rect_size.1);
    let rect_points = witness.lattice_points(fundamental_window, rect0);
    witness.checks.rects_cover = rect0.contains_rect(&bbox)
        && fundamental_window.cells().all(|cell| rect_points.iter().any(|&l| rect0.translate(l).contains(cell)));

    witness.checks.every_window_contains_translate = fundamental_window.cells().all(|anchor| {
        let win = Rect::new(anchor.x, anchor.y, rect_size.0, rect_size.1);
        witness.lattice_points(win, bbox).iter().any(|&l| win.contains_rect(&bbox.translate(l)))
    });

    if !witness.checks.every_window_contains_translate {
        witness.notes.push(format!(
            "some {}x{} windows hold no full translate of the pattern; the rectangles anchored at lattice points do",
            rect_size.0, rect_size.1
        ));
    }
    let failed: Vec<&str> = [
        ("translates disagree on an overlap", witness.checks.consistent),
        ("translates leave a cell uncovered", witness.checks.covers_plane),
        ("anchored rectangles fail to cover the plane", witness.checks.rects_cover),
    ]
    .into_iter()
    .filter(|(_, ok)| !ok)
    .map(|(m, _)| m)
    .collect();
    if !failed.is_empty() {
        return Err(Error::WitnessInvalid(failed.join("; ")));
    }
    Ok(witness)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntropyCertificate {
    pub bound: Rational,
    /// `1/(bbox area)` of the pair, which the tiling also supports.
    pub tighter_bound: Rational,
    pub rect_size: (u32, u32),
}

pub fn entropy_lower_bound(witness: &PeriodicWitness) -> EntropyCertificate {
    let (k, l) = witness.rect_size;
    let b = witness.pair.bounding_box();
    EntropyCertificate {
        bound: Rational::recip_of(k as u64 * l as u64),
        tighter_bound: Rational::recip_of(b.area()),
        rect_size: witness.rect_size,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SwapMethod {
    /// Every subset of sites rendered and compared.
    BruteForce,
    /// Sites are pairwise disjoint, so distinct subsets give distinct patterns.
    Disjoint,
    /// Too many overlapping sites; `distinct_patterns` is the lower bound `2^{s′}`.
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapReport {
    pub t: u32,
    /// Lattice points whose swap region lies inside the window.
    pub sites: usize,
    /// Size of a greedily chosen family of pairwise-disjoint sites.
    pub disjoint_sites: usize,
    #[serde(with = "crate::counting::decimal")]
    pub distinct_patterns: BigUint,
    pub method: SwapMethod,
    /// `distinct_patterns == 2^sites`.
    pub independent: bool,
    /// Rendered patterns passing the local admissibility test, when rendered.
    pub admissible_renders: Option<usize>,
}

const BRUTE_FORCE_SITES: usize = 20;

/// Counts the distinct `t × t` patterns obtained by swapping the pair at any
/// subset of the lattice points whose swap region lies in the window
/// `[0, t)²`.
pub fn swap_enumeration(q: &Block, witness: &PeriodicWitness, t: u32) -> SwapReport {
    let window = Rect::new(0, 0, t, t);
    let region = witness.pair.swap_region.bounding_box().expect("pairs differ somewhere");
    let sites: Vec<Cell> = witness
        .lattice_points(window, region)
        .into_iter()
        .filter(|&l| witness.pair.swap_region.iter().all(|c| window.contains(c + l)))
        .collect();
    let s = sites.len();
    let mut taken: HashSet<Cell> = HashSet::new();
    let mut disjoint = 0;
    let mut pairwise_disjoint = true;
    for &l in &sites {
        let cells: Vec<Cell> = witness.pair.swap_region.iter().map(|c| c + l).collect();
        if cells.iter().all(|c| !taken.contains(c)) {
            disjoint += 1;
        } else {
            pairwise_disjoint = false;
        }
        taken.extend(cells);
    }
    let pow = |n: usize| BigUint::from(1u32) << n;
    if s <= BRUTE_FORCE_SITES {
        let checker = compile_predicate(q).checker().ok();
        let alphabet = q.alphabet();
        let mut seen: HashSet<Block> = HashSet::new();
        let mut admissible = 0usize;
        for mask in 0u64..(1u64 << s) {
            let swapped: HashSet<Cell> = (0..s).filter(|i| mask >> i & 1 == 1).map(|i| sites[i]).collect();
            let b = witness.render(window, &swapped);
            if let Some(ch) = &checker {
                let grid: Vec<u8> =
                    b.symbols().iter().map(|x| alphabet.binary_search(x).unwrap() as u8).collect();
                if ch.interior_covered(&grid, t as usize, t as usize) {
                    admissible += 1;
                }
            }
            seen.insert(b);
        }
        let n = BigUint::from(seen.len());
        return SwapReport {
            t,
            sites: s,
            disjoint_sites: disjoint,
            independent: n == pow(s),
            distinct_patterns: n,
            method: SwapMethod::BruteForce,
            admissible_renders: checker.map(|_| admissible),
        };
    }
    let (n, method) = if pairwise_disjoint { (pow(s), SwapMethod::Disjoint) } else { (pow(disjoint), SwapMethod::LowerBound) };
    SwapReport {
        t,
        sites: s,
        disjoint_sites: disjoint,
        independent: n == pow(s),
        distinct_patterns: n,
        method,
        admissible_renders: None,
    }
}

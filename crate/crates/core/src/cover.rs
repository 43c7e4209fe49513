//! Coverability, the rightmost-topmost occurrence map ρ, and a checker for
//! the local determinism of ρ on blocks failing condition (*).

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{condition_star, is_primitive};
use crate::engine::{Board, ColoringSearch, CoverSearch, Limits, Meter};
use crate::error::{Error, Result};
use crate::grid::{occurs_at, Block, Cell, Domain, Fragment, Placement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub placements: Vec<Placement>,
    pub covered: Domain,
}

/// Every position where `q` occurs in `f`, ordered by `(x, y)`.
pub fn all_occurrences(q: &Block, f: &Fragment) -> Vec<Placement> {
    let r = f.bounding_box();
    if r.width < q.width() || r.height < q.height() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for x in r.x..=r.right() - q.width() as i32 {
        for y in r.y..=r.top() - q.height() as i32 {
            let p = Cell::new(x, y);
            if occurs_at(q, f, p) {
                out.push(Placement::of(q, p));
            }
        }
    }
    out
}

fn union_of(placements: &[Placement]) -> Domain {
    placements.iter().flat_map(|p| p.rect().cells()).collect()
}

/// The maximal cover of `f`, when it covers the whole domain.
pub fn is_coverable(q: &Block, f: &Fragment) -> Option<CoverWitness> {
    let placements = all_occurrences(q, f);
    let covered = union_of(&placements);
    (covered == f.domain()).then_some(CoverWitness { placements, covered })
}

pub fn uncovered_cells(q: &Block, f: &Fragment) -> Domain {
    f.domain().difference(&union_of(&all_occurrences(q, f)))
}

/// For each covered cell, the occurrence with the largest `x`, ties broken
/// by the largest `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoMap {
    pub assignment: BTreeMap<Cell, Placement>,
}

impl RhoMap {
    pub fn get(&self, c: Cell) -> Option<&Placement> {
        self.assignment.get(&c)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Occurrences bucketed by position for constant-time lookups.
struct OccurrenceIndex {
    qw: i32,
    qh: i32,
    at: std::collections::HashSet<Cell>,
}

impl OccurrenceIndex {
    fn new(q: &Block, f: &Fragment) -> Self {
        let at = all_occurrences(q, f).into_iter().map(|p| p.position).collect();
        OccurrenceIndex { qw: q.width() as i32, qh: q.height() as i32, at }
    }

    /// Positions of occurrences covering `c`, largest `x` first, then largest `y`.
    fn covering(&self, c: Cell) -> impl Iterator<Item = Cell> + '_ {
        (0..self.qw).flat_map(move |dx| (0..self.qh).map(move |dy| Cell::new(c.x - dx, c.y - dy)))
            .filter(|p| self.at.contains(p))
    }

    fn rho(&self, c: Cell) -> Option<Cell> {
        self.covering(c).next()
    }

    /// Number of covering occurrences sharing the largest `x`.
    fn rightmost_count(&self, c: Cell) -> usize {
        let mut it = self.covering(c);
        let Some(first) = it.next() else { return 0 };
        1 + it.take_while(|p| p.x == first.x).count()
    }
}

/// ρ on the covered cells of `f`.
pub fn rho(q: &Block, f: &Fragment) -> RhoMap {
    let idx = OccurrenceIndex::new(q, f);
    let assignment =
        f.cells().filter_map(|(c, _)| idx.rho(c).map(|p| (c, Placement::of(q, p)))).collect();
    RhoMap { assignment }
}

/// ρ on every cell of `f`; fails on the first uncovered cell.
pub fn rho_total(q: &Block, f: &Fragment) -> Result<RhoMap> {
    let m = rho(q, f);
    if let Some((c, _)) = f.cells().find(|(c, _)| m.get(*c).is_none()) {
        return Err(Error::NotCovered(c));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub cell: Cell,
    pub rho: Cell,
    pub rho_left: Cell,
    pub rho_below: Cell,
}

/// Summary of one ρ-determinism check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub checked_cells: usize,
    pub violations: Vec<Violation>,
    /// Interior cells whose rightmost covering occurrence is not unique.
    pub rightmost_ties: Vec<Cell>,
}

impl Lemma1Report {
    pub fn merge(&mut self, other: Lemma1Report) {
        self.checked_cells += other.checked_cells;
        self.violations.extend(other.violations);
        self.rightmost_ties.extend(other.rightmost_ties);
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.rightmost_ties.is_empty()
    }
}

fn lemma1_precondition(q: &Block) -> Result<()> {
    if !is_primitive(q) {
        return Err(Error::PreconditionViolated(format!("{q} is not primitive")));
    }
    if let Some(w) = condition_star(q) {
        return Err(Error::PreconditionViolated(format!("{q} satisfies condition (*): {w}")));
    }
    Ok(())
}

/// Margin of interior cells: `2·max(width, height)`.
pub fn lemma1_margin(q: &Block) -> u32 {
    2 * q.width().max(q.height())
}

/// Checks `ρ(p) ∈ {p, ρ(p − (1,0)), ρ(p − (0,1))}` on the interior cells of a
/// coverable fragment, together with uniqueness of the rightmost occurrence.
pub fn check_lemma1(q: &Block, f: &Fragment) -> Result<Vec<Violation>> {
    Ok(lemma1_report(q, f)?.violations)
}

pub fn lemma1_report(q: &Block, f: &Fragment) -> Result<Lemma1Report> {
    lemma1_precondition(q)?;
    let idx = OccurrenceIndex::new(q, f);
    let domain = f.domain();
    let margin = lemma1_margin(q);
    let mut report = Lemma1Report::default();
    for (p, _) in f.cells() {
        if domain.depth(p) < margin {
            continue;
        }
        let (Some(r), Some(left), Some(below)) =
            (idx.rho(p), idx.rho(p - Cell::new(1, 0)), idx.rho(p - Cell::new(0, 1)))
        else {
            continue;
        };
        report.checked_cells += 1;
        if r != p && r != left && r != below {
            report.violations.push(Violation { cell: p, rho: r, rho_left: left, rho_below: below });
        }
        if idx.rightmost_count(p) > 1 {
            report.rightmost_ties.push(p);
        }
    }
    Ok(report)
}

/// Runs the checker on every coverable coloring of a `6w × 6h` rectangle,
/// up to `cap` colorings. Returns the merged report and the number of
/// colorings examined.
pub fn lemma1_exhaustive(q: &Block, cap: usize, limits: Limits) -> Result<(Lemma1Report, usize)> {
    lemma1_precondition(q)?;
    let (w, h) = (6 * q.width() as usize, 6 * q.height() as usize);
    let board = Board::new(q, w, h);
    let mut meter = Meter::new(limits, "rho enumeration");
    let mut report = Lemma1Report::default();
    let mut seen = 0usize;
    let mut err = None;
    ColoringSearch::covering_all(&board).run(&mut meter, |g| {
        let f = board.to_block(g).to_fragment(Cell::ORIGIN);
        match lemma1_report(q, &f) {
            Ok(r) => report.merge(r),
            Err(e) => err = Some(e),
        }
        seen += 1;
        if seen >= cap || err.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok((report, seen)),
    }
}

/// A random coverable patch covering a random core rectangle of at most
/// `max_w × max_h` cells. The patch is the union of the occurrences chosen by
/// a shuffled cover search around a random seed occurrence, so its outline
/// is ragged. Returns `None` when the search gives up.
pub fn random_patch(q: &Block, max_w: u32, max_h: u32, rng: &mut impl Rng) -> Option<Fragment> {
    let (qw, qh) = (q.width() as usize, q.height() as usize);
    let w = rng.gen_range(1..=max_w.max(1)) as usize;
    let h = rng.gen_range(1..=max_h.max(1)) as usize;
    let board = Board::new(q, w + 2 * (qw - 1), h + 2 * (qh - 1));
    let mut required = vec![false; board.cells()];
    for y in qh - 1..qh - 1 + h {
        for x in qw - 1..qw - 1 + w {
            required[board.index(x, y)] = true;
        }
    }
    let core = board.index(rng.gen_range(qw - 1..qw - 1 + w), rng.gen_range(qh - 1..qh - 1 + h));
    let seed = board.covering[core].choose(rng)?.0 as usize;
    let mut search = CoverSearch::new(&board, required);
    for (k, c) in board.placement_cells(seed).collect::<Vec<_>>().into_iter().enumerate() {
        search.fix(c, board.q[k]);
    }
    let mut meter = Meter::new(Limits::with_budget(200_000), "random patch");
    let sol = search.solve_shuffled(&mut meter, rng).ok()??;
    let mut placements: Vec<Placement> = sol.placements.iter().map(|&p| board.placement(p)).collect();
    placements.push(board.placement(seed));
    Fragment::from_placements(q, &placements).ok()
}

/// Generates `count` random coverable patches from `seed`, checks each, and
/// returns the merged report with the number of patches produced.
pub fn lemma1_fuzz(q: &Block, count: usize, seed: u64) -> Result<(Lemma1Report, usize)> {
    lemma1_precondition(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mw, mh) = (8 * q.width(), 8 * q.height());
    let mut report = Lemma1Report::default();
    let mut made = 0;
    let mut attempts = 0;
    while made < count && attempts < 20 * count {
        attempts += 1;
        if let Some(f) = random_patch(q, mw, mh, &mut rng) {
            report.merge(lemma1_report(q, &f)?);
            made += 1;
        }
    }
    Ok((report, made))
}

/// Random blocks of a given size over the first `letters` lowercase letters.
pub fn random_block(width: u32, height: u32, letters: u8, rng: &mut impl Rng) -> Block {
    let alphabet: Vec<char> = (0..letters).map(|i| (b'a' + i) as char).collect();
    let cells = (0..width * height).map(|_| *alphabet.choose(rng).unwrap()).collect();
    Block::new(width, height, cells).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blk(s: &str) -> Block {
        s.parse().unwrap()
    }

    fn word(s: &str) -> Fragment {
        blk(s).to_fragment(Cell::ORIGIN)
    }

    #[test]
    fn occurrences_in_words() {
        let q = blk("aba");
        let w = is_coverable(&q, &word("ababa")).unwrap();
        let xs: Vec<i32> = w.placements.iter().map(|p| p.position.x).collect();
        assert_eq!(xs, vec![0, 2]);
        assert_eq!(uncovered_cells(&q, &word("abab")), [Cell::new(3, 0)].into_iter().collect());
        assert!(is_coverable(&blk("ab"), &word("aa")).is_none());
        assert_eq!(all_occurrences(&blk("a"), &blk("aa/aa").to_fragment(Cell::ORIGIN)).len(), 4);
    }

    #[test]
    fn rho_prefers_rightmost() {
        let q = blk("aba");
        let m = rho_total(&q, &word("ababa")).unwrap();
        let at = |x| m.get(Cell::new(x, 0)).unwrap().position.x;
        assert_eq!((at(0), at(1), at(2), at(3), at(4)), (0, 0, 2, 2, 2));
        assert!(matches!(rho_total(&q, &word("abab")), Err(Error::NotCovered(_))));
    }

    #[test]
    fn lemma1_guards_and_trivial_cases() {
        assert!(matches!(check_lemma1(&blk("aba"), &word("ababa")), Err(Error::PreconditionViolated(_))));
        let q = blk("a");
        assert!(check_lemma1(&q, &q.tile(9, 9).to_fragment(Cell::ORIGIN)).unwrap().is_empty());
        let q = blk("ab/cd");
        let r = lemma1_report(&q, &q.tile(6, 6).to_fragment(Cell::new(-3, 2))).unwrap();
        assert!(r.checked_cells > 0 && r.is_clean());
    }

    #[test]
    fn random_patches_are_coverable() {
        let q = blk("ab/cd");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let f = random_patch(&q, 10, 10, &mut rng).unwrap();
            assert!(is_coverable(&q, &f).is_some());
        }
    }
}

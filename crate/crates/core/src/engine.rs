//! Backtracking searches over a finite board.
//!
//! A [`Board`] is a `width × height` rectangle with local coordinates, the
//! alphabet of a block `q` and every in-board position of `q`. Two searches
//! run over it:
//!
//! * [`ColoringSearch`] assigns symbols cell by cell and keeps, for each
//!   placement, the number of assigned cells disagreeing with `q`. A required
//!   cell whose placements are all dead prunes the branch.
//! * [`CoverSearch`] chooses placements instead of symbols. It picks the
//!   uncovered required cell with the fewest live placements and branches on
//!   them, which makes it the right tool for existence questions.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{Block, Cell, Placement, Symbol};

/// Caps shared by every exponential search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub node_budget: Option<u64>,
    pub time_limit: Option<Duration>,
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { node_budget: None, time_limit: None, jobs: 1 }
    }
}

impl Limits {
    pub fn with_budget(nodes: u64) -> Self {
        Limits { node_budget: Some(nodes), ..Limits::default() }
    }
}

/// Counts search nodes and enforces [`Limits`].
#[derive(Debug)]
pub struct Meter {
    pub nodes: u64,
    start: Instant,
    limits: Limits,
    what: &'static str,
}

impl Meter {
    pub fn new(limits: Limits, what: &'static str) -> Self {
        Meter { nodes: 0, start: Instant::now(), limits, what }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.add(1)
    }

    pub fn add(&mut self, n: u64) -> Result<()> {
        let before = self.nodes;
        self.nodes += n;
        if self.limits.node_budget.is_some_and(|b| self.nodes > b) {
            return Err(self.exhausted());
        }
        if let Some(t) = self.limits.time_limit {
            if before >> 12 != self.nodes >> 12 && self.start.elapsed() > t {
                return Err(self.exhausted());
            }
        }
        Ok(())
    }

    pub fn exhausted(&self) -> Error {
        Error::ResourceLimit { nodes: self.nodes, what: self.what, partial: None }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

pub const UNSET: u8 = u8::MAX;

/// A rectangle of cells together with every position of `q` inside it.
#[derive(Clone, Debug)]
pub struct Board {
    pub width: usize,
    pub height: usize,
    pub alphabet: Vec<Symbol>,
    pub qw: usize,
    pub qh: usize,
    /// `q` as alphabet indices, row-major from the bottom row.
    pub q: Vec<u8>,
    /// Placement index → bottom-left corner.
    pub starts: Vec<(usize, usize)>,
    /// Cell index → `(placement, offset in q)` for every placement covering it.
    pub covering: Vec<Vec<(u32, u16)>>,
}

impl Board {
    /// A board over the alphabet of `q`. Boards smaller than `q` have no placements.
    pub fn new(q: &Block, width: usize, height: usize) -> Self {
        Self::with_alphabet(q, q.alphabet(), width, height)
    }

    pub fn with_alphabet(q: &Block, alphabet: Vec<Symbol>, width: usize, height: usize) -> Self {
        let (qw, qh) = (q.width() as usize, q.height() as usize);
        let qi = q
            .symbols()
            .iter()
            .map(|s| alphabet.iter().position(|a| a == s).expect("alphabet contains q") as u8)
            .collect();
        let mut starts = Vec::new();
        let mut covering = vec![Vec::new(); width * height];
        if width >= qw && height >= qh {
            for py in 0..=height - qh {
                for px in 0..=width - qw {
                    let p = starts.len() as u32;
                    starts.push((px, py));
                    for j in 0..qh {
                        for i in 0..qw {
                            covering[(py + j) * width + px + i].push((p, (j * qw + i) as u16));
                        }
                    }
                }
            }
        }
        Board { width, height, alphabet, qw, qh, q: qi, starts, covering }
    }

    pub fn cells(&self) -> usize {
        self.width * self.height
    }

    pub fn index(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    pub fn coords(&self, c: usize) -> (usize, usize) {
        (c % self.width, c / self.width)
    }

    pub fn symbol_index(&self, s: Symbol) -> Option<u8> {
        self.alphabet.iter().position(|&a| a == s).map(|i| i as u8)
    }

    /// Cells of placement `p`, in the same order as the symbols of `q`.
    pub fn placement_cells(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        let (px, py) = self.starts[p];
        (0..self.qh).flat_map(move |j| (0..self.qw).map(move |i| (py + j) * self.width + px + i))
    }

    pub fn placement(&self, p: usize) -> Placement {
        let (px, py) = self.starts[p];
        Placement { position: Cell::new(px as i32, py as i32), width: self.qw as u32, height: self.qh as u32 }
    }

    pub fn to_block(&self, grid: &[u8]) -> Block {
        let cells = grid.iter().map(|&s| self.alphabet[s as usize]).collect();
        Block::new(self.width as u32, self.height as u32, cells).expect("board is nonempty")
    }

    /// Cells in column-major order (columns left to right, each bottom to top).
    pub fn column_major(&self) -> Vec<usize> {
        (0..self.width).flat_map(|x| (0..self.height).map(move |y| y * self.width + x)).collect()
    }
}

/// Cell-by-cell enumeration of the colorings of a board in which every
/// required cell is covered by an occurrence of `q`.
pub struct ColoringSearch<'a> {
    board: &'a Board,
    required: Vec<bool>,
    order: Vec<usize>,
    grid: Vec<u8>,
    mismatch: Vec<u16>,
    alive: Vec<u32>,
    dead_required: usize,
}

impl<'a> ColoringSearch<'a> {
    pub fn new(board: &'a Board, required: Vec<bool>) -> Self {
        assert_eq!(required.len(), board.cells());
        let alive: Vec<u32> = board.covering.iter().map(|v| v.len() as u32).collect();
        let dead_required = (0..board.cells()).filter(|&c| required[c] && alive[c] == 0).count();
        ColoringSearch {
            order: board.column_major(),
            grid: vec![UNSET; board.cells()],
            mismatch: vec![0; board.starts.len()],
            board,
            required,
            alive,
            dead_required,
        }
    }

    /// Every cell required.
    pub fn covering_all(board: &'a Board) -> Self {
        Self::new(board, vec![true; board.cells()])
    }

    pub fn with_order(mut self, order: Vec<usize>) -> Self {
        self.order = order;
        self
    }

    /// Fixes a cell before the search starts. Fixed cells are skipped by the order.
    pub fn fix(&mut self, cell: usize, s: u8) {
        assert_eq!(self.grid[cell], UNSET, "cell fixed twice");
        self.assign(cell, s);
        self.order.retain(|&c| c != cell);
    }

    pub fn is_dead(&self) -> bool {
        self.dead_required > 0
    }

    fn assign(&mut self, c: usize, s: u8) {
        self.grid[c] = s;
        for &(p, off) in &self.board.covering[c] {
            if self.board.q[off as usize] != s {
                let m = &mut self.mismatch[p as usize];
                *m += 1;
                if *m == 1 {
                    for d in self.board.placement_cells(p as usize) {
                        self.alive[d] -= 1;
                        if self.alive[d] == 0 && self.required[d] {
                            self.dead_required += 1;
                        }
                    }
                }
            }
        }
    }

    fn unassign(&mut self, c: usize) {
        let s = self.grid[c];
        for &(p, off) in &self.board.covering[c] {
            if self.board.q[off as usize] != s {
                let m = &mut self.mismatch[p as usize];
                *m -= 1;
                if *m == 0 {
                    for d in self.board.placement_cells(p as usize) {
                        if self.alive[d] == 0 && self.required[d] {
                            self.dead_required -= 1;
                        }
                        self.alive[d] += 1;
                    }
                }
            }
        }
        self.grid[c] = UNSET;
    }

    /// Calls `visit` on every solution in lexicographic order of the cell
    /// order. The callback can stop the search early.
    pub fn run<F>(&mut self, meter: &mut Meter, mut visit: F) -> Result<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        if self.is_dead() {
            return Ok(());
        }
        self.descend(0, meter, &mut visit).map(|_| ())
    }

    fn descend<F>(&mut self, depth: usize, meter: &mut Meter, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return Ok(visit(&self.grid));
        }
        let c = self.order[depth];
        for s in 0..self.board.alphabet.len() as u8 {
            meter.tick()?;
            self.assign(c, s);
            let flow = if self.dead_required == 0 {
                self.descend(depth + 1, meter, visit)
            } else {
                Ok(ControlFlow::Continue(()))
            };
            self.unassign(c);
            if !matches!(flow?, ControlFlow::Continue(())) {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    pub fn count(&mut self, meter: &mut Meter) -> Result<u64> {
        let mut n = 0u64;
        self.run(meter, |_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }

    pub fn collect(&mut self, meter: &mut Meter, cap: usize) -> Result<Vec<Vec<u8>>> {
        let mut out = Vec::new();
        self.run(meter, |g| {
            out.push(g.to_vec());
            if out.len() >= cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(out)
    }
}

/// Existence search for a consistent set of placements covering every
/// required cell, with some cells fixed in advance.
pub struct CoverSearch<'a> {
    board: &'a Board,
    required: Vec<bool>,
    grid: Vec<u8>,
    /// Number of chosen placements covering each cell.
    cover: Vec<u32>,
    mismatch: Vec<u16>,
    alive: Vec<u32>,
    /// Required, uncovered cells without live placements.
    dead: usize,
    chosen: Vec<usize>,
}

/// A successful cover: the coloring (unset cells left as [`UNSET`]) and the chosen placements.
#[derive(Clone, Debug)]
pub struct CoverSolution {
    pub grid: Vec<u8>,
    pub placements: Vec<usize>,
}

impl<'a> CoverSearch<'a> {
    pub fn new(board: &'a Board, required: Vec<bool>) -> Self {
        assert_eq!(required.len(), board.cells());
        let alive: Vec<u32> = board.covering.iter().map(|v| v.len() as u32).collect();
        let dead = (0..board.cells()).filter(|&c| required[c] && alive[c] == 0).count();
        CoverSearch {
            grid: vec![UNSET; board.cells()],
            cover: vec![0; board.cells()],
            mismatch: vec![0; board.starts.len()],
            board,
            required,
            alive,
            dead,
            chosen: Vec::new(),
        }
    }

    pub fn fix(&mut self, cell: usize, s: u8) {
        assert_eq!(self.grid[cell], UNSET, "cell fixed twice");
        self.set(cell, s);
    }

    pub fn fixed(&self, cell: usize) -> Option<u8> {
        (self.grid[cell] != UNSET).then_some(self.grid[cell])
    }

    pub fn is_dead(&self) -> bool {
        self.dead > 0
    }

    fn set(&mut self, c: usize, s: u8) {
        self.grid[c] = s;
        for &(p, off) in &self.board.covering[c] {
            if self.board.q[off as usize] != s {
                let m = &mut self.mismatch[p as usize];
                *m += 1;
                if *m == 1 {
                    for d in self.board.placement_cells(p as usize) {
                        self.alive[d] -= 1;
                        if self.alive[d] == 0 && self.required[d] && self.cover[d] == 0 {
                            self.dead += 1;
                        }
                    }
                }
            }
        }
    }

    fn unset(&mut self, c: usize) {
        let s = self.grid[c];
        for &(p, off) in &self.board.covering[c] {
            if self.board.q[off as usize] != s {
                let m = &mut self.mismatch[p as usize];
                *m -= 1;
                if *m == 0 {
                    for d in self.board.placement_cells(p as usize) {
                        if self.alive[d] == 0 && self.required[d] && self.cover[d] == 0 {
                            self.dead -= 1;
                        }
                        self.alive[d] += 1;
                    }
                }
            }
        }
        self.grid[c] = UNSET;
    }

    /// Commits placement `p` and returns the cells it newly colored.
    fn choose(&mut self, p: usize) -> Vec<usize> {
        let mut newly = Vec::new();
        let cells: Vec<usize> = self.board.placement_cells(p).collect();
        for (k, &c) in cells.iter().enumerate() {
            if self.grid[c] == UNSET {
                self.set(c, self.board.q[k]);
                newly.push(c);
            }
        }
        for &c in &cells {
            if self.cover[c] == 0 && self.required[c] && self.alive[c] == 0 {
                self.dead -= 1;
            }
            self.cover[c] += 1;
        }
        self.chosen.push(p);
        newly
    }

    fn unchoose(&mut self, p: usize, newly: Vec<usize>) {
        self.chosen.pop();
        for c in self.board.placement_cells(p).collect::<Vec<_>>() {
            self.cover[c] -= 1;
            if self.cover[c] == 0 && self.required[c] && self.alive[c] == 0 {
                self.dead += 1;
            }
        }
        for c in newly.into_iter().rev() {
            self.unset(c);
        }
    }

    fn pick(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for c in 0..self.board.cells() {
            if self.required[c] && self.cover[c] == 0 {
                let a = self.alive[c];
                if best.is_none_or(|(b, _)| a < b) {
                    best = Some((a, c));
                    if a <= 1 {
                        break;
                    }
                }
            }
        }
        best.map(|(_, c)| c)
    }

    pub fn solve(&mut self, meter: &mut Meter) -> Result<Option<CoverSolution>> {
        if self.dead > 0 {
            return Ok(None);
        }
        self.descend(meter, &mut |_| {})
    }

    /// Like [`CoverSearch::solve`], trying the options of each node in random order.
    pub fn solve_shuffled<R: Rng>(&mut self, meter: &mut Meter, rng: &mut R) -> Result<Option<CoverSolution>> {
        if self.dead > 0 {
            return Ok(None);
        }
        self.descend(meter, &mut |v| v.shuffle(rng))
    }

    fn descend(&mut self, meter: &mut Meter, order: &mut dyn FnMut(&mut Vec<usize>)) -> Result<Option<CoverSolution>> {
        let Some(c) = self.pick() else {
            return Ok(Some(CoverSolution { grid: self.grid.clone(), placements: self.chosen.clone() }));
        };
        let mut options: Vec<usize> = self.board.covering[c]
            .iter()
            .map(|&(p, _)| p as usize)
            .filter(|&p| self.mismatch[p] == 0)
            .collect();
        order(&mut options);
        for p in options {
            meter.tick()?;
            let newly = self.choose(p);
            let found = if self.dead == 0 { self.descend(meter, order) } else { Ok(None) };
            self.unchoose(p, newly);
            if let Some(sol) = found? {
                return Ok(Some(sol));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blk(s: &str) -> Block {
        s.parse().unwrap()
    }

    #[test]
    fn board_placements() {
        let b = Board::new(&blk("ab/cd"), 3, 3);
        assert_eq!(b.starts.len(), 4);
        assert_eq!(b.covering[b.index(1, 1)].len(), 4);
        assert_eq!(b.covering[0].len(), 1);
    }

    #[test]
    fn coverable_colorings_of_rigid_block() {
        let q = blk("ab/cd");
        let b = Board::new(&q, 4, 4);
        let mut s = ColoringSearch::covering_all(&b);
        let mut m = Meter::new(Limits::default(), "test");
        let sols = s.collect(&mut m, 10).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(b.to_block(&sols[0]), q.tile(2, 2));
        let b = Board::new(&q, 5, 4);
        assert_eq!(ColoringSearch::covering_all(&b).count(&mut m).unwrap(), 0);
    }

    #[test]
    fn cover_search_respects_fixed_cells() {
        let q = blk("ab/ba");
        let b = Board::new(&q, 4, 4);
        let mut m = Meter::new(Limits::default(), "test");
        let mut s = CoverSearch::new(&b, vec![true; 16]);
        s.fix(0, 1);
        s.fix(1, 0);
        let sol = s.solve(&mut m).unwrap().unwrap();
        assert_eq!(&sol.grid[..2], &[1, 0]);
        let mut s = CoverSearch::new(&b, vec![true; 16]);
        s.fix(0, 0);
        assert!(s.solve(&mut m).unwrap().is_none());
        assert!(sol.grid.iter().all(|&g| g != UNSET));

        let q = blk("ab/cd");
        let b = Board::new(&q, 4, 4);
        let mut s = CoverSearch::new(&b, vec![true; 16]);
        s.fix(0, 1);
        assert!(s.solve(&mut m).unwrap().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let q = blk("ab/ba");
        let b = Board::new(&q, 6, 6);
        let mut m = Meter::new(Limits::with_budget(10), "test");
        let r = ColoringSearch::covering_all(&b).count(&mut m);
        assert!(matches!(r, Err(Error::ResourceLimit { .. })));
    }
}

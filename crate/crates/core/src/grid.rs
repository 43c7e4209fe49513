//! Cells, domains, fragments and blocks.
//!
//! Coordinates follow the usual plane convention: `x` grows to the right and
//! `y` grows upward. A block is anchored at its bottom-left cell. Text files
//! list the top row first, so [`Block::parse`] flips the row order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = char;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    /// Key for bottom-to-top, left-to-right scans.
    pub fn row_major(self) -> (i32, i32) {
        (self.y, self.x)
    }

    /// The four edge-adjacent cells.
    pub fn neighbours(self) -> [Cell; 4] {
        [
            Cell::new(self.x - 1, self.y),
            Cell::new(self.x + 1, self.y),
            Cell::new(self.x, self.y - 1),
            Cell::new(self.x, self.y + 1),
        ]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Cell {
    type Output = Cell;
    fn add(self, rhs: Cell) -> Cell {
        Cell::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Cell {
    type Output = Cell;
    fn sub(self, rhs: Cell) -> Cell {
        Cell::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// Axis-aligned rectangle `[x, x + width) × [y, y + height)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub x: i32,
    pub y: i32,
    pub width: u32,
    pub height: u32,
}

impl Rect {
    pub const fn new(x: i32, y: i32, width: u32, height: u32) -> Self {
        Rect { x, y, width, height }
    }

    pub fn origin(&self) -> Cell {
        Cell::new(self.x, self.y)
    }

    pub fn right(&self) -> i32 {
        self.x + self.width as i32
    }

    pub fn top(&self) -> i32 {
        self.y + self.height as i32
    }

    pub fn area(&self) -> u64 {
        self.width as u64 * self.height as u64
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0 || self.height == 0
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= self.x && c.x < self.right() && c.y >= self.y && c.y < self.top()
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        other.is_empty()
            || (other.x >= self.x
                && other.right() <= self.right()
                && other.y >= self.y
                && other.top() <= self.top())
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        !self.is_empty()
            && !other.is_empty()
            && self.x < other.right()
            && other.x < self.right()
            && self.y < other.top()
            && other.y < self.top()
    }

    pub fn translate(&self, v: Cell) -> Rect {
        Rect::new(self.x + v.x, self.y + v.y, self.width, self.height)
    }

    /// Grows the rectangle by `dx` columns on each side and `dy` rows on
    /// top and bottom.
    pub fn inflate(&self, dx: u32, dy: u32) -> Rect {
        Rect::new(
            self.x - dx as i32,
            self.y - dy as i32,
            self.width + 2 * dx,
            self.height + 2 * dy,
        )
    }

    pub fn union(&self, other: &Rect) -> Rect {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        let x = self.x.min(other.x);
        let y = self.y.min(other.y);
        let r = self.right().max(other.right());
        let t = self.top().max(other.top());
        Rect::new(x, y, (r - x) as u32, (t - y) as u32)
    }

    /// Cells in row-major order (bottom row first).
    pub fn cells(&self) -> impl Iterator<Item = Cell> + use<> {
        let (x0, w) = (self.x, self.width as i32);
        (self.y..self.top()).flat_map(move |y| (x0..x0 + w).map(move |x| Cell::new(x, y)))
    }

    pub fn to_domain(&self) -> Domain {
        self.cells().collect()
    }
}

/// A finite set of cells.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Domain(BTreeSet<Cell>);

impl Domain {
    pub fn new() -> Self {
        Domain(BTreeSet::new())
    }

    pub fn insert(&mut self, c: Cell) -> bool {
        self.0.insert(c)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.0.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Domain) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Domain) -> Domain {
        Domain(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &Domain) -> Domain {
        Domain(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &Domain) -> Domain {
        Domain(self.0.difference(&other.0).copied().collect())
    }

    pub fn translate(&self, v: Cell) -> Domain {
        self.iter().map(|c| c + v).collect()
    }

    pub fn bounding_box(&self) -> Option<Rect> {
        let mut it = self.iter();
        let first = it.next()?;
        let (mut x0, mut x1, mut y0, mut y1) = (first.x, first.x, first.y, first.y);
        for c in it {
            x0 = x0.min(c.x);
            x1 = x1.max(c.x);
            y0 = y0.min(c.y);
            y1 = y1.max(c.y);
        }
        Some(Rect::new(x0, y0, (x1 - x0 + 1) as u32, (y1 - y0 + 1) as u32))
    }

    /// Chebyshev distance from `c` to the nearest cell outside the domain.
    /// Cells outside the domain have depth 0.
    pub fn depth(&self, c: Cell) -> u32 {
        let mut d = 0u32;
        loop {
            let r = d as i32;
            let ring_inside = (-r..=r).all(|i| {
                self.contains(Cell::new(c.x + i, c.y - r))
                    && self.contains(Cell::new(c.x + i, c.y + r))
                    && self.contains(Cell::new(c.x - r, c.y + i))
                    && self.contains(Cell::new(c.x + r, c.y + i))
            });
            if !ring_inside {
                return d;
            }
            d += 1;
        }
    }
}

impl FromIterator<Cell> for Domain {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        Domain(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Domain {
    type Item = &'a Cell;
    type IntoIter = std::collections::btree_set::Iter<'a, Cell>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A coloring of a finite domain, stored densely over its bounding box.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fragment {
    bbox: Rect,
    cells: Vec<Option<Symbol>>,
}

impl Fragment {
    pub fn empty() -> Self {
        Fragment { bbox: Rect::new(0, 0, 0, 0), cells: Vec::new() }
    }

    /// Builds a fragment from `(cell, symbol)` pairs. Repeated cells must
    /// carry the same symbol.
    pub fn from_cells<I: IntoIterator<Item = (Cell, Symbol)>>(cells: I) -> Result<Self> {
        let map = collect_cells(cells)?;
        Ok(Self::from_map(&map))
    }

    fn from_map(map: &BTreeMap<Cell, Symbol>) -> Self {
        let Some(bbox) = map.keys().copied().collect::<Domain>().bounding_box() else {
            return Self::empty();
        };
        let mut cells = vec![None; bbox.area() as usize];
        for (&c, &s) in map {
            let i = index_in(&bbox, c);
            cells[i] = Some(s);
        }
        Fragment { bbox, cells }
    }

    /// Renders a set of placements of `q`; fails on inconsistent overlaps.
    pub fn from_placements<'a, I>(q: &Block, placements: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Placement>,
    {
        let mut map = BTreeMap::new();
        for p in placements {
            for c in p.rect().cells() {
                let s = q.get(c.x - p.position.x, c.y - p.position.y);
                if let Some(prev) = map.insert(c, s) {
                    if prev != s {
                        return Err(Error::Conflict(c));
                    }
                }
            }
        }
        Ok(Self::from_map(&map))
    }

    pub fn bounding_box(&self) -> Rect {
        self.bbox
    }

    pub fn get(&self, c: Cell) -> Option<Symbol> {
        if self.bbox.contains(c) {
            self.cells[index_in(&self.bbox, c)]
        } else {
            None
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.get(c).is_some()
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(cell, symbol)` pairs in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (Cell, Symbol)> + '_ {
        self.bbox
            .cells()
            .zip(self.cells.iter())
            .filter_map(|(c, s)| s.map(|s| (c, s)))
    }

    pub fn domain(&self) -> Domain {
        self.cells().map(|(c, _)| c).collect()
    }

    pub fn alphabet(&self) -> BTreeSet<Symbol> {
        self.cells().map(|(_, s)| s).collect()
    }

    /// True when the domain is exactly the bounding box.
    pub fn is_rectangle(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// The restriction of this fragment to `d`.
    pub fn restrict(&self, d: &Domain) -> Result<Fragment> {
        let mut map = BTreeMap::new();
        for c in d.iter() {
            let s = self.get(c).ok_or(Error::DomainNotContained(c))?;
            map.insert(c, s);
        }
        Ok(Self::from_map(&map))
    }

    pub fn translate(&self, v: Cell) -> Fragment {
        Fragment { bbox: self.bbox.translate(v), cells: self.cells.clone() }
    }

    /// Converts a rectangular fragment into a block, dropping its position.
    pub fn to_block(&self) -> Option<Block> {
        if self.bbox.is_empty() || !self.is_rectangle() {
            return None;
        }
        let cells = self.cells.iter().map(|s| s.unwrap()).collect();
        Some(Block { width: self.bbox.width, height: self.bbox.height, cells })
    }

    /// Overwrites or extends this fragment with the cells of `other`.
    pub fn overlay(&self, other: &Fragment) -> Fragment {
        let mut map: BTreeMap<Cell, Symbol> = self.cells().collect();
        map.extend(other.cells());
        Self::from_map(&map)
    }
}

/// Serialized as the bottom-left corner of the bounding box and its rows,
/// top row first, with `.` outside the domain.
impl Serialize for Fragment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            origin: Cell,
            rows: Vec<String>,
        }
        let rows = self.to_string().lines().map(str::to_string).collect();
        Repr { origin: self.bbox.origin(), rows }.serialize(s)
    }
}

impl fmt::Debug for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fragment@{}\n{}", self.bbox.origin(), self)
    }
}

/// Top row first; cells outside the domain print as `.`.
impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in (self.bbox.y..self.bbox.top()).rev() {
            for x in self.bbox.x..self.bbox.right() {
                let s = self.get(Cell::new(x, y)).unwrap_or('.');
                write!(f, "{s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn collect_cells<I: IntoIterator<Item = (Cell, Symbol)>>(cells: I) -> Result<BTreeMap<Cell, Symbol>> {
    let mut map = BTreeMap::new();
    for (c, s) in cells {
        if let Some(prev) = map.insert(c, s) {
            if prev != s {
                return Err(Error::Conflict(c));
            }
        }
    }
    Ok(map)
}

fn index_in(r: &Rect, c: Cell) -> usize {
    ((c.y - r.y) as usize) * r.width as usize + (c.x - r.x) as usize
}

/// A rectangular pattern. Stored row-major with row 0 at the bottom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct Block {
    width: u32,
    height: u32,
    cells: Vec<Symbol>,
}

impl Block {
    pub fn new(width: u32, height: u32, cells: Vec<Symbol>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidBlock("width and height must be at least 1".into()));
        }
        if cells.len() != (width * height) as usize {
            return Err(Error::InvalidBlock(format!(
                "expected {} cells for a {}x{} block, got {}",
                width * height,
                width,
                height,
                cells.len()
            )));
        }
        if let Some(s) = cells.iter().find(|s| s.is_whitespace()) {
            return Err(Error::InvalidBlock(format!("whitespace symbol {s:?}")));
        }
        Ok(Block { width, height, cells })
    }

    /// Builds a block from rows listed top row first.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let mut cells = Vec::new();
        let height = rows.len() as u32;
        let mut width = None;
        for (i, row) in rows.iter().rev().enumerate() {
            let chars: Vec<char> = row.as_ref().chars().collect();
            match width {
                None => width = Some(chars.len() as u32),
                Some(w) if w as usize != chars.len() => {
                    return Err(Error::Parse {
                        line: rows.len() - i,
                        reason: format!("row has length {}, expected {}", chars.len(), w),
                    })
                }
                _ => {}
            }
            cells.extend(chars);
        }
        Block::new(width.unwrap_or(0), height, cells)
    }

    /// Parses the `.blk` text format: one line per row, top row first,
    /// equal lengths, one character per symbol, no blank lines.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let body = body.strip_suffix('\r').unwrap_or(body);
        if body.is_empty() {
            return Err(Error::Parse { line: 1, reason: "empty block".into() });
        }
        let rows: Vec<&str> = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
        let mut width = None;
        for (i, row) in rows.iter().enumerate() {
            let line = i + 1;
            if row.is_empty() {
                return Err(Error::Parse { line, reason: "blank line".into() });
            }
            if let Some(ch) = row.chars().find(|c| c.is_whitespace()) {
                return Err(Error::Parse { line, reason: format!("whitespace symbol {ch:?}") });
            }
            let len = row.chars().count();
            match width {
                None => width = Some(len),
                Some(w) if w != len => {
                    return Err(Error::Parse {
                        line,
                        reason: format!("ragged row of length {len}, expected {w}"),
                    })
                }
                _ => {}
            }
        }
        Block::from_rows(&rows)
    }

    /// `.blk` text, top row first, with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for row in self.rows() {
            s.push_str(&row);
            s.push('\n');
        }
        s
    }

    /// Rows as strings, top row first.
    pub fn rows(&self) -> Vec<String> {
        (0..self.height)
            .rev()
            .map(|y| (0..self.width).map(|x| self.at(x, y)).collect())
            .collect()
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn dims(&self) -> (u32, u32) {
        (self.width, self.height)
    }

    pub fn area(&self) -> u32 {
        self.width * self.height
    }

    pub fn at(&self, x: u32, y: u32) -> Symbol {
        self.cells[(y * self.width + x) as usize]
    }

    /// Signed-coordinate access; callers guarantee the cell lies inside.
    pub fn get(&self, x: i32, y: i32) -> Symbol {
        debug_assert!(x >= 0 && y >= 0 && (x as u32) < self.width && (y as u32) < self.height);
        self.at(x as u32, y as u32)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.cells
    }

    /// The symbols that actually occur, sorted.
    pub fn alphabet(&self) -> Vec<Symbol> {
        let set: BTreeSet<Symbol> = self.cells.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn rect(&self) -> Rect {
        Rect::new(0, 0, self.width, self.height)
    }

    /// The `width × height` sub-block whose bottom-left cell is `(x, y)`.
    pub fn sub_block(&self, x: u32, y: u32, width: u32, height: u32) -> Block {
        assert!(x + width <= self.width && y + height <= self.height);
        let mut cells = Vec::with_capacity((width * height) as usize);
        for yy in y..y + height {
            for xx in x..x + width {
                cells.push(self.at(xx, yy));
            }
        }
        Block { width, height, cells }
    }

    /// Whether the sub-rectangle at `(x, y)` of this block equals `other`.
    pub fn region_equals(&self, x: u32, y: u32, other: &Block) -> bool {
        if x + other.width > self.width || y + other.height > self.height {
            return false;
        }
        (0..other.height).all(|yy| (0..other.width).all(|xx| self.at(x + xx, y + yy) == other.at(xx, yy)))
    }

    pub fn transpose(&self) -> Block {
        let mut cells = Vec::with_capacity(self.cells.len());
        for y in 0..self.width {
            for x in 0..self.height {
                cells.push(self.at(y, x));
            }
        }
        Block { width: self.height, height: self.width, cells }
    }

    /// Left-right reflection.
    pub fn mirror_x(&self) -> Block {
        let mut cells = Vec::with_capacity(self.cells.len());
        for y in 0..self.height {
            for x in (0..self.width).rev() {
                cells.push(self.at(x, y));
            }
        }
        Block { width: self.width, height: self.height, cells }
    }

    /// Top-bottom reflection.
    pub fn mirror_y(&self) -> Block {
        let mut cells = Vec::with_capacity(self.cells.len());
        for y in (0..self.height).rev() {
            for x in 0..self.width {
                cells.push(self.at(x, y));
            }
        }
        Block { width: self.width, height: self.height, cells }
    }

    /// `r^{m×n}`: `m` copies side by side, stacked `n` times.
    pub fn tile(&self, m: u32, n: u32) -> Block {
        let (w, h) = (self.width * m, self.height * n);
        let mut cells = Vec::with_capacity((w * h) as usize);
        for y in 0..h {
            for x in 0..w {
                cells.push(self.at(x % self.width, y % self.height));
            }
        }
        Block { width: w, height: h, cells }
    }

    pub fn to_fragment(&self, at: Cell) -> Fragment {
        Fragment {
            bbox: Rect::new(at.x, at.y, self.width, self.height),
            cells: self.cells.iter().map(|&s| Some(s)).collect(),
        }
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Block({})", self.rows().join("/"))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rows().join("/"))
    }
}

impl From<Block> for Vec<String> {
    fn from(b: Block) -> Self {
        b.rows()
    }
}

impl TryFrom<Vec<String>> for Block {
    type Error = Error;
    fn try_from(rows: Vec<String>) -> Result<Self> {
        Block::from_rows(&rows)
    }
}

impl std::str::FromStr for Block {
    type Err = Error;

    /// Accepts `.blk` text or a single line with rows separated by `/`.
    fn from_str(s: &str) -> Result<Self> {
        if !s.contains('\n') && s.contains('/') {
            let rows: Vec<&str> = s.split('/').collect();
            return Block::from_rows(&rows);
        }
        Block::parse(s)
    }
}

/// A copy of a block of the given size with its bottom-left corner at
/// `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub position: Cell,
    pub width: u32,
    pub height: u32,
}

impl Placement {
    pub fn of(q: &Block, position: Cell) -> Self {
        Placement { position, width: q.width(), height: q.height() }
    }

    pub fn rect(&self) -> Rect {
        Rect::new(self.position.x, self.position.y, self.width, self.height)
    }

    pub fn domain(&self) -> Domain {
        self.rect().to_domain()
    }

    pub fn covers(&self, c: Cell) -> bool {
        self.rect().contains(c)
    }

    pub fn translate(&self, v: Cell) -> Placement {
        Placement { position: self.position + v, ..*self }
    }
}

/// Whether `p` occurs in `w` with its bottom-left corner at `pos`.
pub fn occurs_at(p: &Block, w: &Fragment, pos: Cell) -> bool {
    let r = Rect::new(pos.x, pos.y, p.width(), p.height());
    if !w.bounding_box().contains_rect(&r) {
        return false;
    }
    r.cells().all(|c| w.get(c) == Some(p.get(c.x - pos.x, c.y - pos.y)))
}

/// A domain is simply connected when it is 4-connected and its complement in
/// the plane is 4-connected. The empty domain counts as simply connected.
pub fn is_simply_connected(d: &Domain) -> bool {
    let Some(bbox) = d.bounding_box() else {
        return true;
    };
    if !is_connected_within(d.len(), d.iter().next().unwrap(), |c| d.contains(c)) {
        return false;
    }
    let frame = bbox.inflate(1, 1);
    let outside = frame.area() as usize - d.len();
    is_connected_within(outside, frame.origin(), |c| frame.contains(c) && !d.contains(c))
}

fn is_connected_within(expected: usize, start: Cell, member: impl Fn(Cell) -> bool) -> bool {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for n in c.neighbours() {
            if member(n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == expected
}

fn agree_on_intersection(f1: &Fragment, f2: &Fragment) -> bool {
    f1.cells().all(|(c, s)| f2.get(c).is_none_or(|t| t == s))
}

/// Two fragments are neighbouring when the union of their domains is simply
/// connected and they agree on their common cells.
pub fn neighbouring(f1: &Fragment, f2: &Fragment) -> bool {
    agree_on_intersection(f1, f2) && is_simply_connected(&f1.domain().union(&f2.domain()))
}

/// Neighbouring with a nonempty intersection.
pub fn overlap(f1: &Fragment, f2: &Fragment) -> bool {
    neighbouring(f1, f2) && f1.cells().any(|(c, _)| f2.contains(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blk(s: &str) -> Block {
        s.parse().unwrap()
    }

    #[test]
    fn parse_flips_rows() {
        let q = Block::parse("abb\nbbb\nbba\n").unwrap();
        assert_eq!(q.dims(), (3, 3));
        assert_eq!(q.at(0, 2), 'a');
        assert_eq!(q.at(2, 0), 'a');
        assert_eq!(q.at(0, 0), 'b');
        assert_eq!(q.to_text(), "abb\nbbb\nbba\n");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(Block::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(Block::parse("ab\na"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Block::parse("ab\n\nab"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Block::parse("a b"), Err(Error::Parse { .. })));
        assert!(Block::parse("ab\r\nba\r\n").is_ok());
        assert!(Block::parse("ab\nba").is_ok());
    }

    #[test]
    fn restrict_examples() {
        let q = blk("abb/bbb/bba");
        let f = q.to_fragment(Cell::ORIGIN);
        let tl = Domain::from_iter([Cell::new(0, 2)]);
        let r = f.restrict(&tl).unwrap();
        assert_eq!(r.to_block().unwrap(), blk("a"));
        assert_eq!(f.restrict(&f.domain()).unwrap(), f);

        let g = blk("ab/ba").to_fragment(Cell::ORIGIN);
        let bottom = Rect::new(0, 0, 2, 1).to_domain();
        assert_eq!(g.restrict(&bottom).unwrap().to_block().unwrap(), blk("ba"));

        let outside = Domain::from_iter([Cell::new(5, 5)]);
        assert!(matches!(g.restrict(&outside), Err(Error::DomainNotContained(_))));
    }

    #[test]
    fn occurs_at_examples() {
        let w = blk("abb/bbb/bba").to_fragment(Cell::ORIGIN);
        assert!(occurs_at(&blk("a"), &w, Cell::new(0, 2)));
        let q = blk("abb/bbb/bba");
        assert!(occurs_at(&q, &w, Cell::ORIGIN));
        let ab = blk("ab");
        let hits: Vec<Cell> = w.bounding_box().cells().filter(|&c| occurs_at(&ab, &w, c)).collect();
        assert_eq!(hits, vec![Cell::new(0, 2)]);
        assert!(!occurs_at(&ab, &w, Cell::new(1, 2)));
        assert!(!occurs_at(&ab, &w, Cell::new(2, 2)));
    }

    #[test]
    fn simple_connectivity_examples() {
        assert!(is_simply_connected(&Domain::new()));
        assert!(is_simply_connected(&Domain::from_iter([Cell::new(0, 0), Cell::new(1, 0)])));
        let ring: Domain = Rect::new(0, 0, 3, 3).cells().filter(|&c| c != Cell::new(1, 1)).collect();
        assert!(!is_simply_connected(&ring));
        assert!(!is_simply_connected(&Domain::from_iter([Cell::new(0, 0), Cell::new(1, 1)])));
    }

    #[test]
    fn neighbouring_examples() {
        let q = blk("abb/bbb/bba");
        let f = q.to_fragment(Cell::ORIGIN);
        let tl = f.restrict(&Rect::new(0, 2, 1, 1).to_domain()).unwrap();
        let tr = f.restrict(&Rect::new(1, 1, 2, 2).to_domain()).unwrap();
        assert!(neighbouring(&tl, &tr));
        assert!(!overlap(&tl, &tr));
        assert!(neighbouring(&f, &f));
        assert!(overlap(&f, &f));
        let a = Fragment::from_cells([(Cell::new(0, 0), 'a'), (Cell::new(1, 0), 'b')]).unwrap();
        let b = Fragment::from_cells([(Cell::new(1, 0), 'a'), (Cell::new(2, 0), 'b')]).unwrap();
        assert!(!neighbouring(&a, &b));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(blk("a").transpose(), blk("a"));
        assert_eq!(blk("ab/ba").transpose(), blk("ab/ba"));
        assert_eq!(blk("abc").transpose(), blk("c/b/a"));
        assert_eq!(blk("ab/cd").transpose(), blk("db/ca"));
    }

    #[test]
    fn from_placements_detects_conflict() {
        let q = blk("ab");
        let ok = [Placement::of(&q, Cell::new(0, 0)), Placement::of(&q, Cell::new(2, 0))];
        assert_eq!(Fragment::from_placements(&q, &ok).unwrap().to_block().unwrap(), blk("abab"));
        let bad = [Placement::of(&q, Cell::new(0, 0)), Placement::of(&q, Cell::new(1, 0))];
        assert!(matches!(Fragment::from_placements(&q, &bad), Err(Error::Conflict(_))));
    }

    #[test]
    fn depth_counts_chebyshev_layers() {
        let d = Rect::new(0, 0, 5, 5).to_domain();
        assert_eq!(d.depth(Cell::new(2, 2)), 3);
        assert_eq!(d.depth(Cell::new(0, 2)), 1);
        assert_eq!(d.depth(Cell::new(-1, 2)), 0);
    }
}

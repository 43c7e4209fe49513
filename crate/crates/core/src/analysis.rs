//! Borders, primitive roots, and the entropy classification of a block.
//!
//! The classification combines three facts about the subshift `X_q` of
//! `q`-coverable configurations:
//!
//! * `X_q` is finite exactly when the primitive root of `q` has no border.
//! * If a primitive `q` fails condition (*), `X_q` has zero entropy.
//! * If a primitive `q` has a border on each diagonal with a common width
//!   whose heights add up to at least `height(q)` (or the transposed
//!   statement), `X_q` has entropy at least `1/(9wh)`.
//!
//! Blocks that satisfy (*) but not the last condition fall in the gap
//! between the two criteria and are reported as such.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grid::{neighbouring, Block, Cell, Rect};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Corner {
    TL,
    TR,
    BL,
    BR,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::TL, Corner::TR, Corner::BL, Corner::BR];

    /// Position of a `width × height` sub-rectangle anchored at this corner
    /// of a `qw × qh` block.
    pub fn anchor(self, qw: u32, qh: u32, width: u32, height: u32) -> Cell {
        let right = (qw - width) as i32;
        let top = (qh - height) as i32;
        match self {
            Corner::TL => Cell::new(0, top),
            Corner::TR => Cell::new(right, top),
            Corner::BL => Cell::new(0, 0),
            Corner::BR => Cell::new(right, 0),
        }
    }

    /// The corner a cell of this corner is sent to by transposition.
    pub fn transposed(self) -> Corner {
        match self {
            Corner::TL => Corner::BR,
            Corner::BR => Corner::TL,
            c => c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Diagonal {
    /// Top-left and bottom-right.
    Main,
    /// Bottom-left and top-right.
    Anti,
}

impl Diagonal {
    pub fn corners(self) -> [Corner; 2] {
        match self {
            Diagonal::Main => [Corner::TL, Corner::BR],
            Diagonal::Anti => [Corner::BL, Corner::TR],
        }
    }
}

/// A block strictly smaller than `q` occurring in two opposite corners.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Border {
    pub width: u32,
    pub height: u32,
    pub block: Block,
    pub diagonals: BTreeSet<Diagonal>,
    pub corners: BTreeSet<Corner>,
}

impl Border {
    pub fn has(&self, d: Diagonal) -> bool {
        self.diagonals.contains(&d)
    }

    pub fn occurs_at(&self, c: Corner) -> bool {
        self.corners.contains(&c)
    }

    /// Corners where the occurrence is forced by the border's own diagonals.
    pub fn diagonal_corners(&self) -> BTreeSet<Corner> {
        self.diagonals.iter().flat_map(|d| d.corners()).collect()
    }

    pub fn area(&self) -> u32 {
        self.width * self.height
    }

    /// Rectangle covered by this border when anchored at `corner` of `q`.
    pub fn rect_in(&self, q: &Block, corner: Corner) -> Rect {
        let p = corner.anchor(q.width(), q.height(), self.width, self.height);
        Rect::new(p.x, p.y, self.width, self.height)
    }
}

impl fmt::Display for Border {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let diags: Vec<&str> = self
            .diagonals
            .iter()
            .map(|d| match d {
                Diagonal::Main => "main",
                Diagonal::Anti => "anti",
            })
            .collect();
        let corners: Vec<String> = self.corners.iter().map(|c| format!("{c:?}")).collect();
        write!(
            f,
            "{}x{} {} [{}; corners {}]",
            self.width,
            self.height,
            self.block,
            diags.join("+"),
            corners.join(",")
        )
    }
}

/// All borders of `q`, ordered by `(width, height)`; when both diagonals
/// match with different contents the main-diagonal border comes first.
pub fn borders(q: &Block) -> Vec<Border> {
    let (qw, qh) = q.dims();
    let mut out = Vec::new();
    for w in 1..=qw {
        for h in 1..=qh {
            if (w, h) == (qw, qh) {
                continue;
            }
            let corner_block = |c: Corner| {
                let p = c.anchor(qw, qh, w, h);
                q.sub_block(p.x as u32, p.y as u32, w, h)
            };
            let [tl, tr, bl, br] = Corner::ALL.map(corner_block);
            let main = tl == br;
            let anti = bl == tr;
            let mut found: Vec<(Block, BTreeSet<Diagonal>)> = Vec::new();
            if main && anti && tl == bl {
                found.push((tl.clone(), BTreeSet::from([Diagonal::Main, Diagonal::Anti])));
            } else {
                if main {
                    found.push((tl.clone(), BTreeSet::from([Diagonal::Main])));
                }
                if anti {
                    found.push((bl.clone(), BTreeSet::from([Diagonal::Anti])));
                }
            }
            for (block, diagonals) in found {
                let corners = Corner::ALL
                    .into_iter()
                    .zip([&tl, &tr, &bl, &br])
                    .filter(|(_, b)| **b == block)
                    .map(|(c, _)| c)
                    .collect();
                out.push(Border { width: w, height: h, block, diagonals, corners });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDecomposition {
    pub root: Block,
    pub h_reps: u32,
    pub v_reps: u32,
}

impl RootDecomposition {
    pub fn is_trivial(&self) -> bool {
        self.h_reps == 1 && self.v_reps == 1
    }
}

/// The primitive root `r` of `q` and the counts with `q = r^{h_reps × v_reps}`.
///
/// A block is `r^{m×n}` exactly when it has horizontal period `width(q)/m`
/// and vertical period `height(q)/n`, and the two periods are independent,
/// so the root uses the smallest period of each axis dividing the side.
pub fn primitive_root(q: &Block) -> RootDecomposition {
    let (qw, qh) = q.dims();
    let rw = (1..=qw)
        .filter(|d| qw % d == 0)
        .find(|&d| (0..qh).all(|y| (d..qw).all(|x| q.at(x, y) == q.at(x - d, y))))
        .unwrap_or(qw);
    let rh = (1..=qh)
        .filter(|d| qh % d == 0)
        .find(|&d| (d..qh).all(|y| (0..qw).all(|x| q.at(x, y) == q.at(x, y - d))))
        .unwrap_or(qh);
    RootDecomposition { root: q.sub_block(0, 0, rw, rh), h_reps: qw / rw, v_reps: qh / rh }
}

pub fn is_primitive(q: &Block) -> bool {
    primitive_root(q).is_trivial()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Top, Side::Bottom, Side::Left, Side::Right];

    pub fn corners(self) -> (Corner, Corner) {
        match self {
            Side::Top => (Corner::TL, Corner::TR),
            Side::Bottom => (Corner::BL, Corner::BR),
            Side::Left => (Corner::TL, Corner::BL),
            Side::Right => (Corner::TR, Corner::BR),
        }
    }

    fn is_horizontal(self) -> bool {
        matches!(self, Side::Top | Side::Bottom)
    }
}

/// How "two borders in consecutive corners" is quantified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StarReading {
    /// A border may be anchored at any corner where its content occurs.
    Liberal,
    /// A border may only be anchored at a corner of one of its diagonals.
    Strict,
}

/// Two borders anchored at the two corners of one side whose corner
/// fragments are neighbouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    pub side: Side,
    pub b1: Border,
    pub b2: Border,
    pub c1: Corner,
    pub c2: Corner,
    /// A single full-width or full-height border overlapping itself.
    pub full_side: bool,
}

impl StarWitness {
    pub fn extent_sum(&self) -> u32 {
        if self.side.is_horizontal() {
            self.b1.width + self.b2.width
        } else {
            self.b1.height + self.b2.height
        }
    }
}

impl fmt::Display for StarWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "side {:?}: {} at {:?} and {} at {:?}",
            self.side, self.b1.block, self.c1, self.b2.block, self.c2
        )?;
        if self.full_side {
            write!(f, " (full-side border overlapping itself)")?;
        }
        Ok(())
    }
}

/// Condition (*) under the liberal reading.
pub fn condition_star(q: &Block) -> Option<StarWitness> {
    condition_star_with(q, &borders(q), StarReading::Liberal)
}

/// Condition (*) over a precomputed border list. The returned witness
/// minimizes `(side, area(b1) + area(b2))`, then border indices.
pub fn condition_star_with(q: &Block, borders: &[Border], reading: StarReading) -> Option<StarWitness> {
    let anchored = |b: &Border, c: Corner| match reading {
        StarReading::Liberal => b.occurs_at(c),
        StarReading::Strict => b.diagonal_corners().contains(&c),
    };
    let mut best: Option<((Side, u32, usize, usize), StarWitness)> = None;
    for side in Side::ALL {
        let (c1, c2) = side.corners();
        let (ext, len): (fn(&Border) -> u32, u32) = if side.is_horizontal() {
            (|b| b.width, q.width())
        } else {
            (|b| b.height, q.height())
        };
        for (i, b1) in borders.iter().enumerate().filter(|(_, b)| anchored(b, c1)) {
            for (j, b2) in borders.iter().enumerate().filter(|(_, b)| anchored(b, c2)) {
                if ext(b1) + ext(b2) < len {
                    continue;
                }
                let key = (side, b1.area() + b2.area(), i, j);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    let w = StarWitness {
                        side,
                        b1: b1.clone(),
                        b2: b2.clone(),
                        c1,
                        c2,
                        full_side: i == j && ext(b1) == len,
                    };
                    best = Some((key, w));
                }
            }
        }
    }
    best.map(|(_, w)| w)
}

/// Whether the corner fragments of a star witness are neighbouring in `q`,
/// checked through the generic fragment predicate.
pub fn star_fragments_neighbouring(q: &Block, w: &StarWitness) -> bool {
    let f = q.to_fragment(Cell::ORIGIN);
    let r1 = f.restrict(&w.b1.rect_in(q, w.c1).to_domain()).expect("corner rect inside q");
    let r2 = f.restrict(&w.b2.rect_in(q, w.c2).to_domain()).expect("corner rect inside q");
    neighbouring(&r1, &r2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Theorem3Variant {
    /// Equal widths, heights summing to at least `height(q)`.
    Vertical,
    /// Equal heights, widths summing to at least `width(q)`.
    Horizontal,
}

/// A pair of borders of `q`, `b1` on the main diagonal and `b2` on the
/// anti-diagonal, satisfying the sufficient condition for positive entropy.
///
/// The pair is constructed in a normalized frame where the condition reads
/// vertically: the frame block is `q`, transposed for the horizontal variant,
/// then mirrored left-right when `mirrored` is set. Mirroring swaps the roles
/// of the two diagonals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem3Witness {
    pub variant: Theorem3Variant,
    pub mirrored: bool,
    pub b1: Border,
    pub b2: Border,
    /// Common width (vertical variant) or common height (horizontal variant).
    pub c: u32,
}

/// Frame quantities used by the construction: `(w, h, c, h1, h2)` where
/// `h1` belongs to the main-diagonal border of the frame block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameDims {
    pub w: u32,
    pub h: u32,
    pub c: u32,
    pub h1: u32,
    pub h2: u32,
}

impl Theorem3Witness {
    pub fn frame_block(&self, q: &Block) -> Block {
        let t = match self.variant {
            Theorem3Variant::Vertical => q.clone(),
            Theorem3Variant::Horizontal => q.transpose(),
        };
        if self.mirrored {
            t.mirror_x()
        } else {
            t
        }
    }

    pub fn frame_dims(&self, q: &Block) -> FrameDims {
        let (w, h) = match self.variant {
            Theorem3Variant::Vertical => q.dims(),
            Theorem3Variant::Horizontal => (q.height(), q.width()),
        };
        let ext = |b: &Border| match self.variant {
            Theorem3Variant::Vertical => b.height,
            Theorem3Variant::Horizontal => b.width,
        };
        let (h1, h2) = if self.mirrored { (ext(&self.b2), ext(&self.b1)) } else { (ext(&self.b1), ext(&self.b2)) };
        FrameDims { w, h, c: self.c, h1, h2 }
    }

    /// Bounding box `(width, height)` of the constructed pair, in `q`'s frame.
    pub fn pair_bbox(&self, q: &Block) -> (u32, u32) {
        let d = self.frame_dims(q);
        let (bw, bh) = (3 * d.w - d.c, 3 * d.h);
        match self.variant {
            Theorem3Variant::Vertical => (bw, bh),
            Theorem3Variant::Horizontal => (bh, bw),
        }
    }

    /// Heights of the two borders add up exactly to the block height.
    pub fn is_exact(&self, q: &Block) -> bool {
        let d = self.frame_dims(q);
        d.h1 + d.h2 == d.h
    }
}

impl fmt::Display for Theorem3Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}{}: b1 = {} (main), b2 = {} (anti), common extent {}",
            self.variant,
            if self.mirrored { " mirrored" } else { "" },
            self.b1.block,
            self.b2.block,
            self.c
        )
    }
}

/// Every orientation of every border pair satisfying the sufficient
/// condition, best first: smallest constructed bounding box, then pairs whose
/// heights add up exactly, then variant, mirroring and border indices.
pub fn theorem3_candidates(q: &Block, borders: &[Border]) -> Vec<Theorem3Witness> {
    let mut out = Vec::new();
    let mains = borders.iter().enumerate().filter(|(_, b)| b.has(Diagonal::Main));
    for (i, b1) in mains {
        for (j, b2) in borders.iter().enumerate().filter(|(_, b)| b.has(Diagonal::Anti)) {
            for variant in [Theorem3Variant::Vertical, Theorem3Variant::Horizontal] {
                let ok = match variant {
                    Theorem3Variant::Vertical => {
                        b1.width == b2.width && b1.height + b2.height >= q.height()
                    }
                    Theorem3Variant::Horizontal => {
                        b1.height == b2.height && b1.width + b2.width >= q.width()
                    }
                };
                if !ok {
                    continue;
                }
                let c = match variant {
                    Theorem3Variant::Vertical => b1.width,
                    Theorem3Variant::Horizontal => b1.height,
                };
                for mirrored in [false, true] {
                    let w = Theorem3Witness { variant, mirrored, b1: b1.clone(), b2: b2.clone(), c };
                    out.push((i, j, w));
                }
            }
        }
    }
    out.sort_by_key(|(i, j, w)| {
        let (bw, bh) = w.pair_bbox(q);
        (bw as u64 * bh as u64, !w.is_exact(q), w.variant, w.mirrored, *i, *j)
    });
    out.into_iter().map(|(_, _, w)| w).collect()
}

/// The sufficient condition for positive entropy; `None` when it fails.
pub fn theorem3_condition(q: &Block) -> Option<Theorem3Witness> {
    theorem3_candidates(q, &borders(q)).into_iter().next()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Finite,
    ZeroEntropy,
    PositiveEntropy,
    UnknownGap,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "FINITE",
            Verdict::ZeroEntropy => "ZERO_ENTROPY",
            Verdict::PositiveEntropy => "POSITIVE_ENTROPY",
            Verdict::UnknownGap => "UNKNOWN_GAP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub input_block: Block,
    pub primitive: bool,
    pub root: RootDecomposition,
    /// Borders of the analyzed (primitive) block.
    pub borders: Vec<Border>,
    pub star: Option<StarWitness>,
    pub star_strict: Option<StarWitness>,
    pub thm3: Option<Theorem3Witness>,
    pub verdict: Verdict,
    pub entropy_lower_bound: Option<Rational>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    /// The block the verdict was computed for.
    pub fn analyzed(&self) -> &Block {
        &self.root.root
    }
}

pub fn classify(q: &Block) -> ClassificationReport {
    let root = primitive_root(q);
    let primitive = root.is_trivial();
    let r = &root.root;
    let mut notes = Vec::new();
    if !primitive {
        notes.push(format!(
            "block is not primitive: it is {} repeated {}x{}; analysis runs on the primitive root",
            r, root.h_reps, root.v_reps
        ));
    }
    let bs = borders(r);
    let star = condition_star_with(r, &bs, StarReading::Liberal);
    let star_strict = condition_star_with(r, &bs, StarReading::Strict);
    if star.is_some() != star_strict.is_some() {
        notes.push(format!(
            "condition (*) readings disagree: liberal {}, strict {}",
            if star.is_some() { "holds" } else { "fails" },
            if star_strict.is_some() { "holds" } else { "fails" },
        ));
    }
    let thm3 = theorem3_candidates(r, &bs).into_iter().next();
    let (verdict, bound) = if bs.is_empty() {
        (Verdict::Finite, None)
    } else if star.is_none() {
        (Verdict::ZeroEntropy, None)
    } else if thm3.is_some() {
        (Verdict::PositiveEntropy, Some(Rational::recip_of(9 * r.area() as u64)))
    } else {
        (Verdict::UnknownGap, None)
    };
    if let Some(t) = &thm3 {
        let d = t.frame_dims(r);
        let tight = (3 * d.w - d.c) as u64 * 3 * d.h as u64;
        notes.push(format!("the constructed pair's bounding box gives the sharper bound 1/{tight}"));
    }
    if !primitive {
        match verdict {
            Verdict::Finite | Verdict::ZeroEntropy => notes.push(
                "every configuration covered by the block is covered by its root, so the verdict carries over"
                    .into(),
            ),
            _ => notes.push(
                "the verdict concerns the subshift of the primitive root; the subshift of the block itself is not settled"
                    .into(),
            ),
        }
    }
    ClassificationReport {
        input_block: q.clone(),
        primitive,
        root,
        borders: bs,
        star,
        star_strict,
        thm3,
        verdict,
        entropy_lower_bound: bound,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blk(s: &str) -> Block {
        s.parse().unwrap()
    }

    fn summary(bs: &[Border]) -> Vec<(String, Vec<Diagonal>)> {
        bs.iter().map(|b| (b.block.to_string(), b.diagonals.iter().copied().collect())).collect()
    }

    #[test]
    fn borders_of_border_example() {
        use Diagonal::*;
        let bs = borders(&blk("abb/bbb/bba"));
        assert_eq!(
            summary(&bs),
            vec![
                ("a".to_string(), vec![Main]),
                ("b".to_string(), vec![Anti]),
                ("b/b".to_string(), vec![Anti]),
                ("bb".to_string(), vec![Anti]),
                ("bb/bb".to_string(), vec![Anti]),
            ]
        );
        assert_eq!(bs[0].corners, BTreeSet::from([Corner::TL, Corner::BR]));
        assert_eq!(bs[1].corners, BTreeSet::from([Corner::TR, Corner::BL]));
        assert_eq!(bs[4].corners, BTreeSet::from([Corner::TR, Corner::BL]));
    }

    #[test]
    fn borders_trivial_and_empty() {
        assert!(borders(&blk("a")).is_empty());
        assert!(borders(&blk("ab/cd")).is_empty());
        let aa = borders(&blk("aa"));
        assert_eq!(aa.len(), 1);
        assert_eq!(aa[0].diagonals.len(), 2);
        assert_eq!(aa[0].corners.len(), 4);
    }

    #[test]
    fn primitive_root_examples() {
        let r = primitive_root(&blk("aba/aba"));
        assert_eq!((r.root.clone(), r.h_reps, r.v_reps), (blk("aba"), 1, 2));
        let r = primitive_root(&blk("a"));
        assert!(r.is_trivial());
        let r = primitive_root(&blk("ab/ba"));
        assert!(r.is_trivial());
        let r = primitive_root(&blk("abab/abab"));
        assert_eq!((r.root, r.h_reps, r.v_reps), (blk("ab"), 2, 2));
        assert_eq!(primitive_root(&blk("aaaa")).root, blk("a"));
    }

    #[test]
    fn condition_star_examples() {
        let q = blk("abb/bbb/bba");
        let w = condition_star(&q).unwrap();
        assert_eq!(w.side, Side::Top);
        assert_eq!((w.b1.block.clone(), w.c1), (blk("a"), Corner::TL));
        // the 2x1 border "bb" anchored at TR already reaches: 1 + 2 >= 3
        assert_eq!((w.b2.block.clone(), w.c2), (blk("bb"), Corner::TR));
        assert_eq!(w.extent_sum(), 3);
        assert!(star_fragments_neighbouring(&q, &w));

        assert!(condition_star(&blk("ab/cd")).is_none());

        let w = condition_star(&blk("aba")).unwrap();
        assert_eq!(w.side, Side::Left);
        assert!(w.full_side);
        assert_eq!(w.b1, w.b2);
    }

    #[test]
    fn liberal_and_strict_readings_can_disagree() {
        // "a" is an anti-diagonal border that also sits at TL.
        let q = blk("aa/ab");
        let bs = borders(&q);
        assert!(condition_star_with(&q, &bs, StarReading::Liberal).is_some());
        assert!(condition_star_with(&q, &bs, StarReading::Strict).is_none());
        let report = classify(&q);
        assert!(report.notes.iter().any(|n| n.contains("disagree")));
    }

    #[test]
    fn sufficient_condition_examples() {
        let q = blk("ab/ba");
        let w = theorem3_condition(&q).unwrap();
        assert_eq!(w.variant, Theorem3Variant::Vertical);
        assert!(!w.mirrored);
        assert_eq!((w.b1.block.clone(), w.b2.block.clone(), w.c), (blk("a"), blk("b"), 1));
        assert_eq!(w.pair_bbox(&q), (5, 6));

        let q = blk("abb/bbb/bba");
        let w = theorem3_condition(&q).unwrap();
        assert_eq!((w.b1.block.clone(), w.b2.block.clone()), (blk("a"), blk("b/b")));
        assert!(w.is_exact(&q));
        assert!(theorem3_condition(&blk("a")).is_none());

        let q = blk("aba");
        let w = theorem3_condition(&q).unwrap();
        assert_eq!(w.variant, Theorem3Variant::Vertical);
        assert_eq!(w.pair_bbox(&q), (8, 3));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&blk("ab/cd")).verdict, Verdict::Finite);
        let r = classify(&blk("ab/ba"));
        assert_eq!(r.verdict, Verdict::PositiveEntropy);
        assert_eq!(r.entropy_lower_bound, Some(Rational::new(1, 36)));
        let r = classify(&blk("abb/bbb/bba"));
        assert_eq!(r.verdict, Verdict::PositiveEntropy);
        assert_eq!(r.entropy_lower_bound, Some(Rational::new(1, 81)));
        let r = classify(&blk("aba"));
        assert_eq!(r.entropy_lower_bound, Some(Rational::new(1, 27)));
        let r = classify(&blk("abab"));
        assert!(!r.primitive);
        assert_eq!(r.verdict, Verdict::Finite);
        assert!(r.borders.is_empty());
    }

    #[test]
    fn transposition_preserves_borders() {
        let q = blk("abb/bbb/bba");
        let mut lhs: Vec<(Block, BTreeSet<Diagonal>, BTreeSet<Corner>)> = borders(&q.transpose())
            .into_iter()
            .map(|b| (b.block, b.diagonals, b.corners))
            .collect();
        let mut rhs: Vec<_> = borders(&q)
            .into_iter()
            .map(|b| (b.block.transpose(), b.diagonals, b.corners.iter().map(|c| c.transposed()).collect()))
            .collect();
        lhs.sort();
        rhs.sort();
        assert_eq!(lhs, rhs);
    }
}

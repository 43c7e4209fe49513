//! The finite-type presentation of `X_q`.
//!
//! A configuration is `q`-coverable exactly when every cell is covered by an
//! occurrence of `q`. Whether a cell is covered only depends on the
//! `(2w−1) × (2h−1)` window centred on it, so the forbidden patterns are the
//! windows of that size in which no occurrence of `q` covers the centre.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Block, Fragment, Symbol};

/// Largest number of windows [`SftDescription::materialize`] enumerates by default.
pub const DEFAULT_MATERIALIZATION_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SftDescription {
    pub alphabet: Vec<Symbol>,
    pub window_width: u32,
    pub window_height: u32,
    pub source_block: Block,
    /// Number of windows over the alphabet, forbidden or not.
    #[serde(with = "crate::counting::decimal")]
    pub window_count: BigUint,
    /// The forbidden windows in listing order, when materialized.
    pub forbidden: Option<Vec<Block>>,
}

/// Builds the description, materializing the forbidden list when the window
/// space fits under the default cap.
pub fn compile(q: &Block) -> SftDescription {
    let mut d = compile_predicate(q);
    d.forbidden = d.materialize(DEFAULT_MATERIALIZATION_CAP).ok();
    d
}

/// Builds the description without materializing the forbidden list.
pub fn compile_predicate(q: &Block) -> SftDescription {
    let alphabet = q.alphabet();
    let (ww, wh) = (2 * q.width() - 1, 2 * q.height() - 1);
    let window_count = BigUint::from(alphabet.len()).pow(ww * wh);
    SftDescription {
        alphabet,
        window_width: ww,
        window_height: wh,
        source_block: q.clone(),
        window_count,
        forbidden: None,
    }
}

impl SftDescription {
    pub fn center(&self) -> (u32, u32) {
        (self.source_block.width() - 1, self.source_block.height() - 1)
    }

    /// A window is allowed when some occurrence of the source block covers
    /// its centre. Windows of the wrong size are never allowed.
    pub fn is_forbidden(&self, window: &Block) -> bool {
        let q = &self.source_block;
        if window.dims() != (self.window_width, self.window_height) {
            return true;
        }
        !(0..q.height()).any(|y| (0..q.width()).any(|x| window.region_equals(x, y, q)))
    }

    pub fn forbidden_count(&self) -> Option<usize> {
        self.forbidden.as_ref().map(Vec::len)
    }

    /// Lists every forbidden window in lexicographic order of the row-major
    /// text (top row first).
    pub fn materialize(&self, cap: u64) -> Result<Vec<Block>> {
        let total = match u64::try_from(&self.window_count) {
            Ok(n) if n <= cap => n,
            _ => return Err(Error::EnumerationTooLarge { windows: self.window_count.clone(), cap }),
        };
        let out = (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let w = self.decode(code);
                self.is_forbidden(&w).then_some(w)
            })
            .collect();
        Ok(out)
    }

    /// The window with the given rank in listing order.
    pub fn decode(&self, mut code: u64) -> Block {
        let (ww, wh) = (self.window_width, self.window_height);
        let k = self.alphabet.len() as u64;
        let mut text = vec![self.alphabet[0]; (ww * wh) as usize];
        for slot in text.iter_mut().rev() {
            *slot = self.alphabet[(code % k) as usize];
            code /= k;
        }
        let mut cells = Vec::with_capacity(text.len());
        for y in 0..wh {
            let row = (wh - 1 - y) * ww;
            cells.extend_from_slice(&text[row as usize..(row + ww) as usize]);
        }
        Block::new(ww, wh, cells).expect("window dimensions are positive")
    }

    /// Rank of a window over the alphabet in listing order.
    pub fn encode(&self, window: &Block) -> Option<u64> {
        let k = self.alphabet.len() as u64;
        let mut code = 0u64;
        for row in window.rows() {
            for s in row.chars() {
                let d = self.alphabet.binary_search(&s).ok()? as u64;
                code = code.checked_mul(k)?.checked_add(d)?;
            }
        }
        Some(code)
    }

    /// Header lines: source block, alphabet, window size and forbidden count.
    pub fn header(&self) -> String {
        let mut s = String::new();
        let alphabet: String = self.alphabet.iter().collect();
        let _ = writeln!(s, "# source {}", self.source_block);
        let _ = writeln!(s, "# alphabet {alphabet}");
        let _ = writeln!(s, "# window {}x{}", self.window_width, self.window_height);
        match self.forbidden_count() {
            Some(n) => {
                let _ = writeln!(s, "# forbidden {n}");
            }
            None => {
                let _ = writeln!(s, "# forbidden not materialized ({} windows)", self.window_count);
            }
        }
        s
    }

    /// Header followed by one paragraph per forbidden window.
    pub fn listing(&self) -> String {
        let mut s = self.header();
        for w in self.forbidden.iter().flatten() {
            s.push('\n');
            s.push_str(&w.to_text());
        }
        s
    }

    pub fn checker(&self) -> Result<LocalChecker> {
        LocalChecker::new(self)
    }
}

/// Dense admissibility tests over grids of alphabet indices.
///
/// Grids are stored row-major with row 0 at the bottom. The two tests are the
/// two characterizations of local admissibility: absence of a materialized
/// forbidden window, and coverage of every interior cell by an in-grid
/// occurrence.
#[derive(Clone, Debug)]
pub struct LocalChecker {
    q: Vec<u8>,
    qw: usize,
    qh: usize,
    ww: usize,
    wh: usize,
    k: u64,
    forbidden: Vec<u64>,
}

impl LocalChecker {
    pub fn new(d: &SftDescription) -> Result<Self> {
        let list = match &d.forbidden {
            Some(l) => l.clone(),
            None => d.materialize(DEFAULT_MATERIALIZATION_CAP)?,
        };
        let total = u64::try_from(&d.window_count).expect("materialized window count fits");
        let mut forbidden = vec![0u64; total.div_ceil(64) as usize];
        for w in &list {
            let code = d.encode(w).expect("forbidden windows use the alphabet");
            forbidden[(code / 64) as usize] |= 1 << (code % 64);
        }
        let q = &d.source_block;
        Ok(LocalChecker {
            q: q.symbols().iter().map(|s| d.alphabet.binary_search(s).unwrap() as u8).collect(),
            qw: q.width() as usize,
            qh: q.height() as usize,
            ww: d.window_width as usize,
            wh: d.window_height as usize,
            k: d.alphabet.len() as u64,
            forbidden,
        })
    }

    /// No materialized forbidden window occurs inside the grid.
    pub fn window_free(&self, grid: &[u8], gw: usize, gh: usize) -> bool {
        if gw < self.ww || gh < self.wh {
            return true;
        }
        for oy in 0..=gh - self.wh {
            for ox in 0..=gw - self.ww {
                let mut code = 0u64;
                for r in (0..self.wh).rev() {
                    let base = (oy + r) * gw + ox;
                    for &s in &grid[base..base + self.ww] {
                        code = code * self.k + s as u64;
                    }
                }
                if self.forbidden[(code / 64) as usize] >> (code % 64) & 1 == 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Every cell at least `w−1` columns and `h−1` rows away from the edges
    /// is covered by an occurrence lying inside the grid.
    pub fn interior_covered(&self, grid: &[u8], gw: usize, gh: usize) -> bool {
        let (qw, qh) = (self.qw, self.qh);
        if gw < 2 * qw - 1 || gh < 2 * qh - 1 {
            return true;
        }
        let (pw, ph) = (gw - qw + 1, gh - qh + 1);
        let occurs = |px: usize, py: usize| {
            (0..qh).all(|j| {
                let row = (py + j) * gw + px;
                grid[row..row + qw] == self.q[j * qw..(j + 1) * qw]
            })
        };
        if pw * ph <= 64 {
            let known = std::cell::Cell::new(0u64);
            let value = std::cell::Cell::new(0u64);
            return self.all_interior(gw, gh, |i| {
                if known.get() >> i & 1 == 0 {
                    known.set(known.get() | 1 << i);
                    value.set(value.get() | (occurs(i % pw, i / pw) as u64) << i);
                }
                value.get() >> i & 1 == 1
            });
        }
        let occ: Vec<bool> = (0..ph).flat_map(|py| (0..pw).map(move |px| (px, py))).map(|(x, y)| occurs(x, y)).collect();
        self.all_interior(gw, gh, |i| occ[i])
    }

    fn all_interior(&self, gw: usize, gh: usize, occ: impl Fn(usize) -> bool) -> bool {
        let (qw, qh) = (self.qw, self.qh);
        let pw = gw - qw + 1;
        (qh - 1..=gh - qh)
            .all(|y| (qw - 1..=gw - qw).all(|x| (y + 1 - qh..=y).any(|py| (x + 1 - qw..=x).any(|px| occ(py * pw + px)))))
    }
}

/// Whether a rectangular fragment contains no forbidden window. Uses the
/// materialized list when present and the predicate otherwise.
pub fn is_locally_admissible(d: &SftDescription, f: &Fragment) -> bool {
    let r = f.bounding_box();
    if f.is_empty() {
        return true;
    }
    assert!(f.is_rectangle(), "local admissibility is defined on rectangles");
    let (ww, wh) = (d.window_width, d.window_height);
    if r.width < ww || r.height < wh {
        return true;
    }
    let block = f.to_block().expect("rectangular fragment");
    let listed: Option<std::collections::HashSet<&Block>> = d.forbidden.as_ref().map(|l| l.iter().collect());
    for oy in 0..=r.height - wh {
        for ox in 0..=r.width - ww {
            let w = block.sub_block(ox, oy, ww, wh);
            let bad = match &listed {
                Some(set) => set.contains(&w),
                None => d.is_forbidden(&w),
            };
            if bad {
                return false;
            }
        }
    }
    true
}

/// The same property phrased through coverage of the interior cells.
pub fn interior_covered(q: &Block, f: &Fragment) -> bool {
    let r = f.bounding_box();
    if f.is_empty() {
        return true;
    }
    let block = f.to_block().expect("rectangular fragment");
    let (qw, qh) = q.dims();
    if r.width < 2 * qw - 1 || r.height < 2 * qh - 1 {
        return true;
    }
    for y in qh - 1..=r.height - qh {
        for x in qw - 1..=r.width - qw {
            let covered = (y + 1 - qh..=y).any(|py| (x + 1 - qw..=x).any(|px| block.region_equals(px, py, q)));
            if !covered {
                return false;
            }
        }
    }
    true
}

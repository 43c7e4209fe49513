//! Brute-force oracles for the counting and construction code, and values
//! frozen from them.

use std::collections::HashMap;

use coverable::analysis::{borders, classify, condition_star, theorem3_condition, Verdict};
use coverable::counting::{
    count_coverable_central, count_loc_admissible, count_loc_admissible_rect, uk_rhs, vn_rhs,
};
use coverable::engine::Limits;
use coverable::pairs::{build_periodic_witness, construct_pair, entropy_lower_bound, search_pairs, SearchOutcome};
use coverable::rational::Rational;
use coverable::sft::compile;
use coverable::Block;
use num_bigint::BigUint;

fn blk(s: &str) -> Block {
    s.parse().unwrap()
}

/// Every interior cell of a `w × h` grid (row 0 at the bottom) is covered by
/// an occurrence lying inside the grid.
fn naive_interior_covered(q: &Block, g: &[char], w: usize, h: usize) -> bool {
    let (qw, qh) = (q.width() as usize, q.height() as usize);
    let occurs = |px: usize, py: usize| {
        px + qw <= w
            && py + qh <= h
            && (0..qh).all(|j| (0..qw).all(|i| g[(py + j) * w + px + i] == q.at(i as u32, j as u32)))
    };
    for y in 0..h {
        for x in 0..w {
            let interior = x + 1 >= qw && x + qw <= w && y + 1 >= qh && y + qh <= h;
            if !interior {
                continue;
            }
            let covered = (0..qw).any(|i| (0..qh).any(|j| x >= i && y >= j && occurs(x - i, y - j)));
            if !covered {
                return false;
            }
        }
    }
    true
}

fn naive_loc_count(q: &Block, w: usize, h: usize) -> u64 {
    let alphabet = q.alphabet();
    let k = alphabet.len() as u64;
    let cells = w * h;
    let mut g = vec![alphabet[0]; cells];
    let mut n = 0;
    for mut code in 0..k.pow(cells as u32) {
        for slot in g.iter_mut() {
            *slot = alphabet[(code % k) as usize];
            code /= k;
        }
        if naive_interior_covered(q, &g, w, h) {
            n += 1;
        }
    }
    n
}

/// Places occurrences of `q` on a `gw × gh` grid until every required cell
/// is covered, agreeing with the symbols of `window` and with each other.
fn naive_extend(
    q: &Block,
    window: &HashMap<(i32, i32), char>,
    placed: &mut HashMap<(i32, i32), (char, u32)>,
    required: &[(i32, i32)],
    gw: i32,
    gh: i32,
) -> bool {
    let Some(&(cx, cy)) = required.iter().find(|c| !placed.contains_key(c)) else {
        return true;
    };
    let (qw, qh) = (q.width() as i32, q.height() as i32);
    for dx in 0..qw {
        for dy in 0..qh {
            let (px, py) = (cx - dx, cy - dy);
            if px < 0 || py < 0 || px + qw > gw || py + qh > gh {
                continue;
            }
            let cells: Vec<((i32, i32), char)> = (0..qw)
                .flat_map(|i| (0..qh).map(move |j| ((px + i, py + j), q.get(i, j))))
                .collect();
            let clash = cells.iter().any(|(c, s)| {
                window.get(c).is_some_and(|t| t != s) || placed.get(c).is_some_and(|(t, _)| t != s)
            });
            if clash {
                continue;
            }
            for (c, s) in &cells {
                placed.entry(*c).or_insert((*s, 0)).1 += 1;
            }
            if naive_extend(q, window, placed, required, gw, gh) {
                return true;
            }
            for (c, _) in &cells {
                let e = placed.get_mut(c).unwrap();
                e.1 -= 1;
                if e.1 == 0 {
                    placed.remove(c);
                }
            }
        }
    }
    false
}

/// Central `k × k` windows of a `(k + 6w − 2) × (k + 6h − 2)` grid whose
/// window inflated by `(2w, 2h)` is covered.
fn naive_central_count(q: &Block, k: usize) -> u64 {
    let (w, h) = (q.width() as i32, q.height() as i32);
    let k = k as i32;
    let (gw, gh) = (k + 6 * w - 2, k + 6 * h - 2);
    let (cx, cy) = (3 * w - 1, 3 * h - 1);
    let mut required = Vec::new();
    for y in (cy - 2 * h).max(0)..(cy + k + 2 * h).min(gh) {
        for x in (cx - 2 * w).max(0)..(cx + k + 2 * w).min(gw) {
            required.push((x, y));
        }
    }
    required.sort_by_key(|&(x, y)| !(x >= cx && x < cx + k && y >= cy && y < cy + k));
    let alphabet = q.alphabet();
    let a = alphabet.len() as u64;
    let mut n = 0;
    for mut code in 0..a.pow((k * k) as u32) {
        let mut window = HashMap::new();
        for y in 0..k {
            for x in 0..k {
                window.insert((cx + x, cy + y), alphabet[(code % a) as usize]);
                code /= a;
            }
        }
        if naive_extend(q, &window, &mut HashMap::new(), &required, gw, gh) {
            n += 1;
        }
    }
    n
}

#[test]
fn loc_counts_match_brute_force() {
    for s in ["a", "ab", "a/b", "ab/ba", "aa/ab", "aba", "ab/ab"] {
        let q = blk(s);
        for n in 1..=4 {
            let fast = count_loc_admissible(&q, n, Limits::default()).unwrap();
            assert_eq!(fast, BigUint::from(naive_loc_count(&q, n, n)), "{s} at {n}");
        }
    }
    let q = blk("ab/cd");
    for n in 1..=3 {
        let fast = count_loc_admissible(&q, n, Limits::default()).unwrap();
        assert_eq!(fast, BigUint::from(naive_loc_count(&q, n, n)), "ab/cd at {n}");
    }
}

#[test]
fn loc_counts_on_rectangles_match_brute_force() {
    for s in ["ab/ba", "aba", "aa/ab"] {
        let q = blk(s);
        for (w, h) in [(2, 5), (5, 2), (3, 4), (4, 3), (1, 6)] {
            let fast = count_loc_admissible_rect(&q, w, h, Limits::default()).unwrap();
            assert_eq!(fast, BigUint::from(naive_loc_count(&q, w, h)), "{s} on {w}x{h}");
        }
    }
}

#[test]
fn frozen_checkerboard_loc_counts() {
    let q = blk("ab/ba");
    let expected: [u64; 8] = [2, 16, 120, 4784, 56064, 2989696, 107919872, 9649005552];
    for (n, e) in expected.iter().enumerate() {
        assert_eq!(count_loc_admissible(&q, n + 1, Limits::default()).unwrap(), BigUint::from(*e));
    }
}

#[test]
fn central_counts_match_brute_force() {
    for (s, kmax) in [("ab/cd", 3), ("ab/ba", 3), ("ab", 3), ("aa/ab", 2), ("aba", 2), ("a/b", 3)] {
        let q = blk(s);
        for k in 1..=kmax {
            let fast = count_coverable_central(&q, k, Limits::default()).unwrap();
            assert_eq!(fast, BigUint::from(naive_central_count(&q, k)), "{s} at {k}");
        }
    }
}

/// Plane tilings by a 2×2 block with four distinct letters are rows of
/// copies shifted independently, or columns shifted independently. A
/// `k × k` window meets `ceil(k/2)` or `floor(k/2) + 1` bands depending on
/// the phase, and the four fully aligned windows are shared by both
/// families.
#[test]
fn rigid_square_central_counts_follow_band_formula() {
    let q = blk("ab/cd");
    for k in 1..=7u32 {
        let bands = [k.div_ceil(2), k / 2 + 1];
        let expected = 2 * (bands.iter().map(|b| 1u64 << b).sum::<u64>()) - 4;
        assert_eq!(count_coverable_central(&q, k as usize, Limits::default()).unwrap(), BigUint::from(expected));
    }
}

#[test]
fn forbidden_window_counts() {
    let words: Vec<String> = compile(&blk("ab")).forbidden.unwrap().iter().map(|b| b.to_text()).collect();
    assert_eq!(words, ["aaa\n", "baa\n", "bba\n", "bbb\n"]);
    let q = blk("ab/ba");
    let d = compile(&q);
    let naive = (0u32..512)
        .filter(|code| {
            let g: Vec<char> = (0..9).map(|i| if code >> i & 1 == 1 { 'b' } else { 'a' }).collect();
            !naive_interior_covered(&q, &g, 3, 3)
        })
        .count();
    assert_eq!(d.forbidden_count(), Some(naive));
    assert_eq!(naive, 392);
    assert_eq!(compile(&blk("a")).forbidden_count(), Some(0));
}

#[test]
fn bound_formulas() {
    let q = blk("ab/cd");
    assert_eq!(uk_rhs(&q, 1), BigUint::from(9u32 * 64));
    assert_eq!(uk_rhs(&q, 2), BigUint::from(25u32 * 1024));
    assert_eq!(vn_rhs(&q, 1), BigUint::from(81u32 * 256));
    let q = blk("aba");
    assert_eq!(uk_rhs(&q, 0), BigUint::from(3u32));
}

#[test]
fn worked_classifications() {
    let cases = [
        ("ab/ba", Verdict::PositiveEntropy, Some(Rational::new(1, 36))),
        ("aba", Verdict::PositiveEntropy, Some(Rational::new(1, 27))),
        ("ab/cd", Verdict::Finite, None),
        ("abab", Verdict::Finite, None),
        ("ba/aa", Verdict::UnknownGap, None),
        ("bb/ba/aa", Verdict::ZeroEntropy, None),
    ];
    for (s, verdict, bound) in cases {
        let r = classify(&blk(s));
        assert_eq!(r.verdict, verdict, "{s}");
        assert_eq!(r.entropy_lower_bound, bound, "{s}");
    }
    assert!(borders(&blk("ab/cd")).is_empty());
    assert!(condition_star(&blk("bb/ba/aa")).is_none());
}

#[test]
fn constructed_pairs_and_certificates() {
    for (s, bound, bbox) in [("ab/ba", Rational::new(1, 36), (5, 6)), ("aba", Rational::new(1, 27), (8, 3))] {
        let q = blk(s);
        let w = theorem3_condition(&q).unwrap();
        let pair = construct_pair(&q, &w).unwrap();
        let b = pair.bounding_box();
        assert_eq!((b.width, b.height), bbox);
        let pw = build_periodic_witness(&q, &pair).unwrap();
        assert!(pw.checks.consistent && pw.checks.covers_plane && pw.checks.rects_cover);
        assert_eq!(entropy_lower_bound(&pw).bound, bound);
    }
}

#[test]
fn rigid_square_has_no_interchangeable_pair() {
    let r = search_pairs(&blk("ab/cd"), (6, 6), Limits::default());
    assert_eq!(r.outcome, SearchOutcome::Exhausted);
    assert!(r.pair.is_none());
}

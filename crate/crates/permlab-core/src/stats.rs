//! Permutation statistics: fixed points, excedances, inversions, major
//! index, crossings and nestings, and the crossing increment of a single
//! insertion.
//!
//! A pair of positions `(i, j)` with `i < j` is classified by the four
//! inequality cases
//!
//! - upper crossing: `i < j < σ(i) < σ(j)`
//! - lower crossing: `σ(i) < σ(j) <= i < j`
//! - upper nesting:  `i < j < σ(j) < σ(i)`
//! - lower nesting:  `σ(j) < σ(i) <= i < j`
//!
//! Fixed points need no separate handling: a fixed point can only occur as
//! the first index of a lower nesting, which is exactly what the weak `<=`
//! admits. Everything is an O(n²) pair scan; at the sizes this library
//! targets the scan is the reference computation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The joint record of the six classical statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Statistics {
    pub fp: usize,
    pub exc: usize,
    pub crs: usize,
    pub nes: usize,
    pub inv: usize,
    pub maj: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcKind {
    UpperCrossing,
    LowerCrossing,
    UpperNesting,
    LowerNesting,
}

/// A crossing or nesting pair `(i, j)`, `i < j`, with its kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArcPair {
    pub i: usize,
    pub j: usize,
    pub kind: ArcKind,
}

fn classify(i: usize, j: usize, si: usize, sj: usize) -> Option<ArcKind> {
    if j < si && si < sj {
        Some(ArcKind::UpperCrossing)
    } else if si < sj && sj <= i {
        Some(ArcKind::LowerCrossing)
    } else if j < sj && sj < si {
        Some(ArcKind::UpperNesting)
    } else if sj < si && si <= i {
        Some(ArcKind::LowerNesting)
    } else {
        None
    }
}

/// Every crossing and nesting pair of `σ`, in ascending `(i, j)` order.
pub fn arc_pairs(sigma: &Permutation) -> Vec<ArcPair> {
    let n = sigma.len();
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if let Some(kind) = classify(i, j, sigma.at(i), sigma.at(j)) {
                pairs.push(ArcPair { i, j, kind });
            }
        }
    }
    pairs
}

pub fn fixed_points(sigma: &Permutation) -> usize {
    (1..=sigma.len()).filter(|&i| sigma.at(i) == i).count()
}

pub fn excedances(sigma: &Permutation) -> usize {
    (1..=sigma.len()).filter(|&i| sigma.at(i) > i).count()
}

pub fn inversions(sigma: &Permutation) -> usize {
    let v = sigma.as_slice();
    let mut inv = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Sum of the descent positions `i` with `σ(i) > σ(i+1)`, `1 <= i <= n−1`.
pub fn major_index(sigma: &Permutation) -> usize {
    let v = sigma.as_slice();
    (1..v.len()).filter(|&i| v[i - 1] > v[i]).sum()
}

pub fn crossings(sigma: &Permutation) -> usize {
    arc_pairs(sigma)
        .iter()
        .filter(|p| matches!(p.kind, ArcKind::UpperCrossing | ArcKind::LowerCrossing))
        .count()
}

pub fn nestings(sigma: &Permutation) -> usize {
    arc_pairs(sigma)
        .iter()
        .filter(|p| matches!(p.kind, ArcKind::UpperNesting | ArcKind::LowerNesting))
        .count()
}

/// All six statistics in one pass.
pub fn statistics(sigma: &Permutation) -> Statistics {
    let (mut crs, mut nes) = (0, 0);
    for pair in arc_pairs(sigma) {
        match pair.kind {
            ArcKind::UpperCrossing | ArcKind::LowerCrossing => crs += 1,
            ArcKind::UpperNesting | ArcKind::LowerNesting => nes += 1,
        }
    }
    Statistics {
        fp: fixed_points(sigma),
        exc: excedances(sigma),
        crs,
        nes,
        inv: inversions(sigma),
        maj: major_index(sigma),
    }
}

/// The four counting sets behind the crossing increment of an insertion,
/// together with `delta = a1 + a2 + a3 − a4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossingDelta {
    pub a1: usize,
    pub a2: usize,
    pub a3: usize,
    pub a4: usize,
    pub delta: i64,
}

/// Crossing increment of inserting value `b` at position `a` into `π`:
/// `crs(π^{(a,b)}) = crs(π) + delta`, valid for `1 <= b <= a <= |π|+1`.
///
/// The counts run over `b <= i < a`, with `i` read as a position for
/// `a1` and as a value for `a2`: `a1` counts `π(i) < b`, `a2` counts
/// `π⁻¹(i) >= a` (weakly, so that a value landing exactly at position
/// `a` still crosses the new arc), `a3` counts `π⁻¹(i) < i < π(i)` and
/// `a4` counts `π(i) < i < π⁻¹(i)`.
pub fn crossing_delta(pi: &Permutation, a: usize, b: usize) -> Result<CrossingDelta> {
    let n = pi.len();
    if b > a {
        return Err(Error::ValueAbovePosition { a, b });
    }
    for (what, v) in [("position", a), ("value", b)] {
        if v == 0 || v > n + 1 {
            return Err(Error::OutOfRange {
                what,
                value: v,
                max: n + 1,
            });
        }
    }
    let inv = pi.inverse_table();
    let (mut a1, mut a2, mut a3, mut a4) = (0, 0, 0, 0);
    for i in b..a {
        let vi = pi.at(i);
        let pos_of_i = inv[i - 1];
        if vi < b {
            a1 += 1;
        }
        if pos_of_i >= a {
            a2 += 1;
        }
        if pos_of_i < i && i < vi {
            a3 += 1;
        }
        if vi < i && i < pos_of_i {
            a4 += 1;
        }
    }
    Ok(CrossingDelta {
        a1,
        a2,
        a3,
        a4,
        delta: a1 as i64 + a2 as i64 + a3 as i64 - a4 as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    #[test]
    fn identity_is_statistic_free() {
        let s = statistics(&Permutation::identity(5));
        assert_eq!(
            s,
            Statistics {
                fp: 5,
                exc: 0,
                crs: 0,
                nes: 0,
                inv: 0,
                maj: 0
            }
        );
        assert!(arc_pairs(&Permutation::identity(5)).is_empty());
    }

    #[test]
    fn small_cases() {
        let s = statistics(&p("321"));
        assert_eq!((s.nes, s.crs, s.exc, s.inv), (1, 0, 1, 3));
        let s = statistics(&p("312"));
        assert_eq!((s.crs, s.nes), (1, 0));
        assert_eq!(
            arc_pairs(&p("312")),
            vec![ArcPair {
                i: 2,
                j: 3,
                kind: ArcKind::LowerCrossing
            }]
        );
        assert_eq!(statistics(&p("231")).crs, 0);
    }

    /// The 10-element example with one arc of every flavour. The pair lists
    /// are forced by the defining inequalities together with the identity
    /// `inv = 2·nes + crs + exc` (here 21 = 2·4 + 8 + 5).
    #[test]
    fn ten_element_example() {
        let pi = p("4 6 2 9 8 1 7 10 3 5");
        let s = statistics(&pi);
        assert_eq!(s.inv, 21);
        assert_eq!(s.exc, 5);
        assert_eq!(s.nes, 4);
        assert_eq!(s.crs, 8);
        assert_eq!(s.inv, 2 * s.nes + s.crs + s.exc);

        let of_kind = |kind: ArcKind| -> Vec<(usize, usize)> {
            arc_pairs(&pi)
                .into_iter()
                .filter(|a| a.kind == kind)
                .map(|a| (a.i, a.j))
                .collect()
        };
        assert_eq!(
            of_kind(ArcKind::UpperCrossing),
            vec![(1, 2), (2, 4), (2, 5), (4, 8)]
        );
        assert_eq!(
            of_kind(ArcKind::LowerCrossing),
            vec![(3, 9), (6, 9), (6, 10), (9, 10)]
        );
        assert_eq!(of_kind(ArcKind::UpperNesting), vec![(4, 5)]);
        assert_eq!(
            of_kind(ArcKind::LowerNesting),
            vec![(3, 6), (7, 9), (7, 10)]
        );
    }

    #[test]
    fn major_index_sums_descents() {
        assert_eq!(major_index(&p("321")), 3);
        assert_eq!(major_index(&p("4 1 6 2 7 3 5")), 1 + 3 + 5);
    }

    #[test]
    fn crossing_delta_validates_inputs() {
        assert!(crossing_delta(&p("123"), 2, 3).is_err());
        assert!(crossing_delta(&p("123"), 5, 1).is_err());
        let d = crossing_delta(&p("123"), 4, 4).unwrap();
        assert_eq!(d.delta, 0);
    }

    #[test]
    fn crossing_delta_matches_insertion_small() {
        // Exhaustive oracle over S_4: insert, rescan, compare.
        for sigma in crate::patterns::enumerate_avoiders(4, &[]) {
            let base = crossings(&sigma) as i64;
            for a in 1..=5 {
                for b in 1..=a {
                    let delta = crossing_delta(&sigma, a, b).unwrap().delta;
                    let inserted = sigma.insert_at(a, b).unwrap();
                    assert_eq!(crossings(&inserted) as i64, base + delta);
                }
            }
        }
    }
}

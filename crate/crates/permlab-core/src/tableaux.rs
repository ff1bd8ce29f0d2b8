//! Robinson–Schensted row insertion and the tableau route from
//! 321-avoiding permutations to Dyck paths.

use serde::Serialize;

use crate::dyck::{DyckPath, Step};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A standard Young tableau as rows of strictly increasing entries with
/// weakly decreasing row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    fn new() -> Self {
        Tableau { rows: Vec::new() }
    }

    /// Inserts `value` by bumping the leftmost larger entry of each row
    /// downward; returns the (row, column) of the cell created.
    fn row_insert(&mut self, mut value: usize) -> (usize, usize) {
        for (r, row) in self.rows.iter_mut().enumerate() {
            match row.iter().position(|&x| x > value) {
                Some(col) => {
                    std::mem::swap(&mut row[col], &mut value);
                }
                None => {
                    row.push(value);
                    return (r, row.len() - 1);
                }
            }
        }
        self.rows.push(vec![value]);
        (self.rows.len() - 1, 0)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// 1-based row index containing `value`, if present.
    fn row_of(&self, value: usize) -> Option<usize> {
        self.rows
            .iter()
            .position(|row| row.binary_search(&value).is_ok())
            .map(|r| r + 1)
    }
}

/// Insertion tableau `P` and recording tableau `Q` of the same shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableauPair {
    pub p: Tableau,
    pub q: Tableau,
}

/// Row-insertion correspondence: builds `(P, Q)` by inserting
/// `σ(1), …, σ(n)` and recording each created cell.
pub fn rsk(sigma: &Permutation) -> TableauPair {
    let mut p = Tableau::new();
    let mut q = Tableau::new();
    for i in 1..=sigma.len() {
        let (row, _col) = p.row_insert(sigma.at(i));
        if row == q.rows.len() {
            q.rows.push(Vec::new());
        }
        q.rows[row].push(i);
    }
    TableauPair { p, q }
}

/// Matched pairs `(excedance value, non-excedance position)` in emission
/// order; both coordinates are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn excedance_values(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(e, _)| e).collect()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(_, a)| a).collect()
    }
}

/// Pairs non-excedance positions with excedance values by a two-pointer
/// sweep over the excedance positions `e₁ < … < e_k` and non-excedance
/// positions `a₁ < … < a_{n−k}`: skip the non-excedance while `e_p > a_q`,
/// skip the excedance while `σ(e_p) < σ(a_q)`, otherwise match.
pub fn matching(sigma: &Permutation) -> Matching {
    let n = sigma.len();
    let exc: Vec<usize> = (1..=n).filter(|&i| sigma.at(i) > i).collect();
    let nonexc: Vec<usize> = (1..=n).filter(|&i| sigma.at(i) <= i).collect();
    let mut pairs = Vec::new();
    let (mut p, mut q) = (0, 0);
    while p < exc.len() && q < nonexc.len() {
        if exc[p] > nonexc[q] {
            q += 1;
        } else if sigma.at(exc[p]) < sigma.at(nonexc[q]) {
            p += 1;
        } else {
            pairs.push((sigma.at(exc[p]), nonexc[q]));
            p += 1;
            q += 1;
        }
    }
    Matching { pairs }
}

/// The path map on 321-avoiders: the left half reads `P` (up-step for a
/// first-row entry, down-step for a second-row entry, scanning `1..=n`),
/// the right half reads `Q` in reverse (up-step for second row, down-step
/// for first, scanning `n..=1`).
pub fn psi(sigma: &Permutation) -> Result<DyckPath> {
    let pair = rsk(sigma);
    if pair.p.rows.len() > 2 {
        return Err(Error::NotAvoiding { pattern: "321" });
    }
    let n = sigma.len();
    let mut steps = Vec::with_capacity(2 * n);
    for i in 1..=n {
        steps.push(match pair.p.row_of(i) {
            Some(1) => Step::Up,
            _ => Step::Down,
        });
    }
    for j in (1..=n).rev() {
        steps.push(match pair.q.row_of(j) {
            Some(2) => Step::Up,
            _ => Step::Down,
        });
    }
    DyckPath::from_steps(steps)
}

/// Inverse of [`psi`], computed through the other two bijections: read the
/// 132-avoider off the path, then pull it back through the insertion
/// recursion.
pub fn psi_inv(path: &DyckPath) -> Permutation {
    let avoider_132 = crate::dyck::phi_inv(path);
    crate::bijections::theta_inverse(&avoider_132)
        .expect("phi_inv output always avoids 132")
}

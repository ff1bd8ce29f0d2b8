//! Dyck paths, their tunnels, midpoint splices and the bijection with
//! 132-avoiding permutations.
//!
//! A path of semilength `n` is a word of `n` up-steps and `n` down-steps
//! whose every prefix has at least as many ups as downs. Each up-step is
//! matched to a down-step at the same height; the horizontal segment
//! between them is a tunnel, classified by the position of its midpoint
//! relative to the vertical line `x = n`. Midpoints are half-integers, so
//! they are stored doubled to keep comparisons exact.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns;
use crate::perm::{pattern_132, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    #[serde(rename = "u")]
    Up,
    #[serde(rename = "d")]
    Down,
}

/// A balanced, prefix-nonnegative word over `{U, D}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TunnelSide {
    Left,
    Centered,
    Right,
}

/// The tunnel of one up-step: ordinals of the matched steps (1-based,
/// counted among ups resp. downs), the doubled midpoint x-coordinate and
/// the side of `x = n` the midpoint falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tunnel {
    pub up_index: usize,
    pub down_index: usize,
    pub mid2: usize,
    pub side: TunnelSide,
}

impl Tunnel {
    pub fn midpoint_x(&self) -> f64 {
        self.mid2 as f64 / 2.0
    }
}

/// A decomposition `D = A·B·C` with `|A| = |C|`, `B` a nonempty Dyck path
/// and `A·C` a Dyck path; these are exactly the centered multitunnels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenteredMultitunnel {
    /// Number of steps in each of `A` and `C`.
    pub wing: usize,
    pub a: Vec<Step>,
    pub b: DyckPath,
    pub c: Vec<Step>,
}

fn word_is_dyck(steps: &[Step]) -> bool {
    let mut height = 0i64;
    for s in steps {
        height += match s {
            Step::Up => 1,
            Step::Down => -1,
        };
        if height < 0 {
            return false;
        }
    }
    height == 0
}

impl DyckPath {
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += match s {
                Step::Up => 1,
                Step::Down => -1,
            };
            if height < 0 {
                return Err(Error::DyckPrefix { index: i + 1 });
            }
        }
        if height != 0 {
            let ups = steps.iter().filter(|s| matches!(s, Step::Up)).count();
            return Err(Error::DyckUnbalanced {
                ups,
                downs: steps.len() - ups,
            });
        }
        Ok(DyckPath { steps })
    }

    fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(word_is_dyck(&steps));
        DyckPath { steps }
    }

    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    /// Semilength `n` (number of up-steps).
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One tunnel per up-step, in left-to-right order of the up-steps.
    pub fn tunnels(&self) -> Vec<Tunnel> {
        let n = self.semilength();
        let mut tunnels = Vec::with_capacity(n);
        let mut stack: Vec<(usize, usize)> = Vec::new(); // (up ordinal, word position)
        let mut ups = 0;
        let mut downs = 0;
        for (pos, step) in self.steps.iter().enumerate() {
            match step {
                Step::Up => {
                    ups += 1;
                    stack.push((ups, pos + 1));
                }
                Step::Down => {
                    downs += 1;
                    let (up_index, up_pos) = stack.pop().expect("validated path");
                    // tunnel spans x in [up_pos − 1, down_pos]
                    let mid2 = (up_pos - 1) + (pos + 1);
                    let side = match mid2.cmp(&(2 * n)) {
                        std::cmp::Ordering::Less => TunnelSide::Left,
                        std::cmp::Ordering::Equal => TunnelSide::Centered,
                        std::cmp::Ordering::Greater => TunnelSide::Right,
                    };
                    tunnels.push(Tunnel {
                        up_index,
                        down_index: downs,
                        mid2,
                        side,
                    });
                }
            }
        }
        tunnels.sort_by_key(|t| t.up_index);
        tunnels
    }

    /// `(lt, ct, rt)`: numbers of left, centered and right tunnels.
    pub fn tunnel_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for t in self.tunnels() {
            match t.side {
                TunnelSide::Left => counts.0 += 1,
                TunnelSide::Centered => counts.1 += 1,
                TunnelSide::Right => counts.2 += 1,
            }
        }
        counts
    }

    /// For a tunnel, the split `D = A·uBd·C`; both `B` and `A·C` are Dyck
    /// paths.
    pub fn tunnel_decomposition(&self, tunnel: &Tunnel) -> (Vec<Step>, DyckPath, Vec<Step>) {
        let mut ups = 0;
        let mut up_pos = 0;
        for (pos, step) in self.steps.iter().enumerate() {
            if matches!(step, Step::Up) {
                ups += 1;
                if ups == tunnel.up_index {
                    up_pos = pos;
                    break;
                }
            }
        }
        let down_pos = tunnel.mid2 - up_pos - 1;
        let a = self.steps[..up_pos].to_vec();
        let b = DyckPath::from_steps_unchecked(self.steps[up_pos + 1..down_pos].to_vec());
        let c = self.steps[down_pos + 1..].to_vec();
        (a, b, c)
    }

    /// All centered multitunnels, by increasing wing length.
    pub fn centered_multitunnels(&self) -> Vec<CenteredMultitunnel> {
        let len = self.steps.len();
        let mut splits = Vec::new();
        for wing in 0..self.semilength().max(1) {
            if self.is_empty() {
                break;
            }
            let a = &self.steps[..wing];
            let b = &self.steps[wing..len - wing];
            let c = &self.steps[len - wing..];
            let ac: Vec<Step> = a.iter().chain(c.iter()).copied().collect();
            if word_is_dyck(b) && word_is_dyck(&ac) {
                splits.push(CenteredMultitunnel {
                    wing,
                    a: a.to_vec(),
                    b: DyckPath::from_steps_unchecked(b.to_vec()),
                    c: c.to_vec(),
                });
            }
        }
        splits
    }

    /// First and last `n` steps.
    pub fn halves(&self) -> (Vec<Step>, Vec<Step>) {
        let n = self.semilength();
        (self.steps[..n].to_vec(), self.steps[n..].to_vec())
    }

    /// Midpoint splice `D₁ ⊙ D₂ = D₁^(L) · D₂ · D₁^(R)`.
    pub fn odot(&self, other: &DyckPath) -> DyckPath {
        let (left, right) = self.halves();
        let mut steps = left;
        steps.extend_from_slice(other.steps());
        steps.extend_from_slice(&right);
        DyckPath::from_steps_unchecked(steps)
    }

    /// The 132-avoiding permutation read off the path: with up-steps
    /// numbered `n…1` and down-steps `1…n` left to right, the tunnel from
    /// the up-step numbered `L` to the down-step numbered `j` gives
    /// `σ(L) = j`.
    pub fn to_avoider_132(&self) -> Permutation {
        let n = self.semilength();
        let mut values = vec![0usize; n];
        for t in self.tunnels() {
            values[n - t.up_index] = t.down_index;
        }
        Permutation::from_values_unchecked(values)
    }

    /// Inverse of [`to_avoider_132`]: rebuilds the unique path whose tunnel
    /// numbering reads back `sigma`. Rejects inputs containing 132.
    ///
    /// [`to_avoider_132`]: DyckPath::to_avoider_132
    pub fn from_avoider_132(sigma: &Permutation) -> Result<DyckPath> {
        if !patterns::avoids(sigma, &pattern_132()) {
            return Err(Error::NotAvoiding { pattern: "132" });
        }
        let n = sigma.len();
        // up-step ordinal matched by the j-th down-step
        let mut up_of_down = vec![0usize; n + 1];
        for ordinal in 1..=n {
            let label = n + 1 - ordinal;
            up_of_down[sigma.at(label)] = ordinal;
        }
        let mut steps = Vec::with_capacity(2 * n);
        let mut ups_emitted = 0;
        for &up_ordinal in &up_of_down[1..] {
            while ups_emitted < up_ordinal {
                steps.push(Step::Up);
                ups_emitted += 1;
            }
            steps.push(Step::Down);
        }
        DyckPath::from_steps(steps)
    }
}

/// `phi_inv`: Dyck path to 132-avoiding permutation.
pub fn phi_inv(path: &DyckPath) -> Permutation {
    path.to_avoider_132()
}

/// `phi`: 132-avoiding permutation to Dyck path.
pub fn phi(sigma: &Permutation) -> Result<DyckPath> {
    DyckPath::from_avoider_132(sigma)
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "u",
                Step::Down => "d",
            })?;
        }
        Ok(())
    }
}

impl Serialize for DyckPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    /// Accepts `u`/`d` in either case and `(`/`)`.
    fn from_str(text: &str) -> Result<Self> {
        let steps = text
            .trim()
            .chars()
            .map(|c| match c {
                'u' | 'U' | '(' => Ok(Step::Up),
                'd' | 'D' | ')' => Ok(Step::Down),
                other => Err(Error::BadDyckStep(other)),
            })
            .collect::<Result<Vec<Step>>>()?;
        DyckPath::from_steps(steps)
    }
}

pub fn steps_to_string(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|s| match s {
            Step::Up => 'u',
            Step::Down => 'd',
        })
        .collect()
}

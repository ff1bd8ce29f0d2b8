//! Pattern containment, avoidance and the exhaustive enumeration of
//! avoidance classes.

use serde::Serialize;

use crate::perm::Permutation;
use crate::stats;

/// An occurrence of a pattern: the ascending positions of a subsequence of
/// the host whose reduction equals the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub positions: Vec<usize>,
}

/// All occurrences of `pattern` in `sigma`, in ascending lexicographic
/// order of their position tuples.
pub fn occurrences(sigma: &Permutation, pattern: &Permutation) -> Vec<Occurrence> {
    let mut found = Vec::new();
    search(sigma, pattern, &mut Vec::new(), &mut |positions| {
        found.push(Occurrence {
            positions: positions.to_vec(),
        });
        true
    });
    found
}

/// The lexicographically smallest occurrence, or `None` when `sigma`
/// avoids the pattern.
pub fn smallest_occurrence(sigma: &Permutation, pattern: &Permutation) -> Option<Occurrence> {
    let mut first = None;
    search(sigma, pattern, &mut Vec::new(), &mut |positions| {
        first = Some(Occurrence {
            positions: positions.to_vec(),
        });
        false
    });
    first
}

pub fn avoids(sigma: &Permutation, pattern: &Permutation) -> bool {
    smallest_occurrence(sigma, pattern).is_none()
}

pub fn avoids_all(sigma: &Permutation, patterns: &[Permutation]) -> bool {
    patterns.iter().all(|p| avoids(sigma, p))
}

/// Nonnesting means `nes(σ) = 0`.
pub fn is_nonnesting(sigma: &Permutation) -> bool {
    stats::nestings(sigma) == 0
}

/// Noncrossing means `crs(σ) = 0`.
pub fn is_noncrossing(sigma: &Permutation) -> bool {
    stats::crossings(sigma) == 0
}

/// Backtracking search over ascending position tuples, kept in
/// lexicographic order. The visitor returns `false` to stop early.
fn search(
    sigma: &Permutation,
    pattern: &Permutation,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == pattern.len() {
        return visit(chosen);
    }
    let slot = chosen.len() + 1;
    let start = chosen.last().map_or(1, |&p| p + 1);
    let remaining = pattern.len() - chosen.len();
    for pos in start..=sigma.len() {
        if sigma.len() - pos + 1 < remaining {
            break;
        }
        if extends(sigma, pattern, chosen, slot, pos) {
            chosen.push(pos);
            let keep_going = search(sigma, pattern, chosen, visit);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
    }
    true
}

/// Whether mapping pattern slot `slot` to host position `pos` stays order
/// isomorphic with the already chosen slots.
fn extends(
    sigma: &Permutation,
    pattern: &Permutation,
    chosen: &[usize],
    slot: usize,
    pos: usize,
) -> bool {
    let v = sigma.at(pos);
    chosen.iter().enumerate().all(|(s, &p)| {
        let earlier = sigma.at(p);
        (earlier < v) == (pattern.at(s + 1) < pattern.at(slot))
    })
}

/// Whether the distinct-valued word `prefix` contains an occurrence of
/// `pattern` that uses the last letter. Assumes the shorter prefix already
/// avoided the pattern, so this is the only containment check needed when
/// extending by one letter.
fn prefix_gains_occurrence(prefix: &[usize], pattern: &Permutation) -> bool {
    let k = pattern.len();
    if k == 0 || prefix.len() < k {
        return k == 0;
    }
    let last = prefix.len() - 1;
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    fn rec(prefix: &[usize], pattern: &Permutation, chosen: &mut Vec<usize>, last: usize) -> bool {
        let slot = chosen.len() + 1;
        let k = pattern.len();
        if slot == k {
            // final slot is pinned to the last letter
            let ok = chosen.iter().enumerate().all(|(s, &p)| {
                (prefix[p] < prefix[last]) == (pattern.at(s + 1) < pattern.at(k))
            });
            return ok;
        }
        let start = chosen.last().map_or(0, |&p| p + 1);
        for pos in start..last {
            if last - pos < k - slot {
                break;
            }
            let fits = chosen.iter().enumerate().all(|(s, &p)| {
                (prefix[p] < prefix[pos]) == (pattern.at(s + 1) < pattern.at(slot))
            });
            if fits {
                chosen.push(pos);
                if rec(prefix, pattern, chosen, last) {
                    chosen.pop();
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(prefix, pattern, &mut chosen, last)
}

/// Lexicographic stream of the permutations of `{1..n}` avoiding every
/// pattern in `patterns`. Prefixes that already contain a pattern are
/// never extended.
pub fn enumerate_avoiders(n: usize, patterns: &[Permutation]) -> AvoiderIter<'_> {
    AvoiderIter::new(n, patterns, None)
}

/// Same stream restricted to permutations starting with `first`; disjoint
/// shards for different `first` values cover `enumerate_avoiders` exactly.
pub fn enumerate_avoiders_with_first(
    n: usize,
    patterns: &[Permutation],
    first: usize,
) -> AvoiderIter<'_> {
    AvoiderIter::new(n, patterns, Some(first))
}

pub struct AvoiderIter<'a> {
    n: usize,
    patterns: &'a [Permutation],
    /// Current prefix as values; `cursor[d]` is the next candidate value to
    /// try at depth `d`.
    prefix: Vec<usize>,
    cursor: Vec<usize>,
    used: Vec<bool>,
    pinned_first: Option<usize>,
    done: bool,
    emitted_empty: bool,
}

impl<'a> AvoiderIter<'a> {
    fn new(n: usize, patterns: &'a [Permutation], pinned_first: Option<usize>) -> Self {
        AvoiderIter {
            n,
            patterns,
            prefix: Vec::with_capacity(n),
            cursor: vec![1; n.max(1)],
            used: vec![false; n + 1],
            pinned_first,
            done: false,
            emitted_empty: false,
        }
    }

    fn candidate_ok(&self, v: usize) -> bool {
        if self.used[v] {
            return false;
        }
        if let Some(first) = self.pinned_first {
            if self.prefix.is_empty() && v != first {
                return false;
            }
        }
        true
    }
}

impl Iterator for AvoiderIter<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            // the empty permutation avoids everything except the empty pattern
            if self.patterns.iter().any(|p| p.is_empty()) {
                return None;
            }
            return Some(Permutation::identity(0));
        }
        loop {
            let depth = self.prefix.len();
            let mut advanced = false;
            for v in self.cursor[depth]..=self.n {
                if !self.candidate_ok(v) {
                    continue;
                }
                self.prefix.push(v);
                self.used[v] = true;
                self.cursor[depth] = v + 1;
                if self
                    .patterns
                    .iter()
                    .any(|p| prefix_gains_occurrence(&self.prefix, p))
                {
                    self.used[v] = false;
                    self.prefix.pop();
                    continue;
                }
                advanced = true;
                break;
            }
            if advanced {
                if self.prefix.len() == self.n {
                    let result = Permutation::from_values_unchecked(self.prefix.clone());
                    let v = self.prefix.pop().unwrap();
                    self.used[v] = false;
                    return Some(result);
                }
                self.cursor[self.prefix.len()] = 1;
                continue;
            }
            // exhausted this depth, backtrack
            match self.prefix.pop() {
                Some(v) => self.used[v] = false,
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}

/// The full avoidance class `S_n(T)` with its members in lexicographic
/// order.
#[derive(Debug, Clone, Serialize)]
pub struct AvoidanceClass {
    pub n: usize,
    pub patterns: Vec<Permutation>,
    pub members: Vec<Permutation>,
}

impl AvoidanceClass {
    pub fn build(n: usize, patterns: &[Permutation]) -> Self {
        AvoidanceClass {
            n,
            patterns: patterns.to_vec(),
            members: enumerate_avoiders(n, patterns).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    #[test]
    fn four_occurrences_of_2314() {
        let host = p("2 4 1 3 5 8 6 7");
        let occs = occurrences(&host, &p("2314"));
        assert_eq!(occs.len(), 4);
        let values: Vec<Vec<usize>> = occs
            .iter()
            .map(|o| o.positions.iter().map(|&i| host.at(i)).collect())
            .collect();
        assert_eq!(
            values,
            vec![
                vec![2, 4, 1, 5],
                vec![2, 4, 1, 8],
                vec![2, 4, 1, 6],
                vec![2, 4, 1, 7]
            ]
        );
        assert!(avoids(&host, &p("321")));
    }

    #[test]
    fn self_occurrence_and_singleton() {
        let sigma = p("3142");
        assert_eq!(
            occurrences(&sigma, &sigma),
            vec![Occurrence {
                positions: vec![1, 2, 3, 4]
            }]
        );
        assert!(!avoids(&sigma, &p("1")));
    }

    #[test]
    fn smallest_occurrence_examples() {
        let occ = smallest_occurrence(&p("4 1 6 2 7 3 5"), &p("132")).unwrap();
        assert_eq!(occ.positions, vec![1, 3, 7]);
        let occ = smallest_occurrence(&p("6 5 2 1 7 3 4"), &p("132")).unwrap();
        assert_eq!(occ.positions, vec![3, 5, 6]);
        assert!(smallest_occurrence(&p("321"), &p("132")).is_none());
    }

    #[test]
    fn smallest_is_head_of_list() {
        for sigma in enumerate_avoiders(5, &[]) {
            let head = occurrences(&sigma, &p("132")).into_iter().next();
            assert_eq!(smallest_occurrence(&sigma, &p("132")), head);
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        let members: Vec<Permutation> = enumerate_avoiders(4, &[p("321")]).collect();
        assert_eq!(members.len(), 14);
        let mut sorted = members.clone();
        sorted.sort();
        assert_eq!(members, sorted);
        assert_eq!(enumerate_avoiders(5, &[p("321")]).count(), 42);
        assert_eq!(enumerate_avoiders(0, &[p("321")]).count(), 1);
        assert_eq!(enumerate_avoiders(3, &[]).count(), 6);
    }

    #[test]
    fn sharded_enumeration_merges_in_order() {
        let patterns = [p("132")];
        let whole: Vec<Permutation> = enumerate_avoiders(5, &patterns).collect();
        let mut sharded = Vec::new();
        for first in 1..=5 {
            sharded.extend(enumerate_avoiders_with_first(5, &patterns, first));
        }
        assert_eq!(whole, sharded);
    }

    #[test]
    fn nonnesting_and_noncrossing() {
        assert!(is_nonnesting(&Permutation::identity(4)));
        assert!(is_noncrossing(&Permutation::identity(4)));
        for n in 0..=6 {
            let nonnesting: Vec<Permutation> = enumerate_avoiders(n, &[])
                .filter(is_nonnesting)
                .collect();
            let avoiders: Vec<Permutation> = enumerate_avoiders(n, &[p("321")]).collect();
            assert_eq!(nonnesting, avoiders);
        }
        assert_eq!(
            enumerate_avoiders(6, &[]).filter(is_noncrossing).count(),
            132
        );
    }

    #[test]
    fn avoidance_class_members() {
        let class = AvoidanceClass::build(4, &[p("123")]);
        assert_eq!(class.members.len(), 14);
        assert!(class.members.iter().all(|m| avoids(m, &p("123"))));
    }
}

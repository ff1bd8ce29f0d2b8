//! Permutations in one-line notation, their constructions and rearrangement
//! operators.
//!
//! Positions and values are 1-based in every public contract; the backing
//! vector is the usual 0-based `Vec`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns;

/// A permutation of `{1, …, n}` written in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from one-line values, validating that they are
    /// exactly `{1, …, n}`.
    pub fn from_values(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::OutOfRange {
                    what: "entry",
                    value: v,
                    max: n,
                });
            }
            if seen[v] {
                return Err(Error::DuplicateEntry(v as i64));
            }
            seen[v] = true;
        }
        if let Some(missing) = (1..=n).find(|&v| !seen[v]) {
            return Err(Error::NotAPermutation { n, missing });
        }
        Ok(Permutation { values })
    }

    /// Identity permutation of length `n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// Reduction of a word of pairwise distinct integers: each entry is
    /// replaced by its rank among the sorted entries.
    pub fn reduce(word: &[i64]) -> Result<Self> {
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEntry(w[0]));
        }
        let values = word
            .iter()
            .map(|v| sorted.binary_search(v).unwrap() + 1)
            .collect();
        Ok(Permutation { values })
    }

    /// Internal constructor for values already known to form a permutation.
    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_values(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }

    /// 1-based positions of each value: `inverse_table()[v-1]` is `σ⁻¹(v)`.
    pub fn inverse_table(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        inv
    }

    /// Position of value `v`, i.e. `σ⁻¹(v)`, 1-based.
    pub fn position_of(&self, v: usize) -> usize {
        self.values.iter().position(|&x| x == v).unwrap() + 1
    }

    /// Reverse `r(σ)(j) = σ(n+1−j)`.
    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// Complement `c(σ)(j) = n+1−σ(j)`.
    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Self {
        Permutation {
            values: self.inverse_table(),
        }
    }

    /// Reverse-complement: `rc(σ)(n+1−i) = n+1−σ(i)`.
    pub fn reverse_complement(&self) -> Self {
        self.complement().reverse()
    }

    /// Reverse-complement-inverse: `rci(σ)(n+1−σ(i)) = n+1−i`.
    pub fn reverse_complement_inverse(&self) -> Self {
        self.inverse().reverse_complement()
    }

    /// Word obtained by adding `a` to every entry.
    pub fn shift_add(&self, a: usize) -> Vec<usize> {
        self.values.iter().map(|&v| v + a).collect()
    }

    /// Word obtained by adding `b` to every entry that is `>= a`.
    pub fn shift_from(&self, a: usize, b: usize) -> Vec<usize> {
        shift_from_word(&self.values, a, b)
    }

    /// Inserts value `b` at position `a`, shifting entries `>= b` up by one.
    ///
    /// Both `a` and `b` must lie in `1..=n+1`. Removing position `a` of the
    /// result and reducing recovers `self`.
    pub fn insert_at(&self, a: usize, b: usize) -> Result<Self> {
        let n = self.len();
        for (what, v) in [("position", a), ("value", b)] {
            if v == 0 || v > n + 1 {
                return Err(Error::OutOfRange {
                    what,
                    value: v,
                    max: n + 1,
                });
            }
        }
        let shifted = shift_from_word(&self.values, b, 1);
        let mut values = Vec::with_capacity(n + 1);
        values.extend_from_slice(&shifted[..a - 1]);
        values.push(b);
        values.extend_from_slice(&shifted[a - 1..]);
        Ok(Permutation::from_values_unchecked(values))
    }

    /// Removes position `a` and reduces; the inverse of [`insert_at`].
    ///
    /// [`insert_at`]: Permutation::insert_at
    pub fn remove_at(&self, a: usize) -> Result<Self> {
        let n = self.len();
        if a == 0 || a > n {
            return Err(Error::OutOfRange {
                what: "position",
                value: a,
                max: n,
            });
        }
        let b = self.values[a - 1];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != a - 1)
            .map(|(_, &v)| if v > b { v - 1 } else { v })
            .collect();
        Ok(Permutation::from_values_unchecked(values))
    }

    /// Iterated insertion of the block `π`: inserts `π(i)` at position
    /// `a+i−1` for `i = 1, …, |π|`, one [`insert_at`] step at a time.
    ///
    /// [`insert_at`]: Permutation::insert_at
    pub fn insert_block(&self, a: usize, block: &Permutation) -> Result<Self> {
        if a == 0 || a > self.len() + 1 {
            return Err(Error::OutOfRange {
                what: "position",
                value: a,
                max: self.len() + 1,
            });
        }
        let mut out = self.clone();
        for (i, &b) in block.values.iter().enumerate() {
            out = out.insert_at(a + i, b)?;
        }
        Ok(out)
    }

    /// Direct sum `α ⊕ β = α.β^{+|α|}`.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let mut values = self.values.clone();
        values.extend(other.shift_add(self.len()));
        Permutation::from_values_unchecked(values)
    }

    /// The unique maximal decomposition into ⊕-irreducible components.
    pub fn sum_components(&self) -> Vec<Permutation> {
        let mut components = Vec::new();
        let mut start = 0;
        let mut max = 0;
        for (i, &v) in self.values.iter().enumerate() {
            max = max.max(v);
            if max == i + 1 {
                let block = self.values[start..=i].iter().map(|&v| v - start).collect();
                components.push(Permutation::from_values_unchecked(block));
                start = i + 1;
            }
        }
        components
    }

    pub fn is_sum_irreducible(&self) -> bool {
        !self.is_empty() && self.sum_components().len() == 1
    }

    /// The set `T(σ) = { i : σ⁻¹(i) > i < σ(i) }`, ascending.
    ///
    /// On 132-avoiders this is always a prefix `{1, …, t}` with `t ≤ n/2`;
    /// for arbitrary input the raw set is returned.
    pub fn t_set(&self) -> Vec<usize> {
        let inv = self.inverse_table();
        (1..=self.len())
            .filter(|&i| self.at(i) > i && inv[i - 1] > i)
            .collect()
    }

    /// Direct product over 132-avoiders:
    /// `α ⊗ β = β^{k⋊|α|}(1…k−1) . α^{+(k−1)} . β^{k⋊|α|}(k…|β|)` with
    /// `k = 1 + |T(β)|`. Rejects operands that contain a 132 pattern.
    pub fn direct_product(&self, other: &Permutation) -> Result<Self> {
        let p132 = pattern_132();
        for operand in [self, other] {
            if !patterns::avoids(operand, &p132) {
                return Err(Error::NotAvoiding { pattern: "132" });
            }
        }
        Ok(self.direct_product_unchecked(other))
    }

    fn direct_product_unchecked(&self, other: &Permutation) -> Self {
        let k = 1 + other.t_set().len();
        let shifted = other.shift_from(k, self.len());
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&shifted[..k - 1]);
        values.extend(self.shift_add(k - 1));
        values.extend_from_slice(&shifted[k - 1..]);
        Permutation::from_values_unchecked(values)
    }

    /// The maximal ⊗-irreducible factorization; the ⊗-product of the
    /// returned factors (left to right) reproduces `self`.
    pub fn product_components(&self) -> Result<Vec<Permutation>> {
        if !patterns::avoids(self, &pattern_132()) {
            return Err(Error::NotAvoiding { pattern: "132" });
        }
        let mut components = Vec::new();
        let mut rest = self.clone();
        while !rest.is_empty() {
            match split_first_product_factor(&rest) {
                Some((head, tail)) => {
                    components.push(head);
                    rest = tail;
                }
                None => {
                    components.push(rest);
                    break;
                }
            }
        }
        Ok(components)
    }

    pub fn is_product_irreducible(&self) -> Result<bool> {
        Ok(!self.is_empty() && self.product_components()?.len() == 1)
    }
}

fn shift_from_word(word: &[usize], a: usize, b: usize) -> Vec<usize> {
    word.iter()
        .map(|&v| if v >= a { v + b } else { v })
        .collect()
}

pub(crate) fn pattern_132() -> Permutation {
    Permutation::from_values_unchecked(vec![1, 3, 2])
}

pub(crate) fn pattern_321() -> Permutation {
    Permutation::from_values_unchecked(vec![3, 2, 1])
}

/// Finds the shortest proper split `σ = α ⊗ β` and returns `(α, β)`.
///
/// A split plants `α^{+(k−1)}` as the value block `{k, …, k+m−1}` on the
/// positions `k, …, k+m−1` where `k = 1 + |T(β)|`; scanning block lengths
/// ascending makes the first factor ⊗-irreducible.
fn split_first_product_factor(sigma: &Permutation) -> Option<(Permutation, Permutation)> {
    let n = sigma.len();
    for m in 1..n {
        for k in 1..=n - m + 1 {
            let block = &sigma.as_slice()[k - 1..k + m - 1];
            if block.iter().any(|&v| v < k || v >= k + m) {
                continue;
            }
            let alpha = Permutation::from_values_unchecked(
                block.iter().map(|&v| v - (k - 1)).collect(),
            );
            let beta_values: Vec<usize> = sigma
                .as_slice()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i < k - 1 || i >= k + m - 1)
                .map(|(_, &v)| if v >= k + m { v - m } else { v })
                .collect();
            let beta = Permutation::from_values_unchecked(beta_values);
            if k == 1 + beta.t_set().len() && &alpha.direct_product_unchecked(&beta) == sigma {
                return Some((alpha, beta));
            }
        }
    }
    None
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts entries separated by spaces or commas, or the compact digit
    /// form (`"4132"`) when every entry is a single digit.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(Permutation::identity(0));
        }
        let values: Vec<usize> = if trimmed.contains([' ', ',']) {
            trimmed
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::BadEntry(t.to_string())))
                .collect::<Result<_>>()?
        } else {
            trimmed
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or(Error::BadEntry(c.to_string()))
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_values(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    /// Rank oracle: position of each entry when the word is sorted, found by
    /// direct counting rather than sorting.
    fn reduce_oracle(word: &[i64]) -> Vec<usize> {
        word.iter()
            .map(|&v| 1 + word.iter().filter(|&&w| w < v).count())
            .collect()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(Permutation::reduce(&[4, 3, 7, 9, 5]).unwrap(), p("2 1 4 5 3"));
        assert_eq!(Permutation::reduce(&[1, 2, 3]).unwrap(), p("1 2 3"));
        assert_eq!(Permutation::reduce(&[10, 20, 5]).unwrap(), p("2 3 1"));
        assert_eq!(
            Permutation::reduce(&[3, 3]).unwrap_err(),
            Error::DuplicateEntry(3)
        );
    }

    #[test]
    fn reduce_matches_rank_oracle() {
        for word in [
            vec![4, 3, 7, 9, 5],
            vec![-2, 8, 0, 3],
            vec![100],
            vec![9, 1, 5, 7, 3, 2],
        ] {
            assert_eq!(
                Permutation::reduce(&word).unwrap().as_slice().to_vec(),
                reduce_oracle(&word)
            );
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("4 1 6 2 7 3 5").to_string(), "4 1 6 2 7 3 5");
        assert_eq!(p("4,1,3,2"), p("4132"));
        assert_eq!(p(""), Permutation::identity(0));
        assert!("4 4".parse::<Permutation>().is_err());
        assert!("1 3".parse::<Permutation>().is_err());
        assert!("a b".parse::<Permutation>().is_err());
    }

    #[test]
    fn trivial_involutions() {
        let pi = p("4 1 5 3 2");
        assert_eq!(pi.reverse(), p("2 3 5 1 4"));
        assert_eq!(pi.complement(), p("2 5 1 3 4"));
        assert_eq!(pi.inverse(), p("2 5 4 1 3"));
        assert_eq!(pi.reverse_complement(), p("4 3 1 5 2"));
        assert_eq!(pi.reverse_complement_inverse(), p("3 5 2 1 4"));

        // r, c, i are involutions
        assert_eq!(pi.reverse().reverse(), pi);
        assert_eq!(pi.complement().complement(), pi);
        assert_eq!(pi.inverse().inverse(), pi);

        // identity is fixed by i, rc and rci; r and c send it to n…21
        let id = Permutation::identity(6);
        assert_eq!(id.inverse(), id);
        assert_eq!(id.reverse_complement(), id);
        assert_eq!(id.reverse_complement_inverse(), id);
        assert_eq!(id.reverse(), p("6 5 4 3 2 1"));
        assert_eq!(id.complement(), p("6 5 4 3 2 1"));
    }

    #[test]
    fn rci_pointwise_formula() {
        let pi = p("4 1 6 2 7 3 5");
        assert_eq!(pi.reverse_complement_inverse(), p("3 5 1 7 2 4 6"));
        // rci = i∘c∘r as a composition check
        assert_eq!(
            pi.reverse().complement().inverse(),
            pi.reverse_complement_inverse()
        );
    }

    #[test]
    fn shift_operators() {
        assert_eq!(p("312").shift_add(2), vec![5, 3, 4]);
        assert_eq!(p("312").shift_add(0), vec![3, 1, 2]);
        assert_eq!(p("21").shift_add(3), vec![5, 4]);
        assert_eq!(p("4132").shift_from(3, 2), vec![6, 1, 5, 2]);
        assert_eq!(p("4132").shift_from(3, 0), vec![4, 1, 3, 2]);
        // §3 worked product uses this shift with b = |α| = 3.
        assert_eq!(p("5 4 3 6 1 2").shift_from(3, 3), vec![8, 7, 6, 9, 1, 2]);
    }

    #[test]
    fn insert_at_examples() {
        assert_eq!(p("3142").insert_at(2, 3).unwrap(), p("43152"));
        assert_eq!(p("1").insert_at(2, 2).unwrap(), p("12"));
        assert!(p("312").insert_at(5, 1).is_err());
        assert!(p("312").insert_at(1, 0).is_err());
    }

    #[test]
    fn insert_remove_round_trip() {
        for sigma in [p("3142"), p("1"), p("45312"), Permutation::identity(0)] {
            let n = sigma.len();
            for a in 1..=n + 1 {
                for b in 1..=n + 1 {
                    let bigger = sigma.insert_at(a, b).unwrap();
                    assert_eq!(bigger.remove_at(a).unwrap(), sigma);
                    assert_eq!(bigger.at(a), b);
                }
            }
        }
    }

    #[test]
    fn insert_block_examples() {
        assert_eq!(p("3142").insert_block(3, &p("213")).unwrap(), p("6241375"));
        // appending the new maximum is insertion of value n+1 at the end;
        // inserting value 1 there instead shifts everything up
        let sigma = p("231");
        assert_eq!(sigma.insert_block(4, &p("1")).unwrap(), p("3421"));
        assert_eq!(sigma.insert_at(4, 4).unwrap(), p("2314"));
        // step-by-step expansion oracle
        let manual = p("3142")
            .insert_at(3, 2)
            .unwrap()
            .insert_at(4, 1)
            .unwrap()
            .insert_at(5, 3)
            .unwrap();
        assert_eq!(manual, p("6241375"));
    }

    #[test]
    fn direct_sum_and_components() {
        assert_eq!(p("312").direct_sum(&p("231")), p("312564"));
        let id = Permutation::identity(4);
        assert_eq!(id.sum_components().len(), 4);
        let sigma = p("2 4 1 3 5 8 6 7");
        let comps = sigma.sum_components();
        assert_eq!(comps, vec![p("2413"), p("1"), p("312")]);
        let rebuilt = comps
            .into_iter()
            .reduce(|a, b| a.direct_sum(&b))
            .unwrap();
        assert_eq!(rebuilt, sigma);
        assert!(p("2413").is_sum_irreducible());
        assert!(!p("12").is_sum_irreducible());
    }

    #[test]
    fn t_set_examples() {
        assert_eq!(p("5 4 3 6 1 2").t_set(), vec![1, 2]);
        assert!(Permutation::identity(5).t_set().is_empty());
    }

    #[test]
    fn direct_product_examples() {
        assert_eq!(
            p("312").direct_product(&p("5 4 3 6 1 2")).unwrap(),
            p("8 7 5 3 4 6 9 1 2")
        );
        assert_eq!(p("1").direct_product(&p("1")).unwrap(), p("12"));
        assert!(p("1").direct_product(&p("132")).is_err());
    }

    #[test]
    fn product_components_recompose() {
        let sigma = p("312")
            .direct_product(&p("1"))
            .unwrap()
            .direct_product(&p("3421"))
            .unwrap();
        let comps = sigma.product_components().unwrap();
        assert_eq!(comps, vec![p("312"), p("1"), p("3421")]);
        let rebuilt = comps
            .into_iter()
            .reduce(|a, b| a.direct_product(&b).unwrap())
            .unwrap();
        assert_eq!(rebuilt, sigma);
        assert!(p("12").product_components().unwrap().len() > 1);
    }
}

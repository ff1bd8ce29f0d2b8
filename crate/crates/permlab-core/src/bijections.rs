//! The bijections between 321-avoiding and 132-avoiding permutations.
//!
//! `theta` is computed by an insertion recursion over prefixes: with
//! `π = red(σ(1…n−1))`, `k = σ(n)` and `j−1` the number of matched
//! excedance values of `π` below `k`, the image is
//! `Θ(σ) = Θ(π)^{(n−k+j, j)}`. The same map is also available as the
//! composition through Dyck paths (`theta_composed`), and the two routes
//! agree everywhere. `gamma` repeatedly rewrites the smallest 132 pattern
//! into a 321 pattern; it equals `theta` after reverse-complement-inverse.

use serde::Serialize;

use crate::dyck::phi_inv;
use crate::error::{Error, Result};
use crate::patterns;
use crate::perm::{pattern_132, pattern_321, Permutation};
use crate::stats;
use crate::tableaux::{matching, psi};

/// One prefix step of the insertion recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaTraceRow {
    /// Prefix length.
    pub l: usize,
    /// `red(σ(1…l))`.
    pub prefix: Permutation,
    /// `(position, value)` inserted into the previous image; `None` on the
    /// base row.
    pub insertion: Option<(usize, usize)>,
    /// Image of the reduced prefix.
    pub image: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ThetaTrace {
    pub rows: Vec<ThetaTraceRow>,
}

fn ensure_avoids(sigma: &Permutation, pattern: &Permutation, name: &'static str) -> Result<()> {
    if patterns::avoids(sigma, pattern) {
        Ok(())
    } else {
        Err(Error::NotAvoiding { pattern: name })
    }
}

/// `theta` with the full prefix-by-prefix trace.
pub fn theta_with_trace(sigma: &Permutation) -> Result<(Permutation, ThetaTrace)> {
    ensure_avoids(sigma, &pattern_321(), "321")?;
    let mut rows = Vec::with_capacity(sigma.len());
    let mut image = Permutation::identity(0);
    let mut reduced_prev = Permutation::identity(0);
    for l in 1..=sigma.len() {
        let reduced: Permutation = Permutation::reduce(
            &sigma.as_slice()[..l]
                .iter()
                .map(|&v| v as i64)
                .collect::<Vec<_>>(),
        )
        .expect("prefix of a permutation has distinct entries");
        if l == 1 {
            image = Permutation::identity(1);
            rows.push(ThetaTraceRow {
                l,
                prefix: reduced.clone(),
                insertion: None,
                image: image.clone(),
            });
        } else {
            let k = reduced.at(l);
            let below_k = matching(&reduced_prev)
                .excedance_values()
                .iter()
                .filter(|&&e| e < k)
                .count();
            let j = below_k + 1;
            let position = l - k + j;
            image = image.insert_at(position, j)?;
            rows.push(ThetaTraceRow {
                l,
                prefix: reduced.clone(),
                insertion: Some((position, j)),
                image: image.clone(),
            });
        }
        reduced_prev = reduced;
    }
    Ok((image, ThetaTrace { rows }))
}

/// The recursion route of the 321→132 bijection.
pub fn theta(sigma: &Permutation) -> Result<Permutation> {
    theta_with_trace(sigma).map(|(image, _)| image)
}

/// The composed route `phi_inv ∘ psi` of the same bijection.
pub fn theta_composed(sigma: &Permutation) -> Result<Permutation> {
    Ok(phi_inv(&psi(sigma)?))
}

/// Smallest non-excedance position `i` (with `σ(i) <= i`); exists for any
/// nonempty permutation.
fn min_non_excedance(sigma: &Permutation) -> usize {
    (1..=sigma.len())
        .find(|&i| sigma.at(i) <= i)
        .expect("nonempty permutation has a non-excedance")
}

/// Inverse of [`theta`]: peels the minimum non-excedance `k` of `α` via
/// `Θ⁻¹(α) = Θ⁻¹(β)^{(|α|, |α|+α(k)−k)}` where `β^{(k,α(k))} = α`.
pub fn theta_inverse(alpha: &Permutation) -> Result<Permutation> {
    ensure_avoids(alpha, &pattern_132(), "132")?;
    let mut stack = Vec::with_capacity(alpha.len());
    let mut current = alpha.clone();
    while current.len() > 1 {
        let k = min_non_excedance(&current);
        let value = current.at(k);
        let n = current.len();
        stack.push((n, n + value - k));
        current = current.remove_at(k)?;
    }
    let mut result = current;
    for (position, value) in stack.into_iter().rev() {
        result = result.insert_at(position, value)?;
    }
    Ok(result)
}

/// Rewrites the smallest 132 occurrence into decreasing order (a 321
/// pattern); identity on 132-avoiders.
pub fn m_step(sigma: &Permutation) -> Permutation {
    match patterns::smallest_occurrence(sigma, &pattern_132()) {
        None => sigma.clone(),
        Some(occ) => {
            let mut values = sigma.as_slice().to_vec();
            let mut triple: Vec<usize> = occ.positions.iter().map(|&i| values[i - 1]).collect();
            triple.sort_unstable_by(|a, b| b.cmp(a));
            for (&pos, &v) in occ.positions.iter().zip(&triple) {
                values[pos - 1] = v;
            }
            Permutation::from_values_unchecked(values)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GammaTrace {
    /// The chain `σ, Mσ, M²σ, …, Γ(σ)`.
    pub steps: Vec<Permutation>,
}

/// Iterates [`m_step`] on a 321-avoider until the result avoids 132.
///
/// Each rewrite strictly increases the inversion count, which bounds the
/// chain length by `n(n−1)/2`.
pub fn gamma_with_trace(sigma: &Permutation) -> Result<(Permutation, GammaTrace)> {
    ensure_avoids(sigma, &pattern_321(), "321")?;
    let p132 = pattern_132();
    let mut steps = vec![sigma.clone()];
    let mut current = sigma.clone();
    while !patterns::avoids(&current, &p132) {
        let next = m_step(&current);
        assert!(
            stats::inversions(&next) > stats::inversions(&current),
            "rewrite must increase inversions"
        );
        steps.push(next.clone());
        current = next;
    }
    Ok((current, GammaTrace { steps }))
}

pub fn gamma(sigma: &Permutation) -> Result<Permutation> {
    gamma_with_trace(sigma).map(|(image, _)| image)
}

/// Both sides of the sum/product exchange `Θ(σ₁ ⊕ σ₂) = Θ(σ₂) ⊗ Θ(σ₁)`,
/// computed independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumProductCheck {
    pub lhs: Permutation,
    pub rhs: Permutation,
    pub equal: bool,
}

pub fn theta_sum_product(sigma1: &Permutation, sigma2: &Permutation) -> Result<SumProductCheck> {
    let lhs = theta(&sigma1.direct_sum(sigma2))?;
    let rhs = theta(sigma2)?.direct_product(&theta(sigma1)?)?;
    let equal = lhs == rhs;
    Ok(SumProductCheck { lhs, rhs, equal })
}

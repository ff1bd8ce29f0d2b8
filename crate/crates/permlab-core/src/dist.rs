//! Joint distribution polynomials over avoidance classes, Wilf-class
//! partitioning, the two-variable Catalan recurrence and continued-fraction
//! series expansion.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns;
use crate::perm::Permutation;
use crate::poly::MultiPoly;
use crate::stats::{statistics, Statistics};

/// The six statistics a distribution can be taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    Fp,
    Exc,
    Crs,
    Nes,
    Inv,
    Maj,
}

impl Stat {
    pub const ALL: [Stat; 6] = [Stat::Fp, Stat::Exc, Stat::Crs, Stat::Nes, Stat::Inv, Stat::Maj];

    pub fn name(self) -> &'static str {
        match self {
            Stat::Fp => "fp",
            Stat::Exc => "exc",
            Stat::Crs => "crs",
            Stat::Nes => "nes",
            Stat::Inv => "inv",
            Stat::Maj => "maj",
        }
    }

    pub fn of(self, s: &Statistics) -> usize {
        match self {
            Stat::Fp => s.fp,
            Stat::Exc => s.exc,
            Stat::Crs => s.crs,
            Stat::Nes => s.nes,
            Stat::Inv => s.inv,
            Stat::Maj => s.maj,
        }
    }
}

impl FromStr for Stat {
    type Err = Error;

    fn from_str(text: &str) -> Result<Stat> {
        Stat::ALL
            .into_iter()
            .find(|s| s.name() == text)
            .ok_or_else(|| Error::UnknownStatistic(text.to_string()))
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Default variable names, following the usual conventions: `crs ↦ x` and
/// `nes ↦ y` on their own, but `crs ↦ p` alongside `exc`/`inv`/`maj`
/// (which prefer `q`); `fp ↦ x`. Collisions fall back to the first unused
/// name in canonical order.
pub fn default_vars(stats: &[Stat]) -> Vec<(Stat, String)> {
    let q_mode = stats
        .iter()
        .any(|s| matches!(s, Stat::Exc | Stat::Inv | Stat::Maj));
    let mut taken: Vec<String> = Vec::new();
    let mut out = Vec::with_capacity(stats.len());
    for &stat in stats {
        let preferred = match stat {
            Stat::Fp => "x",
            Stat::Crs if q_mode => "p",
            Stat::Crs => "x",
            Stat::Nes => "y",
            Stat::Exc | Stat::Inv | Stat::Maj => "q",
        };
        let name = if taken.iter().any(|t| t == preferred) {
            ["x", "y", "q", "p", "z"]
                .into_iter()
                .find(|c| !taken.iter().any(|t| t == c))
                .expect("at most five statistics requested")
                .to_string()
        } else {
            preferred.to_string()
        };
        taken.push(name.clone());
        out.push((stat, name));
    }
    out
}

fn monomial_for(sigma: &Permutation, stats: &[(Stat, String)]) -> MultiPoly {
    let record = statistics(sigma);
    stats.iter().fold(MultiPoly::one(), |acc, (stat, var)| {
        acc.mul(&MultiPoly::var_pow(var, stat.of(&record) as u32))
    })
}

/// `Σ_{σ ∈ S_n(T)} Π var^{stat(σ)}` with an explicit statistic-to-variable
/// assignment. An empty pattern list sums over all of `S_n`.
pub fn distribution_with_vars(
    n: usize,
    patterns: &[Permutation],
    stats: &[(Stat, String)],
    jobs: usize,
) -> MultiPoly {
    if jobs > 1 && n > 1 {
        let shards: Vec<MultiPoly> = std::thread::scope(|scope| {
            let handles: Vec<_> = (1..=n)
                .map(|first| {
                    scope.spawn(move || {
                        patterns::enumerate_avoiders_with_first(n, patterns, first)
                            .map(|sigma| monomial_for(&sigma, stats))
                            .fold(MultiPoly::zero(), |acc, t| acc.add(&t))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        return shards
            .into_iter()
            .fold(MultiPoly::zero(), |acc, s| acc.add(&s));
    }
    patterns::enumerate_avoiders(n, patterns)
        .map(|sigma| monomial_for(&sigma, stats))
        .fold(MultiPoly::zero(), |acc, t| acc.add(&t))
}

/// [`distribution_with_vars`] under the default variable assignment.
pub fn distribution(n: usize, patterns: &[Permutation], stats: &[Stat]) -> MultiPoly {
    distribution_with_vars(n, patterns, &default_vars(stats), 1)
}

/// One Wilf class: patterns sharing the same joint distribution for every
/// length in range, with that common distribution as witness.
#[derive(Debug, Clone, Serialize)]
pub struct WilfClass {
    pub patterns: Vec<Permutation>,
    /// The shared distribution polynomial for `n = 1, …, n_max`.
    pub witness: Vec<MultiPoly>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WilfReport {
    pub stats: Vec<Stat>,
    pub n_max: usize,
    pub classes: Vec<WilfClass>,
}

/// Partitions `patterns` into classes whose joint distributions agree for
/// every `n <= n_max`. Classes are ordered by their smallest member.
pub fn wilf_partition(patterns: &[Permutation], stats: &[Stat], n_max: usize) -> WilfReport {
    let vars = default_vars(stats);
    let mut sorted: Vec<Permutation> = patterns.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut classes: Vec<WilfClass> = Vec::new();
    for pattern in sorted {
        let dists: Vec<MultiPoly> = (1..=n_max)
            .map(|n| distribution_with_vars(n, std::slice::from_ref(&pattern), &vars, 1))
            .collect();
        match classes.iter_mut().find(|c| c.witness == dists) {
            Some(class) => class.patterns.push(pattern),
            None => classes.push(WilfClass {
                patterns: vec![pattern],
                witness: dists,
            }),
        }
    }
    WilfReport {
        stats: stats.to_vec(),
        n_max,
        classes,
    }
}

impl WilfReport {
    /// The partition as sorted pattern lists, dropping witnesses.
    pub fn partition(&self) -> Vec<Vec<Permutation>> {
        self.classes.iter().map(|c| c.patterns.clone()).collect()
    }
}

/// `C_n(q, p)`: the two-variable Catalan polynomial defined by
/// `C_n = C_{n−1} + q Σ_{k=0}^{n−2} p^k C_k C_{n−1−k}` with `C_0 = C_1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalanQP {
    pub n: usize,
    pub poly: MultiPoly,
}

/// The table `C_0(q,p), …, C_n(q,p)`.
pub fn catalan_qp_table(n: usize) -> Vec<MultiPoly> {
    let q = MultiPoly::var("q");
    let p = MultiPoly::var("p");
    let mut table: Vec<MultiPoly> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m <= 1 {
            table.push(MultiPoly::one());
            continue;
        }
        let mut sum = MultiPoly::zero();
        for k in 0..=m - 2 {
            sum = sum.add(&p.pow(k as u32).mul(&table[k]).mul(&table[m - 1 - k]));
        }
        let next = table[m - 1].add(&q.mul(&sum));
        table.push(next);
    }
    table
}

pub fn catalan_qp(n: usize) -> CatalanQP {
    CatalanQP {
        n,
        poly: catalan_qp_table(n).pop().unwrap(),
    }
}

/// The `n`-th Catalan number.
pub fn catalan_number(n: usize) -> BigInt {
    let mut c = BigInt::from(1);
    for k in 0..n {
        c = c * (2 * (2 * k as i64 + 1)) / (k as i64 + 2);
    }
    c
}

/// Numerator coefficients of a continued fraction
/// `1 / (1 − c₁ z / (1 − c₂ z / (1 − …)))`, one polynomial per level.
pub struct CfracSpec {
    level: Box<dyn Fn(usize) -> MultiPoly + Send + Sync>,
}

impl CfracSpec {
    pub fn from_fn(level: impl Fn(usize) -> MultiPoly + Send + Sync + 'static) -> Self {
        CfracSpec {
            level: Box::new(level),
        }
    }

    pub fn coefficient(&self, level: usize) -> MultiPoly {
        (self.level)(level)
    }

    /// Ladder `1, q, p, qp, p², qp², …`: level `2m` carries `q·p^{m−1}`,
    /// level `2m+1` carries `p^m`.
    pub fn qp_catalan() -> Self {
        CfracSpec::from_fn(|level| {
            if level % 2 == 0 {
                MultiPoly::var("q").mul(&MultiPoly::var_pow("p", (level / 2 - 1) as u32))
            } else {
                MultiPoly::var_pow("p", (level / 2) as u32)
            }
        })
    }

    /// Ladder `1, 1, (x+y), (x+y), (x²+xy+y²), …`: levels `2m−1` and `2m`
    /// both carry the complete homogeneous bracket
    /// `Σ_{i+j=m−1} x^i y^j`.
    pub fn crs_nes() -> Self {
        CfracSpec::from_fn(|level| {
            let degree = level.div_ceil(2) - 1;
            let mut sum = MultiPoly::zero();
            for i in 0..=degree {
                sum = sum.add(
                    &MultiPoly::var_pow("x", i as u32)
                        .mul(&MultiPoly::var_pow("y", (degree - i) as u32)),
                );
            }
            sum
        })
    }

    /// All levels `1`: the classical Catalan fraction.
    pub fn ones() -> Self {
        CfracSpec::from_fn(|_| MultiPoly::one())
    }
}

/// Coefficients of `z^0, …, z^N` of the continued fraction, exact through
/// `z^N`: truncating at depth `N+1` suffices because level `m` first
/// contributes at `z`-degree `m`.
pub fn cfrac_series(spec: &CfracSpec, n_terms: usize) -> Vec<MultiPoly> {
    cfrac_series_at_depth(spec, n_terms, n_terms + 1)
}

/// Same expansion with an explicit truncation depth; exposed so tests can
/// confirm depth `N+1` and `N+2` agree on the first `N+1` coefficients.
pub fn cfrac_series_at_depth(spec: &CfracSpec, n_terms: usize, depth: usize) -> Vec<MultiPoly> {
    // series F_m = 1 / (1 − c_m z F_{m+1}), computed bottom-up from
    // F_{depth+1} = 1; all series are truncated to n_terms+1 coefficients.
    let mut f: Vec<MultiPoly> = vec![MultiPoly::one()];
    f.resize(n_terms + 1, MultiPoly::zero());
    for level in (1..=depth).rev() {
        let c = spec.coefficient(level);
        // u = c·z·F has coefficients u_j = c·F_{j−1}; invert 1 − u by
        // s_0 = 1, s_m = Σ_{j=1..m} u_j s_{m−j}.
        let u: Vec<MultiPoly> = (0..=n_terms)
            .map(|j| {
                if j == 0 {
                    MultiPoly::zero()
                } else {
                    c.mul(&f[j - 1])
                }
            })
            .collect();
        let mut s: Vec<MultiPoly> = Vec::with_capacity(n_terms + 1);
        s.push(MultiPoly::one());
        for m in 1..=n_terms {
            let mut acc = MultiPoly::zero();
            for j in 1..=m {
                acc = acc.add(&u[j].mul(&s[m - j]));
            }
            s.push(acc);
        }
        f = s;
    }
    f
}

/// The inversion distribution over 321-avoiders computed three ways: the
/// one-variable recurrence `I_n = I_{n−1} + Σ q^{k+1} I_k I_{n−1−k}`, the
/// substitution `C_n(q, q)`, and direct enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct InvDistCheck {
    pub i_n: MultiPoly,
    pub c_n_qq: MultiPoly,
    pub equal: bool,
}

pub fn inv_dist_table(n: usize) -> Vec<MultiPoly> {
    let q = MultiPoly::var("q");
    let mut table: Vec<MultiPoly> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m <= 1 {
            table.push(MultiPoly::one());
            continue;
        }
        let mut sum = MultiPoly::zero();
        for k in 0..=m - 2 {
            sum = sum.add(&q.pow(k as u32 + 1).mul(&table[k]).mul(&table[m - 1 - k]));
        }
        table.push(table[m - 1].add(&sum));
    }
    table
}

pub fn inv_dist_check(n: usize) -> InvDistCheck {
    let i_n = inv_dist_table(n).pop().unwrap();
    let c_n_qq = catalan_qp(n).poly.substitute("p", &MultiPoly::var("q"));
    let pattern: Permutation = "321".parse().unwrap();
    let enumerated = distribution(n, &[pattern], &[Stat::Inv]);
    let equal = i_n == c_n_qq && i_n == enumerated;
    InvDistCheck { i_n, c_n_qq, equal }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    fn s3_patterns() -> Vec<Permutation> {
        ["123", "132", "213", "231", "312", "321"]
            .iter()
            .map(|t| p(t))
            .collect()
    }

    #[test]
    fn stat_parsing() {
        assert_eq!("crs".parse::<Stat>().unwrap(), Stat::Crs);
        assert!("cross".parse::<Stat>().is_err());
    }

    #[test]
    fn default_variable_conventions() {
        let vars = default_vars(&[Stat::Crs]);
        assert_eq!(vars[0].1, "x");
        let vars = default_vars(&[Stat::Exc, Stat::Crs]);
        assert_eq!(vars[0].1, "q");
        assert_eq!(vars[1].1, "p");
        let vars = default_vars(&[Stat::Fp, Stat::Exc, Stat::Crs]);
        assert_eq!(
            vars.iter().map(|(_, v)| v.as_str()).collect::<Vec<_>>(),
            vec!["x", "q", "p"]
        );
        let vars = default_vars(&[Stat::Fp, Stat::Exc, Stat::Inv, Stat::Crs, Stat::Nes]);
        let names: Vec<&str> = vars.iter().map(|(_, v)| v.as_str()).collect();
        assert_eq!(names.len(), 5);
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 5, "assigned variables must be distinct");
    }

    #[test]
    fn table_4_distributions() {
        let rows: [(&str, &str, &str); 5] = [
            ("123", "7+6x+x^2", "4+8x+2x^2"),
            ("132", "8+4x+2x^2", "7+5x+2x^2"),
            ("321", "8+4x+2x^2", "14"),
            ("231", "8+5x+x^2", "8+5x+x^2"),
            ("312", "13+x", "8+5x+x^2"),
        ];
        for (pattern, crs_expected, nes_expected) in rows {
            let pat = [p(pattern)];
            let crs = distribution(4, &pat, &[Stat::Crs]);
            assert_eq!(crs.pretty(), crs_expected, "crs over S_4({pattern})");
            let nes = distribution_with_vars(
                4,
                &pat,
                &[(Stat::Nes, "x".to_string())],
                1,
            );
            assert_eq!(nes.pretty(), nes_expected, "nes over S_4({pattern})");
        }
        // 213 shares the 132 row
        assert_eq!(
            distribution(4, &[p("213")], &[Stat::Crs]),
            distribution(4, &[p("132")], &[Stat::Crs])
        );
    }

    #[test]
    fn distribution_edge_cases() {
        assert_eq!(distribution(0, &[], &[Stat::Crs]).pretty(), "1");
        assert_eq!(
            distribution(3, &[p("321")], &[Stat::Exc, Stat::Crs]).pretty(),
            "1+2q+q^2+qp"
        );
        // constant-free request counts the class
        assert_eq!(distribution(4, &[p("123")], &[]).pretty(), "14");
    }

    #[test]
    fn sharded_distribution_agrees() {
        let single = distribution_with_vars(
            6,
            &[],
            &default_vars(&[Stat::Crs, Stat::Nes]),
            1,
        );
        let sharded = distribution_with_vars(
            6,
            &[],
            &default_vars(&[Stat::Crs, Stat::Nes]),
            4,
        );
        assert_eq!(single, sharded);
    }

    #[test]
    fn wilf_partition_nes() {
        let report = wilf_partition(&s3_patterns(), &[Stat::Nes], 6);
        let classes: Vec<Vec<String>> = report
            .partition()
            .iter()
            .map(|c| c.iter().map(|p| p.to_string()).collect())
            .collect();
        assert_eq!(
            classes,
            vec![
                vec!["1 2 3".to_string()],
                vec!["1 3 2".to_string(), "2 1 3".to_string()],
                vec!["2 3 1".to_string(), "3 1 2".to_string()],
                vec!["3 2 1".to_string()],
            ]
        );
    }

    #[test]
    fn catalan_qp_small_values() {
        let table = catalan_qp_table(3);
        assert_eq!(table[0].pretty(), "1");
        assert_eq!(table[1].pretty(), "1");
        assert_eq!(table[2].pretty(), "1+q");
        assert_eq!(table[3].pretty(), "1+2q+q^2+qp");
        assert_eq!(
            catalan_qp(3).poly,
            distribution(3, &[p("321")], &[Stat::Exc, Stat::Crs])
        );
    }

    #[test]
    fn catalan_numbers() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan_number(n), BigInt::from(c));
            let at_one = catalan_qp(n)
                .poly
                .substitute("q", &MultiPoly::one())
                .substitute("p", &MultiPoly::one());
            assert_eq!(at_one.as_constant(), Some(BigInt::from(c)));
        }
    }

    #[test]
    fn cfrac_all_ones_gives_catalan() {
        let coeffs = cfrac_series(&CfracSpec::ones(), 5);
        let values: Vec<String> = coeffs.iter().map(|c| c.pretty()).collect();
        assert_eq!(values, vec!["1", "1", "2", "5", "14", "42"]);
    }

    #[test]
    fn cfrac_qp_matches_recurrence() {
        let coeffs = cfrac_series(&CfracSpec::qp_catalan(), 6);
        let table = catalan_qp_table(6);
        assert_eq!(coeffs, table);
    }

    #[test]
    fn cfrac_crs_nes_matches_enumeration() {
        let coeffs = cfrac_series(&CfracSpec::crs_nes(), 4);
        assert_eq!(coeffs[3].pretty(), "4+x+y");
        let full_s4 = distribution(4, &[], &[Stat::Crs, Stat::Nes]);
        assert_eq!(coeffs[4], full_s4);
    }

    #[test]
    fn cfrac_depth_margin_is_enough() {
        let at_depth = |d| cfrac_series_at_depth(&CfracSpec::qp_catalan(), 6, d);
        assert_eq!(at_depth(7), at_depth(8));
    }

    #[test]
    fn inv_dist_small() {
        for n in 0..=6 {
            assert!(inv_dist_check(n).equal, "inversion routes differ at n={n}");
        }
        assert_eq!(inv_dist_check(3).i_n.pretty(), "1+2q+2q^2");
    }
}

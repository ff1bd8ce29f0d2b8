//! Sparse multivariate polynomials with exact big-integer coefficients.
//!
//! Terms are kept in a canonical order: ascending total degree, ties broken
//! lexicographically on the exponent vector. Variables are kept in the
//! canonical order `x, y, q, p, z` followed by any other names
//! alphabetically, and variables whose exponent is zero in every term are
//! pruned, so two polynomials are equal exactly when they represent the
//! same formal sum.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serialize;

const CANONICAL: [&str; 5] = ["x", "y", "q", "p", "z"];

fn var_rank(name: &str) -> (usize, String) {
    match CANONICAL.iter().position(|&v| v == name) {
        Some(i) => (i, String::new()),
        None => (CANONICAL.len(), name.to_string()),
    }
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Mono(Vec<u32>);

type Terms = Vec<(Mono, BigInt)>;

impl Mono {
    fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        // within a degree level, higher power of an earlier variable comes
        // first: 7+6x+x^2, 1+2q+q^2+qp, x^2+xy+y^2
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<T: Into<BigInt>>(value: T) -> Self {
        let value = value.into();
        let mut terms = BTreeMap::new();
        if value != BigInt::ZERO {
            terms.insert(Mono(Vec::new()), value);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    /// The single variable `name`.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), BigInt::from(1));
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// `name^exp`.
    pub fn var_pow(name: &str, exp: u32) -> Self {
        if exp == 0 {
            return MultiPoly::one();
        }
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![exp]), BigInt::from(1));
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Drops variables that no term uses, keeping the representation
    /// canonical.
    fn prune(mut self) -> Self {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|&(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let exps = m
                    .0
                    .iter()
                    .zip(&used)
                    .filter(|&(_, &u)| u)
                    .map(|(&e, _)| e)
                    .collect();
                (Mono(exps), c)
            })
            .collect();
        MultiPoly { vars, terms }
    }

    /// Rewrites both polynomials over the union of their variables.
    fn aligned(&self, other: &Self) -> (Vec<String>, Terms, Terms) {
        let mut vars: Vec<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        vars.sort_by_key(|v| var_rank(v));
        vars.dedup();
        let remap = |poly: &MultiPoly| -> Terms {
            let index: Vec<usize> = poly
                .vars
                .iter()
                .map(|v| vars.iter().position(|w| w == v).unwrap())
                .collect();
            poly.terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = vec![0u32; vars.len()];
                    for (i, &e) in m.0.iter().enumerate() {
                        exps[index[i]] = e;
                    }
                    (Mono(exps), c.clone())
                })
                .collect()
        };
        (vars.clone(), remap(self), remap(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (vars, left, right) = self.aligned(other);
        let mut terms: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (m, c) in left.into_iter().chain(right) {
            let entry = terms.entry(m).or_default();
            *entry += c;
        }
        terms.retain(|_, c| *c != BigInt::ZERO);
        MultiPoly { vars, terms }.prune()
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (vars, left, right) = self.aligned(other);
        let mut terms: BTreeMap<Mono, BigInt> = BTreeMap::new();
        for (ml, cl) in &left {
            for (mr, cr) in &right {
                let exps: Vec<u32> = ml.0.iter().zip(&mr.0).map(|(a, b)| a + b).collect();
                let entry = terms.entry(Mono(exps)).or_default();
                *entry += cl * cr;
            }
        }
        terms.retain(|_, c| *c != BigInt::ZERO);
        MultiPoly { vars, terms }.prune()
    }

    pub fn scale<T: Into<BigInt>>(&self, factor: T) -> Self {
        self.mul(&MultiPoly::constant(factor))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = MultiPoly::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Replaces `var` by `replacement`; other variables are untouched.
    pub fn substitute(&self, var: &str, replacement: &Self) -> Self {
        let Some(index) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = MultiPoly {
                vars: self
                    .vars
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != index)
                    .map(|(_, v)| v.clone())
                    .collect(),
                terms: BTreeMap::new(),
            };
            let exps: Vec<u32> = m
                .0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, &e)| e)
                .collect();
            rest.terms.insert(Mono(exps), c.clone());
            out = out.add(&rest.mul(&replacement.pow(m.0[index])));
        }
        out
    }

    /// Coefficient of the monomial given as `(var, exponent)` pairs;
    /// unmentioned variables are taken to the zeroth power.
    pub fn coefficient_of(&self, monomial: &[(&str, u32)]) -> BigInt {
        let mut exps = vec![0u32; self.vars.len()];
        for &(name, e) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => exps[i] = e,
                None if e == 0 => {}
                None => return BigInt::ZERO,
            }
        }
        self.terms.get(&Mono(exps)).cloned().unwrap_or(BigInt::ZERO)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::ZERO),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.total() == 0)
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Terms in canonical order as `(exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Human-readable ascending form, e.g. `7+6x+x^2` or `1+2q+qp+q^2`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono = self.pretty_mono(m);
            let abs = c.magnitude().to_string();
            if c.sign() == num_bigint::Sign::Minus {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            if mono.is_empty() {
                out.push_str(&abs);
            } else {
                if abs != "1" {
                    out.push_str(&abs);
                }
                out.push_str(&mono);
            }
        }
        out
    }

    fn pretty_mono(&self, m: &Mono) -> String {
        let mut out = String::new();
        for (v, &e) in self.vars.iter().zip(&m.0) {
            match e {
                0 => {}
                1 => out.push_str(v),
                _ => {
                    out.push_str(v);
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }

    /// CSV rendering: a `coeff`-terminated header row, then one row per
    /// term in canonical order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for v in &self.vars {
            out.push_str(v);
            out.push(',');
        }
        out.push_str("coeff\n");
        for (m, c) in &self.terms {
            for e in &m.0 {
                out.push_str(&e.to_string());
                out.push(',');
            }
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}

/// JSON form `{"vars": […], "terms": [{"exp": […], "coeff": "…"}, …]}`;
/// coefficients are decimal strings so that arbitrary precision survives
/// any JSON reader.
impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a MultiPoly);
        struct Term<'a>(&'a Mono, &'a BigInt);

        impl Serialize for Term<'_> {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(2))?;
                map.serialize_entry("exp", &self.0 .0)?;
                map.serialize_entry("coeff", &self.1.to_string())?;
                map.end()
            }
        }

        impl Serialize for Terms<'_> {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.terms.len()))?;
                for (m, c) in &self.0.terms {
                    seq.serialize_element(&Term(m, c))?;
                }
                seq.end()
            }
        }

        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("vars", &self.vars)?;
        map.serialize_entry("terms", &Terms(self))?;
        map.end()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> MultiPoly {
        MultiPoly::var("q")
    }

    #[test]
    fn arithmetic_basics() {
        let one_plus_q = MultiPoly::one().add(&q());
        let square = one_plus_q.mul(&one_plus_q);
        assert_eq!(square.pretty(), "1+2q+q^2");
        assert_eq!(square.coefficient_of(&[("q", 1)]), BigInt::from(2));
        assert_eq!(square.coefficient_of(&[("q", 3)]), BigInt::ZERO);
        assert!(square.sub(&square).is_zero());
        assert_eq!(MultiPoly::zero().pretty(), "0");
    }

    #[test]
    fn substitution_merges_variables() {
        let qp = q().mul(&MultiPoly::var("p"));
        assert_eq!(qp.substitute("p", &q()).pretty(), "q^2");
        let poly = MultiPoly::one().add(&qp);
        assert_eq!(poly.substitute("p", &MultiPoly::one()).pretty(), "1+q");
        assert_eq!(poly.substitute("missing", &q()), poly);
    }

    #[test]
    fn canonical_order_and_pretty() {
        // q^2 and qp share a degree; q^2 leads because q is the earlier variable
        let c3 = MultiPoly::one()
            .add(&q().scale(2))
            .add(&q().pow(2))
            .add(&q().mul(&MultiPoly::var("p")));
        assert_eq!(c3.pretty(), "1+2q+q^2+qp");
        let mixed = MultiPoly::var("y").add(&MultiPoly::var("x"));
        assert_eq!(mixed.pretty(), "x+y");
        assert_eq!(q().sub(&MultiPoly::one()).pretty(), "-1+q");
    }

    #[test]
    fn constant_polynomials_prune_vars() {
        let c = q().sub(&q()).add(&MultiPoly::constant(14));
        assert!(c.vars().is_empty());
        assert_eq!(c.pretty(), "14");
        assert_eq!(c.as_constant(), Some(BigInt::from(14)));
    }

    #[test]
    fn json_shape() {
        let poly = MultiPoly::one().add(&q().mul(&MultiPoly::var("p")));
        let json = serde_json::to_string(&poly).unwrap();
        assert_eq!(
            json,
            r#"{"vars":["q","p"],"terms":[{"exp":[0,0],"coeff":"1"},{"exp":[1,1],"coeff":"1"}]}"#
        );
    }

    #[test]
    fn csv_shape() {
        let poly = MultiPoly::one().add(&q().scale(2));
        assert_eq!(poly.to_csv(), "q,coeff\n0,1\n1,2\n");
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 0..5).prop_map(|terms| {
            terms
                .into_iter()
                .map(|((ex, ey), c)| {
                    MultiPoly::var_pow("x", ex)
                        .mul(&MultiPoly::var_pow("y", ey))
                        .scale(c)
                })
                .fold(MultiPoly::zero(), |acc, t| acc.add(&t))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }
}

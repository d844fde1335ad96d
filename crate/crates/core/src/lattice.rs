//! Integer lattice primitives: exponent vectors, multi-indices, facet linear
//! forms, and polynomial germs.
//!
//! `Exponent` lives in the variable space (length `n`, entries `≥ 0`),
//! `MultiIndex` in the facet space (length `s`, entries of any sign). The
//! two are deliberately distinct types. Linear-form values and exponent
//! entries are machine integers with overflow checks enabled in every
//! profile; all germ coefficients and all linear algebra downstream are
//! arbitrary-precision.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A monomial exponent vector `k = (k_1, …, k_n)`, all entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(Vec<i64>);

impl Exponent {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.iter().any(|&e| e < 0) {
            return Err(Error::Invalid(format!(
                "exponent entries must be non-negative, got {:?}",
                entries
            )));
        }
        Ok(Exponent(entries))
    }

    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, j: usize) -> i64 {
        self.0[j]
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
        )
    }
}

/// An `s`-tuple of integers: a value of `(v_1, …, v_s)` or a series
/// exponent. Entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(s: usize) -> Self {
        MultiIndex(vec![0; s])
    }

    pub fn ones(s: usize) -> Self {
        MultiIndex(vec![1; s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// Componentwise partial order: `self_i ≥ other_i` for every `i`.
    pub fn geq(&self, other: &MultiIndex) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::ArityMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a >= b))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `self + 1_I` for the subset encoded in `mask` (bit `i` set ⇔ `i ∈ I`).
    pub fn plus_indicator_mask(&self, mask: u64) -> MultiIndex {
        MultiIndex(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &a)| a + ((mask >> i) & 1) as i64)
                .collect(),
        )
    }

    pub fn plus_ones(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|a| a + 1).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
        )
    }
}

/// The `s`-tuple `1_I`: entry `i` is 1 when `i ∈ indices` (0-based), else 0.
pub fn indicator_tuple(indices: &[usize], s: usize) -> Result<MultiIndex> {
    let mut v = vec![0i64; s];
    for &i in indices {
        if i >= s {
            return Err(Error::Invalid(format!(
                "indicator index {} out of range for arity {}",
                i, s
            )));
        }
        v[i] = 1;
    }
    Ok(MultiIndex(v))
}

/// Renders a subset mask as `{1,3}` with 1-based facet indices.
pub fn subset_label(mask: u64, s: usize) -> String {
    let mut parts = Vec::new();
    for i in 0..s {
        if (mask >> i) & 1 == 1 {
            parts.push((i + 1).to_string());
        }
    }
    format!("{{{}}}", parts.join(","))
}

/// A facet equation `a_1 k_1 + … + a_n k_n = d` with positive integer
/// coefficients and `gcd(a_1, …, a_n, d) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coefficients: Vec<i64>,
    degree: i64,
}

impl LinearForm {
    pub fn new(coefficients: Vec<i64>, degree: i64) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Invalid("linear form needs at least one coefficient".into()));
        }
        if coefficients.iter().any(|&a| a < 1) {
            return Err(Error::Invalid(format!(
                "linear form coefficients must be ≥ 1, got {:?}",
                coefficients
            )));
        }
        if degree < 1 {
            return Err(Error::Invalid(format!("linear form degree must be ≥ 1, got {}", degree)));
        }
        let mut g = degree;
        for &a in &coefficients {
            g = g.gcd(&a);
        }
        if g != 1 {
            return Err(Error::Invalid(format!(
                "linear form {:?} = {} is not primitive (gcd {})",
                coefficients, degree, g
            )));
        }
        Ok(LinearForm { coefficients, degree })
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// `Σ_j a_j k_j`, exact.
    pub fn evaluate(&self, k: &Exponent) -> Result<i64> {
        if k.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: k.dim(),
            });
        }
        Ok(self.eval_unchecked(k.entries()))
    }

    pub(crate) fn eval_unchecked(&self, k: &[i64]) -> i64 {
        self.coefficients.iter().zip(k).map(|(a, e)| a * e).sum()
    }

    /// Flat `[a_1, …, a_n, d]` representation used in files and reports.
    pub fn as_row(&self) -> Vec<i64> {
        let mut row = self.coefficients.clone();
        row.push(self.degree);
        row
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .zip(vars)
            .map(|(a, v)| {
                if *a == 1 {
                    format!("k_{}", v)
                } else {
                    format!("{}*k_{}", a, v)
                }
            })
            .collect();
        format!("{} = {}", terms.join(" + "), self.degree)
    }
}

/// A finite sum of monomials with non-zero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialGerm {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, BigRational>,
}

impl PolynomialGerm {
    /// Builds a germ, dropping explicit zero coefficients.
    pub fn new(vars: Vec<String>, terms: BTreeMap<Exponent, BigRational>) -> Result<Self> {
        let n = vars.len();
        for k in terms.keys() {
            if k.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: k.dim(),
                });
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(PolynomialGerm { vars, terms })
    }

    /// Germ with all coefficients 1, e.g. for hull-only computations.
    pub fn from_support(vars: Vec<String>, support: &[Exponent]) -> Result<Self> {
        let one = BigRational::from(BigInt::from(1));
        let terms = support.iter().cloned().map(|k| (k, one.clone())).collect();
        PolynomialGerm::new(vars, terms)
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: &Exponent) -> Option<&BigRational> {
        self.terms.get(k)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn min_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.total_degree()).min()
    }

    pub fn max_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.total_degree()).max()
    }
}

impl fmt::Display for PolynomialGerm {
    /// Canonical form: terms in ascending lexicographic exponent order,
    /// parseable back by [`crate::parse::parse_polynomial`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let one = BigRational::from(BigInt::from(1));
            if mag != one || k.is_zero() {
                factors.push(mag.to_string());
            }
            for (j, &e) in k.entries().iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars[j].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars[j], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// All `k ≥ 0` with `form(k) ≤ bound`, in lexicographic order. Finite
/// because every coefficient of the form is positive.
pub fn points_with_form_at_most(form: &LinearForm, bound: i64) -> Vec<Exponent> {
    let mut out = Vec::new();
    if bound < 0 {
        return out;
    }
    let n = form.dim();
    let mut current = vec![0i64; n];
    fn rec(
        form: &LinearForm,
        j: usize,
        remaining: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<Exponent>,
    ) {
        if j == form.dim() {
            out.push(Exponent::new(current.clone()).expect("non-negative by construction"));
            return;
        }
        let a = form.coefficients()[j];
        let max = remaining / a;
        for e in 0..=max {
            current[j] = e;
            rec(form, j + 1, remaining - a * e, current, out);
        }
        current[j] = 0;
    }
    rec(form, 0, bound, &mut current, &mut out);
    out
}

/// All `k ≥ 0` in `n` variables with total degree `≤ bound`, lexicographic.
pub fn points_with_degree_at_most(n: usize, bound: i64) -> Vec<Exponent> {
    let form = LinearForm::new(vec![1; n], 1).expect("all-ones form is primitive");
    points_with_form_at_most(&form, bound)
}

/// All `k`-element subsets of `0..n`, each ascending, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(e: &[i64]) -> Exponent {
        Exponent::new(e.to_vec()).unwrap()
    }

    #[test]
    fn evaluate_form_examples() {
        let l = LinearForm::new(vec![2, 3], 10).unwrap();
        assert_eq!(l.evaluate(&exp(&[2, 2])).unwrap(), 10);

        let l = LinearForm::new(vec![1, 1, 1], 4).unwrap();
        assert_eq!(l.evaluate(&exp(&[0, 0, 0])).unwrap(), 0);

        let l = LinearForm::new(vec![11, 4, 5], 80).unwrap();
        assert_eq!(l.evaluate(&exp(&[0, 0, 16])).unwrap(), 80);
    }

    #[test]
    fn evaluate_form_rejects_dimension_mismatch() {
        let l = LinearForm::new(vec![2, 3], 10).unwrap();
        assert!(l.evaluate(&exp(&[1, 2, 3])).is_err());
    }

    #[test]
    fn evaluate_form_is_linear_and_dominates_degree() {
        let l = LinearForm::new(vec![2, 3], 10).unwrap();
        for a in 0..5i64 {
            for b in 0..5i64 {
                for c in 0..3i64 {
                    for d in 0..3i64 {
                        let k1 = exp(&[a, b]);
                        let k2 = exp(&[c, d]);
                        let sum = k1.add(&k2);
                        assert_eq!(
                            l.evaluate(&sum).unwrap(),
                            l.evaluate(&k1).unwrap() + l.evaluate(&k2).unwrap()
                        );
                        assert!(l.evaluate(&k1).unwrap() >= k1.total_degree());
                    }
                }
            }
        }
    }

    #[test]
    fn form_requires_primitivity_and_positivity() {
        assert!(LinearForm::new(vec![2, 4, 6], 8).is_err());
        assert!(LinearForm::new(vec![0, 1], 1).is_err());
        assert!(LinearForm::new(vec![1, 1], 0).is_err());
        assert!(LinearForm::new(vec![2, 3], 10).is_ok());
    }

    #[test]
    fn indicator_tuple_examples() {
        assert_eq!(indicator_tuple(&[], 3).unwrap().entries(), &[0, 0, 0]);
        assert_eq!(indicator_tuple(&[0, 1, 2], 3).unwrap().entries(), &[1, 1, 1]);
        assert_eq!(indicator_tuple(&[1], 4).unwrap().entries(), &[0, 1, 0, 0]);
        assert!(indicator_tuple(&[4], 4).is_err());
    }

    #[test]
    fn geq_examples() {
        let a = MultiIndex::new(vec![10, 10]);
        assert!(a.geq(&a).unwrap());
        let b = MultiIndex::new(vec![5, 15]);
        let c = MultiIndex::new(vec![10, 10]);
        assert!(!b.geq(&c).unwrap());
        let d = MultiIndex::new(vec![4, 5, 5, 5]);
        assert!(!d.geq(&d.plus_ones()).unwrap());
        assert!(d.geq(&MultiIndex::new(vec![4, 5])).is_err());
    }

    #[test]
    fn enumeration_under_form_bound() {
        let l = LinearForm::new(vec![2, 3], 10).unwrap();
        let pts = points_with_form_at_most(&l, 6);
        // 2x + 3y <= 6: (0,0),(0,1),(0,2),(1,0),(1,1),(2,0),(3,0)
        assert_eq!(pts.len(), 7);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(points_with_form_at_most(&l, -1).is_empty());
    }

    #[test]
    fn combinations_cover_all_subsets() {
        let c = combinations(5, 3);
        assert_eq!(c.len(), 10);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn germ_display_round_trips_via_parser() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let g = crate::parse::parse_polynomial("x^5 + x^2*y^2 + y^5", &vars).unwrap();
        let s = g.to_string();
        let g2 = crate::parse::parse_polynomial(&s, &vars).unwrap();
        assert_eq!(g, g2);
    }
}

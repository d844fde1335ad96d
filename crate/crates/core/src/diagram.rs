//! Newton diagram construction and inspection.
//!
//! The diagram of a support set is the family of compact `(n-1)`-dimensional
//! faces of `conv(support + R^n_{≥0})`. Facets are found by brute force:
//! every `n`-point subset of the support that affinely spans a hyperplane is
//! fitted exactly; hyperplanes whose normal cannot be oriented strictly
//! positive are discarded, the rest are kept when the whole support lies on
//! the non-negative side. That is `O(|support|^n)` subsets, which is fine at
//! the scales this crate targets (`|support| ≤ ~25`, `n ≤ 4`).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{combinations, Exponent, LinearForm, MultiIndex};
use crate::linalg;

/// The Newton diagram of a support set: ordered facet list, the support
/// itself, the diagram vertices, and the common vertex when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonDiagram {
    n: usize,
    facets: Vec<LinearForm>,
    support: Vec<Exponent>,
    vertices: Vec<Exponent>,
    stellar_vertex: Option<Exponent>,
}

impl NewtonDiagram {
    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[LinearForm] {
        &self.facets
    }

    pub fn support(&self) -> &[Exponent] {
        &self.support
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn stellar_vertex(&self) -> Option<&Exponent> {
        self.stellar_vertex.as_ref()
    }

    /// `u(f) = (d^(1), …, d^(s))`: every support point satisfies
    /// `ℓ_i ≥ d^(i)` with equality attained, so the germ's value under the
    /// i-th facet valuation is exactly the facet degree.
    pub fn u_of_f(&self) -> MultiIndex {
        MultiIndex::new(self.facets.iter().map(|l| l.degree()).collect())
    }

    /// `u(x_j) = (a_j^(1), …, a_j^(s))`, column `j` of the coefficient matrix.
    pub fn u_of_variables(&self) -> Vec<MultiIndex> {
        (0..self.n)
            .map(|j| MultiIndex::new(self.facets.iter().map(|l| l.coefficients()[j]).collect()))
            .collect()
    }

    /// Reorders the facet list (for reporting in a caller-chosen order).
    /// The permutation must be a bijection onto the computed facet set.
    pub fn with_facet_order(mut self, ordered: Vec<LinearForm>) -> Result<Self> {
        let ours: BTreeSet<&LinearForm> = self.facets.iter().collect();
        let theirs: BTreeSet<&LinearForm> = ordered.iter().collect();
        if ours != theirs || ordered.len() != self.facets.len() {
            return Err(Error::Invalid(
                "facet reordering must permute the computed facets".into(),
            ));
        }
        self.facets = ordered;
        Ok(self)
    }
}

/// Computes the Newton diagram of a non-empty, convenient support set.
///
/// The support is convenient when it contains a pure power of every
/// variable; non-convenient input is rejected, not repaired.
pub fn compute_diagram(support: &[Exponent]) -> Result<NewtonDiagram> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let n = support[0].dim();
    if n < 2 {
        return Err(Error::UnsupportedDimension { n });
    }
    for k in support {
        if k.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: k.dim() });
        }
    }
    let mut support: Vec<Exponent> = support.to_vec();
    support.sort();
    support.dedup();

    if support.iter().any(|k| k.is_zero()) {
        return Err(Error::OriginInSupport);
    }
    for axis in 0..n {
        let has_pure_power = support
            .iter()
            .any(|k| k.get(axis) > 0 && k.entries().iter().enumerate().all(|(j, &e)| j == axis || e == 0));
        if !has_pure_power {
            return Err(Error::NotConvenient { axis });
        }
    }

    let mut facet_set: BTreeSet<LinearForm> = BTreeSet::new();
    for subset in combinations(support.len(), n) {
        let pts: Vec<&[i64]> = subset.iter().map(|&i| support[i].entries()).collect();
        let Some((mut a, mut d)) = linalg::hyperplane_through(&pts) else {
            continue; // affinely dependent, or does not span a hyperplane
        };
        // Orient so the first non-zero coefficient is positive.
        if let Some(first) = a.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in a.iter_mut() {
                    *x = -x.clone();
                }
                d = -d;
            }
        }
        if a.iter().any(|x| !x.is_positive()) {
            continue; // not a compact-facet direction
        }
        linalg::make_primitive(&mut a, &mut d);
        let coeffs: Option<Vec<i64>> = a.iter().map(|x| x.to_i64()).collect();
        let (Some(coeffs), Some(d)) = (coeffs, d.to_i64()) else {
            return Err(Error::Invalid(
                "facet coefficients exceed the machine-integer range".into(),
            ));
        };
        let Ok(form) = LinearForm::new(coeffs, d) else {
            continue; // d ≤ 0 cannot happen without the origin; keep the guard
        };
        let supporting = support
            .iter()
            .all(|k| form.eval_unchecked(k.entries()) >= form.degree());
        if supporting {
            facet_set.insert(form);
        }
    }
    let facets: Vec<LinearForm> = facet_set.into_iter().collect();
    if facets.is_empty() {
        return Err(Error::Invalid(
            "no compact facets found; the support does not span a diagram".into(),
        ));
    }

    let mut vertex_set: BTreeSet<Exponent> = BTreeSet::new();
    for form in &facets {
        let on_facet: Vec<&Exponent> = support
            .iter()
            .filter(|k| form.eval_unchecked(k.entries()) == form.degree())
            .collect();
        for p in &on_facet {
            if is_extreme(p, &on_facet, n) {
                vertex_set.insert((*p).clone());
            }
        }
    }
    let vertices: Vec<Exponent> = vertex_set.into_iter().collect();

    let stellar_vertex = vertices
        .iter()
        .find(|m| {
            facets
                .iter()
                .all(|l| l.eval_unchecked(m.entries()) == l.degree())
        })
        .cloned();

    Ok(NewtonDiagram { n, facets, support, vertices, stellar_vertex })
}

/// `p` is extreme in the finite set `points` when it is not a convex
/// combination of the others. By Carathéodory it suffices to test subsets
/// of at most `n` points (everything lives in an (n-1)-dimensional facet).
fn is_extreme(p: &Exponent, points: &[&Exponent], n: usize) -> bool {
    let others: Vec<&Exponent> = points.iter().filter(|q| **q != p).cloned().collect();
    let rat = |e: i64| BigRational::from(BigInt::from(e));
    for size in 2..=n.min(others.len()) {
        for subset in combinations(others.len(), size) {
            // Solve Σ λ_t q_t = p, Σ λ_t = 1 exactly; any solution with
            // λ ≥ 0 certifies p ∈ conv(subset).
            let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
            for coord in 0..n {
                rows.push(subset.iter().map(|&t| rat(others[t].get(coord))).collect());
            }
            rows.push(vec![rat(1); size]);
            let mut rhs: Vec<BigRational> = (0..n).map(|coord| rat(p.get(coord))).collect();
            rhs.push(rat(1));
            if let Some(lambda) = linalg::solve_exact(&rows, &rhs) {
                if lambda.iter().all(|l| !l.is_negative()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Returns a diagram vertex lying on every facet, the lexicographically
/// smallest when several qualify, or `None`.
pub fn is_stellar(diagram: &NewtonDiagram) -> Option<Exponent> {
    diagram.stellar_vertex().cloned()
}

/// Outcome of checking user-supplied facet data against a computed diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetValidation {
    pub passed: bool,
    /// Computed facets absent from the user's list.
    pub missing: Vec<LinearForm>,
    /// User facets that are not facets of the diagram.
    pub extra: Vec<LinearForm>,
    pub note: Option<String>,
}

/// Confirms set equality of user facets with the computed ones, up to
/// ordering. An empty user list passes vacuously with a note.
pub fn validate_user_facets(diagram: &NewtonDiagram, user: &[LinearForm]) -> FacetValidation {
    if user.is_empty() {
        return FacetValidation {
            passed: true,
            missing: Vec::new(),
            extra: Vec::new(),
            note: Some("no user facets supplied; nothing to check".into()),
        };
    }
    let computed: BTreeSet<&LinearForm> = diagram.facets().iter().collect();
    let given: BTreeSet<&LinearForm> = user.iter().collect();
    let missing: Vec<LinearForm> = computed.difference(&given).map(|l| (*l).clone()).collect();
    let extra: Vec<LinearForm> = given.difference(&computed).map(|l| (*l).clone()).collect();
    FacetValidation {
        passed: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
        note: None,
    }
}

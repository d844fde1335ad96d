//! Facet valuations on ambient germs and order functions on the
//! hypersurface ring.
//!
//! For a monomial `x^k` the i-th facet valuation is `u_i(x^k) = ℓ_i(k)`;
//! for a germ it is the minimum over the support. The induced order
//! function on `O/(f)` maximizes `u_i` over representatives of a residue
//! class; it is computed by an ascending sequence of exact membership
//! tests `g ∈ U_i(c) + (f)`, where `U_i(c)` is spanned by the monomials
//! with `ℓ_i ≥ c`.

use num_rational::BigRational;

use crate::diagram::NewtonDiagram;
use crate::error::{Error, Result};
use crate::lattice::{points_with_form_at_most, Exponent, MultiIndex, PolynomialGerm};
use crate::linalg::{RankAccumulator, SparseRow};
use std::collections::BTreeMap;

/// A diagram together with cached variable and germ values.
#[derive(Clone, Debug)]
pub struct ValuationProfile {
    diagram: NewtonDiagram,
    u_vars: Vec<MultiIndex>,
    u_f: MultiIndex,
}

/// Value of the ambient valuation vector on a germ: componentwise minimum
/// over the support, or infinity for the zero germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GermOrder {
    Finite(MultiIndex),
    Infinite,
}

/// Result of an order-function computation with a budget: either the exact
/// maximum over the residue class, or the statement that it is at least the
/// budget (which is all a finite computation can certify).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderValue {
    Exact(i64),
    AtLeast(i64),
    Infinite,
}

impl ValuationProfile {
    pub fn new(diagram: NewtonDiagram) -> Self {
        let u_vars = diagram.u_of_variables();
        let u_f = diagram.u_of_f();
        ValuationProfile { diagram, u_vars, u_f }
    }

    pub fn diagram(&self) -> &NewtonDiagram {
        &self.diagram
    }

    pub fn arity(&self) -> usize {
        self.diagram.facet_count()
    }

    pub fn n_vars(&self) -> usize {
        self.diagram.n_vars()
    }

    pub fn u_of_variables(&self) -> &[MultiIndex] {
        &self.u_vars
    }

    pub fn u_of_f(&self) -> &MultiIndex {
        &self.u_f
    }

    pub fn max_degree(&self) -> i64 {
        self.diagram
            .facets()
            .iter()
            .map(|l| l.degree())
            .max()
            .expect("diagram has at least one facet")
    }

    /// `(ℓ_1(k), …, ℓ_s(k))`.
    pub fn u_monomial(&self, k: &Exponent) -> Result<MultiIndex> {
        if k.dim() != self.n_vars() {
            return Err(Error::DimensionMismatch { expected: self.n_vars(), got: k.dim() });
        }
        Ok(MultiIndex::new(
            self.diagram
                .facets()
                .iter()
                .map(|l| l.eval_unchecked(k.entries()))
                .collect(),
        ))
    }

    /// Componentwise minimum of `u` over the support of `g`.
    pub fn u_germ(&self, g: &PolynomialGerm) -> Result<GermOrder> {
        if g.is_zero() {
            return Ok(GermOrder::Infinite);
        }
        let mut min: Option<Vec<i64>> = None;
        for (k, _) in g.terms() {
            let u = self.u_monomial(k)?;
            match &mut min {
                None => min = Some(u.entries().to_vec()),
                Some(m) => {
                    for (mi, &ui) in m.iter_mut().zip(u.entries()) {
                        if ui < *mi {
                            *mi = ui;
                        }
                    }
                }
            }
        }
        Ok(GermOrder::Finite(MultiIndex::new(min.expect("non-zero germ"))))
    }

    /// Default search budget for [`order_value`]: the ambient value plus
    /// three times the largest facet degree.
    pub fn default_budget(&self, base: i64) -> i64 {
        base + 3 * self.max_degree()
    }

    /// The order-function value `v_i(g) = max { u_i(g') : g' ≡ g mod f }`,
    /// searched up to `budget`.
    ///
    /// Ascends `c` from the ambient value `u_i(g)`; the class of `g` admits
    /// a representative of value `≥ c` exactly when the projection of `g`
    /// onto the monomials with `ℓ_i < c` lies in the projected span of the
    /// translates `x^a f`. The answer is the largest such `c` below the
    /// budget, or `AtLeast(budget)`.
    pub fn order_value(
        &self,
        f: &PolynomialGerm,
        g: &PolynomialGerm,
        facet: usize,
        budget: i64,
    ) -> Result<OrderValue> {
        assert!(facet < self.arity(), "facet index out of range");
        assert!(!f.is_zero(), "defining germ must be non-zero");
        if g.is_zero() {
            return Ok(OrderValue::Infinite);
        }
        let base = match self.u_germ(g)? {
            GermOrder::Finite(u) => u.get(facet),
            GermOrder::Infinite => unreachable!("g is non-zero"),
        };
        if budget < base {
            return Err(Error::BudgetTooSmall { budget, base });
        }
        let form = &self.diagram.facets()[facet];
        let d = form.degree();
        for c in (base + 1)..=budget {
            // Monomials below level c under ℓ_facet, and the translates
            // x^a f whose truncation to them is non-zero.
            let low = points_with_form_at_most(form, c - 1);
            let ids: BTreeMap<&Exponent, u32> =
                low.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
            let mut acc = RankAccumulator::new();
            for a in points_with_form_at_most(form, c - 1 - d) {
                let row = truncated_translate_row(f, &a, &ids);
                if !row.is_zero() {
                    acc.insert(row);
                }
            }
            let g_row = truncated_germ_row(g, &ids);
            if !acc.contains(g_row) {
                return Ok(OrderValue::Exact(c - 1));
            }
        }
        Ok(OrderValue::AtLeast(budget))
    }
}

fn truncated_translate_row(
    f: &PolynomialGerm,
    shift: &Exponent,
    ids: &BTreeMap<&Exponent, u32>,
) -> SparseRow {
    let entries: Vec<(u32, BigRational)> = f
        .terms()
        .filter_map(|(k, coeff)| {
            let m = shift.add(k);
            ids.get(&m).map(|&id| (id, coeff.clone()))
        })
        .collect();
    SparseRow::from_rational_entries(entries)
}

fn truncated_germ_row(g: &PolynomialGerm, ids: &BTreeMap<&Exponent, u32>) -> SparseRow {
    let entries: Vec<(u32, BigRational)> = g
        .terms()
        .filter_map(|(k, coeff)| ids.get(k).map(|&id| (id, coeff.clone())))
        .collect();
    SparseRow::from_rational_entries(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::compute_diagram;
    use crate::parse::parse_polynomial;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn exp(e: &[i64]) -> Exponent {
        Exponent::new(e.to_vec()).unwrap()
    }

    fn curve_profile() -> (ValuationProfile, PolynomialGerm) {
        let v = vars(&["x", "y"]);
        let f = parse_polynomial("x^5 + x^2*y^2 + y^5", &v).unwrap();
        let d = compute_diagram(&f.support()).unwrap();
        (ValuationProfile::new(d), f)
    }

    #[test]
    fn u_monomial_examples() {
        let (p, _) = curve_profile();
        // facet order is lexicographic: (2,3|10) first
        assert_eq!(p.u_monomial(&exp(&[2, 0])).unwrap().entries(), &[4, 6]);
        assert_eq!(p.u_monomial(&exp(&[0, 0])).unwrap().entries(), &[0, 0]);
    }

    #[test]
    fn u_monomial_five_facet_example() {
        let v = vars(&["x", "y", "z"]);
        let f = parse_polynomial(
            "x^20+y^20+z^16+x^8*y^8+x^6*y^6*z^2+x^2*y^2*z^10+x^3*y^8*z^3+x^8*y^3*z^3",
            &v,
        )
        .unwrap();
        let d = compute_diagram(&f.support()).unwrap();
        let order = vec![
            LinearForm::new(vec![1, 1, 1], 14).unwrap(),
            LinearForm::new(vec![2, 3, 5], 40).unwrap(),
            LinearForm::new(vec![3, 2, 5], 40).unwrap(),
            LinearForm::new(vec![11, 4, 5], 80).unwrap(),
            LinearForm::new(vec![4, 11, 5], 80).unwrap(),
        ];
        let d = d.with_facet_order(order).unwrap();
        let p = ValuationProfile::new(d);
        assert_eq!(
            p.u_monomial(&exp(&[8, 8, 0])).unwrap().entries(),
            &[16, 40, 40, 120, 120]
        );
    }

    use crate::lattice::LinearForm;

    #[test]
    fn u_germ_examples() {
        let (p, f) = curve_profile();
        let v = vars(&["x", "y"]);
        let g = parse_polynomial("x^3 + y^2", &v).unwrap();
        match p.u_germ(&g).unwrap() {
            GermOrder::Finite(u) => assert_eq!(u.get(0), 6),
            GermOrder::Infinite => panic!("finite expected"),
        }
        match p.u_germ(&f).unwrap() {
            GermOrder::Finite(u) => assert_eq!(u, p.u_of_f().clone()),
            GermOrder::Infinite => panic!("finite expected"),
        }
        let g = parse_polynomial("x^5 + x^2*y^2", &v).unwrap();
        match p.u_germ(&g).unwrap() {
            GermOrder::Finite(u) => assert_eq!(u.entries(), &[10, 10]),
            GermOrder::Infinite => panic!("finite expected"),
        }
        let zero = parse_polynomial("x - x", &v).unwrap();
        assert_eq!(p.u_germ(&zero).unwrap(), GermOrder::Infinite);
    }

    #[test]
    fn order_value_examples() {
        let (p, f) = curve_profile();
        let v = vars(&["x", "y"]);

        let g = parse_polynomial("x^5 + x^2*y^2", &v).unwrap();
        assert_eq!(p.order_value(&f, &g, 0, 20).unwrap(), OrderValue::Exact(15));

        let g = parse_polynomial("x^2", &v).unwrap();
        assert_eq!(p.order_value(&f, &g, 0, 20).unwrap(), OrderValue::Exact(4));

        for budget in [10, 25, 40] {
            assert_eq!(p.order_value(&f, &f, 0, budget).unwrap(), OrderValue::AtLeast(budget));
        }
    }

    #[test]
    fn order_value_rejects_small_budget() {
        let (p, f) = curve_profile();
        let g = parse_polynomial("x^5 + x^2*y^2", &vars(&["x", "y"])).unwrap();
        assert!(matches!(
            p.order_value(&f, &g, 0, 9),
            Err(Error::BudgetTooSmall { budget: 9, base: 10 })
        ));
    }

    #[test]
    fn order_value_is_superadditive_not_additive() {
        // v(x^2 · (x^3 + y^2)) = 15 > 4 + 6 = v(x^2) + v(x^3 + y^2).
        let (p, f) = curve_profile();
        let v = vars(&["x", "y"]);
        let a = parse_polynomial("x^2", &v).unwrap();
        let b = parse_polynomial("x^3 + y^2", &v).unwrap();
        let ab = parse_polynomial("x^5 + x^2*y^2", &v).unwrap();
        let val = |g: &PolynomialGerm| match p.order_value(&f, g, 0, 30).unwrap() {
            OrderValue::Exact(n) => n,
            other => panic!("expected exact value, got {other:?}"),
        };
        assert_eq!(val(&a), 4);
        assert_eq!(val(&b), 6);
        assert_eq!(val(&ab), 15);
        assert!(val(&ab) > val(&a) + val(&b));
    }

    #[test]
    fn order_value_at_least_ambient() {
        let (p, f) = curve_profile();
        let v = vars(&["x", "y"]);
        for text in ["x", "y", "x*y", "x^2 + y^3", "x^4*y"] {
            let g = parse_polynomial(text, &v).unwrap();
            for facet in 0..p.arity() {
                let base = match p.u_germ(&g).unwrap() {
                    GermOrder::Finite(u) => u.get(facet),
                    GermOrder::Infinite => unreachable!(),
                };
                match p.order_value(&f, &g, facet, p.default_budget(base)).unwrap() {
                    OrderValue::Exact(n) => assert!(n >= base),
                    OrderValue::AtLeast(n) => assert!(n >= base),
                    OrderValue::Infinite => {}
                }
            }
        }
    }

    #[test]
    fn profile_caches_agree_with_diagram() {
        let (p, _) = curve_profile();
        assert_eq!(p.u_of_f(), &p.diagram().u_of_f());
        assert_eq!(p.u_of_variables(), p.diagram().u_of_variables().as_slice());
    }
}

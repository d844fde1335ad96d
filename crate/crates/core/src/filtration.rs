//! Dimensions of filtration quotients and Poincaré coefficients.
//!
//! Two independent routes compute `dim J(lower)/J(upper)` in the
//! hypersurface ring `O/(f)`:
//!
//! - **Method B** (the default): the quotient of the ambient monomial
//!   filtration is spanned by the lattice points outside the upper level
//!   set; the image of the ideal `(f)` is spanned by the truncations of the
//!   finitely many translates `x^a f` that reach below the upper level. The
//!   dimension is `|boundary points| + rank(R without those columns) -
//!   rank(R)`, all ranks exact over the rationals.
//! - **Method A**: the literal per-facet reading. Inside the ring truncated
//!   at total degree `N` the subspace with `v_i ≥ c` is `(U_i(c) + F)/F`
//!   where `U_i(c)` is spanned by the monomials with `ℓ_i ≥ c` and `F` is
//!   the truncated ideal. Dimensions of intersections of these subspaces
//!   are obtained through their annihilators: the annihilator of
//!   `U_i(c) + F` is the space of functionals supported on the monomials
//!   with `ℓ_i < c` that kill every translate row, and
//!   `dim ∩_i (U_i(c_i)+F) = dim T - dim Σ_i W_i(c_i)`. The ambient
//!   dimension cancels in quotients, so only ranks of stacked annihilator
//!   bases are ever computed. The truncation `N` enters literally (both the
//!   monomial sets and the translate sets are clipped at `N`), and callers
//!   must stay at or above the safe bound `max_i(upper_i) + max deg supp f`.
//!
//! The coefficient of the Poincaré series at `t^v` is the alternating sum
//! of `dim J(v + 1_I)/J(v + 1)` over the `2^s` subsets `I`; all subsets
//! share one relation system per `v`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{points_with_form_at_most, Exponent, MultiIndex, PolynomialGerm};
use crate::linalg::{nullspace_basis, rank_of, Col, RankAccumulator, SparseRow};
use crate::series::{self, BoxBounds, DiffEntry, SeriesBox};
use crate::valuation::ValuationProfile;

/// Which quotient-dimension route to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    A,
    B,
    Both,
}

impl Method {
    pub fn wants_a(self) -> bool {
        matches!(self, Method::A | Method::Both)
    }

    pub fn wants_b(self) -> bool {
        matches!(self, Method::B | Method::Both)
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Method::A),
            "B" | "b" => Ok(Method::B),
            "both" | "Both" => Ok(Method::Both),
            other => Err(Error::Invalid(format!("unknown method `{}` (expected A, B, or both)", other))),
        }
    }
}

/// A pair `lower ≤ upper`, `lower ≠ upper`, defining `J(lower)/J(upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpec {
    lower: MultiIndex,
    upper: MultiIndex,
}

impl QuotientSpec {
    pub fn new(lower: MultiIndex, upper: MultiIndex) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::ArityMismatch { expected: lower.len(), got: upper.len() });
        }
        if !upper.geq(&lower)? || upper == lower {
            return Err(Error::Invalid(format!(
                "need lower ≤ upper and lower ≠ upper, got {} and {}",
                lower, upper
            )));
        }
        Ok(QuotientSpec { lower, upper })
    }

    pub fn lower(&self) -> &MultiIndex {
        &self.lower
    }

    pub fn upper(&self) -> &MultiIndex {
        &self.upper
    }
}

fn geq_slices(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// The monomials outside the ambient level set `J(upper)`, the truncations
/// of the diagram translates `x^a f` to them, and the rank of those rows.
#[derive(Clone, Debug)]
pub struct RelationSystem {
    columns: Vec<Exponent>,
    column_values: Vec<MultiIndex>,
    rows: Vec<SparseRow>,
    translates: Vec<Exponent>,
    rank: usize,
    upper: MultiIndex,
}

impl RelationSystem {
    /// Builds the system for a given upper bound. Columns are the monomials
    /// with `ℓ_i(k) ≤ upper_i - 1` for some `i` (a finite set because all
    /// form coefficients are positive); rows are the non-zero truncations
    /// of `x^a f` over all `a` with `ℓ_i(a) ≤ upper_i - 1 - d^(i)` for some
    /// `i` (exactly the translates that reach a column).
    pub fn build(profile: &ValuationProfile, f: &PolynomialGerm, upper: &MultiIndex) -> Self {
        assert_eq!(upper.len(), profile.arity(), "upper bound arity");
        assert!(!f.is_zero(), "defining germ must be non-zero");
        let facets = profile.diagram().facets();

        let mut column_set: BTreeSet<Exponent> = BTreeSet::new();
        for (i, form) in facets.iter().enumerate() {
            for k in points_with_form_at_most(form, upper.get(i) - 1) {
                column_set.insert(k);
            }
        }
        let columns: Vec<Exponent> = column_set.into_iter().collect();
        let ids: BTreeMap<&Exponent, Col> =
            columns.iter().enumerate().map(|(i, k)| (k, i as Col)).collect();
        let column_values: Vec<MultiIndex> = columns
            .iter()
            .map(|k| profile.u_monomial(k).expect("column dimension matches profile"))
            .collect();

        let mut translate_set: BTreeSet<Exponent> = BTreeSet::new();
        for (i, form) in facets.iter().enumerate() {
            let bound = upper.get(i) - 1 - form.degree();
            for a in points_with_form_at_most(form, bound) {
                translate_set.insert(a);
            }
        }
        let mut rows = Vec::new();
        let mut translates = Vec::new();
        for a in translate_set {
            let entries: Vec<(Col, BigRational)> = f
                .terms()
                .filter_map(|(k, c)| ids.get(&a.add(k)).map(|&id| (id, c.clone())))
                .collect();
            let row = SparseRow::from_rational_entries(entries);
            if !row.is_zero() {
                rows.push(row);
                translates.push(a);
            }
        }
        let rank = rank_of(rows.iter().cloned());
        RelationSystem { columns, column_values, rows, translates, rank, upper: upper.clone() }
    }

    pub fn columns(&self) -> &[Exponent] {
        &self.columns
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn translates(&self) -> &[Exponent] {
        &self.translates
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn upper(&self) -> &MultiIndex {
        &self.upper
    }

    /// Column ids whose monomials satisfy `u(x^k) ≥ lower`.
    fn boundary_ids(&self, lower: &MultiIndex) -> BTreeSet<Col> {
        self.column_values
            .iter()
            .enumerate()
            .filter(|(_, u)| geq_slices(u.entries(), lower.entries()))
            .map(|(i, _)| i as Col)
            .collect()
    }

    /// `dim J(lower)/J(upper)` by the boundary-modulo-relations route.
    /// Degenerate input `lower = upper` yields 0.
    pub fn dim_quotient(&self, lower: &MultiIndex) -> usize {
        let boundary = self.boundary_ids(lower);
        let rank_without = rank_of(self.rows.iter().map(|r| r.without_cols(&boundary)));
        boundary.len() + rank_without - self.rank
    }
}

/// All `k ≥ 0` with `u(x^k) ≥ lower` and not `u(x^k) ≥ upper`, sorted
/// lexicographically.
pub fn boundary_points(
    profile: &ValuationProfile,
    lower: &MultiIndex,
    upper: &MultiIndex,
) -> Vec<Exponent> {
    let system = RelationSystem::build_columns_only(profile, upper);
    system
        .0
        .into_iter()
        .zip(system.1)
        .filter(|(_, u)| geq_slices(u.entries(), lower.entries()))
        .map(|(k, _)| k)
        .collect()
}

impl RelationSystem {
    fn build_columns_only(
        profile: &ValuationProfile,
        upper: &MultiIndex,
    ) -> (Vec<Exponent>, Vec<MultiIndex>) {
        assert_eq!(upper.len(), profile.arity());
        let mut column_set: BTreeSet<Exponent> = BTreeSet::new();
        for (i, form) in profile.diagram().facets().iter().enumerate() {
            for k in points_with_form_at_most(form, upper.get(i) - 1) {
                column_set.insert(k);
            }
        }
        let columns: Vec<Exponent> = column_set.into_iter().collect();
        let values = columns
            .iter()
            .map(|k| profile.u_monomial(k).expect("dimension checked"))
            .collect();
        (columns, values)
    }
}

/// The translate system for one `upper` bound (columns plus relation rows).
pub fn relation_rows(
    profile: &ValuationProfile,
    f: &PolynomialGerm,
    upper: &MultiIndex,
) -> RelationSystem {
    RelationSystem::build(profile, f, upper)
}

/// `dim J(lower)/J(upper)` by method B.
pub fn quotient_dim_b(profile: &ValuationProfile, f: &PolynomialGerm, spec: &QuotientSpec) -> usize {
    RelationSystem::build(profile, f, spec.upper()).dim_quotient(spec.lower())
}

/// Method A state for one germ and one truncation level. Caches, per facet
/// and per level `c`, an adapted basis of the annihilator space `W_i(c)`
/// (the flags `W_i(0) ⊆ W_i(1) ⊆ …` are nested, so each level only adds
/// vectors), plus a memo of stacked ranks per level vector.
pub struct MethodA<'a> {
    profile: &'a ValuationProfile,
    f: &'a PolynomialGerm,
    truncation: i64,
    min_deg_f: i64,
    facets: Vec<FacetLevels>,
    ids: BTreeMap<Exponent, Col>,
    memo: HashMap<Vec<i64>, usize>,
}

#[derive(Default)]
struct FacetLevels {
    /// `increments[c]` extends the basis of `W(c-1)` to a basis of `W(c)`.
    increments: Vec<Vec<SparseRow>>,
    acc: RankAccumulator,
}

impl<'a> MethodA<'a> {
    pub fn new(profile: &'a ValuationProfile, f: &'a PolynomialGerm, truncation: i64) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::EmptySupport);
        }
        let min_deg_f = f.min_total_degree().expect("non-zero germ");
        if truncation < 1 {
            return Err(Error::TruncationTooSmall { given: truncation, required: 1 });
        }
        Ok(MethodA {
            profile,
            f,
            truncation,
            min_deg_f,
            facets: (0..profile.arity()).map(|_| FacetLevels::default()).collect(),
            ids: BTreeMap::new(),
            memo: HashMap::new(),
        })
    }

    /// Safe truncation bound for a given upper level: every monomial of
    /// larger total degree is absorbed in all upper level sets, and every
    /// deeper translate of `f` contributes only absorbed monomials.
    pub fn n_safe(f: &PolynomialGerm, upper: &MultiIndex) -> i64 {
        let max_upper = upper.entries().iter().copied().max().unwrap_or(0).max(0);
        max_upper + f.max_total_degree().unwrap_or(0)
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// `dim J(lower)/J(upper)` by the per-facet (definition) route.
    pub fn quotient_dim(&mut self, spec: &QuotientSpec) -> Result<usize> {
        let required = Self::n_safe(self.f, spec.upper());
        if self.truncation < required {
            return Err(Error::TruncationTooSmall { given: self.truncation, required });
        }
        Ok(self.dim_between(spec.lower(), spec.upper()))
    }

    /// Like [`Self::quotient_dim`] but also accepts `lower = upper`
    /// (yielding 0). Callers must have validated the truncation.
    fn dim_between(&mut self, lower: &MultiIndex, upper: &MultiIndex) -> usize {
        let up = self.sum_rank(Self::levels(upper));
        let low = self.sum_rank(Self::levels(lower));
        up - low
    }

    fn levels(m: &MultiIndex) -> Vec<i64> {
        m.entries().iter().map(|&c| c.max(0)).collect()
    }

    /// Rank of the union of the `W_i(c_i)` bases.
    fn sum_rank(&mut self, levels: Vec<i64>) -> usize {
        if let Some(&r) = self.memo.get(&levels) {
            return r;
        }
        for (i, &c) in levels.iter().enumerate() {
            self.ensure_levels(i, c);
        }
        let mut acc = RankAccumulator::new();
        for (i, &c) in levels.iter().enumerate() {
            for lvl in 0..=(c as usize) {
                if let Some(rows) = self.facets[i].increments.get(lvl) {
                    for row in rows.clone() {
                        acc.insert(row);
                    }
                }
            }
        }
        let r = acc.rank();
        self.memo.insert(levels, r);
        r
    }

    fn id_of(&mut self, k: &Exponent) -> Col {
        if let Some(&id) = self.ids.get(k) {
            return id;
        }
        let id = self.ids.len() as Col;
        self.ids.insert(k.clone(), id);
        id
    }

    fn ensure_levels(&mut self, facet: usize, level: i64) {
        let built = self.facets[facet].increments.len() as i64;
        for lvl in built..=level {
            let rows = self.annihilator_basis(facet, lvl);
            let mut fresh = Vec::new();
            for row in rows {
                if self.facets[facet].acc.insert(row.clone()) {
                    fresh.push(row);
                }
            }
            self.facets[facet].increments.push(fresh);
        }
    }

    /// Basis of `W_facet(level)`: functionals supported on the monomials
    /// with `ℓ ≤ level - 1` (and total degree ≤ N) annihilating every
    /// truncated translate of `f`.
    fn annihilator_basis(&mut self, facet: usize, level: i64) -> Vec<SparseRow> {
        let form = &self.profile.diagram().facets()[facet];
        let low: Vec<Exponent> = points_with_form_at_most(form, level - 1)
            .into_iter()
            .filter(|k| k.total_degree() <= self.truncation)
            .collect();
        if low.is_empty() {
            return Vec::new();
        }
        let local: BTreeMap<&Exponent, usize> =
            low.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let translate_bound = level - 1 - form.degree();
        let mut constraint_rows: Vec<Vec<BigRational>> = Vec::new();
        for a in points_with_form_at_most(form, translate_bound) {
            if a.total_degree() > self.truncation - self.min_deg_f {
                continue;
            }
            let mut row = vec![BigRational::from(BigInt::from(0)); low.len()];
            let mut non_zero = false;
            for (k, c) in self.f.terms() {
                let m = a.add(k);
                if m.total_degree() > self.truncation {
                    continue;
                }
                if let Some(&j) = local.get(&m) {
                    row[j] = c.clone();
                    non_zero = true;
                }
            }
            if non_zero {
                constraint_rows.push(row);
            }
        }
        let basis = nullspace_basis(constraint_rows, low.len());
        basis
            .into_iter()
            .map(|v| {
                let entries: Vec<(Col, BigRational)> = v
                    .into_iter()
                    .enumerate()
                    .map(|(j, value)| (self.id_of(&low[j]), value))
                    .collect();
                SparseRow::from_rational_entries(entries)
            })
            .collect()
    }
}

/// One-shot method A computation.
pub fn quotient_dim_a(
    profile: &ValuationProfile,
    f: &PolynomialGerm,
    spec: &QuotientSpec,
    truncation: i64,
) -> Result<usize> {
    MethodA::new(profile, f, truncation)?.quotient_dim(spec)
}

/// Everything computed for one Poincaré coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientData {
    pub v: MultiIndex,
    /// Coefficient by the primary route (method B when computed, A otherwise).
    pub value: i64,
    pub value_a: Option<i64>,
    pub value_b: Option<i64>,
    /// Per-subset quotient dimensions for the primary route, keyed by mask.
    pub dims_by_subset: BTreeMap<u64, usize>,
    pub dims_by_subset_a: Option<BTreeMap<u64, usize>>,
    /// Number of boundary monomials at `(v, v+1)`.
    pub boundary_count: usize,
    pub relation_rank: usize,
    /// Present with method `both`: per-subset dimensions all agree.
    pub methods_agree: Option<bool>,
}

fn alternating_sum(dims: &BTreeMap<u64, usize>) -> i64 {
    dims.iter()
        .map(|(mask, &d)| {
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            sign * d as i64
        })
        .sum()
}

/// The coefficient of the Poincaré series at `t^v` by inclusion-exclusion
/// over the `2^s` subsets, reusing one relation system for the shared
/// upper bound `v + 1`.
pub fn poincare_coefficient(
    profile: &ValuationProfile,
    f: &PolynomialGerm,
    v: &MultiIndex,
    method: Method,
    truncation: Option<i64>,
) -> Result<CoefficientData> {
    let s = profile.arity();
    if v.len() != s {
        return Err(Error::ArityMismatch { expected: s, got: v.len() });
    }
    if v.entries().iter().any(|&x| x < 0) {
        return Err(Error::Invalid(format!(
            "Poincaré coefficients live at non-negative exponents, got {}",
            v
        )));
    }
    let upper = v.plus_ones();

    let system = RelationSystem::build(profile, f, &upper);
    let mut dims_b: Option<BTreeMap<u64, usize>> = None;
    if method.wants_b() {
        let mut dims = BTreeMap::new();
        for mask in 0u64..(1 << s) {
            let lower = v.plus_indicator_mask(mask);
            dims.insert(mask, system.dim_quotient(&lower));
        }
        dims_b = Some(dims);
    }

    let mut dims_a: Option<BTreeMap<u64, usize>> = None;
    if method.wants_a() {
        let required = MethodA::n_safe(f, &upper);
        let n = truncation.unwrap_or(required);
        if n < required {
            return Err(Error::TruncationTooSmall { given: n, required });
        }
        let mut engine = MethodA::new(profile, f, n)?;
        let mut dims = BTreeMap::new();
        for mask in 0u64..(1 << s) {
            let lower = v.plus_indicator_mask(mask);
            dims.insert(mask, engine.dim_between(&lower, &upper));
        }
        dims_a = Some(dims);
    }

    let boundary_count = system.boundary_ids(v).len();
    let relation_rank = system.rank();
    let methods_agree = match (&dims_a, &dims_b) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let value_a = dims_a.as_ref().map(alternating_sum);
    let value_b = dims_b.as_ref().map(alternating_sum);
    let (dims_by_subset, dims_by_subset_a, value) = match (dims_b, dims_a) {
        (Some(b), a) => {
            let value = alternating_sum(&b);
            (b, a, value)
        }
        (None, Some(a)) => {
            let value = alternating_sum(&a);
            (a, None, value)
        }
        (None, None) => unreachable!("method selects at least one route"),
    };
    Ok(CoefficientData {
        v: v.clone(),
        value,
        value_a,
        value_b,
        dims_by_subset,
        dims_by_subset_a,
        boundary_count,
        relation_rank,
        methods_agree,
    })
}

/// Coefficients at many targets, evaluated concurrently. The output order
/// follows the input order regardless of scheduling.
pub fn coefficient_sweep(
    profile: &ValuationProfile,
    f: &PolynomialGerm,
    targets: &[MultiIndex],
    method: Method,
    truncation: Option<i64>,
) -> Result<Vec<CoefficientData>> {
    targets
        .par_iter()
        .map(|v| poincare_coefficient(profile, f, v, method, truncation))
        .collect()
}

/// `d(v) = dim J(v)/J(v+1)`. Entries of `v` may be negative; conditions
/// with `v_i ≤ 0` are vacuous on non-negative-valued order functions and
/// drop out of the enumeration automatically.
pub fn d_of_v(profile: &ValuationProfile, f: &PolynomialGerm, v: &MultiIndex) -> usize {
    let upper = v.plus_ones();
    RelationSystem::build(profile, f, &upper).dim_quotient(v)
}

/// The series `L(t) = Σ_v d(v) t^v` on the given box.
pub fn l_series(profile: &ValuationProfile, f: &PolynomialGerm, bounds: BoxBounds) -> SeriesBox {
    let points = bounds.points();
    let values: Vec<(MultiIndex, usize)> = points
        .into_par_iter()
        .map(|v| {
            let d = d_of_v(profile, f, &v);
            (v, d)
        })
        .collect();
    let mut out = SeriesBox::zero(bounds);
    for (v, d) in values {
        out.add_at(v, BigInt::from(d));
    }
    out
}

/// Checks the defining identity of the Poincaré series on a box:
/// `P(t)·(t_1⋯t_s - 1)` must equal `L(t)·∏_i(t_i - 1)` coefficientwise.
/// Both sides are computed independently (P from the inclusion-exclusion
/// coefficients, L from single quotient dimensions) and compared on the
/// inner box; the returned diff is empty exactly on success.
pub fn ps_identity_check(
    profile: &ValuationProfile,
    f: &PolynomialGerm,
    inner: &BoxBounds,
    margin: i64,
) -> Result<Vec<DiffEntry>> {
    let s = profile.arity();
    if inner.arity() != s {
        return Err(Error::ArityMismatch { expected: s, got: inner.arity() });
    }
    if margin < 2 {
        return Err(Error::MarginTooSmall { given: margin, required: 2 });
    }

    let l = l_series(profile, f, inner.pad(margin));

    // P is supported on v ≥ 0; the product against (t_1⋯t_s - 1) on the
    // inner box only reads P at w and w - 1.
    let p_bounds = BoxBounds::new(
        inner.lo().iter().map(|x| x - 1).collect(),
        inner.hi().to_vec(),
    )?;
    let p_targets: Vec<MultiIndex> = p_bounds
        .points()
        .into_iter()
        .filter(|v| v.entries().iter().all(|&x| x >= 0))
        .collect();
    let p_values: Vec<(MultiIndex, i64)> = p_targets
        .into_par_iter()
        .map(|v| {
            let c = poincare_coefficient(profile, f, &v, Method::B, None)
                .expect("non-negative target of matching arity");
            (v, c.value)
        })
        .collect();
    let mut p = SeriesBox::zero(p_bounds);
    for (v, c) in p_values {
        p.add_at(v, BigInt::from(c));
    }

    let lhs = series::multiply(&p, &series::full_monomial_minus_one(s), inner.clone())?;
    let rhs = series::multiply(&l, &series::product_ti_minus_one(s), inner.clone())?;
    lhs.compare(&rhs)
}

/// Candidate exponents for coefficient sweeps: the monomial value set up to
/// a degree bound, its shift by `u(f)`, and `u(f)` itself.
pub fn target_set(profile: &ValuationProfile, bound: i64) -> Vec<MultiIndex> {
    let mut out: BTreeSet<MultiIndex> = BTreeSet::new();
    let u_f = profile.u_of_f().clone();
    for k in crate::lattice::points_with_degree_at_most(profile.n_vars(), bound) {
        let u = profile.u_monomial(&k).expect("dimension matches profile");
        out.insert(u.add(&u_f));
        out.insert(u);
    }
    out.insert(u_f);
    out.into_iter().collect()
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

    fn mi(e: &[i64]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn profile_of(text: &str, names: &[&str]) -> (ValuationProfile, PolynomialGerm) {
        let v = vars(names);
        let f = parse_polynomial(text, &v).unwrap();
        let d = compute_diagram(&f.support()).unwrap();
        (ValuationProfile::new(d), f)
    }

    fn curve() -> (ValuationProfile, PolynomialGerm) {
        profile_of("x^5 + x^2*y^2 + y^5", &["x", "y"])
    }

    fn six_term() -> (ValuationProfile, PolynomialGerm) {
        profile_of("x^5+y^5+z^5+x^2*y*z+x*y^2*z+x*y*z^2", &["x", "y", "z"])
    }

    fn cusp() -> (ValuationProfile, PolynomialGerm) {
        profile_of("x^2 + y^3", &["x", "y"])
    }

    #[test]
    fn boundary_points_examples() {
        let (p, _) = curve();
        let pts = boundary_points(&p, &mi(&[10, 10]), &mi(&[11, 11]));
        assert_eq!(pts, vec![exp(&[0, 5]), exp(&[2, 2]), exp(&[5, 0])]);

        let pts = boundary_points(&p, &mi(&[2, 3]), &mi(&[3, 4]));
        assert_eq!(pts, vec![exp(&[1, 0])]);

        let pts = boundary_points(&p, &mi(&[0, 0]), &mi(&[1, 1]));
        assert_eq!(pts, vec![exp(&[0, 0])]);
    }

    #[test]
    fn relation_rows_examples() {
        let (p, f) = curve();
        let sys = relation_rows(&p, &f, &mi(&[11, 11]));
        assert_eq!(sys.rows().len(), 1);
        assert_eq!(sys.translates(), &[exp(&[0, 0])]);
        assert_eq!(sys.rank(), 1);
        let row = &sys.rows()[0];
        assert_eq!(row.nnz(), 3);
        assert!(row.entries().iter().all(|(_, v)| v == &BigInt::from(1)));

        let (p, f) = six_term();
        let sys = relation_rows(&p, &f, &mi(&[5, 6, 6, 6]));
        assert_eq!(sys.rows().len(), 1);
        assert_eq!(sys.rows()[0].nnz(), 6);

        let sys = relation_rows(&p, &f, &MultiIndex::ones(4));
        assert!(sys.rows().is_empty());
    }

    #[test]
    fn quotient_dim_b_examples() {
        let (p, f) = curve();
        let spec = QuotientSpec::new(mi(&[10, 10]), mi(&[11, 11])).unwrap();
        assert_eq!(quotient_dim_b(&p, &f, &spec), 2);

        let (p6, f6) = six_term();
        let spec = QuotientSpec::new(mi(&[4, 5, 5, 5]), mi(&[5, 6, 6, 6])).unwrap();
        assert_eq!(quotient_dim_b(&p6, &f6, &spec), 17);

        let spec = QuotientSpec::new(MultiIndex::zero(4), MultiIndex::ones(4)).unwrap();
        assert_eq!(quotient_dim_b(&p6, &f6, &spec), 1);
    }

    #[test]
    fn quotient_dim_a_examples() {
        let (p, f) = cusp();
        assert_eq!(p.arity(), 1);
        let spec = QuotientSpec::new(mi(&[6]), mi(&[7])).unwrap();
        let n = MethodA::n_safe(&f, spec.upper());
        assert_eq!(quotient_dim_a(&p, &f, &spec, n).unwrap(), 1);

        let (p, f) = curve();
        let spec = QuotientSpec::new(mi(&[10, 10]), mi(&[11, 11])).unwrap();
        let n = MethodA::n_safe(&f, spec.upper());
        assert_eq!(quotient_dim_a(&p, &f, &spec, n).unwrap(), 2);

        let spec = QuotientSpec::new(mi(&[0, 0]), mi(&[1, 1])).unwrap();
        assert_eq!(quotient_dim_a(&p, &f, &spec, 20).unwrap(), 1);
    }

    #[test]
    fn method_a_rejects_small_truncation() {
        let (p, f) = curve();
        let spec = QuotientSpec::new(mi(&[10, 10]), mi(&[11, 11])).unwrap();
        // n_safe = 11 + 5 = 16
        assert!(matches!(
            quotient_dim_a(&p, &f, &spec, 15),
            Err(Error::TruncationTooSmall { given: 15, required: 16 })
        ));
    }

    #[test]
    fn coefficient_of_six_term_germ_is_minus_one() {
        let (p, f) = six_term();
        let c = poincare_coefficient(&p, &f, &mi(&[4, 5, 5, 5]), Method::B, None).unwrap();
        assert_eq!(c.value, -1);
        assert_eq!(c.boundary_count, 18);
        assert_eq!(c.relation_rank, 1);
        assert_eq!(c.dims_by_subset[&0], 17);
    }

    #[test]
    fn coefficient_at_zero_is_one() {
        for (p, f) in [curve(), six_term(), cusp()] {
            let v = MultiIndex::zero(p.arity());
            let c = poincare_coefficient(&p, &f, &v, Method::B, None).unwrap();
            assert_eq!(c.value, 1, "profile with {} facets", p.arity());
        }
    }

    #[test]
    fn methods_agree_on_curve_sample() {
        let (p, f) = curve();
        for v in [mi(&[0, 0]), mi(&[4, 6]), mi(&[10, 10]), mi(&[7, 3])] {
            let c = poincare_coefficient(&p, &f, &v, Method::Both, None).unwrap();
            assert_eq!(c.methods_agree, Some(true), "at {}", v);
            assert_eq!(c.value_a, c.value_b);
        }
    }

    #[test]
    fn coefficient_rejects_bad_targets() {
        let (p, f) = curve();
        assert!(poincare_coefficient(&p, &f, &mi(&[1, 2, 3]), Method::B, None).is_err());
        assert!(poincare_coefficient(&p, &f, &mi(&[-1, 0]), Method::B, None).is_err());
    }

    #[test]
    fn d_of_v_examples() {
        let (p, f) = cusp();
        assert_eq!(d_of_v(&p, &f, &mi(&[1])), 0);
        assert_eq!(d_of_v(&p, &f, &mi(&[0])), 1);
        assert_eq!(d_of_v(&p, &f, &mi(&[6])), 1);

        let (p, f) = curve();
        assert_eq!(d_of_v(&p, &f, &mi(&[10, 10])), 2);
        assert_eq!(d_of_v(&p, &f, &mi(&[-1, -1])), 0);
    }

    #[test]
    fn quotient_dim_grows_with_upper() {
        let (p, f) = curve();
        let lower = mi(&[4, 4]);
        let mut prev = 0;
        for step in 1..4 {
            let upper = mi(&[4 + step, 4 + step]);
            let spec = QuotientSpec::new(lower.clone(), upper).unwrap();
            let dim = quotient_dim_b(&p, &f, &spec);
            assert!(dim >= prev);
            prev = dim;
        }
    }

    #[test]
    fn collapse_when_one_subset_dominates() {
        // Whenever the boundary point sets of all J(v+1_{j}) are contained
        // in that of J(v+1_{i}), the alternating sum telescopes down to
        // dim J(v)/J(v+1_{i}).
        let (p, f) = curve();
        let s = p.arity();
        let mut exercised = 0;
        for a in 0..=8i64 {
            for b in 0..=8i64 {
                let v = mi(&[a, b]);
                let upper = v.plus_ones();
                let system = RelationSystem::build(&p, &f, &upper);
                let singles: Vec<BTreeSet<Col>> = (0..s)
                    .map(|i| system.boundary_ids(&v.plus_indicator_mask(1 << i)))
                    .collect();
                let dominant = (0..s).find(|&i| {
                    (0..s).all(|j| singles[j].is_subset(&singles[i]))
                });
                if let Some(i) = dominant {
                    let coeff =
                        poincare_coefficient(&p, &f, &v, Method::B, None).unwrap().value;
                    let collapsed = match QuotientSpec::new(v.clone(), v.plus_indicator_mask(1 << i)) {
                        Ok(spec) => quotient_dim_b(&p, &f, &spec) as i64,
                        Err(_) => unreachable!("upper differs from lower in coordinate i"),
                    };
                    assert_eq!(coeff, collapsed, "collapse at {}", v);
                    exercised += 1;
                }
            }
        }
        assert!(exercised > 0, "the hypothesis should hold somewhere on the grid");
    }

    #[test]
    fn target_set_examples() {
        let (p, _) = curve();
        let t0 = target_set(&p, 0);
        assert_eq!(t0, vec![mi(&[0, 0]), mi(&[10, 10])]);

        let t2 = target_set(&p, 2);
        for v in [
            mi(&[0, 0]),
            mi(&[2, 3]),
            mi(&[3, 2]),
            mi(&[4, 6]),
            mi(&[5, 5]),
            mi(&[6, 4]),
            mi(&[10, 10]),
        ] {
            assert!(t2.contains(&v), "missing {}", v);
        }
        assert!(t2.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn l_series_of_cusp_is_semigroup_indicator() {
        let (p, f) = cusp();
        let l = l_series(&p, &f, BoxBounds::new(vec![-2], vec![12]).unwrap());
        for v in -2..=12i64 {
            let expected = if v == 0 || v >= 2 { 1 } else { 0 };
            assert_eq!(
                l.coefficient(&mi(&[v])).unwrap(),
                BigInt::from(expected),
                "at {}",
                v
            );
        }
    }

    #[test]
    fn ps_identity_on_cusp_and_margin_guard() {
        let (p, f) = cusp();
        let inner = BoxBounds::new(vec![-2], vec![12]).unwrap();
        let diff = ps_identity_check(&p, &f, &inner, 2).unwrap();
        assert!(diff.is_empty());
        assert!(matches!(
            ps_identity_check(&p, &f, &inner, 1),
            Err(Error::MarginTooSmall { .. })
        ));
    }
}

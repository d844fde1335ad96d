//! Exact computation of Newton diagrams, Newton filtrations, and their
//! multi-variable Poincaré series.
//!
//! Given a polynomial germ `f` in `n ≥ 2` variables whose Newton diagram
//! meets every coordinate axis, this crate computes:
//!
//! - the diagram itself (the compact facets of the Newton polyhedron of the
//!   support of `f`), with exact primitive facet equations ([`diagram`]);
//! - the facet valuations `u_i` on ambient germs and the induced order
//!   functions `v_i` on the hypersurface ring `O/(f)` ([`valuation`]);
//! - dimensions of filtration quotients `J(lower)/J(upper)` by two
//!   independent routes, and from them the coefficients of the Poincaré
//!   series of the filtration ([`filtration`]);
//! - closed-form candidate series as products of binomials `(1 - t^m)^±1`,
//!   expanded and cross-checked against the brute-force coefficients
//!   ([`closed_form`]).
//!
//! Everything is computed over exact integers and rationals; there is no
//! floating point anywhere. Series live on explicit rectangular exponent
//! boxes ([`series`]) and equality claims never extend beyond the stated
//! box.

pub mod closed_form;
pub mod diagram;
pub mod error;
pub mod filtration;
pub mod lattice;
pub mod linalg;
pub mod parse;
pub mod problem;
pub mod series;
pub mod valuation;

pub use closed_form::{ambient_series, closed_form_for, predicted_series, ClosedForm, ClosedFormTag};
pub use diagram::{compute_diagram, is_stellar, validate_user_facets, FacetValidation, NewtonDiagram};
pub use error::{Error, Result};
pub use filtration::{
    boundary_points, coefficient_sweep, d_of_v, l_series, poincare_coefficient, ps_identity_check,
    quotient_dim_a, quotient_dim_b, relation_rows, target_set, CoefficientData, Method, MethodA,
    QuotientSpec, RelationSystem,
};
pub use lattice::{indicator_tuple, Exponent, LinearForm, MultiIndex, PolynomialGerm};
pub use parse::parse_polynomial;
pub use problem::{load_problem, save_report, BuiltProblem, ProblemSpec, Report};
pub use series::{BoxBounds, DiffEntry, SeriesBox};
pub use valuation::{GermOrder, OrderValue, ValuationProfile};

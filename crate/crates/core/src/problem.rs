//! Problem files, validation, and report documents.
//!
//! A problem file is a single JSON document (all keys lowercase):
//!
//! ```json
//! {
//!   "variables": ["x", "y"],
//!   "polynomial": "x^5 + x^2*y^2 + y^5",
//!   "facets": [[2, 3, 10], [3, 2, 10]],
//!   "targets": [[10, 10]],
//!   "box": [12, 12],
//!   "options": {"method": "both", "truncation": 20}
//! }
//! ```
//!
//! `facets`, `targets`, `box`, and `options` are optional. User-supplied
//! facets must be primitive (`gcd = 1`); they are verified against the
//! computed diagram and, when valid, fix the facet order used in every
//! report. Rationals inside the polynomial are written `p/q`; files never
//! contain floating point.
//!
//! Reports echo the inputs and add the diagram data, coefficient records,
//! and verification results. Serialization is deterministic: struct fields
//! in declaration order, maps sorted, exponent lists sorted.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::closed_form::VerificationReport as CfReport;
use crate::diagram::{compute_diagram, validate_user_facets, FacetValidation};
use crate::error::{Error, Result};
use crate::filtration::{CoefficientData, Method};
use crate::lattice::{subset_label, LinearForm, MultiIndex, PolynomialGerm};
use crate::parse::parse_polynomial;
use crate::valuation::ValuationProfile;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    variables: Vec<String>,
    polynomial: String,
    #[serde(default)]
    facets: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    targets: Option<Vec<Vec<i64>>>,
    #[serde(default, rename = "box")]
    box_bounds: Option<Vec<i64>>,
    #[serde(default)]
    options: Option<OptionsFile>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionsFile {
    #[serde(default)]
    method: Option<String>,
    #[serde(default)]
    truncation: Option<i64>,
}

/// A validated problem description.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub variables: Vec<String>,
    pub polynomial: String,
    pub facets: Option<Vec<LinearForm>>,
    pub targets: Option<Vec<MultiIndex>>,
    pub box_bounds: Option<Vec<i64>>,
    pub method: Option<Method>,
    pub truncation: Option<i64>,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text)?;
        let n = file.variables.len();
        if n == 0 {
            return Err(Error::InvalidField {
                field: "variables".into(),
                msg: "at least one variable is required".into(),
            });
        }
        for (i, v) in file.variables.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_alphabetic() {
                return Err(Error::InvalidField {
                    field: "variables".into(),
                    msg: format!("`{}` is not a valid variable name", v),
                });
            }
            if file.variables[..i].contains(v) {
                return Err(Error::InvalidField {
                    field: "variables".into(),
                    msg: format!("duplicate variable `{}`", v),
                });
            }
        }
        let facets = match file.facets {
            None => None,
            Some(rows) => {
                let mut forms = Vec::with_capacity(rows.len());
                for row in rows {
                    if row.len() != n + 1 {
                        return Err(Error::InvalidField {
                            field: "facets".into(),
                            msg: format!(
                                "facet row {:?} must have {} coefficients plus a degree",
                                row, n
                            ),
                        });
                    }
                    let (coeffs, degree) = row.split_at(n);
                    let form =
                        LinearForm::new(coeffs.to_vec(), degree[0]).map_err(|e| Error::InvalidField {
                            field: "facets".into(),
                            msg: e.to_string(),
                        })?;
                    forms.push(form);
                }
                Some(forms)
            }
        };
        let targets = file.targets.map(|rows| rows.into_iter().map(MultiIndex::new).collect());
        let method = match file.options.as_ref().and_then(|o| o.method.as_deref()) {
            None => None,
            Some(m) => Some(m.parse().map_err(|e: Error| Error::InvalidField {
                field: "options.method".into(),
                msg: e.to_string(),
            })?),
        };
        Ok(ProblemSpec {
            variables: file.variables,
            polynomial: file.polynomial,
            facets,
            targets,
            box_bounds: file.box_bounds,
            method,
            truncation: file.options.and_then(|o| o.truncation),
        })
    }

    /// Parses the germ, computes the diagram, verifies user facets, and
    /// fixes the reporting facet order (the user's when supplied and valid,
    /// canonical lexicographic otherwise).
    pub fn build(&self) -> Result<BuiltProblem> {
        let germ = parse_polynomial(&self.polynomial, &self.variables)?;
        if germ.is_zero() {
            return Err(Error::InvalidField {
                field: "polynomial".into(),
                msg: "the defining germ must be non-zero".into(),
            });
        }
        let mut diagram = compute_diagram(&germ.support())?;
        let mut validation = None;
        if let Some(user) = &self.facets {
            let check = validate_user_facets(&diagram, user);
            if !check.passed {
                return Err(Error::InvalidField {
                    field: "facets".into(),
                    msg: format!(
                        "user facets disagree with the computed diagram (missing: {:?}, extra: {:?})",
                        check.missing.iter().map(|l| l.as_row()).collect::<Vec<_>>(),
                        check.extra.iter().map(|l| l.as_row()).collect::<Vec<_>>()
                    ),
                });
            }
            if !user.is_empty() {
                diagram = diagram.with_facet_order(user.clone())?;
            }
            validation = Some(check);
        }
        let profile = ValuationProfile::new(diagram);
        if let Some(targets) = &self.targets {
            for t in targets {
                if t.len() != profile.arity() {
                    return Err(Error::InvalidField {
                        field: "targets".into(),
                        msg: format!(
                            "target {} has arity {}, diagram has {} facets",
                            t,
                            t.len(),
                            profile.arity()
                        ),
                    });
                }
            }
        }
        if let Some(b) = &self.box_bounds {
            if b.len() != profile.arity() {
                return Err(Error::InvalidField {
                    field: "box".into(),
                    msg: format!(
                        "box has {} axes, diagram has {} facets",
                        b.len(),
                        profile.arity()
                    ),
                });
            }
        }
        Ok(BuiltProblem { spec: self.clone(), germ, profile, facet_validation: validation })
    }
}

/// A problem together with its parsed germ and valuation profile.
#[derive(Clone, Debug)]
pub struct BuiltProblem {
    pub spec: ProblemSpec,
    pub germ: PolynomialGerm,
    pub profile: ValuationProfile,
    pub facet_validation: Option<FacetValidation>,
}

/// Loads and validates a problem file.
pub fn load_problem(path: impl AsRef<Path>) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path)?;
    ProblemSpec::from_json(&text)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProblemEcho {
    pub variables: Vec<String>,
    pub polynomial: String,
    pub canonical_polynomial: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DiagramReport {
    pub facets: Vec<Vec<i64>>,
    pub facet_order: String,
    pub stellar_vertex: Option<Vec<i64>>,
    pub vertices: Vec<Vec<i64>>,
    pub u_of_variables: Vec<Vec<i64>>,
    pub u_of_f: Vec<i64>,
    pub facet_check: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoefficientReport {
    pub v: Vec<i64>,
    pub coefficient: i64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient_a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient_b: Option<i64>,
    pub dims_by_subset: BTreeMap<String, usize>,
    pub boundary_count: usize,
    pub relation_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods_agree: Option<bool>,
}

impl CoefficientReport {
    pub fn from_data(data: &CoefficientData, method: Method, arity: usize) -> Self {
        let method_name = match method {
            Method::A => "A",
            Method::B => "B",
            Method::Both => "both",
        };
        CoefficientReport {
            v: data.v.entries().to_vec(),
            coefficient: data.value,
            method: method_name.to_string(),
            coefficient_a: data.value_a,
            coefficient_b: data.value_b,
            dims_by_subset: data
                .dims_by_subset
                .iter()
                .map(|(mask, dim)| (subset_label(*mask, arity), *dim))
                .collect(),
            boundary_count: data.boundary_count,
            relation_rank: data.relation_rank,
            methods_agree: data.methods_agree,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FactorReport {
    pub exponent: Vec<i64>,
    pub sign: i8,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MismatchReport {
    pub v: Vec<i64>,
    pub predicted: String,
    pub computed: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerificationSection {
    pub claim: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub factors: Vec<FactorReport>,
    pub targets_checked: usize,
    pub mismatches: Vec<MismatchReport>,
    pub passed: bool,
}

impl VerificationSection {
    pub fn from_report(claim: &str, report: &CfReport) -> Self {
        VerificationSection {
            claim: claim.to_string(),
            kind: report.kind.map(|k| k.as_str().to_string()),
            factors: report
                .factors
                .iter()
                .map(|(m, sign)| FactorReport { exponent: m.entries().to_vec(), sign: *sign })
                .collect(),
            targets_checked: report.targets_checked,
            mismatches: report
                .mismatches
                .iter()
                .map(|m| MismatchReport {
                    v: m.v.entries().to_vec(),
                    predicted: m.predicted.to_string(),
                    computed: m.computed,
                })
                .collect(),
            passed: report.passed(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ScoreLine {
    pub name: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// The report document emitted by every command.
#[derive(Clone, Debug, Serialize, PartialEq, Eq, Default)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<CoefficientReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<SeriesEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scoreboard: Option<Vec<ScoreLine>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesEntry {
    pub exponent: Vec<i64>,
    pub coefficient: String,
}

impl Report {
    pub fn echo(problem: &BuiltProblem) -> ProblemEcho {
        ProblemEcho {
            variables: problem.spec.variables.clone(),
            polynomial: problem.spec.polynomial.clone(),
            canonical_polynomial: problem.germ.to_string(),
        }
    }

    pub fn diagram_section(problem: &BuiltProblem) -> DiagramReport {
        let d = problem.profile.diagram();
        DiagramReport {
            facets: d.facets().iter().map(|l| l.as_row()).collect(),
            facet_order: if problem.spec.facets.is_some() { "user" } else { "canonical" }.into(),
            stellar_vertex: d.stellar_vertex().map(|m| m.entries().to_vec()),
            vertices: d.vertices().iter().map(|k| k.entries().to_vec()).collect(),
            u_of_variables: problem
                .profile
                .u_of_variables()
                .iter()
                .map(|u| u.entries().to_vec())
                .collect(),
            u_of_f: problem.profile.u_of_f().entries().to_vec(),
            facet_check: problem.facet_validation.as_ref().map(|v| {
                if let Some(note) = &v.note {
                    note.clone()
                } else {
                    "user facets match the computed diagram".into()
                }
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

/// Writes a report as deterministic JSON.
pub fn save_report(report: &Report, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, report.to_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_problem_has_no_optionals() {
        let spec = ProblemSpec::from_json(
            r#"{"variables": ["x", "y"], "polynomial": "x^2 + y^3"}"#,
        )
        .unwrap();
        assert!(spec.facets.is_none());
        assert!(spec.targets.is_none());
        assert!(spec.box_bounds.is_none());
        assert!(spec.method.is_none());
        let built = spec.build().unwrap();
        assert_eq!(built.profile.arity(), 1);
        assert!(built.facet_validation.is_none());
    }

    #[test]
    fn five_facet_problem_accepts_paper_order() {
        let spec = ProblemSpec::from_json(
            r#"{
              "variables": ["x", "y", "z"],
              "polynomial": "x^20+y^20+z^16+x^8*y^8+x^6*y^6*z^2+x^2*y^2*z^10+x^3*y^8*z^3+x^8*y^3*z^3",
              "facets": [[1,1,1,14],[2,3,5,40],[3,2,5,40],[11,4,5,80],[4,11,5,80]]
            }"#,
        )
        .unwrap();
        let built = spec.build().unwrap();
        assert!(built.facet_validation.as_ref().unwrap().passed);
        assert_eq!(built.profile.u_of_f().entries(), &[14, 40, 40, 80, 80]);
        let u = built.profile.u_of_variables();
        assert_eq!(u[0].entries(), &[1, 2, 3, 11, 4]);
        assert_eq!(u[1].entries(), &[1, 3, 2, 4, 11]);
        assert_eq!(u[2].entries(), &[1, 5, 5, 5, 5]);
    }

    #[test]
    fn rejects_unnormalized_facet() {
        let spec = ProblemSpec::from_json(
            r#"{"variables": ["x", "y", "z"], "polynomial": "x^2+y^2+z^2", "facets": [[2,4,6,8]]}"#,
        );
        match spec {
            Err(Error::InvalidField { field, msg }) => {
                assert_eq!(field, "facets");
                assert!(msg.contains("primitive"), "{}", msg);
            }
            other => panic!("expected facet rejection, got {other:?}"),
        }
    }

    #[test]
    fn rejects_facet_diagram_mismatch() {
        let spec = ProblemSpec::from_json(
            r#"{"variables": ["x", "y"], "polynomial": "x^2 + y^3", "facets": [[2,3,7]]}"#,
        )
        .unwrap();
        match spec.build() {
            Err(Error::InvalidField { field, .. }) => assert_eq!(field, "facets"),
            other => panic!("expected mismatch error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_schema_violations() {
        assert!(ProblemSpec::from_json(r#"{"variables": ["x"], "poly": "x"}"#).is_err());
        assert!(ProblemSpec::from_json(r#"{"variables": ["x", "x"], "polynomial": "x"}"#).is_err());
        assert!(ProblemSpec::from_json(r#"{"variables": [], "polynomial": "1"}"#).is_err());
        assert!(ProblemSpec::from_json(
            r#"{"variables": ["x"], "polynomial": "x", "options": {"method": "Z"}}"#
        )
        .is_err());
    }

    #[test]
    fn rejects_zero_defining_germ() {
        let spec =
            ProblemSpec::from_json(r#"{"variables": ["x", "y"], "polynomial": "x - x"}"#).unwrap();
        assert!(matches!(spec.build(), Err(Error::InvalidField { .. })));
    }

    #[test]
    fn report_serialization_is_deterministic() {
        let spec = ProblemSpec::from_json(
            r#"{"variables": ["x", "y"], "polynomial": "x^5 + x^2*y^2 + y^5"}"#,
        )
        .unwrap();
        let built = spec.build().unwrap();
        let report = Report {
            problem: Some(Report::echo(&built)),
            diagram: Some(Report::diagram_section(&built)),
            ..Report::default()
        };
        assert_eq!(report.to_json(), report.to_json());
        assert!(report.to_json().contains("\"u_of_f\""));
    }
}

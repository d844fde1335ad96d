//! Shared fixtures for the benchmark suite.

use newtonps::{compute_diagram, parse_polynomial, PolynomialGerm, ValuationProfile};

/// Builds a profile and germ from polynomial text.
pub fn fixture(text: &str, names: &[&str]) -> (ValuationProfile, PolynomialGerm) {
    let vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let germ = parse_polynomial(text, &vars).expect("fixture parses");
    let diagram = compute_diagram(&germ.support()).expect("fixture has a diagram");
    (ValuationProfile::new(diagram), germ)
}

pub fn plane_curve() -> (ValuationProfile, PolynomialGerm) {
    fixture("x^5 + x^2*y^2 + y^5", &["x", "y"])
}

pub fn surface_four_facets() -> (ValuationProfile, PolynomialGerm) {
    fixture("x^5+y^5+z^5+x^2*y*z+x*y^2*z+x*y*z^2", &["x", "y", "z"])
}

pub fn surface_five_facets() -> (ValuationProfile, PolynomialGerm) {
    fixture(
        "x^20+y^20+z^16+x^8*y^8+x^6*y^6*z^2+x^2*y^2*z^10+x^3*y^8*z^3+x^8*y^3*z^3",
        &["x", "y", "z"],
    )
}

//! Shared fixtures and an independent convex-hull oracle for tests.
//!
//! The oracle enumerates supporting lines/planes with pure machine-integer
//! cross products; it shares no code with the library's hull construction.

use std::collections::BTreeSet;
use std::path::PathBuf;

use newtonps::{compute_diagram, parse_polynomial, PolynomialGerm, ValuationProfile};

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

pub fn fixture(text: &str, names: &[&str]) -> (ValuationProfile, PolynomialGerm) {
    let vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let germ = parse_polynomial(text, &vars).expect("fixture parses");
    let diagram = compute_diagram(&germ.support()).expect("fixture has a diagram");
    (ValuationProfile::new(diagram), germ)
}

/// Facets of the Newton diagram of a planar support set: all supporting
/// lines through two support points with strictly positive normal, as
/// `(a, b, d)` rows with `gcd(a, b, d) = 1`.
pub fn hull_facets_2d(support: &[(i64, i64)]) -> Vec<(i64, i64, i64)> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    let mut out = BTreeSet::new();
    for (i, &p) in support.iter().enumerate() {
        for &q in support.iter().skip(i + 1) {
            let (dx, dy) = (q.0 - p.0, q.1 - p.1);
            // normal orthogonal to the segment, oriented positive
            let (mut a, mut b) = (dy, -dx);
            if a < 0 || (a == 0 && b < 0) {
                a = -a;
                b = -b;
            }
            if a <= 0 || b <= 0 {
                continue;
            }
            let d = a * p.0 + b * p.1;
            if d <= 0 || support.iter().any(|&s| a * s.0 + b * s.1 < d) {
                continue;
            }
            let g = gcd(gcd(a, b), d);
            out.insert((a / g, b / g, d / g));
        }
    }
    out.into_iter().collect()
}

/// Facets of the Newton diagram of a spatial support set: supporting planes
/// through three affinely independent support points with strictly positive
/// normal, as `(a, b, c, d)` rows with `gcd = 1`. Uses i128 cross products.
pub fn hull_facets_3d(support: &[(i64, i64, i64)]) -> Vec<(i64, i64, i64, i64)> {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    let mut out = BTreeSet::new();
    let n = support.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let p = support[i];
                let u = (
                    (support[j].0 - p.0) as i128,
                    (support[j].1 - p.1) as i128,
                    (support[j].2 - p.2) as i128,
                );
                let v = (
                    (support[k].0 - p.0) as i128,
                    (support[k].1 - p.1) as i128,
                    (support[k].2 - p.2) as i128,
                );
                let mut a = u.1 * v.2 - u.2 * v.1;
                let mut b = u.2 * v.0 - u.0 * v.2;
                let mut c = u.0 * v.1 - u.1 * v.0;
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let first = [a, b, c].into_iter().find(|x| *x != 0).unwrap();
                if first < 0 {
                    a = -a;
                    b = -b;
                    c = -c;
                }
                if a <= 0 || b <= 0 || c <= 0 {
                    continue;
                }
                let d = a * p.0 as i128 + b * p.1 as i128 + c * p.2 as i128;
                if d <= 0
                    || support.iter().any(|&s| {
                        a * s.0 as i128 + b * s.1 as i128 + c * s.2 as i128 < d
                    })
                {
                    continue;
                }
                let g = gcd(gcd(gcd(a, b), c), d);
                out.insert((
                    (a / g) as i64,
                    (b / g) as i64,
                    (c / g) as i64,
                    (d / g) as i64,
                ));
            }
        }
    }
    out.into_iter().collect()
}

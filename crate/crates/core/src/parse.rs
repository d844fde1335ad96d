//! Recursive-descent parser for human-written polynomials.
//!
//! Grammar: a polynomial is a signed sum of terms; a term is a product of
//! factors joined by optional `*`; a factor is an integer, a rational
//! `p/q`, or a declared variable with an optional `^exponent`. Whitespace
//! is insignificant. Like terms are combined and zero coefficients dropped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Exponent, PolynomialGerm};

const MAX_EXPONENT: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((pos, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((pos, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((pos, Tok::Caret));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                let n = s
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse { pos, msg: format!("bad integer `{}`", s) })?;
                out.push((pos, Tok::Num(n)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((pos, Tok::Ident(bytes[start..i].iter().collect())));
            }
            other => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    vars: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.into() }
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| self.err(format!("unknown variable `{}`", name)))
    }

    fn parse_integer(&mut self) -> Result<BigInt> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(n),
            _ => Err(self.err("expected an integer")),
        }
    }

    /// Exponent after `^`: a non-negative integer small enough to index with.
    fn parse_exponent(&mut self) -> Result<i64> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            return Err(self.err("negative exponents are not allowed"));
        }
        let n = self.parse_integer()?;
        let e = n
            .to_i64()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| self.err(format!("exponent too large (limit {})", MAX_EXPONENT)))?;
        Ok(e)
    }

    /// One term: product of numeric and variable-power factors.
    fn parse_term(&mut self) -> Result<(Exponent, BigRational)> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0i64; self.vars.len()];
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(Tok::Num(_)) => {
                    let n = self.parse_integer()?;
                    let mut value = BigRational::from(n);
                    if matches!(self.peek(), Some(Tok::Slash)) {
                        self.bump();
                        let pos = self.pos();
                        let d = self.parse_integer()?;
                        if d.is_zero() {
                            return Err(Error::Parse { pos, msg: "zero denominator".into() });
                        }
                        value /= BigRational::from(d);
                    }
                    coeff *= value;
                    saw_factor = true;
                }
                Some(Tok::Ident(_)) => {
                    let Some(Tok::Ident(name)) = self.bump() else { unreachable!() };
                    let j = self.var_index(&name)?;
                    let e = if matches!(self.peek(), Some(Tok::Caret)) {
                        self.bump();
                        self.parse_exponent()?
                    } else {
                        1
                    };
                    exps[j] += e;
                    if exps[j] > MAX_EXPONENT {
                        return Err(self.err(format!("exponent too large (limit {})", MAX_EXPONENT)));
                    }
                    saw_factor = true;
                }
                Some(Tok::Star) => {
                    self.bump();
                    if !matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_))) {
                        return Err(self.err("expected a factor after `*`"));
                    }
                }
                Some(Tok::Slash) => return Err(self.err("`/` is only allowed inside a rational coefficient")),
                Some(Tok::Caret) => return Err(self.err("`^` must follow a variable")),
                Some(Tok::Plus) | Some(Tok::Minus) | None => break,
            }
        }
        if !saw_factor {
            return Err(self.err("expected a term"));
        }
        Ok((Exponent::new(exps).expect("parser keeps exponents non-negative"), coeff))
    }
}

/// Parses `text` over the declared variables into a germ with like terms
/// combined; zero coefficients are dropped (so `x - x` yields the zero
/// germ, which callers may still reject as a defining germ).
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<PolynomialGerm> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    let mut p = Parser { toks, idx: 0, vars, end: text.chars().count() };
    let mut terms: BTreeMap<Exponent, BigRational> = BTreeMap::new();
    let mut first = true;
    while p.peek().is_some() {
        let mut sign = BigRational::one();
        let mut saw_sign = false;
        while let Some(tok) = p.peek() {
            match tok {
                Tok::Plus => {
                    p.bump();
                    saw_sign = true;
                }
                Tok::Minus => {
                    p.bump();
                    sign = -sign;
                    saw_sign = true;
                }
                _ => break,
            }
        }
        if !first && !saw_sign {
            return Err(p.err("expected `+` or `-` between terms"));
        }
        let (k, c) = p.parse_term()?;
        let entry = terms.entry(k).or_insert_with(BigRational::zero);
        *entry += sign * c;
        first = false;
    }
    terms.retain(|_, c| !c.is_zero());
    PolynomialGerm::new(vars.to_vec(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn exp(e: &[i64]) -> Exponent {
        Exponent::new(e.to_vec()).unwrap()
    }

    #[test]
    fn parses_plane_curve_germ() {
        let g = parse_polynomial("x^5 + x^2*y^2 + y^5", &vars(&["x", "y"])).unwrap();
        let support = g.support();
        assert_eq!(support, vec![exp(&[0, 5]), exp(&[2, 2]), exp(&[5, 0])]);
        for (_, c) in g.terms() {
            assert_eq!(c, &BigRational::from(BigInt::from(1)));
        }
    }

    #[test]
    fn parses_six_term_three_variable_germ() {
        let g = parse_polynomial(
            "x^5+y^5+z^5+x^2*y*z+x*y^2*z+x*y*z^2",
            &vars(&["x", "y", "z"]),
        )
        .unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.coefficient(&exp(&[2, 1, 1])).is_some());
        assert!(g.coefficient(&exp(&[0, 0, 5])).is_some());
    }

    #[test]
    fn cancellation_yields_zero_germ() {
        let g = parse_polynomial("x - x", &vars(&["x", "y"])).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn rational_coefficients_and_implicit_products() {
        let g = parse_polynomial("3/4 x^2 y - 2x + 1/2", &vars(&["x", "y"])).unwrap();
        assert_eq!(
            g.coefficient(&exp(&[2, 1])).unwrap(),
            &BigRational::new(BigInt::from(3), BigInt::from(4))
        );
        assert_eq!(
            g.coefficient(&exp(&[1, 0])).unwrap(),
            &BigRational::from(BigInt::from(-2))
        );
        assert_eq!(
            g.coefficient(&exp(&[0, 0])).unwrap(),
            &BigRational::new(BigInt::from(1), BigInt::from(2))
        );
    }

    #[test]
    fn repeated_variables_multiply() {
        let g = parse_polynomial("x*x*x", &vars(&["x"])).unwrap();
        assert!(g.coefficient(&exp(&[3])).is_some());
    }

    #[test]
    fn rejects_unknown_variable() {
        let e = parse_polynomial("x + w^2", &vars(&["x", "y"])).unwrap_err();
        assert!(e.to_string().contains("unknown variable"), "{}", e);
    }

    #[test]
    fn rejects_negative_and_fractional_exponents() {
        let e = parse_polynomial("x^-2", &vars(&["x"])).unwrap_err();
        assert!(e.to_string().contains("negative exponent"), "{}", e);
        // `x^1/2` parses the exponent 1, then hits a stray `/`.
        let e = parse_polynomial("x^1/2", &vars(&["x"])).unwrap_err();
        assert!(e.to_string().contains("rational coefficient"), "{}", e);
    }

    #[test]
    fn rejects_empty_input_with_position() {
        let e = parse_polynomial("   ", &vars(&["x"])).unwrap_err();
        match e {
            Error::Parse { msg, .. } => assert!(msg.contains("empty")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_is_independent_of_term_order_and_whitespace() {
        let v = vars(&["x", "y"]);
        let a = parse_polynomial("x^5 + x^2*y^2 + y^5", &v).unwrap();
        let b = parse_polynomial("y^5+x^2 * y^2   +x^5", &v).unwrap();
        assert_eq!(a, b);
    }
}

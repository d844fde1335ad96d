//! Multivariate integer-coefficient series truncated to rectangular
//! exponent boxes.
//!
//! A box fixes inclusive per-axis lower and upper bounds (lower bounds may
//! be negative). A series stores only its non-zero coefficients inside the
//! box; every claim about a series is a claim about the box, never beyond.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::MultiIndex;

/// Inclusive per-axis bounds `lo_i ≤ v_i ≤ hi_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxBounds {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl BoxBounds {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::ArityMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Invalid(format!("empty box: lo {:?} hi {:?}", lo, hi)));
        }
        Ok(BoxBounds { lo, hi })
    }

    /// `[0, hi_i]` on every axis.
    pub fn from_origin(hi: Vec<i64>) -> Result<Self> {
        let lo = vec![0; hi.len()];
        BoxBounds::new(lo, hi)
    }

    /// The cube `[0, b]^s`.
    pub fn cube(s: usize, b: i64) -> Self {
        BoxBounds { lo: vec![0; s], hi: vec![b; s] }
    }

    pub fn arity(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn contains(&self, v: &MultiIndex) -> bool {
        v.len() == self.arity()
            && v.entries()
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (l, h))| l <= x && x <= h)
    }

    /// The box grown by `margin` on every side.
    pub fn pad(&self, margin: i64) -> BoxBounds {
        BoxBounds {
            lo: self.lo.iter().map(|l| l - margin).collect(),
            hi: self.hi.iter().map(|h| h + margin).collect(),
        }
    }

    /// All lattice points of the box in lexicographic order.
    pub fn points(&self) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = self.lo.clone();
        loop {
            out.push(MultiIndex::new(cur.clone()));
            let mut axis = self.arity();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if cur[axis] < self.hi[axis] {
                    cur[axis] += 1;
                    for later in axis + 1..self.arity() {
                        cur[later] = self.lo[later];
                    }
                    break;
                }
                if axis == 0 {
                    return out;
                }
            }
        }
    }
}

/// An entry-level difference between two series on a common box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub v: MultiIndex,
    pub left: BigInt,
    pub right: BigInt,
}

/// A truncated series: non-zero integer coefficients on a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesBox {
    bounds: BoxBounds,
    coeffs: BTreeMap<MultiIndex, BigInt>,
}

impl SeriesBox {
    pub fn zero(bounds: BoxBounds) -> Self {
        SeriesBox { bounds, coeffs: BTreeMap::new() }
    }

    /// The constant series 1 (the entry is dropped when the box misses 0).
    pub fn one(bounds: BoxBounds) -> Self {
        let mut s = SeriesBox::zero(bounds);
        s.add_at(MultiIndex::zero(s.bounds.arity()), BigInt::from(1));
        s
    }

    pub fn bounds(&self) -> &BoxBounds {
        &self.bounds
    }

    pub fn arity(&self) -> usize {
        self.bounds.arity()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &BigInt)> {
        self.coeffs.iter()
    }

    /// Adds `c` at `v` when `v` lies in the box; silently truncates otherwise.
    pub fn add_at(&mut self, v: MultiIndex, c: BigInt) {
        if c.is_zero() || !self.bounds.contains(&v) {
            return;
        }
        let entry = self.coeffs.entry(v).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            // avoid holding a borrow across remove
            let key: Vec<MultiIndex> = self
                .coeffs
                .iter()
                .filter(|(_, val)| val.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.coeffs.remove(&k);
            }
        }
    }

    /// The stored coefficient, or 0 inside the box; exponents outside the
    /// box are a range error, not silently zero.
    pub fn coefficient(&self, v: &MultiIndex) -> Result<BigInt> {
        if !self.bounds.contains(v) {
            return Err(Error::OutsideBox { v: v.entries().to_vec() });
        }
        Ok(self.coeffs.get(v).cloned().unwrap_or_else(BigInt::zero))
    }

    /// Restriction to a smaller (or equal) box.
    pub fn crop(&self, bounds: BoxBounds) -> SeriesBox {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(v, _)| bounds.contains(v))
            .map(|(v, c)| (v.clone(), c.clone()))
            .collect();
        SeriesBox { bounds, coeffs }
    }

    /// Lists every exponent of the common box where the coefficients
    /// differ; empty exactly when the series agree on the box.
    pub fn compare(&self, other: &SeriesBox) -> Result<Vec<DiffEntry>> {
        if self.bounds != other.bounds {
            return Err(Error::BoxMismatch {
                msg: format!(
                    "lo {:?} hi {:?} vs lo {:?} hi {:?}",
                    self.bounds.lo, self.bounds.hi, other.bounds.lo, other.bounds.hi
                ),
            });
        }
        let mut diffs = Vec::new();
        let mut keys: Vec<&MultiIndex> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort();
        keys.dedup();
        for v in keys {
            let a = self.coeffs.get(v).cloned().unwrap_or_else(BigInt::zero);
            let b = other.coeffs.get(v).cloned().unwrap_or_else(BigInt::zero);
            if a != b {
                diffs.push(DiffEntry { v: v.clone(), left: a, right: b });
            }
        }
        Ok(diffs)
    }
}

/// `(1 - t^m)` for `sign = +1`, or its inverse `Σ_{r≥0} t^{rm}` for
/// `sign = -1`, truncated to the box. Requires `m ≥ 0`, `m ≠ 0`.
pub fn binomial_factor(m: &MultiIndex, sign: i8, bounds: BoxBounds) -> Result<SeriesBox> {
    if m.len() != bounds.arity() {
        return Err(Error::ArityMismatch { expected: bounds.arity(), got: m.len() });
    }
    if m.entries().iter().any(|&e| e < 0) || m.entries().iter().all(|&e| e == 0) {
        return Err(Error::Invalid(format!(
            "binomial exponent must be non-zero with non-negative entries, got {}",
            m
        )));
    }
    let mut s = SeriesBox::zero(bounds);
    match sign {
        1 => {
            s.add_at(MultiIndex::zero(m.len()), BigInt::from(1));
            s.add_at(m.clone(), BigInt::from(-1));
        }
        -1 => {
            // geometric series: all non-negative multiples of m inside the box
            let step = m.entries();
            let max_r = step
                .iter()
                .zip(s.bounds.hi())
                .filter(|(e, _)| **e > 0)
                .map(|(e, h)| if *h < 0 { -1 } else { h / e })
                .min()
                .expect("m has a positive entry");
            for r in 0..=max_r.max(-1) {
                let v = MultiIndex::new(step.iter().map(|e| e * r).collect());
                s.add_at(v, BigInt::from(1));
            }
        }
        other => {
            return Err(Error::Invalid(format!("binomial sign must be +1 or -1, got {}", other)));
        }
    }
    Ok(s)
}

/// Truncated Cauchy product on the given output box.
pub fn multiply(a: &SeriesBox, b: &SeriesBox, bounds: BoxBounds) -> Result<SeriesBox> {
    if a.arity() != b.arity() || a.arity() != bounds.arity() {
        return Err(Error::ArityMismatch { expected: a.arity(), got: b.arity() });
    }
    let (outer, inner) = if a.support_len() <= b.support_len() { (a, b) } else { (b, a) };
    let mut out = SeriesBox::zero(bounds);
    for (p, cp) in outer.iter() {
        for (q, cq) in inner.iter() {
            let v = p.add(q);
            if out.bounds.contains(&v) {
                out.add_at(v, cp * cq);
            }
        }
    }
    Ok(out)
}

/// `∏_i (t_i - 1)` as a series on `[0,1]^s`.
pub fn product_ti_minus_one(s: usize) -> SeriesBox {
    let mut out = SeriesBox::zero(BoxBounds::cube(s, 1));
    for mask in 0u64..(1 << s) {
        let v = MultiIndex::zero(s).plus_indicator_mask(mask);
        let sign = if (s as u32 - mask.count_ones()) % 2 == 0 { 1 } else { -1 };
        out.add_at(v, BigInt::from(sign));
    }
    out
}

/// `t_1⋯t_s - 1` as a series on `[0,1]^s`.
pub fn full_monomial_minus_one(s: usize) -> SeriesBox {
    let mut out = SeriesBox::zero(BoxBounds::cube(s, 1));
    out.add_at(MultiIndex::ones(s), BigInt::from(1));
    out.add_at(MultiIndex::zero(s), BigInt::from(-1));
    out
}

//! Exact linear algebra kernels.
//!
//! Two flavours are used by the engine:
//!
//! - sparse fraction-free elimination over the integers for rank
//!   computations (rows are cleared of denominators on entry and kept
//!   primitive via gcd reduction, so entries stay small);
//! - dense Gauss–Jordan over the rationals for nullspace bases and for
//!   solving small affine systems during hull construction.
//!
//! Pivoting is deterministic everywhere: rows are processed in the order
//! given, the pivot of a row is its first non-zero column.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Col = u32;

/// A sparse integer row: sorted column-value pairs, no zeros, gcd-reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRow {
    entries: Vec<(Col, BigInt)>,
}

impl SparseRow {
    /// Builds a row from unsorted entries, merging duplicates and dropping
    /// zeros, then dividing by the gcd of the values.
    pub fn from_entries(mut entries: Vec<(Col, BigInt)>) -> Self {
        entries.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(Col, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        let mut row = SparseRow { entries: merged };
        row.reduce_gcd();
        row
    }

    /// Clears denominators of a rational row and reduces.
    pub fn from_rational_entries(entries: Vec<(Col, BigRational)>) -> Self {
        let mut lcm = BigInt::one();
        for (_, v) in &entries {
            lcm = lcm.lcm(v.denom());
        }
        let ints = entries
            .into_iter()
            .map(|(c, v)| {
                let scaled = v * BigRational::from(lcm.clone());
                debug_assert!(scaled.denom().is_one());
                (c, scaled.to_integer())
            })
            .collect();
        SparseRow::from_entries(ints)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(Col, BigInt)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<(Col, &BigInt)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    /// The row with all entries in `cols` removed.
    pub fn without_cols(&self, cols: &BTreeSet<Col>) -> SparseRow {
        SparseRow {
            entries: self
                .entries
                .iter()
                .filter(|(c, _)| !cols.contains(c))
                .cloned()
                .collect(),
        }
    }

    fn reduce_gcd(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, v) in &self.entries {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
        for (_, v) in &mut self.entries {
            *v = &*v / &g;
        }
    }

    /// `self * a - pivot * b`, merged sparse. Used with `a = pivot_lead`,
    /// `b = self_lead` so the pivot column cancels exactly.
    fn eliminate(&self, a: &BigInt, pivot: &SparseRow, b: &BigInt) -> SparseRow {
        let mut out: Vec<(Col, BigInt)> = Vec::with_capacity(self.entries.len() + pivot.entries.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.entries.len() || j < pivot.entries.len() {
            let next = match (self.entries.get(i), pivot.entries.get(j)) {
                (Some((ci, vi)), Some((cj, vj))) => {
                    if ci < cj {
                        i += 1;
                        (*ci, vi * a)
                    } else if cj < ci {
                        j += 1;
                        (*cj, -(vj * b))
                    } else {
                        let v = vi * a - vj * b;
                        i += 1;
                        j += 1;
                        (*ci, v)
                    }
                }
                (Some((ci, vi)), None) => {
                    i += 1;
                    (*ci, vi * a)
                }
                (None, Some((cj, vj))) => {
                    j += 1;
                    (*cj, -(vj * b))
                }
                (None, None) => unreachable!(),
            };
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        let mut row = SparseRow { entries: out };
        row.reduce_gcd();
        row
    }
}

/// Online rank computation: insert rows one by one, each reduced against the
/// pivots accumulated so far.
#[derive(Clone, Debug, Default)]
pub struct RankAccumulator {
    pivots: BTreeMap<Col, SparseRow>,
}

impl RankAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots without inserting it.
    pub fn residual(&self, mut row: SparseRow) -> SparseRow {
        while let Some((lead, lead_val)) = row.leading().map(|(c, v)| (c, v.clone())) {
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let pv = pivot.leading().expect("pivot rows are non-zero").1.clone();
                    let g = pv.gcd(&lead_val);
                    row = row.eliminate(&(&pv / &g), pivot, &(&lead_val / &g));
                }
                None => break,
            }
        }
        row
    }

    /// Returns true when the row increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.residual(row);
        match reduced.leading() {
            Some((lead, _)) => {
                self.pivots.insert(lead, reduced);
                true
            }
            None => false,
        }
    }

    /// True when `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.residual(row).is_zero()
    }
}

/// Rank of a list of rows.
pub fn rank_of(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut acc = RankAccumulator::new();
    for row in rows {
        acc.insert(row);
    }
    acc.rank()
}

/// Reduced row echelon form in place; returns the pivot column of each
/// surviving row (rows end up sorted by pivot, zero rows removed).
fn rref(rows: &mut Vec<Vec<BigRational>>, ncols: usize) -> Vec<usize> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let sub = &rows[r][j] * &factor;
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right nullspace `{x : A x = 0}` of a dense rational matrix,
/// one vector per free column, in ascending free-column order.
pub fn nullspace_basis(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let pivots = rref(&mut rows, ncols);
    let pivot_set: BTreeSet<usize> = pivots.iter().cloned().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            // pivot row: x_pc + sum over free cols = 0
            v[pc] = -rows[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` exactly. Returns any solution (free variables set to 0)
/// or `None` when the system is inconsistent.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let nrows = a.len();
    assert_eq!(nrows, b.len());
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None; // pivot in the rhs column: inconsistent
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[ri][ncols].clone();
    }
    Some(x)
}

/// The integer hyperplane `a·k = d` through the given points, when they
/// affinely span exactly a hyperplane. Returned unoriented and unnormalized;
/// `None` when the span is degenerate (kernel dimension ≠ 1).
pub fn hyperplane_through(points: &[&[i64]]) -> Option<(Vec<BigInt>, BigInt)> {
    let n = points.first()?.len();
    // Kernel of the (points × (n+1)) matrix [p | -1]: vectors (a, d) with
    // a·p - d = 0 for every p.
    let rows: Vec<Vec<BigRational>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<BigRational> = p
                .iter()
                .map(|&e| BigRational::from(BigInt::from(e)))
                .collect();
            row.push(BigRational::from(BigInt::from(-1)));
            row
        })
        .collect();
    let basis = nullspace_basis(rows, n + 1);
    if basis.len() != 1 {
        return None;
    }
    let v = &basis[0];
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from(lcm.clone())).to_integer())
        .collect();
    let (a, d) = ints.split_at(n);
    Some((a.to_vec(), d[0].clone()))
}

/// Divides the vector (and scalar) by the gcd of all entries.
pub fn make_primitive(a: &mut [BigInt], d: &mut BigInt) {
    let mut g = d.abs();
    for x in a.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in a.iter_mut() {
        *x = &*x / &g;
    }
    *d = &*d / &g;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn rank_of_simple_matrices() {
        let r1 = SparseRow::from_entries(vec![(0, 1.into()), (1, 1.into())]);
        let r2 = SparseRow::from_entries(vec![(0, 2.into()), (1, 2.into())]);
        let r3 = SparseRow::from_entries(vec![(1, 1.into()), (2, 1.into())]);
        assert_eq!(rank_of(vec![r1.clone(), r2, r3.clone()]), 2);
        assert_eq!(rank_of(vec![r1, r3]), 2);
        assert_eq!(rank_of(Vec::<SparseRow>::new()), 0);
    }

    #[test]
    fn residual_detects_membership() {
        let mut acc = RankAccumulator::new();
        acc.insert(SparseRow::from_entries(vec![(0, 1.into()), (1, 2.into())]));
        acc.insert(SparseRow::from_entries(vec![(1, 1.into()), (2, 3.into())]));
        // (1, 2, 0) + (0, -2, -6)·... : 1*r1 - 2*r2 = (1, 0, -6)
        let probe = SparseRow::from_entries(vec![(0, 1.into()), (2, (-6).into())]);
        assert!(acc.contains(probe));
        let outside = SparseRow::from_entries(vec![(2, 1.into())]);
        assert!(!acc.contains(outside));
    }

    #[test]
    fn rows_are_gcd_reduced_and_merged() {
        let r = SparseRow::from_entries(vec![(3, 4.into()), (1, 6.into()), (3, 2.into())]);
        assert_eq!(r.entries(), &[(1, BigInt::from(1)), (3, BigInt::from(1))]);
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        // x + y + z = 0 over 3 columns: nullity 2.
        let rows = vec![vec![rat(1), rat(1), rat(1)]];
        let basis = nullspace_basis(rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s: BigRational = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_exact_consistent_and_inconsistent() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]];
        let b = vec![rat(3), rat(1)];
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);

        let a = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        let b = vec![rat(1), rat(3)];
        assert!(solve_exact(&a, &b).is_none());
    }

    #[test]
    fn hyperplane_through_two_points() {
        let p1 = [5i64, 0];
        let p2 = [2i64, 2];
        let (a, d) = hyperplane_through(&[&p1, &p2]).unwrap();
        // 2x + 3y = 10 up to sign and scale
        let three_a0: BigInt = &a[0] * 3;
        let two_a1: BigInt = &a[1] * 2;
        assert!(three_a0 == two_a1 || three_a0 == -two_a1.clone());
        let d_check: BigInt = &a[0] * 5;
        assert_eq!(d_check, d);
    }

    #[test]
    fn hyperplane_through_degenerate_points_is_none() {
        let p1 = [1i64, 1, 1];
        let p2 = [2i64, 2, 2];
        let p3 = [3i64, 3, 3];
        assert!(hyperplane_through(&[&p1, &p2, &p3]).is_none());
    }
}

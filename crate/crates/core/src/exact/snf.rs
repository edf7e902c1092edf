//! Smith and Hermite normal forms over the integers, and saturated kernel lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMat;

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal, `d_1 | d_2 | ...`, `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMat,
    pub s: IntMat,
    pub v: IntMat,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }
}

fn smallest_nonzero(s: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some(((i, j), v));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn snf(a: &IntMat) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; make it the pivot
                let mut best = (t, t, s[(t, t)].abs());
                for i in t + 1..m {
                    let x = s[(i, t)].abs();
                    if !x.is_zero() && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = s[(t, j)].abs();
                    if !x.is_zero() && x < best.2 {
                        best = (t, j, x);
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, s, v }
}

/// Row-style Hermite normal form: unimodular row operations bring `a` to echelon form with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(a: &IntMat) -> IntMat {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let Some(p) = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by_key(|&i| h[(i, c)].abs())
            else {
                break;
            };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, c)] / &h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    let rows: Vec<Vec<BigInt>> = (0..r).map(|i| h.row(i).to_vec()).collect();
    IntMat::from_rows(n, &rows)
}

/// Columns form a Z-basis of the saturated lattice `ker_Z(a)`.
///
/// The basis is put in Hermite form (as rows), so the first nonzero entry of every column
/// is positive and the output is independent of the elimination path.
pub fn kernel_basis(a: &IntMat) -> IntMat {
    let n = a.cols();
    let res = snf(a);
    let r = res.rank();
    let cols: Vec<Vec<BigInt>> = (r..n).map(|j| res.v.column(j)).collect();
    let raw = IntMat::from_columns(n, &cols);
    hermite_rows(&raw.transpose()).transpose()
}

/// True iff the columns of `basis` span a saturated sublattice of Z^rows
/// (all invariant factors equal one).
pub fn is_saturated(basis: &IntMat) -> bool {
    snf(basis).invariant_factors().iter().all(One::is_one)
}

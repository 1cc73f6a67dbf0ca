//! Hermite and Smith normal forms with unimodular transforms.

use crate::linalg::matrix::Matrix;
use crate::scalar::Scalar;

/// Row echelon data produced by [`hermite_normal_form`].
#[derive(Clone, Debug)]
pub struct Hermite<T> {
    pub h: Matrix<T>,
    pub u: Option<Matrix<T>>,
    /// `(row, column)` of every pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

impl<T> Hermite<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Hermite form `H = U·M` by unimodular row operations.
///
/// Pivots are positive, sit in strictly increasing columns, and every entry
/// above a pivot lies in `[0, pivot)`. The output depends only on `M`.
pub fn hermite_normal_form<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let e = hermite(m, true);
    (e.h, e.u.expect("transform requested"))
}

/// Hermite form with optional transform tracking.
pub fn hermite<T: Scalar>(m: &Matrix<T>, track: bool) -> Hermite<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = if track { Some(Matrix::identity(rows)) } else { None };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                let v = &h[(i, c)];
                if !v.is_zero() && best.is_none_or(|b| v.abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            if let Some(u) = u.as_mut() {
                u.swap_rows(r, p);
            }
            let mut clean = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, r, &q);
                }
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            if h[(i, c)].is_zero() {
                continue;
            }
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, r, &q);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    Hermite { h, u, pivots }
}

/// Smith form `D = L·M·R` with nonnegative diagonal `d₁ | d₂ | …`.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>, Matrix<T>) {
    let s = smith(m);
    let d = Matrix::diagonal(m.rows(), m.cols(), &s.diag);
    (d, s.l, s.r)
}

/// Smith data: the diagonal together with both transforms.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    /// Diagonal entries, `min(rows, cols)` of them, zeros last.
    pub diag: Vec<T>,
    pub l: Matrix<T>,
    pub r: Matrix<T>,
}

impl<T: Scalar> Smith<T> {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith<T: Scalar>(m: &Matrix<T>) -> Smith<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut l = Matrix::identity(rows);
    let mut r = Matrix::identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        let Some((pi, pj)) = min_entry(&d, t, t) else { break };
        d.swap_rows(t, pi);
        l.swap_rows(t, pi);
        d.swap_cols(t, pj);
        r.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                l.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                r.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = min_in_cross(&d, t);
                d.swap_rows(t, pi);
                l.swap_rows(t, pi);
                d.swap_cols(t, pj);
                r.swap_cols(t, pj);
                continue;
            }
            let piv = d[(t, t)].clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let one = T::one();
                    d.add_row_multiple(t, i, &one);
                    l.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            l.negate_row(t);
        }
    }
    let diag = (0..n).map(|i| d[(i, i)].clone()).collect();
    Smith { diag, l, r }
}

fn min_entry<T: Scalar>(d: &Matrix<T>, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..d.rows() {
        for j in c0..d.cols() {
            let v = &d[(i, j)];
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry among the pivot, the column below it and the row right of it.
fn min_in_cross<T: Scalar>(d: &Matrix<T>, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let v = &d[(i, j)];
        let b = &d[*best];
        if !v.is_zero() && (b.is_zero() || v.abs() < b.abs()) {
            *best = (i, j);
        }
    };
    for i in t + 1..d.rows() {
        consider(i, t, &mut best);
    }
    for j in t + 1..d.cols() {
        consider(t, j, &mut best);
    }
    best
}

/// An integer solution of `M·x = b`, if one exists.
pub fn solve<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows(), b.len(), "right-hand side has the wrong length");
    Solver::new(m).solve(b)
}

/// Precomputed Smith data for repeated solves against one matrix.
#[derive(Clone, Debug)]
pub struct Solver<T> {
    smith: Smith<T>,
    rank: usize,
}

impl<T: Scalar> Solver<T> {
    pub fn new(m: &Matrix<T>) -> Self {
        let smith = smith(m);
        let rank = smith.rank();
        Solver { smith, rank }
    }

    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let y = self.smith.l.mul_vec(b);
        let mut z = vec![T::zero(); self.smith.r.rows()];
        for (i, yi) in y.iter().enumerate() {
            if i < self.rank {
                let (q, rem) = yi.div_rem(&self.smith.diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.smith.r.mul_vec(&z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Signed;

    type M = Matrix<BigInt>;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hermite_examples() {
        let (h, u) = hermite_normal_form(&M::identity(2));
        assert_eq!(h, M::identity(2));
        assert_eq!(u, M::identity(2));

        let m = M::from_rows(&[[2, 4], [6, 8]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, M::from_rows(&[[2, 0], [0, 4]]));
        assert_eq!(u.mul(&m), h);
        assert_eq!(u.determinant().abs(), int(1));

        let z = M::zeros(2, 3);
        let (h, u) = hermite_normal_form(&z);
        assert!(h.is_zero());
        assert_eq!(u, M::identity(2));
    }

    #[test]
    fn smith_examples() {
        let m = M::from_rows(&[[2, 4], [6, 8]]);
        let (d, l, r) = smith_normal_form(&m);
        assert_eq!(d, M::diagonal(2, 2, &[int(2), int(4)]));
        assert_eq!(l.mul(&m).mul(&r), d);
        let (d, _, _) = smith_normal_form(&M::identity(3));
        assert_eq!(d, M::identity(3));
        let (d, _, _) = smith_normal_form(&M::from_rows(&[[6]]));
        assert_eq!(d, M::from_rows(&[[6]]));
        let (d, _, _) = smith_normal_form(&M::from_rows(&[[-6]]));
        assert_eq!(d, M::from_rows(&[[6]]));
    }

    #[test]
    fn smith_forces_divisibility() {
        let m = M::from_rows(&[[2, 0], [0, 3]]);
        let s = smith(&m);
        assert_eq!(s.diag, vec![int(1), int(6)]);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&M::from_rows(&[[2]]), &[int(4)]), Some(vec![int(2)]));
        assert_eq!(solve(&M::from_rows(&[[2]]), &[int(3)]), None);
        let m = M::from_rows(&[[2, 3]]);
        let x = solve(&m, &[int(1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![int(1)]);
        assert_eq!(solve(&M::zeros(2, 0), &[int(0), int(0)]), Some(vec![]));
        assert_eq!(solve(&M::zeros(1, 0), &[int(1)]), None);
    }

    #[test]
    fn generic_over_machine_integers() {
        let m = Matrix::<i64>::from_rows(&[[4, 6], [10, 14]]);
        let s = smith(&m);
        assert_eq!(s.diag, vec![2, 2]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
    }
}

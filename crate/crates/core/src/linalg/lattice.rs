//! Sublattices of `ℤⁿ` kept in Hermite form.

use crate::linalg::matrix::Matrix;
use crate::linalg::normal_form::hermite;
use crate::scalar::{add_mul, rem_nonneg, sub_mul, Scalar};

/// A subgroup of `ℤⁿ`, stored as the nonzero rows of a Hermite form.
///
/// The basis is canonical, so two lattices are equal iff their stored
/// bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice<T = crate::Int> {
    dim: usize,
    /// `rank x dim`, rows form the basis.
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Lattice<T> {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Matrix::zeros(0, dim), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Lattice { dim, basis: Matrix::identity(dim), pivots: (0..dim).collect() }
    }

    /// Lattice spanned by the columns of `g` (`dim x k`).
    pub fn from_columns(g: &Matrix<T>) -> Self {
        Self::from_rows(&g.transpose())
    }

    /// Lattice spanned by the rows of `g` (`k x dim`).
    pub fn from_rows(g: &Matrix<T>) -> Self {
        let dim = g.cols();
        let e = hermite(g, false);
        let rank = e.rank();
        let basis = e.h.block(0, 0, rank, dim);
        let pivots = e.pivots.iter().map(|&(_, c)| c).collect();
        Lattice { dim, basis, pivots }
    }

    pub fn from_vectors(dim: usize, vs: &[Vec<T>]) -> Self {
        Self::from_columns(&Matrix::from_columns(dim, vs))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Basis vectors as rows.
    pub fn basis_rows(&self) -> &Matrix<T> {
        &self.basis
    }

    /// Basis vectors as columns (`dim x rank`).
    pub fn basis_columns(&self) -> Matrix<T> {
        self.basis.transpose()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<T>> {
        (0..self.rank()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Coordinates of `x` in the stored basis, or `None` if `x` is not in the lattice.
    pub fn coords(&self, x: &[T]) -> Option<Vec<T>> {
        assert_eq!(x.len(), self.dim, "vector has the wrong length");
        let mut x = x.to_vec();
        let mut c = Vec::with_capacity(self.rank());
        for (i, &p) in self.pivots.iter().enumerate() {
            if x[..p].iter().any(|v| !v.is_zero()) {
                return None;
            }
            let (q, rem) = x[p].div_rem(&self.basis[(i, p)]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (xj, bj) in x[p..].iter_mut().zip(&self.basis.row(i)[p..]) {
                    sub_mul(xj, bj, &q);
                }
            }
            c.push(q);
        }
        if x.iter().all(|v| v.is_zero()) {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.coords(x).is_some()
    }

    pub fn contains_lattice(&self, other: &Self) -> bool {
        self.contains_all((0..other.rank()).map(|i| other.basis.row(i)))
    }

    /// Membership of every vector, with one scan of the basis shared across them.
    pub fn contains_all<'a>(&self, vs: impl IntoIterator<Item = &'a [T]>) -> bool
    where
        T: 'a,
    {
        match self.diagonal_entries() {
            Some(d) => vs.into_iter().all(|x| {
                assert_eq!(x.len(), self.dim, "vector has the wrong length");
                x.iter().zip(&d).all(|(v, e)| if e.is_zero() { v.is_zero() } else { v.is_multiple_of(e) })
            }),
            None => vs.into_iter().all(|x| self.contains(x)),
        }
    }

    /// Per-coordinate generators when the lattice is coordinate-diagonal (0 where absent).
    fn diagonal_entries(&self) -> Option<Vec<T>> {
        if !self.is_coordinate_diagonal() {
            return None;
        }
        let mut d = vec![T::zero(); self.dim];
        for (i, &p) in self.pivots.iter().enumerate() {
            d[p] = self.basis[(i, p)].clone();
        }
        Some(d)
    }

    /// The lattice `⊕ dᵢℤ`; signs of the `dᵢ` are ignored.
    pub fn from_diagonal(d: &[T]) -> Self {
        let dim = d.len();
        let pivots: Vec<usize> = (0..dim).filter(|&i| !d[i].is_zero()).collect();
        let mut basis = Matrix::zeros(pivots.len(), dim);
        for (i, &p) in pivots.iter().enumerate() {
            basis[(i, p)] = d[p].abs();
        }
        Lattice { dim, basis, pivots }
    }

    /// Reduces `x` against the basis: pivot coordinates land in `[0, pivot)`.
    pub fn reduce(&self, x: &[T]) -> Vec<T> {
        let mut x = x.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let q = x[p].div_floor(&self.basis[(i, p)]);
            if !q.is_zero() {
                for (xj, bj) in x[p..].iter_mut().zip(&self.basis.row(i)[p..]) {
                    sub_mul(xj, bj, &q);
                }
            }
        }
        x
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if let (Some(a), Some(b)) = (self.diagonal_entries(), other.diagonal_entries()) {
            let d: Vec<T> = a.iter().zip(&b).map(|(x, y)| x.gcd(y)).collect();
            return Self::from_diagonal(&d);
        }
        Self::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.dim);
        }
        if let (Some(a), Some(b)) = (self.diagonal_entries(), other.diagonal_entries()) {
            let d: Vec<T> = a.iter().zip(&b).map(|(x, y)| if x.is_zero() || y.is_zero() { T::zero() } else { x.lcm(y) }).collect();
            return Self::from_diagonal(&d);
        }
        // rows (u, v) with u·A = v·B
        let stacked = self.basis.vstack(&other.basis.neg());
        let ker = left_kernel(&stacked);
        let u = ker.block(0, 0, ker.rows(), self.rank());
        Self::from_rows(&u.mul(&self.basis))
    }

    /// Image under the linear map with matrix `f` (`m x dim`).
    pub fn image(&self, f: &Matrix<T>) -> Self {
        assert_eq!(f.cols(), self.dim);
        Self::from_rows(&self.basis.mul(&f.transpose()))
    }

    /// Each basis vector is a multiple of a coordinate vector.
    pub fn is_coordinate_diagonal(&self) -> bool {
        // Hermite rows: entries left of the pivot vanish
        (0..self.rank()).all(|i| self.basis.row(i)[self.pivots[i] + 1..].iter().all(|v| v.is_zero()))
    }

    /// `{x : f·x ∈ self}` for `f` of shape `dim x n`.
    pub fn preimage(&self, f: &Matrix<T>) -> Self {
        assert_eq!(f.rows(), self.dim);
        let n = f.cols();
        if self.is_coordinate_diagonal() {
            let mut modulus = vec![T::zero(); self.dim];
            for (i, &p) in self.pivots.iter().enumerate() {
                modulus[p] = self.basis[(i, p)].clone();
            }
            let constraints = (0..self.dim).filter(|&i| !modulus[i].is_one()).map(|i| {
                let row: Vec<(usize, T)> =
                    f.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect();
                (row, modulus[i].clone())
            });
            return congruence_kernel(n, constraints);
        }
        self.preimage_by_kernel(f)
    }

    /// [`Lattice::preimage`] through a left kernel of `[fᵀ; -B]`, without the diagonal shortcut.
    pub fn preimage_by_kernel(&self, f: &Matrix<T>) -> Self {
        assert_eq!(f.rows(), self.dim);
        let n = f.cols();
        // rows (x, y) with x·fᵀ = y·B
        let stacked = f.transpose().vstack(&self.basis.neg());
        let ker = left_kernel(&stacked);
        Self::from_rows(&ker.block(0, 0, ker.rows(), n))
    }
}

/// `{x ∈ ℤⁿ : r·x ≡ 0 mod e}` for every constraint `(r, e)`, `r` given sparsely; `e = 0` means `r·x = 0`.
///
/// Constraints are imposed one at a time by unimodular column operations on a
/// basis of the current solution lattice.
pub fn congruence_kernel<T: Scalar>(n: usize, constraints: impl IntoIterator<Item = (Vec<(usize, T)>, T)>) -> Lattice<T> {
    let mut cols: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut c = vec![T::zero(); n];
            c[j] = T::one();
            c
        })
        .collect();
    let limit = T::from_i64_exact(1 << 40);
    let mut since_reduce = 0usize;
    for (row, e) in constraints {
        if cols.is_empty() {
            break;
        }
        let modular = !e.is_zero();
        let reduce = |x: T| if modular { rem_nonneg(&x, &e) } else { x };
        let mut v: Vec<T> = cols
            .iter()
            .map(|c| {
                let mut acc = T::zero();
                for (i, r) in &row {
                    if !c[*i].is_zero() {
                        add_mul(&mut acc, r, &c[*i]);
                    }
                }
                reduce(acc)
            })
            .collect();
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        // Euclid on the entries of v by column operations
        let p = loop {
            let nz: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
            let p = *nz.iter().min_by(|&&a, &&b| v[a].abs().cmp(&v[b].abs())).unwrap();
            if nz.len() == 1 {
                break p;
            }
            for &j in &nz {
                if j == p {
                    continue;
                }
                let q = v[j].div_floor(&v[p]);
                let (cj, cp) = if j < p {
                    let (lo, hi) = cols.split_at_mut(p);
                    (&mut lo[j], &hi[0])
                } else {
                    let (lo, hi) = cols.split_at_mut(j);
                    (&mut hi[0], &lo[p])
                };
                for (x, y) in cj.iter_mut().zip(cp.iter()) {
                    if !y.is_zero() {
                        sub_mul(x, y, &q);
                    }
                }
                let mut vj = v[j].clone();
                sub_mul(&mut vj, &v[p], &q);
                v[j] = reduce(vj);
            }
        };
        if modular {
            let m = e.div_floor(&v[p].gcd(&e));
            if !m.is_one() {
                for x in cols[p].iter_mut() {
                    *x *= &m;
                }
            }
        } else {
            cols.swap_remove(p);
        }
        since_reduce += 1;
        if since_reduce >= 32 {
            since_reduce = 0;
            if cols.iter().any(|c| c.iter().any(|x| x.abs() > limit)) {
                let l = Lattice::from_columns(&Matrix::from_columns(n, &cols));
                cols = l.basis_vectors();
            }
        }
    }
    Lattice::from_columns(&Matrix::from_columns(n, &cols))
}

/// Rows spanning `{u : u·M = 0}`.
pub fn left_kernel<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let e = hermite(m, true);
    let rank = e.rank();
    let u = e.u.expect("transform requested");
    u.block(rank, 0, m.rows() - rank, m.rows())
}

/// Columns spanning `{x : M·x = 0}`, in Hermite-reduced form.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let k = left_kernel(&m.transpose());
    Lattice::from_rows(&k).basis_columns()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = Lattice<BigInt>;
    type M = Matrix<BigInt>;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_basis() {
        let a = L::from_columns(&M::from_rows(&[[2, 4], [6, 8]]));
        let b = L::from_columns(&M::from_rows(&[[2, 2], [6, 2]]));
        // both have index 8 and contain (2, 6)
        assert_eq!(a.rank(), 2);
        assert!(a.contains(&v(&[2, 6])));
        assert!(!a.contains(&v(&[1, 0])));
        assert_eq!(a == b, a.contains_lattice(&b) && b.contains_lattice(&a));
    }

    #[test]
    fn intersection_and_preimage() {
        let a = L::from_vectors(1, &[v(&[4])]);
        let b = L::from_vectors(1, &[v(&[6])]);
        assert_eq!(a.intersection(&b), L::from_vectors(1, &[v(&[12])]));
        assert_eq!(a.sum(&b), L::from_vectors(1, &[v(&[2])]));
        // {x : 2x ∈ 4ℤ} = 2ℤ
        let f = M::from_rows(&[[2]]);
        assert_eq!(a.preimage(&f), L::from_vectors(1, &[v(&[2])]));
    }

    #[test]
    fn kernel_of_projection() {
        let m = M::from_rows(&[[1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k, M::from_rows(&[[0], [1]]));
    }
}

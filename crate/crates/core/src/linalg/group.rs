//! Finitely generated abelian groups as presentations.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::lattice::Lattice;
use crate::linalg::matrix::Matrix;
use crate::linalg::normal_form::{smith, Smith, Solver};
use crate::scalar::{rem_nonneg, Scalar};
use crate::Int;

/// Isomorphism type: torsion coefficients `d₁ | d₂ | …` (all > 1) and free rank.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Invariants<T = Int> {
    pub torsion: Vec<T>,
    pub rank: usize,
}

impl<T: Scalar> Invariants<T> {
    pub fn trivial() -> Self {
        Invariants { torsion: Vec::new(), rank: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.rank == 0
    }

    /// Invariant factors with free summands written as `0`.
    pub fn factors(&self) -> Vec<T> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(T::zero(), self.rank));
        v
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<T> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(T::one(), |acc, d| acc * d.clone()))
    }
}

impl<T: fmt::Display> fmt::Display for Invariants<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Order of a group element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Order<T = Int> {
    Finite(T),
    Infinite,
}

impl<T: fmt::Display> fmt::Display for Order<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// `ℤⁿ / colspan(relations)`.
#[derive(Clone)]
pub struct FgAbGroup<T: Scalar = Int> {
    n: usize,
    relations: Matrix<T>,
    rel_lattice: OnceLock<Lattice<T>>,
    smith: OnceLock<Smith<T>>,
}

impl<T: Scalar> PartialEq for FgAbGroup<T> {
    /// Equality of presentations, not isomorphism; see [`FgAbGroup::isomorphic`].
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.relations == other.relations
    }
}

impl<T: Scalar> Eq for FgAbGroup<T> {}

impl<T: Scalar> fmt::Debug for FgAbGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup(n={}, rels={:?})", self.n, self.relations)
    }
}

impl<T: Scalar> fmt::Display for FgAbGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariants())
    }
}

impl<T: Scalar> FgAbGroup<T> {
    pub fn new(relations: Matrix<T>) -> Self {
        FgAbGroup {
            n: relations.rows(),
            relations,
            rel_lattice: OnceLock::new(),
            smith: OnceLock::new(),
        }
    }

    /// `ℤⁿ` modulo the lattice `rel`.
    pub fn from_lattice(rel: Lattice<T>) -> Self {
        let g = Self::new(rel.basis_columns());
        let _ = g.rel_lattice.set(rel);
        g
    }

    pub fn free(n: usize) -> Self {
        Self::from_lattice(Lattice::zero(n))
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(m: T) -> Self {
        Self::new(Matrix::from_vec(1, 1, vec![m]))
    }

    /// `⊕ ℤ/dᵢ`, with `dᵢ = 0` meaning a free summand.
    pub fn from_factors(factors: &[T]) -> Self {
        let n = factors.len();
        Self::new(Matrix::diagonal(n, n, factors))
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &Matrix<T> {
        &self.relations
    }

    pub fn relation_lattice(&self) -> &Lattice<T> {
        self.rel_lattice.get_or_init(|| Lattice::from_columns(&self.relations))
    }

    fn smith_data(&self) -> &Smith<T> {
        self.smith.get_or_init(|| smith(&self.relations))
    }

    /// Diagonal of the Smith form padded to length `n` (free directions are `0`).
    fn padded_diag(&self) -> Vec<T> {
        let s = self.smith_data();
        let mut d = s.diag.clone();
        d.resize(self.n, T::zero());
        d
    }

    pub fn invariants(&self) -> Invariants<T> {
        let d = self.padded_diag();
        let torsion = d.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect();
        let rank = d.iter().filter(|x| x.is_zero()).count();
        Invariants { torsion, rank }
    }

    pub fn isomorphic(&self, other: &Self) -> bool {
        self.invariants() == other.invariants()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants().is_trivial()
    }

    pub fn order(&self) -> Option<T> {
        self.invariants().order()
    }

    pub fn is_zero_element(&self, x: &[T]) -> bool {
        self.relation_lattice().contains(x)
    }

    pub fn elements_equal(&self, x: &[T], y: &[T]) -> bool {
        let d: Vec<T> = x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect();
        self.is_zero_element(&d)
    }

    /// Coordinates in `⊕ ℤ/dᵢ ⊕ ℤʳ` (only the nontrivial summands), each
    /// torsion coordinate reduced into `[0, dᵢ)`. Equal elements give equal output.
    pub fn normal_form(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n, "element has the wrong length");
        let y = self.smith_data().l.mul_vec(x);
        let d = self.padded_diag();
        y.iter()
            .zip(&d)
            .filter(|(_, di)| !di.is_one())
            .map(|(yi, di)| if di.is_zero() { yi.clone() } else { rem_nonneg(yi, di) })
            .collect()
    }

    /// Elements generating the nontrivial summands of [`normal_form`](Self::normal_form), in order.
    pub fn invariant_generators(&self) -> Vec<Vec<T>> {
        let l = &self.smith_data().l;
        let solver = Solver::new(l);
        self.padded_diag()
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .map(|(i, _)| {
                let mut e = vec![T::zero(); self.n];
                e[i] = T::one();
                solver.solve(&e).expect("L is unimodular")
            })
            .collect()
    }

    /// Least `k ≥ 1` with `k·x = 0`, or infinity.
    pub fn element_order(&self, x: &[T]) -> Order<T> {
        assert_eq!(x.len(), self.n, "element has the wrong length");
        let y = self.smith_data().l.mul_vec(x);
        let d = self.padded_diag();
        let mut ord = T::one();
        for (yi, di) in y.iter().zip(&d) {
            if di.is_zero() {
                if !yi.is_zero() {
                    return Order::Infinite;
                }
            } else {
                let g = di.gcd(yi);
                ord = ord.lcm(&(di.clone() / g));
            }
        }
        Order::Finite(ord)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.relations.direct_sum(&other.relations))
    }

    pub fn zero_element(&self) -> Vec<T> {
        vec![T::zero(); self.n]
    }

    pub fn generator(&self, i: usize) -> Vec<T> {
        let mut v = self.zero_element();
        v[i] = T::one();
        v
    }
}

/// A homomorphism given on ambient generators.
#[derive(Clone, Debug)]
pub struct AbHom<T: Scalar = Int> {
    source: FgAbGroup<T>,
    target: FgAbGroup<T>,
    matrix: Matrix<T>,
}

impl<T: Scalar> AbHom<T> {
    /// Checks that every source relation lands in the target relations.
    pub fn new(source: FgAbGroup<T>, target: FgAbGroup<T>, matrix: Matrix<T>) -> Result<Self> {
        if matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank() {
            return Err(Error::Dimension(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ambient_rank(),
                source.ambient_rank()
            )));
        }
        let rels = source.relations();
        for j in 0..rels.cols() {
            let img = matrix.mul_vec(&rels.column(j));
            if !target.is_zero_element(&img) {
                return Err(Error::IllDefinedHom { witness: j });
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    /// Skips the well-definedness check. For maps that are well defined by construction.
    pub fn new_unchecked(source: FgAbGroup<T>, target: FgAbGroup<T>, matrix: Matrix<T>) -> Self {
        debug_assert_eq!(matrix.rows(), target.ambient_rank());
        debug_assert_eq!(matrix.cols(), source.ambient_rank());
        AbHom { source, target, matrix }
    }

    pub fn zero(source: FgAbGroup<T>, target: FgAbGroup<T>) -> Self {
        let m = Matrix::zeros(target.ambient_rank(), source.ambient_rank());
        AbHom { source, target, matrix: m }
    }

    pub fn identity(g: FgAbGroup<T>) -> Self {
        let m = Matrix::identity(g.ambient_rank());
        AbHom { source: g.clone(), target: g, matrix: m }
    }

    pub fn source(&self) -> &FgAbGroup<T> {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup<T> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.matrix.mul_vec(x)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom<T>) -> AbHom<T> {
        assert_eq!(self.target.ambient_rank(), other.source.ambient_rank());
        AbHom {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        }
    }

    /// Equality as homomorphisms (values agree in the target group).
    pub fn equals(&self, other: &AbHom<T>) -> bool {
        let diff = self.matrix.sub(&other.matrix);
        (0..diff.cols()).all(|j| self.target.is_zero_element(&diff.column(j)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }

    /// `{x ∈ ℤⁿ : f(x) = 0}`, containing the source relations.
    pub fn kernel_lattice(&self) -> Lattice<T> {
        self.target.relation_lattice().preimage(&self.matrix)
    }

    /// Image of all ambient generators plus the target relations.
    pub fn image_lattice(&self) -> Lattice<T> {
        Lattice::from_columns(&self.matrix).sum(self.target.relation_lattice())
    }

    pub fn kernel_subquotient(&self) -> Subquotient<T> {
        Subquotient::new(
            self.source.clone(),
            self.kernel_lattice().basis_columns(),
            self.source.relation_lattice().clone(),
        )
    }

    pub fn image_subquotient(&self) -> Subquotient<T> {
        Subquotient::new(self.target.clone(), self.matrix.clone(), self.target.relation_lattice().clone())
    }

    pub fn kernel(&self) -> FgAbGroup<T> {
        self.kernel_subquotient().group().clone()
    }

    pub fn image(&self) -> FgAbGroup<T> {
        self.image_subquotient().group().clone()
    }

    pub fn cokernel(&self) -> FgAbGroup<T> {
        FgAbGroup::new(self.target.relations().hstack(&self.matrix))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_lattice() == *self.source.relation_lattice()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice() == Lattice::full(self.target.ambient_rank())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `(span(gens) + quot) / quot` inside an ambient group.
///
/// `quot` always contains the ambient relations. The presented group is
/// `ℤᵃ / {c : gens·c ∈ quot}` on the `a` generator columns.
#[derive(Clone, Debug)]
pub struct Subquotient<T: Scalar = Int> {
    ambient: FgAbGroup<T>,
    gens: Matrix<T>,
    quot: Lattice<T>,
    group: OnceLock<FgAbGroup<T>>,
    solver: OnceLock<Solver<T>>,
}

impl<T: Scalar> Subquotient<T> {
    /// `quot` is enlarged by the ambient relations.
    pub fn new(ambient: FgAbGroup<T>, gens: Matrix<T>, quot: Lattice<T>) -> Self {
        assert_eq!(gens.rows(), ambient.ambient_rank(), "generators live in the wrong ambient");
        assert_eq!(quot.dim(), ambient.ambient_rank(), "quotient lattice lives in the wrong ambient");
        let quot = quot.sum(ambient.relation_lattice());
        Subquotient { ambient, gens, quot, group: OnceLock::new(), solver: OnceLock::new() }
    }

    /// The whole ambient group on its own generators.
    pub fn whole(ambient: FgAbGroup<T>) -> Self {
        let n = ambient.ambient_rank();
        Self::new(ambient, Matrix::identity(n), Lattice::zero(n))
    }

    pub fn ambient(&self) -> &FgAbGroup<T> {
        &self.ambient
    }

    pub fn gens(&self) -> &Matrix<T> {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.cols()
    }

    pub fn quot(&self) -> &Lattice<T> {
        &self.quot
    }

    /// `span(gens) + quot`.
    pub fn numerator(&self) -> Lattice<T> {
        Lattice::from_columns(&self.gens).sum(&self.quot)
    }

    /// The presented group on the generator columns.
    pub fn group(&self) -> &FgAbGroup<T> {
        self.group.get_or_init(|| FgAbGroup::from_lattice(self.quot.preimage(&self.gens)))
    }

    fn solver(&self) -> &Solver<T> {
        self.solver.get_or_init(|| Solver::new(&self.gens.hstack(&self.quot.basis_columns())))
    }

    /// Coordinates `c` with `gens·c ≡ x` modulo `quot`, if `x` lies in the numerator.
    pub fn coords(&self, x: &[T]) -> Option<Vec<T>> {
        let a = self.num_gens();
        self.solver().solve(x).map(|mut z| {
            z.truncate(a);
            z
        })
    }

    /// Ambient representative of a coordinate vector.
    pub fn lift(&self, c: &[T]) -> Vec<T> {
        self.gens.mul_vec(c)
    }

    /// Matrix of the map sending each column of `vs` (ambient vectors) to its coordinates.
    pub fn coords_matrix(&self, vs: &Matrix<T>) -> Option<Matrix<T>> {
        let mut cols = Vec::with_capacity(vs.cols());
        for j in 0..vs.cols() {
            cols.push(self.coords(&vs.column(j))?);
        }
        Some(Matrix::from_columns(self.num_gens(), &cols))
    }

    pub fn invariants(&self) -> Invariants<T> {
        self.group().invariants()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type G = FgAbGroup<BigInt>;
    type M = Matrix<BigInt>;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn inv(torsion: &[i64], rank: usize) -> Invariants<BigInt> {
        Invariants { torsion: torsion.iter().map(|&d| int(d)).collect(), rank }
    }

    #[test]
    fn multiplication_by_six() {
        let f = AbHom::new(G::free(1), G::free(1), M::from_rows(&[[6]])).unwrap();
        assert!(f.kernel().is_trivial());
        assert_eq!(f.cokernel().invariants(), inv(&[6], 0));
    }

    #[test]
    fn projection() {
        let f = AbHom::new(G::free(2), G::free(1), M::from_rows(&[[1, 0]])).unwrap();
        assert_eq!(f.kernel().invariants(), inv(&[], 1));
        assert_eq!(f.image().invariants(), inv(&[], 1));
    }

    #[test]
    fn into_z4() {
        let f = AbHom::new(G::free(1), G::cyclic(int(4)), M::from_rows(&[[2]])).unwrap();
        assert_eq!(f.image().invariants(), inv(&[2], 0));
        assert_eq!(f.cokernel().invariants(), inv(&[2], 0));
        assert_eq!(f.kernel().invariants(), inv(&[], 1));
    }

    #[test]
    fn ill_defined_hom_has_witness() {
        let err = AbHom::new(G::from_factors(&[int(0), int(3)]), G::cyclic(int(2)), M::from_rows(&[[1, 1]]))
            .unwrap_err();
        assert_eq!(err, Error::IllDefinedHom { witness: 1 });
    }

    #[test]
    fn orders() {
        let z6 = G::cyclic(int(6));
        assert_eq!(z6.element_order(&[int(2)]), Order::Finite(int(3)));
        assert_eq!(z6.element_order(&[int(0)]), Order::Finite(int(1)));
        assert_eq!(G::free(1).element_order(&[int(1)]), Order::Infinite);
        assert_eq!(G::free(1).element_order(&[int(0)]), Order::Finite(int(1)));
    }

    #[test]
    fn normal_forms_identify_equal_elements() {
        let g = G::new(M::from_rows(&[[2, 0], [2, 4]]));
        assert_eq!(g.invariants(), inv(&[2, 4], 0));
        let a = [int(1), int(1)];
        let b = [int(3), int(5)];
        assert_eq!(g.elements_equal(&a, &b), g.normal_form(&a) == g.normal_form(&b));
    }

    #[test]
    fn subquotient_presentation() {
        // (2ℤ ⊕ ℤ) / (6ℤ ⊕ 0) inside ℤ² is ℤ/3 ⊕ ℤ
        let amb = G::free(2);
        let gens = M::from_rows(&[[2, 0], [0, 1]]);
        let quot = Lattice::from_columns(&M::from_rows(&[[6], [0]]));
        let sq = Subquotient::new(amb, gens, quot);
        assert_eq!(sq.invariants(), inv(&[3], 1));
        assert_eq!(sq.coords(&[int(8), int(1)]).map(|c| sq.group().normal_form(&c)),
            Some(sq.group().normal_form(&[int(1), int(1)])));
        assert_eq!(sq.coords(&[int(1), int(0)]), None);
    }
}

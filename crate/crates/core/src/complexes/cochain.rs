//! Bounded cochain complexes, chain maps and mapping cones.

use crate::error::{Error, Result};
use crate::linalg::{AbHom, FgAbGroup, Lattice, Matrix, Subquotient};
use crate::IntMatrix;

/// A cochain complex concentrated in degrees `[lo, hi]`.
///
/// Outside that range every level is the trivial group.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    lo: i64,
    levels: Vec<FgAbGroup>,
    /// `diffs[k]` is `d: C^{lo+k} → C^{lo+k+1}`.
    diffs: Vec<AbHom>,
}

impl CochainComplex {
    /// Builds a complex from its levels and differential matrices.
    ///
    /// `matrices[k]` maps level `k` to level `k+1`; each must respect the
    /// relations and consecutive composites must vanish.
    pub fn new(lo: i64, levels: Vec<FgAbGroup>, matrices: Vec<IntMatrix>) -> Result<Self> {
        if levels.is_empty() {
            if !matrices.is_empty() {
                return Err(Error::Dimension("differentials given for an empty complex".into()));
            }
            return Ok(CochainComplex { lo, levels, diffs: Vec::new() });
        }
        if matrices.len() + 1 != levels.len() {
            return Err(Error::Dimension(format!(
                "{} levels need {} differentials, got {}",
                levels.len(),
                levels.len() - 1,
                matrices.len()
            )));
        }
        let mut diffs = Vec::with_capacity(matrices.len());
        for (k, m) in matrices.into_iter().enumerate() {
            diffs.push(AbHom::new(levels[k].clone(), levels[k + 1].clone(), m)?);
        }
        let c = CochainComplex { lo, levels, diffs };
        c.check_squares()?;
        Ok(c)
    }

    /// For differentials known to be well defined and square to zero.
    pub(crate) fn new_unchecked(lo: i64, levels: Vec<FgAbGroup>, matrices: Vec<IntMatrix>) -> Self {
        let diffs = matrices
            .into_iter()
            .enumerate()
            .map(|(k, m)| AbHom::new_unchecked(levels[k].clone(), levels[k + 1].clone(), m))
            .collect();
        let c = CochainComplex { lo, levels, diffs };
        debug_assert!(c.check_squares().is_ok());
        c
    }

    pub fn zero() -> Self {
        CochainComplex { lo: 0, levels: Vec::new(), diffs: Vec::new() }
    }

    /// A single group placed in degree `n`.
    pub fn concentrated(n: i64, g: FgAbGroup) -> Self {
        CochainComplex { lo: n, levels: vec![g], diffs: Vec::new() }
    }

    fn check_squares(&self) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let dd = self.diffs[k].then(&self.diffs[k + 1]);
            if !dd.is_zero() {
                return Err(Error::NotAComplex { degree: self.lo + k as i64 });
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.levels.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    fn index(&self, n: i64) -> Option<usize> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some((n - self.lo) as usize)
        }
    }

    pub fn level(&self, n: i64) -> FgAbGroup {
        self.index(n).map_or_else(FgAbGroup::trivial, |k| self.levels[k].clone())
    }

    pub fn level_ref(&self, n: i64) -> Option<&FgAbGroup> {
        self.index(n).map(|k| &self.levels[k])
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.levels[k].ambient_rank())
    }

    /// `d: C^n → C^{n+1}` (zero outside the stored range).
    pub fn diff(&self, n: i64) -> AbHom {
        match self.index(n) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => AbHom::zero(self.level(n), self.level(n + 1)),
        }
    }

    pub fn diff_matrix(&self, n: i64) -> IntMatrix {
        match self.index(n) {
            Some(k) if k < self.diffs.len() => self.diffs[k].matrix().clone(),
            _ => Matrix::zeros(self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn relation_lattice(&self, n: i64) -> Lattice {
        self.index(n)
            .map_or_else(|| Lattice::zero(0), |k| self.levels[k].relation_lattice().clone())
    }

    /// Cocycles in the ambient lattice of `C^n` (containing the relations).
    pub fn cycles(&self, n: i64) -> Lattice {
        self.relation_lattice(n + 1).preimage(&self.diff_matrix(n))
    }

    /// Coboundaries plus relations in the ambient lattice of `C^n`.
    pub fn boundaries(&self, n: i64) -> Lattice {
        Lattice::from_columns(&self.diff_matrix(n - 1)).sum(&self.relation_lattice(n))
    }

    /// `Hⁿ` as a subquotient of `Cⁿ`, in any degree.
    pub fn cohomology_subquotient(&self, n: i64) -> Subquotient {
        let z = self.cycles(n);
        Subquotient::new(self.level(n), z.basis_columns(), self.boundaries(n))
    }

    /// `Hⁿ = ker dⁿ / im dⁿ⁻¹`.
    pub fn cohomology(&self, n: i64) -> Result<FgAbGroup> {
        if self.index(n).is_none() {
            return Err(Error::DegreeOutOfRange { degree: n, lo: self.lo, hi: self.hi() });
        }
        Ok(self.cohomology_subquotient(n).group().clone())
    }

    /// The same complex with degrees shifted: `C[k]^n = C^{n+k}`, differential signed by `(-1)^k`.
    pub fn shift(&self, k: i64) -> CochainComplex {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let sign = crate::Int::from(sign);
        let mats = self.diffs.iter().map(|d| d.matrix().scale(&sign)).collect();
        CochainComplex::new_unchecked(self.lo - k, self.levels.clone(), mats)
    }

    /// Restriction to degrees `[lo, hi]` (brutal truncation).
    pub fn restrict(&self, lo: i64, hi: i64) -> CochainComplex {
        if hi < lo {
            return CochainComplex::zero();
        }
        let levels: Vec<_> = (lo..=hi).map(|n| self.level(n)).collect();
        let mats = (lo..hi).map(|n| self.diff_matrix(n)).collect();
        CochainComplex::new_unchecked(lo, levels, mats)
    }
}

/// A degreewise map of cochain complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    lo: i64,
    maps: Vec<AbHom>,
}

impl ChainMap {
    /// `matrices[k]` acts in degree `lo + k`; degrees not covered map by zero.
    ///
    /// Checks well-definedness in every degree and `d∘f = f∘d`; the first
    /// failing degree is reported.
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        lo: i64,
        matrices: Vec<IntMatrix>,
    ) -> Result<Self> {
        let mut maps = Vec::with_capacity(matrices.len());
        for (k, m) in matrices.into_iter().enumerate() {
            let n = lo + k as i64;
            maps.push(AbHom::new(source.level(n), target.level(n), m)?);
        }
        let f = ChainMap { source, target, lo, maps };
        let dlo = f.source.lo().min(f.target.lo()).min(lo) - 1;
        let dhi = f.source.hi().max(f.target.hi()).max(lo + f.maps.len() as i64);
        for n in dlo..=dhi {
            let left = f.at(n).then(&f.target.diff(n));
            let right = f.source.diff(n).then(&f.at(n + 1));
            if !left.equals(&right) {
                return Err(Error::NotAChainMap { degree: n });
            }
        }
        Ok(f)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let mats = c.degrees().map(|n| Matrix::identity(c.dim(n))).collect();
        ChainMap::new(c.clone(), c.clone(), c.lo(), mats).expect("identity is a chain map")
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    /// The component in degree `n`.
    pub fn at(&self, n: i64) -> AbHom {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.maps.len() {
            self.maps[k as usize].clone()
        } else {
            AbHom::zero(self.source.level(n), self.target.level(n))
        }
    }

    pub fn matrix(&self, n: i64) -> IntMatrix {
        self.at(n).matrix().clone()
    }

    /// Induced map `Hⁿ(source) → Hⁿ(target)` on the presented cohomology groups.
    pub fn on_cohomology(&self, n: i64) -> AbHom {
        let hs = self.source.cohomology_subquotient(n);
        let ht = self.target.cohomology_subquotient(n);
        let images = self.matrix(n).mul(hs.gens());
        let m = ht.coords_matrix(&images).expect("chain maps send cycles to cycles");
        AbHom::new_unchecked(hs.group().clone(), ht.group().clone(), m)
    }
}

/// Mapping cone: `Cone^n = X^{n+1} ⊕ Y^n` with `d(x, y) = (-dx, f(x) + dy)`.
pub fn cone(f: &ChainMap) -> CochainComplex {
    let x = f.source();
    let y = f.target();
    if x.is_empty() && y.is_empty() {
        return CochainComplex::zero();
    }
    let lo = if x.is_empty() { y.lo() } else if y.is_empty() { x.lo() - 1 } else { (x.lo() - 1).min(y.lo()) };
    let hi = if x.is_empty() { y.hi() } else if y.is_empty() { x.hi() - 1 } else { (x.hi() - 1).max(y.hi()) };
    let levels: Vec<FgAbGroup> = (lo..=hi).map(|n| x.level(n + 1).direct_sum(&y.level(n))).collect();
    let mut mats = Vec::new();
    for n in lo..hi {
        let (a, b) = (x.dim(n + 1), y.dim(n));
        let (a1, b1) = (x.dim(n + 2), y.dim(n + 1));
        let mut m = Matrix::zeros(a1 + b1, a + b);
        m.set_block(0, 0, &x.diff_matrix(n + 1).neg());
        m.set_block(a1, 0, &f.matrix(n + 1));
        m.set_block(a1, a, &y.diff_matrix(n));
        mats.push(m);
    }
    CochainComplex::new_unchecked(lo, levels, mats)
}

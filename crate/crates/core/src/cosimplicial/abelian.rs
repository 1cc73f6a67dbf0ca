//! Truncated cosimplicial abelian groups.

use crate::complexes::{ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::{AbHom, FgAbGroup, Lattice, Matrix, Subquotient};
use crate::IntMatrix;

/// Levels `A⁰..A^N` with cofaces `∂ⁱ: A^{n-1} → Aⁿ` (`0 ≤ i ≤ n`) and
/// codegeneracies `sⁱ: A^{n+1} → Aⁿ` (`0 ≤ i ≤ n`).
#[derive(Clone, Debug)]
pub struct CosimplicialAbGroup {
    levels: Vec<FgAbGroup>,
    /// `cofaces[n][i]` for `1 ≤ n ≤ N`; `cofaces[0]` is empty.
    cofaces: Vec<Vec<AbHom>>,
    /// `codegeneracies[n][i]` for `0 ≤ n < N`.
    codegeneracies: Vec<Vec<AbHom>>,
}

impl CosimplicialAbGroup {
    /// `cofaces[n - 1][i]` is `∂ⁱ: A^{n-1} → Aⁿ`; `codegeneracies[n][i]` is `sⁱ: A^{n+1} → Aⁿ`.
    pub fn new(levels: Vec<FgAbGroup>, cofaces: Vec<Vec<IntMatrix>>, codegeneracies: Vec<Vec<IntMatrix>>) -> Result<Self> {
        let top = levels.len().checked_sub(1).ok_or_else(|| Error::Dimension("no levels".into()))?;
        if cofaces.len() != top || codegeneracies.len() != top {
            return Err(Error::Dimension(format!("truncation {top} needs {top} coface and codegeneracy families")));
        }
        let mut cf = vec![Vec::new()];
        for (k, fam) in cofaces.into_iter().enumerate() {
            let n = k + 1;
            if fam.len() != n + 1 {
                return Err(Error::Dimension(format!("level {n} needs {} cofaces", n + 1)));
            }
            let homs = fam
                .into_iter()
                .map(|m| AbHom::new(levels[n - 1].clone(), levels[n].clone(), m))
                .collect::<Result<Vec<_>>>()?;
            cf.push(homs);
        }
        let mut cd = Vec::new();
        for (n, fam) in codegeneracies.into_iter().enumerate() {
            if fam.len() != n + 1 {
                return Err(Error::Dimension(format!("level {n} needs {} codegeneracies", n + 1)));
            }
            let homs = fam
                .into_iter()
                .map(|m| AbHom::new(levels[n + 1].clone(), levels[n].clone(), m))
                .collect::<Result<Vec<_>>>()?;
            cd.push(homs);
        }
        let a = CosimplicialAbGroup { levels, cofaces: cf, codegeneracies: cd };
        a.check_identities()?;
        Ok(a)
    }

    /// Every structure map is the identity.
    pub fn constant(g: FgAbGroup, n: usize) -> Self {
        let id = AbHom::identity(g.clone());
        CosimplicialAbGroup {
            levels: vec![g; n + 1],
            cofaces: (0..=n).map(|k| if k == 0 { Vec::new() } else { vec![id.clone(); k + 1] }).collect(),
            codegeneracies: (0..n).map(|k| vec![id.clone(); k + 1]).collect(),
        }
    }

    /// Levels `0..=n` with their structure maps.
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.truncation(), "truncation {n} exceeds {}", self.truncation());
        CosimplicialAbGroup {
            levels: self.levels[..=n].to_vec(),
            cofaces: self.cofaces[..=n].to_vec(),
            codegeneracies: self.codegeneracies[..n].to_vec(),
        }
    }

    /// Levelwise direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let sum = |a: &AbHom, b: &AbHom| {
            AbHom::new_unchecked(
                a.source().direct_sum(b.source()),
                a.target().direct_sum(b.target()),
                a.matrix().direct_sum(b.matrix()),
            )
        };
        CosimplicialAbGroup {
            levels: (0..=n).map(|k| self.levels[k].direct_sum(&other.levels[k])).collect(),
            cofaces: (0..=n)
                .map(|k| (0..self.cofaces[k].len()).map(|i| sum(&self.cofaces[k][i], &other.cofaces[k][i])).collect())
                .collect(),
            codegeneracies: (0..n)
                .map(|k| {
                    (0..=k).map(|i| sum(&self.codegeneracies[k][i], &other.codegeneracies[k][i])).collect()
                })
                .collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(levels: Vec<FgAbGroup>, cofaces: Vec<Vec<AbHom>>, codegeneracies: Vec<Vec<AbHom>>) -> Self {
        CosimplicialAbGroup { levels, cofaces, codegeneracies }
    }

    /// `N`.
    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FgAbGroup {
        &self.levels[n]
    }

    /// `∂ⁱ: A^{n-1} → Aⁿ`.
    pub fn coface(&self, n: usize, i: usize) -> &AbHom {
        &self.cofaces[n][i]
    }

    /// `sⁱ: A^{n+1} → Aⁿ`.
    pub fn codegeneracy(&self, n: usize, i: usize) -> &AbHom {
        &self.codegeneracies[n][i]
    }

    /// Checks every cosimplicial identity in the stored range.
    pub fn check_identities(&self) -> Result<()> {
        let top = self.truncation();
        let fail = |identity: String, level: usize| Err(Error::CosimplicialIdentity { identity, level });
        // ∂ʲ∂ⁱ = ∂ⁱ∂ʲ⁻¹ for i < j, A^{n-1} → A^{n+1}
        for n in 1..top {
            for j in 0..=n + 1 {
                for i in 0..j {
                    let lhs = self.coface(n, i).then(self.coface(n + 1, j));
                    let rhs = self.coface(n, j - 1).then(self.coface(n + 1, i));
                    if !lhs.equals(&rhs) {
                        return fail(format!("d^{j} d^{i} = d^{i} d^{}", j - 1), n + 1);
                    }
                }
            }
        }
        // sʲsⁱ = sⁱsʲ⁺¹ for i ≤ j, A^{n+2} → Aⁿ
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.codegeneracy(n + 1, i).then(self.codegeneracy(n, j));
                    let rhs = self.codegeneracy(n + 1, j + 1).then(self.codegeneracy(n, i));
                    if !lhs.equals(&rhs) {
                        return fail(format!("s^{j} s^{i} = s^{i} s^{}", j + 1), n);
                    }
                }
            }
        }
        // sʲ∂ⁱ: Aⁿ → Aⁿ⁺¹ → Aⁿ
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.coface(n + 1, i).then(self.codegeneracy(n, j));
                    let (rhs, name) = if i < j {
                        (self.codegeneracy(n - 1, j - 1).then(self.coface(n, i)), format!("s^{j} d^{i} = d^{i} s^{}", j - 1))
                    } else if i == j || i == j + 1 {
                        (AbHom::identity(self.levels[n].clone()), format!("s^{j} d^{i} = id"))
                    } else {
                        (self.codegeneracy(n - 1, j).then(self.coface(n, i - 1)), format!("s^{j} d^{i} = d^{} s^{j}", i - 1))
                    };
                    if !lhs.equals(&rhs) {
                        return fail(name, n);
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ (-1)ⁱ ∂ⁱ: Aⁿ → Aⁿ⁺¹`.
    pub fn differential(&self, n: usize) -> IntMatrix {
        let fam = &self.cofaces[n + 1];
        let mut d = Matrix::zeros(self.levels[n + 1].ambient_rank(), self.levels[n].ambient_rank());
        for (i, h) in fam.iter().enumerate() {
            d = if i % 2 == 0 { d.add(h.matrix()) } else { d.sub(h.matrix()) };
        }
        d
    }

    /// The unnormalized cochain complex `C*A` in degrees `0..=N`.
    pub fn unnormalized_complex(&self) -> CochainComplex {
        let mats = (0..self.truncation()).map(|n| self.differential(n)).collect();
        CochainComplex::new_unchecked(0, self.levels.clone(), mats)
    }

    /// `Nˢ = ker s⁰ ∩ ⋯ ∩ ker s^{s-1}` as a subquotient of `Aˢ`.
    pub fn normalized_level(&self, s: usize) -> Subquotient {
        let g = &self.levels[s];
        let mut l = Lattice::full(g.ambient_rank());
        if s > 0 {
            for h in &self.codegeneracies[s - 1] {
                l = l.intersection(&h.kernel_lattice());
            }
        }
        Subquotient::new(g.clone(), l.basis_columns(), g.relation_lattice().clone())
    }

    /// The normalized complex `N*A` and its inclusion into `C*A`.
    pub fn normalized_complex(&self) -> (CochainComplex, ChainMap) {
        let subs: Vec<Subquotient> = (0..=self.truncation()).map(|s| self.normalized_level(s)).collect();
        let mats = (0..self.truncation())
            .map(|n| {
                let img = self.differential(n).mul(subs[n].gens());
                subs[n + 1].coords_matrix(&img).expect("the differential preserves normalized cochains")
            })
            .collect();
        let nc = CochainComplex::new_unchecked(0, subs.iter().map(|s| s.group().clone()).collect(), mats);
        let inc = ChainMap::new(nc.clone(), self.unnormalized_complex(), 0, subs.iter().map(|s| s.gens().clone()).collect())
            .expect("inclusion of normalized cochains is a chain map");
        (nc, inc)
    }

    /// `πˢA = Hˢ(C*A)` for `s ≤ N - 1`.
    pub fn cohomotopy(&self, s: usize) -> Result<FgAbGroup> {
        let n = self.truncation();
        if s + 1 > n {
            return Err(Error::WindowViolation { requested: s as i64, needed: format!("truncation N >= {} (have {n})", s + 1) });
        }
        self.unnormalized_complex().restrict(0, s as i64 + 1).cohomology(s as i64)
    }
}

/// A levelwise map of cosimplicial abelian groups.
#[derive(Clone, Debug)]
pub struct CosimplicialMap {
    pub source: CosimplicialAbGroup,
    pub target: CosimplicialAbGroup,
    /// `maps[n]: Aⁿ → Bⁿ` for `n ≤ min(N_A, N_B)`.
    pub maps: Vec<AbHom>,
}

impl CosimplicialMap {
    /// Checks commutation with every coface and codegeneracy in range.
    pub fn check(&self) -> Result<()> {
        let top = self.maps.len() - 1;
        for n in 1..=top {
            for i in 0..=n {
                let a = self.source.coface(n, i).then(&self.maps[n]);
                let b = self.maps[n - 1].then(self.target.coface(n, i));
                if !a.equals(&b) {
                    return Err(Error::CosimplicialIdentity { identity: format!("f d^{i} = d^{i} f"), level: n });
                }
            }
        }
        for n in 0..top {
            for i in 0..=n {
                let a = self.source.codegeneracy(n, i).then(&self.maps[n]);
                let b = self.maps[n + 1].then(self.target.codegeneracy(n, i));
                if !a.equals(&b) {
                    return Err(Error::CosimplicialIdentity { identity: format!("f s^{i} = s^{i} f"), level: n });
                }
            }
        }
        Ok(())
    }

    /// The induced map `C*A → C*B` in degrees `0..=top`.
    pub fn on_complexes(&self, top: usize) -> ChainMap {
        let a = self.source.unnormalized_complex().restrict(0, top as i64);
        let b = self.target.unnormalized_complex().restrict(0, top as i64);
        ChainMap::new(a, b, 0, self.maps[..=top].iter().map(|h| h.matrix().clone()).collect())
            .expect("cosimplicial maps induce chain maps")
    }
}

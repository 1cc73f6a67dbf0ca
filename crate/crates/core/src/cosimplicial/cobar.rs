//! Bar-construction cochains of a finite group with coefficients in a module.

use crate::cosimplicial::abelian::CosimplicialAbGroup;
use crate::cosimplicial::fingroup::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::{AbHom, FgAbGroup, Matrix};
use crate::IntMatrix;

/// A finitely generated abelian group with a `Γ`-action; `action[γ]` acts on ambient coordinates.
#[derive(Clone, Debug)]
pub struct GroupModule {
    pub group: FiniteGroup,
    pub module: FgAbGroup,
    pub action: Vec<IntMatrix>,
}

impl GroupModule {
    pub fn new(group: FiniteGroup, module: FgAbGroup, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction(format!("{} matrices for a group of order {}", action.len(), group.order())));
        }
        let homs = action
            .iter()
            .enumerate()
            .map(|(g, m)| {
                AbHom::new(module.clone(), module.clone(), m.clone())
                    .map_err(|_| Error::InvalidAction(format!("element {g} does not act by an endomorphism")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !homs[group.identity()].equals(&AbHom::identity(module.clone())) {
            return Err(Error::InvalidAction("identity acts nontrivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if !homs[b].then(&homs[a]).equals(&homs[group.mul(a, b)]) {
                    return Err(Error::InvalidAction(format!("action of {a}*{b} is not the composite")));
                }
            }
        }
        Ok(GroupModule { group, module, action })
    }

    /// `module` with every element acting as the identity.
    pub fn trivial(group: FiniteGroup, module: FgAbGroup) -> Self {
        let id = Matrix::identity(module.ambient_rank());
        let action = vec![id; group.order()];
        GroupModule { group, module, action }
    }

    /// `self ⊕ other` with the blockwise action.
    pub fn direct_sum(&self, other: &GroupModule) -> GroupModule {
        assert_eq!(self.group.table(), other.group.table(), "modules over different groups");
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        GroupModule { group: self.group.clone(), module: self.module.direct_sum(&other.module), action }
    }

    pub fn rank(&self) -> usize {
        self.module.ambient_rank()
    }
}

fn tuple(idx: usize, q: usize, m: usize) -> Vec<usize> {
    let mut t = vec![0; m];
    let mut x = idx;
    for i in (0..m).rev() {
        t[i] = x % q;
        x /= q;
    }
    t
}

fn untuple(t: &[usize], q: usize) -> usize {
    t.iter().fold(0, |acc, &v| acc * q + v)
}

/// Inhomogeneous cochains `Cⁿ = Map(Γⁿ, M)` up to level `n`, so that `πˢ ≅ Hˢ(Γ; M)`.
///
/// `(∂⁰f)(g₁…gₙ) = g₁·f(g₂…gₙ)`, `(∂ⁱf) = f(…, gᵢgᵢ₊₁, …)`, `(∂ⁿf) = f(g₁…gₙ₋₁)`,
/// `(sⁱf)(g₁…gₙ) = f(g₁…gᵢ, 1, gᵢ₊₁…gₙ)`.
pub fn cobar(gm: &GroupModule, n: usize) -> Result<CosimplicialAbGroup> {
    let q = gm.group.order();
    let d = gm.module.ambient_rank();
    let level = |m: usize| {
        let mut g = FgAbGroup::trivial();
        for _ in 0..q.pow(m as u32) {
            g = g.direct_sum(&gm.module);
        }
        g
    };
    let levels: Vec<FgAbGroup> = (0..=n).map(level).collect();
    let id = Matrix::identity(d);
    let coface = |m: usize, i: usize| -> IntMatrix {
        let (src, tgt) = (q.pow(m as u32 - 1), q.pow(m as u32));
        let mut mat = Matrix::zeros(tgt * d, src * d);
        for ti in 0..tgt {
            let g = tuple(ti, q, m);
            let (col, block) = if i == 0 {
                (untuple(&g[1..], q), &gm.action[g[0]])
            } else if i == m {
                (untuple(&g[..m - 1], q), &id)
            } else {
                let mut h = g[..i - 1].to_vec();
                h.push(gm.group.mul(g[i - 1], g[i]));
                h.extend_from_slice(&g[i + 1..]);
                (untuple(&h, q), &id)
            };
            mat.set_block(ti * d, col * d, block);
        }
        mat
    };
    let codeg = |m: usize, i: usize| -> IntMatrix {
        let (src, tgt) = (q.pow(m as u32 + 1), q.pow(m as u32));
        let mut mat = Matrix::zeros(tgt * d, src * d);
        for ti in 0..tgt {
            let mut g = tuple(ti, q, m);
            g.insert(i, gm.group.identity());
            mat.set_block(ti * d, untuple(&g, q) * d, &id);
        }
        mat
    };
    let cofaces = (1..=n).map(|m| (0..=m).map(|i| coface(m, i)).collect()).collect();
    let codegs = (0..n).map(|m| (0..=m).map(|i| codeg(m, i)).collect()).collect();
    CosimplicialAbGroup::new(levels, cofaces, codegs)
}

/// Cochains `Map(S¹ₙ, M)` on the simplicial circle `Δ[1]/∂Δ[1]`, up to level `n`.
///
/// `S¹ₘ` has `m + 1` simplices: index 0 is the basepoint and index `k ≥ 1` is the
/// sequence of `k` zeros followed by `m + 1 - k` ones.
pub fn circle_cochains(module: &FgAbGroup, n: usize) -> Result<CosimplicialAbGroup> {
    let d = module.ambient_rank();
    let levels = (0..=n)
        .map(|m| (0..=m).fold(FgAbGroup::trivial(), |g, _| g.direct_sum(module)))
        .collect();
    let reduce = |k: usize, m: usize| if k == m + 1 { 0 } else { k };
    let face = |k: usize, i: usize, m: usize| if k == 0 { 0 } else { reduce(if i < k { k - 1 } else { k }, m - 1) };
    let degen = |k: usize, i: usize| if k == 0 { 0 } else if i < k { k + 1 } else { k };
    let id = Matrix::identity(d);
    let coface = |m: usize, i: usize| {
        let mut mat = Matrix::zeros((m + 1) * d, m * d);
        for k in 0..=m {
            mat.set_block(k * d, face(k, i, m) * d, &id);
        }
        mat
    };
    let codeg = |m: usize, i: usize| {
        let mut mat = Matrix::zeros((m + 1) * d, (m + 2) * d);
        for k in 0..=m {
            mat.set_block(k * d, degen(k, i) * d, &id);
        }
        mat
    };
    let cofaces = (1..=n).map(|m| (0..=m).map(|i| coface(m, i)).collect()).collect();
    let codegs = (0..n).map(|m| (0..=m).map(|i| codeg(m, i)).collect()).collect();
    CosimplicialAbGroup::new(levels, cofaces, codegs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Invariants;
    use crate::Int;

    fn inv(t: &[i64], r: usize) -> Invariants {
        Invariants { torsion: t.iter().map(|&x| Int::from(x)).collect(), rank: r }
    }

    #[test]
    fn cyclic_group_cohomology_with_trivial_integers() {
        let gm = GroupModule::trivial(FiniteGroup::cyclic(2), FgAbGroup::free(1));
        let a = cobar(&gm, 3).unwrap();
        assert_eq!(a.cohomotopy(0).unwrap().invariants(), inv(&[], 1));
        assert!(a.cohomotopy(1).unwrap().is_trivial());
        assert_eq!(a.cohomotopy(2).unwrap().invariants(), inv(&[2], 0));
    }

    #[test]
    fn sign_action() {
        let g = FiniteGroup::cyclic(2);
        let gm = GroupModule::new(g, FgAbGroup::free(1), vec![Matrix::from_rows(&[[1]]), Matrix::from_rows(&[[-1]])]).unwrap();
        let a = cobar(&gm, 2).unwrap();
        assert!(a.cohomotopy(0).unwrap().is_trivial());
        assert_eq!(a.cohomotopy(1).unwrap().invariants(), inv(&[2], 0));
    }

    #[test]
    fn trivial_group_is_constant() {
        let gm = GroupModule::trivial(FiniteGroup::trivial(), FgAbGroup::cyclic(Int::from(5)));
        let a = cobar(&gm, 3).unwrap();
        assert_eq!(a.cohomotopy(0).unwrap().invariants(), inv(&[5], 0));
        assert!(a.cohomotopy(1).unwrap().is_trivial());
        assert!(a.cohomotopy(2).unwrap().is_trivial());
    }

    #[test]
    fn normalized_agrees() {
        let gm = GroupModule::trivial(FiniteGroup::cyclic(3), FgAbGroup::free(1));
        let a = cobar(&gm, 3).unwrap();
        let (nc, inc) = a.normalized_complex();
        for s in 0..3 {
            assert_eq!(nc.cohomology(s).unwrap().invariants(), a.cohomotopy(s as usize).unwrap().invariants());
            assert!(inc.on_cohomology(s).is_isomorphism());
        }
    }

    #[test]
    fn circle_cohomology() {
        let a = circle_cochains(&FgAbGroup::cyclic(Int::from(4)), 4).unwrap();
        assert_eq!(a.cohomotopy(0).unwrap().invariants(), inv(&[4], 0));
        assert_eq!(a.cohomotopy(1).unwrap().invariants(), inv(&[4], 0));
        assert!(a.cohomotopy(2).unwrap().is_trivial());
        assert!(a.cohomotopy(3).unwrap().is_trivial());
    }

    #[test]
    fn non_action_rejected() {
        let g = FiniteGroup::cyclic(2);
        let err = GroupModule::new(g, FgAbGroup::free(1), vec![Matrix::from_rows(&[[1]]), Matrix::from_rows(&[[2]])]).unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
    }
}

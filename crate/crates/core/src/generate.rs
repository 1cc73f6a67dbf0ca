//! Seeded generators for cosimplicial chain complexes.

use rand::Rng;

use crate::cosimplicial::{circle_cochains, cobar, FiniteGroup, GroupModule};
use crate::linalg::{AbHom, FgAbGroup, Matrix};
use crate::ss_compare::CosimplicialChainComplex;
use crate::{Int, IntMatrix};

/// `ℤ[ℤ/k]` with the generator acting by the cyclic shift.
pub fn regular_module(k: usize) -> GroupModule {
    let group = FiniteGroup::cyclic(k);
    let action = (0..k)
        .map(|g| {
            let mut m = Matrix::zeros(k, k);
            for x in 0..k {
                m[((x + g) % k, x)] = Int::from(1);
            }
            m
        })
        .collect();
    GroupModule::new(group, FgAbGroup::free(k), action).expect("regular representation")
}

/// `ℤ` with `ℤ/2` acting by `-1`.
pub fn sign_module() -> GroupModule {
    let action = vec![Matrix::from_rows(&[[1]]), Matrix::from_rows(&[[-1]])];
    GroupModule::new(FiniteGroup::cyclic(2), FgAbGroup::free(1), action).expect("sign action")
}

fn zero_module(group: &FiniteGroup) -> GroupModule {
    GroupModule::trivial(group.clone(), FgAbGroup::trivial())
}

/// `g - 1` and the norm on `ℤ[ℤ/k]`.
pub fn augmentation_maps(k: usize) -> (IntMatrix, IntMatrix) {
    let reg = regular_module(k);
    let g_minus_1 = reg.action[1 % k].sub(&Matrix::identity(k));
    let norm = reg.action.iter().fold(Matrix::zeros(k, k), |acc, a| acc.add(a));
    (g_minus_1, norm)
}

/// Two rows `ℤ[ℤ/m] --(g-1)--> ℤ[ℤ/m]` under the cobar construction.
///
/// Vertical homology is `ℤ` in both rows (trivial action), and the
/// extension class gives a nonzero `d₂` out of `E₂^{0,0}`.
pub fn designed_d2(m: usize, s_max: usize) -> CosimplicialChainComplex {
    let reg = regular_module(m);
    let (g_minus_1, _) = augmentation_maps(m);
    CosimplicialChainComplex::from_modules(&[reg.clone(), reg], &[g_minus_1], s_max).expect("designed fixture")
}

/// Three rows `ℤ[ℤ/2] --(g-1)--> ℤ[ℤ/2] --N--> ℤ[ℤ/2]`.
///
/// Vertical homology is `ℤ` at `t = 2`, zero at `t = 1` and the sign module at
/// `t = 0`, so the first possible differential is `d₃: E^{1,0} → E^{4,2}`.
pub fn designed_d3(s_max: usize) -> CosimplicialChainComplex {
    let reg = regular_module(2);
    let (g_minus_1, norm) = augmentation_maps(2);
    CosimplicialChainComplex::from_modules(&[reg.clone(), reg.clone(), reg], &[norm, g_minus_1], s_max).expect("designed fixture")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Base {
    Cobar(usize),
    Circle,
}

/// How each row's cosimplicial abelian group is built from its module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// [`cobar`] of the module.
    Cobar,
    /// [`circle_cochains`] of the underlying group; the acting group is trivial.
    Circle,
}

/// Rows `t = 0..=T` built from modules, with vertical maps `maps[t - 1]: modules[t] → modules[t - 1]`
/// applied blockwise.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub kind: RowKind,
    pub s_max: usize,
    pub modules: Vec<GroupModule>,
    pub maps: Vec<IntMatrix>,
}

impl ChainSpec {
    pub fn build(&self) -> crate::Result<CosimplicialChainComplex> {
        let rows = self
            .modules
            .iter()
            .map(|m| match self.kind {
                RowKind::Cobar => cobar(m, self.s_max),
                RowKind::Circle => circle_cochains(&m.module, self.s_max),
            })
            .collect::<crate::Result<Vec<_>>>()?;
        let ranks: Vec<usize> = self.modules.iter().map(GroupModule::rank).collect();
        CosimplicialChainComplex::from_rows_and_module_maps(rows, ranks, &self.maps)
    }
}

fn random_module<R: Rng>(rng: &mut R, base: Base) -> GroupModule {
    match base {
        Base::Circle => {
            let g = FiniteGroup::trivial();
            match rng.gen_range(0..3) {
                0 | 1 => GroupModule::trivial(g, FgAbGroup::free(1)),
                _ => GroupModule::trivial(g, FgAbGroup::cyclic(Int::from(rng.gen_range(2..=6)))),
            }
        }
        Base::Cobar(k) => {
            let g = FiniteGroup::cyclic(k);
            match rng.gen_range(0..5) {
                0 | 1 => regular_module(k),
                2 => GroupModule::trivial(g, FgAbGroup::free(1)),
                3 if k == 2 => sign_module(),
                _ => GroupModule::trivial(g, FgAbGroup::cyclic(Int::from(rng.gen_range(2..=4)))),
            }
        }
    }
}

fn is_equivariant(a: &GroupModule, b: &GroupModule, f: &AbHom) -> bool {
    (0..a.group.order()).all(|g| {
        let left = AbHom::new_unchecked(a.module.clone(), a.module.clone(), a.action[g].clone()).then(f);
        let right = f.then(&AbHom::new_unchecked(b.module.clone(), b.module.clone(), b.action[g].clone()));
        left.equals(&right)
    })
}

/// A random `G`-map `a → b`, or zero when the draw does not descend to the presentations.
fn random_equivariant<R: Rng>(rng: &mut R, a: &GroupModule, b: &GroupModule) -> IntMatrix {
    let raw = Matrix::from_vec(b.rank(), a.rank(), (0..a.rank() * b.rank()).map(|_| Int::from(rng.gen_range(-2..=2))).collect());
    let ginv = |g: usize| a.group.inv(g);
    let averaged = (0..a.group.order()).fold(Matrix::zeros(b.rank(), a.rank()), |acc, g| {
        acc.add(&b.action[g].mul(&raw).mul(&a.action[ginv(g)]))
    });
    for candidate in [raw, averaged] {
        for scale in [1, 2, 3, 4, 6, 12] {
            let m = candidate.scale(&Int::from(scale));
            if let Ok(f) = AbHom::new(a.module.clone(), b.module.clone(), m.clone()) {
                if is_equivariant(a, b, &f) {
                    return m;
                }
            }
        }
    }
    Matrix::zeros(b.rank(), a.rank())
}

struct RowModules {
    summands: Vec<Vec<GroupModule>>,
}

impl RowModules {
    fn offsets(&self, t: usize) -> Vec<usize> {
        let mut o = vec![0];
        for m in &self.summands[t] {
            o.push(o.last().unwrap() + m.rank());
        }
        o
    }

    fn rank(&self, t: usize) -> usize {
        self.summands[t].iter().map(GroupModule::rank).sum()
    }

    fn module(&self, t: usize, group: &FiniteGroup) -> GroupModule {
        self.summands[t].iter().fold(zero_module(group), |acc, m| acc.direct_sum(m))
    }
}

/// A random cosimplicial chain complex with `S, T ≤ 4`, seeded by the caller's RNG.
///
/// Rows are cobar constructions over `ℤ/2` or `ℤ/3`, or cochains on the simplicial
/// circle; the vertical complex is a sum of short pieces conjugated by random
/// equivariant elementary automorphisms.
pub fn random_cosimplicial_chain_complex<R: Rng>(rng: &mut R) -> CosimplicialChainComplex {
    random_chain_spec(rng).build().expect("generated complex is valid")
}

/// The data behind [`random_cosimplicial_chain_complex`], drawing the same values from `rng`.
pub fn random_chain_spec<R: Rng>(rng: &mut R) -> ChainSpec {
    let base = match rng.gen_range(0..3) {
        0 => Base::Cobar(2),
        1 => Base::Cobar(3),
        _ => Base::Circle,
    };
    let (s_max, t_max) = match base {
        Base::Cobar(2) => (rng.gen_range(2..=3), rng.gen_range(1..=3)),
        Base::Cobar(_) => (2, rng.gen_range(1..=2)),
        Base::Circle => (rng.gen_range(2..=4), rng.gen_range(1..=4)),
    };
    let group = match base {
        Base::Cobar(k) => FiniteGroup::cyclic(k),
        Base::Circle => FiniteGroup::trivial(),
    };
    let mut rows = RowModules { summands: vec![Vec::new(); t_max + 1] };
    // (row, source index, target index, map) for two-term pieces
    let mut links: Vec<(usize, usize, usize, IntMatrix)> = Vec::new();
    let pieces = rng.gen_range(1..=3);
    for _ in 0..pieces {
        let kind = rng.gen_range(0..5);
        if kind == 4 {
            if let Base::Cobar(k) = base {
                let t = rng.gen_range(1..=t_max);
                let (g_minus_1, _) = augmentation_maps(k);
                let (ip, iq) = (rows.summands[t].len(), rows.summands[t - 1].len());
                rows.summands[t].push(regular_module(k));
                rows.summands[t - 1].push(regular_module(k));
                links.push((t, ip, iq, g_minus_1.scale(&Int::from(rng.gen_range(1..=2)))));
                continue;
            }
        }
        if kind == 3 && t_max >= 2 {
            if let Base::Cobar(k) = base {
                let t = rng.gen_range(2..=t_max);
                let (g_minus_1, norm) = augmentation_maps(k);
                let idx: Vec<usize> = (0..3).map(|d| rows.summands[t - d].len()).collect();
                for d in 0..3 {
                    rows.summands[t - d].push(regular_module(k));
                }
                links.push((t, idx[0], idx[1], g_minus_1));
                links.push((t - 1, idx[1], idx[2], norm));
                continue;
            }
        }
        if kind >= 1 {
            let t = rng.gen_range(1..=t_max);
            let (p, q) = (random_module(rng, base), random_module(rng, base));
            let phi = random_equivariant(rng, &p, &q);
            let (ip, iq) = (rows.summands[t].len(), rows.summands[t - 1].len());
            rows.summands[t].push(p);
            rows.summands[t - 1].push(q);
            links.push((t, ip, iq, phi));
        } else {
            let t = rng.gen_range(0..=t_max);
            let m = random_module(rng, base);
            rows.summands[t].push(m);
        }
    }
    // d[t - 1]: row t → row t - 1
    let mut d: Vec<IntMatrix> = (1..=t_max).map(|t| Matrix::zeros(rows.rank(t - 1), rows.rank(t))).collect();
    for (t, ip, iq, phi) in links {
        let (op, oq) = (rows.offsets(t), rows.offsets(t - 1));
        d[t - 1].set_block(oq[iq], op[ip], &phi);
    }
    for t in 0..=t_max {
        let n = rows.summands[t].len();
        if n < 2 {
            continue;
        }
        for _ in 0..rng.gen_range(0..=2) {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            let psi = random_equivariant(rng, &rows.summands[t][a], &rows.summands[t][b]);
            let o = rows.offsets(t);
            let mut e = Matrix::identity(rows.rank(t));
            e.set_block(o[b], o[a], &psi);
            let mut e_inv = Matrix::identity(rows.rank(t));
            e_inv.set_block(o[b], o[a], &psi.neg());
            if t >= 1 {
                d[t - 1] = d[t - 1].mul(&e_inv);
            }
            if t < t_max {
                d[t] = e.mul(&d[t]);
            }
        }
    }
    let modules: Vec<GroupModule> = (0..=t_max).map(|t| rows.module(t, &group)).collect();
    let kind = if base == Base::Circle { RowKind::Circle } else { RowKind::Cobar };
    ChainSpec { kind, s_max, modules, maps: d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generation_is_seeded() {
        let a = random_cosimplicial_chain_complex(&mut ChaCha8Rng::seed_from_u64(7)).double_complex();
        let b = random_cosimplicial_chain_complex(&mut ChaCha8Rng::seed_from_u64(7)).double_complex();
        assert_eq!(a.s_max(), b.s_max());
        assert_eq!(a.t_max(), b.t_max());
        for s in 0..=a.s_max() {
            for t in 0..=a.t_max() {
                assert_eq!(a.group(s, t).relations(), b.group(s, t).relations());
            }
        }
    }

    #[test]
    fn norm_kills_augmentation() {
        for k in 1..=4 {
            let (g1, n) = augmentation_maps(k);
            assert!(n.mul(&g1).is_zero());
        }
    }
}

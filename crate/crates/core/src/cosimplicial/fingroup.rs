//! Finite groups by multiplication table and truncated cosimplicial finite groups.

use std::collections::{BTreeMap, VecDeque};

use crate::cosimplicial::abelian::CosimplicialAbGroup;
use crate::error::{Error, Result};
use crate::linalg::FgAbGroup;
use crate::Int;

/// A finite group on `{0, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    e: usize,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range in row {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        Self::finish(table, e)
    }

    fn finish(table: Vec<Vec<usize>>, e: usize) -> Result<Self> {
        let n = table.len();
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == e && table[b][a] == e) {
                Some(b) => inv.push(b),
                None => return Err(Error::InvalidGroup(format!("{a} has no inverse"))),
            }
        }
        Ok(FiniteGroup { table, inv, e })
    }

    fn from_op(n: usize, e: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Self::finish(table, e).expect("constructed groups have inverses")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` with `0` as identity.
    pub fn cyclic(n: usize) -> Self {
        Self::from_op(n, 0, |a, b| (a + b) % n)
    }

    /// Permutations of `{0..k-1}` in lexicographic order, `(pq)(x) = p(q(x))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self::from_op(perms.len(), 0, |a, b| {
            let c: Vec<usize> = (0..k).map(|x| perms[a][perms[b][x]]).collect();
            index[&c]
        })
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // element = sign * unit, encoded as 4 * sign_bit + unit with unit in 1, i, j, k
        let mul_unit = |a: usize, b: usize| -> (bool, usize) {
            const T: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            T[a][b]
        };
        Self::from_op(8, 0, |a, b| {
            let (neg, u) = mul_unit(a % 4, b % 4);
            let sign = (a / 4 + b / 4 + neg as usize) % 2;
            4 * sign + u
        })
    }

    /// `G × H` with `(g, h) ↦ g · |H| + h`.
    pub fn product(&self, other: &Self) -> Self {
        let m = other.order();
        Self::from_op(self.order() * m, self.e * m + other.e, |a, b| {
            self.mul(a / m, b / m) * m + other.mul(a % m, b % m)
        })
    }

    /// `Gᵏ` with tuples encoded in base `|G|`, first coordinate most significant.
    pub fn power(&self, k: usize) -> Self {
        let mut g = FiniteGroup::trivial();
        for _ in 0..k {
            g = g.product(self);
        }
        g
    }

    /// The finite abelian group `g` and ambient representatives of its elements.
    pub fn from_abelian(g: &FgAbGroup) -> Result<(Self, Vec<Vec<Int>>)> {
        if g.order().is_none() {
            return Err(Error::InvalidGroup(format!("{g} is infinite")));
        }
        let dim = g.ambient_rank();
        let zero = vec![Int::from(0); dim];
        let mut seen: BTreeMap<Vec<Int>, Vec<Int>> = BTreeMap::new();
        let mut queue = VecDeque::from([zero.clone()]);
        seen.insert(g.normal_form(&zero), zero);
        while let Some(x) = queue.pop_front() {
            for i in 0..dim {
                let mut y = x.clone();
                y[i] += 1;
                let nf = g.normal_form(&y);
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(nf) {
                    e.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let keys: Vec<Vec<Int>> = seen.keys().cloned().collect();
        let reps: Vec<Vec<Int>> = seen.values().cloned().collect();
        let index: BTreeMap<&Vec<Int>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let e = index[&g.normal_form(&vec![Int::from(0); dim])];
        let grp = Self::from_op(reps.len(), e, |a, b| {
            let s: Vec<Int> = reps[a].iter().zip(&reps[b]).map(|(x, y)| x + y).collect();
            index[&g.normal_form(&s)]
        });
        Ok((grp, reps))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.e
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Checks that `f` is a homomorphism into `target`.
    pub fn check_hom(&self, target: &FiniteGroup, f: &[usize]) -> std::result::Result<(), String> {
        if f.len() != self.order() || f.iter().any(|&x| x >= target.order()) {
            return Err(format!("map has {} values for a group of order {}", f.len(), self.order()));
        }
        for a in 0..self.order() {
            for b in 0..self.order() {
                if f[self.mul(a, b)] != target.mul(f[a], f[b]) {
                    return Err(format!("f({a}*{b}) != f({a})*f({b})"));
                }
            }
        }
        Ok(())
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..k {
        for rest in permutations(k - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// Levels `G⁰..G^N` with cofaces `∂ⁱ: G^{n-1} → Gⁿ` and codegeneracies `sⁱ: G^{n+1} → Gⁿ`,
/// all given as element maps.
#[derive(Clone, Debug)]
pub struct CosimplicialFinGroup {
    levels: Vec<FiniteGroup>,
    /// `cofaces[n][i]` for `1 ≤ n ≤ N`.
    cofaces: Vec<Vec<Vec<usize>>>,
    /// `codegeneracies[n][i]` for `0 ≤ n < N`.
    codegeneracies: Vec<Vec<Vec<usize>>>,
}

/// `π¹` as orbits of `Z¹G` under `G⁰`; `orbits[base]` contains the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedOrbits {
    pub orbits: Vec<Vec<usize>>,
    pub base: usize,
}

impl PointedOrbits {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// The pointed set `{*}`.
    pub fn is_point(&self) -> bool {
        self.orbits.len() == 1
    }
}

impl CosimplicialFinGroup {
    /// `cofaces[n - 1][i]` is `∂ⁱ: G^{n-1} → Gⁿ`; `codegeneracies[n][i]` is `sⁱ: G^{n+1} → Gⁿ`.
    pub fn new(levels: Vec<FiniteGroup>, cofaces: Vec<Vec<Vec<usize>>>, codegeneracies: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let top = levels.len().checked_sub(1).ok_or_else(|| Error::Dimension("no levels".into()))?;
        if cofaces.len() != top || codegeneracies.len() != top {
            return Err(Error::Dimension(format!("truncation {top} needs {top} coface and codegeneracy families")));
        }
        for (k, fam) in cofaces.iter().enumerate() {
            let n = k + 1;
            if fam.len() != n + 1 {
                return Err(Error::Dimension(format!("level {n} needs {} cofaces", n + 1)));
            }
            for (i, f) in fam.iter().enumerate() {
                levels[n - 1].check_hom(&levels[n], f).map_err(|m| Error::NotAHomomorphism(format!("d^{i} into level {n}: {m}")))?;
            }
        }
        for (n, fam) in codegeneracies.iter().enumerate() {
            if fam.len() != n + 1 {
                return Err(Error::Dimension(format!("level {n} needs {} codegeneracies", n + 1)));
            }
            for (i, f) in fam.iter().enumerate() {
                levels[n + 1].check_hom(&levels[n], f).map_err(|m| Error::NotAHomomorphism(format!("s^{i} into level {n}: {m}")))?;
            }
        }
        let mut cf = vec![Vec::new()];
        cf.extend(cofaces);
        let g = CosimplicialFinGroup { levels, cofaces: cf, codegeneracies };
        g.check_identities()?;
        Ok(g)
    }

    /// Every structure map is the identity.
    pub fn constant(g: FiniteGroup, n: usize) -> Self {
        let id: Vec<usize> = (0..g.order()).collect();
        CosimplicialFinGroup {
            levels: vec![g; n + 1],
            cofaces: (0..=n).map(|k| if k == 0 { Vec::new() } else { vec![id.clone(); k + 1] }).collect(),
            codegeneracies: (0..n).map(|k| vec![id.clone(); k + 1]).collect(),
        }
    }

    /// The finite cosimplicial abelian group `a` viewed as a cosimplicial group.
    pub fn from_abelian(a: &CosimplicialAbGroup) -> Result<Self> {
        let top = a.truncation();
        let mut levels = Vec::new();
        let mut reps = Vec::new();
        let mut index: Vec<BTreeMap<Vec<Int>, usize>> = Vec::new();
        for n in 0..=top {
            let g = a.level(n);
            let (grp, r) = FiniteGroup::from_abelian(g)?;
            index.push(r.iter().enumerate().map(|(i, x)| (g.normal_form(x), i)).collect());
            levels.push(grp);
            reps.push(r);
        }
        let push = |h: &crate::linalg::AbHom, src: usize, tgt: usize| -> Vec<usize> {
            reps[src].iter().map(|x| index[tgt][&a.level(tgt).normal_form(&h.apply(x))]).collect()
        };
        let cofaces = (1..=top).map(|n| (0..=n).map(|i| push(a.coface(n, i), n - 1, n)).collect()).collect();
        let codeg = (0..top).map(|n| (0..=n).map(|i| push(a.codegeneracy(n, i), n + 1, n)).collect()).collect();
        Self::new(levels, cofaces, codeg)
    }

    /// Bar-construction cochains `Map(Γⁿ, K)` with `Γ` acting on `K` by automorphisms.
    ///
    /// `action[γ]` is the permutation of `K` by which `γ` acts.
    pub fn cobar(gamma: &FiniteGroup, k: &FiniteGroup, action: &[Vec<usize>], n: usize) -> Result<Self> {
        if action.len() != gamma.order() {
            return Err(Error::InvalidAction(format!("{} automorphisms for a group of order {}", action.len(), gamma.order())));
        }
        for (g, a) in action.iter().enumerate() {
            k.check_hom(k, a).map_err(|m| Error::InvalidAction(format!("element {g}: {m}")))?;
        }
        let idk: Vec<usize> = (0..k.order()).collect();
        if action[gamma.identity()] != idk {
            return Err(Error::InvalidAction("identity acts nontrivially".into()));
        }
        for a in 0..gamma.order() {
            for b in 0..gamma.order() {
                let ab = &action[gamma.mul(a, b)];
                if (0..k.order()).any(|x| ab[x] != action[a][action[b][x]]) {
                    return Err(Error::InvalidAction(format!("action of {a}*{b} is not the composite")));
                }
            }
        }
        let q = gamma.order();
        let kk = k.order();
        let levels: Vec<FiniteGroup> = (0..=n).map(|m| k.power(q.pow(m as u32))).collect();
        // element of level m: digits in base |K|, one per tuple in Γ^m (lexicographic)
        let decode = |x: usize, len: usize| -> Vec<usize> {
            let mut d = vec![0; len];
            let mut x = x;
            for i in (0..len).rev() {
                d[i] = x % kk;
                x /= kk;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().fold(0, |acc, &v| acc * kk + v);
        let tuple = |idx: usize, m: usize| -> Vec<usize> {
            let mut t = vec![0; m];
            let mut x = idx;
            for i in (0..m).rev() {
                t[i] = x % q;
                x /= q;
            }
            t
        };
        let untuple = |t: &[usize]| t.iter().fold(0, |acc, &v| acc * q + v);
        let coface = |m: usize, i: usize| -> Vec<usize> {
            let (src_len, tgt_len) = (q.pow(m as u32 - 1), q.pow(m as u32));
            (0..levels[m - 1].order())
                .map(|x| {
                    let f = decode(x, src_len);
                    let out: Vec<usize> = (0..tgt_len)
                        .map(|ti| {
                            let g = tuple(ti, m);
                            if i == 0 {
                                action[g[0]][f[untuple(&g[1..])]]
                            } else if i == m {
                                f[untuple(&g[..m - 1])]
                            } else {
                                let mut h = g[..i - 1].to_vec();
                                h.push(gamma.mul(g[i - 1], g[i]));
                                h.extend_from_slice(&g[i + 1..]);
                                f[untuple(&h)]
                            }
                        })
                        .collect();
                    encode(&out)
                })
                .collect()
        };
        let codeg = |m: usize, i: usize| -> Vec<usize> {
            let (src_len, tgt_len) = (q.pow(m as u32 + 1), q.pow(m as u32));
            (0..levels[m + 1].order())
                .map(|x| {
                    let f = decode(x, src_len);
                    let out: Vec<usize> = (0..tgt_len)
                        .map(|ti| {
                            let mut g = tuple(ti, m);
                            g.insert(i, gamma.identity());
                            f[untuple(&g)]
                        })
                        .collect();
                    encode(&out)
                })
                .collect()
        };
        let cofaces = (1..=n).map(|m| (0..=m).map(|i| coface(m, i)).collect()).collect();
        let codegs = (0..n).map(|m| (0..=m).map(|i| codeg(m, i)).collect()).collect();
        Self::new(levels, cofaces, codegs)
    }

    /// Pointed maps from the simplicial circle `Δ[1]/∂Δ[1]` into `K`: `Gⁿ = Kⁿ`.
    ///
    /// The non-basepoint `n`-simplices are `x_k` (`k` zeros then ones), `1 ≤ k ≤ n`.
    pub fn pointed_circle(k: &FiniteGroup, n: usize) -> Result<Self> {
        let levels: Vec<FiniteGroup> = (0..=n).map(|m| k.power(m)).collect();
        let kk = k.order();
        let decode = |x: usize, len: usize| -> Vec<usize> {
            let mut d = vec![0; len];
            let mut x = x;
            for i in (0..len).rev() {
                d[i] = x % kk;
                x /= kk;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().fold(0, |acc, &v| acc * kk + v);
        // value of f (on m-simplices) at x_j, basepoint ↦ e
        let value = |f: &[usize], m: usize, j: usize| if j == 0 || j == m + 1 { k.identity() } else { f[j - 1] };
        let coface = |m: usize, i: usize| -> Vec<usize> {
            (0..levels[m - 1].order())
                .map(|x| {
                    let f = decode(x, m - 1);
                    let out: Vec<usize> = (1..=m)
                        .map(|j| {
                            // deleting position i from x_j
                            let jj = if i < j { j - 1 } else { j };
                            value(&f, m - 1, jj)
                        })
                        .collect();
                    encode(&out)
                })
                .collect()
        };
        let codeg = |m: usize, i: usize| -> Vec<usize> {
            (0..levels[m + 1].order())
                .map(|x| {
                    let f = decode(x, m + 1);
                    let out: Vec<usize> = (1..=m)
                        .map(|j| {
                            let jj = if i < j { j + 1 } else { j };
                            value(&f, m + 1, jj)
                        })
                        .collect();
                    encode(&out)
                })
                .collect()
        };
        let cofaces = (1..=n).map(|m| (0..=m).map(|i| coface(m, i)).collect()).collect();
        let codegs = (0..n).map(|m| (0..=m).map(|i| codeg(m, i)).collect()).collect();
        Self::new(levels, cofaces, codegs)
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FiniteGroup {
        &self.levels[n]
    }

    /// `∂ⁱ: G^{n-1} → Gⁿ`.
    pub fn coface(&self, n: usize, i: usize) -> &[usize] {
        &self.cofaces[n][i]
    }

    /// `sⁱ: G^{n+1} → Gⁿ`.
    pub fn codegeneracy(&self, n: usize, i: usize) -> &[usize] {
        &self.codegeneracies[n][i]
    }

    fn check_identities(&self) -> Result<()> {
        let top = self.truncation();
        let compose = |f: &[usize], g: &[usize]| -> Vec<usize> { f.iter().map(|&x| g[x]).collect() };
        let fail = |identity: String, level: usize| Err(Error::CosimplicialIdentity { identity, level });
        for n in 1..top {
            for j in 0..=n + 1 {
                for i in 0..j {
                    if compose(self.coface(n, i), self.coface(n + 1, j)) != compose(self.coface(n, j - 1), self.coface(n + 1, i)) {
                        return fail(format!("d^{j} d^{i} = d^{i} d^{}", j - 1), n + 1);
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if compose(self.codegeneracy(n + 1, i), self.codegeneracy(n, j))
                        != compose(self.codegeneracy(n + 1, j + 1), self.codegeneracy(n, i))
                    {
                        return fail(format!("s^{j} s^{i} = s^{i} s^{}", j + 1), n);
                    }
                }
            }
        }
        for n in 0..top {
            let id: Vec<usize> = (0..self.levels[n].order()).collect();
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = compose(self.coface(n + 1, i), self.codegeneracy(n, j));
                    let rhs = if i < j {
                        compose(self.codegeneracy(n - 1, j - 1), self.coface(n, i))
                    } else if i == j || i == j + 1 {
                        id.clone()
                    } else {
                        compose(self.codegeneracy(n - 1, j), self.coface(n, i - 1))
                    };
                    if lhs != rhs {
                        return fail(format!("s^{j} d^{i}"), n);
                    }
                }
            }
        }
        Ok(())
    }

    /// `π⁰G = {g ∈ G⁰ : ∂⁰g = ∂¹g}`, as sorted elements of `G⁰`.
    pub fn pi0_group(&self) -> Result<Vec<usize>> {
        if self.truncation() < 1 {
            return Err(Error::WindowViolation { requested: 0, needed: "truncation N >= 1".into() });
        }
        let (d0, d1) = (self.coface(1, 0), self.coface(1, 1));
        Ok((0..self.levels[0].order()).filter(|&g| d0[g] == d1[g]).collect())
    }

    /// `Z¹G = {g ∈ G¹ : (∂⁰g)(∂¹g)⁻¹(∂²g) = 1}`.
    pub fn z1(&self) -> Result<Vec<usize>> {
        if self.truncation() < 2 {
            return Err(Error::WindowViolation { requested: 1, needed: "truncation N >= 2".into() });
        }
        let g2 = &self.levels[2];
        let (d0, d1, d2) = (self.coface(2, 0), self.coface(2, 1), self.coface(2, 2));
        Ok((0..self.levels[1].order())
            .filter(|&g| g2.mul(g2.mul(d0[g], g2.inv(d1[g])), d2[g]) == g2.identity())
            .collect())
    }

    /// `g₀ · g₁ = (∂¹g₀) g₁ (∂⁰g₀)⁻¹`.
    pub fn act(&self, g0: usize, g1: usize) -> usize {
        let g = &self.levels[1];
        g.mul(g.mul(self.coface(1, 1)[g0], g1), g.inv(self.coface(1, 0)[g0]))
    }

    /// `π¹G = Z¹G / G⁰`; orbits sorted by least element.
    pub fn pi1_pointed_set(&self) -> Result<PointedOrbits> {
        let z = self.z1()?;
        let g1 = &self.levels[1];
        let mut orbit_of = vec![usize::MAX; g1.order()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for &x in &z {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members: Vec<usize> = (0..self.levels[0].order()).map(|g0| self.act(g0, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                orbit_of[y] = id;
            }
            orbits.push(members);
        }
        let base = orbit_of[g1.identity()];
        Ok(PointedOrbits { orbits, base })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_tables() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(FiniteGroup::from_table(s3.table().to_vec()).is_ok());
        let q = FiniteGroup::quaternion();
        assert!(FiniteGroup::from_table(q.table().to_vec()).is_ok());
        assert!(!q.is_abelian());
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn constant_has_trivial_pi1() {
        let g = CosimplicialFinGroup::constant(FiniteGroup::symmetric(3), 2);
        let p = g.pi1_pointed_set().unwrap();
        assert!(p.is_point());
        assert_eq!(g.pi0_group().unwrap().len(), 6);
    }

    #[test]
    fn pointed_circle_pi1_is_the_group() {
        let s3 = FiniteGroup::symmetric(3);
        let g = CosimplicialFinGroup::pointed_circle(&s3, 3).unwrap();
        assert_eq!(g.pi1_pointed_set().unwrap().len(), 6);
    }

    #[test]
    fn cobar_sign_action_on_z3() {
        let gamma = FiniteGroup::cyclic(2);
        let k = FiniteGroup::cyclic(3);
        let action = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let g = CosimplicialFinGroup::cobar(&gamma, &k, &action, 2).unwrap();
        // H^0 = fixed points = 0, H^1(Z/2; Z/3 sign) = 0
        assert_eq!(g.pi0_group().unwrap(), vec![0]);
        assert!(g.pi1_pointed_set().unwrap().is_point());
    }

    #[test]
    fn bad_action_rejected() {
        let gamma = FiniteGroup::cyclic(2);
        let k = FiniteGroup::cyclic(3);
        let err = CosimplicialFinGroup::cobar(&gamma, &k, &[vec![0, 1, 2], vec![1, 2, 0]], 2).unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
    }
}

//! The cosimplicial replacement `Π` over the truncated simplex category `Δ_{≤M}`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::cosimplicial::abelian::{CosimplicialAbGroup, CosimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::{congruence_kernel, smith, AbHom, FgAbGroup, Invariants, Lattice, Matrix, Smith, Subquotient};
use crate::{Int, IntMatrix};

/// A chain `i₀ → i₁ → ⋯ → iₙ` in `Δ_{≤M}`; `maps[k]` sends `[i_k]` to `[i_{k+1}]` as a value list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NerveSimplex {
    pub objects: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl NerveSimplex {
    pub fn new(objects: Vec<usize>, maps: Vec<Vec<usize>>, m: usize) -> Result<Self> {
        if objects.is_empty() || maps.len() + 1 != objects.len() {
            return Err(Error::Dimension("a nerve simplex of length n has n + 1 objects and n maps".into()));
        }
        if objects.iter().any(|&o| o > m) {
            return Err(Error::Dimension(format!("object beyond the truncation {m}")));
        }
        for (k, f) in maps.iter().enumerate() {
            let ok = f.len() == objects[k] + 1 && f.iter().all(|&v| v <= objects[k + 1]) && f.windows(2).all(|w| w[0] <= w[1]);
            if !ok {
                return Err(Error::Dimension(format!("map {k} is not an order-preserving map [{}] -> [{}]", objects[k], objects[k + 1])));
            }
        }
        Ok(NerveSimplex { objects, maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn last(&self) -> usize {
        *self.objects.last().unwrap()
    }

    /// Deletes `i_j`.
    pub fn face(&self, j: usize) -> NerveSimplex {
        let n = self.len();
        let mut objects = self.objects.clone();
        objects.remove(j);
        let mut maps = self.maps.clone();
        if j == 0 {
            maps.remove(0);
        } else if j == n {
            maps.pop();
        } else {
            let comp = compose(&maps[j - 1], &maps[j]);
            maps.splice(j - 1..=j, [comp]);
        }
        NerveSimplex { objects, maps }
    }

    /// Repeats `i_j` with the identity.
    pub fn degeneracy(&self, j: usize) -> NerveSimplex {
        let mut objects = self.objects.clone();
        objects.insert(j, self.objects[j]);
        let mut maps = self.maps.clone();
        maps.insert(j, (0..=self.objects[j]).collect());
        NerveSimplex { objects, maps }
    }

    /// The composite `i_k → iₙ`.
    pub fn to_last(&self, k: usize) -> Vec<usize> {
        let mut f: Vec<usize> = (0..=self.objects[k]).collect();
        for g in &self.maps[k..] {
            f = compose(&f, g);
        }
        f
    }

    /// `[n] → [iₙ]`, `k ↦ (i_k → iₙ)(i_k)`.
    pub fn unit_map(&self) -> Vec<usize> {
        (0..=self.len()).map(|k| self.to_last(k)[self.objects[k]]).collect()
    }
}

/// `g ∘ f` on value lists.
fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// Order-preserving maps `[a] → [b]` in lexicographic order.
pub fn order_preserving_maps(a: usize, b: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, lo: usize, b: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=b {
            cur.push(v);
            rec(len, v, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(a + 1, 0, b, &mut Vec::new(), &mut out);
    out
}

/// All `n`-chains of the nerve of `Δ_{≤M}`, degenerate ones included, sorted.
pub fn nerve_chains(m: usize, n: usize) -> Vec<NerveSimplex> {
    let mut chains: Vec<NerveSimplex> = (0..=m).map(|o| NerveSimplex { objects: vec![o], maps: Vec::new() }).collect();
    for _ in 0..n {
        let mut next = Vec::new();
        for c in &chains {
            for b in 0..=m {
                for f in order_preserving_maps(c.last(), b) {
                    let mut d = c.clone();
                    d.objects.push(b);
                    d.maps.push(f);
                    next.push(d);
                }
            }
        }
        chains = next;
    }
    chains.sort();
    chains
}

/// Evaluates `A` on an order-preserving map `[a] → [b]` via its epi-mono factorization.
struct Evaluator<'a> {
    a: &'a CosimplicialAbGroup,
    cache: HashMap<Vec<usize>, IntMatrix>,
}

impl<'a> Evaluator<'a> {
    fn eval(&mut self, f: &[usize], b: usize) -> IntMatrix {
        let mut key = f.to_vec();
        key.push(b);
        if let Some(m) = self.cache.get(&key) {
            return m.clone();
        }
        let a = f.len() - 1;
        let m = if let Some(x) = (0..a).find(|&x| f[x] == f[x + 1]) {
            // f = f' ∘ σˣ
            let mut g = f.to_vec();
            g.remove(x + 1);
            let rest = self.eval(&g, b);
            rest.mul(self.a.codegeneracy(a - 1, x).matrix())
        } else if let Some(miss) = (0..=b).find(|v| !f.contains(v)) {
            // f = δ^miss ∘ f''
            let g: Vec<usize> = f.iter().map(|&v| if v < miss { v } else { v - 1 }).collect();
            let rest = self.eval(&g, b - 1);
            self.a.coface(b, miss).matrix().mul(&rest)
        } else {
            Matrix::identity(self.a.level(b).ambient_rank())
        };
        self.cache.insert(key, m.clone());
        m
    }
}

/// `ΠA` truncated at level `top`, the chains indexing its factors, and the unit `A → ΠA`.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub m: usize,
    pub pi: CosimplicialAbGroup,
    pub chains: Vec<Vec<NerveSimplex>>,
    pub unit: CosimplicialMap,
}

/// `Πⁿ A = ∏_{i* ∈ NΔ_{≤M}} A^{iₙ}` for `n ≤ top`.
///
/// `∂ʲ` for `j < n` reindexes along the face `d_j`; `∂ⁿ` also applies `A(iₙ₋₁ → iₙ)`;
/// `sʲ` reindexes along `s_j`. The unit sends `x ∈ Aⁿ` to `A(k ↦ (i_k → iₙ)(i_k))(x)` at `i*`.
pub fn cosimplicial_replacement(a: &CosimplicialAbGroup, m: usize, top: usize) -> Result<Replacement> {
    if m > a.truncation() {
        return Err(Error::WindowViolation { requested: m as i64, needed: format!("nerve bound M <= N = {}", a.truncation()) });
    }
    let chains: Vec<Vec<NerveSimplex>> = (0..=top).map(|n| nerve_chains(m, n)).collect();
    let index: Vec<HashMap<&NerveSimplex, usize>> =
        chains.iter().map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect()).collect();
    let dims: Vec<usize> = (0..=m).map(|o| a.level(o).ambient_rank()).collect();
    let offsets: Vec<Vec<usize>> = chains
        .iter()
        .map(|cs| {
            let mut acc = 0;
            cs.iter()
                .map(|c| {
                    let o = acc;
                    acc += dims[c.last()];
                    o
                })
                .collect()
        })
        .collect();
    let levels: Vec<FgAbGroup> = chains
        .iter()
        .map(|cs| cs.iter().fold(FgAbGroup::trivial(), |g, c| g.direct_sum(a.level(c.last()))))
        .collect();
    let mut ev = Evaluator { a, cache: HashMap::new() };
    let mut cofaces = vec![Vec::new()];
    for n in 1..=top {
        let mut fam = Vec::new();
        for j in 0..=n {
            let mut mat = Matrix::zeros(levels[n].ambient_rank(), levels[n - 1].ambient_rank());
            for (ci, c) in chains[n].iter().enumerate() {
                let f = c.face(j);
                let col = offsets[n - 1][index[n - 1][&f]];
                let block = if j < n { Matrix::identity(dims[c.last()]) } else { ev.eval(&c.maps[n - 1], c.last()) };
                mat.set_block(offsets[n][ci], col, &block);
            }
            fam.push(AbHom::new_unchecked(levels[n - 1].clone(), levels[n].clone(), mat));
        }
        cofaces.push(fam);
    }
    let mut codegs = Vec::new();
    for n in 0..top {
        let mut fam = Vec::new();
        for j in 0..=n {
            let mut mat = Matrix::zeros(levels[n].ambient_rank(), levels[n + 1].ambient_rank());
            for (ci, c) in chains[n].iter().enumerate() {
                let col = offsets[n + 1][index[n + 1][&c.degeneracy(j)]];
                mat.set_block(offsets[n][ci], col, &Matrix::identity(dims[c.last()]));
            }
            fam.push(AbHom::new_unchecked(levels[n + 1].clone(), levels[n].clone(), mat));
        }
        codegs.push(fam);
    }
    let pi = CosimplicialAbGroup::from_parts_unchecked(levels.clone(), cofaces, codegs);
    let unit_top = top.min(a.truncation());
    let maps = (0..=unit_top)
        .map(|n| {
            let mut mat = Matrix::zeros(levels[n].ambient_rank(), a.level(n).ambient_rank());
            for (ci, c) in chains[n].iter().enumerate() {
                mat.set_block(offsets[n][ci], 0, &ev.eval(&c.unit_map(), c.last()));
            }
            AbHom::new_unchecked(a.level(n).clone(), levels[n].clone(), mat)
        })
        .collect();
    let unit = CosimplicialMap { source: a.clone(), target: pi.clone(), maps };
    Ok(Replacement { m, pi, chains, unit })
}

/// Per-degree verdict of the comparison `Hˢ(C*A) → Hˢ(C*ΠA)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiVerdict {
    pub s: usize,
    pub source: Invariants,
    pub target: Invariants,
    /// The unit induces an isomorphism.
    pub iso: bool,
}

/// Checks that the unit induces isomorphisms in degrees `s ≤ M - 2` (and `s ≤ N - 1`).
///
/// `ΠA` is built up to the top checked degree; its next coboundary is imposed
/// chain by chain as congruences, so the next level is never materialized.
pub fn check_pi_quasi_iso(a: &CosimplicialAbGroup, m: usize) -> Result<Vec<PiVerdict>> {
    if m < 2 || a.truncation() == 0 {
        return Ok(Vec::new());
    }
    let s_max = (m - 2).min(a.truncation() - 1);
    let rep = cosimplicial_replacement(a, m, s_max)?;
    let pc = rep.pi.unnormalized_complex();
    let ac = a.unnormalized_complex();
    let top_cycles = pi_cycles(a, m, &rep, s_max);
    (0..=s_max)
        .map(|s| {
            let si = s as i64;
            let target = if s < s_max {
                pc.cohomology_subquotient(si)
            } else {
                let level = pc.level(si);
                Subquotient::new(level.clone(), top_cycles.basis_columns(), pc.boundaries(si))
            };
            let source = ac.cohomology_subquotient(si);
            let img = rep.unit.maps[s].matrix().mul(source.gens());
            let mat = target.coords_matrix(&img).expect("the unit is a cochain map");
            let h = AbHom::new(source.group().clone(), target.group().clone(), mat)?;
            Ok(PiVerdict { s, source: h.source().invariants(), target: h.target().invariants(), iso: h.is_isomorphism() })
        })
        .collect()
}

/// Cycles of `Πˢ A → Π^{s+1} A`, one block of congruences per `(s+1)`-chain.
fn pi_cycles(a: &CosimplicialAbGroup, m: usize, rep: &Replacement, s: usize) -> Lattice {
    let chains = &rep.chains[s];
    let index: HashMap<&NerveSimplex, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let dims: Vec<usize> = (0..=m).map(|o| a.level(o).ambient_rank()).collect();
    let mut offsets = Vec::with_capacity(chains.len());
    let mut total = 0;
    for c in chains {
        offsets.push(total);
        total += dims[c.last()];
    }
    let smiths: Vec<Smith<Int>> = (0..=m).map(|o| smith(a.level(o).relations())).collect();
    let mut ev = Evaluator { a, cache: HashMap::new() };
    let mut constraints: Vec<(Vec<(usize, Int)>, Int)> = Vec::new();
    for c in nerve_chains(m, s + 1) {
        let o = c.last();
        let d = dims[o];
        // rows of the block row of the coboundary at c, as a d x total sparse map
        let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); d];
        for j in 0..=s + 1 {
            let f = c.face(j);
            let off = offsets[index[&f]];
            let sign = if j % 2 == 0 { Int::from(1) } else { Int::from(-1) };
            let block = if j < s + 1 { Matrix::identity(d) } else { ev.eval(&c.maps[s], o) };
            for (r, row) in rows.iter_mut().enumerate() {
                for k in 0..block.cols() {
                    let v = &block[(r, k)];
                    if !v.is_zero() {
                        row.push((off + k, v * &sign));
                    }
                }
            }
        }
        let sm = &smiths[o];
        for k in 0..d {
            let e = sm.diag.get(k).cloned().unwrap_or_default();
            if e.is_one() {
                continue;
            }
            let mut acc: HashMap<usize, Int> = HashMap::new();
            for r in 0..d {
                let l = &sm.l[(k, r)];
                if l.is_zero() {
                    continue;
                }
                for (col, v) in &rows[r] {
                    *acc.entry(*col).or_default() += l * v;
                }
            }
            let mut row: Vec<(usize, Int)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            row.sort_by_key(|(c, _)| *c);
            constraints.push((row, e));
        }
    }
    congruence_kernel(total, constraints)
}

//! Exact couples of towers, their derived couples and pages.
//!
//! For a tower `… → X_s → X_{s-1} → … → X_{s_lo}` of cochain complexes with
//! surjective structure maps and fibers `F_s = ker(X_s → X_{s-1})`:
//!
//! * `D^{s,t} = H^{s-t}(X_s)`, `E^{s,t} = H^{s-t}(F_s)`;
//! * `i: D^{s,t} → D^{s-1,t-1}` is induced by the structure map;
//! * `j: D^{s,t} → E^{s+1,t}` is the connecting map of `F_{s+1} → X_{s+1} → X_s`;
//! * `k: E^{s,t} → D^{s,t}` is induced by the inclusion of the fiber.
//!
//! With these bidegrees `d_r = j ∘ i^{-(r-1)} ∘ k` has bidegree `(r, r-1)`.
//! Internally positions are keyed by `(s, n)` with `n = s - t`.

use std::collections::BTreeMap;

use crate::complexes::{ChainMap, CochainComplex, FilteredComplex, Page};
use crate::error::{Error, Result};
use crate::linalg::{AbHom, FgAbGroup, Lattice, Matrix, Solver, Subquotient};
use crate::{Int, IntMatrix};

/// A finite tower of cochain complexes; `maps[k]` goes from stage `s_lo + k + 1` to `s_lo + k`.
#[derive(Clone, Debug)]
pub struct Tower {
    s_lo: i64,
    stages: Vec<CochainComplex>,
    maps: Vec<ChainMap>,
}

impl Tower {
    pub fn new(s_lo: i64, stages: Vec<CochainComplex>, maps: Vec<ChainMap>) -> Result<Self> {
        if stages.is_empty() || maps.len() + 1 != stages.len() {
            return Err(Error::Dimension("a tower of k stages needs k - 1 maps".into()));
        }
        for (k, f) in maps.iter().enumerate() {
            let stage = s_lo + k as i64 + 1;
            let (x, y) = (f.source(), f.target());
            let lo = x.lo().min(y.lo());
            let hi = x.hi().max(y.hi());
            for n in lo..=hi {
                if !f.at(n).is_surjective() {
                    return Err(Error::NotSurjective { stage, degree: n });
                }
            }
        }
        Ok(Tower { s_lo, stages, maps })
    }

    /// `X_p = K / F^{p+1}` with identity structure maps.
    pub fn from_filtration(f: &FilteredComplex) -> Self {
        let k = f.complex();
        let stages: Vec<CochainComplex> = (f.p_lo()..=f.p_hi())
            .map(|p| {
                let levels = k.degrees().map(|n| FgAbGroup::from_lattice(f.f(p + 1, n))).collect();
                let mats = (k.lo()..k.hi()).map(|n| k.diff_matrix(n)).collect();
                CochainComplex::new_unchecked(k.lo(), levels, mats)
            })
            .collect();
        let maps = stages
            .windows(2)
            .map(|w| {
                let mats = w[1].degrees().map(|n| Matrix::identity(w[1].dim(n))).collect();
                ChainMap::new(w[1].clone(), w[0].clone(), w[1].lo(), mats).expect("quotient maps are chain maps")
            })
            .collect();
        Tower { s_lo: f.p_lo(), stages, maps }
    }

    pub fn s_lo(&self) -> i64 {
        self.s_lo
    }

    pub fn s_hi(&self) -> i64 {
        self.s_lo + self.stages.len() as i64 - 1
    }

    pub fn stage(&self, s: i64) -> &CochainComplex {
        &self.stages[(s - self.s_lo) as usize]
    }

    /// Structure map `X_s → X_{s-1}` for `s > s_lo`.
    pub fn map(&self, s: i64) -> &ChainMap {
        &self.maps[(s - self.s_lo - 1) as usize]
    }

    fn degree_range(&self) -> (i64, i64) {
        let lo = self.stages.iter().filter(|c| !c.is_empty()).map(|c| c.lo()).min().unwrap_or(0);
        let hi = self.stages.iter().filter(|c| !c.is_empty()).map(|c| c.hi()).max().unwrap_or(-1);
        (lo, hi)
    }
}

/// Chasing data kept when a couple comes from a tower.
#[derive(Clone, Debug)]
struct TowerData {
    /// Fiber level `(s, n)` as a subquotient of `X_sⁿ`.
    fiber: BTreeMap<(i64, i64), Subquotient>,
    /// `E(s, n)` as a subquotient of the fiber level group.
    e_hom: BTreeMap<(i64, i64), Subquotient>,
}

/// Bigraded exact couple with finite support, together with its derivation level `r`.
///
/// Derived terms are subquotients of the original `D` and `E` groups: `D_r` is
/// generated by `i^{r-1}` of the ambient generators of `D^{s+r-1}`, which
/// serve as the lifts needed by `j_r`.
#[derive(Clone, Debug)]
pub struct ExactCouple {
    s_lo: i64,
    s_hi: i64,
    n_lo: i64,
    n_hi: i64,
    r: usize,
    d: BTreeMap<(i64, i64), FgAbGroup>,
    e: BTreeMap<(i64, i64), FgAbGroup>,
    /// `i(s, n): D(s, n) → D(s-1, n)`.
    i: BTreeMap<(i64, i64), IntMatrix>,
    /// `j(s, n): D(s-1, n) → E(s, n+1)`.
    j: BTreeMap<(i64, i64), IntMatrix>,
    /// `k(s, n): E(s, n) → D(s, n)`.
    k: BTreeMap<(i64, i64), IntMatrix>,
    tower: Option<TowerData>,
}

/// `(s, t)` of tower index `s` in total degree `n`.
fn st(s: i64, n: i64) -> (i64, i64) {
    (s, s - n)
}

impl ExactCouple {
    /// Builds a couple from abstract data keyed by `(s, n)`.
    ///
    /// `i(s,n): D(s,n) → D(s-1,n)`, `j(s,n): D(s-1,n) → E(s,n+1)`, `k(s,n): E(s,n) → D(s,n)`.
    /// Beyond `s_hi` the `D` terms are constant. Exactness is checked.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        s_lo: i64,
        s_hi: i64,
        n_lo: i64,
        n_hi: i64,
        d: BTreeMap<(i64, i64), FgAbGroup>,
        e: BTreeMap<(i64, i64), FgAbGroup>,
        i: BTreeMap<(i64, i64), IntMatrix>,
        j: BTreeMap<(i64, i64), IntMatrix>,
        k: BTreeMap<(i64, i64), IntMatrix>,
    ) -> Result<Self> {
        let c = ExactCouple { s_lo, s_hi, n_lo, n_hi, r: 1, d, e, i, j, k, tower: None };
        for s in s_lo..=s_hi {
            for n in n_lo..=n_hi {
                AbHom::new(c.d_base(s, n), c.d_base(s - 1, n), c.i_base(s, n))?;
                AbHom::new(c.d_base(s - 1, n), c.e_base(s, n + 1), c.j_base(s, n))?;
                AbHom::new(c.e_base(s, n), c.d_base(s, n), c.k_base(s, n))?;
            }
        }
        c.check_exact()?;
        Ok(c)
    }

    /// The couple of the long exact sequences of `F_s → X_s → X_{s-1}`.
    pub fn from_tower(tower: &Tower) -> Self {
        let (n_lo, n_hi) = tower.degree_range();
        let (s_lo, s_hi) = (tower.s_lo(), tower.s_hi());
        let mut fiber = BTreeMap::new();
        let mut e_hom = BTreeMap::new();
        let mut d_hom = BTreeMap::new();
        let mut fibers = BTreeMap::new();
        for s in s_lo..=s_hi {
            let x = tower.stage(s);
            let levels: Vec<Subquotient> = (n_lo..=n_hi)
                .map(|n| {
                    let g = x.level(n);
                    if s == s_lo {
                        Subquotient::whole(g)
                    } else {
                        let p = tower.map(s).at(n);
                        Subquotient::new(g.clone(), p.kernel_lattice().basis_columns(), g.relation_lattice().clone())
                    }
                })
                .collect();
            let mats = (n_lo..n_hi)
                .map(|n| {
                    let a = &levels[(n - n_lo) as usize];
                    let b = &levels[(n + 1 - n_lo) as usize];
                    let img = x.diff_matrix(n).mul(a.gens());
                    b.coords_matrix(&img).expect("differential preserves the fiber")
                })
                .collect();
            let fc = CochainComplex::new_unchecked(n_lo, levels.iter().map(|l| l.group().clone()).collect(), mats);
            for n in n_lo..=n_hi {
                fiber.insert((s, n), levels[(n - n_lo) as usize].clone());
                e_hom.insert((s, n), fc.cohomology_subquotient(n));
                d_hom.insert((s, n), x.cohomology_subquotient(n));
            }
            fibers.insert(s, fc);
        }
        let mut d = BTreeMap::new();
        let mut e = BTreeMap::new();
        let mut i = BTreeMap::new();
        let mut j = BTreeMap::new();
        let mut k = BTreeMap::new();
        for (&key, sq) in &d_hom {
            d.insert(key, sq.group().clone());
        }
        for (&key, sq) in &e_hom {
            e.insert(key, sq.group().clone());
        }
        for s in s_lo..=s_hi {
            for n in n_lo..=n_hi {
                let dh = &d_hom[&(s, n)];
                let eh = &e_hom[&(s, n)];
                let fl = &fiber[&(s, n)];
                // k: fiber cycle -> stage vector -> D coords
                let amb = fl.gens().mul(eh.gens());
                k.insert((s, n), dh.coords_matrix(&amb).expect("fiber cycles are cycles"));
                if s > s_lo {
                    let p = tower.map(s).matrix(n);
                    let dprev = &d_hom[&(s - 1, n)];
                    i.insert((s, n), dprev.coords_matrix(&p.mul(dh.gens())).expect("chain maps preserve cycles"));
                    // j: D(s-1, n) -> E(s, n+1)
                    let x = tower.stage(s);
                    let xprev = tower.stage(s - 1);
                    let rel_prev = xprev.level(n).relation_lattice().basis_columns();
                    let lift = Solver::new(&p.hstack(&rel_prev));
                    let width = p.cols();
                    let mut cols = Vec::new();
                    for z in dprev.gens().columns() {
                        let mut w = lift.solve(&z).expect("structure maps are surjective");
                        w.truncate(width);
                        let dw = x.diff_matrix(n).mul_vec(&w);
                        let c = if n < n_hi {
                            let fc = fiber[&(s, n + 1)].coords(&dw).expect("boundary of a lift lies in the fiber");
                            e_hom[&(s, n + 1)].coords(&fc).expect("boundary of a lift is a fiber cycle")
                        } else {
                            Vec::new()
                        };
                        cols.push(c);
                    }
                    let rows = if n < n_hi { e_hom[&(s, n + 1)].num_gens() } else { 0 };
                    j.insert((s, n), Matrix::from_columns(rows, &cols));
                }
            }
        }
        ExactCouple {
            s_lo,
            s_hi,
            n_lo,
            n_hi,
            r: 1,
            d,
            e,
            i,
            j,
            k,
            tower: Some(TowerData { fiber, e_hom }),
        }
    }

    pub fn from_filtration(f: &FilteredComplex) -> Self {
        Self::from_tower(&Tower::from_filtration(f))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s_range(&self) -> (i64, i64) {
        (self.s_lo, self.s_hi)
    }

    pub fn n_range(&self) -> (i64, i64) {
        (self.n_lo, self.n_hi)
    }

    fn in_n(&self, n: i64) -> bool {
        n >= self.n_lo && n <= self.n_hi
    }

    /// `D(s, n)`, constant above `s_hi`, zero below `s_lo`.
    fn d_base(&self, s: i64, n: i64) -> FgAbGroup {
        if s < self.s_lo || !self.in_n(n) {
            return FgAbGroup::trivial();
        }
        self.d[&(s.min(self.s_hi), n)].clone()
    }

    fn e_base(&self, s: i64, n: i64) -> FgAbGroup {
        if s < self.s_lo || s > self.s_hi || !self.in_n(n) {
            return FgAbGroup::trivial();
        }
        self.e[&(s, n)].clone()
    }

    fn dim_d(&self, s: i64, n: i64) -> usize {
        self.d_base(s, n).ambient_rank()
    }

    fn dim_e(&self, s: i64, n: i64) -> usize {
        self.e_base(s, n).ambient_rank()
    }

    fn i_base(&self, s: i64, n: i64) -> IntMatrix {
        if s > self.s_hi {
            return Matrix::identity(self.dim_d(s, n));
        }
        self.i.get(&(s, n)).cloned().unwrap_or_else(|| Matrix::zeros(self.dim_d(s - 1, n), self.dim_d(s, n)))
    }

    fn j_base(&self, s: i64, n: i64) -> IntMatrix {
        self.j.get(&(s, n)).cloned().unwrap_or_else(|| Matrix::zeros(self.dim_e(s, n + 1), self.dim_d(s - 1, n)))
    }

    fn k_base(&self, s: i64, n: i64) -> IntMatrix {
        self.k.get(&(s, n)).cloned().unwrap_or_else(|| Matrix::zeros(self.dim_d(s, n), self.dim_e(s, n)))
    }

    /// `i^m: D(s + m, n) → D(s, n)`.
    fn i_power(&self, s: i64, m: usize, n: i64) -> IntMatrix {
        let mut acc = Matrix::identity(self.dim_d(s + m as i64, n));
        for q in (s + 1..=s + m as i64).rev() {
            acc = self.i_base(q, n).mul(&acc);
        }
        acc
    }

    /// `D_r(s, n)`: generated by `i^{r-1}` of the ambient generators of `D(s + r - 1, n)`.
    pub fn d_term(&self, s: i64, n: i64) -> Subquotient {
        let g = self.d_base(s, n);
        let gens = self.i_power(s, self.r - 1, n);
        Subquotient::new(g.clone(), gens, g.relation_lattice().clone())
    }

    /// `E_r(s, n) = k⁻¹(im i^{r-1}) / j(ker i^{r-1})`.
    pub fn e_term(&self, s: i64, n: i64) -> Subquotient {
        let g = self.e_base(s, n);
        let rm = self.r - 1;
        let dg = self.d_base(s, n);
        let im = Lattice::from_columns(&self.i_power(s, rm, n)).sum(dg.relation_lattice());
        let z = im.preimage(&self.k_base(s, n));
        let dprev = self.d_base(s - 1, n - 1);
        let low = s - 1 - rm as i64;
        let ker = if low < self.s_lo {
            Lattice::full(dprev.ambient_rank())
        } else {
            self.d_base(low, n - 1).relation_lattice().preimage(&self.i_power(low, rm, n - 1))
        };
        let b = ker.image(&self.j_base(s, n - 1));
        Subquotient::new(g, z.basis_columns(), b)
    }

    /// `i_r: D_r(s, n) → D_r(s-1, n)` on generator coordinates.
    pub fn i_r(&self, s: i64, n: i64) -> AbHom {
        let src = self.d_term(s, n);
        let tgt = self.d_term(s - 1, n);
        let top = s + self.r as i64 - 1;
        let m = self.i_base(top, n);
        AbHom::new_unchecked(src.group().clone(), tgt.group().clone(), m)
    }

    /// `j_r: D_r(s, n) → E_r(s + r, n + 1)`, `j_r(i^{r-1} y) = j(y)`.
    pub fn j_r(&self, s: i64, n: i64) -> AbHom {
        let src = self.d_term(s, n);
        let tgt = self.e_term(s + self.r as i64, n + 1);
        let top = s + self.r as i64;
        let img = self.j_base(top, n);
        let m = tgt.coords_matrix(&img).expect("j lands in the r-cycles");
        AbHom::new_unchecked(src.group().clone(), tgt.group().clone(), m)
    }

    /// `k_r: E_r(s, n) → D_r(s, n)`.
    pub fn k_r(&self, s: i64, n: i64) -> AbHom {
        let src = self.e_term(s, n);
        let tgt = self.d_term(s, n);
        let img = self.k_base(s, n).mul(src.gens());
        let m = tgt.coords_matrix(&img).expect("k of an r-cycle lies in the image of i^{r-1}");
        AbHom::new_unchecked(src.group().clone(), tgt.group().clone(), m)
    }

    /// `d_r = j_r ∘ k_r: E_r(s, n) → E_r(s + r, n + 1)`.
    pub fn d_r(&self, s: i64, n: i64) -> AbHom {
        self.k_r(s, n).then(&self.j_r(s, n))
    }

    /// The next derived couple.
    pub fn derive(&self) -> ExactCouple {
        let mut c = self.clone();
        c.r += 1;
        c
    }

    /// The couple derived `r - 1` times from the original data.
    pub fn at_level(&self, r: usize) -> ExactCouple {
        assert!(r >= 1);
        let mut c = self.clone();
        c.r = r;
        c
    }

    /// Checks the three exactness conditions at every position.
    pub fn check_exact(&self) -> Result<()> {
        let same = |a: &Lattice, b: &Lattice| a == b;
        for s in self.s_lo..=self.s_hi {
            for n in self.n_lo..=self.n_hi {
                let (ss, tt) = st(s, n);
                // at D_r(s, n): im i_r = ker j_r
                let dg = self.d_term(s, n);
                let rel = dg.group().relation_lattice().clone();
                let im_i = if s + 1 > self.s_hi {
                    Lattice::full(dg.num_gens())
                } else {
                    Lattice::from_columns(self.i_r(s + 1, n).matrix()).sum(&rel)
                };
                if !same(&im_i, &self.j_r(s, n).kernel_lattice()) {
                    return Err(Error::NotExact { place: "D (im i = ker j)", s: ss, t: tt });
                }
                // at E_r(s, n): im j_r = ker k_r
                let eg = self.e_term(s, n);
                let erel = eg.group().relation_lattice().clone();
                let im_j = Lattice::from_columns(self.j_r(s - self.r as i64, n - 1).matrix()).sum(&erel);
                if !same(&im_j, &self.k_r(s, n).kernel_lattice()) {
                    return Err(Error::NotExact { place: "E (im j = ker k)", s: ss, t: tt });
                }
                // at D_r(s, n): im k_r = ker i_r
                let im_k = Lattice::from_columns(self.k_r(s, n).matrix()).sum(&rel);
                if !same(&im_k, &self.i_r(s, n).kernel_lattice()) {
                    return Err(Error::NotExact { place: "D (im k = ker i)", s: ss, t: tt });
                }
            }
        }
        Ok(())
    }

    /// The `E` page at the current level, in `(s, t)` coordinates.
    pub fn current_page(&self) -> Page {
        let mut page = Page::new(self.r);
        for s in self.s_lo..=self.s_hi {
            for n in self.n_lo..=self.n_hi {
                page.terms.insert(st(s, n), self.e_term(s, n));
            }
        }
        for s in self.s_lo..=self.s_hi {
            for n in self.n_lo..=self.n_hi {
                let tgt = (s + self.r as i64, n + 1);
                if tgt.0 <= self.s_hi && self.in_n(tgt.1) {
                    page.diffs.insert(st(s, n), self.d_r(s, n));
                }
            }
        }
        page
    }

    /// `E_r` with `d_r`.
    pub fn page(&self, r: usize) -> Page {
        self.at_level(r).current_page()
    }

    /// Level from which all terms are constant.
    pub fn stable_level(&self) -> usize {
        (self.s_hi - self.s_lo + 2) as usize
    }

    /// Coordinates in `E_r(s, n)` of a vector of the stage `X_s` lying in the fiber,
    /// for couples built from towers.
    pub fn e_coords_of_stage_vector(&self, s: i64, n: i64, x: &[Int]) -> Option<Vec<Int>> {
        let t = self.tower.as_ref()?;
        let fc = t.fiber.get(&(s, n))?.coords(x)?;
        let ec = t.e_hom.get(&(s, n))?.coords(&fc)?;
        self.e_term(s, n).coords(&ec)
    }

    /// Filtration `Q_s = ker(H(X) → H(X_s))` of the abutment and its graded pieces.
    pub fn abutment(&self) -> AbutmentFiltration {
        let top = self.s_hi;
        let stable = self.at_level(self.stable_level());
        let mut out = AbutmentFiltration {
            groups: BTreeMap::new(),
            q: BTreeMap::new(),
            graded: BTreeMap::new(),
            injections: BTreeMap::new(),
            complete: true,
        };
        for n in self.n_lo..=self.n_hi {
            let h = self.d_base(top, n);
            out.groups.insert(n, h.clone());
            let q_at = |s: i64| -> Lattice {
                if s < self.s_lo {
                    Lattice::full(h.ambient_rank())
                } else {
                    let m = self.i_power(s, (top - s) as usize, n);
                    self.d_base(s, n).relation_lattice().preimage(&m)
                }
            };
            for s in self.s_lo - 1..=top {
                out.q.insert((s, n), q_at(s));
            }
            for s in self.s_lo..=top {
                let upper = q_at(s - 1);
                let lower = q_at(s);
                let graded = Subquotient::new(h.clone(), upper.basis_columns(), lower);
                // x ∈ Q_{s-1}: push to D(s, n), pull back along k, read in E_∞
                let push = self.i_power(s, (top - s) as usize, n).mul(graded.gens());
                let k = self.k_base(s, n);
                let solver = Solver::new(&k.hstack(&self.d_base(s, n).relations().clone()));
                let e_inf = stable.e_term(s, n);
                let mut cols = Vec::new();
                for y in push.columns() {
                    let mut c = solver.solve(&y).expect("image of Q_{s-1} lies in the image of k");
                    c.truncate(k.cols());
                    cols.push(e_inf.coords(&c).expect("lifts are permanent cycles"));
                }
                let m = Matrix::from_columns(e_inf.num_gens(), &cols);
                let inj = AbHom::new(graded.group().clone(), e_inf.group().clone(), m)
                    .expect("e_∞ → E_∞ is well defined");
                if !inj.is_injective() {
                    out.complete = false;
                }
                if !inj.is_surjective() {
                    out.complete = false;
                }
                out.graded.insert(st(s, n), graded);
                out.injections.insert(st(s, n), inj);
            }
        }
        out
    }
}

/// `Q_s` filtration of the abutment `H(X) = D(s_hi, ·)` and the comparison `e_∞ ↪ E_∞`.
#[derive(Clone, Debug)]
pub struct AbutmentFiltration {
    /// Abutment group per total degree `n`.
    pub groups: BTreeMap<i64, FgAbGroup>,
    /// `Q_s` in degree `n`, keyed `(s, n)`, as a lattice in the abutment presentation.
    pub q: BTreeMap<(i64, i64), Lattice>,
    /// `e_∞^{s,t} = Q_{s-1}/Q_s`, keyed `(s, t)`.
    pub graded: BTreeMap<(i64, i64), Subquotient>,
    /// The inclusions `e_∞^{s,t} → E_∞^{s,t}`.
    pub injections: BTreeMap<(i64, i64), AbHom>,
    /// Every inclusion is an isomorphism.
    pub complete: bool,
}

/// `Ẽ^{s,t} = E^{t, 2t-s}`: the Postnikov reindexing of a page.
///
/// A page with differential of bidegree `(r, r-1)` becomes page `r + 1`.
pub fn reindex_tilde(p: &Page) -> Page {
    let mut out = Page::new(p.r + 1);
    for (&(s, t), sq) in &p.terms {
        out.terms.insert(tilde_coords(s, t), sq.clone());
    }
    for (&(s, t), d) in &p.diffs {
        out.diffs.insert(tilde_coords(s, t), d.clone());
    }
    out
}

/// Inverse of [`reindex_tilde`].
pub fn reindex_tilde_inverse(p: &Page) -> Page {
    assert!(p.r >= 2, "reindexed pages start at r = 2");
    let mut out = Page::new(p.r - 1);
    for (&(s, t), sq) in &p.terms {
        out.terms.insert(untilde_coords(s, t), sq.clone());
    }
    for (&(s, t), d) in &p.diffs {
        out.diffs.insert(untilde_coords(s, t), d.clone());
    }
    out
}

/// Position `(s, t)` of `E^{p,q}` after reindexing: `(2p - q, p)`.
pub fn tilde_coords(p: i64, q: i64) -> (i64, i64) {
    (2 * p - q, p)
}

/// `(p, q) = (t, 2t - s)`.
pub fn untilde_coords(s: i64, t: i64) -> (i64, i64) {
    (t, 2 * t - s)
}

/// Representative-level comparison of the filtered page `E_r` with the couple page.
///
/// Each generator of the filtered term is a total-complex vector; it is read in
/// the couple's `E_r` term. The resulting map must be well defined, an
/// isomorphism, and commute with `d_r`. Returns the first failing `(s, t)`.
pub fn compare_with_filtered(couple: &ExactCouple, f: &FilteredComplex, r: usize) -> std::result::Result<(), (i64, i64)> {
    let c = couple.at_level(r);
    let fp = f.page(r);
    let cp = c.current_page();
    let mut phi: BTreeMap<(i64, i64), AbHom> = BTreeMap::new();
    for (&(s, t), sq) in &fp.terms {
        let n = s - t;
        let Some(target) = cp.terms.get(&(s, t)) else { return Err((s, t)) };
        let mut cols = Vec::new();
        for g in sq.gens().columns() {
            match couple.at_level(r).e_coords_of_stage_vector(s, n, &g) {
                Some(v) => cols.push(v),
                None => return Err((s, t)),
            }
        }
        let m = Matrix::from_columns(target.num_gens(), &cols);
        let h = AbHom::new(sq.group().clone(), target.group().clone(), m).map_err(|_| (s, t))?;
        if !h.is_isomorphism() {
            return Err((s, t));
        }
        phi.insert((s, t), h);
    }
    for (&(s, t), h) in &phi {
        let (s2, t2) = fp.target_of(s, t);
        let Some(h2) = phi.get(&(s2, t2)) else { continue };
        let left = fp.d(s, t).then(h2);
        let right = h.then(&cp.d(s, t));
        if !left.equals(&right) {
            return Err((s, t));
        }
    }
    Ok(())
}

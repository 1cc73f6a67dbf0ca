//! The two-layer twisted tower: `ℤ` in weight 1 and `F` in weight 2, glued by `α ∪ -`.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::cech_brauer::cech::{cech_complex, cech_level, check_cocycle, coboundary, constant_multiple, Cocycle2, SecondCohomology};
use crate::cech_brauer::hypercover::OneHypercover;
use crate::cech_brauer::presheaf::AbPresheaf;
use crate::complexes::{CochainComplex, FilteredComplex, Page};
use crate::error::{Error, Result};
use crate::exact_couple::reindex_tilde;
use crate::linalg::{FgAbGroup, Invariants, Lattice, Matrix, Order};
use crate::{Int, IntMatrix};

/// Filtered cone of `α ∪ -: C*(ℤ) → C*(F)[2]` in total degrees `-2..=1`.
///
/// `Kⁿ = Cⁿ⁺¹(ℤ) ⊕ Cⁿ⁺²(F)` and `D(x, y) = (δx, δy + (-1)ⁿ⁺¹ α ∪ x)`; `F²K` is the
/// `F` part. Its reindexed pages have `Ẽ₂^{s,1} = Ȟˢ(ℤ)` for `s ≤ 1` and `Ẽ₂^{s,2} = Ȟˢ(F)` for `s ≤ 2`.
#[derive(Debug)]
pub struct TwistedTower {
    hypercover: OneHypercover,
    presheaf: AbPresheaf,
    alpha: Cocycle2,
    h2: SecondCohomology,
    /// `dim C^s(ℤ)` for `s = 0, 1, 2`.
    z_dims: [usize; 3],
    filtered: FilteredComplex,
}

/// `α ∪ x` for `x ∈ Cˢ(ℤ)`, `s ∈ {0, 1}`: front 2-face of `α` times back `s`-face of `x`.
fn cup(h: &OneHypercover, f: &AbPresheaf, z: &AbPresheaf, alpha: &Cocycle2, s: usize) -> IntMatrix {
    let (l2, lz, lt) = (cech_level(h, f, 2), cech_level(h, z, s), cech_level(h, f, s + 2));
    let mut m = Matrix::zeros(lt.dim(), lz.dim());
    for x in 0..h.count(s + 2) {
        let (front, back) = match s {
            0 => (x, h.triangles()[x].vertices[2]),
            _ => (h.tetrahedra()[x].faces[3], h.tetrahedra()[x].edges[2]),
        };
        let ox = h.open(s + 2, x);
        if lz.block(back).is_empty() || h.site().is_empty_open(ox) {
            continue;
        }
        let v = f.restriction(h.open(2, front), ox).apply(&alpha.values[l2.block(front)]);
        for (r, val) in lt.block(x).zip(v) {
            m[(r, lz.offsets[back])] = val;
        }
    }
    m
}

impl TwistedTower {
    pub fn new(h: &OneHypercover, f: &AbPresheaf, alpha: &Cocycle2) -> Result<Self> {
        Self::with_second_cohomology(h, f, alpha, SecondCohomology::new(h, f)?)
    }

    /// [`TwistedTower::new`] reusing `Ȟ²(F)` computed by the caller for the same `h` and `f`.
    pub fn with_second_cohomology(h: &OneHypercover, f: &AbPresheaf, alpha: &Cocycle2, h2: SecondCohomology) -> Result<Self> {
        check_cocycle(h, f, alpha)?;
        let z = AbPresheaf::constant(h.site(), &FgAbGroup::free(1));
        let zl: Vec<_> = (0..=2).map(|s| cech_level(h, &z, s)).collect();
        let fl: Vec<_> = (0..=3).map(|s| cech_level(h, f, s)).collect();
        let dz: Vec<IntMatrix> = (0..2).map(|s| coboundary(h, &z, s)).collect();
        let df: Vec<IntMatrix> = (0..3).map(|s| coboundary(h, f, s)).collect();
        let cups: Vec<IntMatrix> = (0..2).map(|s| cup(h, f, &z, alpha, s)).collect();
        // K^n for n = -2..=1; z part index n + 1 (absent at n = -2), f part index n + 2
        let zdim = |n: i64| if n >= -1 { zl[(n + 1) as usize].dim() } else { 0 };
        let levels: Vec<FgAbGroup> = (-2..=1)
            .map(|n: i64| {
                let fg = &fl[(n + 2) as usize].group;
                if n >= -1 { zl[(n + 1) as usize].group.direct_sum(fg) } else { fg.clone() }
            })
            .collect();
        let mats: Vec<IntMatrix> = (-2..1)
            .map(|n: i64| {
                let (zs, zt) = (zdim(n), zdim(n + 1));
                let (fs, ft) = (fl[(n + 2) as usize].dim(), fl[(n + 3) as usize].dim());
                let mut m = Matrix::zeros(zt + ft, zs + fs);
                if n >= -1 {
                    let k = (n + 1) as usize;
                    m.set_block(0, 0, &dz[k]);
                    let c = if k.is_multiple_of(2) { cups[k].clone() } else { cups[k].neg() };
                    m.set_block(zt, 0, &c);
                }
                m.set_block(zt, zs, &df[(n + 2) as usize]);
                m
            })
            .collect();
        let complex = CochainComplex::new(-2, levels, mats)?;
        let units: Vec<Lattice> = (-2..=1)
            .map(|n: i64| {
                let (zs, total) = (zdim(n), complex.dim(n));
                let d: Vec<Int> = (0..total).map(|i| Int::from(u8::from(i >= zs))).collect();
                Lattice::from_diagonal(&d)
            })
            .collect();
        let full: Vec<Lattice> = (-2..=1).map(|n| Lattice::full(complex.dim(n))).collect();
        let filtered = FilteredComplex::new(complex, 1, vec![full, units])?;
        Ok(TwistedTower {
            hypercover: h.clone(),
            presheaf: f.clone(),
            alpha: alpha.clone(),
            h2,
            z_dims: [zl[0].dim(), zl[1].dim(), zl[2].dim()],
            filtered,
        })
    }

    pub fn hypercover(&self) -> &OneHypercover {
        &self.hypercover
    }

    pub fn presheaf(&self) -> &AbPresheaf {
        &self.presheaf
    }

    pub fn alpha(&self) -> &Cocycle2 {
        &self.alpha
    }

    pub fn second_cohomology(&self) -> &SecondCohomology {
        &self.h2
    }

    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    /// `Ẽ_r` for `r ≥ 2`, with `d_r` of bidegree `(r, r - 1)`.
    pub fn page(&self, r: usize) -> Page {
        assert!(r >= 2, "the tower's pages start at r = 2");
        reindex_tilde(&self.filtered.page(r - 1))
    }

    /// `[α]` in normal-form coordinates of `Ȟ²(F)`.
    pub fn alpha_class(&self) -> Vec<Int> {
        self.h2.class(&self.alpha)
    }

    fn require_connected(&self) -> Result<()> {
        let z = AbPresheaf::constant(self.hypercover.site(), &FgAbGroup::free(1));
        let h0 = cech_complex(&self.hypercover, &z, 1)?.cohomology(0)?;
        if h0.invariants() != (Invariants { torsion: vec![], rank: 1 }) {
            return Err(Error::InvalidCover(format!("model needs Ȟ⁰(ℤ) ≅ ℤ, found {}", h0.invariants())));
        }
        Ok(())
    }

    /// `d₂(n·[1])` computed on `Ẽ₂`, as class coordinates in `Ȟ²(F)`.
    ///
    /// Only the two terms involved are built: `Ẽ₂^{0,1}` and `Ẽ₂^{2,2}` (native `E₁` at
    /// filtration 1 and 2).
    pub fn d2_on_rank(&self, n: &Int) -> Result<Vec<Int>> {
        self.require_connected()?;
        let fl = &self.filtered;
        let src = fl.term(1, 1, -1);
        let tgt = fl.term(1, 2, 0);
        let d = tgt.coords_matrix(&fl.complex().diff_matrix(-1).mul(src.gens())).expect("d₁ maps Z₁ into Z₁");
        let mut x = vec![Int::zero(); fl.complex().dim(-1)];
        let h = &self.hypercover;
        let mut k = 0;
        for i in 0..h.count(0) {
            if !h.site().is_empty_open(h.open(0, i)) {
                x[k] = n.clone();
                k += 1;
            }
        }
        let c = src.coords(&x).expect("n·1 is a permanent representative of Ȟ⁰(ℤ)");
        let rep = tgt.lift(&d.mul_vec(&c));
        let units = Cocycle2 { values: rep[self.z_dims[1]..].to_vec() };
        Ok(self.h2.class(&units))
    }

    /// Positive generator of `E_∞^{0,1} ⊆ Ȟ⁰(ℤ) ≅ ℤ`.
    pub fn eti(&self) -> Result<Int> {
        self.require_connected()?;
        let term = self.filtered.term(self.filtered.stable_page() as i64, 1, -1);
        let mut g = Int::zero();
        for col in term.gens().columns() {
            let m = constant_multiple(&self.hypercover, &col[..self.z_dims[0]]).expect("E_∞ classes are constant 0-cocycles");
            g = g.gcd(&m);
        }
        Ok(g.abs())
    }

    pub fn period(&self) -> Result<Int> {
        match self.h2.order_of(&self.alpha) {
            Order::Finite(k) => Ok(k),
            Order::Infinite => Err(Error::InvalidPresheaf("class has infinite order".into())),
        }
    }
}

pub fn twisted_tower(h: &OneHypercover, f: &AbPresheaf, alpha: &Cocycle2) -> Result<TwistedTower> {
    TwistedTower::new(h, f, alpha)
}

pub fn d2_on_rank(t: &TwistedTower, n: &Int) -> Result<Vec<Int>> {
    t.d2_on_rank(n)
}

pub fn eti_model(t: &TwistedTower) -> Result<Int> {
    t.eti()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub per: Int,
    pub eti: Int,
    pub divides: bool,
}

pub fn check_divisibility(t: &TwistedTower) -> Result<Divisibility> {
    let per = t.period()?;
    let eti = t.eti()?;
    let divides = !eti.is_zero() && (&eti % &per).is_zero();
    Ok(Divisibility { per, eti, divides })
}

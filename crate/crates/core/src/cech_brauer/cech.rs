//! Čech cochains of a presheaf on a 1-hypercover, and cocycles from gluing data.

use num_traits::Zero;

use crate::cech_brauer::hypercover::OneHypercover;
use crate::cech_brauer::presheaf::AbPresheaf;
use crate::complexes::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{solve, FgAbGroup, Matrix, Order, Subquotient};
use crate::{Int, IntMatrix};

/// `Cˢ = ⊕ F(piece)` over level-`s` pieces, with block offsets.
#[derive(Clone, Debug)]
pub struct CechLevel {
    pub group: FgAbGroup,
    pub offsets: Vec<usize>,
}

impl CechLevel {
    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn block(&self, x: usize) -> std::ops::Range<usize> {
        self.offsets[x]..self.offsets[x + 1]
    }
}

fn require_presheaf(h: &OneHypercover, f: &AbPresheaf) -> Result<()> {
    if f.len() < h.site().len() {
        return Err(Error::MissingPresheafValue(format!("{}", f.len())));
    }
    Ok(())
}

pub fn cech_level(h: &OneHypercover, f: &AbPresheaf, s: usize) -> CechLevel {
    let n = h.count(s);
    let mut offsets = vec![0];
    let mut cols = 0;
    for x in 0..n {
        let g = f.value(h.open(s, x));
        offsets.push(offsets[x] + g.ambient_rank());
        cols += g.relations().cols();
    }
    let mut rel = Matrix::zeros(*offsets.last().unwrap(), cols);
    let mut c = 0;
    for x in 0..n {
        let r = f.value(h.open(s, x)).relations();
        rel.set_block(offsets[x], c, r);
        c += r.cols();
    }
    CechLevel { group: FgAbGroup::new(rel), offsets }
}

fn add_block(m: &mut IntMatrix, r0: usize, c0: usize, block: &IntMatrix, sign: i64) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = &block[(i, j)];
            if !v.is_zero() {
                m[(r0 + i, c0 + j)] += v * Int::from(sign);
            }
        }
    }
}

/// `δ: Cˢ → Cˢ⁺¹`, `(δc)(σ) = Σ_q (-1)^q c(d_q σ)|_σ`.
pub fn coboundary(h: &OneHypercover, f: &AbPresheaf, s: usize) -> IntMatrix {
    let (src, tgt) = (cech_level(h, f, s), cech_level(h, f, s + 1));
    let mut m = Matrix::zeros(tgt.dim(), src.dim());
    for x in 0..h.count(s + 1) {
        let ox = h.open(s + 1, x);
        for (q, y) in h.faces(s + 1, x).into_iter().enumerate() {
            let r = f.restriction(h.open(s, y), ox);
            add_block(&mut m, tgt.offsets[x], src.offsets[y], r.matrix(), if q % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Čech cochains in degrees `0..=smax`, `smax ≤ 3`.
pub fn cech_complex(h: &OneHypercover, f: &AbPresheaf, smax: usize) -> Result<CochainComplex> {
    require_presheaf(h, f)?;
    if smax > 3 {
        return Err(Error::WindowViolation { requested: smax as i64, needed: "smax ≤ 3".into() });
    }
    let levels = (0..=smax).map(|s| cech_level(h, f, s).group).collect();
    let mats = (0..smax).map(|s| coboundary(h, f, s)).collect();
    CochainComplex::new(0, levels, mats)
}

/// `Ȟˢ` for `s ≤ 2`.
pub fn cech_cohomology(h: &OneHypercover, f: &AbPresheaf, s: usize) -> Result<FgAbGroup> {
    if s > 2 {
        return Err(Error::WindowViolation { requested: s as i64, needed: "s ≤ 2 (levels are built up to 3)".into() });
    }
    cech_complex(h, f, s + 1)?.cohomology(s as i64)
}

/// A degree-2 Čech cochain, by ambient coordinates of `C²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub values: Vec<Int>,
}

/// Checks `δα = 0`, naming the first level-3 piece where it fails.
pub fn check_cocycle(h: &OneHypercover, f: &AbPresheaf, alpha: &Cocycle2) -> Result<()> {
    let l2 = cech_level(h, f, 2);
    if alpha.values.len() != l2.dim() {
        return Err(Error::Dimension(format!("cochain has {} entries, C² has {}", alpha.values.len(), l2.dim())));
    }
    let l3 = cech_level(h, f, 3);
    let d = coboundary(h, f, 2).mul_vec(&alpha.values);
    for x in 0..h.count(3) {
        let g = f.value(h.open(3, x));
        if !g.is_zero_element(&d[l3.block(x)]) {
            return Err(Error::NonCocycle { piece: h.describe(3, x) });
        }
    }
    Ok(())
}

/// `Ȟ²` with class coordinates.
#[derive(Clone, Debug)]
pub struct SecondCohomology {
    sub: Subquotient,
}

impl SecondCohomology {
    pub fn new(h: &OneHypercover, f: &AbPresheaf) -> Result<Self> {
        Ok(SecondCohomology { sub: cech_complex(h, f, 3)?.cohomology_subquotient(2) })
    }

    pub fn group(&self) -> &FgAbGroup {
        self.sub.group()
    }

    /// Coordinates of `[α]` on the generators of [`group`](Self::group).
    pub fn coords(&self, alpha: &Cocycle2) -> Vec<Int> {
        self.sub.coords(&alpha.values).expect("cocycles have classes")
    }

    /// Canonical coordinates of `[α]` (reduced Smith coordinates); equal iff the classes are.
    pub fn class(&self, alpha: &Cocycle2) -> Vec<Int> {
        self.sub.group().normal_form(&self.coords(alpha))
    }

    /// A cocycle with the given coordinates on the generators.
    pub fn representative(&self, coords: &[Int]) -> Cocycle2 {
        Cocycle2 { values: self.sub.lift(coords) }
    }

    pub fn order_of(&self, alpha: &Cocycle2) -> Order {
        self.sub.group().element_order(&self.coords(alpha))
    }
}

/// The order of `[α]` in `Ȟ²`.
pub fn period(h: &OneHypercover, f: &AbPresheaf, alpha: &Cocycle2) -> Result<Int> {
    check_cocycle(h, f, alpha)?;
    let h2 = SecondCohomology::new(h, f)?;
    match h2.order_of(alpha) {
        Order::Finite(k) => Ok(k),
        Order::Infinite => Err(Error::InvalidPresheaf("class has infinite order".into())),
    }
}

/// Transition values `θ_ij^α ∈ E(V_ij^α)` in a presheaf `E` containing `F`.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub ambient: AbPresheaf,
    /// `F(u) → E(u)` per open.
    pub inclusion: Vec<IntMatrix>,
    pub theta: Vec<Int>,
}

impl Gluing {
    pub fn new(f: &AbPresheaf, ambient: AbPresheaf, inclusion: Vec<IntMatrix>, theta: Vec<Int>) -> Result<Self> {
        let homs = f.check_morphism(&ambient, &inclusion)?;
        if let Some(u) = homs.iter().position(|h| !h.is_injective()) {
            return Err(Error::InvalidPresheaf(format!("inclusion is not injective on open {u}")));
        }
        Ok(Gluing { ambient, inclusion, theta })
    }

    /// `E = F`.
    pub fn untwisted(f: &AbPresheaf, theta: Vec<Int>) -> Self {
        let inclusion = f.values().iter().map(|g| Matrix::identity(g.ambient_rank())).collect();
        Gluing { ambient: f.clone(), inclusion, theta }
    }
}

/// `α(Z_ijk^{αβδ}) = θ_ij^α + θ_jk^β + θ_ki^δ` restricted to `Z`, with `θ_ki^δ = -θ_ik^δ`,
/// read back in `F`.
pub fn cocycle_from_gluing(h: &OneHypercover, f: &AbPresheaf, g: &Gluing) -> Result<Cocycle2> {
    require_presheaf(h, f)?;
    let e = &g.ambient;
    let le1 = cech_level(h, e, 1);
    if g.theta.len() != le1.dim() {
        return Err(Error::Dimension(format!("theta has {} entries, C¹ has {}", g.theta.len(), le1.dim())));
    }
    let le2 = cech_level(h, e, 2);
    let lf2 = cech_level(h, f, 2);
    let composite = coboundary(h, e, 1).mul_vec(&g.theta);
    let mut values = vec![Int::zero(); lf2.dim()];
    for x in 0..h.count(2) {
        let u = h.open(2, x);
        let sub = Subquotient::new(e.value(u).clone(), g.inclusion[u].clone(), e.value(u).relation_lattice().clone());
        let y = sub.coords(&composite[le2.block(x)]).ok_or_else(|| Error::NotInSubpresheaf { piece: h.describe(2, x) })?;
        let y = f.value(u).normal_form(&y);
        values[lf2.block(x)].clone_from_slice(&y);
    }
    let alpha = Cocycle2 { values };
    check_cocycle(h, f, &alpha)?;
    Ok(alpha)
}

/// Gluing data for `α` with `F` the constant `ℤ/m`, when `α` reduces an integral cocycle of
/// finite order `k`: `E = ℤ/mk`, `F ↪ E` by `k`, and `θ` with `δθ = k·α̃`.
pub fn torsion_lift(h: &OneHypercover, m: &Int, alpha: &Cocycle2) -> Result<Option<Gluing>> {
    let site = h.site();
    let zm = FgAbGroup::cyclic(m.clone());
    let f = AbPresheaf::constant(site, &zm);
    check_cocycle(h, &f, alpha)?;
    let z = AbPresheaf::constant(site, &FgAbGroup::free(1));
    let lifted: Vec<Int> = alpha.values.iter().map(|v| ((v % m) + m) % m).collect();
    let d2 = coboundary(h, &z, 2);
    let defect: Vec<Int> = d2.mul_vec(&lifted).iter().map(|v| -(v / m)).collect();
    let Some(y) = solve(&d2, &defect) else { return Ok(None) };
    let x: Vec<Int> = lifted.iter().zip(&y).map(|(a, b)| a + m * b).collect();
    let h2z = cech_complex(h, &z, 3)?.cohomology_subquotient(2);
    let c = h2z.coords(&x).expect("integral lift is a cocycle");
    let Order::Finite(k) = h2z.group().element_order(&c) else { return Ok(None) };
    let kx: Vec<Int> = x.iter().map(|v| v * &k).collect();
    let theta = solve(&coboundary(h, &z, 1), &kx).expect("k·x is a coboundary");
    let mk = m * &k;
    let e = AbPresheaf::constant(site, &FgAbGroup::cyclic(mk.clone()));
    let inclusion = (0..site.len())
        .map(|u| if site.is_empty_open(u) { Matrix::zeros(0, 0) } else { Matrix::from_vec(1, 1, vec![k.clone()]) })
        .collect();
    let theta = theta.into_iter().map(|t| ((t % &mk) + &mk) % &mk).collect();
    Gluing::new(&f, e, inclusion, theta).map(Some)
}

/// The coefficient `n` of a `0`-cocycle `n·1` of the constant `ℤ`, or `None` if not constant.
pub(crate) fn constant_multiple(h: &OneHypercover, c: &[Int]) -> Option<Int> {
    let site = h.site();
    let mut val: Option<Int> = None;
    let mut k = 0;
    for i in 0..h.count(0) {
        if site.is_empty_open(h.open(0, i)) {
            continue;
        }
        match &val {
            None => val = Some(c[k].clone()),
            Some(v) if *v != c[k] => return None,
            _ => {}
        }
        k += 1;
    }
    Some(val.unwrap_or_else(Int::zero))
}

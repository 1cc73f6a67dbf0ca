//! First-quadrant double complexes and their totalization.
//!
//! Groups sit at `(s, t)` with `0 ≤ s ≤ S` (horizontal, cohomological) and
//! `0 ≤ t ≤ T` (vertical, homological). `d_h` raises `s`, `d_v` lowers `t`,
//! and they commute. The total complex lives in degree `n = s - t` with
//! `d = d_h + (-1)^s d_v`.

use crate::complexes::cochain::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{AbHom, FgAbGroup, Lattice, Matrix};
use crate::{Int, IntMatrix};

#[derive(Clone, Debug)]
pub struct DoubleComplex {
    s_max: usize,
    t_max: usize,
    /// `groups[s][t]`.
    groups: Vec<Vec<FgAbGroup>>,
    /// `dh[s][t]: (s, t) → (s+1, t)` for `s < S`.
    dh: Vec<Vec<IntMatrix>>,
    /// `dv[s][t]: (s, t) → (s, t-1)` for `t ≥ 1`; `dv[s][0]` is the empty map to zero.
    dv: Vec<Vec<IntMatrix>>,
}

/// Where a `(s, t)` block sits inside a total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub s: usize,
    pub t: usize,
    pub offset: usize,
    pub dim: usize,
}

impl DoubleComplex {
    /// `groups[s][t]`, `dh[s][t]` for `s < S`, `dv[s][t]` for `t ≥ 1` (index `t-1`).
    pub fn new(
        groups: Vec<Vec<FgAbGroup>>,
        dh: Vec<Vec<IntMatrix>>,
        dv: Vec<Vec<IntMatrix>>,
    ) -> Result<Self> {
        let cols = groups.len();
        if cols == 0 {
            return Err(Error::Dimension("double complex needs at least one column".into()));
        }
        let rows = groups[0].len();
        if rows == 0 || groups.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("columns must have equal, positive height".into()));
        }
        if dh.len() + 1 != cols || dh.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("need S horizontal maps per row".into()));
        }
        if dv.len() != cols || dv.iter().any(|c| c.len() + 1 != rows) {
            return Err(Error::Dimension("need T vertical maps per column".into()));
        }
        let (s_max, t_max) = (cols - 1, rows - 1);
        let mut dv_full = Vec::with_capacity(cols);
        for (s, col) in dv.into_iter().enumerate() {
            let mut c = Vec::with_capacity(rows);
            c.push(Matrix::zeros(0, groups[s][0].ambient_rank()));
            c.extend(col);
            dv_full.push(c);
        }
        let d = DoubleComplex { s_max, t_max, groups, dh, dv: dv_full };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        for s in 0..=self.s_max {
            for t in 0..=self.t_max {
                if s < self.s_max {
                    AbHom::new(self.group(s, t).clone(), self.group(s + 1, t).clone(), self.dh(s, t).clone())?;
                }
                if t > 0 {
                    AbHom::new(self.group(s, t).clone(), self.group(s, t - 1).clone(), self.dv(s, t).clone())?;
                }
                let n = s as i64 - t as i64;
                if s + 1 < self.s_max {
                    let hh = self.dh(s + 1, t).mul(self.dh(s, t));
                    if !self.maps_to_zero(&hh, s + 2, t) {
                        return Err(Error::NotAComplex { degree: n });
                    }
                }
                if t >= 2 {
                    let vv = self.dv(s, t - 1).mul(self.dv(s, t));
                    if !self.maps_to_zero(&vv, s, t - 2) {
                        return Err(Error::NotAComplex { degree: n });
                    }
                }
                if s < self.s_max && t > 0 {
                    let hv = self.dv(s + 1, t).mul(self.dh(s, t));
                    let vh = self.dh(s, t - 1).mul(self.dv(s, t));
                    if !self.maps_to_zero(&hv.sub(&vh), s + 1, t - 1) {
                        return Err(Error::NotAChainMap { degree: n });
                    }
                }
            }
        }
        Ok(())
    }

    fn maps_to_zero(&self, m: &IntMatrix, s: usize, t: usize) -> bool {
        let g = self.group(s, t);
        (0..m.cols()).all(|j| g.is_zero_element(&m.column(j)))
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn group(&self, s: usize, t: usize) -> &FgAbGroup {
        &self.groups[s][t]
    }

    pub fn dim(&self, s: usize, t: usize) -> usize {
        self.groups[s][t].ambient_rank()
    }

    pub fn dh(&self, s: usize, t: usize) -> &IntMatrix {
        &self.dh[s][t]
    }

    pub fn dv(&self, s: usize, t: usize) -> &IntMatrix {
        &self.dv[s][t]
    }

    /// Column `s` as a cochain complex in degree `-t`.
    pub fn column(&self, s: usize) -> CochainComplex {
        let t_max = self.t_max as i64;
        let levels = (0..=self.t_max).rev().map(|t| self.groups[s][t].clone()).collect();
        let mats = (1..=self.t_max).rev().map(|t| self.dv(s, t).clone()).collect();
        CochainComplex::new_unchecked(-t_max, levels, mats)
    }

    /// Row `t` as a cochain complex in degree `s`.
    pub fn row(&self, t: usize) -> CochainComplex {
        let levels = (0..=self.s_max).map(|s| self.groups[s][t].clone()).collect();
        let mats = (0..self.s_max).map(|s| self.dh(s, t).clone()).collect();
        CochainComplex::new_unchecked(0, levels, mats)
    }

    pub fn tot_lo(&self) -> i64 {
        -(self.t_max as i64)
    }

    pub fn tot_hi(&self) -> i64 {
        self.s_max as i64
    }

    /// Blocks of total degree `n`, ordered by increasing `s`.
    pub fn blocks(&self, n: i64) -> Vec<Block> {
        let mut out = Vec::new();
        let mut offset = 0;
        for s in 0..=self.s_max {
            let t = s as i64 - n;
            if t < 0 || t > self.t_max as i64 {
                continue;
            }
            let t = t as usize;
            let dim = self.dim(s, t);
            out.push(Block { s, t, offset, dim });
            offset += dim;
        }
        out
    }

    pub fn tot_dim(&self, n: i64) -> usize {
        self.blocks(n).iter().map(|b| b.dim).sum()
    }

    /// The block of `(s, t)` within its total degree.
    pub fn block(&self, s: usize, t: usize) -> Block {
        let n = s as i64 - t as i64;
        *self.blocks(n).iter().find(|b| b.s == s).expect("block in range")
    }

    fn tot_group(&self, n: i64) -> FgAbGroup {
        let blocks = self.blocks(n);
        let dim: usize = blocks.iter().map(|b| b.dim).sum();
        let mut rels: Vec<IntMatrix> = Vec::new();
        let mut total_cols = 0;
        for b in &blocks {
            total_cols += self.group(b.s, b.t).relations().cols();
            rels.push(self.group(b.s, b.t).relations().clone());
        }
        let mut m = Matrix::zeros(dim, total_cols);
        let mut c0 = 0;
        for (b, r) in blocks.iter().zip(&rels) {
            m.set_block(b.offset, c0, r);
            c0 += r.cols();
        }
        FgAbGroup::new(m)
    }

    fn tot_diff(&self, n: i64) -> IntMatrix {
        let src = self.blocks(n);
        let tgt = self.blocks(n + 1);
        let rows: usize = tgt.iter().map(|b| b.dim).sum();
        let cols: usize = src.iter().map(|b| b.dim).sum();
        let mut m = Matrix::zeros(rows, cols);
        for b in &src {
            if b.s < self.s_max {
                if let Some(tb) = tgt.iter().find(|x| x.s == b.s + 1) {
                    m.set_block(tb.offset, b.offset, self.dh(b.s, b.t));
                }
            }
            if b.t > 0 {
                if let Some(tb) = tgt.iter().find(|x| x.s == b.s) {
                    let sign = if b.s % 2 == 0 { Int::from(1) } else { Int::from(-1) };
                    m.set_block(tb.offset, b.offset, &self.dv(b.s, b.t).scale(&sign));
                }
            }
        }
        m
    }

    /// `Totⁿ = ⊕_{s-t=n} C^{s,t}` with `d = d_h + (-1)^s d_v`.
    pub fn total_complex(&self) -> CochainComplex {
        let (lo, hi) = (self.tot_lo(), self.tot_hi());
        let levels = (lo..=hi).map(|n| self.tot_group(n)).collect();
        let mats = (lo..hi).map(|n| self.tot_diff(n)).collect();
        CochainComplex::new_unchecked(lo, levels, mats)
    }

    /// Embeds a vector of block `(s, t)` into its total degree.
    pub fn embed(&self, s: usize, t: usize, x: &[Int]) -> Vec<Int> {
        let n = s as i64 - t as i64;
        let b = self.block(s, t);
        let mut v = vec![Int::from(0); self.tot_dim(n)];
        v[b.offset..b.offset + b.dim].clone_from_slice(x);
        v
    }

    /// Sublattice of `Totⁿ` spanned by the whole of the listed blocks plus
    /// `extra` vectors given per block, together with the relations.
    pub(crate) fn tot_lattice(&self, n: i64, whole: impl Fn(&Block) -> bool, part: impl Fn(&Block) -> Option<Lattice>) -> Lattice {
        let dim = self.tot_dim(n);
        let mut gens: Vec<Vec<Int>> = Vec::new();
        for b in self.blocks(n) {
            if whole(&b) {
                for k in 0..b.dim {
                    let mut v = vec![Int::from(0); dim];
                    v[b.offset + k] = Int::from(1);
                    gens.push(v);
                }
            } else if let Some(l) = part(&b) {
                for row in l.basis_vectors() {
                    let mut v = vec![Int::from(0); dim];
                    v[b.offset..b.offset + b.dim].clone_from_slice(&row);
                    gens.push(v);
                }
            }
        }
        let rel = self.tot_group(n).relation_lattice().clone();
        Lattice::from_vectors(dim, &gens).sum(&rel)
    }

    /// Vertical cycles at `(s, t)`, containing the relations.
    pub fn vertical_cycles(&self, s: usize, t: usize) -> Lattice {
        if t == 0 {
            return Lattice::full(self.dim(s, 0));
        }
        self.group(s, t - 1).relation_lattice().preimage(self.dv(s, t))
    }
}

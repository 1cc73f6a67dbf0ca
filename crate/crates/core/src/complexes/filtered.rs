//! Decreasing filtrations of cochain complexes and their spectral sequences.
//!
//! A filtration index `p` and a total degree `n` are reported at
//! `(s, t) = (p, p - n)`, so that `d_r` has bidegree `(r, r - 1)`.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::complexes::cochain::CochainComplex;
use crate::complexes::double::DoubleComplex;
use crate::complexes::page::Page;
use crate::error::{Error, Result};
use crate::linalg::{AbHom, Lattice, Subquotient};

/// A complex with a finite decreasing filtration by subcomplexes.
///
/// `F^p` is the whole complex for `p ≤ p_lo` and zero for `p > p_hi`. Every
/// stored lattice contains the relations of its level.
#[derive(Debug)]
pub struct FilteredComplex {
    complex: CochainComplex,
    p_lo: i64,
    /// `filt[p - p_lo][n - lo]` for `p_lo ≤ p ≤ p_hi`.
    filt: Vec<Vec<Lattice>>,
    z_cache: Mutex<HashMap<(i64, i64, i64), Lattice>>,
}

impl Clone for FilteredComplex {
    fn clone(&self) -> Self {
        FilteredComplex {
            complex: self.complex.clone(),
            p_lo: self.p_lo,
            filt: self.filt.clone(),
            z_cache: Mutex::new(HashMap::new()),
        }
    }
}

/// `(s, t)` of filtration index `p` in total degree `n`.
pub fn tower_coords(p: i64, n: i64) -> (i64, i64) {
    (p, p - n)
}

/// Inverse of [`tower_coords`]: `(p, n)`.
pub fn filtration_coords(s: i64, t: i64) -> (i64, i64) {
    (s, s - t)
}

impl FilteredComplex {
    /// `levels[k][n - lo]` generates `F^{p_lo + k}` in degree `n` (columns).
    ///
    /// The first level must be everything; the filtration must decrease and
    /// be preserved by the differential.
    pub fn new(complex: CochainComplex, p_lo: i64, levels: Vec<Vec<Lattice>>) -> Result<Self> {
        let width = complex.degrees().count();
        if levels.is_empty() {
            return Err(Error::Dimension("filtration needs at least one level".into()));
        }
        let mut filt = Vec::with_capacity(levels.len());
        for (k, lv) in levels.into_iter().enumerate() {
            if lv.len() != width {
                return Err(Error::Dimension(format!("filtration level {} has {} degrees, expected {width}", k, lv.len())));
            }
            let row: Vec<Lattice> = lv
                .into_iter()
                .zip(complex.degrees())
                .map(|(l, n)| l.sum(&complex.relation_lattice(n)))
                .collect();
            filt.push(row);
        }
        let f = FilteredComplex { complex, p_lo, filt, z_cache: Mutex::new(HashMap::new()) };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let c = &self.complex;
        for n in c.degrees() {
            if self.f(self.p_lo, n) != Lattice::full(c.dim(n)) {
                return Err(Error::FiltrationNotPreserved { degree: n, level: self.p_lo });
            }
            for p in self.p_lo..=self.p_hi() + 1 {
                if !self.f(p, n).contains_lattice(&self.f(p + 1, n)) {
                    return Err(Error::FiltrationNotPreserved { degree: n, level: p + 1 });
                }
                let d = c.diff_matrix(n);
                let img: Vec<Vec<_>> = self.f(p, n).basis_vectors().iter().map(|v| d.mul_vec(v)).collect();
                if !self.f(p, n + 1).contains_all(img.iter().map(Vec::as_slice)) {
                    return Err(Error::FiltrationNotPreserved { degree: n, level: p });
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn p_lo(&self) -> i64 {
        self.p_lo
    }

    pub fn p_hi(&self) -> i64 {
        self.p_lo + self.filt.len() as i64 - 1
    }

    /// `F^p` in degree `n`, relations included.
    pub fn f(&self, p: i64, n: i64) -> Lattice {
        let c = &self.complex;
        if n < c.lo() || n > c.hi() {
            return Lattice::zero(0);
        }
        let k = (n - c.lo()) as usize;
        if p <= self.p_lo {
            self.filt[0][k].clone()
        } else if p > self.p_hi() {
            c.relation_lattice(n)
        } else {
            self.filt[(p - self.p_lo) as usize][k].clone()
        }
    }

    /// Page index from which the spectral sequence is constant.
    pub fn stable_page(&self) -> usize {
        (self.p_hi() - self.p_lo + 1).max(1) as usize
    }

    /// `Z_r^{p,n} = {x ∈ F^p : dx ∈ F^{p+r}}`.
    pub fn z(&self, r: i64, p: i64, n: i64) -> Lattice {
        let key = (r, p, n);
        if let Some(l) = self.z_cache.lock().unwrap().get(&key) {
            return l.clone();
        }
        let fp = self.f(p, n);
        let bf = fp.basis_columns();
        let dbf = self.complex.diff_matrix(n).mul(&bf);
        let pre = self.f(p + r, n + 1).preimage(&dbf);
        let z = Lattice::from_columns(&bf.mul(&pre.basis_columns()));
        self.z_cache.lock().unwrap().insert(key, z.clone());
        z
    }

    /// `d Z_{r-1}^{p-r+1, n-1} + F^{p+1}_n`.
    pub fn b(&self, r: i64, p: i64, n: i64) -> Lattice {
        let z = self.z(r - 1, p - r + 1, n - 1);
        z.image(&self.complex.diff_matrix(n - 1)).sum(&self.f(p + 1, n))
    }

    /// `E_r^{p,n} = (Z_r + F^{p+1}) / (dZ_{r-1}^{p-r+1} + F^{p+1})` on the `Z_r` basis.
    pub fn term(&self, r: i64, p: i64, n: i64) -> Subquotient {
        let z = self.z(r, p, n);
        Subquotient::new(self.complex.level(n), z.basis_columns(), self.b(r, p, n))
    }

    /// Page `r ≥ 1` in `(s, t)` coordinates.
    pub fn page(&self, r: usize) -> Page {
        assert!(r >= 1, "pages start at r = 1");
        let ri = r as i64;
        let mut page = Page::new(r);
        for p in self.p_lo..=self.p_hi() {
            for n in self.complex.degrees() {
                page.terms.insert(tower_coords(p, n), self.term(ri, p, n));
            }
        }
        let keys: Vec<_> = page.terms.keys().copied().collect();
        for (s, t) in keys {
            let (s2, t2) = page.target_of(s, t);
            let Some(tgt) = page.terms.get(&(s2, t2)) else { continue };
            let src = &page.terms[&(s, t)];
            let (_, n) = filtration_coords(s, t);
            let images = self.complex.diff_matrix(n).mul(src.gens());
            let m = tgt.coords_matrix(&images).expect("d maps Z_r into Z_r");
            page.diffs.insert((s, t), AbHom::new_unchecked(src.group().clone(), tgt.group().clone(), m));
        }
        page
    }

    pub fn pages(&self, r_max: usize) -> Vec<Page> {
        (1..=r_max).map(|r| self.page(r)).collect()
    }

    /// `E_∞`.
    pub fn infinity_page(&self) -> Page {
        self.page(self.stable_page())
    }

    /// Induced filtration on `Hⁿ`: the lattice `(F^p ∩ Zⁿ) + Bⁿ` in the ambient of `Cⁿ`.
    pub fn induced_filtration(&self, p: i64, n: i64) -> Lattice {
        let z = self.complex.cycles(n);
        self.f(p, n).intersection(&z).sum(&self.complex.boundaries(n))
    }

    /// `F^p Hⁿ` as a subgroup of `Hⁿ`.
    pub fn abutment_piece(&self, p: i64, n: i64) -> Subquotient {
        let l = self.induced_filtration(p, n);
        Subquotient::new(self.complex.level(n), l.basis_columns(), self.complex.boundaries(n))
    }

    /// Graded piece `F^p Hⁿ / F^{p+1} Hⁿ`.
    pub fn abutment_graded(&self, p: i64, n: i64) -> Subquotient {
        let l = self.induced_filtration(p, n);
        Subquotient::new(self.complex.level(n), l.basis_columns(), self.induced_filtration(p + 1, n))
    }
}

/// Filtration of the total complex by columns `s ≥ p`.
pub fn skeletal_filtration(d: &DoubleComplex) -> FilteredComplex {
    let tot = d.total_complex();
    let levels = (0..=d.s_max() as i64)
        .map(|p| tot.degrees().map(|n| d.tot_lattice(n, |b| b.s as i64 >= p, |_| None)).collect())
        .collect();
    FilteredComplex::new(tot, 0, levels).expect("column filtration is a filtration by subcomplexes")
}

/// Columnwise canonical truncation `τ_{≥t}`: rows above `t`, vertical cycles in row `t`.
pub fn truncation_filtration(d: &DoubleComplex) -> FilteredComplex {
    let tot = d.total_complex();
    let levels = (0..=d.t_max())
        .map(|p| {
            tot.degrees()
                .map(|n| {
                    d.tot_lattice(
                        n,
                        |b| b.t > p,
                        |b| if b.t == p { Some(d.vertical_cycles(b.s, b.t)) } else { None },
                    )
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(tot, 0, levels).expect("canonical truncation is a filtration by subcomplexes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{FgAbGroup, Invariants, Matrix};
    use crate::{Int, IntMatrix};

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    fn m(v: i64) -> IntMatrix {
        Matrix::from_rows(&[[v]])
    }

    #[test]
    fn single_jump_collapses() {
        let c = CochainComplex::new(0, vec![z(), z()], vec![m(2)]).unwrap();
        let f = FilteredComplex::new(c.clone(), 0, vec![vec![Lattice::full(1), Lattice::full(1)]]).unwrap();
        let e1 = f.page(1);
        assert!(e1.invariants(0, 0).is_trivial());
        assert_eq!(e1.invariants(0, -1), Invariants { torsion: vec![Int::from(2)], rank: 0 });
        assert_eq!(f.stable_page(), 1);
    }

    #[test]
    fn rejects_non_subcomplex() {
        let c = CochainComplex::new(0, vec![z(), z()], vec![m(1)]).unwrap();
        let err = FilteredComplex::new(
            c,
            0,
            vec![vec![Lattice::full(1), Lattice::full(1)], vec![Lattice::full(1), Lattice::zero(1)]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::FiltrationNotPreserved { .. }));
    }

    #[test]
    fn two_step_filtration_has_d1() {
        // Z --2--> Z, filtered with F^1 = degree 1 only
        let c = CochainComplex::new(0, vec![z(), z()], vec![m(2)]).unwrap();
        let f = FilteredComplex::new(
            c,
            0,
            vec![vec![Lattice::full(1), Lattice::full(1)], vec![Lattice::zero(1), Lattice::full(1)]],
        )
        .unwrap();
        let e1 = f.page(1);
        // E_1^{0,0} = Z (degree 0), E_1^{1,0} = Z (degree 1), d_1 = 2
        assert_eq!(e1.invariants(0, 0), Invariants { torsion: vec![], rank: 1 });
        assert_eq!(e1.invariants(1, 0), Invariants { torsion: vec![], rank: 1 });
        let e2 = f.page(2);
        assert!(e2.invariants(0, 0).is_trivial());
        assert_eq!(e2.invariants(1, 0), Invariants { torsion: vec![Int::from(2)], rank: 0 });
        assert_eq!(e1.homology_at(1, 0).invariants(), e2.invariants(1, 0));
    }
}

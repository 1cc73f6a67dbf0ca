//! The homotopy-limit and Postnikov spectral sequences of a cosimplicial chain complex,
//! and their comparison from `E₂` on.
//!
//! Both are spectral sequences of filtrations of the same total complex: the
//! skeletal filtration by columns and the columnwise canonical truncation by
//! rows. Elements are compared by chasing total-complex representatives.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::complexes::{skeletal_filtration, truncation_filtration, DoubleComplex, FilteredComplex, Page};
use crate::cosimplicial::{cobar, CosimplicialAbGroup, GroupModule};
use crate::error::{Error, Result};
use crate::exact_couple::reindex_tilde;
use crate::linalg::{AbHom, FgAbGroup, Invariants, Matrix, Subquotient};
use crate::IntMatrix;

/// Rows `X_t` (`0 ≤ t ≤ T`) of cosimplicial abelian groups truncated at `S`, with
/// vertical differentials `X_t^s → X_{t-1}^s` commuting with all structure maps.
#[derive(Clone, Debug)]
pub struct CosimplicialChainComplex {
    rows: Vec<CosimplicialAbGroup>,
    /// `vertical[t - 1][s]`.
    vertical: Vec<Vec<AbHom>>,
}

impl CosimplicialChainComplex {
    pub fn new(rows: Vec<CosimplicialAbGroup>, vertical: Vec<Vec<IntMatrix>>) -> Result<Self> {
        if rows.is_empty() || vertical.len() + 1 != rows.len() {
            return Err(Error::Dimension("T + 1 rows need T vertical families".into()));
        }
        let s_max = rows[0].truncation();
        if rows.iter().any(|r| r.truncation() != s_max) {
            return Err(Error::Dimension("rows must share the truncation".into()));
        }
        let mut vert = Vec::new();
        for (k, fam) in vertical.into_iter().enumerate() {
            let t = k + 1;
            if fam.len() != s_max + 1 {
                return Err(Error::Dimension(format!("vertical family {t} needs {} maps", s_max + 1)));
            }
            let homs = fam
                .into_iter()
                .enumerate()
                .map(|(s, m)| AbHom::new(rows[t].level(s).clone(), rows[t - 1].level(s).clone(), m))
                .collect::<Result<Vec<_>>>()?;
            vert.push(homs);
        }
        let x = CosimplicialChainComplex { rows, vertical: vert };
        x.check()?;
        Ok(x)
    }

    fn check(&self) -> Result<()> {
        let (s_max, t_max) = (self.s_max(), self.t_max());
        for t in 1..=t_max {
            for s in 0..=s_max {
                if t >= 2 && !self.vertical(s, t).then(self.vertical(s, t - 1)).is_zero() {
                    return Err(Error::NotAComplex { degree: s as i64 - t as i64 });
                }
                if s >= 1 {
                    for i in 0..=s {
                        let a = self.rows[t].coface(s, i).then(self.vertical(s, t));
                        let b = self.vertical(s - 1, t).then(self.rows[t - 1].coface(s, i));
                        if !a.equals(&b) {
                            return Err(Error::CosimplicialIdentity { identity: format!("d_v d^{i} = d^{i} d_v at t = {t}"), level: s });
                        }
                    }
                }
                if s < s_max {
                    for i in 0..=s {
                        let a = self.rows[t].codegeneracy(s, i).then(self.vertical(s, t));
                        let b = self.vertical(s + 1, t).then(self.rows[t - 1].codegeneracy(s, i));
                        if !a.equals(&b) {
                            return Err(Error::CosimplicialIdentity { identity: format!("d_v s^{i} = s^{i} d_v at t = {t}"), level: s });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Rows `cobar(G; M_t)` with vertical maps induced by `maps[t - 1]: M_t → M_{t-1}`.
    pub fn from_modules(modules: &[GroupModule], maps: &[IntMatrix], s_max: usize) -> Result<Self> {
        let rows = modules.iter().map(|m| cobar(m, s_max)).collect::<Result<Vec<_>>>()?;
        Self::from_rows_and_module_maps(rows, modules.iter().map(|m| m.module.ambient_rank()).collect(), maps)
    }

    /// Rows whose level `s` is a direct sum of copies of `M_t`, with the
    /// vertical map acting blockwise by `maps[t - 1]`.
    pub fn from_rows_and_module_maps(rows: Vec<CosimplicialAbGroup>, ranks: Vec<usize>, maps: &[IntMatrix]) -> Result<Self> {
        let s_max = rows.first().map_or(0, |r| r.truncation());
        let vertical = (1..rows.len())
            .map(|t| {
                (0..=s_max)
                    .map(|s| {
                        let copies = rows[t].level(s).ambient_rank() / ranks[t].max(1);
                        let mut m = Matrix::zeros(rows[t - 1].level(s).ambient_rank(), rows[t].level(s).ambient_rank());
                        if ranks[t] > 0 && ranks[t - 1] > 0 {
                            for c in 0..copies {
                                m.set_block(c * ranks[t - 1], c * ranks[t], &maps[t - 1]);
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        Self::new(rows, vertical)
    }

    pub fn s_max(&self) -> usize {
        self.rows[0].truncation()
    }

    pub fn t_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, t: usize) -> &CosimplicialAbGroup {
        &self.rows[t]
    }

    /// `X_t^s → X_{t-1}^s`.
    pub fn vertical(&self, s: usize, t: usize) -> &AbHom {
        &self.vertical[t - 1][s]
    }

    /// Groups `X_t^s` at `(s, t)`, `d_h = Σ(-1)ⁱ∂ⁱ`, `d_v` the vertical differential.
    pub fn double_complex(&self) -> DoubleComplex {
        let (s_max, t_max) = (self.s_max(), self.t_max());
        let groups = (0..=s_max).map(|s| (0..=t_max).map(|t| self.rows[t].level(s).clone()).collect()).collect();
        let dh = (0..s_max).map(|s| (0..=t_max).map(|t| self.rows[t].differential(s)).collect()).collect();
        let dv = (0..=s_max).map(|s| (1..=t_max).map(|t| self.vertical(s, t).matrix().clone()).collect()).collect();
        DoubleComplex::new(groups, dh, dv).expect("cosimplicial chain complexes give double complexes")
    }

    /// Vertical homology at `(s, t)` as a subquotient of `X_t^s`.
    pub fn vertical_homology(&self, s: usize, t: usize) -> Subquotient {
        let g = self.rows[t].level(s).clone();
        let cycles = if t == 0 { crate::linalg::Lattice::full(g.ambient_rank()) } else { self.vertical(s, t).kernel_lattice() };
        let bounds = if t < self.t_max() {
            self.vertical(s, t + 1).image_lattice()
        } else {
            g.relation_lattice().clone()
        };
        Subquotient::new(g, cycles.basis_columns(), bounds)
    }

    /// The cosimplicial abelian group `s ↦ H_t(X^s)`.
    pub fn homotopy_row(&self, t: usize) -> CosimplicialAbGroup {
        let s_max = self.s_max();
        let h: Vec<Subquotient> = (0..=s_max).map(|s| self.vertical_homology(s, t)).collect();
        let induced = |f: &AbHom, src: usize, tgt: usize| -> IntMatrix {
            h[tgt].coords_matrix(&f.matrix().mul(h[src].gens())).expect("structure maps commute with d_v")
        };
        let row = &self.rows[t];
        let cofaces = (1..=s_max).map(|n| (0..=n).map(|i| induced(row.coface(n, i), n - 1, n)).collect()).collect();
        let codegs = (0..s_max).map(|n| (0..=n).map(|i| induced(row.codegeneracy(n, i), n + 1, n)).collect()).collect();
        CosimplicialAbGroup::new(h.iter().map(|x| x.group().clone()).collect(), cofaces, codegs)
            .expect("homology of a cosimplicial chain complex is cosimplicial")
    }
}

/// Pages `E₁..E_rmax` of the skeletal filtration.
pub fn holim_ss(x: &CosimplicialChainComplex, rmax: usize) -> Vec<Page> {
    skeletal_filtration(&x.double_complex()).pages(rmax)
}

/// Pages `Ẽ₂..Ẽ_rmax` of the truncation filtration, reindexed by `Ẽ^{s,t}_{r+1} = E_r^{t, 2t-s}`.
pub fn postnikov_ss(x: &CosimplicialChainComplex, rmax: usize) -> Vec<Page> {
    assert!(rmax >= 2, "the reindexed sequence starts at r = 2");
    truncation_filtration(&x.double_complex()).pages(rmax - 1).iter().map(reindex_tilde).collect()
}

/// Whether `E₁` of the two filtrations differ at some `(s, t)` (before reindexing).
pub fn e1_terms_differ(x: &CosimplicialChainComplex) -> bool {
    let d = x.double_complex();
    let a = skeletal_filtration(&d).page(1);
    let b = truncation_filtration(&d).page(1);
    let keys: BTreeSet<_> = a.terms.keys().chain(b.terms.keys()).copied().collect();
    keys.into_iter().any(|(s, t)| a.invariants(s, t) != b.invariants(s, t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermVerdict {
    pub r: usize,
    pub s: i64,
    pub t: i64,
    pub hl: Invariants,
    pub po: Invariants,
}

impl TermVerdict {
    pub fn pass(&self) -> bool {
        self.hl == self.po
    }
}

/// Images of `d_r` leaving `(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffVerdict {
    pub r: usize,
    pub s: i64,
    pub t: i64,
    pub hl: Invariants,
    pub po: Invariants,
}

impl DiffVerdict {
    pub fn pass(&self) -> bool {
        self.hl == self.po
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepFailure {
    /// A Postnikov generator's representative is not an `r`-cycle of the skeletal filtration.
    NotRepresented { generator: usize },
    /// Relations of the Postnikov term are not sent to zero.
    IllDefined { generator: usize },
    NotIsomorphism,
    NotCommuting,
}

impl fmt::Display for RepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepFailure::NotRepresented { generator } => write!(f, "unrepresented gen={generator}"),
            RepFailure::IllDefined { generator } => write!(f, "ill-defined relation={generator}"),
            RepFailure::NotIsomorphism => write!(f, "not-iso"),
            RepFailure::NotCommuting => write!(f, "not-commuting"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepVerdict {
    pub r: usize,
    pub s: i64,
    pub t: i64,
    pub failure: Option<RepFailure>,
}

/// `F^s Hⁿ` of the skeletal filtration against the shifted truncation filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbutmentVerdict {
    pub n: i64,
    pub s: i64,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub rmax: usize,
    pub terms: Vec<TermVerdict>,
    pub diffs: Vec<DiffVerdict>,
    pub reps: Vec<RepVerdict>,
    pub abutment: Vec<AbutmentVerdict>,
}

impl ComparisonReport {
    pub fn all_pass(&self) -> bool {
        self.terms.iter().all(|v| v.pass())
            && self.diffs.iter().all(|v| v.pass())
            && self.reps.iter().all(|v| v.failure.is_none())
            && self.abutment.iter().all(|v| v.equal)
    }

    /// The first failing line, if any.
    pub fn first_failure(&self) -> Option<String> {
        self.to_text().lines().find(|l| l.ends_with("FAIL") || l.contains(" FAIL ")).map(str::to_string)
    }

    /// Largest `r` with a nonzero `d_r` on the holim side.
    pub fn max_nonzero_differential(&self) -> Option<usize> {
        self.diffs.iter().filter(|d| !d.hl.is_trivial()).map(|d| d.r).max()
    }

    /// One line per verdict, in a fixed order.
    pub fn to_text(&self) -> String {
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        let mut out = String::new();
        for v in &self.terms {
            writeln!(out, "term r={} s={} t={} hl={} po={} {}", v.r, v.s, v.t, v.hl, v.po, verdict(v.pass())).unwrap();
        }
        for v in &self.diffs {
            writeln!(out, "d r={} s={} t={} hl={} po={} {}", v.r, v.s, v.t, v.hl, v.po, verdict(v.pass())).unwrap();
        }
        for v in &self.reps {
            match &v.failure {
                None => writeln!(out, "rep r={} s={} t={} pass", v.r, v.s, v.t).unwrap(),
                Some(f) => writeln!(out, "rep r={} s={} t={} {} FAIL", v.r, v.s, v.t, f).unwrap(),
            }
        }
        for v in &self.abutment {
            writeln!(out, "abutment n={} s={} {}", v.n, v.s, verdict(v.equal)).unwrap();
        }
        writeln!(out, "all {}", verdict(self.all_pass())).unwrap();
        out
    }
}

/// Compares the two spectral sequences for `2 ≤ r ≤ rmax`.
pub fn compare_from_e2(x: &CosimplicialChainComplex, rmax: usize) -> ComparisonReport {
    let d = x.double_complex();
    let hl = skeletal_filtration(&d);
    let po = truncation_filtration(&d);
    compare_filtrations(&hl, &po, rmax)
}

/// The comparison on two filtrations of one complex, the second playing the décalage of the first.
pub fn compare_filtrations(hl: &FilteredComplex, po: &FilteredComplex, rmax: usize) -> ComparisonReport {
    assert!(rmax >= 2);
    let mut report = ComparisonReport { rmax, terms: Vec::new(), diffs: Vec::new(), reps: Vec::new(), abutment: Vec::new() };
    for r in 2..=rmax {
        let hp = hl.page(r);
        let pp = reindex_tilde(&po.page(r - 1));
        let keys: BTreeSet<(i64, i64)> = hp.support().into_iter().chain(pp.support()).collect();
        for &(s, t) in &keys {
            report.terms.push(TermVerdict { r, s, t, hl: hp.invariants(s, t), po: pp.invariants(s, t) });
        }
        for &(s, t) in &keys {
            report.diffs.push(DiffVerdict { r, s, t, hl: hp.d_image(s, t), po: pp.d_image(s, t) });
        }
        report.reps.extend(representative_check(&hp, &pp, &keys));
    }
    let c = hl.complex();
    for n in c.degrees() {
        for s in hl.p_lo()..=hl.p_hi() + 1 {
            let a = hl.induced_filtration(s, n);
            let b = po.induced_filtration(s - n, n);
            report.abutment.push(AbutmentVerdict { n, s, equal: a == b });
        }
    }
    report
}

fn term_or_trivial(p: &Page, s: i64, t: i64) -> Option<&Subquotient> {
    p.terms.get(&(s, t))
}

/// Builds `φ: Ẽ_r → ^{HL}E_r` from Postnikov representatives and checks it.
fn representative_check(hp: &Page, pp: &Page, keys: &BTreeSet<(i64, i64)>) -> Vec<RepVerdict> {
    let r = hp.r;
    let mut phis = std::collections::BTreeMap::new();
    let mut out = Vec::new();
    for &(s, t) in keys {
        let tgt = hp.group(s, t);
        let src = pp.group(s, t);
        let mut failure = None;
        let mut cols = Vec::new();
        if let Some(sq) = term_or_trivial(pp, s, t) {
            let target_term = term_or_trivial(hp, s, t);
            for (k, g) in sq.gens().columns().enumerate() {
                let c = match target_term {
                    Some(tt) => tt.coords(&g),
                    None => g.iter().all(|v| v == &crate::Int::from(0)).then(Vec::new),
                };
                match c {
                    Some(c) => cols.push(c),
                    None => {
                        failure = Some(RepFailure::NotRepresented { generator: k });
                        break;
                    }
                }
            }
        }
        if failure.is_none() {
            let m = Matrix::from_columns(tgt.ambient_rank(), &cols);
            match AbHom::new(src, tgt, m) {
                Ok(h) => {
                    if !h.is_isomorphism() {
                        failure = Some(RepFailure::NotIsomorphism);
                    }
                    phis.insert((s, t), h);
                }
                Err(Error::IllDefinedHom { witness }) => failure = Some(RepFailure::IllDefined { generator: witness }),
                Err(_) => failure = Some(RepFailure::NotIsomorphism),
            }
        }
        out.push(RepVerdict { r, s, t, failure });
    }
    for v in out.iter_mut() {
        if v.failure.is_some() {
            continue;
        }
        let (s, t) = (v.s, v.t);
        let (s2, t2) = hp.target_of(s, t);
        let phi = &phis[&(s, t)];
        let phi2 = match phis.get(&(s2, t2)) {
            Some(h) => h.clone(),
            None => AbHom::zero(pp.group(s2, t2), hp.group(s2, t2)),
        };
        let left = pp.d(s, t).then(&phi2);
        let right = phi.then(&hp.d(s, t));
        if !left.equals(&right) {
            v.failure = Some(RepFailure::NotCommuting);
        }
    }
    out
}

/// Total-complex cohomology groups, for reference in reports.
pub fn abutment_groups(x: &CosimplicialChainComplex) -> Vec<(i64, FgAbGroup)> {
    let tot = x.double_complex().total_complex();
    tot.degrees().map(|n| (n, tot.cohomology(n).expect("degree in range"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::FiniteGroup;
    use crate::Int;

    fn regular_z2() -> GroupModule {
        let swap = Matrix::from_rows(&[[0, 1], [1, 0]]);
        GroupModule::new(FiniteGroup::cyclic(2), FgAbGroup::free(2), vec![Matrix::identity(2), swap]).unwrap()
    }

    #[test]
    fn one_column_collapses() {
        let z = GroupModule::trivial(FiniteGroup::trivial(), FgAbGroup::free(1));
        let x = CosimplicialChainComplex::from_modules(&[z.clone(), z], &[Matrix::from_rows(&[[3]])], 0).unwrap();
        let pages = holim_ss(&x, 2);
        crate::complexes::pages_agree(&pages[0], &pages[1]).unwrap();
        assert!(compare_from_e2(&x, 3).all_pass());
    }

    #[test]
    fn designed_d2_is_nonzero_and_agrees() {
        // Z[G] --(g-1)--> Z[G]: H_1 = Z·N, H_0 = Z, k-invariant generates H^2(Z/2; Z)
        let gm = regular_z2();
        let g_minus_1 = Matrix::from_rows(&[[-1, 1], [1, -1]]);
        let x = CosimplicialChainComplex::from_modules(&[gm.clone(), gm], &[g_minus_1], 3).unwrap();
        let report = compare_from_e2(&x, 4);
        assert!(report.all_pass(), "{}", report.to_text());
        let hl = holim_ss(&x, 3);
        assert_eq!(hl[1].invariants(0, 0), Invariants { torsion: vec![], rank: 1 });
        assert_eq!(hl[1].d_image(0, 0), Invariants { torsion: vec![Int::from(2)], rank: 0 });
        assert_ne!(hl[1].invariants(0, 0), Invariants::trivial());
        assert_eq!(report.max_nonzero_differential(), Some(2));
    }

    #[test]
    fn homotopy_rows_give_e2() {
        let gm = regular_z2();
        let g_minus_1 = Matrix::from_rows(&[[-1, 1], [1, -1]]);
        let x = CosimplicialChainComplex::from_modules(&[gm.clone(), gm], &[g_minus_1], 3).unwrap();
        let e2 = &holim_ss(&x, 2)[1];
        for t in 0..=1 {
            let row = x.homotopy_row(t);
            for s in 0..3 {
                assert_eq!(e2.invariants(s as i64, t as i64), row.cohomotopy(s).unwrap().invariants(), "s={s} t={t}");
            }
        }
    }
}

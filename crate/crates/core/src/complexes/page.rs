//! Spectral sequence pages.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::linalg::{AbHom, FgAbGroup, Invariants, Lattice, Subquotient};

/// One page `E_r`: a term per `(s, t)` and `d_r: E_r^{s,t} → E_r^{s+r,t+r-1}`.
///
/// Terms are subquotients of some ambient group (a total complex level for
/// filtered complexes, an `E₁` term for exact couples) so that elements can be
/// chased back to representatives. Differentials act on the presented groups.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    pub terms: BTreeMap<(i64, i64), Subquotient>,
    pub diffs: BTreeMap<(i64, i64), AbHom>,
}

impl Page {
    pub fn new(r: usize) -> Self {
        Page { r, terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// `(r, r - 1)`.
    pub fn bidegree(&self) -> (i64, i64) {
        (self.r as i64, self.r as i64 - 1)
    }

    pub fn target_of(&self, s: i64, t: i64) -> (i64, i64) {
        let (a, b) = self.bidegree();
        (s + a, t + b)
    }

    pub fn source_of(&self, s: i64, t: i64) -> (i64, i64) {
        let (a, b) = self.bidegree();
        (s - a, t - b)
    }

    pub fn group(&self, s: i64, t: i64) -> FgAbGroup {
        self.terms.get(&(s, t)).map_or_else(FgAbGroup::trivial, |sq| sq.group().clone())
    }

    pub fn invariants(&self, s: i64, t: i64) -> Invariants {
        self.terms.get(&(s, t)).map_or_else(Invariants::trivial, |sq| sq.invariants())
    }

    /// `d_r` leaving `(s, t)`, zero when either end is absent.
    pub fn d(&self, s: i64, t: i64) -> AbHom {
        match self.diffs.get(&(s, t)) {
            Some(h) => h.clone(),
            None => {
                let (s2, t2) = self.target_of(s, t);
                AbHom::zero(self.group(s, t), self.group(s2, t2))
            }
        }
    }

    /// Isomorphism type of the image of `d_r` leaving `(s, t)`.
    pub fn d_image(&self, s: i64, t: i64) -> Invariants {
        self.d(s, t).image().invariants()
    }

    /// `ker d_r / im d_r` at `(s, t)` on the presented groups.
    pub fn homology_at(&self, s: i64, t: i64) -> FgAbGroup {
        let g = self.group(s, t);
        let out = self.d(s, t);
        let (s0, t0) = self.source_of(s, t);
        let inc = self.d(s0, t0);
        let ker = out.kernel_lattice();
        let im = Lattice::from_columns(inc.matrix()).sum(g.relation_lattice());
        Subquotient::new(g, ker.basis_columns(), im).group().clone()
    }

    /// Checks `d_r ∘ d_r = 0` everywhere; returns the first failing position.
    pub fn check_d_squared(&self) -> Result<(), (i64, i64)> {
        for &(s, t) in self.terms.keys() {
            let (s2, t2) = self.target_of(s, t);
            if !self.d(s, t).then(&self.d(s2, t2)).is_zero() {
                return Err((s, t));
            }
        }
        Ok(())
    }

    /// Positions with a nontrivial term.
    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.iter().filter(|(_, sq)| !sq.invariants().is_trivial()).map(|(&k, _)| k).collect()
    }

    /// Stable text dump: one line per `(s, t)` with the term and the image of `d_r`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for &(s, t) in self.terms.keys() {
            let e = self.invariants(s, t);
            let d = self.d_image(s, t);
            writeln!(out, "r={} s={} t={} E={} d_image={}", self.r, s, t, e, d).unwrap();
        }
        out
    }
}

/// Termwise isomorphism of two pages plus equality of the images of `d_r`.
///
/// Returns the first position where they disagree.
pub fn pages_agree(a: &Page, b: &Page) -> Result<(), (i64, i64)> {
    let keys: std::collections::BTreeSet<_> = a.terms.keys().chain(b.terms.keys()).copied().collect();
    for (s, t) in keys {
        if a.invariants(s, t) != b.invariants(s, t) || a.d_image(s, t) != b.d_image(s, t) {
            return Err((s, t));
        }
    }
    Ok(())
}

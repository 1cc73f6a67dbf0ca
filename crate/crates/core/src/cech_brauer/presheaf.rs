//! Presheaves of finitely generated abelian groups on a finite site.

use std::collections::BTreeMap;

use crate::cech_brauer::site::FiniteSite;
use crate::error::{Error, Result};
use crate::linalg::{AbHom, FgAbGroup, Matrix};
use crate::IntMatrix;

#[derive(Clone, Debug)]
pub struct AbPresheaf {
    values: Vec<FgAbGroup>,
    /// Restriction `F(u) → F(v)` for `v < u`.
    res: BTreeMap<(usize, usize), AbHom>,
}

impl AbPresheaf {
    /// `restrictions` must contain every strictly comparable pair `(u, v)`, `v < u`.
    pub fn new(site: &FiniteSite, values: Vec<FgAbGroup>, restrictions: BTreeMap<(usize, usize), IntMatrix>) -> Result<Self> {
        let n = site.len();
        if values.len() != n {
            return Err(Error::InvalidPresheaf(format!("{} values for {n} opens", values.len())));
        }
        let mut res = BTreeMap::new();
        for u in 0..n {
            for v in 0..n {
                if u == v || !site.leq(v, u) {
                    continue;
                }
                let m = restrictions
                    .get(&(u, v))
                    .cloned()
                    .ok_or_else(|| Error::InvalidPresheaf(format!("missing restriction from {u} to {v}")))?;
                let h = AbHom::new(values[u].clone(), values[v].clone(), m)
                    .map_err(|e| Error::InvalidPresheaf(format!("restriction from {u} to {v}: {e}")))?;
                res.insert((u, v), h);
            }
        }
        if let Some(&(u, v)) = restrictions.keys().find(|k| !res.contains_key(k)) {
            return Err(Error::InvalidPresheaf(format!("restriction from {u} to {v} between incomparable opens")));
        }
        let f = AbPresheaf { values, res };
        for (&(u, v), h) in &f.res {
            for w in 0..n {
                if w != v && site.leq(w, v) && !h.then(&f.res[&(v, w)]).equals(&f.res[&(u, w)]) {
                    return Err(Error::InvalidPresheaf(format!("restrictions {u} → {v} → {w} do not compose")));
                }
            }
        }
        Ok(f)
    }

    /// `g` on nonempty opens, zero on empty ones, identity restrictions.
    pub fn constant(site: &FiniteSite, g: &FgAbGroup) -> Self {
        let n = site.len();
        let values: Vec<FgAbGroup> = (0..n).map(|u| if site.is_empty_open(u) { FgAbGroup::trivial() } else { g.clone() }).collect();
        let mut res = BTreeMap::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && site.leq(v, u) {
                    let m = if site.is_empty_open(v) {
                        Matrix::zeros(0, values[u].ambient_rank())
                    } else {
                        Matrix::identity(g.ambient_rank())
                    };
                    res.insert((u, v), AbHom::new_unchecked(values[u].clone(), values[v].clone(), m));
                }
            }
        }
        AbPresheaf { values, res }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, u: usize) -> &FgAbGroup {
        &self.values[u]
    }

    pub fn values(&self) -> &[FgAbGroup] {
        &self.values
    }

    /// `F(u) → F(v)`; the identity when `u = v`.
    pub fn restriction(&self, u: usize, v: usize) -> AbHom {
        if u == v {
            return AbHom::identity(self.values[u].clone());
        }
        self.res
            .get(&(u, v))
            .cloned()
            .unwrap_or_else(|| panic!("no restriction from {u} to {v}"))
    }

    /// All stored restrictions, keyed `(u, v)` with `v < u`.
    pub fn restrictions(&self) -> &BTreeMap<(usize, usize), AbHom> {
        &self.res
    }

    /// Checks that per-open maps `F(u) → G(u)` commute with restrictions.
    pub fn check_morphism(&self, target: &AbPresheaf, maps: &[IntMatrix]) -> Result<Vec<AbHom>> {
        let homs = maps
            .iter()
            .enumerate()
            .map(|(u, m)| {
                AbHom::new(self.values[u].clone(), target.values[u].clone(), m.clone())
                    .map_err(|e| Error::InvalidPresheaf(format!("map on open {u}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        for &(u, v) in self.res.keys() {
            if !self.res[&(u, v)].then(&homs[v]).equals(&homs[u].then(&target.res[&(u, v)])) {
                return Err(Error::InvalidPresheaf(format!("map does not commute with restriction {u} → {v}")));
            }
        }
        Ok(homs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    #[test]
    fn constant_on_subsets() {
        let s = FiniteSite::from_subsets(2, &[vec![0], vec![1]]).unwrap();
        let f = AbPresheaf::constant(&s, &FgAbGroup::cyclic(Int::from(3)));
        let empty = s.open_of(&[]).unwrap();
        assert!(f.value(empty).is_trivial());
        assert!(f.restriction(s.top(), s.open_of(&[0]).unwrap()).is_isomorphism());
    }

    #[test]
    fn noncomposing_restrictions_rejected() {
        let s = FiniteSite::from_subsets(2, &[vec![0], vec![1]]).unwrap();
        let b = s.open_of(&[1]).unwrap();
        let (top, a, e) = (s.top(), s.open_of(&[0]).unwrap(), s.open_of(&[]).unwrap());
        let z = FgAbGroup::free(1);
        let one = Matrix::from_rows(&[[1]]);
        let mut res = BTreeMap::new();
        res.insert((top, a), one.clone());
        res.insert((a, e), one);
        res.insert((top, e), Matrix::from_rows(&[[2]]));
        res.insert((top, b), Matrix::from_rows(&[[1]]));
        res.insert((b, e), Matrix::from_rows(&[[1]]));
        let err = AbPresheaf::new(&s, vec![z.clone(), z.clone(), z.clone(), z], res).unwrap_err();
        assert!(matches!(err, Error::InvalidPresheaf(_)));
    }
}

//! Finite meet-semilattices of opens.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSite {
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    top: usize,
    /// Point sets, when the site was built from subsets.
    subsets: Option<(usize, Vec<Vec<usize>>)>,
}

impl FiniteSite {
    /// A site from its order relation, `leq[a][b]` meaning `a ≤ b`.
    pub fn from_order(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if n == 0 {
            return Err(Error::InvalidSite("no opens".into()));
        }
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSite("order relation is not square".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::InvalidSite(format!("{a} ≤ {a} fails")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::InvalidSite(format!("{a} and {b} are distinct but equivalent")));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::InvalidSite(format!("transitivity fails for {a} ≤ {b} ≤ {c}")));
                    }
                }
            }
        }
        let top = (0..n).find(|&t| (0..n).all(|a| leq[a][t])).ok_or_else(|| Error::InvalidSite("no maximum".into()))?;
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                meet[a][b] = *lower
                    .iter()
                    .find(|&&g| lower.iter().all(|&c| leq[c][g]))
                    .ok_or_else(|| Error::InvalidSite(format!("{a} and {b} have no meet")))?;
            }
        }
        Ok(FiniteSite { leq, meet, top, subsets: None })
    }

    /// Subsets of `{0, …, points - 1}` closed under intersection, with the full set on top.
    ///
    /// Opens are ordered by decreasing size, then lexicographically; index 0 is the top.
    pub fn from_subsets(points: usize, opens: &[Vec<usize>]) -> Result<Self> {
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert((0..points).collect());
        for o in opens {
            if let Some(&p) = o.iter().find(|&&p| p >= points) {
                return Err(Error::InvalidSite(format!("point {p} out of range")));
            }
            let s: BTreeSet<usize> = o.iter().copied().collect();
            sets.insert(s.into_iter().collect());
        }
        loop {
            let list: Vec<Vec<usize>> = sets.iter().cloned().collect();
            let mut grew = false;
            for a in &list {
                for b in &list {
                    let c: Vec<usize> = a.iter().filter(|x| b.contains(x)).copied().collect();
                    grew |= sets.insert(c);
                }
            }
            if !grew {
                break;
            }
        }
        let mut list: Vec<Vec<usize>> = sets.into_iter().collect();
        list.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let n = list.len();
        let sub = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|x| b.contains(x));
        let leq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| sub(&list[a], &list[b])).collect()).collect();
        let mut site = Self::from_order(leq)?;
        site.subsets = Some((points, list));
        Ok(site)
    }

    /// One open.
    pub fn point() -> Self {
        Self::from_subsets(1, &[]).expect("one point")
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn meet_all(&self, opens: impl IntoIterator<Item = usize>) -> usize {
        opens.into_iter().fold(self.top, |acc, o| self.meet(acc, o))
    }

    /// Number of points and the point set of each open, for subset sites.
    pub fn subsets(&self) -> Option<(usize, &[Vec<usize>])> {
        self.subsets.as_ref().map(|(p, l)| (*p, l.as_slice()))
    }

    /// Whether the open has no points; opens of an abstract order are never empty.
    pub fn is_empty_open(&self, a: usize) -> bool {
        self.subsets.as_ref().is_some_and(|(_, l)| l[a].is_empty())
    }

    /// Index of the open with the given point set.
    pub fn open_of(&self, points: &[usize]) -> Option<usize> {
        let mut p = points.to_vec();
        p.sort_unstable();
        p.dedup();
        self.subsets.as_ref()?.1.iter().position(|s| *s == p)
    }

    pub fn check(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let m = self.meet(a, b);
                if m != self.meet(b, a) || self.meet(m, m) != m || !self.leq(m, a) || !self.leq(m, b) {
                    return Err(Error::InvalidSite(format!("meet of {a} and {b}")));
                }
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)) {
                        return Err(Error::InvalidSite(format!("meet not associative at {a}, {b}, {c}")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_close_under_meets() {
        let s = FiniteSite::from_subsets(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.top(), 0);
        let a = s.open_of(&[0, 1]).unwrap();
        let b = s.open_of(&[1, 2]).unwrap();
        assert_eq!(s.meet(a, b), s.open_of(&[1]).unwrap());
        s.check().unwrap();
    }

    #[test]
    fn order_without_meets_rejected() {
        // two incomparable minimal elements below two incomparable others
        let mut leq = vec![vec![false; 5]; 5];
        for a in 0..5 {
            leq[a][a] = true;
            leq[a][4] = true;
        }
        for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            leq[a][b] = true;
        }
        assert!(matches!(FiniteSite::from_order(leq), Err(Error::InvalidSite(_))));
    }
}

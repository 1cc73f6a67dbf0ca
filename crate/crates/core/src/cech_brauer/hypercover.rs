//! 1-hypercovers of a finite site, completed to level 3 by the combinatorial coskeleton.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::cech_brauer::site::FiniteSite;
use crate::cosimplicial::FiniteGroup;
use crate::error::{Error, Result};

/// `V_ij^label`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub label: usize,
    pub open: usize,
}

/// `Z_ijk^{αβδ} = V_ij^α ∧ V_jk^β ∧ V_ik^δ`; edges are listed as `[ij, jk, ik]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub vertices: [usize; 3],
    pub edges: [usize; 3],
    pub open: usize,
}

/// Edges `[ij, jk, kl, ik, jl, il]`; `faces[q]` is the triangle omitting vertex `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tetrahedron {
    pub vertices: [usize; 4],
    pub edges: [usize; 6],
    pub faces: [usize; 4],
    pub open: usize,
}

#[derive(Clone, Debug)]
pub struct OneHypercover {
    site: FiniteSite,
    cover: Vec<usize>,
    /// `pieces[i][j]` lists the opens `V_ij^α`.
    pieces: Vec<Vec<Vec<usize>>>,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    tetrahedra: Vec<Tetrahedron>,
    /// Explicit level-2 pieces, if not all triples.
    restricted: Option<Vec<[usize; 6]>>,
}

impl OneHypercover {
    /// Level-2 pieces are all triples of edges (the fiber-product formula).
    pub fn new(site: FiniteSite, cover: Vec<usize>, pieces: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        Self::build(site, cover, pieces, None)
    }

    /// Level-2 pieces restricted to the listed `(i, j, k, α, β, δ)`.
    pub fn with_triangles(site: FiniteSite, cover: Vec<usize>, pieces: Vec<Vec<Vec<usize>>>, triangles: Vec<[usize; 6]>) -> Result<Self> {
        Self::build(site, cover, pieces, Some(triangles))
    }

    /// The plain Čech cover: `A(i, j) = {U_i ∧ U_j}`.
    pub fn cech(site: FiniteSite, cover: Vec<usize>) -> Result<Self> {
        let pieces = cover.iter().map(|&a| cover.iter().map(|&b| vec![site.meet(a, b)]).collect()).collect();
        Self::new(site, cover, pieces)
    }

    /// One open `U`, `A(0, 0) = G`, and triangles `(g, h, gh)`: the nerve of `G`.
    pub fn group_nerve(g: &FiniteGroup) -> Self {
        let site = FiniteSite::point();
        let top = site.top();
        let n = g.order();
        let triangles = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| [0, 0, 0, a, b, g.mul(a, b)]).collect();
        Self::with_triangles(site, vec![top], vec![vec![vec![top; n]]], triangles).expect("group nerve")
    }

    /// The Čech cover of a simplicial complex by open stars of its vertices.
    ///
    /// Points are the simplices of the complex generated by `facets`.
    pub fn simplicial_stars(facets: &[Vec<usize>]) -> Result<Self> {
        let (site, cover) = star_site(facets, &[])?;
        Self::cech(site, cover)
    }

    /// As [`simplicial_stars`](Self::simplicial_stars), but `U_a ∧ U_b` is covered by
    /// two pieces split along the listed simplices, for the pair `(a, b)` and its reverse.
    pub fn refined_stars(facets: &[Vec<usize>], a: usize, b: usize) -> Result<Self> {
        let simplices = all_simplices(facets);
        let both: Vec<usize> = (0..simplices.len()).filter(|&p| simplices[p].contains(&a) && simplices[p].contains(&b)).collect();
        if both.len() < 2 {
            return Err(Error::InvalidCover(format!("U_{a} ∧ U_{b} has fewer than two points")));
        }
        let half = both.len() / 2;
        let (p1, p2) = (both[..half].to_vec(), both[half..].to_vec());
        let (site, cover) = star_site(facets, &[p1.clone(), p2.clone()])?;
        let verts = vertex_list(facets);
        let (ia, ib) = (verts.iter().position(|&v| v == a).unwrap(), verts.iter().position(|&v| v == b).unwrap());
        let mut pieces: Vec<Vec<Vec<usize>>> = cover.iter().map(|&x| cover.iter().map(|&y| vec![site.meet(x, y)]).collect()).collect();
        let split = vec![site.open_of(&p1).unwrap(), site.open_of(&p2).unwrap()];
        pieces[ia][ib] = split.clone();
        pieces[ib][ia] = split;
        Self::new(site, cover, pieces)
    }

    fn build(site: FiniteSite, cover: Vec<usize>, pieces: Vec<Vec<Vec<usize>>>, restricted: Option<Vec<[usize; 6]>>) -> Result<Self> {
        let n = cover.len();
        if n == 0 {
            return Err(Error::InvalidCover("empty index set".into()));
        }
        if let Some(&u) = cover.iter().find(|&&u| u >= site.len()) {
            return Err(Error::InvalidCover(format!("open {u} is not in the site")));
        }
        if pieces.len() != n || pieces.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCover("pieces must be given for every ordered pair".into()));
        }
        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if pieces[i][j].is_empty() {
                    return Err(Error::InvalidCover(format!("A({i}, {j}) is empty")));
                }
                let uij = site.meet(cover[i], cover[j]);
                for (label, &v) in pieces[i][j].iter().enumerate() {
                    if v >= site.len() || !site.leq(v, uij) {
                        return Err(Error::InvalidCover(format!("V_{i}{j}^{label} is not below U_{i} ∧ U_{j}")));
                    }
                    edge_index.insert((i, j, label), edges.len());
                    edges.push(Edge { i, j, label, open: v });
                }
            }
        }
        let tri_of = |t: [usize; 6]| -> Result<Triangle> {
            let [i, j, k, a, b, c] = t;
            let find = |x: usize, y: usize, l: usize| {
                edge_index
                    .get(&(x, y, l))
                    .copied()
                    .ok_or_else(|| Error::InvalidCover(format!("triangle ({i},{j},{k};{a},{b},{c}) uses a missing edge")))
            };
            if i >= n || j >= n || k >= n {
                return Err(Error::InvalidCover(format!("triangle ({i},{j},{k};{a},{b},{c}) has a bad vertex")));
            }
            let e = [find(i, j, a)?, find(j, k, b)?, find(i, k, c)?];
            let open = site.meet_all(e.iter().map(|&x| edges[x].open));
            Ok(Triangle { vertices: [i, j, k], edges: e, open })
        };
        let mut keys: Vec<[usize; 6]> = match &restricted {
            Some(list) => list.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
            None => {
                let mut all = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            for a in 0..pieces[i][j].len() {
                                for b in 0..pieces[j][k].len() {
                                    for c in 0..pieces[i][k].len() {
                                        all.push([i, j, k, a, b, c]);
                                    }
                                }
                            }
                        }
                    }
                }
                all
            }
        };
        keys.sort_unstable();
        let triangles = keys.iter().map(|&t| tri_of(t)).collect::<Result<Vec<_>>>()?;
        let tri_index: HashMap<[usize; 3], usize> = triangles.iter().enumerate().map(|(x, t)| (t.edges, x)).collect();
        // out-edges by source vertex
        let mut from: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (x, e) in edges.iter().enumerate() {
            from.entry((e.i, e.j)).or_default().push(x);
        }
        let mut tetrahedra = Vec::new();
        for (f3, t) in triangles.iter().enumerate() {
            let [i, j, k] = t.vertices;
            let [eij, ejk, eik] = t.edges;
            for l in 0..n {
                for &ekl in &from[&(k, l)] {
                    for &ejl in &from[&(j, l)] {
                        let Some(&f0) = tri_index.get(&[ejk, ekl, ejl]) else { continue };
                        for &eil in &from[&(i, l)] {
                            let (Some(&f1), Some(&f2)) = (tri_index.get(&[eik, ekl, eil]), tri_index.get(&[eij, ejl, eil])) else {
                                continue;
                            };
                            let es = [eij, ejk, ekl, eik, ejl, eil];
                            let open = site.meet_all(es.iter().map(|&x| edges[x].open));
                            tetrahedra.push(Tetrahedron { vertices: [i, j, k, l], edges: es, faces: [f0, f1, f2, f3], open });
                        }
                    }
                }
            }
        }
        let label_key = |t: &Tetrahedron| -> Vec<usize> {
            t.vertices.iter().copied().chain(t.edges.iter().map(|&e| edges[e].label)).collect()
        };
        tetrahedra.sort_by_key(label_key);
        Ok(OneHypercover { site, cover, pieces, edges, triangles, tetrahedra, restricted })
    }

    pub fn site(&self) -> &FiniteSite {
        &self.site
    }

    pub fn cover(&self) -> &[usize] {
        &self.cover
    }

    pub fn pieces(&self) -> &[Vec<Vec<usize>>] {
        &self.pieces
    }

    pub fn restricted_triangles(&self) -> Option<&[[usize; 6]]> {
        self.restricted.as_deref()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn tetrahedra(&self) -> &[Tetrahedron] {
        &self.tetrahedra
    }

    /// Number of pieces at level `s ≤ 3`.
    pub fn count(&self, s: usize) -> usize {
        match s {
            0 => self.cover.len(),
            1 => self.edges.len(),
            2 => self.triangles.len(),
            3 => self.tetrahedra.len(),
            _ => panic!("levels above 3 are not built"),
        }
    }

    /// The open of piece `x` at level `s`.
    pub fn open(&self, s: usize, x: usize) -> usize {
        match s {
            0 => self.cover[x],
            1 => self.edges[x].open,
            2 => self.triangles[x].open,
            3 => self.tetrahedra[x].open,
            _ => panic!("levels above 3 are not built"),
        }
    }

    /// `d_q` of piece `x` at level `s ≥ 1`, for `q = 0..=s`.
    pub fn faces(&self, s: usize, x: usize) -> Vec<usize> {
        match s {
            1 => vec![self.edges[x].j, self.edges[x].i],
            2 => {
                let [ij, jk, ik] = self.triangles[x].edges;
                vec![jk, ik, ij]
            }
            3 => self.tetrahedra[x].faces.to_vec(),
            _ => panic!("faces exist at levels 1..=3"),
        }
    }

    /// Lexicographic label `(vertices; edge labels)` of a piece.
    pub fn describe(&self, s: usize, x: usize) -> String {
        let (vs, ls): (Vec<usize>, Vec<usize>) = match s {
            0 => (vec![x], vec![]),
            1 => (vec![self.edges[x].i, self.edges[x].j], vec![self.edges[x].label]),
            2 => (self.triangles[x].vertices.to_vec(), self.triangles[x].edges.iter().map(|&e| self.edges[e].label).collect()),
            3 => (self.tetrahedra[x].vertices.to_vec(), self.tetrahedra[x].edges.iter().map(|&e| self.edges[e].label).collect()),
            _ => panic!("levels above 3 are not built"),
        };
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if ls.is_empty() {
            format!("({})", join(&vs))
        } else {
            format!("({};{})", join(&vs), join(&ls))
        }
    }
}

fn vertex_list(facets: &[Vec<usize>]) -> Vec<usize> {
    facets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
}

fn all_simplices(facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        for mask in 1u32..(1 << f.len()) {
            out.insert(f.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>());
        }
    }
    out.into_iter().collect()
}

/// Points are simplices; `U_v` is the open star of `v`.
fn star_site(facets: &[Vec<usize>], extra: &[Vec<usize>]) -> Result<(FiniteSite, Vec<usize>)> {
    let simplices = all_simplices(facets);
    if simplices.is_empty() {
        return Err(Error::InvalidCover("no simplices".into()));
    }
    let verts = vertex_list(facets);
    let stars: Vec<Vec<usize>> = verts.iter().map(|v| (0..simplices.len()).filter(|&p| simplices[p].contains(v)).collect()).collect();
    let mut opens = stars.clone();
    opens.extend(extra.iter().cloned());
    let site = FiniteSite::from_subsets(simplices.len(), &opens)?;
    let cover = stars.iter().map(|s| site.open_of(s).unwrap()).collect();
    Ok((site, cover))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nerve_counts() {
        let h = OneHypercover::group_nerve(&FiniteGroup::cyclic(3));
        assert_eq!((h.count(0), h.count(1), h.count(2), h.count(3)), (1, 3, 9, 27));
    }

    #[test]
    fn face_identities_hold() {
        let h = OneHypercover::refined_stars(&[vec![0, 1, 2]], 0, 1).unwrap();
        for s in 2..=3 {
            for x in 0..h.count(s) {
                let f = h.faces(s, x);
                for i in 0..=s {
                    for j in i + 1..=s {
                        // d_i d_j = d_{j-1} d_i
                        assert_eq!(h.faces(s - 1, f[j])[i], h.faces(s - 1, f[i])[j - 1], "level {s} piece {x}");
                    }
                }
                for (q, &y) in f.iter().enumerate() {
                    assert!(h.site().leq(h.open(s, x), h.open(s - 1, y)), "face {q}");
                }
            }
        }
    }

    #[test]
    fn empty_pieces_rejected() {
        let site = FiniteSite::point();
        let err = OneHypercover::new(site, vec![0], vec![vec![vec![]]]).unwrap_err();
        assert!(matches!(err, Error::InvalidCover(_)));
        assert!(OneHypercover::new(FiniteSite::point(), vec![], vec![]).is_err());
    }
}

//! Library objects from parsed sections.

use std::collections::BTreeMap;

use descent_ss::cech_brauer::{AbPresheaf, Cocycle2, FiniteSite, Gluing, OneHypercover, SecondCohomology};
use descent_ss::cosimplicial::{circle_cochains, cobar, CosimplicialAbGroup, CosimplicialFinGroup, FiniteGroup, GroupModule};
use descent_ss::generate::{ChainSpec, RowKind};
use descent_ss::ss_compare::CosimplicialChainComplex;
use descent_ss::{complexes::CochainComplex, FgAbGroup, Int, IntMatrix, Matrix, Result};

use crate::format::*;

pub type Tables = BTreeMap<String, Vec<Vec<usize>>>;

pub fn group(g: &GroupSpec) -> FgAbGroup {
    FgAbGroup::from_factors(&g.moduli)
}

/// `g` as a list of cyclic summands, if its relations are coordinate-diagonal.
pub fn group_spec(g: &FgAbGroup) -> Option<GroupSpec> {
    let mut moduli = vec![Int::from(0); g.ambient_rank()];
    for col in g.relations().columns() {
        let nz: Vec<usize> = (0..col.len()).filter(|&i| col[i] != Int::from(0)).collect();
        match nz.as_slice() {
            [] => {}
            [i] if moduli[*i] == Int::from(0) => moduli[*i] = num_abs(&col[*i]),
            _ => return None,
        }
    }
    Some(GroupSpec { moduli })
}

fn num_abs(x: &Int) -> Int {
    if x < &Int::from(0) {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn matrix(m: &RawMatrix, rows: usize, cols: usize) -> Result<IntMatrix> {
    if m.rows.is_empty() {
        if rows * cols == 0 {
            return Ok(Matrix::zeros(rows, cols));
        }
        return Err(m.pos.error(format!("expected a {rows}x{cols} matrix, found []")));
    }
    let (r, c) = (m.rows.len(), m.rows[0].len());
    if (r, c) != (rows, cols) {
        return Err(m.pos.error(format!("expected a {rows}x{cols} matrix, found {r}x{c}")));
    }
    Ok(Matrix::from_vec(rows, cols, m.rows.concat()))
}

pub fn raw(m: &IntMatrix) -> RawMatrix {
    RawMatrix { rows: (0..m.rows()).map(|i| m.row(i).to_vec()).collect(), pos: Pos::default() }
}

pub fn fin_group(g: &FinGroupSpec, tables: &Tables, pos: Pos) -> Result<FiniteGroup> {
    Ok(match g {
        FinGroupSpec::Trivial => FiniteGroup::trivial(),
        FinGroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
        FinGroupSpec::Symmetric(n) => FiniteGroup::symmetric(*n),
        FinGroupSpec::Quaternion => FiniteGroup::quaternion(),
        FinGroupSpec::Table(name) => {
            let t = tables.get(name).ok_or_else(|| pos.error(format!("no group table named '{name}'")))?;
            FiniteGroup::from_table(t.clone())?
        }
    })
}

pub fn complex(c: &ComplexSection, pos: Pos) -> Result<CochainComplex> {
    if c.levels.is_empty() {
        return Err(pos.error("a complex needs at least one level"));
    }
    let levels: Vec<FgAbGroup> = c.levels.iter().map(group).collect();
    let mats = (0..levels.len() - 1)
        .map(|k| {
            let (rows, cols) = (levels[k + 1].ambient_rank(), levels[k].ambient_rank());
            match c.diffs.get(&(c.lo + k as i64)) {
                Some(m) => matrix(m, rows, cols),
                None => Ok(Matrix::zeros(rows, cols)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CochainComplex::new(c.lo, levels, mats)
}

fn group_module(group: &FiniteGroup, module: &GroupSpec, action: &BTreeMap<usize, RawMatrix>, pos: Pos) -> Result<GroupModule> {
    let m = self::group(module);
    let d = m.ambient_rank();
    if let Some(&g) = action.keys().find(|&&g| g >= group.order()) {
        return Err(pos.error(format!("no element {g} in a group of order {}", group.order())));
    }
    let mats = (0..group.order())
        .map(|g| match action.get(&g) {
            Some(raw) => matrix(raw, d, d),
            None => Ok(Matrix::identity(d)),
        })
        .collect::<Result<Vec<_>>>()?;
    GroupModule::new(group.clone(), m, mats)
}

pub fn cosimplicial_ab(c: &CosimplicialSection, tables: &Tables, pos: Pos) -> Result<CosimplicialAbGroup> {
    match c {
        CosimplicialSection::Explicit { n, levels, cofaces, codegeneracies } => {
            if levels.len() != n + 1 {
                return Err(pos.error(format!("truncation {n} needs {} levels, found {}", n + 1, levels.len())));
            }
            let lv: Vec<FgAbGroup> = levels.iter().map(group).collect();
            let dim = |k: usize| lv[k].ambient_rank();
            let get = |map: &BTreeMap<(usize, usize), RawMatrix>, key: (usize, usize), rows: usize, cols: usize, what: &str| {
                let m = map.get(&key).ok_or_else(|| pos.error(format!("missing {what} {} {}", key.0, key.1)))?;
                matrix(m, rows, cols)
            };
            let cf = (1..=*n)
                .map(|m| (0..=m).map(|i| get(cofaces, (m, i), dim(m), dim(m - 1), "coface")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let cd = (0..*n)
                .map(|m| (0..=m).map(|i| get(codegeneracies, (m, i), dim(m), dim(m + 1), "codegeneracy")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            CosimplicialAbGroup::new(lv, cf, cd)
        }
        CosimplicialSection::Constant { n, group: g } => Ok(CosimplicialAbGroup::constant(group(g), *n)),
        CosimplicialSection::Circle { n, group: g } => circle_cochains(&group(g), *n),
        CosimplicialSection::Cobar { n, group: g, module, action } => {
            let fg = fin_group(g, tables, pos)?;
            cobar(&group_module(&fg, module, action, pos)?, *n)
        }
        _ => Err(pos.error("expected an abelian cosimplicial group")),
    }
}

pub fn cosimplicial_group(c: &CosimplicialSection, tables: &Tables, pos: Pos) -> Result<CosimplicialFinGroup> {
    match c {
        CosimplicialSection::Groups { n, levels, cofaces, codegeneracies } => {
            if levels.len() != n + 1 {
                return Err(pos.error(format!("truncation {n} needs {} levels, found {}", n + 1, levels.len())));
            }
            let lv = levels.iter().map(|g| fin_group(g, tables, pos)).collect::<Result<Vec<_>>>()?;
            let get = |map: &BTreeMap<(usize, usize), Vec<usize>>, key: (usize, usize), what: &str| {
                map.get(&key).cloned().ok_or_else(|| pos.error(format!("missing {what} {} {}", key.0, key.1)))
            };
            let cf = (1..=*n)
                .map(|m| (0..=m).map(|i| get(cofaces, (m, i), "coface")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let cd = (0..*n)
                .map(|m| (0..=m).map(|i| get(codegeneracies, (m, i), "codegeneracy")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            CosimplicialFinGroup::new(lv, cf, cd)
        }
        CosimplicialSection::GroupConstant { n, group } => Ok(CosimplicialFinGroup::constant(fin_group(group, tables, pos)?, *n)),
        CosimplicialSection::PointedCircle { n, group } => CosimplicialFinGroup::pointed_circle(&fin_group(group, tables, pos)?, *n),
        CosimplicialSection::GroupCobar { n, gamma, k, action } => {
            let (g, kk) = (fin_group(gamma, tables, pos)?, fin_group(k, tables, pos)?);
            if let Some(&x) = action.keys().find(|&&x| x >= g.order()) {
                return Err(pos.error(format!("no element {x} in a group of order {}", g.order())));
            }
            let id: Vec<usize> = (0..kk.order()).collect();
            let perms: Vec<Vec<usize>> = (0..g.order()).map(|x| action.get(&x).cloned().unwrap_or_else(|| id.clone())).collect();
            CosimplicialFinGroup::cobar(&g, &kk, &perms, *n)
        }
        abelian => {
            let a = cosimplicial_ab(abelian, tables, pos)?;
            CosimplicialFinGroup::from_abelian(&a)
        }
    }
}

pub fn site(s: &SiteSection) -> Result<FiniteSite> {
    match s {
        SiteSection::Point => Ok(FiniteSite::point()),
        SiteSection::Subsets { points, opens } => FiniteSite::from_subsets(*points, opens),
    }
}

fn open(site: &FiniteSite, points: &[usize], pos: Pos) -> Result<usize> {
    site.open_of(points).ok_or_else(|| pos.error(format!("{points:?} is not an open of the site")))
}

pub fn hypercover(c: &CoverSection, site_sec: Option<(Pos, &SiteSection)>, tables: &Tables, pos: Pos) -> Result<OneHypercover> {
    let need_site = || -> Result<FiniteSite> {
        match site_sec {
            Some((_, s)) => site(s),
            None => Err(pos.error("this cover needs a SITE section")),
        }
    };
    match c {
        CoverSection::Cech { members } => {
            let st = need_site()?;
            let cover = members.iter().map(|m| open(&st, m, pos)).collect::<Result<Vec<_>>>()?;
            OneHypercover::cech(st, cover)
        }
        CoverSection::Hyper { members, pieces } => {
            let st = need_site()?;
            let cover = members.iter().map(|m| open(&st, m, pos)).collect::<Result<Vec<_>>>()?;
            let n = cover.len();
            let mut ps = vec![vec![Vec::new(); n]; n];
            for (&(i, j), list) in pieces {
                ps[i][j] = list.iter().map(|v| open(&st, v, pos)).collect::<Result<Vec<_>>>()?;
            }
            OneHypercover::new(st, cover, ps)
        }
        CoverSection::Nerve { group } => Ok(OneHypercover::group_nerve(&fin_group(group, tables, pos)?)),
        CoverSection::Stars { facets } => OneHypercover::simplicial_stars(facets),
        CoverSection::RefinedStars { a, b, facets } => OneHypercover::refined_stars(facets, *a, *b),
    }
}

pub fn presheaf(p: &PresheafSection, site: &FiniteSite, pos: Pos) -> Result<AbPresheaf> {
    match p {
        PresheafSection::Constant(g) => Ok(AbPresheaf::constant(site, &group(g))),
        PresheafSection::Explicit { values, restrictions } => {
            let mut vals = vec![FgAbGroup::trivial(); site.len()];
            for (u, g) in values {
                vals[open(site, u, pos)?] = group(g);
            }
            let mut res = BTreeMap::new();
            for ((u, v), m) in restrictions {
                let (a, b) = (open(site, u, pos)?, open(site, v, pos)?);
                res.insert((a, b), matrix(m, vals[b].ambient_rank(), vals[a].ambient_rank())?);
            }
            // maps into or out of zero groups need not be listed
            for a in 0..site.len() {
                for b in 0..site.len() {
                    if a != b && site.leq(b, a) && (vals[a].ambient_rank() == 0 || vals[b].ambient_rank() == 0) {
                        res.entry((a, b)).or_insert_with(|| Matrix::zeros(vals[b].ambient_rank(), vals[a].ambient_rank()));
                    }
                }
            }
            AbPresheaf::new(site, vals, res)
        }
    }
}

/// The 2-cocycle named by a `THETA` section.
pub fn theta_cocycle(t: &ThetaSection, h: &OneHypercover, f: &AbPresheaf, h2: &SecondCohomology, pos: Pos) -> Result<Cocycle2> {
    match t {
        ThetaSection::Class(coords) => class_cocycle(h2, coords).ok_or_else(|| {
            pos.error(format!("{} coordinates given, the group {} has {} invariant generators", coords.len(), h2.group(), h2.group().invariant_generators().len()))
        }),
        ThetaSection::Explicit { .. } => descent_ss::cech_brauer::cocycle_from_gluing(h, f, &gluing(t, h, f, pos)?),
    }
}

/// `Σ cₖ gₖ` over the invariant generators `gₖ` of `Ȟ²`.
pub fn class_cocycle(h2: &SecondCohomology, coords: &[Int]) -> Option<Cocycle2> {
    let gens = h2.group().invariant_generators();
    if gens.len() != coords.len() {
        return None;
    }
    let mut x = vec![Int::from(0); h2.group().ambient_rank()];
    for (g, c) in gens.iter().zip(coords) {
        for (xi, gi) in x.iter_mut().zip(g) {
            *xi += gi * c;
        }
    }
    Some(h2.representative(&x))
}

pub fn gluing(t: &ThetaSection, h: &OneHypercover, f: &AbPresheaf, pos: Pos) -> Result<Gluing> {
    let ThetaSection::Explicit { ambient, inclusion, edges } = t else {
        return Err(pos.error("expected explicit gluing data"));
    };
    let st = h.site();
    let e = AbPresheaf::constant(st, &group(ambient));
    let inc = (0..st.len())
        .map(|u| {
            if st.is_empty_open(u) {
                Ok(Matrix::zeros(0, 0))
            } else {
                matrix(inclusion, e.value(u).ambient_rank(), f.value(u).ambient_rank())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut theta = Vec::new();
    let mut seen = 0;
    for edge in h.edges() {
        let d = e.value(edge.open).ambient_rank();
        match edges.get(&(edge.i, edge.j, edge.label)) {
            Some(v) => {
                if v.len() != d {
                    return Err(pos.error(format!("edge {} {} {} needs {d} entries", edge.i, edge.j, edge.label)));
                }
                theta.extend(v.iter().cloned());
                seen += 1;
            }
            None => theta.extend(std::iter::repeat_n(Int::from(0), d)),
        }
    }
    if seen != edges.len() {
        return Err(pos.error("gluing data names an edge the cover does not have"));
    }
    Gluing::new(f, e, inc, theta)
}

/// `THETA explicit` text for gluing data over a constant ambient presheaf.
pub fn gluing_section(h: &OneHypercover, g: &Gluing) -> Option<ThetaSection> {
    let st = h.site();
    let u = (0..st.len()).find(|&u| !st.is_empty_open(u))?;
    let ambient = group_spec(g.ambient.value(u))?;
    let inclusion = raw(&g.inclusion[u]);
    let mut edges = BTreeMap::new();
    let mut k = 0;
    for edge in h.edges() {
        let d = g.ambient.value(edge.open).ambient_rank();
        edges.insert((edge.i, edge.j, edge.label), g.theta[k..k + d].to_vec());
        k += d;
    }
    Some(ThetaSection::Explicit { ambient, inclusion, edges })
}

/// A cosimplicial chain complex from rows given as `COSIMPLICIAL` sections (in order of `t`) and
/// vertical module maps given as `MATRIX` sections (`t = 1..=T`).
pub fn chain_complex(doc: &Document, tables: &Tables) -> Result<CosimplicialChainComplex> {
    let rows = doc.find("COSIMPLICIAL");
    if rows.is_empty() {
        return Err(Pos { line: 1, col: 1 }.error("missing COSIMPLICIAL sections"));
    }
    let mut built = Vec::new();
    let mut ranks = Vec::new();
    for (pos, s) in &rows {
        let Section::Cosimplicial(c) = s else { unreachable!() };
        let rank = match c {
            CosimplicialSection::Constant { group, .. } | CosimplicialSection::Circle { group, .. } => group.moduli.len(),
            CosimplicialSection::Cobar { module, .. } => module.moduli.len(),
            _ => return Err(pos.error("rows must be constant, circle or cobar")),
        };
        built.push(cosimplicial_ab(c, tables, *pos)?);
        ranks.push(rank);
    }
    let maps = doc.find("MATRIX");
    if maps.len() + 1 != rows.len() {
        return Err(Pos { line: 1, col: 1 }.error(format!("{} rows need {} MATRIX sections, found {}", rows.len(), rows.len() - 1, maps.len())));
    }
    let mats = maps
        .iter()
        .enumerate()
        .map(|(k, (pos, s))| {
            let Section::Matrix(m) = s else { unreachable!() };
            let (r, c) = (ranks[k], ranks[k + 1]);
            if (m.rows, m.cols) != (r, c) {
                return Err(pos.error(format!("map from row {} to row {k} must be {r}x{c}", k + 1)));
            }
            Ok(Matrix::from_vec(r, c, m.entries.concat()))
        })
        .collect::<Result<Vec<_>>>()?;
    CosimplicialChainComplex::from_rows_and_module_maps(built, ranks, &mats)
}

/// The text form of a generated instance.
pub fn chain_spec_document(spec: &ChainSpec) -> Option<Document> {
    let mut doc = Document::default();
    for m in &spec.modules {
        let module = group_spec(&m.module)?;
        let row = match spec.kind {
            RowKind::Circle => CosimplicialSection::Circle { n: spec.s_max, group: module },
            RowKind::Cobar => {
                let id = Matrix::identity(m.rank());
                let action = (0..m.group.order()).filter(|&g| m.action[g] != id).map(|g| (g, raw(&m.action[g]))).collect();
                let order = m.group.order();
                if m.group.table() != FiniteGroup::cyclic(order).table() {
                    return None;
                }
                CosimplicialSection::Cobar { n: spec.s_max, group: FinGroupSpec::Cyclic(order), module, action }
            }
        };
        doc.sections.push((Pos::default(), Section::Cosimplicial(row)));
    }
    for d in &spec.maps {
        let entries = (0..d.rows()).map(|i| d.row(i).to_vec()).collect();
        doc.sections.push((Pos::default(), Section::Matrix(MatrixSection { rows: d.rows(), cols: d.cols(), entries })));
    }
    Some(doc)
}

//! Command implementations; each returns its report text and exit code.

use std::fmt::Write as _;

use descent_ss::cech_brauer::{
    cech_cohomology, check_divisibility, torsion_lift, cocycle_from_gluing, AbPresheaf, OneHypercover, SecondCohomology, TwistedTower,
};
use descent_ss::cosimplicial::check_pi_quasi_iso;
use descent_ss::generate::random_chain_spec;
use descent_ss::linalg::{smith, Smith};
use descent_ss::ss_compare::compare_from_e2;
use descent_ss::{Error, FgAbGroup, Int, IntMatrix, Matrix, Order, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::build::{self, Tables};
use crate::format::*;

/// Default seed for generated instances.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub degree: Option<i64>,
    pub page_max: Option<usize>,
    pub truncation: Option<usize>,
    pub nerve_bound: Option<usize>,
    pub seed: Option<u64>,
}

/// Report text and exit status: 0 ok, 1 a check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn new(text: String, ok: bool) -> Self {
        Report { text, ok }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn matrix_lines(o: &mut String, m: &IntMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(o, "  {}", row.join(" "));
    }
}

fn is_unimodular(m: &IntMatrix) -> bool {
    let s: Smith<Int> = smith(m);
    m.is_square() && s.diag.iter().all(|d| d == &Int::from(1) || d == &Int::from(-1))
}

fn tables(doc: &Document) -> Result<Tables> {
    doc.tables()
}

pub fn snf(doc: &Document) -> Result<Report> {
    let (_, s) = doc.require("MATRIX")?;
    let Section::Matrix(m) = s else { unreachable!() };
    let mat = Matrix::from_vec(m.rows, m.cols, m.entries.concat());
    let sm = smith(&mat);
    let d = Matrix::diagonal(m.rows, m.cols, &sm.diag);
    let mut o = String::new();
    let _ = writeln!(o, "smith normal form of a {}x{} matrix", m.rows, m.cols);
    let _ = writeln!(o, "rank {}", sm.rank());
    let diag: Vec<String> = sm.diag.iter().map(ToString::to_string).collect();
    let _ = writeln!(o, "diagonal {}", if diag.is_empty() { "-".to_string() } else { diag.join(" ") });
    for (name, x) in [("D", &d), ("L", &sm.l), ("R", &sm.r)] {
        let _ = writeln!(o, "{name}");
        matrix_lines(&mut o, x);
    }
    let product = sm.l.mul(&mat).mul(&sm.r) == d;
    let unimodular = is_unimodular(&sm.l) && is_unimodular(&sm.r);
    let nz: Vec<&Int> = sm.diag.iter().filter(|x| **x != Int::from(0)).collect();
    let divisibility = nz.iter().all(|x| **x > Int::from(0))
        && nz.windows(2).all(|w| (w[1] % w[0]) == Int::from(0))
        && sm.diag.iter().skip(nz.len()).all(|x| *x == Int::from(0));
    let _ = writeln!(o, "D = L*M*R {}", verdict(product));
    let _ = writeln!(o, "L, R unimodular {}", verdict(unimodular));
    let _ = writeln!(o, "successive divisibility {}", verdict(divisibility));
    Ok(Report::new(o, product && unimodular && divisibility))
}

pub fn cohomology(doc: &Document, opts: &Options) -> Result<Report> {
    let (pos, s) = doc.require("COMPLEX")?;
    let Section::Complex(c) = s else { unreachable!() };
    let cx = build::complex(c, pos)?;
    let degrees: Vec<i64> = match opts.degree {
        Some(n) if n < cx.lo() || n > cx.hi() => {
            return Err(Error::WindowViolation { requested: n, needed: format!("degree in {}..={}", cx.lo(), cx.hi()) })
        }
        Some(n) => vec![n],
        None => cx.degrees().collect(),
    };
    let mut o = String::new();
    for n in degrees {
        let _ = writeln!(o, "H^{n} = {}", cx.cohomology(n)?);
    }
    Ok(Report::new(o, true))
}

pub fn cohomotopy(doc: &Document, opts: &Options) -> Result<Report> {
    let (pos, s) = doc.require("COSIMPLICIAL")?;
    let Section::Cosimplicial(c) = s else { unreachable!() };
    if !c.is_abelian() {
        return Err(pos.error("cohomotopy groups need an abelian cosimplicial group; use pi1"));
    }
    let full = build::cosimplicial_ab(c, &tables(doc)?, pos)?;
    let n = match opts.truncation {
        Some(t) if t > full.truncation() => {
            return Err(Error::WindowViolation { requested: t as i64, needed: format!("truncation at most {}", full.truncation()) })
        }
        Some(t) => t,
        None => full.truncation(),
    };
    let a = full.truncate(n);
    let degrees: Vec<usize> = match opts.degree {
        Some(s) if s < 0 => return Err(Error::WindowViolation { requested: s, needed: "degree >= 0".into() }),
        Some(s) => vec![s as usize],
        None => (0..n).collect(),
    };
    let mut o = String::new();
    let _ = writeln!(o, "truncation {n}");
    for s in degrees {
        let _ = writeln!(o, "pi^{s} = {}", a.cohomotopy(s)?);
    }
    let mut ok = true;
    if let Some(m) = opts.nerve_bound {
        if m < 2 {
            return Err(Error::WindowViolation { requested: m as i64, needed: "nerve bound at least 2".into() });
        }
        for v in check_pi_quasi_iso(&a, m)? {
            ok &= v.iso;
            let _ = writeln!(o, "unit s={} H(CA) = {} H(CPiA) = {} {}", v.s, v.source, v.target, verdict(v.iso));
        }
    }
    Ok(Report::new(o, ok))
}

pub fn pi1(doc: &Document) -> Result<Report> {
    let (pos, s) = doc.require("COSIMPLICIAL")?;
    let Section::Cosimplicial(c) = s else { unreachable!() };
    let g = build::cosimplicial_group(c, &tables(doc)?, pos)?;
    if g.truncation() < 2 {
        return Err(Error::WindowViolation { requested: 1, needed: format!("truncation N >= 2 (have {})", g.truncation()) });
    }
    let p = g.pi1_pointed_set()?;
    let z1 = g.z1()?;
    let mut o = String::new();
    let _ = writeln!(o, "|G0| = {}", g.level(0).order());
    let _ = writeln!(o, "|G1| = {}", g.level(1).order());
    let _ = writeln!(o, "|Z1| = {}", z1.len());
    let _ = writeln!(o, "orbits {}", p.len());
    let _ = writeln!(o, "basepoint orbit {}", p.base);
    for (k, orbit) in p.orbits.iter().enumerate() {
        let xs: Vec<String> = orbit.iter().map(ToString::to_string).collect();
        let _ = writeln!(o, "orbit {k}: {}", xs.join(" "));
    }
    Ok(Report::new(o, true))
}

fn cover_and_presheaf(doc: &Document) -> Result<(OneHypercover, AbPresheaf)> {
    let (cpos, cs) = doc.require("COVER")?;
    let Section::Cover(c) = cs else { unreachable!() };
    let site = doc.one("SITE")?.map(|(p, s)| {
        let Section::Site(s) = s else { unreachable!() };
        (p, s)
    });
    if site.is_some() && !c.needs_site() {
        return Err(site.unwrap().0.error("this cover builds its own site"));
    }
    let h = build::hypercover(c, site, &tables(doc)?, cpos)?;
    let (ppos, ps) = doc.require("PRESHEAF")?;
    let Section::Presheaf(p) = ps else { unreachable!() };
    let f = build::presheaf(p, h.site(), ppos)?;
    Ok((h, f))
}

pub fn cech(doc: &Document, opts: &Options) -> Result<Report> {
    let (h, f) = cover_and_presheaf(doc)?;
    let degrees: Vec<usize> = match opts.degree {
        Some(s) if !(0..=2).contains(&s) => return Err(Error::WindowViolation { requested: s, needed: "degree in 0..=2".into() }),
        Some(s) => vec![s as usize],
        None => (0..=2).collect(),
    };
    let mut o = String::new();
    let _ = writeln!(o, "pieces {} {} {}", h.count(0), h.count(1), h.count(2));
    for s in degrees {
        let _ = writeln!(o, "H^{s} = {}", cech_cohomology(&h, &f, s)?);
    }
    Ok(Report::new(o, true))
}

fn coords_text(v: &[Int]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// `k·c` reduced in the group.
fn multiple(g: &FgAbGroup, c: &[Int], k: &Int, gens: &[Vec<Int>]) -> Vec<Int> {
    let mut x = vec![Int::from(0); g.ambient_rank()];
    for (gen, ci) in gens.iter().zip(c) {
        for (xi, gi) in x.iter_mut().zip(gen) {
            *xi += gi * ci * k;
        }
    }
    g.normal_form(&x)
}

/// Largest multiplier in the `d₂` table.
const D2_TABLE_MAX: i64 = 12;

pub fn brauer(doc: &Document) -> Result<Report> {
    let (h, f) = cover_and_presheaf(doc)?;
    let h2 = SecondCohomology::new(&h, &f)?;
    let group = h2.group().clone();
    let gens = group.invariant_generators();
    let mut o = String::new();
    let _ = writeln!(o, "pieces {} {} {}", h.count(0), h.count(1), h.count(2));
    let _ = writeln!(o, "H^2 = {group}");
    let classes: Vec<(String, descent_ss::cech_brauer::Cocycle2)> = match doc.one("THETA")? {
        Some((pos, Section::Theta(t))) => vec![("given".into(), build::theta_cocycle(t, &h, &f, &h2, pos)?)],
        Some(_) => unreachable!(),
        None => (0..gens.len())
            .map(|k| {
                let mut c = vec![Int::from(0); gens.len()];
                c[k] = Int::from(1);
                (format!("generator {k}"), build::class_cocycle(&h2, &c).expect("coordinates match"))
            })
            .collect(),
    };
    if classes.is_empty() {
        let _ = writeln!(o, "no classes");
    }
    // constant Z/m coefficients admit the torsion lift
    let modulus = match doc.one("PRESHEAF")? {
        Some((_, Section::Presheaf(PresheafSection::Constant(g)))) if g.moduli.len() == 1 && g.moduli[0] != Int::from(0) => Some(g.moduli[0].clone()),
        _ => None,
    };
    let mut ok = true;
    for (name, alpha) in classes {
        let class = h2.class(&alpha);
        let _ = writeln!(o, "class {name}: {}", coords_text(&class));
        let per = match h2.order_of(&alpha) {
            Order::Finite(k) => k,
            Order::Infinite => return Err(Error::InvalidPresheaf("the class has infinite order".into())),
        };
        let _ = writeln!(o, "per {per}");
        let tower = TwistedTower::with_second_cohomology(&h, &f, &alpha, h2.clone())?;
        let kmax = Int::from(D2_TABLE_MAX).min(per.clone().max(Int::from(1)) + 1);
        let mut k = Int::from(1);
        while k <= kmax {
            let got = tower.d2_on_rank(&k)?;
            let want = multiple(&group, &class, &k, &gens);
            let good = got == want;
            ok &= good;
            let _ = writeln!(o, "d2({k}*[1]) = {} {}", coords_text(&got), verdict(good));
            k += 1;
        }
        let div = check_divisibility(&tower)?;
        let _ = writeln!(o, "eti {}", div.eti);
        let _ = writeln!(o, "eti = per {}", verdict(div.eti == div.per));
        let _ = writeln!(o, "per | eti {}", verdict(div.divides));
        ok &= div.divides && div.eti == div.per;
        if let Some(m) = &modulus {
            match torsion_lift(&h, m, &alpha)? {
                Some(g) => {
                    let back = cocycle_from_gluing(&h, &f, &g)?;
                    let good = h2.class(&back) == class;
                    ok &= good;
                    let _ = writeln!(o, "gluing round trip {}", verdict(good));
                }
                None => {
                    let _ = writeln!(o, "gluing round trip skipped: not the reduction of a torsion integral class");
                }
            }
        }
    }
    let _ = writeln!(o, "verdict {}", verdict(ok));
    Ok(Report::new(o, ok))
}

pub fn ss_compare(doc: Option<&Document>, opts: &Options) -> Result<Report> {
    let rmax = opts.page_max.unwrap_or(5);
    if rmax < 2 {
        return Err(Error::WindowViolation { requested: rmax as i64, needed: "page bound at least 2".into() });
    }
    let (x, header) = match doc {
        Some(d) => (build::chain_complex(d, &tables(d)?)?, "input file".to_string()),
        None => {
            let seed = opts.seed.unwrap_or(DEFAULT_SEED);
            let spec = random_chain_spec(&mut ChaCha8Rng::seed_from_u64(seed));
            (spec.build()?, format!("seed {seed}"))
        }
    };
    let report = compare_from_e2(&x, rmax);
    let mut o = String::new();
    let _ = writeln!(o, "instance {header}, S = {}, T = {}, pages 2..={rmax}", x.s_max(), x.t_max());
    o.push_str(&report.to_text());
    Ok(Report::new(o, report.all_pass()))
}

/// The text of the instance `ss-compare --seed` draws.
pub fn seeded_instance_text(seed: u64) -> String {
    let spec = random_chain_spec(&mut ChaCha8Rng::seed_from_u64(seed));
    build::chain_spec_document(&spec).expect("generated modules are diagonal").to_text()
}

//! Line-oriented text format for matrices, complexes, cosimplicial objects and Čech data.
//!
//! A file is a sequence of sections. A section starts with an upper-case keyword
//! line and runs until the next one. `#` starts a comment; blank lines are ignored.
//! [`Document::to_text`] prints the canonical form: single spaces, no comments,
//! a blank line between sections, point sets sorted and group summands grouped.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use descent_ss::{Error, Int};

pub type ParseResult<T> = std::result::Result<T, Error>;

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> ParseResult<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

/// Where a section starts in its file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }
}

/// `⊕ ℤ/dᵢ` with `dᵢ = 0` for a free summand, one ambient coordinate each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub moduli: Vec<Int>,
}

impl GroupSpec {
    fn text(&self) -> String {
        if self.moduli.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.moduli.len() {
            let m = &self.moduli[i];
            let run = self.moduli[i..].iter().take_while(|x| *x == m).count();
            let base = if m == &Int::from(0) { "Z".to_string() } else { format!("Z/{m}") };
            parts.push(if run == 1 { base } else { format!("{base}^{run}") });
            i += run;
        }
        parts.join("+")
    }
}

/// Rows of an inline matrix `[a b; c d]`; `[]` has no entries and takes its shape from context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMatrix {
    pub rows: Vec<Vec<Int>>,
    pub pos: Pos,
}

impl RawMatrix {
    fn text(&self) -> String {
        if self.rows.iter().all(Vec::is_empty) {
            return "[]".into();
        }
        let rows: Vec<String> = self.rows.iter().map(|r| join(r)).collect();
        format!("[{}]", rows.join("; "))
    }
}

impl PartialOrd for RawMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.rows.cmp(&other.rows))
    }
}

/// A finite group by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinGroupSpec {
    Trivial,
    Cyclic(usize),
    Symmetric(usize),
    Quaternion,
    /// A `GROUP_TABLE` section.
    Table(String),
}

impl FinGroupSpec {
    fn text(&self) -> String {
        match self {
            FinGroupSpec::Trivial => "trivial".into(),
            FinGroupSpec::Cyclic(n) => format!("cyclic {n}"),
            FinGroupSpec::Symmetric(n) => format!("symmetric {n}"),
            FinGroupSpec::Quaternion => "quaternion".into(),
            FinGroupSpec::Table(name) => format!("@{name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSection {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Int>>,
}

/// Levels in degrees `lo, lo + 1, …`; `diffs[n]` maps degree `n` to `n + 1`, absent means zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSection {
    pub lo: i64,
    pub levels: Vec<GroupSpec>,
    pub diffs: BTreeMap<i64, RawMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosimplicialSection {
    /// Abelian levels with every coface and codegeneracy matrix.
    Explicit {
        n: usize,
        levels: Vec<GroupSpec>,
        cofaces: BTreeMap<(usize, usize), RawMatrix>,
        codegeneracies: BTreeMap<(usize, usize), RawMatrix>,
    },
    Constant { n: usize, group: GroupSpec },
    /// Inhomogeneous cochains of a finite group; unlisted elements act trivially.
    Cobar { n: usize, group: FinGroupSpec, module: GroupSpec, action: BTreeMap<usize, RawMatrix> },
    /// Cochains on the simplicial circle.
    Circle { n: usize, group: GroupSpec },
    /// Finite group levels with coface and codegeneracy element maps.
    Groups {
        n: usize,
        levels: Vec<FinGroupSpec>,
        cofaces: BTreeMap<(usize, usize), Vec<usize>>,
        codegeneracies: BTreeMap<(usize, usize), Vec<usize>>,
    },
    GroupConstant { n: usize, group: FinGroupSpec },
    /// Nonabelian cobar of `gamma` acting on `k` by the listed automorphisms (trivial if unlisted).
    GroupCobar { n: usize, gamma: FinGroupSpec, k: FinGroupSpec, action: BTreeMap<usize, Vec<usize>> },
    PointedCircle { n: usize, group: FinGroupSpec },
}

impl CosimplicialSection {
    pub fn truncation(&self) -> usize {
        match self {
            CosimplicialSection::Explicit { n, .. }
            | CosimplicialSection::Constant { n, .. }
            | CosimplicialSection::Cobar { n, .. }
            | CosimplicialSection::Circle { n, .. }
            | CosimplicialSection::Groups { n, .. }
            | CosimplicialSection::GroupConstant { n, .. }
            | CosimplicialSection::GroupCobar { n, .. }
            | CosimplicialSection::PointedCircle { n, .. } => *n,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(
            self,
            CosimplicialSection::Explicit { .. }
                | CosimplicialSection::Constant { .. }
                | CosimplicialSection::Cobar { .. }
                | CosimplicialSection::Circle { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTableSection {
    pub name: String,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiteSection {
    Point,
    /// Subsets of `{0, …, points - 1}`, closed under intersection when built.
    Subsets { points: usize, opens: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverSection {
    /// Members as point sets; pieces are the pairwise meets.
    Cech { members: Vec<Vec<usize>> },
    /// Members and explicit pieces `V_ij` for every ordered pair.
    Hyper { members: Vec<Vec<usize>>, pieces: BTreeMap<(usize, usize), Vec<Vec<usize>>> },
    /// The nerve of a finite group over a point.
    Nerve { group: FinGroupSpec },
    /// Open stars of the vertices of a simplicial complex.
    Stars { facets: Vec<Vec<usize>> },
    /// Open stars with `U_a ∧ U_b` split into two pieces.
    RefinedStars { a: usize, b: usize, facets: Vec<Vec<usize>> },
}

impl CoverSection {
    pub fn needs_site(&self) -> bool {
        matches!(self, CoverSection::Cech { .. } | CoverSection::Hyper { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresheafSection {
    Constant(GroupSpec),
    /// Values on the listed opens (zero elsewhere) and restrictions between them.
    Explicit { values: BTreeMap<Vec<usize>, GroupSpec>, restrictions: BTreeMap<(Vec<usize>, Vec<usize>), RawMatrix> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaSection {
    /// `α` given by its coordinates on the invariant generators of `Ȟ²`.
    Class(Vec<Int>),
    /// Gluing data in a constant ambient presheaf `E` with `F(u) → E(u)` the same matrix on nonempty opens.
    Explicit { ambient: GroupSpec, inclusion: RawMatrix, edges: BTreeMap<(usize, usize, usize), Vec<Int>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
    Matrix(MatrixSection),
    Complex(ComplexSection),
    Cosimplicial(CosimplicialSection),
    GroupTable(GroupTableSection),
    Site(SiteSection),
    Cover(CoverSection),
    Presheaf(PresheafSection),
    Theta(ThetaSection),
}

impl Section {
    pub fn keyword(&self) -> &'static str {
        match self {
            Section::Matrix(_) => "MATRIX",
            Section::Complex(_) => "COMPLEX",
            Section::Cosimplicial(_) => "COSIMPLICIAL",
            Section::GroupTable(_) => "GROUP_TABLE",
            Section::Site(_) => "SITE",
            Section::Cover(_) => "COVER",
            Section::Presheaf(_) => "PRESHEAF",
            Section::Theta(_) => "THETA",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub sections: Vec<(Pos, Section)>,
}

const KEYWORDS: [&str; 8] = ["MATRIX", "COMPLEX", "COSIMPLICIAL", "GROUP_TABLE", "SITE", "COVER", "PRESHEAF", "THETA"];

#[derive(Clone, Debug)]
struct Tok {
    text: String,
    col: usize,
}

#[derive(Clone, Debug)]
struct Line {
    no: usize,
    toks: Vec<Tok>,
}

fn tokenize(src: &str) -> Vec<Line> {
    let mut out = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let mut toks = Vec::new();
        let mut cur = String::new();
        let mut start = 0;
        for (c, ch) in raw.chars().enumerate() {
            if ch == '#' {
                break;
            }
            let special = matches!(ch, '[' | ']' | ';' | '{' | '}');
            if ch.is_whitespace() || special {
                if !cur.is_empty() {
                    toks.push(Tok { text: std::mem::take(&mut cur), col: start + 1 });
                }
                if special {
                    toks.push(Tok { text: ch.to_string(), col: c + 1 });
                }
            } else {
                if cur.is_empty() {
                    start = c;
                }
                cur.push(ch);
            }
        }
        if !cur.is_empty() {
            toks.push(Tok { text: cur, col: start + 1 });
        }
        if !toks.is_empty() {
            out.push(Line { no: k + 1, toks });
        }
    }
    out
}

struct Cursor<'a> {
    line: &'a Line,
    i: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: &'a Line) -> Self {
        Cursor { line, i: 0 }
    }

    fn here(&self) -> (usize, usize) {
        match self.line.toks.get(self.i) {
            Some(t) => (self.line.no, t.col),
            None => {
                let last = self.line.toks.last().expect("lines are nonempty");
                (self.line.no, last.col + last.text.chars().count())
            }
        }
    }

    fn pos(&self) -> Pos {
        let (line, col) = self.here();
        Pos { line, col }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> ParseResult<T> {
        let (l, c) = self.here();
        err(l, c, msg)
    }

    fn peek(&self) -> Option<&'a str> {
        self.line.toks.get(self.i).map(|t| t.text.as_str())
    }

    fn next(&mut self, what: &str) -> ParseResult<&'a str> {
        match self.line.toks.get(self.i) {
            Some(t) => {
                self.i += 1;
                Ok(t.text.as_str())
            }
            None => self.fail(format!("expected {what}")),
        }
    }

    fn expect(&mut self, word: &str) -> ParseResult<()> {
        let p = self.here();
        let w = self.next(&format!("'{word}'"))?;
        if w != word {
            return err(p.0, p.1, format!("expected '{word}', found '{w}'"));
        }
        Ok(())
    }

    fn end(&self) -> ParseResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(w) => self.fail(format!("unexpected '{w}'")),
        }
    }

    fn int(&mut self) -> ParseResult<Int> {
        let p = self.here();
        let w = self.next("an integer")?;
        parse_int(w).ok_or_else(|| Error::Parse { line: p.0, col: p.1, msg: format!("expected an integer, found '{w}'") })
    }

    fn usize(&mut self) -> ParseResult<usize> {
        let p = self.here();
        let w = self.next("a count")?;
        w.parse::<usize>()
            .ok()
            .filter(|_| is_canonical_nat(w))
            .ok_or_else(|| Error::Parse { line: p.0, col: p.1, msg: format!("expected a nonnegative integer, found '{w}'") })
    }

    fn i64(&mut self) -> ParseResult<i64> {
        let p = self.here();
        let w = self.next("a degree")?;
        w.parse::<i64>()
            .ok()
            .filter(|_| parse_int(w).is_some())
            .ok_or_else(|| Error::Parse { line: p.0, col: p.1, msg: format!("expected a degree, found '{w}'") })
    }

    fn ints_to_end(&mut self) -> ParseResult<Vec<Int>> {
        let mut v = Vec::new();
        while self.peek().is_some() {
            v.push(self.int()?);
        }
        Ok(v)
    }

    fn usizes_to_end(&mut self) -> ParseResult<Vec<usize>> {
        let mut v = Vec::new();
        while self.peek().is_some() {
            v.push(self.usize()?);
        }
        Ok(v)
    }

    fn group(&mut self) -> ParseResult<GroupSpec> {
        let p = self.here();
        let w = self.next("a group such as Z+Z/4")?;
        parse_group(w).ok_or_else(|| Error::Parse { line: p.0, col: p.1, msg: format!("bad group '{w}'") })
    }

    fn matrix(&mut self) -> ParseResult<RawMatrix> {
        let pos = self.pos();
        self.expect("[")?;
        let mut rows = vec![Vec::new()];
        loop {
            match self.peek() {
                Some("]") => {
                    self.i += 1;
                    break;
                }
                Some(";") => {
                    self.i += 1;
                    rows.push(Vec::new());
                }
                Some(_) => {
                    let x = self.int()?;
                    rows.last_mut().unwrap().push(x);
                }
                None => return self.fail("unterminated matrix"),
            }
        }
        if rows.len() == 1 && rows[0].is_empty() {
            rows.clear();
        }
        if rows.iter().any(|r| r.len() != rows[0].len() || r.is_empty()) {
            return err(pos.line, pos.col, "matrix rows have different lengths");
        }
        Ok(RawMatrix { rows, pos })
    }

    fn list(&mut self) -> ParseResult<Vec<usize>> {
        let m = self.matrix()?;
        match m.rows.len() {
            0 => Ok(Vec::new()),
            1 => m.rows[0]
                .iter()
                .map(|x| usize::try_from(x).map_err(|_| m.pos.error("list entries must be nonnegative")))
                .collect(),
            _ => Err(m.pos.error("expected a single row")),
        }
    }

    fn set(&mut self) -> ParseResult<Vec<usize>> {
        let pos = self.pos();
        self.expect("{")?;
        let mut v = Vec::new();
        loop {
            match self.peek() {
                Some("}") => {
                    self.i += 1;
                    break;
                }
                Some(_) => v.push(self.usize()?),
                None => return self.fail("unterminated set"),
            }
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(pos.error("repeated point"));
        }
        Ok(v)
    }

    fn fin_group(&mut self) -> ParseResult<FinGroupSpec> {
        let p = self.here();
        let w = self.next("a finite group")?;
        Ok(match w {
            "trivial" => FinGroupSpec::Trivial,
            "quaternion" => FinGroupSpec::Quaternion,
            "cyclic" => FinGroupSpec::Cyclic(self.positive()?),
            "symmetric" => FinGroupSpec::Symmetric(self.positive()?),
            _ if w.len() > 1 && w.starts_with('@') && is_name(&w[1..]) => FinGroupSpec::Table(w[1..].to_string()),
            _ => return err(p.0, p.1, format!("unknown finite group '{w}'")),
        })
    }

    fn positive(&mut self) -> ParseResult<usize> {
        let p = self.here();
        let n = self.usize()?;
        if n == 0 {
            return err(p.0, p.1, "expected a positive integer");
        }
        Ok(n)
    }
}

fn is_canonical_nat(w: &str) -> bool {
    !w.is_empty() && w.chars().all(|c| c.is_ascii_digit()) && (w == "0" || !w.starts_with('0'))
}

fn parse_int(w: &str) -> Option<Int> {
    let digits = w.strip_prefix('-').unwrap_or(w);
    if !is_canonical_nat(digits) || w == "-0" {
        return None;
    }
    w.parse().ok()
}

fn is_name(w: &str) -> bool {
    w.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_group(w: &str) -> Option<GroupSpec> {
    if w == "0" {
        return Some(GroupSpec { moduli: Vec::new() });
    }
    let mut moduli = Vec::new();
    for part in w.split('+') {
        let (base, count) = match part.split_once('^') {
            Some((b, c)) if is_canonical_nat(c) && c != "0" => (b, c.parse::<usize>().ok()?),
            Some(_) => return None,
            None => (part, 1),
        };
        let m = if base == "Z" {
            Int::from(0)
        } else {
            let d = base.strip_prefix("Z/")?;
            if !is_canonical_nat(d) || d == "0" {
                return None;
            }
            d.parse().ok()?
        };
        moduli.extend(std::iter::repeat_n(m, count));
    }
    Some(GroupSpec { moduli })
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn set_text(v: &[usize]) -> String {
    if v.is_empty() {
        "{}".into()
    } else {
        format!("{{{}}}", join(v))
    }
}

fn list_text(v: &[usize]) -> String {
    if v.is_empty() {
        "[]".into()
    } else {
        format!("[{}]", join(v))
    }
}

/// Body lines of one section, with the header cursor.
struct Block<'a> {
    header: Cursor<'a>,
    body: &'a [Line],
}

impl Document {
    pub fn parse(src: &str) -> ParseResult<Document> {
        let lines = tokenize(src);
        let mut blocks = Vec::new();
        let mut k = 0;
        while k < lines.len() {
            let head = &lines[k];
            let word = head.toks[0].text.as_str();
            if !KEYWORDS.contains(&word) {
                return err(head.no, head.toks[0].col, format!("expected a section keyword, found '{word}'"));
            }
            let mut e = k + 1;
            while e < lines.len() && !KEYWORDS.contains(&lines[e].toks[0].text.as_str()) {
                e += 1;
            }
            blocks.push(Block { header: Cursor { line: head, i: 1 }, body: &lines[k + 1..e] });
            k = e;
        }
        let mut doc = Document::default();
        for b in blocks {
            let pos = Pos { line: b.header.line.no, col: 1 };
            let section = match b.header.line.toks[0].text.as_str() {
                "MATRIX" => Section::Matrix(parse_matrix(b)?),
                "COMPLEX" => Section::Complex(parse_complex(b)?),
                "COSIMPLICIAL" => Section::Cosimplicial(parse_cosimplicial(b)?),
                "GROUP_TABLE" => Section::GroupTable(parse_table(b)?),
                "SITE" => Section::Site(parse_site(b)?),
                "COVER" => Section::Cover(parse_cover(b)?),
                "PRESHEAF" => Section::Presheaf(parse_presheaf(b)?),
                "THETA" => Section::Theta(parse_theta(b)?),
                _ => unreachable!(),
            };
            doc.sections.push((pos, section));
        }
        Ok(doc)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.sections.iter().map(|(_, s)| section_text(s)).collect();
        parts.join("\n")
    }

    pub fn find(&self, keyword: &str) -> Vec<(Pos, &Section)> {
        self.sections.iter().filter(|(_, s)| s.keyword() == keyword).map(|(p, s)| (*p, s)).collect()
    }

    /// The single section with this keyword, if present.
    pub fn one(&self, keyword: &str) -> ParseResult<Option<(Pos, &Section)>> {
        let found = self.find(keyword);
        match found.len() {
            0 => Ok(None),
            1 => Ok(Some(found[0])),
            _ => Err(found[1].0.error(format!("second {keyword} section"))),
        }
    }

    pub fn require(&self, keyword: &str) -> ParseResult<(Pos, &Section)> {
        self.one(keyword)?.ok_or_else(|| Pos { line: 1, col: 1 }.error(format!("missing {keyword} section")))
    }

    pub fn tables(&self) -> ParseResult<BTreeMap<String, Vec<Vec<usize>>>> {
        let mut out = BTreeMap::new();
        for (p, s) in self.find("GROUP_TABLE") {
            let Section::GroupTable(t) = s else { unreachable!() };
            if out.insert(t.name.clone(), t.table.clone()).is_some() {
                return Err(p.error(format!("group table '{}' defined twice", t.name)));
            }
        }
        Ok(out)
    }
}

fn no_body(b: &Block) -> ParseResult<()> {
    match b.body.first() {
        Some(l) => err(l.no, l.toks[0].col, "this section takes no body lines"),
        None => Ok(()),
    }
}

fn parse_matrix(mut b: Block) -> ParseResult<MatrixSection> {
    let rows = b.header.usize()?;
    let cols = b.header.usize()?;
    b.header.end()?;
    if b.body.len() != rows {
        let (l, c) = b.header.here();
        return err(l, c, format!("expected {rows} rows, found {}", b.body.len()));
    }
    let mut entries = Vec::with_capacity(rows);
    for line in b.body {
        let mut c = Cursor::new(line);
        let row = c.ints_to_end()?;
        if row.len() != cols {
            return err(line.no, line.toks[0].col, format!("expected {cols} entries, found {}", row.len()));
        }
        entries.push(row);
    }
    Ok(MatrixSection { rows, cols, entries })
}

fn parse_complex(mut b: Block) -> ParseResult<ComplexSection> {
    let lo = b.header.i64()?;
    b.header.end()?;
    let mut levels = Vec::new();
    let mut diffs = BTreeMap::new();
    for line in b.body {
        let mut c = Cursor::new(line);
        match c.next("a line kind")? {
            "level" => {
                if !diffs.is_empty() {
                    return err(line.no, line.toks[0].col, "levels must come before differentials");
                }
                levels.push(c.group()?);
            }
            "diff" => {
                let p = c.here();
                let n = c.i64()?;
                if n < lo || n + 1 >= lo + levels.len() as i64 {
                    return err(p.0, p.1, format!("no levels in degrees {n} and {}", n + 1));
                }
                let m = c.matrix()?;
                if diffs.insert(n, m).is_some() {
                    return err(p.0, p.1, format!("second differential in degree {n}"));
                }
            }
            w => return err(line.no, line.toks[0].col, format!("expected 'level' or 'diff', found '{w}'")),
        }
        c.end()?;
    }
    Ok(ComplexSection { lo, levels, diffs })
}

fn face_key(c: &mut Cursor, n: usize, coface: bool) -> ParseResult<(usize, usize)> {
    let p = c.here();
    let m = c.usize()?;
    let i = c.usize()?;
    let ok = if coface { (1..=n).contains(&m) && i <= m } else { m < n && i <= m };
    if !ok {
        return err(p.0, p.1, format!("no {} ({m}, {i}) at truncation {n}", if coface { "coface" } else { "codegeneracy" }));
    }
    Ok((m, i))
}

fn parse_cosimplicial(mut b: Block) -> ParseResult<CosimplicialSection> {
    let h = &mut b.header;
    let kp = h.here();
    let kind = h.next("a cosimplicial kind")?;
    let n = h.usize()?;
    let section = match kind {
        "explicit" => {
            h.end()?;
            let mut levels = Vec::new();
            let mut cofaces = BTreeMap::new();
            let mut codegeneracies = BTreeMap::new();
            for line in b.body {
                let mut c = Cursor::new(line);
                match c.next("a line kind")? {
                    "level" => levels.push(c.group()?),
                    w @ ("coface" | "codegeneracy") => {
                        let p = c.here();
                        let key = face_key(&mut c, n, w == "coface")?;
                        let target = if w == "coface" { &mut cofaces } else { &mut codegeneracies };
                        if target.insert(key, c.matrix()?).is_some() {
                            return err(p.0, p.1, format!("{w} {key:?} given twice"));
                        }
                    }
                    w => return err(line.no, line.toks[0].col, format!("unexpected '{w}'")),
                }
                c.end()?;
            }
            CosimplicialSection::Explicit { n, levels, cofaces, codegeneracies }
        }
        "constant" | "circle" => {
            let group = h.group()?;
            h.end()?;
            no_body(&b)?;
            if kind == "constant" {
                CosimplicialSection::Constant { n, group }
            } else {
                CosimplicialSection::Circle { n, group }
            }
        }
        "cobar" => {
            let group = h.fin_group()?;
            let module = h.group()?;
            h.end()?;
            let mut action = BTreeMap::new();
            for line in b.body {
                let mut c = Cursor::new(line);
                c.expect("action")?;
                let p = c.here();
                let g = c.usize()?;
                if action.insert(g, c.matrix()?).is_some() {
                    return err(p.0, p.1, format!("action of {g} given twice"));
                }
                c.end()?;
            }
            CosimplicialSection::Cobar { n, group, module, action }
        }
        "groups" => {
            h.end()?;
            let mut levels = Vec::new();
            let mut cofaces = BTreeMap::new();
            let mut codegeneracies = BTreeMap::new();
            for line in b.body {
                let mut c = Cursor::new(line);
                match c.next("a line kind")? {
                    "level" => levels.push(c.fin_group()?),
                    w @ ("coface" | "codegeneracy") => {
                        let p = c.here();
                        let key = face_key(&mut c, n, w == "coface")?;
                        let target = if w == "coface" { &mut cofaces } else { &mut codegeneracies };
                        if target.insert(key, c.list()?).is_some() {
                            return err(p.0, p.1, format!("{w} {key:?} given twice"));
                        }
                    }
                    w => return err(line.no, line.toks[0].col, format!("unexpected '{w}'")),
                }
                c.end()?;
            }
            CosimplicialSection::Groups { n, levels, cofaces, codegeneracies }
        }
        "group-constant" | "pointed-circle" => {
            let group = h.fin_group()?;
            h.end()?;
            no_body(&b)?;
            if kind == "group-constant" {
                CosimplicialSection::GroupConstant { n, group }
            } else {
                CosimplicialSection::PointedCircle { n, group }
            }
        }
        "group-cobar" => {
            let gamma = h.fin_group()?;
            let k = h.fin_group()?;
            h.end()?;
            let mut action = BTreeMap::new();
            for line in b.body {
                let mut c = Cursor::new(line);
                c.expect("action")?;
                let p = c.here();
                let g = c.usize()?;
                if action.insert(g, c.list()?).is_some() {
                    return err(p.0, p.1, format!("action of {g} given twice"));
                }
                c.end()?;
            }
            CosimplicialSection::GroupCobar { n, gamma, k, action }
        }
        _ => return err(kp.0, kp.1, format!("unknown cosimplicial kind '{kind}'")),
    };
    Ok(section)
}

fn parse_table(mut b: Block) -> ParseResult<GroupTableSection> {
    let p = b.header.here();
    let name = b.header.next("a table name")?.to_string();
    if !is_name(&name) {
        return err(p.0, p.1, format!("bad table name '{name}'"));
    }
    let order = b.header.positive()?;
    b.header.end()?;
    if b.body.len() != order {
        return err(p.0, p.1, format!("expected {order} rows, found {}", b.body.len()));
    }
    let mut table = Vec::new();
    for line in b.body {
        let row = Cursor::new(line).usizes_to_end()?;
        if row.len() != order {
            return err(line.no, line.toks[0].col, format!("expected {order} entries, found {}", row.len()));
        }
        table.push(row);
    }
    Ok(GroupTableSection { name, table })
}

fn parse_site(mut b: Block) -> ParseResult<SiteSection> {
    let p = b.header.here();
    match b.header.next("'point' or 'subsets'")? {
        "point" => {
            b.header.end()?;
            no_body(&b)?;
            Ok(SiteSection::Point)
        }
        "subsets" => {
            let points = b.header.usize()?;
            b.header.end()?;
            let mut opens = Vec::new();
            for line in b.body {
                let mut c = Cursor::new(line);
                c.expect("open")?;
                let sp = c.here();
                let s = c.set()?;
                if let Some(&x) = s.iter().find(|&&x| x >= points) {
                    return err(sp.0, sp.1, format!("point {x} out of range"));
                }
                opens.push(s);
                c.end()?;
            }
            Ok(SiteSection::Subsets { points, opens })
        }
        w => err(p.0, p.1, format!("unknown site kind '{w}'")),
    }
}

fn parse_facets(body: &[Line]) -> ParseResult<Vec<Vec<usize>>> {
    let mut facets = Vec::new();
    for line in body {
        let mut c = Cursor::new(line);
        c.expect("facet")?;
        let p = c.here();
        let mut f = c.usizes_to_end()?;
        f.sort_unstable();
        if f.is_empty() || f.windows(2).any(|w| w[0] == w[1]) {
            return err(p.0, p.1, "a facet lists distinct vertices");
        }
        facets.push(f);
    }
    Ok(facets)
}

fn parse_cover(mut b: Block) -> ParseResult<CoverSection> {
    let p = b.header.here();
    let kind = b.header.next("a cover kind")?;
    match kind {
        "cech" | "hyper" => {
            b.header.end()?;
            let mut members = Vec::new();
            let mut pieces: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
            for line in b.body {
                let mut c = Cursor::new(line);
                match c.next("a line kind")? {
                    "member" => {
                        if !pieces.is_empty() {
                            return err(line.no, line.toks[0].col, "members must come before pieces");
                        }
                        members.push(c.set()?)
                    }
                    "piece" if kind == "hyper" => {
                        let q = c.here();
                        let (i, j) = (c.usize()?, c.usize()?);
                        if i >= members.len() || j >= members.len() {
                            return err(q.0, q.1, format!("no members {i} and {j}"));
                        }
                        let s = c.set()?;
                        pieces.entry((i, j)).or_default().push(s);
                    }
                    w => return err(line.no, line.toks[0].col, format!("unexpected '{w}'")),
                }
                c.end()?;
            }
            if kind == "cech" {
                Ok(CoverSection::Cech { members })
            } else {
                Ok(CoverSection::Hyper { members, pieces })
            }
        }
        "nerve" => {
            let group = b.header.fin_group()?;
            b.header.end()?;
            no_body(&b)?;
            Ok(CoverSection::Nerve { group })
        }
        "stars" => {
            b.header.end()?;
            Ok(CoverSection::Stars { facets: parse_facets(b.body)? })
        }
        "refined-stars" => {
            let a = b.header.usize()?;
            let bb = b.header.usize()?;
            b.header.end()?;
            Ok(CoverSection::RefinedStars { a, b: bb, facets: parse_facets(b.body)? })
        }
        w => err(p.0, p.1, format!("unknown cover kind '{w}'")),
    }
}

fn parse_presheaf(mut b: Block) -> ParseResult<PresheafSection> {
    let p = b.header.here();
    match b.header.next("'constant' or 'explicit'")? {
        "constant" => {
            let g = b.header.group()?;
            b.header.end()?;
            no_body(&b)?;
            Ok(PresheafSection::Constant(g))
        }
        "explicit" => {
            b.header.end()?;
            let mut values = BTreeMap::new();
            let mut restrictions = BTreeMap::new();
            for line in b.body {
                let mut c = Cursor::new(line);
                match c.next("a line kind")? {
                    "value" => {
                        let q = c.here();
                        let u = c.set()?;
                        if values.insert(u, c.group()?).is_some() {
                            return err(q.0, q.1, "value given twice");
                        }
                    }
                    "restrict" => {
                        let q = c.here();
                        let u = c.set()?;
                        let v = c.set()?;
                        if restrictions.insert((u, v), c.matrix()?).is_some() {
                            return err(q.0, q.1, "restriction given twice");
                        }
                    }
                    w => return err(line.no, line.toks[0].col, format!("unexpected '{w}'")),
                }
                c.end()?;
            }
            Ok(PresheafSection::Explicit { values, restrictions })
        }
        w => err(p.0, p.1, format!("unknown presheaf kind '{w}'")),
    }
}

fn parse_theta(mut b: Block) -> ParseResult<ThetaSection> {
    let p = b.header.here();
    match b.header.next("'class' or 'explicit'")? {
        "class" => {
            let coords = b.header.ints_to_end()?;
            no_body(&b)?;
            Ok(ThetaSection::Class(coords))
        }
        "explicit" => {
            b.header.end()?;
            let mut ambient = None;
            let mut inclusion = None;
            let mut edges = BTreeMap::new();
            for line in b.body {
                let mut c = Cursor::new(line);
                match c.next("a line kind")? {
                    "ambient" => ambient = Some(c.group()?),
                    "inclusion" => inclusion = Some(c.matrix()?),
                    "edge" => {
                        let q = c.here();
                        let key = (c.usize()?, c.usize()?, c.usize()?);
                        if edges.insert(key, c.ints_to_end()?).is_some() {
                            return err(q.0, q.1, "edge given twice");
                        }
                    }
                    w => return err(line.no, line.toks[0].col, format!("unexpected '{w}'")),
                }
                c.end()?;
            }
            let ambient = ambient.ok_or_else(|| Error::Parse { line: p.0, col: p.1, msg: "missing 'ambient' line".into() })?;
            let inclusion = inclusion.ok_or_else(|| Error::Parse { line: p.0, col: p.1, msg: "missing 'inclusion' line".into() })?;
            Ok(ThetaSection::Explicit { ambient, inclusion, edges })
        }
        w => err(p.0, p.1, format!("unknown theta kind '{w}'")),
    }
}

fn section_text(s: &Section) -> String {
    let mut o = String::new();
    match s {
        Section::Matrix(m) => {
            let _ = writeln!(o, "MATRIX {} {}", m.rows, m.cols);
            for r in &m.entries {
                let _ = writeln!(o, "{}", join(r));
            }
        }
        Section::Complex(c) => {
            let _ = writeln!(o, "COMPLEX {}", c.lo);
            for g in &c.levels {
                let _ = writeln!(o, "level {}", g.text());
            }
            for (n, m) in &c.diffs {
                let _ = writeln!(o, "diff {n} {}", m.text());
            }
        }
        Section::Cosimplicial(c) => cosimplicial_text(&mut o, c),
        Section::GroupTable(t) => {
            let _ = writeln!(o, "GROUP_TABLE {} {}", t.name, t.table.len());
            for r in &t.table {
                let _ = writeln!(o, "{}", join(r));
            }
        }
        Section::Site(SiteSection::Point) => o.push_str("SITE point\n"),
        Section::Site(SiteSection::Subsets { points, opens }) => {
            let _ = writeln!(o, "SITE subsets {points}");
            for u in opens {
                let _ = writeln!(o, "open {}", set_text(u));
            }
        }
        Section::Cover(c) => match c {
            CoverSection::Cech { members } => {
                o.push_str("COVER cech\n");
                for m in members {
                    let _ = writeln!(o, "member {}", set_text(m));
                }
            }
            CoverSection::Hyper { members, pieces } => {
                o.push_str("COVER hyper\n");
                for m in members {
                    let _ = writeln!(o, "member {}", set_text(m));
                }
                for ((i, j), list) in pieces {
                    for v in list {
                        let _ = writeln!(o, "piece {i} {j} {}", set_text(v));
                    }
                }
            }
            CoverSection::Nerve { group } => {
                let _ = writeln!(o, "COVER nerve {}", group.text());
            }
            CoverSection::Stars { facets } => {
                o.push_str("COVER stars\n");
                for f in facets {
                    let _ = writeln!(o, "facet {}", join(f));
                }
            }
            CoverSection::RefinedStars { a, b, facets } => {
                let _ = writeln!(o, "COVER refined-stars {a} {b}");
                for f in facets {
                    let _ = writeln!(o, "facet {}", join(f));
                }
            }
        },
        Section::Presheaf(PresheafSection::Constant(g)) => {
            let _ = writeln!(o, "PRESHEAF constant {}", g.text());
        }
        Section::Presheaf(PresheafSection::Explicit { values, restrictions }) => {
            o.push_str("PRESHEAF explicit\n");
            for (u, g) in values {
                let _ = writeln!(o, "value {} {}", set_text(u), g.text());
            }
            for ((u, v), m) in restrictions {
                let _ = writeln!(o, "restrict {} {} {}", set_text(u), set_text(v), m.text());
            }
        }
        Section::Theta(ThetaSection::Class(c)) => {
            if c.is_empty() {
                o.push_str("THETA class\n");
            } else {
                let _ = writeln!(o, "THETA class {}", join(c));
            }
        }
        Section::Theta(ThetaSection::Explicit { ambient, inclusion, edges }) => {
            o.push_str("THETA explicit\n");
            let _ = writeln!(o, "ambient {}", ambient.text());
            let _ = writeln!(o, "inclusion {}", inclusion.text());
            for ((i, j, a), v) in edges {
                if v.is_empty() {
                    let _ = writeln!(o, "edge {i} {j} {a}");
                } else {
                    let _ = writeln!(o, "edge {i} {j} {a} {}", join(v));
                }
            }
        }
    }
    o
}

fn cosimplicial_text(o: &mut String, c: &CosimplicialSection) {
    match c {
        CosimplicialSection::Explicit { n, levels, cofaces, codegeneracies } => {
            let _ = writeln!(o, "COSIMPLICIAL explicit {n}");
            for g in levels {
                let _ = writeln!(o, "level {}", g.text());
            }
            for ((m, i), mat) in cofaces {
                let _ = writeln!(o, "coface {m} {i} {}", mat.text());
            }
            for ((m, i), mat) in codegeneracies {
                let _ = writeln!(o, "codegeneracy {m} {i} {}", mat.text());
            }
        }
        CosimplicialSection::Constant { n, group } => {
            let _ = writeln!(o, "COSIMPLICIAL constant {n} {}", group.text());
        }
        CosimplicialSection::Circle { n, group } => {
            let _ = writeln!(o, "COSIMPLICIAL circle {n} {}", group.text());
        }
        CosimplicialSection::Cobar { n, group, module, action } => {
            let _ = writeln!(o, "COSIMPLICIAL cobar {n} {} {}", group.text(), module.text());
            for (g, m) in action {
                let _ = writeln!(o, "action {g} {}", m.text());
            }
        }
        CosimplicialSection::Groups { n, levels, cofaces, codegeneracies } => {
            let _ = writeln!(o, "COSIMPLICIAL groups {n}");
            for g in levels {
                let _ = writeln!(o, "level {}", g.text());
            }
            for ((m, i), f) in cofaces {
                let _ = writeln!(o, "coface {m} {i} {}", list_text(f));
            }
            for ((m, i), f) in codegeneracies {
                let _ = writeln!(o, "codegeneracy {m} {i} {}", list_text(f));
            }
        }
        CosimplicialSection::GroupConstant { n, group } => {
            let _ = writeln!(o, "COSIMPLICIAL group-constant {n} {}", group.text());
        }
        CosimplicialSection::PointedCircle { n, group } => {
            let _ = writeln!(o, "COSIMPLICIAL pointed-circle {n} {}", group.text());
        }
        CosimplicialSection::GroupCobar { n, gamma, k, action } => {
            let _ = writeln!(o, "COSIMPLICIAL group-cobar {n} {} {}", gamma.text(), k.text());
            for (g, f) in action {
                let _ = writeln!(o, "action {g} {}", list_text(f));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_spacing_and_comments() {
        let src = "# a matrix\nMATRIX 2 2\n 1   2 # first row\n3 4\n\nCOMPLEX -1\nlevel Z+Z\nlevel Z/4\ndiff -1 [1 2]\n";
        let doc = Document::parse(src).unwrap();
        assert_eq!(doc.to_text(), "MATRIX 2 2\n1 2\n3 4\n\nCOMPLEX -1\nlevel Z^2\nlevel Z/4\ndiff -1 [1 2]\n");
        assert_eq!(Document::parse(&doc.to_text()).unwrap().to_text(), doc.to_text());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = Document::parse("MATRIX 1 2\n1 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 3, .. }), "{e:?}");
        let e = Document::parse("COMPLEX 0\nlevel Z\nlevel Q\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, col: 7, .. }), "{e:?}");
        let e = Document::parse("level Z\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 1, .. }), "{e:?}");
        let e = Document::parse("COMPLEX 0\nlevel Z\ndiff 0 [1]\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, col: 6, .. }), "{e:?}");
    }

    #[test]
    fn groups_and_sets() {
        assert_eq!(parse_group("Z^2+Z/4").unwrap().moduli, vec![Int::from(0), Int::from(0), Int::from(4)]);
        assert!(parse_group("Z/0").is_none());
        assert!(parse_group("Z/04").is_none());
        let doc = Document::parse("SITE subsets 3\nopen {2 0}\nopen {}\n").unwrap();
        assert_eq!(doc.to_text(), "SITE subsets 3\nopen {0 2}\nopen {}\n");
        assert!(Document::parse("SITE subsets 3\nopen {1 1}\n").is_err());
    }

    #[test]
    fn every_kind_round_trips() {
        let src = "\
GROUP_TABLE C2 2
0 1
1 0

COSIMPLICIAL group-cobar 2 @C2 cyclic 3
action 1 [0 2 1]

COSIMPLICIAL cobar 3 cyclic 2 Z
action 1 [-1]

COVER hyper
member {0 1}
member {1 2}
piece 0 0 {0 1}
piece 0 1 {1}

PRESHEAF explicit
value {0} Z/2
restrict {0 1} {0} [1]

THETA explicit
ambient Z/4
inclusion [2]
edge 0 1 0 3
";
        let doc = Document::parse(src).unwrap();
        assert_eq!(doc.to_text(), src);
    }
}

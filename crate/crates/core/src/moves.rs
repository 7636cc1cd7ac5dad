//! Move patterns and the generator catalog of the ambient group.
//!
//! A move is an unordered pair of `k`-mosaics. Applied at a location it
//! swaps whichever side is present there and leaves every other mosaic
//! alone, so every move is an involution.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::tiles::D4Element;

const BASE_CATALOG: &str = include_str!("../data/catalog.txt");
const SUPPLEMENT: &str = include_str!("../data/catalog_supplement.txt");

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MovePattern {
    pub k: usize,
    pub side_a: Mosaic,
    pub side_b: Mosaic,
    /// `P6`, `R2`, ... with a `.r1m`-style suffix for symmetry variants.
    pub label: String,
}

impl MovePattern {
    pub fn new(label: impl Into<String>, side_a: Mosaic, side_b: Mosaic) -> Result<MovePattern> {
        let label = label.into();
        if side_a.side() != side_b.side() {
            return Err(Error::SideMismatch(side_a.side(), side_b.side()));
        }
        if side_a == side_b {
            return Err(Error::NotApplicable(format!("pattern {label} has identical sides")));
        }
        Ok(MovePattern {
            k: side_a.side(),
            side_a,
            side_b,
            label,
        })
    }

    pub fn transform(&self, g: D4Element) -> MovePattern {
        MovePattern {
            k: self.k,
            side_a: self.side_a.transform(g),
            side_b: self.side_b.transform(g),
            label: self.label.clone(),
        }
    }

    /// Both sides are internally consistent and expose the same boundary
    /// connection points, so the move maps knot mosaics to knot mosaics.
    pub fn is_boundary_consistent(&self) -> bool {
        self.side_a.is_interior_consistent()
            && self.side_b.is_interior_consistent()
            && self.side_a.boundary_profile() == self.side_b.boundary_profile()
    }

    fn unordered_key(&self) -> (Mosaic, Mosaic) {
        if self.side_a <= self.side_b {
            (self.side_a.clone(), self.side_b.clone())
        } else {
            (self.side_b.clone(), self.side_a.clone())
        }
    }

    /// Record form used by the catalog data file.
    pub fn serialize(&self) -> String {
        format!(
            "{} {}\n{}{}",
            self.k,
            self.label,
            self.side_a.serialize(),
            self.side_b.serialize()
        )
    }
}

/// A pattern (by catalog index) applied with its top-left corner at `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveApplication {
    pub pattern: usize,
    pub i: usize,
    pub j: usize,
}

/// Packs a block of at most 9 cells together with its side.
fn block_key(m: &Mosaic, k: usize, i: usize, j: usize) -> u64 {
    let n = m.side();
    let cells = m.cells();
    let mut key = (k as u64) << 60;
    for r in 0..k {
        for c in 0..k {
            key = key << 4 | cells[(i + r) * n + j + c].index() as u64;
        }
    }
    key
}

/// The generator set: patterns plus an index from block contents to the
/// patterns having that block as one side.
#[derive(Debug, Clone)]
pub struct Catalog {
    patterns: Vec<MovePattern>,
    index: HashMap<u64, Vec<usize>>,
    sizes: Vec<usize>,
    by_label: HashMap<String, usize>,
}

impl Catalog {
    /// Closes `base` under the eight symmetries of the square, dropping
    /// duplicate unordered pairs and any variant whose two sides disagree on
    /// the boundary.
    pub fn from_base(base: &[MovePattern]) -> Catalog {
        let mut seen = BTreeSet::new();
        let mut patterns = Vec::new();
        for p in base {
            for g in D4Element::all() {
                let mut q = p.transform(g);
                if !q.is_boundary_consistent() || !seen.insert(q.unordered_key()) {
                    continue;
                }
                if !g.is_identity() {
                    q.label = format!("{}.{}", p.label, g.suffix());
                }
                patterns.push(q);
            }
        }
        Catalog::from_patterns(patterns)
    }

    /// Uses `patterns` as given, without symmetry closure.
    pub fn from_patterns(patterns: Vec<MovePattern>) -> Catalog {
        let mut index: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut by_label = HashMap::new();
        let mut sizes = BTreeSet::new();
        for (idx, p) in patterns.iter().enumerate() {
            index.entry(block_key(&p.side_a, p.k, 0, 0)).or_default().push(idx);
            index.entry(block_key(&p.side_b, p.k, 0, 0)).or_default().push(idx);
            by_label.insert(p.label.clone(), idx);
            sizes.insert(p.k);
        }
        Catalog {
            patterns,
            index,
            sizes: sizes.into_iter().collect(),
            by_label,
        }
    }

    /// The base patterns shipped with the crate.
    pub fn base_patterns() -> Vec<MovePattern> {
        parse_patterns(BASE_CATALOG).expect("bundled catalog parses")
    }

    /// Further variants of the base moves (labels `V1`, `V2`, ...) needed for
    /// the orbit census; each draws the same tangle on both sides.
    pub fn supplement_patterns() -> Vec<MovePattern> {
        parse_patterns(SUPPLEMENT).expect("bundled supplement parses")
    }

    /// The closure of the bundled base and supplementary patterns, built once.
    pub fn standard() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            let mut base = Catalog::base_patterns();
            base.extend(Catalog::supplement_patterns());
            Catalog::from_base(&base)
        })
    }

    /// The closure of the bundled patterns plus `extra` records.
    pub fn with_extra(extra: &str) -> Result<Catalog> {
        let mut base = Catalog::base_patterns();
        base.extend(Catalog::supplement_patterns());
        base.extend(parse_patterns(extra)?);
        Ok(Catalog::from_base(&base))
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[MovePattern] {
        &self.patterns
    }

    pub fn pattern(&self, idx: usize) -> &MovePattern {
        &self.patterns[idx]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn contains_pair(&self, a: &Mosaic, b: &Mosaic) -> bool {
        self.patterns
            .iter()
            .any(|p| (&p.side_a == a && &p.side_b == b) || (&p.side_a == b && &p.side_b == a))
    }

    fn check(&self, m: &Mosaic, app: MoveApplication) -> Result<&MovePattern> {
        let p = self
            .patterns
            .get(app.pattern)
            .ok_or_else(|| Error::Bounds(format!("no pattern #{}", app.pattern)))?;
        if app.i + p.k > m.side() || app.j + p.k > m.side() {
            return Err(Error::Bounds(format!(
                "{}-move at ({}, {}) does not fit in a {}-mosaic",
                p.k,
                app.i,
                app.j,
                m.side()
            )));
        }
        Ok(p)
    }

    /// Applies in place; returns whether the mosaic changed.
    pub fn apply_in_place(&self, m: &mut Mosaic, app: MoveApplication) -> Result<bool> {
        let p = self.check(m, app)?;
        let replacement = if m.block_equals(&p.side_a, app.i, app.j) {
            &p.side_b
        } else if m.block_equals(&p.side_b, app.i, app.j) {
            &p.side_a
        } else {
            return Ok(false);
        };
        m.replace_block(replacement, app.i, app.j)?;
        Ok(true)
    }

    pub fn apply(&self, m: &Mosaic, app: MoveApplication) -> Result<Mosaic> {
        let mut out = m.clone();
        self.apply_in_place(&mut out, app)?;
        Ok(out)
    }

    /// Every application that changes `m`, ordered by pattern size, location
    /// and catalog index.
    pub fn applicable_moves(&self, m: &Mosaic) -> Vec<MoveApplication> {
        let mut out = Vec::new();
        let n = m.side();
        for &k in &self.sizes {
            if k > n {
                continue;
            }
            for i in 0..=n - k {
                for j in 0..=n - k {
                    if let Some(ids) = self.index.get(&block_key(m, k, i, j)) {
                        out.extend(ids.iter().map(|&pattern| MoveApplication { pattern, i, j }));
                    }
                }
            }
        }
        out
    }

    /// Every neighbor of `m` in the move graph, paired with the move used.
    pub fn neighbors(&self, m: &Mosaic) -> Vec<(MoveApplication, Mosaic)> {
        self.applicable_moves(m)
            .into_iter()
            .map(|app| (app, self.apply(m, app).expect("applicable move is in range")))
            .collect()
    }

    pub fn format_step(&self, app: MoveApplication) -> String {
        format!("{}@({},{})", self.patterns[app.pattern].label, app.i, app.j)
    }

    pub fn parse_step(&self, s: &str) -> Result<MoveApplication> {
        let bad = || Error::parse(1, 1, format!("malformed step `{s}`"));
        let (label, loc) = s.trim().split_once('@').ok_or_else(bad)?;
        let loc = loc
            .strip_prefix('(')
            .and_then(|l| l.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (i, j) = loc.split_once(',').ok_or_else(bad)?;
        let i = i.trim().parse().map_err(|_| bad())?;
        let j = j.trim().parse().map_err(|_| bad())?;
        let pattern = self
            .find_label(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(MoveApplication { pattern, i, j })
    }

    /// The catalog in data-file form.
    pub fn serialize(&self) -> String {
        self.patterns
            .iter()
            .map(|p| p.serialize())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for MovePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: [{}] <-> [{}]",
            self.label,
            self.side_a.to_row_string(),
            self.side_b.to_row_string()
        )
    }
}

/// Parses catalog records: a `k label` line followed by both sides in
/// mosaic text format. Blank lines and `#` comments separate records.
pub fn parse_patterns(text: &str) -> Result<Vec<MovePattern>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < lines.len() {
        let (line_no, header) = lines[pos];
        let (k, label) = header
            .split_once(' ')
            .ok_or_else(|| Error::parse(line_no, 1, "expected `<k> <label>`"))?;
        let k: usize = k
            .parse()
            .map_err(|_| Error::parse(line_no, 1, format!("bad size `{k}`")))?;
        let label = label.trim();
        if label.is_empty() || label.contains(['@', '(', ')', ' ']) {
            return Err(Error::parse(line_no, 3, format!("bad label `{label}`")));
        }
        pos += 1;
        let mut sides = Vec::with_capacity(2);
        for _ in 0..2 {
            let chunk: Vec<&str> = lines.iter().skip(pos).take(k + 1).map(|(_, l)| *l).collect();
            if chunk.len() != k + 1 {
                return Err(Error::parse(line_no, 1, format!("truncated record {label}")));
            }
            let side = Mosaic::parse(&chunk.join("\n")).map_err(|e| match e {
                Error::Parse { line, column, message } => Error::parse(lines[pos + line - 1].0, column, message),
                other => other,
            })?;
            if side.side() != k {
                return Err(Error::parse(lines[pos].0, 1, format!("side of {label} is not {k}")));
            }
            sides.push(side);
            pos += k + 1;
        }
        let b = sides.pop().unwrap();
        let a = sides.pop().unwrap();
        out.push(MovePattern::new(label, a, b)?);
    }
    Ok(out)
}

/// The standard generator catalog.
pub fn generator_catalog() -> &'static Catalog {
    Catalog::standard()
}

pub fn apply_move(m: &Mosaic, app: MoveApplication) -> Result<Mosaic> {
    Catalog::standard().apply(m, app)
}

pub fn applicable_moves(m: &Mosaic) -> Vec<MoveApplication> {
    Catalog::standard().applicable_moves(m)
}

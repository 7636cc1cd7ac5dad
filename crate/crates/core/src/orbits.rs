//! Orbits of the ambient group: connected components of the move graph on
//! all knot `n`-mosaics.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::enumerate::enumerate_parallel;
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, Fingerprint};
use crate::mosaic::Mosaic;
use crate::moves::Catalog;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    pub id: usize,
    pub size: usize,
    /// Encoding-minimal member.
    pub representative: Mosaic,
}

#[derive(Debug, Clone, Copy)]
pub struct OrbitOptions {
    /// Refuse to materialize more members than this.
    pub max_members: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            max_members: 5_000_000,
            jobs: None,
        }
    }
}

/// The partition of all knot `n`-mosaics into orbits. Classes are ordered by
/// (size, representative) and numbered in that order.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    n: usize,
    classes: Vec<OrbitClass>,
    keys: Vec<u128>,
    class_of: Vec<u32>,
    index: HashMap<u128, u32>,
}

impl OrbitPartition {
    pub fn side(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[OrbitClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn member_count(&self) -> usize {
        self.keys.len()
    }

    pub fn members(&self) -> impl Iterator<Item = Mosaic> + '_ {
        self.keys
            .iter()
            .map(|&k| Mosaic::from_small_key(self.n, k).expect("stored key"))
    }

    pub fn members_of(&self, class: usize) -> impl Iterator<Item = Mosaic> + '_ {
        self.keys
            .iter()
            .zip(&self.class_of)
            .filter(move |(_, c)| **c as usize == class)
            .map(|(&k, _)| Mosaic::from_small_key(self.n, k).expect("stored key"))
    }

    /// Class id of a knot mosaic of this side, or `None` if `m` is not a
    /// member.
    pub fn class_of(&self, m: &Mosaic) -> Option<usize> {
        if m.side() != self.n {
            return None;
        }
        let key = m.small_key()?;
        self.index.get(&key).map(|&i| self.class_of[i as usize] as usize)
    }

    /// Whether `a` and `b` lie in the same orbit.
    pub fn same_type(&self, a: &Mosaic, b: &Mosaic) -> Result<bool> {
        if a.side() != self.n || b.side() != self.n {
            return Err(Error::SideMismatch(a.side(), b.side()));
        }
        let ca = self
            .class_of(a)
            .ok_or_else(|| Error::Bounds("first mosaic is not a knot mosaic".into()))?;
        let cb = self
            .class_of(b)
            .ok_or_else(|| Error::Bounds("second mosaic is not a knot mosaic".into()))?;
        Ok(ca == cb)
    }

    pub fn census(&self) -> Census {
        Census {
            n: self.n,
            classes: self.classes.clone(),
        }
    }
}

pub fn compute_orbits(n: usize) -> Result<OrbitPartition> {
    compute_orbits_with(n, Catalog::standard(), OrbitOptions::default())
}

pub fn compute_orbits_with(n: usize, catalog: &Catalog, options: OrbitOptions) -> Result<OrbitPartition> {
    if n == 0 || n * n > 32 {
        return Err(Error::Capacity(format!(
            "orbit computation supports 1 <= n <= 5, got {n}"
        )));
    }
    let mut members = Vec::new();
    for m in enumerate_parallel(n, options.jobs) {
        if members.len() == options.max_members {
            return Err(Error::Capacity(format!(
                "more than {} knot {n}-mosaics",
                options.max_members
            )));
        }
        members.push(m);
    }
    let keys: Vec<u128> = members.iter().map(|m| m.small_key().expect("n <= 5")).collect();
    let index: HashMap<u128, u32> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();

    let edges = |m: &Mosaic| -> Vec<u32> {
        catalog
            .neighbors(m)
            .into_iter()
            .map(|(_, nb)| index[&nb.small_key().expect("n <= 5")])
            .collect()
    };
    let adjacency: Vec<Vec<u32>> = match options.jobs {
        Some(1) => members.iter().map(edges).collect(),
        _ => members.par_iter().map(edges).collect(),
    };
    drop(members);

    let mut uf = UnionFind::new(keys.len());
    for (a, nbs) in adjacency.iter().enumerate() {
        for &b in nbs {
            uf.union(a, b as usize);
        }
    }

    // members are in increasing order, so the first member seen per root is
    // the representative
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut raw: Vec<(usize, u128)> = Vec::new();
    let mut provisional = vec![0usize; keys.len()];
    for (i, &k) in keys.iter().enumerate() {
        let r = uf.find(i);
        let c = *root_class.entry(r).or_insert_with(|| {
            raw.push((0, k));
            raw.len() - 1
        });
        raw[c].0 += 1;
        provisional[i] = c;
    }
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&c| raw[c]);
    let mut renumber = vec![0usize; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let classes = order
        .iter()
        .enumerate()
        .map(|(id, &old)| OrbitClass {
            id,
            size: raw[old].0,
            representative: Mosaic::from_small_key(n, raw[old].1).expect("stored key"),
        })
        .collect();
    let class_of = provisional.into_iter().map(|c| renumber[c] as u32).collect();
    Ok(OrbitPartition {
        n,
        classes,
        keys,
        class_of,
        index,
    })
}

/// Largest side whose partition [`same_type_n`] computes.
pub const EXHAUSTIVE_SIDE: usize = 4;

/// The partition for side `n <= 4`, computed once per process.
pub fn cached_orbits(n: usize) -> Result<&'static OrbitPartition> {
    static CACHE: [OnceLock<OrbitPartition>; EXHAUSTIVE_SIDE + 1] = [const { OnceLock::new() }; EXHAUSTIVE_SIDE + 1];
    let slot = CACHE
        .get(n)
        .filter(|_| n >= 1)
        .ok_or_else(|| Error::Capacity(format!("no cached partition for n = {n}")))?;
    if let Some(p) = slot.get() {
        return Ok(p);
    }
    let p = compute_orbits(n)?;
    Ok(slot.get_or_init(|| p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Same,
    Different,
    /// The search budget ran out first.
    Unknown,
}

/// Whether two knot mosaics of one side lie in the same orbit. Exact up to
/// side 4; beyond that a bounded search without padding, which may answer
/// [`Verdict::Unknown`].
pub fn same_type_n(a: &Mosaic, b: &Mosaic, budget: crate::search::SearchBudget) -> Result<Verdict> {
    use crate::search::{find_certificate, SearchBudget, SearchOutcome};
    if a.side() != b.side() {
        return Err(Error::SideMismatch(a.side(), b.side()));
    }
    for m in [a, b] {
        if let Some(v) = m.first_violation() {
            return Err(Error::NotApplicable(format!("not a knot mosaic: {v}")));
        }
    }
    if a.side() <= EXHAUSTIVE_SIDE {
        let same = cached_orbits(a.side())?.same_type(a, b)?;
        return Ok(if same { Verdict::Same } else { Verdict::Different });
    }
    Ok(match find_certificate(a, b, SearchBudget { max_pad: 0, ..budget })? {
        SearchOutcome::Found(_) => Verdict::Same,
        SearchOutcome::Separated => Verdict::Different,
        SearchOutcome::Exhausted => Verdict::Unknown,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MosaicNumberBounds {
    pub lower: usize,
    /// `None` when no witness has the target fingerprint.
    pub upper: Option<usize>,
}

/// Bounds on the smallest side at which a link with fingerprint `target`
/// occurs. `partitions` must cover sides `1..=k` in order. The lower bound is
/// the first side whose partition has a class with the target fingerprint,
/// or `k + 1` if none has; the upper bound is the smallest matching witness.
pub fn mosaic_number_bounds(
    target: &Fingerprint,
    partitions: &[&OrbitPartition],
    witnesses: &[Mosaic],
) -> Result<MosaicNumberBounds> {
    for (k, p) in partitions.iter().enumerate() {
        if p.side() != k + 1 {
            return Err(Error::Bounds(format!(
                "partition {} has side {}, expected {}",
                k + 1,
                p.side(),
                k + 1
            )));
        }
    }
    let mut lower = partitions.len() + 1;
    'sides: for p in partitions {
        for c in p.classes() {
            if fingerprint(&c.representative)? == *target {
                lower = p.side();
                break 'sides;
            }
        }
    }
    let mut upper: Option<usize> = None;
    for w in witnesses {
        if let Some(v) = w.first_violation() {
            return Err(Error::NotApplicable(format!("witness is not a knot mosaic: {v}")));
        }
        if fingerprint(w)? == *target {
            upper = Some(upper.map_or(w.side(), |u| u.min(w.side())));
        }
    }
    Ok(MosaicNumberBounds { lower, upper })
}

/// The persisted summary of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub classes: Vec<OrbitClass>,
}

impl Census {
    /// Header `n <n> classes <c>`, then `id size canonical:<rows>` per class.
    pub fn serialize(&self) -> String {
        let mut s = format!("n {} classes {}\n", self.n, self.classes.len());
        for c in &self.classes {
            s.push_str(&format!(
                "{} {} canonical:{}\n",
                c.id,
                c.size,
                c.representative.to_row_string()
            ));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Census> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty census"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (n, count) = match fields.as_slice() {
            ["n", n, "classes", c] => (
                n.parse::<usize>().map_err(|_| Error::parse(1, 3, "bad side"))?,
                c.parse::<usize>().map_err(|_| Error::parse(1, 1, "bad class count"))?,
            ),
            _ => return Err(Error::parse(1, 1, "expected `n <n> classes <c>`")),
        };
        let mut classes = Vec::with_capacity(count);
        for (idx, line) in lines {
            let bad = |m: &str| Error::parse(idx + 1, 1, m.to_string());
            let (head, rows) = line.split_once("canonical:").ok_or_else(|| bad("missing canonical:"))?;
            let mut head = head.split_whitespace();
            let id = head.next().and_then(|v| v.parse().ok()).ok_or_else(|| bad("bad id"))?;
            let size = head
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad("bad size"))?;
            let representative = Mosaic::parse_row_string(rows.trim())?;
            if representative.side() != n {
                return Err(bad("representative has the wrong side"));
            }
            classes.push(OrbitClass {
                id,
                size,
                representative,
            });
        }
        if classes.len() != count {
            return Err(Error::parse(
                1,
                1,
                format!("header says {count} classes, found {}", classes.len()),
            ));
        }
        Ok(Census { n, classes })
    }

    pub fn write(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.serialize())?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Census> {
        Census::parse(&std::fs::read_to_string(path)?)
    }
}

//! Bounded certificate search: explicit move sequences carrying one mosaic
//! to another, after padding both with blank rows and columns.
//!
//! Mosaics with strands on their boundary (blocks cut out of a larger
//! mosaic) are searched too; they are never padded, and every intermediate
//! must keep the boundary unchanged.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::moves::{Catalog, MoveApplication};

/// A witness that `inject_times(pad_source)` of the source becomes
/// `inject_times(pad_target)` of the target under `steps`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveCertificate {
    pub pad_source: usize,
    pub pad_target: usize,
    pub steps: Vec<MoveApplication>,
}

impl MoveCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `pad_source pad_target`, then one `label@(i,j)` per line.
    pub fn serialize(&self, catalog: &Catalog) -> String {
        let mut s = format!("{} {}\n", self.pad_source, self.pad_target);
        for &app in &self.steps {
            s.push_str(&catalog.format_step(app));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str, catalog: &Catalog) -> Result<MoveCertificate> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty certificate"))?;
        let pads: Vec<usize> = header
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| Error::parse(1, 1, format!("bad pad `{v}`"))))
            .collect::<Result<_>>()?;
        let [pad_source, pad_target] = pads[..] else {
            return Err(Error::parse(1, 1, "expected `pad_source pad_target`"));
        };
        let mut steps = Vec::new();
        for (line, text) in lines {
            let step = catalog.parse_step(text).map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(line, 1, message),
                other => other,
            })?;
            steps.push(step);
        }
        Ok(MoveCertificate {
            pad_source,
            pad_target,
            steps,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Longest certificate considered.
    pub max_depth: usize,
    /// Largest common padding `ℓ` tried.
    pub max_pad: usize,
    /// States stored per padding before giving up.
    pub max_states: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 12,
            max_pad: 2,
            max_states: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A shortest certificate at the smallest padding that has one.
    Found(MoveCertificate),
    /// A budget ran out; nothing is known.
    Exhausted,
    /// At every padding tried, one side's whole orbit was explored without
    /// meeting the other. Larger paddings remain open.
    Separated,
}

enum Layered {
    Found(Vec<MoveApplication>),
    Exhausted,
    Closed,
}

struct Tree {
    /// Depth and the move that reached each state (its own inverse).
    seen: HashMap<Mosaic, (usize, Option<MoveApplication>)>,
    frontier: Vec<Mosaic>,
    depth: usize,
}

impl Tree {
    fn new(root: Mosaic) -> Tree {
        let mut seen = HashMap::new();
        seen.insert(root.clone(), (0, None));
        Tree {
            seen,
            frontier: vec![root],
            depth: 0,
        }
    }

    /// Moves from `node` back to the root.
    fn path_to_root(&self, catalog: &Catalog, node: &Mosaic) -> Vec<MoveApplication> {
        let mut out = Vec::new();
        let mut cur = node.clone();
        while let Some(&(_, Some(app))) = self.seen.get(&cur) {
            out.push(app);
            cur = catalog.apply(&cur, app).expect("recorded move applies");
        }
        out
    }
}

/// Bidirectional breadth-first search between two mosaics of equal side.
fn bidirectional(catalog: &Catalog, a: &Mosaic, b: &Mosaic, max_depth: usize, max_states: usize) -> Layered {
    if a == b {
        return Layered::Found(Vec::new());
    }
    let mut trees = [Tree::new(a.clone()), Tree::new(b.clone())];
    while trees[0].depth + trees[1].depth < max_depth {
        let side = usize::from(trees[1].frontier.len() < trees[0].frontier.len());
        if trees[side].frontier.is_empty() {
            return Layered::Closed;
        }
        let (this, other) = if side == 0 {
            let (x, y) = trees.split_at_mut(1);
            (&mut x[0], &y[0])
        } else {
            let (x, y) = trees.split_at_mut(1);
            (&mut y[0], &x[0])
        };
        let depth = this.depth + 1;
        let mut next = Vec::new();
        let mut best: Option<(usize, Mosaic)> = None;
        for node in std::mem::take(&mut this.frontier) {
            for (app, nb) in catalog.neighbors(&node) {
                if this.seen.contains_key(&nb) {
                    continue;
                }
                if let Some(&(d, _)) = other.seen.get(&nb) {
                    let cand = (depth + d, nb.clone());
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
                this.seen.insert(nb.clone(), (depth, Some(app)));
                next.push(nb);
            }
            if this.seen.len() + other.seen.len() > max_states {
                return Layered::Exhausted;
            }
        }
        this.frontier = next;
        this.depth = depth;
        if let Some((_, meet)) = best {
            let mut steps = trees[0].path_to_root(catalog, &meet);
            steps.reverse();
            steps.extend(trees[1].path_to_root(catalog, &meet));
            return Layered::Found(steps);
        }
    }
    if trees.iter().any(|t| t.frontier.is_empty()) {
        Layered::Closed
    } else {
        Layered::Exhausted
    }
}

fn check_searchable(m: &Mosaic, which: &str) -> Result<()> {
    if m.is_interior_consistent() {
        Ok(())
    } else {
        Err(Error::NotApplicable(format!(
            "{which} mosaic has mismatched interior edges"
        )))
    }
}

pub fn find_certificate(m: &Mosaic, n: &Mosaic, budget: SearchBudget) -> Result<SearchOutcome> {
    find_certificate_with(Catalog::standard(), m, n, budget)
}

/// Tries paddings `ℓ = 0..=max_pad`: the smaller mosaic is padded up to the
/// larger one and both get `ℓ` more. Every certificate returned has been
/// replayed.
pub fn find_certificate_with(catalog: &Catalog, m: &Mosaic, n: &Mosaic, budget: SearchBudget) -> Result<SearchOutcome> {
    check_searchable(m, "source")?;
    check_searchable(n, "target")?;
    let bounded = m.boundary_profile().contains(&true) || n.boundary_profile().contains(&true);
    if bounded {
        if m.side() != n.side() {
            return Err(Error::SideMismatch(m.side(), n.side()));
        }
        if m.boundary_profile() != n.boundary_profile() {
            return Ok(SearchOutcome::Separated);
        }
    }
    let side = m.side().max(n.side());
    let pads = if bounded { 0 } else { budget.max_pad };
    let mut all_closed = true;
    for pad in 0..=pads {
        let cert = MoveCertificate {
            pad_source: pad + side - m.side(),
            pad_target: pad + side - n.side(),
            steps: Vec::new(),
        };
        let a = m.inject_times(cert.pad_source);
        let b = n.inject_times(cert.pad_target);
        match bidirectional(catalog, &a, &b, budget.max_depth, budget.max_states) {
            Layered::Found(steps) => {
                let cert = MoveCertificate { steps, ..cert };
                if replay_with(catalog, &cert, m)? != b {
                    return Err(Error::CertificateCorrupt(
                        "search produced a certificate that misses its target".into(),
                    ));
                }
                return Ok(SearchOutcome::Found(cert));
            }
            Layered::Exhausted => all_closed = false,
            Layered::Closed => {}
        }
    }
    Ok(if all_closed {
        SearchOutcome::Separated
    } else {
        SearchOutcome::Exhausted
    })
}

pub fn replay(cert: &MoveCertificate, m: &Mosaic) -> Result<Mosaic> {
    replay_with(Catalog::standard(), cert, m)
}

/// Pads `m` and applies the steps in order. Each step must change the
/// mosaic, and every state must keep the source's boundary and matched
/// interior edges.
pub fn replay_with(catalog: &Catalog, cert: &MoveCertificate, m: &Mosaic) -> Result<Mosaic> {
    let corrupt = |msg: String| Error::CertificateCorrupt(msg);
    let bounded = m.boundary_profile().contains(&true);
    if bounded && cert.pad_source > 0 {
        return Err(corrupt("a mosaic with boundary strands cannot be padded".into()));
    }
    let mut cur = m.inject_times(cert.pad_source);
    let profile = cur.boundary_profile();
    let valid = |x: &Mosaic| x.is_interior_consistent() && x.boundary_profile() == profile;
    if !valid(&cur) {
        return Err(corrupt("source is not a consistent mosaic".into()));
    }
    for (k, &app) in cert.steps.iter().enumerate() {
        if app.pattern >= catalog.len() {
            return Err(corrupt(format!("step {}: no pattern #{}", k + 1, app.pattern)));
        }
        let changed = catalog
            .apply_in_place(&mut cur, app)
            .map_err(|e| corrupt(format!("step {}: {e}", k + 1)))?;
        if !changed {
            return Err(corrupt(format!(
                "step {}: {} does not match",
                k + 1,
                catalog.format_step(app)
            )));
        }
        if !valid(&cur) {
            return Err(corrupt(format!("step {}: result is not suitably connected", k + 1)));
        }
    }
    Ok(cur)
}

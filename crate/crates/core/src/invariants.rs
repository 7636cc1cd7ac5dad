//! The link diagram drawn by a mosaic: PD codes, components, writhe, and two
//! independent Kauffman bracket evaluations.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::poly::LaurentPolynomial;
use crate::tiles::{Edge, Tile};
use crate::union_find::UnionFind;

/// Default crossing cap for the `2^c` state sum.
pub const STATE_SUM_CAP: usize = 16;

/// One crossing. `arcs` starts at the incoming under-arc and proceeds
/// counterclockwise, so `arcs[0], arcs[2]` are under and `arcs[1], arcs[3]`
/// over.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PdCrossing {
    pub arcs: [u32; 4],
    pub cell: (usize, usize),
    /// `+1` or `-1` for the chosen orientation.
    pub sign: i8,
    pub over_component: usize,
    pub under_component: usize,
}

impl PdCrossing {
    pub fn is_self_crossing(&self) -> bool {
        self.over_component == self.under_component
    }
}

/// Planar diagram code of a mosaic, in a canonical orientation: crossings are
/// numbered row-major, and each component is oriented and started so that
/// its sequence of (crossing, over) visits is lexicographically least.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCode {
    pub crossings: Vec<PdCrossing>,
    /// Closed curves that meet no crossing.
    pub free_loops: usize,
    /// Components that pass through at least one crossing.
    pub crossing_components: usize,
}

impl PdCode {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.crossing_components + self.free_loops
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign as i32).sum()
    }

    /// Writhe over crossings of a component with itself. Independent of the
    /// orientation of every component.
    pub fn self_writhe(&self) -> i32 {
        self.crossings
            .iter()
            .filter(|c| c.is_self_crossing())
            .map(|c| c.sign as i32)
            .sum()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Equality of everything but the cell each crossing came from.
    pub fn same_diagram(&self, other: &PdCode) -> bool {
        self.free_loops == other.free_loops
            && self.crossing_components == other.crossing_components
            && self.crossings.len() == other.crossings.len()
            && self.crossings.iter().zip(&other.crossings).all(|(a, b)| {
                a.arcs == b.arcs
                    && a.sign == b.sign
                    && a.over_component == b.over_component
                    && a.under_component == b.under_component
            })
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            let [a, b, cc, d] = c.arcs;
            let sign = if c.sign > 0 { '+' } else { '-' };
            writeln!(f, "X({a},{b},{cc},{d}) under={a}>{cc} sign={sign}")?;
        }
        writeln!(f, "free_loops {}", self.free_loops)
    }
}

fn ccw(e: Edge) -> Edge {
    Edge::from_index(e.index() + 3)
}

#[derive(Debug, Clone, Copy)]
struct Visit {
    crossing: usize,
    entry: Edge,
    exit: Edge,
    over: bool,
}

/// One component's crossing visits in travel order.
type Traversal = Vec<Visit>;

/// Crossing and over flag per visit, compared to pick a starting point.
type VisitKey = Vec<(usize, bool)>;

/// A crossing visit with its component and the arcs entering and leaving.
type Slot = (Visit, usize, u32, u32);

impl Visit {
    fn reversed(self) -> Visit {
        Visit {
            entry: self.exit,
            exit: self.entry,
            ..self
        }
    }
}

struct Traced {
    cells: Vec<(usize, usize)>,
    // one visit list per component through a crossing, in trace order
    components: Vec<Vec<Visit>>,
    free_loops: usize,
}

fn require_knot(m: &Mosaic) -> Result<()> {
    match m.first_violation() {
        None => Ok(()),
        Some(v) => Err(Error::NotApplicable(format!("not a knot mosaic: {v}"))),
    }
}

fn trace(m: &Mosaic) -> Traced {
    let n = m.side();
    let mut crossing_id = vec![usize::MAX; n * n];
    let mut cells = Vec::new();
    for (k, t) in m.cells().iter().enumerate() {
        if t.is_crossing() {
            crossing_id[k] = cells.len();
            cells.push((k / n, k % n));
        }
    }
    let mut seen = vec![[false; 4]; n * n];
    let mut components = Vec::new();
    let mut free_loops = 0;
    for start in 0..n * n {
        for strand in m.cells()[start].strands() {
            if seen[start][strand[0].index()] {
                continue;
            }
            let mut visits = Vec::new();
            let (mut k, mut entry) = (start, strand[0]);
            loop {
                let t = m.cells()[k];
                let exit = t.partner(entry).expect("traced edge is used");
                seen[k][entry.index()] = true;
                seen[k][exit.index()] = true;
                if t.is_crossing() {
                    visits.push(Visit {
                        crossing: crossing_id[k],
                        entry,
                        exit,
                        over: t.is_over(entry),
                    });
                }
                let (di, dj) = exit.step();
                let i = (k / n) as isize + di;
                let j = (k % n) as isize + dj;
                k = i as usize * n + j as usize;
                entry = exit.opposite();
                if k == start && entry == strand[0] {
                    break;
                }
            }
            if visits.is_empty() {
                free_loops += 1;
            } else {
                components.push(visits);
            }
        }
    }
    Traced {
        cells,
        components,
        free_loops,
    }
}

fn oriented(visits: &[Visit], reverse: bool, start: usize) -> Vec<Visit> {
    let m = visits.len();
    (0..m)
        .map(|i| {
            if reverse {
                visits[(start + m - i) % m].reversed()
            } else {
                visits[(start + i) % m]
            }
        })
        .collect()
}

fn key(visits: &[Visit]) -> Vec<(usize, bool)> {
    visits.iter().map(|v| (v.crossing, v.over)).collect()
}

fn sign_of(over: Visit, under: Visit) -> i8 {
    let (ox, oy) = over.exit.direction();
    let (ux, uy) = under.exit.direction();
    if ox * uy - oy * ux > 0 {
        1
    } else {
        -1
    }
}

fn build_pd(t: &Traced, comps: &[Vec<Visit>]) -> PdCode {
    let c = t.cells.len();
    // per crossing: (over visit, its component, arc in, arc out) and same for under
    let mut slots: Vec<[Option<Slot>; 2]> = vec![[None, None]; c];
    let mut next = 1u32;
    for (ci, visits) in comps.iter().enumerate() {
        let m = visits.len() as u32;
        for (i, v) in visits.iter().enumerate() {
            let i = i as u32;
            let arc_in = next + (i + m - 1) % m;
            let arc_out = next + i;
            slots[v.crossing][v.over as usize] = Some((*v, ci, arc_in, arc_out));
        }
        next += m;
    }
    let crossings = slots
        .iter()
        .enumerate()
        .map(|(x, s)| {
            let (under, uc, u_in, u_out) = s[0].expect("under visit");
            let (over, oc, o_in, o_out) = s[1].expect("over visit");
            let label = |e: Edge| {
                if e == under.entry {
                    u_in
                } else if e == under.exit {
                    u_out
                } else if e == over.entry {
                    o_in
                } else {
                    o_out
                }
            };
            let mut arcs = [0u32; 4];
            let mut e = under.entry;
            for slot in &mut arcs {
                *slot = label(e);
                e = ccw(e);
            }
            PdCrossing {
                arcs,
                cell: t.cells[x],
                sign: sign_of(over, under),
                over_component: oc,
                under_component: uc,
            }
        })
        .collect();
    PdCode {
        crossings,
        free_loops: t.free_loops,
        crossing_components: comps.len(),
    }
}

/// The forgetful map: the canonical PD code of the diagram drawn by `m`.
pub fn forgetful(m: &Mosaic) -> Result<PdCode> {
    require_knot(m)?;
    let t = trace(m);
    // per component: least visit key and every (reverse, start) achieving it
    let mut choices: Vec<(VisitKey, Vec<Traversal>)> = t
        .components
        .iter()
        .map(|visits| {
            let mut best: Option<Vec<(usize, bool)>> = None;
            let mut ties = Vec::new();
            for reverse in [false, true] {
                for start in 0..visits.len() {
                    let o = oriented(visits, reverse, start);
                    let k = key(&o);
                    match &best {
                        Some(b) if k > *b => {}
                        Some(b) if k == *b => ties.push(o),
                        _ => {
                            best = Some(k);
                            ties = vec![o];
                        }
                    }
                }
            }
            (best.expect("component has a crossing"), ties)
        })
        .collect();
    choices.sort_by(|a, b| a.0.cmp(&b.0));

    let mut best: Option<PdCode> = None;
    let mut pick = vec![0usize; choices.len()];
    loop {
        let comps: Vec<Vec<Visit>> = choices.iter().zip(&pick).map(|(c, &p)| c.1[p].clone()).collect();
        let pd = build_pd(&t, &comps);
        if best.as_ref().is_none_or(|b| pd.crossings < b.crossings) {
            best = Some(pd);
        }
        // odometer over tie choices
        let mut k = 0;
        while k < pick.len() {
            pick[k] += 1;
            if pick[k] < choices[k].1.len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if k == pick.len() {
            break;
        }
    }
    Ok(best.unwrap_or(PdCode {
        crossings: Vec::new(),
        free_loops: t.free_loops,
        crossing_components: 0,
    }))
}

/// How the strands of a block join its boundary points. Points are numbered
/// in [`Mosaic::boundary_profile`] order; crossings are passed straight
/// through.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryConnectivity {
    pub pairs: Vec<(usize, usize)>,
    pub closed_loops: usize,
}

/// Connectivity of an interior-consistent block.
pub fn boundary_connectivity(m: &Mosaic) -> Result<BoundaryConnectivity> {
    if !m.is_interior_consistent() {
        return Err(Error::NotApplicable("block is not interior-consistent".into()));
    }
    let n = m.side();
    let point = |i: usize, j: usize, e: Edge| match e {
        Edge::N if i == 0 => Some(j),
        Edge::E if j == n - 1 => Some(n + i),
        Edge::S if i == n - 1 => Some(2 * n + j),
        Edge::W if j == 0 => Some(3 * n + i),
        _ => None,
    };
    let mut seen = vec![[false; 4]; n * n];
    let walk = |start: usize, first: Edge, seen: &mut Vec<[bool; 4]>| -> Option<usize> {
        let (mut k, mut entry) = (start, first);
        loop {
            let exit = m.cells()[k].partner(entry).expect("traced edge is used");
            seen[k][entry.index()] = true;
            seen[k][exit.index()] = true;
            if let Some(p) = point(k / n, k % n, exit) {
                return Some(p);
            }
            let (di, dj) = exit.step();
            k = ((k / n) as isize + di) as usize * n + ((k % n) as isize + dj) as usize;
            entry = exit.opposite();
            if k == start && entry == first {
                return None;
            }
        }
    };
    let mut pairs = Vec::new();
    for k in 0..n * n {
        for e in m.cells()[k].edges().iter() {
            if let Some(p) = point(k / n, k % n, e) {
                if !seen[k][e.index()] {
                    let q = walk(k, e, &mut seen).expect("a strand from the boundary returns to it");
                    pairs.push((p.min(q), p.max(q)));
                }
            }
        }
    }
    let mut closed_loops = 0;
    for k in 0..n * n {
        for strand in m.cells()[k].strands() {
            if !seen[k][strand[0].index()] {
                walk(k, strand[0], &mut seen);
                closed_loops += 1;
            }
        }
    }
    pairs.sort_unstable();
    Ok(BoundaryConnectivity { pairs, closed_loops })
}

/// Number of link components drawn by `m`.
pub fn component_count(m: &Mosaic) -> Result<usize> {
    require_knot(m)?;
    let t = trace(m);
    Ok(t.components.len() + t.free_loops)
}

/// Unnormalized bracket by the `2^c` state sum over `pd`: every state
/// contributes `A^(#A - #B) d^loops` with `d = -A^2 - A^-2`. The empty
/// diagram has bracket 1.
pub fn kauffman_bracket(pd: &PdCode) -> Result<LaurentPolynomial> {
    kauffman_bracket_capped(pd, STATE_SUM_CAP)
}

pub fn kauffman_bracket_capped(pd: &PdCode, cap: usize) -> Result<LaurentPolynomial> {
    let c = pd.crossing_count();
    if c > cap {
        return Err(Error::Capacity(format!(
            "{c} crossings exceed the state-sum cap of {cap}"
        )));
    }
    let d = LaurentPolynomial::loop_value();
    let arcs = pd.arc_count();
    // loop count -> A exponent -> multiplicity
    let mut tally: HashMap<(usize, i32), i64> = HashMap::new();
    for state in 0u64..(1u64 << c) {
        let mut uf = UnionFind::new(arcs + 1);
        let mut a_minus_b = 0i32;
        for (x, cr) in pd.crossings.iter().enumerate() {
            let [a, b, cc, dd] = cr.arcs.map(|v| v as usize);
            if state >> x & 1 == 0 {
                uf.union(a, b);
                uf.union(cc, dd);
                a_minus_b += 1;
            } else {
                uf.union(a, dd);
                uf.union(b, cc);
                a_minus_b -= 1;
            }
        }
        let loops = (1..=arcs).filter(|&v| uf.find(v) == v).count() + pd.free_loops;
        *tally.entry((loops, a_minus_b)).or_insert(0) += 1;
    }
    let mut powers = vec![LaurentPolynomial::one()];
    let mut out = LaurentPolynomial::zero();
    let mut entries: Vec<_> = tally.into_iter().collect();
    entries.sort();
    for ((loops, e), mult) in entries {
        while powers.len() <= loops {
            let next = powers.last().expect("nonempty") * &d;
            powers.push(next);
        }
        out = &out + &powers[loops].shift(e).scale(mult);
    }
    Ok(out)
}

/// The same unnormalized bracket computed directly on the mosaic by a
/// row-major transfer-matrix sweep. No crossing cap.
pub fn mosaic_bracket(m: &Mosaic) -> Result<LaurentPolynomial> {
    require_knot(m)?;
    let n = m.side();
    let d = LaurentPolynomial::loop_value();
    // ports[0..n]: vertical edges crossing the sweep line, ports[n]: the
    // edge west of the current cell. 0 = unused, equal labels = joined ends.
    let mut states: HashMap<Vec<u8>, LaurentPolynomial> = HashMap::new();
    states.insert(vec![0; n + 1], LaurentPolynomial::one());
    for i in 0..n {
        for j in 0..n {
            let t = m.get(i, j);
            let options: Vec<(&[[Edge; 2]], i32)> = match t.index() {
                9 => vec![(Tile::of(8).strands(), 1), (Tile::of(7).strands(), -1)],
                10 => vec![(Tile::of(7).strands(), 1), (Tile::of(8).strands(), -1)],
                _ => vec![(t.strands(), 0)],
            };
            let mut next: HashMap<Vec<u8>, LaurentPolynomial> = HashMap::new();
            for (ports, poly) in &states {
                for &(strands, weight) in &options {
                    let (mut p, loops) = sweep_cell(ports, j, n, strands);
                    canonicalize(&mut p);
                    let mut term = poly.shift(weight);
                    for _ in 0..loops {
                        term = &term * &d;
                    }
                    let slot = next.entry(p).or_default();
                    *slot = &*slot + &term;
                }
            }
            next.retain(|_, v| !v.is_zero());
            states = next;
        }
    }
    Ok(states.remove(&vec![0; n + 1]).unwrap_or_default())
}

fn sweep_cell(ports: &[u8], j: usize, n: usize, strands: &[[Edge; 2]]) -> (Vec<u8>, usize) {
    let mut p = ports.to_vec();
    let north = p[j];
    let west = p[n];
    p[j] = 0;
    p[n] = 0;
    let mut fresh = ports.iter().copied().max().unwrap_or(0) + 1;
    let mut loops = 0;
    let mut relabel: Option<(u8, u8)> = None;
    let input = |e: Edge| if e == Edge::N { north } else { west };
    for &[x, y] in strands {
        let x_in = matches!(x, Edge::N | Edge::W);
        let y_in = matches!(y, Edge::N | Edge::W);
        let out_slot = |e: Edge| if e == Edge::S { j } else { n };
        match (x_in, y_in) {
            (true, true) => {
                let (a, b) = (input(x), input(y));
                if a == b {
                    loops += 1;
                } else {
                    relabel = Some((a, b));
                }
            }
            (true, false) => p[out_slot(y)] = input(x),
            (false, true) => p[out_slot(x)] = input(y),
            (false, false) => {
                p[out_slot(x)] = fresh;
                p[out_slot(y)] = fresh;
                fresh += 1;
            }
        }
    }
    if let Some((a, b)) = relabel {
        for v in &mut p {
            if *v == b {
                *v = a;
            }
        }
    }
    (p, loops)
}

fn canonicalize(p: &mut [u8]) {
    let mut map = [0u8; 256];
    let mut next = 1u8;
    for v in p.iter_mut() {
        if *v == 0 {
            continue;
        }
        if map[*v as usize] == 0 {
            map[*v as usize] = next;
            next += 1;
        }
        *v = map[*v as usize];
    }
}

/// Component count plus the bracket normalized to 1 on the unknot and
/// corrected by the self-writhe, `(-A^3)^(-w) <D> / d`. Self-crossings have a
/// sign independent of orientation, so this is an invariant of the
/// unoriented link.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub component_count: usize,
    pub bracket: LaurentPolynomial,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "components {} bracket {}", self.component_count, self.bracket)
    }
}

fn normalize(raw: &LaurentPolynomial, components: usize, self_writhe: i32) -> LaurentPolynomial {
    let reduced = if components == 0 {
        raw.clone()
    } else {
        raw.div_exact(&LaurentPolynomial::loop_value())
            .expect("a nonempty diagram's bracket is divisible by the loop value")
    };
    let sign = if self_writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    reduced.shift(-3 * self_writhe).scale(sign)
}

/// Fingerprint via the transfer-matrix bracket.
pub fn fingerprint(m: &Mosaic) -> Result<Fingerprint> {
    let pd = forgetful(m)?;
    let raw = mosaic_bracket(m)?;
    Ok(Fingerprint {
        component_count: pd.component_count(),
        bracket: normalize(&raw, pd.component_count(), pd.self_writhe()),
    })
}

/// Fingerprint via the state sum over the PD code; subject to the crossing
/// cap.
pub fn fingerprint_from_pd(pd: &PdCode) -> Result<Fingerprint> {
    let raw = kauffman_bracket(pd)?;
    Ok(Fingerprint {
        component_count: pd.component_count(),
        bracket: normalize(&raw, pd.component_count(), pd.self_writhe()),
    })
}

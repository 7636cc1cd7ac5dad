//! Grid diagrams: one `X` and one `O` in every row and column, joined by
//! vertical segments inside columns and horizontal segments inside rows,
//! with verticals crossing over.
//!
//! Columns and rows are numbered from zero internally and from one in the
//! text format. Row 0 is the bottom row; it is drawn as the last row of the
//! mosaic, so the mosaic is the grid as seen on the page.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::search::{find_certificate, SearchBudget, SearchOutcome};
use crate::tiles::{Edge, EdgeSet, Tile};
use crate::zoom::zoom5;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridDiagram {
    /// `x[c]` is the row of the `X` in column `c`.
    x: Vec<usize>,
    /// `o[c]` is the row of the `O` in column `c`.
    o: Vec<usize>,
}

/// Everything wrong with a candidate pair of row maps; empty when valid.
pub fn validate_grid(x: &[usize], o: &[usize]) -> Vec<String> {
    let n = x.len();
    let mut out = Vec::new();
    if o.len() != n {
        out.push(format!("X has {n} columns but O has {}", o.len()));
        return out;
    }
    for (name, perm) in [("X", x), ("O", o)] {
        let mut hits = vec![0usize; n];
        for (c, &r) in perm.iter().enumerate() {
            if r >= n {
                out.push(format!(
                    "{name} in column {} is in row {}, outside 1..={n}",
                    c + 1,
                    r + 1
                ));
            } else {
                hits[r] += 1;
            }
        }
        for (r, &h) in hits.iter().enumerate() {
            if h != 1 {
                out.push(format!("row {} holds {h} {name}s", r + 1));
            }
        }
    }
    for c in 0..n {
        if x[c] == o[c] {
            out.push(format!(
                "X and O share the square at column {}, row {}",
                c + 1,
                x[c] + 1
            ));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Columns,
    Rows,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decoration {
    X,
    O,
}

/// A corner of a 2x2 block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];

    /// Column and row offsets inside the block, rows counted upward.
    fn offset(self) -> (usize, usize) {
        match self {
            Corner::SW => (0, 0),
            Corner::SE => (1, 0),
            Corner::NW => (0, 1),
            Corner::NE => (1, 1),
        }
    }

    fn from_offset(dc: usize, dr: usize) -> Corner {
        match (dc, dr) {
            (0, 0) => Corner::SW,
            (1, 0) => Corner::SE,
            (0, 1) => Corner::NW,
            _ => Corner::NE,
        }
    }

    fn opposite(self) -> Corner {
        let (dc, dr) = self.offset();
        Corner::from_offset(1 - dc, 1 - dr)
    }
}

/// How strictly commutation checks the two columns (rows).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CommutationRule {
    /// All decorations of one column lie strictly above all of the other.
    #[default]
    Separated,
    /// The two segments are disjoint or nested, with four distinct ends.
    NonInterleaved,
}

/// One elementary move. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridMove {
    /// Moves every column one step right (rows: up), wrapping around;
    /// `forward = false` goes the other way.
    Cyclic { axis: Axis, forward: bool },
    /// Swaps columns (rows) `index` and `index + 1`.
    Commute {
        axis: Axis,
        index: usize,
        rule: CommutationRule,
    },
    /// Replaces the `kind` decoration in `column` by a 2x2 block whose empty
    /// square is `empty`.
    Stabilize {
        column: usize,
        kind: Decoration,
        empty: Corner,
    },
    /// Collapses the 2x2 block with lower-left square `(column, row)`.
    Destabilize { column: usize, row: usize },
}

impl GridDiagram {
    pub fn new(x: Vec<usize>, o: Vec<usize>) -> Result<GridDiagram> {
        let problems = validate_grid(&x, &o);
        if problems.is_empty() {
            Ok(GridDiagram { x, o })
        } else {
            Err(Error::InvalidGrid(problems.join("; ")))
        }
    }

    /// The grid of a blank mosaic.
    pub fn empty() -> GridDiagram {
        GridDiagram {
            x: Vec::new(),
            o: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn o(&self) -> &[usize] {
        &self.o
    }

    fn rows_of(&self, kind: Decoration) -> &[usize] {
        match kind {
            Decoration::X => &self.x,
            Decoration::O => &self.o,
        }
    }

    /// Column of the `kind` decoration in `row`.
    fn column_in_row(&self, kind: Decoration, row: usize) -> usize {
        self.rows_of(kind).iter().position(|&r| r == row).expect("permutation")
    }

    /// Reflects in the diagonal, exchanging columns and rows.
    fn transpose(&self) -> GridDiagram {
        let n = self.size();
        let mut x = vec![0; n];
        let mut o = vec![0; n];
        for c in 0..n {
            x[self.x[c]] = c;
            o[self.o[c]] = c;
        }
        GridDiagram { x, o }
    }

    pub fn cyclic_permute(&self, axis: Axis, forward: bool) -> GridDiagram {
        let n = self.size();
        if n == 0 {
            return self.clone();
        }
        let step = if forward { 1 } else { n - 1 };
        match axis {
            Axis::Columns => {
                let mut x = vec![0; n];
                let mut o = vec![0; n];
                for c in 0..n {
                    x[(c + step) % n] = self.x[c];
                    o[(c + step) % n] = self.o[c];
                }
                GridDiagram { x, o }
            }
            Axis::Rows => GridDiagram {
                x: self.x.iter().map(|r| (r + step) % n).collect(),
                o: self.o.iter().map(|r| (r + step) % n).collect(),
            },
        }
    }

    /// Whether columns (rows) `index` and `index + 1` may be swapped.
    pub fn can_commute(&self, axis: Axis, index: usize, rule: CommutationRule) -> bool {
        if axis == Axis::Rows {
            return self.transpose().can_commute(Axis::Columns, index, rule);
        }
        if index + 1 >= self.size() {
            return false;
        }
        let span = |c: usize| (self.x[c].min(self.o[c]), self.x[c].max(self.o[c]));
        let (a0, a1) = span(index);
        let (b0, b1) = span(index + 1);
        let separated = a1 < b0 || b1 < a0;
        match rule {
            CommutationRule::Separated => separated,
            CommutationRule::NonInterleaved => {
                let distinct = a0 != b0 && a0 != b1 && a1 != b0 && a1 != b1;
                let nested = (a0 < b0 && b1 < a1) || (b0 < a0 && a1 < b1);
                distinct && (separated || nested)
            }
        }
    }

    pub fn commute(&self, axis: Axis, index: usize, rule: CommutationRule) -> Result<GridDiagram> {
        if index + 1 >= self.size() {
            return Err(Error::Bounds(format!(
                "no {axis} {} and {} in a {}-grid",
                index + 1,
                index + 2,
                self.size()
            )));
        }
        if !self.can_commute(axis, index, rule) {
            return Err(Error::NotApplicable(format!(
                "{axis} {} and {} interleave",
                index + 1,
                index + 2
            )));
        }
        if axis == Axis::Rows {
            return Ok(self.transpose().commute(Axis::Columns, index, rule)?.transpose());
        }
        let mut g = self.clone();
        g.x.swap(index, index + 1);
        g.o.swap(index, index + 1);
        Ok(g)
    }

    /// Adds a row and a column. The `kind` decoration of `column` becomes
    /// three decorations in a 2x2 block at its square: two of `kind` on one
    /// diagonal and one of the other kind opposite `empty`. The decorations
    /// it was joined to move into the column and row of `empty`.
    pub fn stabilize(&self, column: usize, kind: Decoration, empty: Corner) -> Result<GridDiagram> {
        let n = self.size();
        if column >= n {
            return Err(Error::Bounds(format!("no column {} in a {n}-grid", column + 1)));
        }
        let other = flip(kind);
        let row = self.rows_of(kind)[column];
        let col_partner = self.rows_of(other)[column];
        let row_partner = self.column_in_row(other, row);
        let shift_c = |c: usize| c + usize::from(c > column);
        let shift_r = |r: usize| r + usize::from(r > row);

        let mut dec: Vec<(usize, usize, Decoration)> = Vec::with_capacity(2 * n + 2);
        for c in 0..n {
            for k in [Decoration::X, Decoration::O] {
                let r = self.rows_of(k)[c];
                let involved = (c == column && (r == row || k == other)) || (k == other && r == row);
                if !involved {
                    dec.push((shift_c(c), shift_r(r), k));
                }
            }
        }
        let (ec, er) = empty.offset();
        for corner in Corner::ALL {
            if corner == empty {
                continue;
            }
            let (dc, dr) = corner.offset();
            let k = if corner == empty.opposite() { other } else { kind };
            dec.push((column + dc, row + dr, k));
        }
        dec.push((column + ec, shift_r(col_partner), other));
        dec.push((shift_c(row_partner), row + er, other));
        Ok(from_decorations(n + 1, &dec))
    }

    /// Removes a row and a column, undoing [`GridDiagram::stabilize`].
    pub fn destabilize(&self, column: usize, row: usize) -> Result<GridDiagram> {
        let n = self.size();
        if column + 1 >= n || row + 1 >= n {
            return Err(Error::Bounds(format!(
                "no 2x2 block at column {}, row {} in a {n}-grid",
                column + 1,
                row + 1
            )));
        }
        let at = |c: usize, r: usize| {
            if self.x[c] == r {
                Some(Decoration::X)
            } else if self.o[c] == r {
                Some(Decoration::O)
            } else {
                None
            }
        };
        let mut empty = None;
        let mut filled = 0;
        for corner in Corner::ALL {
            let (dc, dr) = corner.offset();
            match at(column + dc, row + dr) {
                Some(_) => filled += 1,
                None => empty = Some(corner),
            }
        }
        let not_applicable = || {
            Error::NotApplicable(format!(
                "the 2x2 block at column {}, row {} does not hold three decorations",
                column + 1,
                row + 1
            ))
        };
        let empty = match (filled, empty) {
            (3, Some(e)) => e,
            _ => return Err(not_applicable()),
        };
        let (ec, er) = empty.offset();
        let (oc, or) = empty.opposite().offset();
        let other = at(column + oc, row + or).ok_or_else(not_applicable)?;
        let kind = flip(other);
        let col_partner = self.rows_of(other)[column + ec];
        let row_partner = self.column_in_row(other, row + er);
        let unshift_c = |c: usize| c - usize::from(c > column);
        let unshift_r = |r: usize| r - usize::from(r > row);

        let mut dec = Vec::with_capacity(2 * n - 2);
        for c in 0..n {
            for k in [Decoration::X, Decoration::O] {
                let r = self.rows_of(k)[c];
                let in_block = (c == column || c == column + 1) && (r == row || r == row + 1);
                let partner = (c == column + ec && k == other) || (r == row + er && k == other);
                if !in_block && !partner {
                    dec.push((unshift_c(c), unshift_r(r), k));
                }
            }
        }
        dec.push((column, row, kind));
        dec.push((column, unshift_r(col_partner), other));
        dec.push((unshift_c(row_partner), row, other));
        let g = from_decorations(n - 1, &dec);
        if !validate_grid(&g.x, &g.o).is_empty() {
            return Err(not_applicable());
        }
        Ok(g)
    }

    /// Every 2x2 block a destabilization applies to, as `(column, row)`.
    pub fn destabilization_sites(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for c in 0..n.saturating_sub(1) {
            for r in 0..n - 1 {
                if self.destabilize(c, r).is_ok() {
                    out.push((c, r));
                }
            }
        }
        out
    }

    pub fn apply(&self, mv: GridMove) -> Result<GridDiagram> {
        match mv {
            GridMove::Cyclic { axis, forward } => Ok(self.cyclic_permute(axis, forward)),
            GridMove::Commute { axis, index, rule } => self.commute(axis, index, rule),
            GridMove::Stabilize { column, kind, empty } => self.stabilize(column, kind, empty),
            GridMove::Destabilize { column, row } => self.destabilize(column, row),
        }
    }

    /// Line 1 `N`, line 2 `X: ...`, line 3 `O: ...`, rows numbered from 1.
    pub fn serialize(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|r| (r + 1).to_string()).collect::<Vec<_>>().join(" ");
        format!("{}\nX: {}\nO: {}\n", self.size(), join(&self.x), join(&self.o))
    }

    pub fn parse(text: &str) -> Result<GridDiagram> {
        let (x, o) = parse_rows(text)?;
        GridDiagram::new(x, o)
    }
}

fn flip(k: Decoration) -> Decoration {
    match k {
        Decoration::X => Decoration::O,
        Decoration::O => Decoration::X,
    }
}

fn from_decorations(n: usize, dec: &[(usize, usize, Decoration)]) -> GridDiagram {
    let mut x = vec![usize::MAX; n];
    let mut o = vec![usize::MAX; n];
    for &(c, r, k) in dec {
        match k {
            Decoration::X => x[c] = r,
            Decoration::O => o[c] = r,
        }
    }
    GridDiagram { x, o }
}

/// Reads the text format without checking the grid conditions, so that
/// callers can report every problem. Rows come back zero-based.
pub fn parse_rows(text: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, head) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty grid file"))?;
    let n: usize = head
        .parse()
        .map_err(|_| Error::parse(ln, 1, format!("bad grid size `{head}`")))?;
    let mut read = |tag: &str| -> Result<Vec<usize>> {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(ln + 1, 1, format!("missing `{tag}:` line")))?;
        let rest = line
            .strip_prefix(tag)
            .and_then(|r| r.trim_start().strip_prefix(':'))
            .ok_or_else(|| Error::parse(ln, 1, format!("expected `{tag}:`")))?;
        let rows = rest
            .split_whitespace()
            .enumerate()
            .map(|(k, v)| match v.parse::<usize>() {
                Ok(r) if r >= 1 => Ok(r - 1),
                _ => Err(Error::parse(ln, k + 1, format!("bad row `{v}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != n {
            return Err(Error::parse(
                ln,
                1,
                format!("expected {n} rows after `{tag}:`, found {}", rows.len()),
            ));
        }
        Ok(rows)
    };
    let x = read("X")?;
    let o = read("O")?;
    Ok((x, o))
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

impl FromStr for GridDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<GridDiagram> {
        GridDiagram::parse(s)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Columns => "columns",
            Axis::Rows => "rows",
        })
    }
}

impl fmt::Display for GridMove {
    /// The `--move` syntax, with one-based indices: `cyclic:cols:+`,
    /// `commute:rows:2`, `commute:cols:1:weak`, `stabilize:3:X:NW`,
    /// `destabilize:2:4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axis = |a: Axis| if a == Axis::Columns { "cols" } else { "rows" };
        match *self {
            GridMove::Cyclic { axis: a, forward } => {
                write!(f, "cyclic:{}:{}", axis(a), if forward { '+' } else { '-' })
            }
            GridMove::Commute { axis: a, index, rule } => {
                write!(f, "commute:{}:{}", axis(a), index + 1)?;
                if rule == CommutationRule::NonInterleaved {
                    write!(f, ":weak")?;
                }
                Ok(())
            }
            GridMove::Stabilize { column, kind, empty } => write!(f, "stabilize:{}:{:?}:{:?}", column + 1, kind, empty),
            GridMove::Destabilize { column, row } => write!(f, "destabilize:{}:{}", column + 1, row + 1),
        }
    }
}

impl FromStr for GridMove {
    type Err = Error;
    fn from_str(s: &str) -> Result<GridMove> {
        let bad = || Error::parse(1, 1, format!("bad grid move `{s}`"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let axis = |a: &str| match a {
            "cols" | "columns" => Ok(Axis::Columns),
            "rows" => Ok(Axis::Rows),
            _ => Err(bad()),
        };
        let index = |v: &str| match v.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(bad()),
        };
        match parts.as_slice() {
            ["cyclic", a, d] => Ok(GridMove::Cyclic {
                axis: axis(a)?,
                forward: match *d {
                    "+" => true,
                    "-" => false,
                    _ => return Err(bad()),
                },
            }),
            ["commute", a, i] | ["commute", a, i, "strict"] => Ok(GridMove::Commute {
                axis: axis(a)?,
                index: index(i)?,
                rule: CommutationRule::Separated,
            }),
            ["commute", a, i, "weak"] => Ok(GridMove::Commute {
                axis: axis(a)?,
                index: index(i)?,
                rule: CommutationRule::NonInterleaved,
            }),
            ["stabilize", c, k, e] => Ok(GridMove::Stabilize {
                column: index(c)?,
                kind: match *k {
                    "X" => Decoration::X,
                    "O" => Decoration::O,
                    _ => return Err(bad()),
                },
                empty: match *e {
                    "NW" => Corner::NW,
                    "NE" => Corner::NE,
                    "SW" => Corner::SW,
                    "SE" => Corner::SE,
                    _ => return Err(bad()),
                },
            }),
            ["destabilize", c, r] => Ok(GridMove::Destabilize {
                column: index(c)?,
                row: index(r)?,
            }),
            _ => Err(bad()),
        }
    }
}

/// Draws the grid: each column's segment between its `X` and `O`, each
/// row's segment between its `O` and `X`, verticals over at crossings.
/// Only tiles `T0`-`T6` and `T10` appear.
pub fn grid_to_mosaic(g: &GridDiagram) -> Mosaic {
    let n = g.size();
    let mut out = Mosaic::blank(n);
    let mut edges = vec![EdgeSet::EMPTY; n * n];
    for c in 0..n {
        let (lo, hi) = (g.x[c].min(g.o[c]), g.x[c].max(g.o[c]));
        for r in lo..=hi {
            let cell = &mut edges[r * n + c];
            if r < hi {
                *cell = cell.with(Edge::N);
            }
            if r > lo {
                *cell = cell.with(Edge::S);
            }
        }
    }
    for r in 0..n {
        let (a, b) = (g.column_in_row(Decoration::X, r), g.column_in_row(Decoration::O, r));
        let (lo, hi) = (a.min(b), a.max(b));
        for c in lo..=hi {
            let cell = &mut edges[r * n + c];
            if c < hi {
                *cell = cell.with(Edge::E);
            }
            if c > lo {
                *cell = cell.with(Edge::W);
            }
        }
    }
    for r in 0..n {
        for c in 0..n {
            let e = edges[r * n + c];
            let t = if e.len() == 4 {
                Tile::of(10)
            } else {
                Tile::all()
                    .take(7)
                    .find(|t| t.edges() == e)
                    .expect("grid squares meet the curve in zero or two edges")
            };
            out.set(n - 1 - r, c, t);
        }
    }
    out
}

/// Reads a grid off a knot mosaic: zoom so that only `T0`-`T6` and `T10`
/// remain, trace the maximal straight segments, give every vertical its own
/// column and every horizontal its own row in the order they appear, and
/// place decorations at the corners. Each component starts at its first
/// corner in row-major order and leaves it downward, so that travel along
/// verticals runs from `X` to `O`. A blank mosaic gives the empty grid.
pub fn mosaic_to_grid(m: &Mosaic) -> Result<GridDiagram> {
    if !m.is_suitably_connected() {
        return Err(Error::NotApplicable("not a knot mosaic".into()));
    }
    let z = zoom5(m);
    let n = z.side();
    let is_corner = |t: Tile| matches!(t.index(), 1..=4);
    let mut visited = vec![false; n * n];
    // corner cells in travel order; even positions are X, odd are O
    let mut cycles: Vec<Vec<(usize, usize)>> = Vec::new();
    for start in 0..n * n {
        let (i0, j0) = (start / n, start % n);
        if visited[start] || !is_corner(z.get(i0, j0)) {
            continue;
        }
        let mut cycle = Vec::new();
        let (mut i, mut j) = (i0, j0);
        let mut heading = Edge::S;
        loop {
            visited[i * n + j] = true;
            cycle.push((i, j));
            let (di, dj) = heading.step();
            loop {
                i = (i as isize + di) as usize;
                j = (j as isize + dj) as usize;
                if is_corner(z.get(i, j)) {
                    break;
                }
            }
            if (i, j) == (i0, j0) {
                break;
            }
            heading = z.get(i, j).partner(heading.opposite()).expect("corner turns");
        }
        cycles.push(cycle);
    }
    // (line, start) of each segment, with the corners at its two ends
    let mut verticals: Vec<((usize, usize), (usize, usize))> = Vec::new();
    let mut horizontals: Vec<((usize, usize), (usize, usize))> = Vec::new();
    let mut corner_ids = Vec::new();
    for cycle in &cycles {
        let base = corner_ids.len();
        corner_ids.extend(cycle.iter().copied());
        let k = cycle.len();
        for t in (0..k).step_by(2) {
            let (x, o) = (cycle[t], cycle[t + 1]);
            verticals.push(((x.1, x.0.min(o.0)), (base + t, base + t + 1)));
            let (p, q) = (cycle[t + 1], cycle[(t + 2) % k]);
            horizontals.push(((p.0, p.1.min(q.1)), (base + t + 1, base + (t + 2) % k)));
        }
    }
    let size = verticals.len();
    verticals.sort_unstable();
    horizontals.sort_unstable();
    // the first horizontal from the top is the highest row
    let mut row_of = vec![0; corner_ids.len()];
    for (rank, &(_, (p, q))) in horizontals.iter().enumerate() {
        row_of[p] = size - 1 - rank;
        row_of[q] = size - 1 - rank;
    }
    let x = verticals.iter().map(|&(_, (xc, _))| row_of[xc]).collect();
    let o = verticals.iter().map(|&(_, (_, oc))| row_of[oc]).collect();
    GridDiagram::new(x, o)
}

/// A certificate carrying the mosaic of `g` to the mosaic of `mv(g)`,
/// searched directly.
pub fn elementary_move_as_certificate(g: &GridDiagram, mv: GridMove, budget: SearchBudget) -> Result<SearchOutcome> {
    let target = g.apply(mv)?;
    find_certificate(&grid_to_mosaic(g), &grid_to_mosaic(&target), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::fingerprint;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn grid(x: &[usize], o: &[usize]) -> GridDiagram {
        GridDiagram::new(x.iter().map(|r| r - 1).collect(), o.iter().map(|r| r - 1).collect()).unwrap()
    }

    fn unknot2() -> GridDiagram {
        grid(&[2, 1], &[1, 2])
    }

    fn trefoil() -> GridDiagram {
        grid(&[4, 5, 1, 2, 3], &[1, 2, 3, 4, 5])
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn all_grids(n: usize) -> Vec<GridDiagram> {
        let perms = permutations(n);
        let mut out = Vec::new();
        for x in &perms {
            for o in &perms {
                if let Ok(g) = GridDiagram::new(x.clone(), o.clone()) {
                    out.push(g);
                }
            }
        }
        out
    }

    fn random_grid(rng: &mut impl Rng, n: usize) -> GridDiagram {
        loop {
            let mut x: Vec<usize> = (0..n).collect();
            let mut o: Vec<usize> = (0..n).collect();
            x.shuffle(rng);
            o.shuffle(rng);
            if let Ok(g) = GridDiagram::new(x, o) {
                return g;
            }
        }
    }

    fn print(g: &GridDiagram) -> crate::invariants::Fingerprint {
        fingerprint(&grid_to_mosaic(g)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_grid(&[1, 0], &[0, 1]).is_empty());
        assert!(!validate_grid(&[1, 0], &[1, 0]).is_empty());
        assert!(!validate_grid(&[0, 0], &[1, 1]).is_empty());
        assert!(!validate_grid(&[0, 2], &[1, 0]).is_empty());
        assert!(!validate_grid(&[0], &[1, 0]).is_empty());
        assert!(matches!(GridDiagram::new(vec![0], vec![0]), Err(Error::InvalidGrid(_))));
        assert!(GridDiagram::empty().is_empty());
    }

    #[test]
    fn text_round_trip() {
        let g = trefoil();
        let text = g.serialize();
        assert_eq!(text, "5\nX: 4 5 1 2 3\nO: 1 2 3 4 5\n");
        assert_eq!(text.parse::<GridDiagram>().unwrap(), g);
        assert!(matches!(
            GridDiagram::parse("2\nX: 1 2\nO: 1 2\n"),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(GridDiagram::parse("2\nX: 1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            GridDiagram::parse("2\nX: 1 0\nO: 2 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            GridDiagram::parse("2\nO: 1 2\nX: 2 1\n"),
            Err(Error::Parse { .. })
        ));
        assert_eq!(parse_rows("2\nX: 1 1\nO: 2 2\n").unwrap(), (vec![0, 0], vec![1, 1]));
    }

    #[test]
    fn move_text_round_trip() {
        for s in [
            "cyclic:cols:+",
            "cyclic:rows:-",
            "commute:cols:2",
            "commute:rows:1:weak",
            "stabilize:3:X:NW",
            "destabilize:2:4",
        ] {
            assert_eq!(s.parse::<GridMove>().unwrap().to_string(), s);
        }
        for s in [
            "cyclic:cols",
            "commute:cols:0",
            "stabilize:1:Y:NW",
            "stabilize:1:X:N",
            "slide:1",
        ] {
            assert!(s.parse::<GridMove>().is_err(), "{s}");
        }
    }

    #[test]
    fn minimal_unknot_draws_the_unique_two_mosaic() {
        let m = grid_to_mosaic(&unknot2());
        assert_eq!(m, Mosaic::parse_row_string("2 1;3 4").unwrap());
        let nonblank: Vec<Mosaic> = crate::enumerate::enumerate_knot_mosaics(2)
            .filter(|k| !k.is_blank())
            .collect();
        assert_eq!(nonblank, [m]);
    }

    #[test]
    fn drawings_use_grid_tiles_only() {
        for n in 2..=4 {
            for g in all_grids(n) {
                let m = grid_to_mosaic(&g);
                assert!(m.is_suitably_connected());
                assert!(m.cells().iter().all(|t| t.index() <= 6 || t.index() == 10));
            }
        }
        let t = grid_to_mosaic(&trefoil());
        assert_eq!(t.crossing_count(), 3);
        // this grid draws the mirror of the fixture trefoil
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/trefoil.mosaic");
        let fixture = fingerprint(&Mosaic::parse(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap();
        assert_eq!(print(&trefoil()).bracket, fixture.bracket.invert_variable());
    }

    #[test]
    fn cyclic_permutation() {
        let g = trefoil();
        for axis in [Axis::Columns, Axis::Rows] {
            let mut h = g.clone();
            for _ in 0..g.size() {
                h = h.cyclic_permute(axis, true);
                assert_eq!(print(&h), print(&g));
            }
            assert_eq!(h, g);
            assert_eq!(g.cyclic_permute(axis, true).cyclic_permute(axis, false), g);
        }
        let u = unknot2().cyclic_permute(Axis::Columns, true);
        assert_eq!(u.size(), 2);
        assert_eq!(grid_to_mosaic(&u), grid_to_mosaic(&unknot2()));
    }

    #[test]
    fn commutation() {
        // columns 1 and 2 hold rows {1,2} and {3,4}: separated
        let g = grid(&[1, 3, 2, 4], &[2, 4, 3, 1]);
        let h = g.commute(Axis::Columns, 0, CommutationRule::Separated).unwrap();
        assert_eq!(h.commute(Axis::Columns, 0, CommutationRule::Separated).unwrap(), g);
        assert_eq!(print(&h), print(&g));
        // columns 2 and 3 hold {3,4} and {2,3}: they share a row
        assert!(matches!(
            g.commute(Axis::Columns, 1, CommutationRule::Separated),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            g.commute(Axis::Columns, 1, CommutationRule::NonInterleaved),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            g.commute(Axis::Columns, 3, CommutationRule::Separated),
            Err(Error::Bounds(_))
        ));
        // nested segments pass only the weak rule
        let nested = grid(&[1, 2, 4, 3], &[4, 3, 2, 1]);
        assert!(!nested.can_commute(Axis::Columns, 0, CommutationRule::Separated));
        let w = nested
            .commute(Axis::Columns, 0, CommutationRule::NonInterleaved)
            .unwrap();
        assert_eq!(print(&w), print(&nested));
        // rows
        let t = trefoil();
        for i in 0..4 {
            for rule in [CommutationRule::Separated, CommutationRule::NonInterleaved] {
                if let Ok(h) = t.commute(Axis::Rows, i, rule) {
                    assert_eq!(print(&h), print(&t));
                    assert_eq!(h.commute(Axis::Rows, i, rule).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn stabilization_inverts() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut grids = vec![unknot2(), trefoil()];
        for _ in 0..20 {
            let n = rng.gen_range(2..=6);
            grids.push(random_grid(&mut rng, n));
        }
        for g in grids {
            for column in 0..g.size() {
                for kind in [Decoration::X, Decoration::O] {
                    for empty in Corner::ALL {
                        let s = g.stabilize(column, kind, empty).unwrap();
                        assert_eq!(s.size(), g.size() + 1);
                        assert_eq!(print(&s), print(&g), "{g} {column} {kind:?} {empty:?}");
                        let row = g.rows_of(kind)[column];
                        assert_eq!(s.destabilize(column, row).unwrap(), g);
                        assert!(s.destabilization_sites().contains(&(column, row)));
                    }
                }
            }
        }
        assert!(matches!(trefoil().destabilize(0, 0), Err(Error::NotApplicable(_))));
        assert!(matches!(trefoil().destabilize(4, 0), Err(Error::Bounds(_))));
        assert!(matches!(
            trefoil().stabilize(5, Decoration::X, Corner::NE),
            Err(Error::Bounds(_))
        ));
        assert_eq!(unknot2().stabilize(0, Decoration::X, Corner::NE).unwrap().size(), 3);
    }

    #[test]
    fn random_moves_preserve_the_link() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut trials = 0;
        let mut rejected = 0;
        while trials < 1200 {
            let n = rng.gen_range(2..=8);
            let g = random_grid(&mut rng, n);
            let axis = if rng.gen() { Axis::Columns } else { Axis::Rows };
            let mv = match rng.gen_range(0..4) {
                0 => GridMove::Cyclic {
                    axis,
                    forward: rng.gen(),
                },
                1 => GridMove::Commute {
                    axis,
                    index: rng.gen_range(0..n - 1),
                    rule: CommutationRule::Separated,
                },
                2 => GridMove::Stabilize {
                    column: rng.gen_range(0..n),
                    kind: if rng.gen() { Decoration::X } else { Decoration::O },
                    empty: Corner::ALL[rng.gen_range(0..4)],
                },
                _ => match g.destabilization_sites().first() {
                    Some(&(column, row)) => GridMove::Destabilize { column, row },
                    None => continue,
                },
            };
            trials += 1;
            match g.apply(mv) {
                Ok(h) => {
                    let (a, b) = (print(&g), print(&h));
                    assert_eq!(a, b, "{g}{mv}");
                }
                Err(Error::NotApplicable(_)) => {
                    rejected += 1;
                    let GridMove::Commute { axis, index, rule } = mv else {
                        panic!("{mv} rejected");
                    };
                    assert!(!g.can_commute(axis, index, rule));
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(rejected > 0);
    }

    #[test]
    fn reading_back_recovers_segments() {
        for n in 2..=4 {
            for g in all_grids(n) {
                let m = grid_to_mosaic(&g);
                let back = mosaic_to_grid(&m).unwrap();
                assert_eq!(grid_to_mosaic(&back), m);
                // each column keeps its pair of rows; only X and O may trade
                for c in 0..n {
                    let mut a = [g.x[c], g.o[c]];
                    let mut b = [back.x[c], back.o[c]];
                    a.sort_unstable();
                    b.sort_unstable();
                    assert_eq!(a, b);
                }
                assert_eq!(mosaic_to_grid(&grid_to_mosaic(&back)).unwrap(), back);
            }
        }
    }

    #[test]
    fn reading_back_fixes_orientation_by_first_corner() {
        // the first corner is an X and the curve leaves it downward
        let g = unknot2();
        assert_eq!(mosaic_to_grid(&grid_to_mosaic(&g)).unwrap(), g);
        let reversed = GridDiagram::new(g.o.clone(), g.x.clone()).unwrap();
        assert_eq!(grid_to_mosaic(&reversed), grid_to_mosaic(&g));
        assert_eq!(mosaic_to_grid(&grid_to_mosaic(&reversed)).unwrap(), g);
    }

    #[test]
    fn reading_a_general_mosaic() {
        let m = Mosaic::parse(
            &std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/zoom/input.mosaic")).unwrap(),
        )
        .unwrap();
        let g = mosaic_to_grid(&m).unwrap();
        assert_eq!(print(&g), fingerprint(&m).unwrap());
        for k in crate::orbits::compute_orbits(4).unwrap().classes() {
            let m = &k.representative;
            let g = mosaic_to_grid(m).unwrap();
            if m.is_blank() {
                assert!(g.is_empty());
            } else {
                assert_eq!(print(&g), fingerprint(m).unwrap(), "{}", m.to_row_string());
            }
        }
        assert!(matches!(
            mosaic_to_grid(&Mosaic::parse_row_string("2 0;0 0").unwrap()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn moves_as_certificates() {
        let budget = SearchBudget {
            max_depth: 8,
            max_pad: 1,
            ..SearchBudget::default()
        };
        let g = unknot2();
        let same = elementary_move_as_certificate(
            &g,
            GridMove::Cyclic {
                axis: Axis::Columns,
                forward: true,
            },
            budget,
        )
        .unwrap();
        assert!(matches!(same, SearchOutcome::Found(ref c) if c.is_empty()));
        let mv = GridMove::Stabilize {
            column: 0,
            kind: Decoration::X,
            empty: Corner::NE,
        };
        match elementary_move_as_certificate(&g, mv, budget).unwrap() {
            SearchOutcome::Found(c) => {
                let end = crate::search::replay(&c, &grid_to_mosaic(&g)).unwrap();
                assert_eq!(end, grid_to_mosaic(&g.apply(mv).unwrap()).inject_times(c.pad_target));
            }
            other => panic!("{other:?}"),
        }
        assert!(elementary_move_as_certificate(&g, GridMove::Destabilize { column: 0, row: 0 }, budget).is_err());
    }
}

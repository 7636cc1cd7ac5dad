//! Square mosaics of tiles.
//!
//! Text format: a line holding `n`, then `n` lines of `n` space-separated
//! tile indices. Row 0 is the top row, column 0 the leftmost column.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tiles::{D4Element, Edge, Tile};

/// An `n × n` matrix of tiles stored row-major.
///
/// The derived ordering compares side first, then cells row-major, which is
/// the lexicographic order of the compact encoding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mosaic {
    n: usize,
    cells: Vec<Tile>,
}

/// The first connection point that does not meet a partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub edge: Edge,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.row, self.col, self.edge)
    }
}

impl Mosaic {
    pub fn blank(n: usize) -> Mosaic {
        Mosaic {
            n,
            cells: vec![Tile::BLANK; n * n],
        }
    }

    pub fn from_cells(n: usize, cells: Vec<Tile>) -> Result<Mosaic> {
        if cells.len() != n * n {
            return Err(Error::Bounds(format!(
                "{} cells cannot form a {n}x{n} mosaic",
                cells.len()
            )));
        }
        Ok(Mosaic { n, cells })
    }

    /// Builds a mosaic from rows of tile indices.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Mosaic> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::parse(
                    r + 1,
                    1,
                    format!("expected {n} tiles, found {}", row.len()),
                ));
            }
            for (c, &v) in row.iter().enumerate() {
                cells.push(
                    Tile::new(v).ok_or_else(|| Error::parse(r + 1, c + 1, format!("tile index {v} out of range")))?,
                );
            }
        }
        Ok(Mosaic { n, cells })
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Tile] {
        &self.cells
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Tile {
        self.cells[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, t: Tile) {
        self.cells[i * self.n + j] = t;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Tile]> {
        self.cells.chunks(self.n.max(1)).take(self.n)
    }

    pub fn is_blank(&self) -> bool {
        self.cells.iter().all(|t| t.is_blank())
    }

    pub fn crossing_count(&self) -> usize {
        self.cells.iter().filter(|t| t.is_crossing()).count()
    }

    fn check_location(&self, k: usize, i: usize, j: usize) -> Result<()> {
        if k == 0 || k > self.n || i + k > self.n || j + k > self.n {
            return Err(Error::Bounds(format!(
                "{k}-submosaic at ({i}, {j}) does not fit in a {}-mosaic",
                self.n
            )));
        }
        Ok(())
    }

    /// The `k × k` block whose top-left cell is `(i, j)`.
    pub fn submosaic(&self, k: usize, i: usize, j: usize) -> Result<Mosaic> {
        self.check_location(k, i, j)?;
        let mut cells = Vec::with_capacity(k * k);
        for r in i..i + k {
            cells.extend_from_slice(&self.cells[r * self.n + j..r * self.n + j + k]);
        }
        Ok(Mosaic { n: k, cells })
    }

    /// Whether the block at `(i, j)` equals `block`. Out-of-range is `false`.
    pub fn block_equals(&self, block: &Mosaic, i: usize, j: usize) -> bool {
        let k = block.n;
        if i + k > self.n || j + k > self.n {
            return false;
        }
        (0..k).all(|r| self.cells[(i + r) * self.n + j..(i + r) * self.n + j + k] == block.cells[r * k..(r + 1) * k])
    }

    /// Overwrites the block at `(i, j)` with `block`.
    pub fn replace_block(&mut self, block: &Mosaic, i: usize, j: usize) -> Result<()> {
        let k = block.n;
        self.check_location(k, i, j)?;
        for r in 0..k {
            let dst = (i + r) * self.n + j;
            self.cells[dst..dst + k].copy_from_slice(&block.cells[r * k..(r + 1) * k]);
        }
        Ok(())
    }

    /// The mosaic injection: pads with a blank last row and column.
    pub fn inject(&self) -> Mosaic {
        self.inject_times(1)
    }

    pub fn inject_times(&self, p: usize) -> Mosaic {
        let m = self.n + p;
        let mut out = Mosaic::blank(m);
        for i in 0..self.n {
            out.cells[i * m..i * m + self.n].copy_from_slice(&self.cells[i * self.n..(i + 1) * self.n]);
        }
        out
    }

    /// Applies a symmetry of the square to the whole mosaic, moving cells and
    /// transforming each tile.
    pub fn transform(&self, g: D4Element) -> Mosaic {
        let mut out = Mosaic::blank(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let (gi, gj) = g.apply_cell(self.n, (i, j));
                out.set(gi, gj, self.get(i, j).transform(g));
            }
        }
        out
    }

    fn neighbor(&self, i: usize, j: usize, e: Edge) -> Option<Tile> {
        let (di, dj) = e.step();
        let (ni, nj) = (i as isize + di, j as isize + dj);
        let n = self.n as isize;
        (ni >= 0 && nj >= 0 && ni < n && nj < n).then(|| self.get(ni as usize, nj as usize))
    }

    /// Returns the lexicographically first (row, col, edge) whose connection
    /// status disagrees with the contiguous tile, treating the outside of
    /// the mosaic as connection-free.
    pub fn first_violation(&self) -> Option<Violation> {
        for i in 0..self.n {
            for j in 0..self.n {
                let t = self.get(i, j);
                for e in Edge::ALL {
                    let theirs = self.neighbor(i, j, e).is_some_and(|u| u.has(e.opposite()));
                    if t.has(e) != theirs {
                        return Some(Violation {
                            row: i,
                            col: j,
                            edge: e,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_suitably_connected(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Whether every interior edge carries matching connection status on
    /// both sides. Boundary edges are unconstrained.
    pub fn is_interior_consistent(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let t = self.get(i, j);
                if j + 1 < n && t.has(Edge::E) != self.get(i, j + 1).has(Edge::W) {
                    return false;
                }
                if i + 1 < n && t.has(Edge::S) != self.get(i + 1, j).has(Edge::N) {
                    return false;
                }
            }
        }
        true
    }

    /// Connection status of the `4n` boundary edge midpoints: top row (N),
    /// right column (E), bottom row (S), left column (W), each scanned by
    /// increasing index.
    pub fn boundary_profile(&self) -> Vec<bool> {
        let n = self.n;
        let mut out = Vec::with_capacity(4 * n);
        out.extend((0..n).map(|j| self.get(0, j).has(Edge::N)));
        out.extend((0..n).map(|i| self.get(i, n - 1).has(Edge::E)));
        out.extend((0..n).map(|j| self.get(n - 1, j).has(Edge::S)));
        out.extend((0..n).map(|i| self.get(i, 0).has(Edge::W)));
        out
    }

    /// Compact encoding: side as two big-endian bytes, then tiles row-major,
    /// two per byte (high nibble first) when `n ≤ 16`, else one per byte.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 + self.cells.len());
        out.extend_from_slice(&(self.n as u16).to_be_bytes());
        if self.n <= 16 {
            for pair in self.cells.chunks(2) {
                let hi = pair[0].index() << 4;
                let lo = pair.get(1).map_or(0, |t| t.index());
                out.push(hi | lo);
            }
        } else {
            out.extend(self.cells.iter().map(|t| t.index()));
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Mosaic> {
        let bad = |m: &str| Error::parse(1, 1, format!("bad encoding: {m}"));
        if bytes.len() < 2 {
            return Err(bad("missing header"));
        }
        let n = u16::from_be_bytes([bytes[0], bytes[1]]) as usize;
        let body = &bytes[2..];
        let raw: Vec<u8> = if n <= 16 {
            if body.len() != (n * n).div_ceil(2) {
                return Err(bad("length"));
            }
            body.iter().flat_map(|b| [b >> 4, b & 15]).take(n * n).collect()
        } else {
            if body.len() != n * n {
                return Err(bad("length"));
            }
            body.to_vec()
        };
        let cells = raw
            .into_iter()
            .map(|v| Tile::new(v).ok_or_else(|| bad("tile index")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mosaic { n, cells })
    }

    /// A 128-bit key for mosaics with at most 32 cells, ordered like the
    /// encoding.
    pub fn small_key(&self) -> Option<u128> {
        (self.cells.len() <= 32).then(|| {
            self.cells
                .iter()
                .enumerate()
                .fold(0u128, |acc, (k, t)| acc | (t.index() as u128) << (4 * (31 - k)))
        })
    }

    /// Inverse of [`Mosaic::small_key`].
    pub fn from_small_key(n: usize, key: u128) -> Option<Mosaic> {
        if n * n > 32 {
            return None;
        }
        let cells = (0..n * n)
            .map(|k| Tile::new(((key >> (4 * (31 - k))) & 15) as u8))
            .collect::<Option<Vec<_>>>()?;
        Some(Mosaic { n, cells })
    }

    /// Rows joined by `;`, e.g. `2 1;3 4`.
    pub fn to_row_string(&self) -> String {
        self.rows()
            .map(|r| r.iter().map(|t| t.index().to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse_row_string(s: &str) -> Result<Mosaic> {
        let rows = s
            .split(';')
            .enumerate()
            .map(|(r, row)| parse_row(row, r + 1))
            .collect::<Result<Vec<_>>>()?;
        Mosaic::from_rows(&rows)
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|t| t.index().to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Mosaic> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty input"))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, 1, format!("expected side length, found `{}`", header.trim())))?;
        if n == 0 {
            return Err(Error::parse(1, 1, "side length must be positive"));
        }
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (idx, line) = lines
                .next()
                .ok_or_else(|| Error::parse(rows.len() + 2, 1, format!("expected {n} rows, found {}", rows.len())))?;
            let row = parse_row(line, idx + 1)?;
            if row.len() != n {
                return Err(Error::parse(
                    idx + 1,
                    line.len() + 1,
                    format!("expected {n} tiles, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if let Some((idx, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(
                idx + 1,
                1,
                format!("unexpected trailing content `{}`", extra.trim()),
            ));
        }
        Mosaic::from_rows(&rows)
    }

    pub fn render_ascii(&self) -> String {
        let mut s = String::new();
        for row in self.rows() {
            s.extend(row.iter().map(|t| glyph(*t)));
            s.push('\n');
        }
        s
    }
}

fn parse_row(line: &str, line_no: usize) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        if !tok.is_empty() {
            let v: u8 = tok
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, col, format!("invalid tile `{tok}`")))?;
            if v > 10 {
                return Err(Error::parse(line_no, col, format!("tile index {v} out of range")));
            }
            out.push(v);
        }
        col += tok.len() + 1;
    }
    Ok(out)
}

/// One glyph per tile.
pub const GLYPHS: [char; 11] = ['·', '┐', '┌', '└', '┘', '─', '│', '╱', '╲', '┿', '╂'];

pub fn glyph(t: Tile) -> char {
    GLYPHS[t.index() as usize]
}

impl fmt::Display for Mosaic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for Mosaic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mosaic> {
        Mosaic::parse(s)
    }
}

/// A mosaic certified to be suitably connected.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KnotMosaic(Mosaic);

impl KnotMosaic {
    pub fn new(m: Mosaic) -> std::result::Result<KnotMosaic, Violation> {
        match m.first_violation() {
            None => Ok(KnotMosaic(m)),
            Some(v) => Err(v),
        }
    }

    pub fn mosaic(&self) -> &Mosaic {
        &self.0
    }

    pub fn into_inner(self) -> Mosaic {
        self.0
    }

    pub fn inject(&self) -> KnotMosaic {
        KnotMosaic(self.0.inject())
    }
}

impl std::ops::Deref for KnotMosaic {
    type Target = Mosaic;

    fn deref(&self) -> &Mosaic {
        &self.0
    }
}

impl TryFrom<Mosaic> for KnotMosaic {
    type Error = Error;

    fn try_from(m: Mosaic) -> Result<KnotMosaic> {
        KnotMosaic::new(m).map_err(|v| Error::Bounds(format!("not suitably connected at {v}")))
    }
}

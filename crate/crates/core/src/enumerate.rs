//! Exhaustive generation of knot mosaics.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::tiles::{Edge, Tile};

/// Tiles admissible at a cell given whether it must connect north and west
/// and whether its south/east edges lie on the boundary. Ascending order.
fn candidates(north: bool, west: bool, south_open: bool, east_open: bool) -> impl Iterator<Item = Tile> {
    Tile::all().filter(move |t| {
        t.has(Edge::N) == north
            && t.has(Edge::W) == west
            && (south_open || !t.has(Edge::S))
            && (east_open || !t.has(Edge::E))
    })
}

struct CandidateTable {
    // indexed by north | west << 1 | south_open << 2 | east_open << 3
    lists: Vec<Vec<Tile>>,
}

impl CandidateTable {
    fn new() -> Self {
        let lists = (0..16)
            .map(|k| candidates(k & 1 != 0, k & 2 != 0, k & 4 != 0, k & 8 != 0).collect())
            .collect();
        CandidateTable { lists }
    }

    fn get(&self, north: bool, west: bool, south_open: bool, east_open: bool) -> &[Tile] {
        let k = north as usize | (west as usize) << 1 | (south_open as usize) << 2 | (east_open as usize) << 3;
        &self.lists[k]
    }
}

/// Streams every knot `n`-mosaic exactly once, in increasing encoding
/// order, by row-major backtracking.
pub struct KnotMosaics {
    n: usize,
    table: CandidateTable,
    cells: Vec<Tile>,
    // next candidate index to try at each filled position
    cursor: Vec<usize>,
    fixed: usize,
    pos: usize,
    done: bool,
}

impl KnotMosaics {
    pub fn new(n: usize) -> KnotMosaics {
        KnotMosaics::with_prefix(n, &[])
    }

    /// Only mosaics whose first cells (row-major) equal `prefix`. The prefix
    /// must itself be locally admissible.
    pub fn with_prefix(n: usize, prefix: &[Tile]) -> KnotMosaics {
        let mut it = KnotMosaics {
            n,
            table: CandidateTable::new(),
            cells: vec![Tile::BLANK; n * n],
            cursor: vec![0; n * n],
            fixed: prefix.len(),
            pos: prefix.len(),
            done: n == 0 || prefix.len() > n * n,
        };
        it.cells[..prefix.len().min(n * n)].copy_from_slice(&prefix[..prefix.len().min(n * n)]);
        it
    }

    fn options(&self, p: usize) -> &[Tile] {
        let (i, j) = (p / self.n, p % self.n);
        let north = i > 0 && self.cells[p - self.n].has(Edge::S);
        let west = j > 0 && self.cells[p - 1].has(Edge::E);
        self.table.get(north, west, i + 1 < self.n, j + 1 < self.n)
    }
}

impl Iterator for KnotMosaics {
    type Item = Mosaic;

    fn next(&mut self) -> Option<Mosaic> {
        let total = self.n * self.n;
        if self.done {
            return None;
        }
        loop {
            if self.pos == total {
                let out = Mosaic::from_cells(self.n, self.cells.clone()).expect("n*n cells");
                // resume by backing up into the last free cell
                if self.pos == self.fixed {
                    self.done = true;
                } else {
                    self.pos -= 1;
                }
                return Some(out);
            }
            let p = self.pos;
            let c = self.cursor[p];
            let opts = self.options(p);
            if c < opts.len() {
                self.cells[p] = opts[c];
                self.cursor[p] = c + 1;
                self.pos += 1;
                if self.pos < total {
                    self.cursor[self.pos] = 0;
                }
            } else {
                self.cursor[p] = 0;
                if p == self.fixed {
                    self.done = true;
                    return None;
                }
                self.pos -= 1;
            }
        }
    }
}

pub fn enumerate_knot_mosaics(n: usize) -> KnotMosaics {
    KnotMosaics::new(n)
}

/// Admissible first rows, in increasing order.
fn first_rows(n: usize) -> Vec<Vec<Tile>> {
    let table = CandidateTable::new();
    let mut out = Vec::new();
    let mut row = Vec::with_capacity(n);
    fn rec(n: usize, table: &CandidateTable, row: &mut Vec<Tile>, out: &mut Vec<Vec<Tile>>) {
        let j = row.len();
        if j == n {
            out.push(row.clone());
            return;
        }
        let west = j > 0 && row[j - 1].has(Edge::E);
        for &t in table.get(false, west, n > 1, j + 1 < n) {
            row.push(t);
            rec(n, table, row, out);
            row.pop();
        }
    }
    rec(n, &table, &mut row, &mut out);
    out
}

/// Same output as [`enumerate_knot_mosaics`], computed in shards keyed by the
/// first row and merged in encoding order.
pub fn enumerate_parallel(n: usize, jobs: Option<usize>) -> Vec<Mosaic> {
    if n == 0 {
        return Vec::new();
    }
    let shards = first_rows(n);
    let run = || {
        shards
            .par_iter()
            .map(|prefix| KnotMosaics::with_prefix(n, prefix).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    let parts = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };
    parts.into_iter().flatten().collect()
}

/// Number of knot `n`-mosaics, by streaming.
pub fn count_knot_mosaics(n: usize) -> usize {
    KnotMosaics::new(n).count()
}

/// Fills cells column by column instead; returned sorted. Used to certify
/// the row-major stream.
pub fn enumerate_column_major(n: usize) -> Vec<Mosaic> {
    fn rec(n: usize, k: usize, cells: &mut Vec<Tile>, out: &mut Vec<Mosaic>) {
        if k == n * n {
            out.push(Mosaic::from_cells(n, cells.clone()).expect("n*n cells"));
            return;
        }
        let (i, j) = (k % n, k / n);
        let north = i > 0 && cells[(i - 1) * n + j].has(Edge::S);
        let west = j > 0 && cells[i * n + j - 1].has(Edge::E);
        for t in candidates(north, west, i + 1 < n, j + 1 < n) {
            cells[i * n + j] = t;
            rec(n, k + 1, cells, out);
        }
        cells[i * n + j] = Tile::BLANK;
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, 0, &mut vec![Tile::BLANK; n * n], &mut out);
    }
    out.sort();
    out
}

/// Every interior-consistent `k`-block exposing exactly `profile` (in
/// [`Mosaic::boundary_profile`] order), in increasing order.
pub fn blocks_with_boundary(k: usize, profile: &[bool]) -> Result<Vec<Mosaic>> {
    if k == 0 || profile.len() != 4 * k {
        return Err(Error::Bounds(format!("a {k}-block has {} boundary points", 4 * k)));
    }
    let fixed = |i: usize, j: usize, e: Edge| match e {
        Edge::N if i == 0 => Some(profile[j]),
        Edge::E if j == k - 1 => Some(profile[k + i]),
        Edge::S if i == k - 1 => Some(profile[2 * k + j]),
        Edge::W if j == 0 => Some(profile[3 * k + i]),
        _ => None,
    };
    fn rec(
        p: usize,
        k: usize,
        cells: &mut Vec<Tile>,
        out: &mut Vec<Mosaic>,
        fixed: &dyn Fn(usize, usize, Edge) -> Option<bool>,
    ) {
        if p == k * k {
            out.push(Mosaic::from_cells(k, cells.clone()).expect("k*k cells"));
            return;
        }
        let (i, j) = (p / k, p % k);
        for t in Tile::all() {
            let ok = Edge::ALL.iter().all(|&e| fixed(i, j, e).is_none_or(|b| t.has(e) == b))
                && (i == 0 || cells[p - k].has(Edge::S) == t.has(Edge::N))
                && (j == 0 || cells[p - 1].has(Edge::E) == t.has(Edge::W));
            if ok {
                cells[p] = t;
                rec(p + 1, k, cells, out, fixed);
            }
        }
    }
    let mut out = Vec::new();
    rec(0, k, &mut vec![Tile::BLANK; k * k], &mut out, &fixed);
    Ok(out)
}

/// Filters all `11^(n²)` fillings through the suitable-connectedness check.
pub fn brute_force_count(n: usize) -> Result<usize> {
    if n == 0 || n > 2 {
        return Err(Error::Capacity(format!("brute force limited to n <= 2, got {n}")));
    }
    let cells = n * n;
    let total = 11usize.pow(cells as u32);
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let tiles: Vec<Tile> = (0..cells)
            .map(|_| {
                let t = Tile::of((c % 11) as u8);
                c /= 11;
                t
            })
            .collect();
        if Mosaic::from_cells(n, tiles).expect("sized").is_suitably_connected() {
            count += 1;
        }
    }
    Ok(count)
}

//! The five-fold zoom: every tile is replaced by a 5x5 block drawing the same
//! strands, with the two-arc tiles pulled apart and `T9` rerouted through a
//! central `T10`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::mosaic::Mosaic;
use crate::tiles::{Edge, Tile};

const BLOCKS: &str = include_str!("../data/zoom_blocks.txt");

pub const RATIO: usize = 5;

/// Parses the block table: `T<k>` followed by a 5-block in mosaic text
/// format, for every tile in order.
pub fn parse_blocks(text: &str) -> Result<Vec<Mosaic>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < lines.len() {
        let (line_no, head) = lines[pos];
        let expected = format!("T{}", out.len());
        if head != expected {
            return Err(Error::parse(
                line_no,
                1,
                format!("expected `{expected}`, found `{head}`"),
            ));
        }
        let chunk: Vec<&str> = lines.iter().skip(pos + 1).take(RATIO + 1).map(|(_, l)| *l).collect();
        if chunk.len() != RATIO + 1 {
            return Err(Error::parse(line_no, 1, format!("truncated block {head}")));
        }
        let block = Mosaic::parse(&chunk.join("\n"))?;
        if block.side() != RATIO {
            return Err(Error::parse(
                line_no + 1,
                1,
                format!("block {head} is not {RATIO}x{RATIO}"),
            ));
        }
        out.push(block);
        pos += RATIO + 2;
    }
    if out.len() != 11 {
        return Err(Error::parse(1, 1, format!("expected 11 blocks, found {}", out.len())));
    }
    Ok(out)
}

fn blocks() -> &'static [Mosaic] {
    static TABLE: OnceLock<Vec<Mosaic>> = OnceLock::new();
    TABLE.get_or_init(|| parse_blocks(BLOCKS).expect("bundled zoom table parses"))
}

pub fn zoom_block(t: Tile) -> &'static Mosaic {
    &blocks()[t.index() as usize]
}

/// Replaces cell `(i, j)` by the block for its tile at `(5i, 5j)`. A crossing
/// at `(i, j)` lands at `(5i + 2, 5j + 2)`.
pub fn zoom5(m: &Mosaic) -> Mosaic {
    let n = m.side();
    let mut out = Mosaic::blank(RATIO * n);
    for i in 0..n {
        for j in 0..n {
            out.replace_block(zoom_block(m.get(i, j)), RATIO * i, RATIO * j)
                .expect("block fits");
        }
    }
    out
}

/// The 5x5 block with `t` at its center and straight spokes running from
/// each of its edges out to the block boundary.
pub fn centered_block(t: Tile) -> Mosaic {
    let mut out = Mosaic::blank(RATIO);
    let mid = RATIO / 2;
    out.set(mid, mid, t);
    for k in 0..mid {
        for (e, (i, j)) in [
            (Edge::N, (k, mid)),
            (Edge::S, (RATIO - 1 - k, mid)),
            (Edge::W, (mid, k)),
            (Edge::E, (mid, RATIO - 1 - k)),
        ] {
            if t.has(e) {
                out.set(i, j, Tile::of(if e.is_vertical() { 6 } else { 5 }));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::forgetful;

    fn m(s: &str) -> Mosaic {
        Mosaic::parse_row_string(s).unwrap()
    }

    fn fixture(name: &str) -> Mosaic {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        Mosaic::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn table_entries() {
        assert!(zoom_block(Tile::BLANK).is_blank());
        assert_eq!(
            *zoom_block(Tile::of(6)),
            m("0 0 6 0 0;0 0 6 0 0;0 0 6 0 0;0 0 6 0 0;0 0 6 0 0")
        );
        assert_eq!(
            *zoom_block(Tile::of(5)),
            m("0 0 0 0 0;0 0 0 0 0;5 5 5 5 5;0 0 0 0 0;0 0 0 0 0")
        );
        assert_eq!(
            *zoom_block(Tile::of(1)),
            m("0 0 0 0 0;0 0 0 0 0;5 5 1 0 0;0 0 6 0 0;0 0 6 0 0")
        );
        assert_eq!(
            *zoom_block(Tile::of(10)),
            m("0 0 6 0 0;0 0 6 0 0;5 5 10 5 5;0 0 6 0 0;0 0 6 0 0")
        );
        assert_eq!(
            *zoom_block(Tile::of(9)),
            m("0 0 3 1 0;2 5 1 6 0;4 2 10 4 2;0 6 3 5 4;0 3 1 0 0")
        );
        assert!(parse_blocks("T1\n5\n0 0 0 0 0\n").is_err());
    }

    #[test]
    fn block_boundaries_match_tiles() {
        for t in Tile::all() {
            let b = zoom_block(t);
            assert!(b.is_interior_consistent(), "T{}", t.index());
            let bp = b.boundary_profile();
            // only the middle point of each side may be used
            for (k, &used) in bp.iter().enumerate() {
                let side = Edge::from_index(k / RATIO);
                let expect = k % RATIO == RATIO / 2 && t.has(side);
                assert_eq!(used, expect, "T{} point {k}", t.index());
            }
            // the strands pair the same sides as the tile does
            let c = crate::invariants::boundary_connectivity(b).unwrap();
            assert_eq!(c.closed_loops, 0);
            let mut pairs: Vec<(usize, usize)> = c.pairs.iter().map(|&(p, q)| (p / RATIO, q / RATIO)).collect();
            pairs.sort_unstable();
            let mut want: Vec<(usize, usize)> = t
                .strands()
                .iter()
                .map(|[x, y]| (x.index().min(y.index()), x.index().max(y.index())))
                .collect();
            want.sort_unstable();
            assert_eq!(pairs, want, "T{}", t.index());
            assert_eq!(b.crossing_count(), t.is_crossing() as usize);
        }
    }

    #[test]
    fn two_arc_blocks_have_no_two_arc_tiles() {
        for t in [7, 8] {
            assert!(zoom_block(Tile::of(t))
                .cells()
                .iter()
                .all(|c| !matches!(c.index(), 7..=9)));
        }
    }

    #[test]
    fn centered_blocks() {
        for t in [7, 8, 9] {
            let c = centered_block(Tile::of(t));
            assert_eq!(c, fixture(&format!("zoom/centered_t{t}.mosaic")));
            assert_eq!(c.boundary_profile(), zoom_block(Tile::of(t)).boundary_profile());
        }
        assert_eq!(centered_block(Tile::of(10)), *zoom_block(Tile::of(10)));
        assert!(centered_block(Tile::BLANK).is_blank());
    }

    #[test]
    fn worked_example_is_bit_exact() {
        let z = zoom5(&fixture("zoom/input.mosaic"));
        assert_eq!(z.side(), 20);
        assert_eq!(z, fixture("zoom/output.mosaic"));
        assert_eq!(zoom5(&Mosaic::blank(1)), Mosaic::blank(5));
    }

    #[test]
    fn zoom_keeps_knot_mosaics_and_their_diagrams() {
        for k in crate::enumerate::enumerate_knot_mosaics(3) {
            let z = zoom5(&k);
            assert!(z.is_suitably_connected());
            assert!(z.cells().iter().all(|c| !matches!(c.index(), 7..=9)));
        }
        for k in crate::orbits::compute_orbits(4).unwrap().classes() {
            let a = forgetful(&k.representative).unwrap();
            let b = forgetful(&zoom5(&k.representative)).unwrap();
            assert!(a.same_diagram(&b), "{}", k.representative.to_row_string());
            assert_eq!(
                crate::invariants::fingerprint(&zoom5(&k.representative)).unwrap(),
                crate::invariants::fingerprint(&k.representative).unwrap()
            );
        }
    }
}

//! The eleven unoriented tiles and their symmetry action.
//!
//! A tile is drawn on a unit square. Curves end at edge midpoints
//! (connection points) and are paired into strands. `T9` and `T10` are the
//! two crossing tiles; `T10` has its vertical strand on top and `T9` its
//! horizontal strand.

use std::fmt;

/// An edge of a unit square, in clockwise order starting at the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edge {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::N, Edge::E, Edge::S, Edge::W];

    pub fn from_index(i: usize) -> Edge {
        Edge::ALL[i & 3]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opposite(self) -> Edge {
        Edge::from_index(self.index() + 2)
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Edge::N | Edge::S)
    }

    /// Unit step (d_row, d_col) leaving the square through this edge.
    pub fn step(self) -> (isize, isize) {
        match self {
            Edge::N => (-1, 0),
            Edge::E => (0, 1),
            Edge::S => (1, 0),
            Edge::W => (0, -1),
        }
    }

    /// Direction vector with y pointing up, as seen by the reader.
    pub fn direction(self) -> (i32, i32) {
        match self {
            Edge::N => (0, 1),
            Edge::E => (1, 0),
            Edge::S => (0, -1),
            Edge::W => (-1, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Edge::N => 'N',
            Edge::E => 'E',
            Edge::S => 'S',
            Edge::W => 'W',
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A set of edges stored as a 4-bit mask (bit `e as usize`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EdgeSet(pub u8);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn contains(self, e: Edge) -> bool {
        self.0 & (1 << e.index()) != 0
    }

    pub fn with(self, e: Edge) -> EdgeSet {
        EdgeSet(self.0 | (1 << e.index()))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Edge> {
        Edge::ALL.into_iter().filter(move |e| self.contains(*e))
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        iter.into_iter().fold(EdgeSet::EMPTY, EdgeSet::with)
    }
}

/// One of the eleven tile symbols `T0..T10`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Tile(u8);

use Edge::{E, N, S, W};

// Strand tables. Each strand is a pair of edges.
const STRANDS: [&[[Edge; 2]]; 11] = [
    &[],
    &[[S, W]],
    &[[E, S]],
    &[[N, E]],
    &[[N, W]],
    &[[E, W]],
    &[[N, S]],
    &[[N, E], [S, W]],
    &[[N, W], [E, S]],
    &[[N, S], [E, W]],
    &[[N, S], [E, W]],
];

// partner[tile][edge] = edge reached by following the strand, 4 = none.
const fn build_partners() -> [[u8; 4]; 11] {
    let mut table = [[4u8; 4]; 11];
    let mut t = 0;
    while t < 11 {
        let strands = STRANDS[t];
        let mut s = 0;
        while s < strands.len() {
            let a = strands[s][0] as usize;
            let b = strands[s][1] as usize;
            table[t][a] = b as u8;
            table[t][b] = a as u8;
            s += 1;
        }
        t += 1;
    }
    table
}

const PARTNERS: [[u8; 4]; 11] = build_partners();

const fn build_masks() -> [u8; 11] {
    let mut masks = [0u8; 11];
    let mut t = 0;
    while t < 11 {
        let mut e = 0;
        while e < 4 {
            if PARTNERS[t][e] != 4 {
                masks[t] |= 1 << e;
            }
            e += 1;
        }
        t += 1;
    }
    masks
}

const MASKS: [u8; 11] = build_masks();

impl Tile {
    pub const COUNT: usize = 11;
    pub const BLANK: Tile = Tile(0);

    pub fn new(index: u8) -> Option<Tile> {
        (index < 11).then_some(Tile(index))
    }

    /// Panics if `index > 10`.
    pub const fn of(index: u8) -> Tile {
        assert!(index < 11, "tile index out of range");
        Tile(index)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Tile> {
        (0..11).map(Tile)
    }

    pub fn edges(self) -> EdgeSet {
        EdgeSet(MASKS[self.0 as usize])
    }

    pub fn has(self, e: Edge) -> bool {
        MASKS[self.0 as usize] & (1 << e.index()) != 0
    }

    /// Follows the strand entering at `e`.
    pub fn partner(self, e: Edge) -> Option<Edge> {
        let p = PARTNERS[self.0 as usize][e.index()];
        (p != 4).then(|| Edge::from_index(p as usize))
    }

    pub fn is_crossing(self) -> bool {
        self.0 == 9 || self.0 == 10
    }

    pub fn is_blank(self) -> bool {
        self.0 == 0
    }

    /// For a crossing tile, whether the strand through `e` passes over.
    pub fn is_over(self, e: Edge) -> bool {
        match self.0 {
            9 => !e.is_vertical(),
            10 => e.is_vertical(),
            _ => false,
        }
    }

    pub fn strands(self) -> &'static [[Edge; 2]] {
        STRANDS[self.0 as usize]
    }

    pub fn connection_profile(self) -> ConnectionProfile {
        let over = match self.0 {
            9 => Some([E, W]),
            10 => Some([N, S]),
            _ => None,
        };
        ConnectionProfile::new(self.strands().iter().copied(), over)
    }

    /// The unique tile carrying `profile`, if any.
    pub fn from_profile(profile: &ConnectionProfile) -> Option<Tile> {
        Tile::all().find(|t| &t.connection_profile() == profile)
    }

    pub fn transform(self, g: D4Element) -> Tile {
        let image = self.connection_profile().transform(g);
        Tile::from_profile(&image).expect("tile alphabet is closed under the dihedral action")
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

/// Connection points of a tile, their pairing into strands, and which strand
/// is on top for the crossing tiles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionProfile {
    pub endpoints: EdgeSet,
    pub pairing: Vec<[Edge; 2]>,
    pub over_strand: Option<[Edge; 2]>,
}

fn sorted_pair([a, b]: [Edge; 2]) -> [Edge; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

impl ConnectionProfile {
    pub fn new(strands: impl IntoIterator<Item = [Edge; 2]>, over: Option<[Edge; 2]>) -> ConnectionProfile {
        let mut pairing: Vec<[Edge; 2]> = strands.into_iter().map(sorted_pair).collect();
        pairing.sort();
        let endpoints = pairing.iter().flatten().copied().collect();
        ConnectionProfile {
            endpoints,
            pairing,
            over_strand: over.map(sorted_pair),
        }
    }

    pub fn transform(&self, g: D4Element) -> ConnectionProfile {
        let map = |[a, b]: [Edge; 2]| [g.apply_edge(a), g.apply_edge(b)];
        ConnectionProfile::new(self.pairing.iter().copied().map(map), self.over_strand.map(map))
    }
}

/// An element of the symmetry group of the square: first reflect across the
/// vertical axis (if `reflected`), then rotate `rotation` quarter turns
/// counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct D4Element {
    pub rotation: u8,
    pub reflected: bool,
}

impl D4Element {
    pub const IDENTITY: D4Element = D4Element {
        rotation: 0,
        reflected: false,
    };

    pub fn new(rotation: u8, reflected: bool) -> D4Element {
        D4Element {
            rotation: rotation % 4,
            reflected,
        }
    }

    pub fn rot90() -> D4Element {
        D4Element::new(1, false)
    }

    pub fn mirror() -> D4Element {
        D4Element::new(0, true)
    }

    /// All eight elements, identity first.
    pub fn all() -> [D4Element; 8] {
        let mut out = [D4Element::IDENTITY; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = D4Element::new((k % 4) as u8, k >= 4);
        }
        out
    }

    pub fn is_identity(self) -> bool {
        self == D4Element::IDENTITY
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: D4Element) -> D4Element {
        let r = if self.reflected {
            self.rotation + 4 - other.rotation
        } else {
            self.rotation + other.rotation
        };
        D4Element::new(r, self.reflected ^ other.reflected)
    }

    pub fn inverse(self) -> D4Element {
        if self.reflected {
            self
        } else {
            D4Element::new(4 - self.rotation, false)
        }
    }

    pub fn apply_edge(self, e: Edge) -> Edge {
        let mut i = e.index();
        if self.reflected && !e.is_vertical() {
            i = (i + 2) % 4;
        }
        Edge::from_index(i + 3 * self.rotation as usize)
    }

    /// Where cell `(i, j)` of a `k × k` block lands.
    pub fn apply_cell(self, k: usize, (mut i, mut j): (usize, usize)) -> (usize, usize) {
        if self.reflected {
            j = k - 1 - j;
        }
        for _ in 0..self.rotation {
            (i, j) = (k - 1 - j, i);
        }
        (i, j)
    }

    /// Short label: `""` for the identity, otherwise e.g. `r1`, `m`, `r3m`.
    pub fn suffix(self) -> String {
        let mut s = String::new();
        if self.rotation != 0 {
            s.push_str(&format!("r{}", self.rotation));
        }
        if self.reflected {
            s.push('m');
        }
        s
    }
}

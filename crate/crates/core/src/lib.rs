//! Knot mosaics: tiles, the ambient move group, grid diagrams, the five-fold
//! zoom, and link-invariant oracles.

pub mod enumerate;
pub mod error;
pub mod grid;
pub mod invariants;
pub mod mosaic;
pub mod moves;
pub mod orbits;
pub mod poly;
pub mod search;
pub mod tiles;
pub mod union_find;
pub mod zoom;

pub use error::{Error, Result};
pub use invariants::{fingerprint, forgetful, Fingerprint, PdCode};
pub use mosaic::{KnotMosaic, Mosaic, Violation};
pub use moves::{Catalog, MoveApplication, MovePattern};
pub use poly::LaurentPolynomial;
pub use tiles::{ConnectionProfile, D4Element, Edge, EdgeSet, Tile};

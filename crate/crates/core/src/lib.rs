//! Square-tiled surfaces, dessins d'enfants and the Schwarz-Christoffel
//! coordinate maps that move between their triangle and square pictures.
//!
//! A map on a compact oriented surface is stored as a pair of permutations
//! of darts (`rho0`, `rho1`). On top of that the crate provides
//!
//! * [`cartography`]: cells, Euler characteristic, genus, isomorphism;
//! * [`metric`]: flat structures given by side lengths and corner angles;
//! * [`tiling`]: square tilings, the 2x2 refinement and the diagonal
//!   subdivision into a black/white tricolored triangulation;
//! * [`belyi`]: passports, Riemann-Hurwitz and the rational function
//!   `4/27 (x^2 - x + 1)^3 / (x^2 (1 - x)^2)`;
//! * [`csmap`]: the coordinate maps themselves, their inverses and the
//!   triangle to square transform;
//! * [`cli`]: the document format and the `squaretile` command.
//!
//! See the `examples/` directory for one runnable program per topic.

pub mod belyi;
pub mod cartography;
pub mod cli;
pub mod csmap;
pub mod fixtures;
pub mod metric;
pub mod tiling;

pub use cartography::{CellIndex, CellKind, Dessin, DessinError, Generator};
pub use csmap::{CsMap, CsMapSpec, QuadratureConfig};
pub use metric::MetricData;
pub use tiling::{EdgeColor, Shade, TricoloredDessin, VertexLabel};

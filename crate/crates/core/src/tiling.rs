//! Square tilings and their diagonal subdivision into tricolored dessins.
//!
//! Cutting every square along both diagonals gives four right isosceles
//! triangles per square. With square corners labelled `zero`/`one` by a
//! bipartition of the corner graph and every centre labelled `infinity`,
//! the triangles form a tricolored dessin: each triangle is one sheet of
//! the Belyi function over a half-plane.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::cartography::{Cells, Dessin};

/// Colour of an edge of a tricolored dessin, named by the segment of the
/// real line it lies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    /// over `[0, 1]`
    Blue,
    /// over `[1, inf]`
    Green,
    /// over `[-inf, 0]`
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shade {
    White,
    Black,
}

impl Shade {
    pub fn flipped(self) -> Shade {
        match self {
            Shade::White => Shade::Black,
            Shade::Black => Shade::White,
        }
    }
}

/// Critical value a vertex lies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Zero,
    One,
    Infinity,
}

impl VertexLabel {
    /// Position in the cyclic order `zero -> one -> infinity`.
    fn cyclic_index(self) -> usize {
        match self {
            VertexLabel::Zero => 0,
            VertexLabel::One => 1,
            VertexLabel::Infinity => 2,
        }
    }
}

/// The canonical colour of an edge joining two distinct labels.
pub fn color_between(a: VertexLabel, b: VertexLabel) -> Option<EdgeColor> {
    use VertexLabel::*;
    match (a.min(b), a.max(b)) {
        (Zero, One) => Some(EdgeColor::Blue),
        (One, Infinity) => Some(EdgeColor::Green),
        (Zero, Infinity) => Some(EdgeColor::Red),
        _ => None,
    }
}

macro_rules! impl_name {
    ($ty:ty { $($variant:ident => $name:literal),* $(,)? }) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self { $(<$ty>::$variant => $name),* }
            }

            pub fn from_name(s: &str) -> Option<Self> {
                match s { $($name => Some(<$ty>::$variant),)* _ => None }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

impl_name!(EdgeColor { Blue => "blue", Green => "green", Red => "red" });
impl_name!(Shade { White => "white", Black => "black" });
impl_name!(VertexLabel { Zero => "zero", One => "one", Infinity => "infinity" });

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("not a square tiling: face {face} has {size} sides")]
    NotSquareTiling { face: usize, size: usize },
    #[error("corner graph is not bipartite; odd closed walk through vertices {witness:?}")]
    NonBipartite { witness: Vec<usize> },
    #[error("inconsistent corner labels: vertices {a} and {b} are adjacent and both {label}")]
    InconsistentLabels {
        a: usize,
        b: usize,
        label: VertexLabel,
    },
    #[error("expected {expected} corner labels, got {len}")]
    LabelCount { len: usize, expected: usize },
    #[error("corner label {label} is not zero or one (vertex {vertex})")]
    BadCornerLabel { vertex: usize, label: VertexLabel },
    #[error("{what}: expected {expected} entries, got {len}")]
    FieldLength {
        what: &'static str,
        len: usize,
        expected: usize,
    },
}

/// A triangulated dessin with edge colours, face shades and vertex labels.
///
/// All three maps are indexed by the orbit ids of `base` (see
/// [`Cells`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TricoloredDessin {
    pub base: Dessin,
    pub edge_color: Vec<EdgeColor>,
    pub face_shade: Vec<Shade>,
    pub vertex_label: Vec<VertexLabel>,
}

/// A broken tricolored-dessin invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TricolorViolation {
    /// The colour, shade or label vectors do not match the orbit counts.
    FieldLengths,
    /// Face is not a triangle.
    FaceNotTriangle { face: usize, size: usize },
    /// (0): a vertex sees a number of colours other than two.
    VertexColorCount { vertex: usize, colors: usize },
    /// (1): both ends of an edge are the same vertex.
    EdgeEndpoints { edge: usize },
    /// (2): a triangle repeats a colour or an edge.
    FaceColors { face: usize },
    /// Faces on the two sides of an edge have the same shade.
    Checkerboard { edge: usize },
    /// The edge's colour disagrees with the label pair of its ends.
    LabelMismatch { edge: usize },
}

impl fmt::Display for TricolorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FieldLengths => write!(f, "colors block does not match the orbit counts"),
            Self::FaceNotTriangle { face, size } => {
                write!(f, "face {face} has {size} sides, expected 3")
            }
            Self::VertexColorCount { vertex, colors } => write!(
                f,
                "(0) vertex {vertex} is incident to {colors} colors, expected 2"
            ),
            Self::EdgeEndpoints { edge } => {
                write!(f, "(1) edge {edge} does not have two distinct vertices")
            }
            Self::FaceColors { face } => {
                write!(
                    f,
                    "(2) face {face} does not have three differently colored edges"
                )
            }
            Self::Checkerboard { edge } => {
                write!(f, "faces on both sides of edge {edge} have the same shade")
            }
            Self::LabelMismatch { edge } => {
                write!(f, "edge {edge} color does not match its vertex labels")
            }
        }
    }
}

impl TricoloredDessin {
    pub fn new(
        base: Dessin,
        edge_color: Vec<EdgeColor>,
        face_shade: Vec<Shade>,
        vertex_label: Vec<VertexLabel>,
    ) -> Result<Self, TilingError> {
        let (v, e, f) = base.cell_counts();
        for (what, len, expected) in [
            ("edge colors", edge_color.len(), e),
            ("face shades", face_shade.len(), f),
            ("vertex labels", vertex_label.len(), v),
        ] {
            if len != expected {
                return Err(TilingError::FieldLength {
                    what,
                    len,
                    expected,
                });
            }
        }
        Ok(TricoloredDessin {
            base,
            edge_color,
            face_shade,
            vertex_label,
        })
    }

    /// Derives colours and shades from a label on each dart's origin.
    ///
    /// Edges get the canonical colour of their label pair; a triangle is
    /// white when its counterclockwise boundary reads `zero, one, infinity`.
    pub fn from_origin_labels(base: Dessin, origin_label: &[VertexLabel]) -> Self {
        let vertices = base.vertices();
        let edges = base.edges();
        let faces = base.faces();
        let vertex_label = vertices
            .orbits()
            .iter()
            .map(|orbit| origin_label[orbit[0]])
            .collect();
        let edge_color = edges
            .orbits()
            .iter()
            .map(|orbit| {
                let (a, b) = (origin_label[orbit[0]], origin_label[orbit[1]]);
                color_between(a, b).unwrap_or(EdgeColor::Blue)
            })
            .collect();
        let face_shade = faces
            .orbits()
            .iter()
            .map(|orbit| {
                let first = origin_label[orbit[0]].cyclic_index();
                let second = origin_label[orbit[1 % orbit.len()]].cyclic_index();
                if second == (first + 1) % 3 {
                    Shade::White
                } else {
                    Shade::Black
                }
            })
            .collect();
        TricoloredDessin {
            base,
            edge_color,
            face_shade,
            vertex_label,
        }
    }

    pub fn cells(&self) -> (Cells, Cells, Cells) {
        (self.base.vertices(), self.base.edges(), self.base.faces())
    }

    /// Label of the origin of every dart.
    pub fn origin_labels(&self) -> Vec<VertexLabel> {
        let vertices = self.base.vertices();
        (0..self.base.n_darts())
            .map(|e| self.vertex_label[vertices.orbit_of(e)])
            .collect()
    }
}

/// Checks conditions (0)-(2), the checkerboard shading and the
/// colour/label compatibility. Empty means valid.
///
/// Compatibility accepts any bijection between colours and label pairs,
/// as long as each colour is used for a single pair of distinct labels.
pub fn validate_tricoloring(t: &TricoloredDessin) -> Vec<TricolorViolation> {
    let (vertices, edges, faces) = t.cells();
    let mut out = Vec::new();
    if t.edge_color.len() != edges.count()
        || t.face_shade.len() != faces.count()
        || t.vertex_label.len() != vertices.count()
    {
        out.push(TricolorViolation::FieldLengths);
        return out;
    }
    let edge_of = |e: usize| edges.orbit_of(e);

    for (face, orbit) in faces.orbits().iter().enumerate() {
        if orbit.len() != 3 {
            out.push(TricolorViolation::FaceNotTriangle {
                face,
                size: orbit.len(),
            });
        }
    }

    for (vertex, orbit) in vertices.orbits().iter().enumerate() {
        let mut colors: Vec<EdgeColor> = orbit.iter().map(|&e| t.edge_color[edge_of(e)]).collect();
        colors.sort();
        colors.dedup();
        if colors.len() != 2 {
            out.push(TricolorViolation::VertexColorCount {
                vertex,
                colors: colors.len(),
            });
        }
    }

    for (edge, orbit) in edges.orbits().iter().enumerate() {
        let (a, b) = (orbit[0], orbit[1]);
        if vertices.orbit_of(a) == vertices.orbit_of(b) {
            out.push(TricolorViolation::EdgeEndpoints { edge });
        }
    }

    for (face, orbit) in faces.orbits().iter().enumerate() {
        let mut ids: Vec<usize> = orbit.iter().map(|&e| edge_of(e)).collect();
        let mut colors: Vec<EdgeColor> = ids.iter().map(|&i| t.edge_color[i]).collect();
        ids.sort();
        ids.dedup();
        colors.sort();
        colors.dedup();
        if orbit.len() == 3 && (ids.len() != 3 || colors.len() != 3) {
            out.push(TricolorViolation::FaceColors { face });
        }
    }

    for (edge, orbit) in edges.orbits().iter().enumerate() {
        let (a, b) = (faces.orbit_of(orbit[0]), faces.orbit_of(orbit[1]));
        if t.face_shade[a] == t.face_shade[b] {
            out.push(TricolorViolation::Checkerboard { edge });
        }
    }

    // colour -> label pair must be a well-defined injective map onto
    // pairs of distinct labels
    let mut pair_of: [Option<(VertexLabel, VertexLabel)>; 3] = [None; 3];
    let color_slot = |c: EdgeColor| match c {
        EdgeColor::Blue => 0,
        EdgeColor::Green => 1,
        EdgeColor::Red => 2,
    };
    let mut first_use: [Option<usize>; 3] = [None; 3];
    for (edge, orbit) in edges.orbits().iter().enumerate() {
        let la = t.vertex_label[vertices.orbit_of(orbit[0])];
        let lb = t.vertex_label[vertices.orbit_of(orbit[1])];
        let pair = (la.min(lb), la.max(lb));
        let slot = color_slot(t.edge_color[edge]);
        if la == lb {
            out.push(TricolorViolation::LabelMismatch { edge });
            continue;
        }
        match pair_of[slot] {
            None => {
                pair_of[slot] = Some(pair);
                first_use[slot] = Some(edge);
            }
            Some(p) if p != pair => out.push(TricolorViolation::LabelMismatch { edge }),
            Some(_) => {}
        }
    }
    for i in 0..3 {
        for j in 0..i {
            if pair_of[i].is_some() && pair_of[i] == pair_of[j] {
                if let Some(edge) = first_use[i] {
                    out.push(TricolorViolation::LabelMismatch { edge });
                }
            }
        }
    }
    out
}

pub fn is_square_tiling(d: &Dessin) -> bool {
    d.faces().orbits().iter().all(|o| o.len() == 4)
}

fn require_square_tiling(d: &Dessin) -> Result<Cells, TilingError> {
    let faces = d.faces();
    if let Some((face, orbit)) = faces
        .orbits()
        .iter()
        .enumerate()
        .find(|(_, o)| o.len() != 4)
    {
        return Err(TilingError::NotSquareTiling {
            face,
            size: orbit.len(),
        });
    }
    Ok(faces)
}

/// Two-colours the corner graph (1-skeleton) by breadth-first search from
/// vertex 0, which gets `zero`.
pub fn corner_bipartition(d: &Dessin) -> Result<Vec<VertexLabel>, TilingError> {
    require_square_tiling(d)?;
    let vertices = d.vertices();
    let nv = vertices.count();
    let mut adjacency = vec![Vec::new(); nv];
    for e in 0..d.n_darts() {
        adjacency[vertices.orbit_of(e)].push(vertices.orbit_of(d.rho1()[e]));
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }

    let mut side: Vec<Option<bool>> = vec![None; nv];
    let mut parent = vec![usize::MAX; nv];
    let mut queue = VecDeque::new();
    for root in 0..nv {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].unwrap();
            for &w in &adjacency[v] {
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        parent[w] = v;
                        queue.push_back(w);
                    }
                    Some(sw) if sw == sv => {
                        return Err(TilingError::NonBipartite {
                            witness: odd_walk(&parent, v, w),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(side
        .into_iter()
        .map(|s| {
            if s == Some(true) {
                VertexLabel::One
            } else {
                VertexLabel::Zero
            }
        })
        .collect())
}

/// Closed walk `v .. lca .. w, v` through the BFS tree plus the edge `v w`.
fn odd_walk(parent: &[usize], v: usize, w: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    if v == w {
        return vec![v, v];
    }
    let pv = path_to_root(v);
    let pw = path_to_root(w);
    let lca = *pv.iter().find(|x| pw.contains(x)).expect("same BFS tree");
    let mut walk: Vec<usize> = pv.iter().copied().take_while(|&x| x != lca).collect();
    walk.push(lca);
    let back: Vec<usize> = pw.iter().copied().take_while(|&x| x != lca).collect();
    walk.extend(back.into_iter().rev());
    walk.push(v);
    walk
}

/// Position of every dart inside its square: `(face id, index along the
/// rho2 cycle)`.
fn square_positions(faces: &Cells, n: usize) -> Vec<(usize, usize)> {
    let mut pos = vec![(0, 0); n];
    for (f, orbit) in faces.orbits().iter().enumerate() {
        for (k, &e) in orbit.iter().enumerate() {
            pos[e] = (f, k);
        }
    }
    pos
}

/// Replaces each square by a 2x2 block of squares.
///
/// Sub-square `k` of a square sits at its corner `k` and owns four darts:
/// the first half of side `k`, the inner segment from the midpoint of
/// side `k` to the centre, the inner segment from the centre to the
/// midpoint of side `k - 1`, and the second half of side `k - 1`.
pub fn refine_2x2(d: &Dessin) -> Result<Dessin, TilingError> {
    let faces = require_square_tiling(d)?;
    let n = d.n_darts();
    let pos = square_positions(&faces, n);
    let dart = |f: usize, k: usize, j: usize| 16 * f + 4 * (k % 4) + j;
    let nf = faces.count();
    let mut rho1 = vec![0; 16 * nf];
    let mut rho2 = vec![0; 16 * nf];
    for f in 0..nf {
        for k in 0..4 {
            for j in 0..4 {
                rho2[dart(f, k, j)] = dart(f, k, (j + 1) % 4);
            }
            // inner segments
            rho1[dart(f, k, 1)] = dart(f, k + 1, 2);
            rho1[dart(f, k + 1, 2)] = dart(f, k, 1);
            // first half of side k meets the second half of its twin
            let (g, k2) = pos[d.rho1()[faces.orbit(f)[k]]];
            rho1[dart(f, k, 0)] = dart(g, k2 + 1, 3);
            rho1[dart(g, k2 + 1, 3)] = dart(f, k, 0);
        }
    }
    Ok(Dessin::from_faces(rho1, rho2).expect("refinement of a valid square tiling is valid"))
}

/// Cuts every square along its diagonals.
///
/// Triangle `k` of a square stands on side `k` and owns three darts: side
/// `k`, the half-diagonal from the end of side `k` to the centre, and the
/// half-diagonal from the centre back to the start of side `k`.
pub fn diagonal_subdivision(
    d: &Dessin,
    labels: &[VertexLabel],
) -> Result<TricoloredDessin, TilingError> {
    let faces = require_square_tiling(d)?;
    let vertices = d.vertices();
    if labels.len() != vertices.count() {
        return Err(TilingError::LabelCount {
            len: labels.len(),
            expected: vertices.count(),
        });
    }
    if let Some((vertex, &label)) = labels
        .iter()
        .enumerate()
        .find(|(_, &l)| l == VertexLabel::Infinity)
    {
        return Err(TilingError::BadCornerLabel { vertex, label });
    }
    for e in 0..d.n_darts() {
        let (a, b) = (vertices.orbit_of(e), vertices.orbit_of(d.rho1()[e]));
        if labels[a] == labels[b] {
            return Err(TilingError::InconsistentLabels {
                a: a.min(b),
                b: a.max(b),
                label: labels[a],
            });
        }
    }

    let n = d.n_darts();
    let pos = square_positions(&faces, n);
    let nf = faces.count();
    let dart = |f: usize, k: usize, j: usize| 12 * f + 3 * (k % 4) + j;
    let mut rho1 = vec![0; 12 * nf];
    let mut rho2 = vec![0; 12 * nf];
    let mut origin = vec![VertexLabel::Infinity; 12 * nf];
    for f in 0..nf {
        let orbit = faces.orbit(f);
        for k in 0..4 {
            for j in 0..3 {
                rho2[dart(f, k, j)] = dart(f, k, (j + 1) % 3);
            }
            rho1[dart(f, k, 1)] = dart(f, k + 1, 2);
            rho1[dart(f, k + 1, 2)] = dart(f, k, 1);
            let (g, k2) = pos[d.rho1()[orbit[k]]];
            rho1[dart(f, k, 0)] = dart(g, k2, 0);

            origin[dart(f, k, 0)] = labels[vertices.orbit_of(orbit[k])];
            origin[dart(f, k, 1)] = labels[vertices.orbit_of(orbit[(k + 1) % 4])];
        }
    }
    let base = Dessin::from_faces(rho1, rho2).expect("subdivision of a valid square tiling");
    Ok(TricoloredDessin::from_origin_labels(base, &origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn recognizes_square_tilings() {
        assert!(is_square_tiling(&fixtures::one_square_torus()));
        assert!(is_square_tiling(&fixtures::torus_grid(2, 2)));
        assert!(is_square_tiling(&fixtures::cube()));
        assert!(!is_square_tiling(&fixtures::tetrahedron()));
    }

    #[test]
    fn one_square_torus_is_not_bipartite() {
        match corner_bipartition(&fixtures::one_square_torus()) {
            Err(TilingError::NonBipartite { witness }) => assert_eq!(witness, vec![0, 0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_witness_is_a_closed_walk() {
        // 3x1 torus: corner graph contains a 3-cycle along the horizontal
        let d = fixtures::torus_grid(3, 1);
        let Err(TilingError::NonBipartite { witness }) = corner_bipartition(&d) else {
            panic!("3x1 torus must be non-bipartite");
        };
        assert_eq!(witness.first(), witness.last());
        assert_eq!((witness.len() - 1) % 2, 1);
    }

    #[test]
    fn grid_bipartition() {
        let labels = corner_bipartition(&fixtures::torus_grid(2, 2)).unwrap();
        assert_eq!(labels.len(), 4);
        assert_eq!(labels[0], VertexLabel::Zero);
        let zeros = labels.iter().filter(|&&l| l == VertexLabel::Zero).count();
        assert_eq!((zeros, labels.len() - zeros), (2, 2));
    }

    #[test]
    fn swapped_bipartition_is_also_accepted() {
        let d = fixtures::torus_grid(2, 2);
        let labels = corner_bipartition(&d).unwrap();
        let swapped: Vec<_> = labels
            .iter()
            .map(|&l| match l {
                VertexLabel::Zero => VertexLabel::One,
                _ => VertexLabel::Zero,
            })
            .collect();
        let t = diagonal_subdivision(&d, &swapped).unwrap();
        assert!(validate_tricoloring(&t).is_empty());
    }

    #[test]
    fn refinement_of_one_square_torus() {
        let d = fixtures::one_square_torus();
        let r = refine_2x2(&d).unwrap();
        assert_eq!(r.cell_counts(), (4, 8, 4));
        assert_eq!(r.genus(), 1);
        assert!(crate::cartography::is_isomorphic(
            &r,
            &fixtures::torus_grid(2, 2)
        ));
        let labels = corner_bipartition(&r).unwrap();
        // corners of the old square and centres get zero, midpoints one
        let vertices = r.vertices();
        for f in 0..d.faces().count() {
            for k in 0..4 {
                let first_half = 16 * f + 4 * k;
                let inner = first_half + 1;
                let centre_dart = first_half + 2;
                assert_eq!(labels[vertices.orbit_of(first_half)], VertexLabel::Zero);
                assert_eq!(labels[vertices.orbit_of(inner)], VertexLabel::One);
                assert_eq!(labels[vertices.orbit_of(centre_dart)], VertexLabel::Zero);
            }
        }
    }

    #[test]
    fn refinement_rejects_triangles() {
        assert!(matches!(
            refine_2x2(&fixtures::tetrahedron()),
            Err(TilingError::NotSquareTiling { size: 3, .. })
        ));
    }

    #[test]
    fn subdivided_grid_counts() {
        let d = fixtures::torus_grid(2, 2);
        let labels = corner_bipartition(&d).unwrap();
        let t = diagonal_subdivision(&d, &labels).unwrap();
        assert_eq!(t.base.cell_counts(), (8, 24, 16));
        assert_eq!(t.base.genus(), 1);
        assert!(validate_tricoloring(&t).is_empty());
        let vertices = t.base.vertices();
        for (v, &l) in t.vertex_label.iter().enumerate() {
            if l == VertexLabel::Infinity {
                assert_eq!(vertices.orbit(v).len(), 4);
            }
        }
        let blue = t
            .edge_color
            .iter()
            .filter(|&&c| c == EdgeColor::Blue)
            .count();
        assert_eq!(blue, 8);
    }

    #[test]
    fn subdivision_rejects_bad_labels() {
        let d = fixtures::torus_grid(2, 2);
        assert!(matches!(
            diagonal_subdivision(&d, &[VertexLabel::Zero; 4]),
            Err(TilingError::InconsistentLabels { .. })
        ));
        assert!(matches!(
            diagonal_subdivision(&d, &[VertexLabel::Zero; 3]),
            Err(TilingError::LabelCount { .. })
        ));
    }

    #[test]
    fn recolored_edge_breaks_condition_two() {
        let d = fixtures::torus_grid(2, 2);
        let mut t = diagonal_subdivision(&d, &corner_bipartition(&d).unwrap()).unwrap();
        let edge = t
            .edge_color
            .iter()
            .position(|&c| c == EdgeColor::Blue)
            .unwrap();
        t.edge_color[edge] = EdgeColor::Red;
        let v = validate_tricoloring(&t);
        let faces = t.base.faces();
        let orbit = t.base.edges().orbit(edge).to_vec();
        let mut bad: Vec<usize> = v
            .iter()
            .filter_map(|x| match x {
                TricolorViolation::FaceColors { face } => Some(*face),
                _ => None,
            })
            .collect();
        bad.sort();
        let mut expected = vec![faces.orbit_of(orbit[0]), faces.orbit_of(orbit[1])];
        expected.sort();
        assert_eq!(bad, expected);
    }

    #[test]
    fn flipped_shade_breaks_checkerboard() {
        let d = fixtures::torus_grid(2, 2);
        let mut t = diagonal_subdivision(&d, &corner_bipartition(&d).unwrap()).unwrap();
        t.face_shade[5] = t.face_shade[5].flipped();
        let v = validate_tricoloring(&t);
        let n = v
            .iter()
            .filter(|x| matches!(x, TricolorViolation::Checkerboard { .. }))
            .count();
        assert_eq!(n, 3);
    }

    #[test]
    fn permuted_colors_pass_compatibility() {
        let d = fixtures::cube();
        let mut t = diagonal_subdivision(&d, &corner_bipartition(&d).unwrap()).unwrap();
        for c in &mut t.edge_color {
            *c = match *c {
                EdgeColor::Blue => EdgeColor::Green,
                EdgeColor::Green => EdgeColor::Red,
                EdgeColor::Red => EdgeColor::Blue,
            };
        }
        assert!(validate_tricoloring(&t).is_empty());
    }

    #[test]
    fn names_round_trip() {
        for c in [EdgeColor::Blue, EdgeColor::Green, EdgeColor::Red] {
            assert_eq!(EdgeColor::from_name(c.name()), Some(c));
        }
        assert_eq!(
            VertexLabel::from_name("infinity"),
            Some(VertexLabel::Infinity)
        );
        assert_eq!(Shade::from_name("grey"), None);
    }
}

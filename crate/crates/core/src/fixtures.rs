//! Standard dessins used by the tests, examples and CLI fixtures, plus
//! random generators for connected dessins and origamis.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cartography::{Dessin, DessinError};
use crate::tiling::{TricoloredDessin, VertexLabel};

/// A single edge with two distinct end points on the sphere.
pub fn segment() -> Dessin {
    Dessin::new(vec![0, 1], vec![1, 0]).expect("segment")
}

/// One unit square with opposite sides glued: one vertex, two edges, one face.
pub fn one_square_torus() -> Dessin {
    origami(&[0], &[0]).expect("one-square torus")
}

pub fn tetrahedron() -> Dessin {
    Dessin::from_oriented_faces(&[vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]])
        .expect("tetrahedron")
}

fn octahedron_faces() -> Vec<Vec<usize>> {
    // vertices: 0 = +x, 1 = -x, 2 = +y, 3 = -y, 4 = +z, 5 = -z
    let mut faces = Vec::new();
    for sx in [1i32, -1] {
        for sy in [1i32, -1] {
            for sz in [1i32, -1] {
                let x = if sx > 0 { 0 } else { 1 };
                let y = if sy > 0 { 2 } else { 3 };
                let z = if sz > 0 { 4 } else { 5 };
                if sx * sy * sz > 0 {
                    faces.push(vec![x, y, z]);
                } else {
                    faces.push(vec![x, z, y]);
                }
            }
        }
    }
    faces
}

pub fn octahedron() -> Dessin {
    Dessin::from_oriented_faces(&octahedron_faces()).expect("octahedron")
}

/// The octahedron as a tricolored dessin: the antipodal pairs on the x, y
/// and z axes lie over zero, one and infinity.
pub fn octahedron_tricolored() -> TricoloredDessin {
    let origin: Vec<VertexLabel> = octahedron_faces()
        .into_iter()
        .flatten()
        .map(|v| match v {
            0 | 1 => VertexLabel::Zero,
            2 | 3 => VertexLabel::One,
            _ => VertexLabel::Infinity,
        })
        .collect();
    TricoloredDessin::from_origin_labels(octahedron(), &origin)
}

/// The surface of the unit cube: a square tiling of the sphere with a
/// bipartite corner graph.
pub fn cube() -> Dessin {
    Dessin::from_oriented_faces(&[
        vec![0, 2, 3, 1],
        vec![4, 5, 7, 6],
        vec![0, 1, 5, 4],
        vec![2, 6, 7, 3],
        vec![0, 4, 6, 2],
        vec![1, 3, 7, 5],
    ])
    .expect("cube")
}

/// Two squares glued along their whole boundary.
pub fn pillowcase() -> Dessin {
    Dessin::from_oriented_faces(&[vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).expect("pillowcase")
}

/// The origami with right-neighbour permutation `right` and
/// top-neighbour permutation `up` on the squares `0..n`.
///
/// Square `i` owns darts `4i..4i+4`: bottom, right, top and left sides,
/// each directed counterclockwise around the square.
pub fn origami(right: &[usize], up: &[usize]) -> Result<Dessin, DessinError> {
    let n = right.len();
    let inv = |p: &[usize], name: &'static str| -> Result<Vec<usize>, DessinError> {
        if p.len() != n {
            return Err(crate::cartography::MalformedError::Length {
                name,
                len: p.len(),
                expected: n,
            }
            .into());
        }
        let mut q = vec![usize::MAX; n];
        for (i, &j) in p.iter().enumerate() {
            if j >= n || q[j] != usize::MAX {
                return Err(crate::cartography::MalformedError::OutOfRange {
                    name,
                    index: i,
                    value: j,
                    n,
                }
                .into());
            }
            q[j] = i;
        }
        Ok(q)
    };
    let right_inv = inv(right, "right")?;
    let up_inv = inv(up, "up")?;
    let mut rho1 = vec![0; 4 * n];
    let mut rho2 = vec![0; 4 * n];
    for i in 0..n {
        for k in 0..4 {
            rho2[4 * i + k] = 4 * i + (k + 1) % 4;
        }
        rho1[4 * i] = 4 * up_inv[i] + 2;
        rho1[4 * i + 1] = 4 * right[i] + 3;
        rho1[4 * i + 2] = 4 * up[i];
        rho1[4 * i + 3] = 4 * right_inv[i] + 1;
    }
    Dessin::from_faces(rho1, rho2)
}

/// The `width x height` square grid with periodic boundary.
pub fn torus_grid(width: usize, height: usize) -> Dessin {
    let n = width * height;
    let right: Vec<usize> = (0..n)
        .map(|i| (i % width + 1) % width + width * (i / width))
        .collect();
    let up: Vec<usize> = (0..n)
        .map(|i| i % width + width * ((i / width + 1) % height))
        .collect();
    origami(&right, &up).expect("torus grid")
}

/// A uniformly random connected dessin on `n_darts` darts (must be even),
/// drawn by rejection from random pairs `(rho0, rho1)`.
pub fn random_dessin<R: Rng + ?Sized>(n_darts: usize, rng: &mut R) -> Dessin {
    assert!(
        n_darts >= 2 && n_darts.is_multiple_of(2),
        "need an even, positive dart count"
    );
    loop {
        let mut darts: Vec<usize> = (0..n_darts).collect();
        darts.shuffle(rng);
        let mut rho1 = vec![0; n_darts];
        for pair in darts.chunks(2) {
            rho1[pair[0]] = pair[1];
            rho1[pair[1]] = pair[0];
        }
        let mut rho0: Vec<usize> = (0..n_darts).collect();
        rho0.shuffle(rng);
        if let Ok(d) = Dessin::new(rho0, rho1) {
            return d;
        }
    }
}

/// A random connected origami with `n_squares` squares.
pub fn random_origami<R: Rng + ?Sized>(n_squares: usize, rng: &mut R) -> Dessin {
    assert!(n_squares >= 1);
    loop {
        let mut right: Vec<usize> = (0..n_squares).collect();
        let mut up: Vec<usize> = (0..n_squares).collect();
        right.shuffle(rng);
        up.shuffle(rng);
        if let Ok(d) = origami(&right, &up) {
            return d;
        }
    }
}

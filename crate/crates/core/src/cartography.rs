//! Dessins d'enfants as transitive permutation representations of the
//! oriented cartographic group `<rho0, rho1, rho2 | rho1^2 = rho2 rho1 rho0 = 1>`.
//!
//! A dessin is stored as the pair `(rho0, rho1)` of image arrays over the
//! darts `0..n`. `rho0` rotates a dart counterclockwise about its origin,
//! `rho1` reverses it, and `rho2` (derived) moves it along the boundary of
//! the face lying to its left.
//!
//! Composition convention: a word `x y z` acts with the rightmost generator
//! first, so `rho2 rho1 rho0 = 1` reads `rho2(rho1(rho0(e))) = e` and
//! therefore `rho2 = rho0^-1 . rho1`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Generators of the oriented cartographic group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Rho0,
    Rho1,
    Rho2,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Rho0 => write!(f, "rho0"),
            Generator::Rho1 => write!(f, "rho1"),
            Generator::Rho2 => write!(f, "rho2"),
        }
    }
}

/// The three kinds of cells recovered as orbits: vertices (`<rho0>`),
/// edges (`<rho1>`) and faces (`<rho2>`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Vertex,
    Edge,
    Face,
}

impl CellKind {
    pub fn from_index(j: usize) -> Option<Self> {
        match j {
            0 => Some(CellKind::Vertex),
            1 => Some(CellKind::Edge),
            2 => Some(CellKind::Face),
            _ => None,
        }
    }

    pub fn generator(self) -> Generator {
        match self {
            CellKind::Vertex => Generator::Rho0,
            CellKind::Edge => Generator::Rho1,
            CellKind::Face => Generator::Rho2,
        }
    }
}

impl fmt::Display for CellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellKind::Vertex => write!(f, "vertex"),
            CellKind::Edge => write!(f, "edge"),
            CellKind::Face => write!(f, "face"),
        }
    }
}

/// A cell of a dessin: the orbit `id` of the given kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellIndex {
    pub kind: CellKind,
    pub id: usize,
}

impl CellIndex {
    pub fn vertex(id: usize) -> Self {
        CellIndex {
            kind: CellKind::Vertex,
            id,
        }
    }

    pub fn edge(id: usize) -> Self {
        CellIndex {
            kind: CellKind::Edge,
            id,
        }
    }

    pub fn face(id: usize) -> Self {
        CellIndex {
            kind: CellKind::Face,
            id,
        }
    }
}

/// Input arrays that cannot be read as permutations at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedError {
    #[error("dessin must have at least one dart")]
    Empty,
    #[error("{name} has length {len}, expected {expected}")]
    Length {
        name: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("{name}[{index}] = {value} is out of range 0..{n}")]
    OutOfRange {
        name: &'static str,
        index: usize,
        value: usize,
        n: usize,
    },
}

/// A violated structural invariant, reported with the offending dart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    NotBijection { generator: Generator, dart: usize },
    Rho1FixedPoint { dart: usize },
    Rho1NotInvolution { dart: usize },
    NotTransitive { dart: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotBijection { generator, dart } => {
                write!(
                    f,
                    "{generator} is not a bijection: dart {dart} has two preimages"
                )
            }
            Violation::Rho1FixedPoint { dart } => write!(f, "rho1 has fixed points: dart {dart}"),
            Violation::Rho1NotInvolution { dart } => {
                write!(f, "rho1 is not an involution at dart {dart}")
            }
            Violation::NotTransitive { dart } => {
                write!(f, "not transitive: dart {dart} unreachable from dart 0")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DessinError {
    #[error(transparent)]
    Malformed(#[from] MalformedError),
    #[error("invalid dessin: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("dart {dart} out of range 0..{n}")]
    DartOutOfRange { dart: usize, n: usize },
    #[error("generator index {0} is not one of 0, 1, 2")]
    BadGenerator(usize),
}

fn check_shape(name: &'static str, images: &[usize], n: usize) -> Result<(), MalformedError> {
    if images.len() != n {
        return Err(MalformedError::Length {
            name,
            len: images.len(),
            expected: n,
        });
    }
    if let Some((index, &value)) = images.iter().enumerate().find(|(_, &v)| v >= n) {
        return Err(MalformedError::OutOfRange {
            name,
            index,
            value,
            n,
        });
    }
    Ok(())
}

fn first_non_bijective(images: &[usize]) -> Option<usize> {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .copied()
        .find(|&v| std::mem::replace(&mut seen[v], true))
}

/// Checks the dessin invariants on raw image arrays.
///
/// Returns `Err` only for arrays that are not readable as maps on
/// `0..rho0.len()`; every structural problem is returned as a violation.
pub fn validate(rho0: &[usize], rho1: &[usize]) -> Result<Vec<Violation>, MalformedError> {
    let n = rho0.len();
    if n == 0 {
        return Err(MalformedError::Empty);
    }
    check_shape("rho0", rho0, n)?;
    check_shape("rho1", rho1, n)?;

    let mut out = Vec::new();
    if let Some(dart) = first_non_bijective(rho0) {
        out.push(Violation::NotBijection {
            generator: Generator::Rho0,
            dart,
        });
    }
    if let Some(dart) = first_non_bijective(rho1) {
        out.push(Violation::NotBijection {
            generator: Generator::Rho1,
            dart,
        });
    }
    if let Some(dart) = (0..n).find(|&e| rho1[e] == e) {
        out.push(Violation::Rho1FixedPoint { dart });
    }
    if let Some(dart) = (0..n).find(|&e| rho1[rho1[e]] != e) {
        out.push(Violation::Rho1NotInvolution { dart });
    }

    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(e) = queue.pop_front() {
        for next in [rho0[e], rho1[e]] {
            if !seen[next] {
                seen[next] = true;
                queue.push_back(next);
            }
        }
    }
    if let Some(dart) = seen.iter().position(|s| !s) {
        out.push(Violation::NotTransitive { dart });
    }
    Ok(out)
}

/// A partition of the darts into orbits of one generator.
///
/// Orbit ids are dense and assigned in order of each orbit's smallest
/// dart; each orbit lists its darts in cycle order starting from that
/// smallest dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cells {
    kind: CellKind,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

impl Cells {
    fn from_permutation(kind: CellKind, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut cycle = Vec::new();
            let mut e = start;
            loop {
                orbit_of[e] = id;
                cycle.push(e);
                e = perm[e];
                if e == start {
                    break;
                }
            }
            orbits.push(cycle);
        }
        Cells {
            kind,
            orbit_of,
            orbits,
        }
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_of(&self, dart: usize) -> usize {
        self.orbit_of[dart]
    }

    pub fn orbit(&self, id: usize) -> &[usize] {
        &self.orbits[id]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Orbit sizes indexed by orbit id.
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// A connected oriented map given by its cartographic permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dessin {
    rho0: Vec<usize>,
    rho1: Vec<usize>,
    rho2: Vec<usize>,
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

impl Dessin {
    /// Builds a dessin from the vertex rotation `rho0` and the edge
    /// involution `rho1`.
    pub fn new(rho0: Vec<usize>, rho1: Vec<usize>) -> Result<Self, DessinError> {
        let violations = validate(&rho0, &rho1)?;
        if !violations.is_empty() {
            return Err(DessinError::Invalid(violations));
        }
        let rho0_inv = invert(&rho0);
        let rho2 = rho1.iter().map(|&e| rho0_inv[e]).collect();
        Ok(Dessin { rho0, rho1, rho2 })
    }

    /// Builds a dessin from `rho1` and the face permutation `rho2`, using
    /// `rho0 = rho1 . rho2^-1`.
    pub fn from_faces(rho1: Vec<usize>, rho2: Vec<usize>) -> Result<Self, DessinError> {
        let n = rho1.len();
        if n == 0 {
            return Err(MalformedError::Empty.into());
        }
        check_shape("rho1", &rho1, n)?;
        check_shape("rho2", &rho2, n)?;
        if let Some(dart) = first_non_bijective(&rho2) {
            return Err(DessinError::Invalid(vec![Violation::NotBijection {
                generator: Generator::Rho2,
                dart,
            }]));
        }
        let rho2_inv = invert(&rho2);
        let rho0 = rho2_inv.iter().map(|&e| rho1[e]).collect();
        Dessin::new(rho0, rho1)
    }

    /// Builds a dessin from polygons listed counterclockwise by vertex
    /// label. Each directed side `u -> v` becomes a dart with its polygon on
    /// the left; every side must occur exactly once in each direction.
    pub fn from_oriented_faces(faces: &[Vec<usize>]) -> Result<Self, DessinError> {
        use std::collections::HashMap;
        let mut rho2 = Vec::new();
        let mut by_side: HashMap<(usize, usize), usize> = HashMap::new();
        let mut sides = Vec::new();
        for face in faces {
            let base = rho2.len();
            let k = face.len();
            for i in 0..k {
                let side = (face[i], face[(i + 1) % k]);
                by_side.insert(side, base + i);
                sides.push(side);
                rho2.push(base + (i + 1) % k);
            }
        }
        let n = rho2.len();
        let mut rho1 = vec![usize::MAX; n];
        for (dart, &(u, v)) in sides.iter().enumerate() {
            match by_side.get(&(v, u)) {
                Some(&twin) => rho1[dart] = twin,
                None => {
                    return Err(DessinError::Invalid(vec![Violation::Rho1FixedPoint {
                        dart,
                    }]))
                }
            }
        }
        Dessin::from_faces(rho1, rho2)
    }

    pub fn n_darts(&self) -> usize {
        self.rho0.len()
    }

    pub fn rho0(&self) -> &[usize] {
        &self.rho0
    }

    pub fn rho1(&self) -> &[usize] {
        &self.rho1
    }

    pub fn rho2(&self) -> &[usize] {
        &self.rho2
    }

    pub fn permutation(&self, g: Generator) -> &[usize] {
        match g {
            Generator::Rho0 => &self.rho0,
            Generator::Rho1 => &self.rho1,
            Generator::Rho2 => &self.rho2,
        }
    }

    pub fn apply(&self, g: Generator, dart: usize) -> usize {
        self.permutation(g)[dart]
    }

    /// `rho0^-1 (dart)`, the clockwise neighbour about the origin.
    pub fn rho0_inv(&self, dart: usize) -> usize {
        // rho2 = rho0^-1 . rho1, so rho0^-1 = rho2 . rho1
        self.rho2[self.rho1[dart]]
    }

    pub fn cells(&self, kind: CellKind) -> Cells {
        Cells::from_permutation(kind, self.permutation(kind.generator()))
    }

    pub fn vertices(&self) -> Cells {
        self.cells(CellKind::Vertex)
    }

    pub fn edges(&self) -> Cells {
        self.cells(CellKind::Edge)
    }

    pub fn faces(&self) -> Cells {
        self.cells(CellKind::Face)
    }

    /// `[dart]_j`: the origin vertex (`j = 0`), undirected edge (`j = 1`) or
    /// left face (`j = 2`) of a dart.
    pub fn dart_cell(&self, dart: usize, j: usize) -> Result<CellIndex, DessinError> {
        let kind = CellKind::from_index(j).ok_or(DessinError::BadGenerator(j))?;
        if dart >= self.n_darts() {
            return Err(DessinError::DartOutOfRange {
                dart,
                n: self.n_darts(),
            });
        }
        Ok(CellIndex {
            kind,
            id: self.cells(kind).orbit_of(dart),
        })
    }

    /// `(V, E, F)`.
    pub fn cell_counts(&self) -> (usize, usize, usize) {
        (
            self.vertices().count(),
            self.edges().count(),
            self.faces().count(),
        )
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.cell_counts();
        v as i64 - e as i64 + f as i64
    }

    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && (2 - chi) % 2 == 0);
        ((2 - chi) / 2) as usize
    }

    /// Relabels darts by `perm` (dart `e` becomes `perm[e]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, DessinError> {
        let n = self.n_darts();
        check_shape("relabeling", perm, n)?;
        if let Some(dart) = first_non_bijective(perm) {
            return Err(DessinError::Invalid(vec![Violation::NotBijection {
                generator: Generator::Rho0,
                dart,
            }]));
        }
        let conj = |p: &[usize]| {
            let mut out = vec![0; n];
            for e in 0..n {
                out[perm[e]] = perm[p[e]];
            }
            out
        };
        Dessin::new(conj(&self.rho0), conj(&self.rho1))
    }

    /// Canonical code: the lexicographically smallest encoding of
    /// `(rho0, rho1)` over all breadth-first relabelings rooted at a dart.
    pub fn canonical_code(&self) -> Vec<usize> {
        (0..self.n_darts())
            .map(|root| self.code_from(root))
            .min()
            .expect("dessins have at least one dart")
    }

    fn code_from(&self, root: usize) -> Vec<usize> {
        let n = self.n_darts();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[root] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let e = order[head];
            head += 1;
            for next in [self.rho0[e], self.rho1[e]] {
                if label[next] == usize::MAX {
                    label[next] = order.len();
                    order.push(next);
                }
            }
        }
        let mut code = Vec::with_capacity(2 * n);
        for &e in &order {
            code.push(label[self.rho0[e]]);
            code.push(label[self.rho1[e]]);
        }
        code
    }
}

/// True iff some dart relabeling conjugates `(rho0, rho1)` of `a` onto `b`.
pub fn is_isomorphic(a: &Dessin, b: &Dessin) -> bool {
    a.n_darts() == b.n_darts()
        && a.cell_counts() == b.cell_counts()
        && a.canonical_code() == b.canonical_code()
}

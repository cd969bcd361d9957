//! Piecewise-euclidean structures on a dessin: per-dart lengths and corner
//! angles, the affine transitions between the normalized face charts, and
//! the closure and cone-angle diagnostics.
//!
//! Every dart `e` carries a chart `z_e` with `z_e(origin) = 0` and the edge
//! of `e` along the positive real axis. Neighbouring charts are related by
//!
//! ```text
//! z_{rho0 e} = exp(i phi(e)) z_e
//! z_{rho1 e} = l(e) - z_e
//! ```
//!
//! `phi(e)` is the corner angle at the origin of `e`, swept from `e` to
//! `rho0 e`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::cartography::{CellIndex, CellKind, Dessin};

/// Absolute closure tolerance for unit-scale data.
pub const CLOSURE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("expected {expected} values for {name}, got {len}")]
    Length {
        name: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("length of dart {dart} is {value}, must be positive and finite")]
    BadLength { dart: usize, value: f64 },
    #[error("angle of dart {dart} is {value}, must lie in (0, 2pi)")]
    BadAngle { dart: usize, value: f64 },
    #[error("edge length not well defined: l({dart}) = {a} but l(rho1 {dart}) = {b}")]
    AsymmetricLength { dart: usize, a: f64, b: f64 },
    #[error("face {face} has {found} sides, expected {expected}")]
    FaceDegreeMismatch {
        face: usize,
        found: usize,
        expected: usize,
    },
    #[error("{0} is not a valid {1} index")]
    BadCell(usize, CellKind),
    #[error("dart {0} out of range")]
    DartOutOfRange(usize),
    #[error("malformed word {0:?}: {1}")]
    MalformedWord(String, String),
}

/// Lengths and angles indexed by dart.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricData {
    lengths: Vec<f64>,
    angles: Vec<f64>,
}

impl MetricData {
    pub fn new(d: &Dessin, lengths: Vec<f64>, angles: Vec<f64>) -> Result<Self, MetricError> {
        let n = d.n_darts();
        for (name, v) in [("lengths", &lengths), ("angles", &angles)] {
            if v.len() != n {
                return Err(MetricError::Length {
                    name,
                    len: v.len(),
                    expected: n,
                });
            }
        }
        for (dart, &value) in lengths.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(MetricError::BadLength { dart, value });
            }
        }
        for (dart, &value) in angles.iter().enumerate() {
            if !(value > 0.0 && value < TAU) {
                return Err(MetricError::BadAngle { dart, value });
            }
        }
        for dart in 0..n {
            let (a, b) = (lengths[dart], lengths[d.rho1()[dart]]);
            if (a - b).abs() > 1e-12 * a.max(b) {
                return Err(MetricError::AsymmetricLength { dart, a, b });
            }
        }
        Ok(MetricData { lengths, angles })
    }

    fn uniform(d: &Dessin, sides: usize, angle: f64) -> Result<Self, MetricError> {
        let faces = d.faces();
        if let Some((face, found)) = faces
            .sizes()
            .into_iter()
            .enumerate()
            .find(|&(_, s)| s != sides)
        {
            return Err(MetricError::FaceDegreeMismatch {
                face,
                found,
                expected: sides,
            });
        }
        let n = d.n_darts();
        Ok(MetricData {
            lengths: vec![1.0; n],
            angles: vec![angle; n],
        })
    }

    /// Unit equilateral triangles: `l = 1`, `phi = pi/3` on a triangulation.
    pub fn equilateral(d: &Dessin) -> Result<Self, MetricError> {
        Self::uniform(d, 3, FRAC_PI_3)
    }

    /// Unit squares: `l = 1`, `phi = pi/2` on a quadrangulation.
    pub fn square(d: &Dessin) -> Result<Self, MetricError> {
        Self::uniform(d, 4, FRAC_PI_2)
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn length(&self, dart: usize) -> f64 {
        self.lengths[dart]
    }

    pub fn angle(&self, dart: usize) -> f64 {
        self.angles[dart]
    }

    pub fn n_darts(&self) -> usize {
        self.lengths.len()
    }
}

pub fn equilateral_structure(d: &Dessin) -> Result<MetricData, MetricError> {
    MetricData::equilateral(d)
}

pub fn square_structure(d: &Dessin) -> Result<MetricData, MetricError> {
    MetricData::square(d)
}

/// The affine map `z -> a z + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineChart {
    pub a: Complex64,
    pub b: Complex64,
}

impl AffineChart {
    pub const IDENTITY: AffineChart = AffineChart {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }

    /// `next . self`: first `self`, then `next`.
    pub fn then(&self, next: &AffineChart) -> AffineChart {
        AffineChart {
            a: next.a * self.a,
            b: next.a * self.b + next.b,
        }
    }

    /// Distance from the identity map in the max norm of its coefficients.
    pub fn identity_defect(&self) -> f64 {
        (self.a - 1.0).norm().max(self.b.norm())
    }
}

/// One letter of a chart-transition word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Rho0,
    Rho0Inv,
    Rho1,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Rho0 => write!(f, "r0"),
            Step::Rho0Inv => write!(f, "r0^-1"),
            Step::Rho1 => write!(f, "r1"),
        }
    }
}

/// A word over `{rho0, rho0^-1, rho1}`, written in mathematical order:
/// the rightmost letter is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Step>);

impl Word {
    /// `rho2^k = (rho0^-1 rho1)^k`.
    pub fn rho2_power(k: usize) -> Self {
        Word([Step::Rho0Inv, Step::Rho1].repeat(k))
    }

    /// Letters in application order.
    pub fn applied(&self) -> impl Iterator<Item = Step> + '_ {
        self.0.iter().rev().copied()
    }
}

impl FromStr for Word {
    type Err = MetricError;

    /// Parses whitespace-separated letters `r0`, `r1`, `r0^-1` (also `rho0`,
    /// `rho1`, `rho0^-1`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|tok| match tok {
                "r0" | "rho0" => Ok(Step::Rho0),
                "r1" | "rho1" => Ok(Step::Rho1),
                "r0^-1" | "rho0^-1" => Ok(Step::Rho0Inv),
                other => Err(MetricError::MalformedWord(
                    s.to_string(),
                    format!("unknown letter {other:?}"),
                )),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Composite transition from the chart of `dart` to the chart of the dart
/// reached by `word`. Returns the final dart and the map `z_start -> z_end`.
pub fn chart_transition(
    d: &Dessin,
    m: &MetricData,
    dart: usize,
    word: &Word,
) -> Result<(usize, AffineChart), MetricError> {
    if dart >= d.n_darts() {
        return Err(MetricError::DartOutOfRange(dart));
    }
    let mut e = dart;
    let mut chart = AffineChart::IDENTITY;
    for step in word.applied() {
        let (next, local) = match step {
            Step::Rho0 => (
                d.rho0()[e],
                AffineChart {
                    a: Complex64::from_polar(1.0, m.angle(e)),
                    b: Complex64::new(0.0, 0.0),
                },
            ),
            Step::Rho0Inv => {
                let prev = d.rho0_inv(e);
                (
                    prev,
                    AffineChart {
                        a: Complex64::from_polar(1.0, -m.angle(prev)),
                        b: Complex64::new(0.0, 0.0),
                    },
                )
            }
            Step::Rho1 => (
                d.rho1()[e],
                AffineChart {
                    a: Complex64::new(-1.0, 0.0),
                    b: Complex64::new(m.length(e), 0.0),
                },
            ),
        };
        chart = chart.then(&local);
        e = next;
    }
    Ok((e, chart))
}

fn check_cell(
    d: &Dessin,
    cell: CellIndex,
    kind: CellKind,
) -> Result<crate::cartography::Cells, MetricError> {
    let cells = d.cells(kind);
    if cell.kind != kind || cell.id >= cells.count() {
        return Err(MetricError::BadCell(cell.id, kind));
    }
    Ok(cells)
}

/// Walks the boundary of `face` and returns the position residual and the
/// heading residual (total turning minus `2 pi`, reduced to `(-pi, pi]`).
pub fn face_closure_residual(
    d: &Dessin,
    m: &MetricData,
    face: CellIndex,
) -> Result<(Complex64, f64), MetricError> {
    let faces = check_cell(d, face, CellKind::Face)?;
    let mut position = Complex64::new(0.0, 0.0);
    let mut heading = 0.0f64;
    for &e in faces.orbit(face.id) {
        position += Complex64::from_polar(m.length(e), heading);
        let next = d.rho2()[e];
        heading += PI - m.angle(next);
    }
    Ok((position, reduce_angle(heading - TAU)))
}

fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Total angle around a vertex.
pub fn cone_angle(d: &Dessin, m: &MetricData, vertex: CellIndex) -> Result<f64, MetricError> {
    let vertices = check_cell(d, vertex, CellKind::Vertex)?;
    Ok(vertices.orbit(vertex.id).iter().map(|&e| m.angle(e)).sum())
}

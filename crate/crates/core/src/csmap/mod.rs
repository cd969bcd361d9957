//! Schwarz-Christoffel coordinate maps of the lower half-plane onto
//! triangles.
//!
//! The basic object is the incomplete integral
//!
//! ```text
//! I(a, b; t) = int_0^t w^(a-1) (1 - w)^(b-1) dw
//! ```
//!
//! along the straight segment from `0` to `t`. Arguments of `w` are taken
//! in `[-pi, pi)`, so the negative real axis is reached from the lower
//! half-plane, and `(1 - w)` uses the principal branch. Both are constant
//! or continuous along the segment whenever `t` avoids the cut `(1, inf)`.
//!
//! A map `cs_map(spec, t) = prefactor * I(a, b; t) / I(a, b; 1)` sends the
//! lower half-plane onto the triangle with angles `a pi`, `b pi` and
//! `(1 - a - b) pi` at the images of `0`, `1` and `infinity`.

pub mod quadrature;

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use thiserror::Error;

use quadrature::rule;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CsError {
    #[error("exponents must satisfy 0 < a <= 1 and 0 < b <= 1, got a = {a}, b = {b}")]
    InvalidExponents { a: f64, b: f64 },
    #[error("t = {0} lies on the branch cut (1, inf)")]
    CutCrossing(Complex64),
    #[error("argument {0} is not finite")]
    NonFinite(Complex64),
    #[error("quadrature did not reach the target accuracy within {splits} path splits")]
    NonConvergence { splits: usize },
    #[error("integrand is singular at t = {0}")]
    SingularPoint(Complex64),
    #[error("z = {0} lies outside the image triangle")]
    OutsideImage(Complex64),
    #[error("newton inversion did not converge for z = {z} (best residual {residual:e})")]
    InversionFailed { z: Complex64, residual: f64 },
    #[error("invalid quadrature config: {0}")]
    InvalidConfig(String),
    #[error("unknown map name {0:?}")]
    UnknownMap(String),
}

/// Quadrature settings shared by all integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss-Jacobi nodes per path piece.
    pub node_count: usize,
    pub target_rel_error: f64,
    /// Maximum number of bisections of the integration path.
    pub max_path_splits: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            node_count: 32,
            target_rel_error: 1e-13,
            max_path_splits: 200,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), CsError> {
        if !(4..=256).contains(&self.node_count) {
            return Err(CsError::InvalidConfig(format!(
                "node_count {} outside 4..=256",
                self.node_count
            )));
        }
        if self.target_rel_error.is_nan() || self.target_rel_error < 1e-13 {
            return Err(CsError::InvalidConfig(format!(
                "target_rel_error {} below 1e-13",
                self.target_rel_error
            )));
        }
        if self.max_path_splits == 0 {
            return Err(CsError::InvalidConfig(
                "max_path_splits must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `w^p` with `arg w` in `[-pi, pi)`.
pub fn pow_lower(w: Complex64, p: f64) -> Complex64 {
    if w.re == 0.0 && w.im == 0.0 {
        return if p > 0.0 {
            Complex64::new(0.0, 0.0)
        } else if p == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    let arg = if w.im == 0.0 && w.re < 0.0 {
        -PI
    } else {
        w.im.atan2(w.re)
    };
    if w.im == 0.0 && w.re > 0.0 {
        return Complex64::new(w.re.powf(p), 0.0);
    }
    Complex64::from_polar(w.norm().powf(p), p * arg)
}

/// Principal `w^p`.
fn pow_principal(w: Complex64, p: f64) -> Complex64 {
    if w.im == 0.0 && w.re > 0.0 {
        return Complex64::new(w.re.powf(p), 0.0);
    }
    if w.re == 0.0 && w.im == 0.0 {
        return pow_lower(w, p);
    }
    Complex64::from_polar(w.norm().powf(p), p * w.arg())
}

fn check_exponents(a: f64, b: f64) -> Result<(), CsError> {
    if a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0 {
        Ok(())
    } else {
        Err(CsError::InvalidExponents { a, b })
    }
}

fn on_cut(t: Complex64) -> bool {
    t.im == 0.0 && t.re > 1.0
}

fn check_argument(t: Complex64) -> Result<(), CsError> {
    if !(t.re.is_finite() && t.im.is_finite()) {
        return Err(CsError::NonFinite(t));
    }
    if on_cut(t) {
        return Err(CsError::CutCrossing(t));
    }
    Ok(())
}

/// `w^(a-1) (1 - w)^(b-1)`.
fn integrand(a: f64, b: f64, w: Complex64) -> Complex64 {
    integrand_split(a, b, w, Complex64::new(1.0, 0.0) - w)
}

/// The integrand with `1 - w` supplied separately, so that it keeps full
/// relative accuracy close to `w = 1`.
fn integrand_split(a: f64, b: f64, w: Complex64, one_minus_w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let left = if a == 1.0 { one } else { pow_lower(w, a - 1.0) };
    let right = if b == 1.0 {
        one
    } else {
        pow_principal(one_minus_w, b - 1.0)
    };
    left * right
}

/// Distance from `p` to the segment `[u, v]`.
fn segment_distance(p: Complex64, u: Complex64, v: Complex64) -> f64 {
    let d = v - u;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - u).norm();
    }
    let s = ((p - u) * d.conj()).re / len2;
    let s = s.clamp(0.0, 1.0);
    (p - (u + d * s)).norm()
}

#[derive(Debug, Clone, Copy)]
enum PieceKind {
    /// Starts at the singular point `w = 0`.
    FromZero,
    /// Ends at the singular point `w = 1`.
    ToOne,
    Regular,
}

struct PathIntegral {
    a: f64,
    b: f64,
    t: Complex64,
    n: usize,
}

impl PathIntegral {
    fn point(&self, s: f64) -> Complex64 {
        if s == 1.0 {
            self.t
        } else {
            self.t * s
        }
    }

    fn kind(&self, s0: f64, s1: f64) -> PieceKind {
        if s0 == 0.0 && self.a < 1.0 {
            PieceKind::FromZero
        } else if s1 == 1.0 && self.b < 1.0 && self.t == Complex64::new(1.0, 0.0) {
            PieceKind::ToOne
        } else {
            PieceKind::Regular
        }
    }

    /// Every singular point not absorbed by the piece's weight must be at
    /// least one piece length away.
    fn resolved(&self, s0: f64, s1: f64, kind: PieceKind) -> bool {
        let (u, v) = (self.point(s0), self.point(s1));
        let len = (v - u).norm();
        let zero_ok = self.a == 1.0
            || matches!(kind, PieceKind::FromZero)
            || segment_distance(Complex64::new(0.0, 0.0), u, v) >= len;
        let one_ok = self.b == 1.0
            || matches!(kind, PieceKind::ToOne)
            || segment_distance(Complex64::new(1.0, 0.0), u, v) >= len;
        zero_ok && one_ok
    }

    /// Splits at the foot of the perpendicular from a nearby singular
    /// point when it falls well inside the piece, else at the midpoint.
    fn split_point(&self, s0: f64, s1: f64, kind: PieceKind) -> f64 {
        let mid = 0.5 * (s0 + s1);
        if self.b == 1.0 || matches!(kind, PieceKind::ToOne) {
            return mid;
        }
        let (u, v) = (self.point(s0), self.point(s1));
        let one = Complex64::new(1.0, 0.0);
        if segment_distance(one, u, v) >= (v - u).norm() {
            return mid;
        }
        let foot = self.t.conj().re / self.t.norm_sqr();
        let margin = 0.1 * (s1 - s0);
        if foot > s0 + margin && foot < s1 - margin {
            foot
        } else {
            mid
        }
    }

    fn piece(&self, s0: f64, s1: f64, kind: PieceKind, nodes: usize) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let (u, v) = (self.point(s0), self.point(s1));
        match kind {
            PieceKind::FromZero => {
                // w = v x, weight x^(a-1)
                let r = rule(nodes, self.a - 1.0);
                let sum: Complex64 = r
                    .iter()
                    .map(|(x, wt)| {
                        let right = if self.b == 1.0 {
                            one
                        } else {
                            pow_principal(one - v * x, self.b - 1.0)
                        };
                        right * wt
                    })
                    .sum();
                pow_lower(v, self.a) * sum
            }
            PieceKind::ToOne => {
                // 1 - w = (1 - u) x, weight x^(b-1)
                let h = one - u;
                let r = rule(nodes, self.b - 1.0);
                let sum: Complex64 = r
                    .iter()
                    .map(|(x, wt)| {
                        let left = if self.a == 1.0 {
                            one
                        } else {
                            pow_lower(one - h * x, self.a - 1.0)
                        };
                        left * wt
                    })
                    .sum();
                pow_principal(h, self.b) * sum
            }
            PieceKind::Regular => {
                let r = rule(nodes, 0.0);
                let d = v - u;
                let h = one - u;
                let sum: Complex64 = r
                    .iter()
                    .map(|(x, wt)| integrand_split(self.a, self.b, u + d * x, h - d * x) * wt)
                    .sum();
                d * sum
            }
        }
    }

    fn evaluate(&self, tol: f64, max_splits: usize) -> Result<Complex64, CsError> {
        let mut stack = vec![(0.0f64, 1.0f64)];
        let mut total = Complex64::new(0.0, 0.0);
        let mut splits = 0usize;
        let coarse = (self.n / 2).max(2);
        while let Some((s0, s1)) = stack.pop() {
            let kind = self.kind(s0, s1);
            let mut accept = self.resolved(s0, s1, kind);
            let mut value = Complex64::new(0.0, 0.0);
            if accept {
                value = self.piece(s0, s1, kind, self.n);
                let check = self.piece(s0, s1, kind, coarse);
                accept = (value - check).norm() <= tol * value.norm() + f64::MIN_POSITIVE;
            }
            if accept {
                total += value;
                continue;
            }
            splits += 1;
            if splits > max_splits {
                return Err(CsError::NonConvergence { splits: max_splits });
            }
            let mid = self.split_point(s0, s1, kind);
            if mid <= s0 || mid >= s1 {
                return Err(CsError::NonConvergence { splits });
            }
            stack.push((mid, s1));
            stack.push((s0, mid));
        }
        Ok(total)
    }
}

/// `int_0^t w^(a-1) (1 - w)^(b-1) dw` along the segment `[0, t]`.
pub fn incomplete_cs_integral(
    a: f64,
    b: f64,
    t: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64, CsError> {
    check_exponents(a, b)?;
    cfg.validate()?;
    check_argument(t)?;
    if t == Complex64::new(0.0, 0.0) {
        return Ok(t);
    }
    PathIntegral {
        a,
        b,
        t,
        n: cfg.node_count,
    }
    .evaluate(cfg.target_rel_error, cfg.max_path_splits)
}

/// `I(a, b; 1) = B(a, b)`.
pub fn complete_beta(a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64, CsError> {
    incomplete_cs_integral(a, b, Complex64::new(1.0, 0.0), cfg).map(|z| z.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CsMapName {
    SquareCell,
    TriangleCoord,
    SquareCoord,
    Custom,
}

impl CsMapName {
    pub fn as_str(self) -> &'static str {
        match self {
            CsMapName::SquareCell => "square_cell",
            CsMapName::TriangleCoord => "triangle_coord",
            CsMapName::SquareCoord => "square_coord",
            CsMapName::Custom => "custom",
        }
    }
}

impl fmt::Display for CsMapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exponents and normalization of one coordinate map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsMapSpec {
    pub name: CsMapName,
    pub a: f64,
    pub b: f64,
    pub prefactor: Complex64,
}

impl CsMapSpec {
    /// Square cell `AOD`: `dw / (w^3 (1 - w)^3)^(1/4)`, scaled by `i`, so
    /// `0 -> A = 0`, `1 -> D = i`, `infinity -> O = (1 + i)/2`.
    pub const SQUARE_CELL: CsMapSpec = CsMapSpec {
        name: CsMapName::SquareCell,
        a: 0.25,
        b: 0.25,
        prefactor: Complex64::new(0.0, 1.0),
    };

    /// Flag triangle of the barycentric subdivision:
    /// `dw / (w^5 (1 - w)^3)^(1/6)`.
    pub const TRIANGLE_COORD: CsMapSpec = CsMapSpec {
        name: CsMapName::TriangleCoord,
        a: 1.0 / 6.0,
        b: 0.5,
        prefactor: Complex64::new(1.0, 0.0),
    };

    /// Quarter-square triangle: `dw / (w^3 (1 - w)^2)^(1/4)`.
    pub const SQUARE_COORD: CsMapSpec = CsMapSpec {
        name: CsMapName::SquareCoord,
        a: 0.25,
        b: 0.5,
        prefactor: Complex64::new(1.0, 0.0),
    };

    pub fn custom(a: f64, b: f64, prefactor: Complex64) -> Result<Self, CsError> {
        check_exponents(a, b)?;
        Ok(CsMapSpec {
            name: CsMapName::Custom,
            a,
            b,
            prefactor,
        })
    }

    pub fn by_name(name: &str) -> Result<Self, CsError> {
        match name {
            "square_cell" => Ok(Self::SQUARE_CELL),
            "triangle_coord" => Ok(Self::TRIANGLE_COORD),
            "square_coord" => Ok(Self::SQUARE_COORD),
            other => Err(CsError::UnknownMap(other.to_string())),
        }
    }

    pub fn named() -> [CsMapSpec; 3] {
        [Self::SQUARE_CELL, Self::TRIANGLE_COORD, Self::SQUARE_COORD]
    }

    /// Images of `0`, `1` and `infinity` when `a + b < 1`; the third
    /// vertex follows from the angles by the law of sines.
    pub fn image_triangle(&self) -> Option<[Complex64; 3]> {
        let c = 1.0 - self.a - self.b;
        if c <= 0.0 {
            return None;
        }
        let p1 = self.prefactor;
        let side = (self.b * PI).sin() / (c * PI).sin();
        let pinf = p1 * Complex64::from_polar(side, -self.a * PI);
        Some([Complex64::new(0.0, 0.0), p1, pinf])
    }
}

const SEED_GRID: usize = 32;
const NEWTON_MAX_ITER: usize = 100;
const NEWTON_RESEEDS: usize = 5;
const INVERSION_RESIDUAL: f64 = 1e-10;

/// A coordinate map with its normalizing constant and (lazily) the grid
/// of forward values used to seed Newton inversion.
#[derive(Debug)]
pub struct CsMap {
    spec: CsMapSpec,
    cfg: QuadratureConfig,
    beta: f64,
    seeds: OnceLock<Vec<(Complex64, Complex64)>>,
}

impl CsMap {
    pub fn new(spec: CsMapSpec, cfg: QuadratureConfig) -> Result<Self, CsError> {
        check_exponents(spec.a, spec.b)?;
        cfg.validate()?;
        let beta = complete_beta(spec.a, spec.b, &cfg)?;
        Ok(CsMap {
            spec,
            cfg,
            beta,
            seeds: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &CsMapSpec {
        &self.spec
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.cfg
    }

    /// `I(a, b; 1)`.
    pub fn complete_beta(&self) -> f64 {
        self.beta
    }

    /// `prefactor * I(a, b; t) / I(a, b; 1)`.
    pub fn eval(&self, t: Complex64) -> Result<Complex64, CsError> {
        let i = incomplete_cs_integral(self.spec.a, self.spec.b, t, &self.cfg)?;
        Ok(self.spec.prefactor * i / self.beta)
    }

    /// Closed-form derivative `prefactor * t^(a-1) (1 - t)^(b-1) / B(a, b)`.
    pub fn derivative(&self, t: Complex64) -> Result<Complex64, CsError> {
        check_argument(t)?;
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        if (t == zero && self.spec.a < 1.0) || (t == one && self.spec.b < 1.0) {
            return Err(CsError::SingularPoint(t));
        }
        Ok(self.spec.prefactor * integrand(self.spec.a, self.spec.b, t) / self.beta)
    }

    fn seeds(&self) -> &[(Complex64, Complex64)] {
        self.seeds.get_or_init(|| {
            let mut out = Vec::with_capacity(SEED_GRID * SEED_GRID);
            for j in 0..SEED_GRID {
                let r = 10f64.powf(-4.0 + 8.0 * j as f64 / (SEED_GRID - 1) as f64);
                for k in 0..SEED_GRID {
                    let theta = -PI * (k as f64 + 0.5) / SEED_GRID as f64;
                    let t = Complex64::from_polar(r, theta);
                    if let Ok(z) = self.eval(t) {
                        out.push((t, z));
                    }
                }
            }
            out
        })
    }

    fn contains(&self, z: Complex64) -> bool {
        let Some([p0, p1, p2]) = self.spec.image_triangle() else {
            return true;
        };
        let scale = (p1 - p0).norm();
        let tol = 1e-12 * scale;
        // interior lies to the right of p0 -> p1 -> p2 -> p0
        let cross = |u: Complex64, v: Complex64, p: Complex64| {
            let d = v - u;
            (d.conj() * (p - u)).im / d.norm()
        };
        cross(p0, p1, z) <= tol && cross(p1, p2, z) <= tol && cross(p2, p0, z) <= tol
    }

    /// Solves `cs_map(t) = z` by damped Newton iteration.
    pub fn invert(&self, z: Complex64) -> Result<Complex64, CsError> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(CsError::NonFinite(z));
        }
        if !self.contains(z) {
            return Err(CsError::OutsideImage(z));
        }
        let zero = Complex64::new(0.0, 0.0);
        let scale = self.spec.prefactor.norm();
        if (z - zero).norm() <= 1e-15 * scale {
            return Ok(zero);
        }
        if (z - self.spec.prefactor).norm() <= 1e-15 * scale {
            return Ok(Complex64::new(1.0, 0.0));
        }

        let mut ranked: Vec<(f64, Complex64)> = self
            .seeds()
            .iter()
            .map(|&(t, w)| ((w - z).norm(), t))
            .collect();
        ranked.sort_by(|x, y| x.0.total_cmp(&y.0));

        let mut best = f64::INFINITY;
        for &(_, seed) in ranked.iter().take(1 + NEWTON_RESEEDS) {
            match self.newton(z, seed) {
                Ok(t) => return Ok(t),
                Err(res) => best = best.min(res),
            }
        }
        Err(CsError::InversionFailed { z, residual: best })
    }

    fn newton(&self, z: Complex64, seed: Complex64) -> Result<Complex64, f64> {
        let admissible = |t: Complex64| {
            !on_cut(t) && t != Complex64::new(0.0, 0.0) && t != Complex64::new(1.0, 0.0)
        };
        let mut t = seed;
        let mut res = match self.eval(t) {
            Ok(w) => (w - z).norm(),
            Err(_) => return Err(f64::INFINITY),
        };
        let target = INVERSION_RESIDUAL * self.spec.prefactor.norm();
        for _ in 0..NEWTON_MAX_ITER {
            let f = self.eval(t).map_err(|_| res)? - z;
            let df = self.derivative(t).map_err(|_| res)?;
            let step = f / df;
            let mut lambda = 1.0;
            let mut accepted = None;
            while lambda >= 1.0 / 1024.0 {
                let cand = t - step * lambda;
                if admissible(cand) {
                    if let Ok(w) = self.eval(cand) {
                        let r = (w - z).norm();
                        if r < res {
                            accepted = Some((cand, r));
                            break;
                        }
                    }
                }
                lambda *= 0.5;
            }
            let Some((cand, r)) = accepted else {
                // no decrease possible: converged to rounding level or stuck
                return if res <= target { Ok(t) } else { Err(res) };
            };
            let moved = (cand - t).norm();
            t = cand;
            res = r;
            if res <= target && moved <= 1e-14 * t.norm().max(1.0) {
                return Ok(t);
            }
        }
        if res <= target {
            Ok(t)
        } else {
            Err(res)
        }
    }
}

/// `cs_map(spec, t)` with a one-off normalization; prefer [`CsMap`] for
/// repeated evaluation.
pub fn cs_map(
    spec: &CsMapSpec,
    t: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64, CsError> {
    CsMap::new(*spec, *cfg)?.eval(t)
}

pub fn cs_map_derivative(
    spec: &CsMapSpec,
    t: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64, CsError> {
    CsMap::new(*spec, *cfg)?.derivative(t)
}

pub fn invert_cs_map(
    spec: &CsMapSpec,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64, CsError> {
    CsMap::new(*spec, *cfg)?.invert(z)
}

/// The change of chart from the equilateral flag triangle to the
/// quarter-square triangle: `Z = square_coord(triangle_coord^-1(z))`.
#[derive(Debug)]
pub struct TriangleToSquare {
    triangle: CsMap,
    square: CsMap,
}

impl TriangleToSquare {
    pub fn new(cfg: QuadratureConfig) -> Result<Self, CsError> {
        Ok(TriangleToSquare {
            triangle: CsMap::new(CsMapSpec::TRIANGLE_COORD, cfg)?,
            square: CsMap::new(CsMapSpec::SQUARE_COORD, cfg)?,
        })
    }

    pub fn triangle_map(&self) -> &CsMap {
        &self.triangle
    }

    pub fn square_map(&self) -> &CsMap {
        &self.square
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64, CsError> {
        let t = self.triangle.invert(z)?;
        self.square.eval(t)
    }
}

pub fn triangle_to_square(z: Complex64, cfg: &QuadratureConfig) -> Result<Complex64, CsError> {
    TriangleToSquare::new(*cfg)?.apply(z)
}

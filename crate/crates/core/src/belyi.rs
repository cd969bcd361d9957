//! Branching data of Belyi functions, the degree-6 barycentric rational map
//! and combinatorial barycentric subdivision.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cartography::Dessin;
use crate::tiling::{
    validate_tricoloring, Shade, TricolorViolation, TricoloredDessin, VertexLabel,
};

/// A point of the Riemann sphere over some field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended<T> {
    Finite(T),
    Infinity,
}

pub type SpherePoint = Extended<Complex64>;

impl<T> Extended<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Extended::Finite(x) => Some(x),
            Extended::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }
}

impl<T: fmt::Display> fmt::Display for Extended<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(x) => x.fmt(f),
            Extended::Infinity => f.write_str("infinity"),
        }
    }
}

/// Field operations needed for exact evaluation of rational maps.
pub trait ExactField:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(num: i64, den: i64) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::from_ratio(0, 1)
    }
}

impl ExactField for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Elements `p + q w` of the Eisenstein field `Q(w)`, `w = exp(i pi/3)`,
/// so that `w^2 = w - 1`. Holds the primitive sixth roots of unity
/// exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub p: BigRational,
    pub q: BigRational,
}

impl Eisenstein {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Eisenstein { p, q }
    }

    /// `exp(i pi/3)`.
    pub fn omega() -> Self {
        Eisenstein::new(BigRational::zero(), BigRational::one())
    }

    pub fn rational(p: BigRational) -> Self {
        Eisenstein::new(p, BigRational::zero())
    }

    /// Complex conjugate: `w -> 1 - w`.
    pub fn conj(&self) -> Self {
        Eisenstein::new(&self.p + &self.q, -self.q.clone())
    }

    /// `|x|^2 = p^2 + p q + q^2`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p + &self.p * &self.q + &self.q * &self.q
    }

    pub fn to_complex(&self) -> Complex64 {
        use num_traits::ToPrimitive;
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        Complex64::new(p + 0.5 * q, q * 3f64.sqrt() / 2.0)
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Eisenstein::new(self.p + o.p, self.q + o.q)
    }
}

impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Eisenstein::new(self.p - o.p, self.q - o.q)
    }
}

impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Eisenstein::new(-self.p, -self.q)
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let qq = &self.q * &o.q;
        let p = &self.p * &o.p - &qq;
        let q = &self.p * &o.q + &self.q * &o.p + qq;
        Eisenstein::new(p, q)
    }
}

impl Div for Eisenstein {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm();
        let num = self * o.conj();
        Eisenstein::new(num.p / &n, num.q / n)
    }
}

impl ExactField for Eisenstein {
    fn from_ratio(num: i64, den: i64) -> Self {
        Eisenstein::rational(BigRational::from_ratio(num, den))
    }
}

/// `N(x) = x^2 - x + 1` and `D(x) = x^2 (1 - x)^2`.
fn numerator_denominator<T: ExactField>(x: &T) -> (T, T) {
    let one = T::from_ratio(1, 1);
    let x2 = x.clone() * x.clone();
    let n = x2.clone() - x.clone() + one.clone();
    let omx = one - x.clone();
    let d = x2 * omx.clone() * omx;
    (n, d)
}

/// Exact value of `beta(x) = (4/27) (x^2 - x + 1)^3 / (x^2 (1 - x)^2)`.
pub fn barycentric_rational_exact<T: ExactField>(x: &Extended<T>) -> Extended<T> {
    let Extended::Finite(x) = x else {
        return Extended::Infinity;
    };
    let (n, d) = numerator_denominator(x);
    if d.is_zero() {
        return Extended::Infinity;
    }
    Extended::Finite(T::from_ratio(4, 27) * n.clone() * n.clone() * n / d)
}

/// Exact derivative `beta'(x) = (4/27) (3 N^2 N' D - N^3 D') / D^2`.
pub fn barycentric_derivative_exact<T: ExactField>(x: &T) -> Extended<T> {
    let (n, d) = numerator_denominator(x);
    if d.is_zero() {
        return Extended::Infinity;
    }
    let one = T::from_ratio(1, 1);
    let two = T::from_ratio(2, 1);
    let three = T::from_ratio(3, 1);
    let dn = two.clone() * x.clone() - one.clone();
    let omx = one - x.clone();
    // D' = 2 x (1 - x) (1 - 2 x)
    let dd = two.clone() * x.clone() * omx.clone() * (omx.clone() - x.clone());
    let n2 = n.clone() * n.clone();
    let num = three * n2.clone() * dn * d.clone() - n2 * n * dd;
    Extended::Finite(T::from_ratio(4, 27) * num / (d.clone() * d))
}

/// Floating-point `beta` on the Riemann sphere. `beta(1/x) = beta(x)` is
/// used for large `|x|` to stay clear of overflow.
pub fn barycentric_rational(x: SpherePoint) -> SpherePoint {
    let Extended::Finite(x) = x else {
        return Extended::Infinity;
    };
    if !x.is_finite() {
        return Extended::Infinity;
    }
    let x = if x.norm() > 1e8 { x.inv() } else { x };
    let one = Complex64::new(1.0, 0.0);
    let d = x * (one - x);
    if d == Complex64::new(0.0, 0.0) {
        return Extended::Infinity;
    }
    let n = x * x - x + one;
    let r = n / d;
    let v = r * r * n * (4.0 / 27.0);
    if v.is_finite() {
        Extended::Finite(v)
    } else {
        Extended::Infinity
    }
}

/// Cycle types of a Belyi function over `0`, `1` and `infinity`, each
/// sorted in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Passport {
    pub degree: usize,
    pub over_zero: Vec<usize>,
    pub over_one: Vec<usize>,
    pub over_infinity: Vec<usize>,
}

impl Passport {
    pub fn new(
        degree: usize,
        mut zero: Vec<usize>,
        mut one: Vec<usize>,
        mut inf: Vec<usize>,
    ) -> Self {
        for v in [&mut zero, &mut one, &mut inf] {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        Passport {
            degree,
            over_zero: zero,
            over_one: one,
            over_infinity: inf,
        }
    }

    pub fn fibers(&self) -> [&[usize]; 3] {
        [&self.over_zero, &self.over_one, &self.over_infinity]
    }
}

fn fmt_parts(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("[{}]", inner.join(","))
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree={} over_0={} over_1={} over_inf={}",
            self.degree,
            fmt_parts(&self.over_zero),
            fmt_parts(&self.over_one),
            fmt_parts(&self.over_infinity)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BelyiError {
    #[error("invalid tricolored dessin: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidTricoloring(Vec<TricolorViolation>),
    #[error("unequal shade counts: {white} white, {black} black")]
    UnequalShades { white: usize, black: usize },
    #[error("inconsistent passport: {0}")]
    InconsistentPassport(String),
    #[error("not a triangulation: face {face} has {size} sides")]
    NotTriangulation { face: usize, size: usize },
}

/// Branching data read off a tricolored dessin: the degree is the number
/// of white triangles and a vertex with `k` incident triangles has local
/// degree `k / 2`.
pub fn passport(t: &TricoloredDessin) -> Result<Passport, BelyiError> {
    let violations = validate_tricoloring(t);
    if !violations.is_empty() {
        return Err(BelyiError::InvalidTricoloring(violations));
    }
    let white = t.face_shade.iter().filter(|&&s| s == Shade::White).count();
    let black = t.face_shade.len() - white;
    if white != black {
        return Err(BelyiError::UnequalShades { white, black });
    }
    let vertices = t.base.vertices();
    let mut fibers: [Vec<usize>; 3] = Default::default();
    for (v, orbit) in vertices.orbits().iter().enumerate() {
        let slot = match t.vertex_label[v] {
            VertexLabel::Zero => 0,
            VertexLabel::One => 1,
            VertexLabel::Infinity => 2,
        };
        fibers[slot].push(orbit.len() / 2);
    }
    let [zero, one, inf] = fibers;
    Ok(Passport::new(white, zero, one, inf))
}

/// Genus from Riemann-Hurwitz: `2 - 2g = 2 deg - sum (part - 1)`.
pub fn riemann_hurwitz_genus(p: &Passport) -> Result<usize, BelyiError> {
    if p.degree == 0 {
        return Err(BelyiError::InconsistentPassport(
            "degree must be positive".into(),
        ));
    }
    for (name, fiber) in ["0", "1", "infinity"].iter().zip(p.fibers()) {
        if fiber.contains(&0) {
            return Err(BelyiError::InconsistentPassport(format!(
                "zero part over {name}"
            )));
        }
        let sum: usize = fiber.iter().sum();
        if sum != p.degree {
            return Err(BelyiError::InconsistentPassport(format!(
                "parts over {name} sum to {sum}, degree is {}",
                p.degree
            )));
        }
    }
    let ramification: i64 = p
        .fibers()
        .iter()
        .flat_map(|f| f.iter())
        .map(|&k| k as i64 - 1)
        .sum();
    let twice_g = 2 - 2 * p.degree as i64 + ramification;
    if twice_g < 0 || twice_g % 2 != 0 {
        return Err(BelyiError::InconsistentPassport(format!(
            "2g = {twice_g} is not a non-negative even number"
        )));
    }
    Ok((twice_g / 2) as usize)
}

/// Barycentric subdivision of a triangulation.
///
/// Each triangle with sides `e0, e1, e2` is cut into six: triangle
/// `(k, 0)` has corners (start of `e_k`, midpoint of `e_k`, barycentre) and
/// triangle `(k, 1)` has corners (midpoint of `e_k`, end of `e_k`,
/// barycentre). Old vertices lie over infinity, edge midpoints over one
/// and barycentres over zero, as under the degree-6 map.
pub fn barycentric_subdivide_triangulation(d: &Dessin) -> Result<TricoloredDessin, BelyiError> {
    let faces = d.faces();
    if let Some((face, orbit)) = faces
        .orbits()
        .iter()
        .enumerate()
        .find(|(_, o)| o.len() != 3)
    {
        return Err(BelyiError::NotTriangulation {
            face,
            size: orbit.len(),
        });
    }
    let mut pos = vec![(0, 0); d.n_darts()];
    for (f, orbit) in faces.orbits().iter().enumerate() {
        for (k, &e) in orbit.iter().enumerate() {
            pos[e] = (f, k);
        }
    }
    let nf = faces.count();
    let dart = |f: usize, k: usize, s: usize, j: usize| 18 * f + 6 * (k % 3) + 3 * s + j;
    let mut rho1 = vec![0; 18 * nf];
    let mut rho2 = vec![0; 18 * nf];
    let mut origin = vec![VertexLabel::Zero; 18 * nf];
    for f in 0..nf {
        for k in 0..3 {
            for s in 0..2 {
                for j in 0..3 {
                    rho2[dart(f, k, s, j)] = dart(f, k, s, (j + 1) % 3);
                }
            }
            // midpoint -> barycentre against barycentre -> midpoint
            rho1[dart(f, k, 0, 1)] = dart(f, k, 1, 2);
            rho1[dart(f, k, 1, 2)] = dart(f, k, 0, 1);
            // end of e_k -> barycentre against barycentre -> start of e_{k+1}
            rho1[dart(f, k, 1, 1)] = dart(f, k + 1, 0, 2);
            rho1[dart(f, k + 1, 0, 2)] = dart(f, k, 1, 1);
            // first half of e_k against the second half of its twin
            let (g, k2) = pos[d.rho1()[faces.orbit(f)[k]]];
            rho1[dart(f, k, 0, 0)] = dart(g, k2, 1, 0);
            rho1[dart(g, k2, 1, 0)] = dart(f, k, 0, 0);

            origin[dart(f, k, 0, 0)] = VertexLabel::Infinity;
            origin[dart(f, k, 0, 1)] = VertexLabel::One;
            origin[dart(f, k, 1, 0)] = VertexLabel::One;
            origin[dart(f, k, 1, 1)] = VertexLabel::Infinity;
        }
    }
    let base = Dessin::from_faces(rho1, rho2).expect("subdivision of a valid triangulation");
    Ok(TricoloredDessin::from_origin_labels(base, &origin))
}

/// Barycentric subdivision of a tricolored dessin; the Belyi function of
/// the result is `beta . beta0`.
pub fn barycentric_subdivide(t: &TricoloredDessin) -> Result<TricoloredDessin, BelyiError> {
    let violations = validate_tricoloring(t);
    if !violations.is_empty() {
        return Err(BelyiError::InvalidTricoloring(violations));
    }
    barycentric_subdivide_triangulation(&t.base)
}

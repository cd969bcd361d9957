//! Passports, Riemann-Hurwitz and the rational function
//! beta(x) = 4/27 (x^2 - x + 1)^3 / (x^2 (1 - x)^2).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use squaretile::belyi::{
    barycentric_derivative_exact, barycentric_rational, barycentric_rational_exact,
    barycentric_subdivide, barycentric_subdivide_triangulation, passport, riemann_hurwitz_genus,
    Eisenstein, Extended,
};
use squaretile::fixtures;
use squaretile::tiling::{corner_bipartition, diagonal_subdivision};

fn main() {
    let grid = fixtures::torus_grid(2, 2);
    let labels = corner_bipartition(&grid).unwrap();
    let t = diagonal_subdivision(&grid, &labels).unwrap();
    let p = passport(&t).unwrap();
    println!(
        "2x2 torus grid: {p}, genus {}",
        riemann_hurwitz_genus(&p).unwrap()
    );

    let s = barycentric_subdivide(&t).unwrap();
    let q = passport(&s).unwrap();
    println!(
        "subdivided again: degree {}, genus {}",
        q.degree,
        riemann_hurwitz_genus(&q).unwrap()
    );

    let tet = barycentric_subdivide_triangulation(&fixtures::tetrahedron()).unwrap();
    let p = passport(&tet).unwrap();
    println!(
        "tetrahedron flags: {p}, genus {}",
        riemann_hurwitz_genus(&p).unwrap()
    );

    println!("\nexact values:");
    for (n, d) in [(1, 2), (-1, 1), (2, 1), (3, 1)] {
        let x = BigRational::new(BigInt::from(n), BigInt::from(d));
        let v = barycentric_rational_exact(&Extended::Finite(x.clone()));
        let dv = barycentric_derivative_exact(&x);
        println!("  beta({x}) = {v}, beta'({x}) = {dv}");
    }
    let w = barycentric_rational_exact(&Extended::Finite(Eisenstein::omega()));
    println!("  beta(exp(i pi/3)) = {}", w.finite().unwrap().to_complex());

    let x = Complex64::new(0.3, -1.2);
    let b = |z| barycentric_rational(Extended::Finite(z)).finite().unwrap();
    println!("\nbeta(x) = {:.12}", b(x));
    println!("beta(1 - x) = {:.12}", b(Complex64::new(1.0, 0.0) - x));
    println!("beta(1 / x) = {:.12}", b(x.inv()));
}

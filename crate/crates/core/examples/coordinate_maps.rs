//! The three normalized coordinate maps and their inverses.

use num_complex::Complex64;

use squaretile::csmap::{complete_beta, CsMap, CsMapSpec, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();
    println!(
        "B(1/4, 1/4) = {:.12}",
        complete_beta(0.25, 0.25, &cfg).unwrap()
    );
    println!(
        "B(1/2, 1/2) = {:.12}",
        complete_beta(0.5, 0.5, &cfg).unwrap()
    );

    for spec in CsMapSpec::named() {
        let m = CsMap::new(spec, cfg).unwrap();
        let corners = spec.image_triangle().unwrap();
        println!("\n{} (a = {:.4}, b = {:.4})", spec.name, spec.a, spec.b);
        println!(
            "  triangle: {:.6}, {:.6}, {:.6}",
            corners[0], corners[1], corners[2]
        );
        for t in [0.5, 1.0, -1.0, -1e4, -1e8] {
            let z = m.eval(Complex64::new(t, 0.0)).unwrap();
            println!("  t = {t:<8} z = {z:.9}");
        }
        let t = Complex64::new(0.4, -0.7);
        let z = m.eval(t).unwrap();
        let back = m.invert(z).unwrap();
        println!("  invert(z({t})) = {back:.12}");
    }
}

//! Moving points from the equilateral flag triangle to the square picture.

use num_complex::Complex64;

use squaretile::csmap::{QuadratureConfig, TriangleToSquare};

fn main() {
    let tts = TriangleToSquare::new(QuadratureConfig::default()).unwrap();
    let corners = tts.triangle_map().spec().image_triangle().unwrap();
    println!(
        "source triangle: {:.6} {:.6} {:.6}",
        corners[0], corners[1], corners[2]
    );

    for k in 0..=4 {
        let x = k as f64 / 4.0;
        let z = tts.apply(Complex64::new(x, 0.0)).unwrap();
        println!("  {x:<5} -> {z:.9}");
    }

    // the centroid of the triangle and a few interior points
    let centroid = (corners[0] + corners[1] + corners[2]) / 3.0;
    for z in [
        centroid,
        Complex64::new(0.5, -0.1),
        Complex64::new(0.9, -0.45),
    ] {
        println!("  {z:.4} -> {:.9}", tts.apply(z).unwrap());
    }
}

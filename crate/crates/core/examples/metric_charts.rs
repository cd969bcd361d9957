//! Flat structures: chart transitions, closed faces and cone angles.

use std::f64::consts::PI;

use squaretile::fixtures;
use squaretile::metric::{chart_transition, cone_angle, face_closure_residual, MetricData, Word};
use squaretile::CellIndex;

fn main() {
    let d = fixtures::torus_grid(2, 2);
    let m = MetricData::square(&d).unwrap();

    for word in ["r0", "r1", "r1 r1", "r0^-1 r1 r0^-1 r1 r0^-1 r1 r0^-1 r1"] {
        let w: Word = word.parse().unwrap();
        let (end, chart) = chart_transition(&d, &m, 0, &w).unwrap();
        let show = |c: num_complex::Complex64| format!("{:.3}{:+.3}i", c.re + 0.0, c.im + 0.0);
        println!(
            "{word:<36} dart 0 -> {end:<2} z -> ({}) z + ({})",
            show(chart.a),
            show(chart.b)
        );
    }

    println!();
    for v in 0..d.vertices().count() {
        let angle = cone_angle(&d, &m, CellIndex::vertex(v)).unwrap();
        println!("vertex {v}: cone angle {:.4} pi", angle / PI);
    }

    // stretch one side of the first square: that face no longer closes
    let mut lengths = m.lengths().to_vec();
    lengths[1] = 1.1;
    lengths[d.rho1()[1]] = 1.1;
    let bent = MetricData::new(&d, lengths, m.angles().to_vec()).unwrap();
    for f in 0..d.faces().count() {
        let (pos, heading) = face_closure_residual(&d, &bent, CellIndex::face(f)).unwrap();
        println!(
            "face {f}: position residual {:.3}, heading residual {heading:.3}",
            pos.norm()
        );
    }

    let tet = fixtures::tetrahedron();
    let eq = MetricData::equilateral(&tet).unwrap();
    let v0 = cone_angle(&tet, &eq, CellIndex::vertex(0)).unwrap();
    println!(
        "\nequilateral tetrahedron: cone angle {:.4} pi at every vertex",
        v0 / PI
    );
}

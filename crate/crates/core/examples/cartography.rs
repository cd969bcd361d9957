//! Cells, genus and isomorphism of dessins given by permutation pairs.

use squaretile::cartography::{is_isomorphic, Dessin};
use squaretile::fixtures;

fn describe(name: &str, d: &Dessin) {
    let (v, e, f) = d.cell_counts();
    println!(
        "{name:<18} darts={:<3} V={v} E={e} F={f} genus={}",
        d.n_darts(),
        d.genus()
    );
}

fn main() {
    describe("one-square torus", &fixtures::one_square_torus());
    describe("tetrahedron", &fixtures::tetrahedron());
    describe("cube", &fixtures::cube());
    describe("3x2 torus grid", &fixtures::torus_grid(3, 2));

    // a dessin straight from its permutations: rho0 rotates darts around
    // their vertex, rho1 flips each dart along its edge
    let segment = Dessin::new(vec![0, 1], vec![1, 0]).unwrap();
    describe("segment", &segment);

    let d = fixtures::tetrahedron();
    println!("\nfaces of the tetrahedron as dart cycles:");
    for (id, orbit) in d.faces().orbits().iter().enumerate() {
        println!("  face {id}: {orbit:?}");
    }

    // broken input is reported dart by dart
    match Dessin::new(vec![0, 1, 2, 3], vec![1, 0, 2, 3]) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nrejected: {e}"),
    }

    let wide = fixtures::origami(&[1, 0], &[0, 1]).unwrap();
    let tall = fixtures::origami(&[0, 1], &[1, 0]).unwrap();
    let slanted = fixtures::origami(&[1, 0], &[1, 0]).unwrap();
    println!("\ntwo-square origamis:");
    println!("  wide ~ tall:    {}", is_isomorphic(&wide, &tall));
    println!("  wide ~ slanted: {}", is_isomorphic(&wide, &slanted));
}

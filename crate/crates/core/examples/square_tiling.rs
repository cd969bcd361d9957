//! From a square tiling to a tricolored triangulation.

use squaretile::fixtures;
use squaretile::tiling::{
    corner_bipartition, diagonal_subdivision, refine_2x2, validate_tricoloring,
};

fn main() {
    let torus = fixtures::one_square_torus();
    match corner_bipartition(&torus) {
        Ok(_) => println!("one-square torus is bipartite"),
        Err(e) => println!("one-square torus: {e}"),
    }

    let refined = refine_2x2(&torus).unwrap();
    let (v, e, f) = refined.cell_counts();
    println!(
        "after refinement: V={v} E={e} F={f} genus={}",
        refined.genus()
    );

    let labels = corner_bipartition(&refined).unwrap();
    println!("corner labels: {labels:?}");

    let t = diagonal_subdivision(&refined, &labels).unwrap();
    let (v, e, f) = t.base.cell_counts();
    println!("diagonal subdivision: V={v} E={e} F={f}");
    println!("edge colors:  {:?}", t.edge_color);
    println!("face shades:  {:?}", t.face_shade);
    println!("violations:   {}", validate_tricoloring(&t).len());

    let cube = fixtures::cube();
    let labels = corner_bipartition(&cube).unwrap();
    let t = diagonal_subdivision(&cube, &labels).unwrap();
    println!(
        "\ncube: {} triangles, {} violations",
        t.base.faces().count(),
        validate_tricoloring(&t).len()
    );
}

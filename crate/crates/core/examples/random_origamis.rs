//! Statistics over random origamis: genus, bipartiteness and the passport
//! of their diagonal subdivision.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::SeedableRng;

use squaretile::belyi::{passport, riemann_hurwitz_genus};
use squaretile::cartography::Dessin;
use squaretile::fixtures::random_origami;
use squaretile::tiling::{corner_bipartition, diagonal_subdivision, refine_2x2};

fn main() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut by_genus: BTreeMap<usize, usize> = BTreeMap::new();
    let mut bipartite = 0;
    let samples = 500;
    for _ in 0..samples {
        let d = random_origami(6, &mut rng);
        *by_genus.entry(d.genus()).or_default() += 1;
        if corner_bipartition(&d).is_ok() {
            bipartite += 1;
        }
    }
    println!("{samples} random 6-square origamis");
    for (g, count) in &by_genus {
        println!("  genus {g}: {count}");
    }
    println!("  bipartite corner graph: {bipartite}");

    // distinct origamis up to isomorphism among 3-square samples
    let mut classes: Vec<Dessin> = Vec::new();
    for _ in 0..300 {
        let d = random_origami(3, &mut rng);
        if !classes
            .iter()
            .any(|c| squaretile::cartography::is_isomorphic(c, &d))
        {
            classes.push(d);
        }
    }
    println!(
        "\n3-square origamis seen up to isomorphism: {}",
        classes.len()
    );

    let d = random_origami(5, &mut rng);
    let r = refine_2x2(&d).unwrap();
    let t = diagonal_subdivision(&r, &corner_bipartition(&r).unwrap()).unwrap();
    let p = passport(&t).unwrap();
    println!("\none 5-square origami, refined and subdivided: {p}");
    println!(
        "Riemann-Hurwitz genus {} (surface genus {})",
        riemann_hurwitz_genus(&p).unwrap(),
        d.genus()
    );
}

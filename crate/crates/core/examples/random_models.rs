//! Seeded samplers: G(n, p), G(n, m), random regular graphs and labeled trees.

use treedepth::random::{prufer_encode, ModelParams, RandomSeed};

fn main() {
    let seed = RandomSeed::new(2024, 0);
    let models = [
        ("G(12, 0.3)", ModelParams::Gnp { n: 12, p: 0.3 }),
        ("G(1000, 1.5/n)", ModelParams::sparse(1000, 1.5).unwrap()),
        ("G(12, 20 edges)", ModelParams::Gnm { n: 12, m: 20 }),
        ("3-regular on 12", ModelParams::Regular { n: 12, d: 3 }),
        ("labeled tree on 12", ModelParams::LabeledTree { k: 12 }),
    ];
    for (name, model) in models {
        let g = model.sample(seed).unwrap();
        println!("{name}: {} vertices, {} edges", g.order(), g.size());
    }
    let tree = ModelParams::LabeledTree { k: 8 }.sample(seed).unwrap();
    println!("tree edges: {:?}", tree.edges().collect::<Vec<_>>());
    println!("Prüfer code: {:?}", prufer_encode(&tree).unwrap());
    let again = ModelParams::LabeledTree { k: 8 }.sample(seed).unwrap();
    assert_eq!(tree, again);
}

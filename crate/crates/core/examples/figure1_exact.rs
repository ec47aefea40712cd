//! The path on 15 vertices and K_4 both have tree-depth 4.

use treedepth::exact::{treedepth_exact, Witness};
use treedepth::Graph;

fn main() {
    for (name, g) in [("P_15", Graph::path(15)), ("K_4", Graph::complete(4))] {
        let r = treedepth_exact(&g).unwrap();
        println!("td({name}) = {}", r.value);
        if let Witness::Forest(f) = r.witness {
            println!("elimination forest (vertex parent):\n{f}");
        }
    }
}

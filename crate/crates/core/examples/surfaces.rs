//! Surface types: modular dimension, cuts and the low-complexity pairs with
//! isomorphic curve complexes.

use curvex::surface::{cut_type, exceptional_partners, Cut, SurfaceType};
use curvex::SurfaceSpec;

fn main() {
    for (g, n) in [(0, 4), (1, 1), (1, 2), (0, 5), (2, 0), (0, 6)] {
        let t = SurfaceType::new(g, n);
        let d = t.modular_dimension().unwrap();
        let partners: Vec<String> = exceptional_partners(t).unwrap().iter().map(|p| p.to_string()).collect();
        println!("({t}) dimension {d}, partners [{}]", partners.join(" "));
    }

    let t = SurfaceType::new(1, 2);
    let sep = Cut::Separating(SurfaceType::new(1, 1), SurfaceType::new(0, 3));
    for (name, kind) in [("nonseparating", Cut::Nonseparating), ("separating", sep)] {
        match cut_type(t, kind) {
            Ok(s) => println!("({t}) {name} cut -> {s}, dimension {}", s.modular_dimension().unwrap()),
            Err(e) => println!("({t}) {name} cut: {e}"),
        }
    }

    let s: SurfaceSpec = "1,1+0,4+0,3".parse().unwrap();
    println!("{s}: dimension {}, {} pants", s.modular_dimension().unwrap(), s.pants_count());
}

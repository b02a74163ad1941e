//! Automorphism groups of the level quotients, split by orientation, and
//! where the modular group lands inside them.

use curvex::graph::automorphism_group;
use curvex::level::farey_level;
use curvex::tower::psl2_image_in_aut;

fn main() {
    for m in 2..=8 {
        let c = farey_level(m).unwrap();
        let edges_only = automorphism_group(&c, false).unwrap();
        let aut = automorphism_group(&c, true).unwrap();
        let img = psl2_image_in_aut(m).unwrap();
        println!(
            "m={m}: |Aut graph|={} |Aut|={} |Aut+|={} image={} index={:?} inside={}",
            edges_only.order,
            aut.order,
            aut.orientation_preserving_order,
            img.image_order,
            img.index_in_aut_plus,
            img.inside_orientation_preserving
        );
    }
}

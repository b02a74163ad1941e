//! A truncated tower of level quotients and the automorphisms of its top
//! stage that descend through every projection.

use curvex::tower::{build_tower, compatible_automorphisms};
use curvex::SurfaceSpec;

fn main() {
    let spec = SurfaceSpec::single(1, 1);
    for levels in [vec![2, 4], vec![2, 4, 8], vec![2, 3, 6], vec![3, 9]] {
        let t = build_tower(&spec, &levels).unwrap();
        let g = compatible_automorphisms(&t).unwrap();
        let sizes: Vec<String> = t.stages.iter().map(|(m, c)| format!("{m}:{}", c.vertex_count())).collect();
        println!(
            "{levels:?}: stages {} | composition {} | compatible order {} verified {}",
            sizes.join(" "),
            t.composition_law_holds(),
            g.group.order,
            g.verified
        );
    }
}

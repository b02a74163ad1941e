//! Congruence quotients of the Farey tessellation for a range of levels,
//! with genus and a comparison against a projected Farey ball.

use curvex::level::{farey_level, psl2_enumerate, verify_against_ball};

fn main() {
    println!("{:>3} {:>6} {:>5} {:>5} {:>5} {:>6}", "m", "|PSL|", "V", "E", "T", "genus");
    for m in 2..=13 {
        let order = psl2_enumerate(m).unwrap().order();
        let c = farey_level(m).unwrap();
        assert!(c.is_closed_surface());
        let genus = (2 - c.euler_characteristic()) / 2;
        println!(
            "{m:>3} {order:>6} {:>5} {:>5} {:>5} {genus:>6}",
            c.vertex_count(),
            c.edge_count(),
            c.triangle_count()
        );
    }

    let r = verify_against_ball(5, 12).unwrap();
    println!(
        "ball of depth 12 mod 5: matches {}, stabilized {}, {} of {} edges",
        r.matches, r.stabilized, r.edges_found, r.edges_expected
    );

    let c = farey_level(5).unwrap();
    println!("level 5 labels: {}", c.labels().join(", "));
}

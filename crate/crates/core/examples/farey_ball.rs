//! Grow the Farey tessellation around the base edge and check a few slopes.
//!
//!     cargo run --example farey_ball -- 4

use curvex::farey::{farey_ball, is_elementary_move, moebius_act, slope_det, slopes_of, Psl2Matrix, Slope};
use curvex::surface::SurfaceType;

fn main() {
    let depth: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let ball = farey_ball(depth).expect("depth within limits");
    println!(
        "depth {depth}: {} slopes, {} edges, {} triangles",
        ball.vertex_count(),
        ball.edge_count(),
        ball.triangle_count()
    );

    let slopes = slopes_of(&ball).unwrap();
    let shown: Vec<String> = slopes.iter().take(12).map(Slope::to_string).collect();
    println!("first slopes: {}", shown.join(" "));

    let a: Slope = "2/5".parse().unwrap();
    let b: Slope = "1/3".parse().unwrap();
    let one_one = SurfaceType::new(1, 1);
    let four_punct = SurfaceType::new(0, 4);
    println!("det({a}, {b}) = {}", slope_det(a, b));
    println!(
        "elementary move on (1,1): {}, on (0,4): {}",
        is_elementary_move(one_one, a, b).unwrap(),
        is_elementary_move(four_punct, a, b).unwrap()
    );

    let g = Psl2Matrix::T * Psl2Matrix::S;
    println!("TS sends {a} to {}", moebius_act(g, a));
}

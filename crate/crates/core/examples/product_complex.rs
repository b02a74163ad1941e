//! Pants graph and complete graph of a disconnected surface at a finite
//! level, with the coordinate structure of the product.

use curvex::product::{level_factors, product_pants, product_star, subcomplex_intersection, subcomplex_of_cut};
use curvex::{Limits, SurfaceSpec};

fn main() {
    let spec: SurfaceSpec = std::env::args().nth(1).unwrap_or_else(|| "1,1+0,4+0,3".into()).parse().unwrap();
    let m = 3;
    let limits = Limits::default();

    let pants = product_pants(&level_factors(&spec, m, false, &limits).unwrap()).unwrap();
    let star = product_star(&level_factors(&spec, m, true, &limits).unwrap()).unwrap();
    println!("surface {spec}, level {m}, factor sizes {:?}", pants.sizes());
    println!(
        "pants: {} vertices, {} edges, {} triangles",
        pants.vertex_count(),
        pants.flattened.edge_count(),
        pants.flattened.triangle_count()
    );
    println!("star:  {} vertices, {} edges", star.vertex_count(), star.flattened.edge_count());
    println!("vertex 7 is {} = {:?}", pants.flattened.label(7), pants.tuple_of(7));

    // fix the curve on the (0,4) piece, then also the one on the (1,1) piece
    let rho = vec![None, Some(0), None];
    let sigma = vec![None, None, Some(2)];
    let a = subcomplex_of_cut(&star, &rho).unwrap();
    let both = subcomplex_intersection(&star, &rho, &sigma).unwrap();
    println!("cut {rho:?}: {} vertices; with {sigma:?}: {}", a.vertex_count(), both.vertex_count());
}

//! Recover the curve complex of a disjoint union from the complete graph
//! of its pants decompositions alone.

use curvex::product::{direct_curve_complex, product_star};
use curvex::reconstruct::{fibers_through, local_dimension, maximal_subsurface_subgraphs, reconstruct_curve_complex};
use curvex::simplicial::simplicially_isomorphic;
use curvex::level::gstar_level;
use curvex::Complex2;

fn main() {
    let factors = vec![gstar_level(3).unwrap(), Complex2::complete_graph(3), Complex2::point()];
    let c = product_star(&factors).unwrap().flattened;
    println!("input: {} vertices, {} edges", c.vertex_count(), c.edge_count());
    println!("local dimension at 0: {}", local_dimension(&c, 0).unwrap());
    for f in fibers_through(&c, 0).unwrap() {
        println!("  fiber {f:?}");
    }

    let family = maximal_subsurface_subgraphs(&c).unwrap();
    println!("members by dimension: {:?}", family.by_dimension());
    println!("inclusions: {}", family.inclusion_order.len());

    let rebuilt = reconstruct_curve_complex(&c).unwrap();
    let direct = direct_curve_complex(&factors).unwrap();
    println!("rebuilt f-vector {:?}, direct {:?}", rebuilt.f_vector(), direct.f_vector());
    println!("isomorphic: {}", simplicially_isomorphic(&rebuilt, &direct).is_some());
}

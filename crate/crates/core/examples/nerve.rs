use curvex::graph::{graph_isomorphic, nerve};
use curvex::product::product_star;
use curvex::Complex2;

fn main() {
    let k3 = Complex2::complete_graph(3);
    let p = product_star(&[k3.clone(), k3]).unwrap().flattened;
    let cover = p.fibers().unwrap();
    let n = nerve(&p, &cover).unwrap();
    println!("{} fibers, nerve has {} edges", cover.len(), n.edge_count());

    let k33 = Complex2::new(
        (0..6).map(|i| i.to_string()).collect(),
        (0..3).flat_map(|a| (3..6).map(move |b| [a, b])).collect(),
        vec![],
    )
    .unwrap();
    println!("nerve is K3,3: {}", graph_isomorphic(&n, &k33).is_some());
    print!("{}", n.to_dot());
}

//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library except to read the complexes being checked.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use curvex::level::{farey_level, gstar_level};
use curvex::Complex2;

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `|PSL2(Z/m)|` by counting all quadruples with determinant 1.
pub fn psl_order(m: i64) -> usize {
    let mut sl = 0;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if (a * d - b * c - 1).rem_euclid(m) == 0 {
                        sl += 1;
                    }
                }
            }
        }
    }
    if m == 2 {
        sl
    } else {
        sl / 2
    }
}

/// A class `±(p, q)` mod `m`, as the smaller representative.
pub fn class(m: i64, p: i64, q: i64) -> (i64, i64) {
    let a = (p.rem_euclid(m), q.rem_euclid(m));
    let b = ((-p).rem_euclid(m), (-q).rem_euclid(m));
    a.min(b)
}

/// Reads `"(p:q) mod m"`.
pub fn parse_class(label: &str) -> (i64, i64, i64) {
    let rest = label.strip_prefix('(').expect("label starts with (");
    let (pair, m) = rest.split_once(") mod ").expect("label has modulus");
    let (p, q) = pair.split_once(':').expect("label has a colon");
    (p.parse().unwrap(), q.parse().unwrap(), m.parse().unwrap())
}

pub fn sorted2(a: usize, b: usize) -> [usize; 2] {
    [a.min(b), a.max(b)]
}

pub fn rotate_min(t: [usize; 3]) -> [usize; 3] {
    let i = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
}

pub fn edge_set(c: &Complex2) -> BTreeSet<[usize; 2]> {
    c.edges().iter().map(|e| sorted2(e[0], e[1])).collect()
}

pub fn edge_multiset(c: &Complex2) -> BTreeMap<[usize; 2], usize> {
    let mut out = BTreeMap::new();
    for e in c.edges() {
        *out.entry(sorted2(e[0], e[1])).or_default() += 1;
    }
    out
}

/// Closed, oriented, every vertex link one cycle. Returns a reason on
/// failure.
pub fn closed_oriented_surface(c: &Complex2) -> Result<(), String> {
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    let mut per_edge: HashMap<[usize; 2], usize> = HashMap::new();
    let mut link: BTreeMap<usize, Vec<[usize; 2]>> = BTreeMap::new();
    for t in c.triangles() {
        for k in 0..3 {
            let (a, b, o) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
            *directed.entry((a, b)).or_default() += 1;
            *per_edge.entry(sorted2(a, b)).or_default() += 1;
            link.entry(o).or_default().push(sorted2(a, b));
        }
    }
    for e in edge_set(c) {
        if per_edge.get(&e) != Some(&2) {
            return Err(format!("edge {e:?} lies in {:?} triangles", per_edge.get(&e)));
        }
    }
    if let Some((d, n)) = directed.iter().find(|(_, &n)| n != 1) {
        return Err(format!("directed edge {d:?} used {n} times"));
    }
    for v in 0..c.vertex_count() {
        let arcs = link.get(&v).ok_or(format!("vertex {v} in no triangle"))?;
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for a in arcs {
            adj.entry(a[0]).or_default().push(a[1]);
            adj.entry(a[1]).or_default().push(a[0]);
        }
        if adj.values().any(|n| n.len() != 2) {
            return Err(format!("link of {v} is not 2-regular"));
        }
        let start = arcs[0][0];
        let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
        while cur != start {
            let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = next;
            steps += 1;
        }
        if steps != adj.len() {
            return Err(format!("link of {v} is not a single cycle"));
        }
    }
    Ok(())
}

pub fn euler(c: &Complex2) -> i64 {
    c.vertex_count() as i64 - edge_set(c).len() as i64 + c.triangle_count() as i64
}

/// Builds a complex from triangles, adding their edges.
pub fn from_triangles(n: usize, tris: &[[usize; 3]]) -> Complex2 {
    let edges: BTreeSet<[usize; 2]> = tris
        .iter()
        .flat_map(|t| [sorted2(t[0], t[1]), sorted2(t[1], t[2]), sorted2(t[0], t[2])])
        .collect();
    Complex2::new(
        (0..n).map(|i| format!("v{i}")).collect(),
        edges.into_iter().collect(),
        tris.to_vec(),
    )
    .unwrap()
}

pub fn hand_tetrahedron() -> Complex2 {
    from_triangles(4, &[[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]])
}

pub fn hand_octahedron() -> Complex2 {
    // poles 0, 5; equator 1 2 3 4
    let mut t = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        t.push([0, a, b]);
        t.push([5, b, a]);
    }
    from_triangles(6, &t)
}

pub fn hand_icosahedron() -> Complex2 {
    // 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut t = Vec::new();
    for i in 0..5 {
        t.push([0, u(i), u(i + 1)]);
        t.push([u(i), l(i), u(i + 1)]);
        t.push([u(i + 1), l(i), l(i + 1)]);
        t.push([11, l(i + 1), l(i)]);
    }
    from_triangles(12, &t)
}

pub struct Factor {
    pub name: &'static str,
    pub pants: Complex2,
    pub star: Complex2,
}

pub fn catalog() -> Vec<Factor> {
    let mut out = Vec::new();
    for (name, m) in [("F(2)", 2), ("F(3)", 3), ("F(5)", 5)] {
        out.push(Factor {
            name,
            pants: farey_level(m).unwrap(),
            star: gstar_level(m).unwrap(),
        });
    }
    for (name, n) in [("K3", 3), ("K4", 4)] {
        out.push(Factor {
            name,
            pants: Complex2::complete_graph(n),
            star: Complex2::complete_graph(n),
        });
    }
    out.push(Factor {
        name: "point",
        pants: Complex2::point(),
        star: Complex2::point(),
    });
    out
}

/// Every ordered list of catalog indices of length 1..=max_len.
pub fn ordered_lists(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..max_len {
        out = out
            .iter()
            .flat_map(|l| {
                (0..n).map(move |i| {
                    let mut l = l.clone();
                    l.push(i);
                    l
                })
            })
            .collect();
        all.extend(out.iter().cloned());
    }
    all
}

/// All tuples over `sizes`, last coordinate fastest.
pub fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Edge multiset of a product by checking every pair of tuples.
pub fn brute_product_edges(factors: &[Complex2], star: bool) -> BTreeMap<[usize; 2], usize> {
    let sizes: Vec<usize> = factors.iter().map(Complex2::vertex_count).collect();
    let all = tuples(&sizes);
    let mut out = BTreeMap::new();
    for (x, a) in all.iter().enumerate() {
        for (y, b) in all.iter().enumerate().skip(x + 1) {
            let diff: Vec<usize> = (0..sizes.len()).filter(|&i| a[i] != b[i]).collect();
            if diff.len() != 1 {
                continue;
            }
            let i = diff[0];
            let mult = if star {
                1
            } else {
                let e = sorted2(a[i], b[i]);
                factors[i].edges().iter().filter(|f| sorted2(f[0], f[1]) == e).count()
            };
            if mult > 0 {
                out.insert([x, y], mult);
            }
        }
    }
    out
}

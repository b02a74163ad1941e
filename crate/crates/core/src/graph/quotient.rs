//! Quotients of complexes by groups of automorphisms.
//!
//! Orbits of edges or triangles whose vertices collapse are dropped and
//! counted in the `collapsed_edges` / `collapsed_triangles` metadata.

use std::collections::{BTreeSet, HashMap};

use super::{canonical_cycle, reversed_cycle, sorted_pair, sorted_triple, Complex2, GraphError, VertexPermutation, META_FLAVOR};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            y = std::mem::replace(&mut self.0[y], r);
        }
        r
    }

    /// Keeps the smaller root so that every root is its class minimum.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }

    /// Class index of every element, classes numbered by their least member.
    fn classes(&mut self) -> (Vec<usize>, Vec<usize>) {
        let n = self.0.len();
        let mut index = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut of = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if index[r] == usize::MAX {
                index[r] = reps.len();
                reps.push(r);
            }
            of[x] = index[r];
        }
        (of, reps)
    }
}

/// A quotient complex together with the projection of vertices onto orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub complex: Complex2,
    pub vertex_map: Vec<usize>,
}

impl Quotient {
    /// The permutation of orbits induced by `p`. Fails unless `p` maps every
    /// orbit into a single orbit.
    pub fn induced_action(&self, p: &VertexPermutation) -> Result<VertexPermutation, GraphError> {
        let k = self.complex.vertex_count();
        let mut image = vec![usize::MAX; k];
        for (x, &o) in self.vertex_map.iter().enumerate() {
            let t = self.vertex_map[p.apply(x)];
            if image[o] == usize::MAX {
                image[o] = t;
            } else if image[o] != t {
                return Err(GraphError::IllDefinedAction);
            }
        }
        VertexPermutation::new(image).map_err(|_| GraphError::IllDefinedAction)
    }
}

pub fn quotient_by_action(c: &Complex2, gens: &[VertexPermutation]) -> Result<Complex2, GraphError> {
    quotient_with_map(c, gens).map(|q| q.complex)
}

/// Quotient of `c` by the group generated by `gens`, which must be
/// automorphisms. Orbits are numbered and labeled by their least member.
pub fn quotient_with_map(c: &Complex2, gens: &[VertexPermutation]) -> Result<Quotient, GraphError> {
    for g in gens {
        if !g.is_automorphism_of(c) {
            return Err(GraphError::NotAnAutomorphism);
        }
    }
    let n = c.vertex_count();
    let mut vuf = UnionFind::new(n);
    for g in gens {
        for x in 0..n {
            vuf.union(x, g.apply(x));
        }
    }
    let (vertex_map, vreps) = vuf.classes();

    // edges: parallel edges are matched by rank within their vertex pair
    let mut by_pair: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
    let mut edge_rank = vec![0; c.edge_count()];
    for (i, e) in c.edges().iter().enumerate() {
        let list = by_pair.entry(sorted_pair(e[0], e[1])).or_default();
        edge_rank[i] = list.len();
        list.push(i);
    }
    let mut euf = UnionFind::new(c.edge_count());
    for g in gens {
        for (i, e) in c.edges().iter().enumerate() {
            let j = by_pair[&sorted_pair(g.apply(e[0]), g.apply(e[1]))][edge_rank[i]];
            euf.union(i, j);
        }
    }
    let (_, ereps) = euf.classes();
    let mut edges = Vec::new();
    let mut collapsed_edges = 0;
    for &r in &ereps {
        let [a, b] = c.edges()[r];
        if vertex_map[a] == vertex_map[b] {
            collapsed_edges += 1;
        } else {
            edges.push([vertex_map[a], vertex_map[b]]);
        }
    }

    // triangles: matched by orientation class and rank inside their vertex set
    let mut by_orient: HashMap<[usize; 3], Vec<usize>> = HashMap::new();
    let mut tri_rank = vec![0; c.triangle_count()];
    for (i, t) in c.triangles().iter().enumerate() {
        let list = by_orient.entry(canonical_cycle(*t)).or_default();
        tri_rank[i] = list.len();
        list.push(i);
    }
    let mut tuf = UnionFind::new(c.triangle_count());
    for g in gens {
        for (i, t) in c.triangles().iter().enumerate() {
            let img = canonical_cycle([g.apply(t[0]), g.apply(t[1]), g.apply(t[2])]);
            let j = by_orient
                .get(&img)
                .or_else(|| by_orient.get(&reversed_cycle(img)))
                .and_then(|list| list.get(tri_rank[i]))
                .ok_or(GraphError::NotAnAutomorphism)?;
            tuf.union(i, *j);
        }
    }
    let (_, treps) = tuf.classes();
    let mut triangles = Vec::new();
    let mut collapsed_triangles = 0;
    for &r in &treps {
        let t = c.triangles()[r];
        let q = [vertex_map[t[0]], vertex_map[t[1]], vertex_map[t[2]]];
        if q[0] == q[1] || q[1] == q[2] || q[0] == q[2] {
            collapsed_triangles += 1;
        } else {
            triangles.push(q);
        }
    }

    let labels = vreps.iter().map(|&r| c.label(r).to_string()).collect();
    let mut complex = Complex2::new(labels, edges, triangles)?;
    if let Some(f) = c.meta(META_FLAVOR) {
        complex.set_meta(META_FLAVOR, f);
    }
    complex.set_meta("collapsed_edges", collapsed_edges.to_string());
    complex.set_meta("collapsed_triangles", collapsed_triangles.to_string());
    Ok(Quotient { complex, vertex_map })
}

/// Simple quotient along a vertex classification: one edge per distinct pair
/// of classes met by an edge, one triangle per distinct oriented class
/// triple met by a triangle. Edges and triangles are listed in sorted order.
pub fn induced_quotient(c: &Complex2, class_of: &[usize], class_labels: Vec<String>) -> Result<Complex2, GraphError> {
    assert_eq!(class_of.len(), c.vertex_count());
    let mut edges = BTreeSet::new();
    let mut collapsed_edges = 0;
    for e in c.edges() {
        let (a, b) = (class_of[e[0]], class_of[e[1]]);
        if a == b {
            collapsed_edges += 1;
        } else {
            edges.insert(sorted_pair(a, b));
        }
    }
    let mut triangles = BTreeSet::new();
    let mut collapsed_triangles = 0;
    for t in c.triangles() {
        let q = [class_of[t[0]], class_of[t[1]], class_of[t[2]]];
        if sorted_triple(q).windows(2).any(|w| w[0] == w[1]) {
            collapsed_triangles += 1;
        } else {
            triangles.insert(canonical_cycle(q));
        }
    }
    let mut out = Complex2::new(class_labels, edges.into_iter().collect(), triangles.into_iter().collect())?;
    if let Some(f) = c.meta(META_FLAVOR) {
        out.set_meta(META_FLAVOR, f);
    }
    out.set_meta("collapsed_edges", collapsed_edges.to_string());
    out.set_meta("collapsed_triangles", collapsed_triangles.to_string());
    Ok(out)
}

/// Simple quotient by the equivalence generated by partially defined vertex
/// maps (`maps[k][x] = Some(y)` identifies `x` with `y`). Used to fold a
/// finite piece of an infinite complex under a group that does not act on
/// the piece itself.
pub fn quotient_by_partial_maps(c: &Complex2, maps: &[Vec<Option<usize>>]) -> Result<Quotient, GraphError> {
    let n = c.vertex_count();
    let mut uf = UnionFind::new(n);
    for m in maps {
        for (x, y) in m.iter().enumerate() {
            if let Some(y) = *y {
                if y >= n {
                    return Err(GraphError::InvalidVertex { index: y, count: n });
                }
                uf.union(x, y);
            }
        }
    }
    let (vertex_map, reps) = uf.classes();
    let labels = reps.iter().map(|&r| c.label(r).to_string()).collect();
    let complex = induced_quotient(c, &vertex_map, labels)?;
    Ok(Quotient { complex, vertex_map })
}

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::search::{automorphisms, find_isomorphism, Shape, Structure};
use super::{canonical_cycle, reversed_cycle, Complex2, GraphError, VertexPermutation};
use crate::Limits;

/// Automorphism group of a finite complex, given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutGroup {
    #[serde(serialize_with = "serialize_perms")]
    pub generators: Vec<VertexPermutation>,
    pub order: u128,
    /// Order of the subgroup preserving every triangle orientation.
    pub orientation_preserving_order: u128,
    /// `order / orientation_preserving_order`; 1 when triangles were not
    /// respected or there are none.
    pub orientation_preserving_index: u128,
}

fn serialize_perms<S: serde::Serializer>(perms: &[VertexPermutation], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(perms.len()))?;
    for p in perms {
        seq.serialize_element(p.as_slice())?;
    }
    seq.end()
}

impl AutGroup {
    pub fn degree(&self) -> usize {
        self.generators.first().map_or(0, VertexPermutation::len)
    }

    /// All elements, by closure under the generators, when there are at most
    /// `limit` of them.
    pub fn elements(&self, n: usize, limit: usize) -> Option<Vec<VertexPermutation>> {
        close_group(&self.generators, n, limit)
    }
}

/// Closure of a set of permutations of `0..n` under composition, or None if
/// more than `limit` elements appear.
pub(crate) fn close_group(gens: &[VertexPermutation], n: usize, limit: usize) -> Option<Vec<VertexPermutation>> {
    let id = VertexPermutation::identity(n);
    let mut seen: HashSet<VertexPermutation> = HashSet::new();
    seen.insert(id.clone());
    let mut all = vec![id];
    let mut i = 0;
    while i < all.len() {
        for g in gens {
            let h = g.compose(&all[i]);
            if !seen.contains(&h) {
                if all.len() >= limit {
                    return None;
                }
                seen.insert(h.clone());
                all.push(h);
            }
        }
        i += 1;
    }
    Some(all)
}

fn structure(c: &Complex2, triangles: Option<Shape>) -> Structure {
    let mut s = Structure::new(c.vertex_count());
    s.add_relation(Shape::Set, c.edges().iter().map(|e| e.to_vec()));
    if let Some(shape) = triangles {
        s.add_relation(shape, c.triangles().iter().map(|t| t.to_vec()));
    }
    s
}

pub fn automorphism_group(c: &Complex2, respect_triangles: bool) -> Result<AutGroup, GraphError> {
    automorphism_group_with(c, respect_triangles, &Limits::default())
}

/// Generators and exact order of the automorphism group of the edge
/// multiset, and of the triangle multiset too when `respect_triangles`.
pub fn automorphism_group_with(
    c: &Complex2,
    respect_triangles: bool,
    limits: &Limits,
) -> Result<AutGroup, GraphError> {
    let n = c.vertex_count();
    if n > limits.max_vertices {
        return Err(GraphError::SizeLimitExceeded {
            vertices: n,
            limit: limits.max_vertices,
        });
    }
    let tri_shape = respect_triangles.then_some(Shape::Set);
    let (gens, order) = automorphisms(&structure(c, tri_shape)).ok_or(GraphError::OrderOverflow)?;
    let generators: Vec<VertexPermutation> = gens.into_iter().map(VertexPermutation::from_vec_unchecked).collect();

    let (plus_order, index) = if respect_triangles && c.triangle_count() > 0 {
        let (_, plus) = automorphisms(&structure(c, Some(Shape::Cycle))).ok_or(GraphError::OrderOverflow)?;
        (plus, order / plus)
    } else {
        (order, 1)
    };
    Ok(AutGroup {
        generators,
        order,
        orientation_preserving_order: plus_order,
        orientation_preserving_index: index,
    })
}

/// A vertex bijection from `a` to `b` carrying edges to edges and triangles
/// to triangles (orientation ignored), if one exists. Labels are ignored.
pub fn graph_isomorphic(a: &Complex2, b: &Complex2) -> Option<VertexPermutation> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.triangle_count() != b.triangle_count()
    {
        return None;
    }
    find_isomorphism(&structure(a, Some(Shape::Set)), &structure(b, Some(Shape::Set)))
        .map(VertexPermutation::from_vec_unchecked)
}

/// Whether `p` preserves every triangle orientation of `c`.
///
/// `p` must be an automorphism of `c` (triangles as vertex sets). An
/// automorphism of a complex whose triangles are connected across edges
/// either preserves all orientations or reverses all; anything else is a
/// [`GraphError::MixedOrientation`]. On disconnected triangulations a mixed
/// automorphism is reported as not preserving.
pub fn is_orientation_preserving(c: &Complex2, p: &VertexPermutation) -> Result<bool, GraphError> {
    if !p.is_automorphism_of(c) {
        return Err(GraphError::NotAnAutomorphism);
    }
    if c.triangle_count() == 0 {
        return Ok(true);
    }
    let mut forward: HashMap<[usize; 3], usize> = HashMap::new();
    let mut backward: HashMap<[usize; 3], usize> = HashMap::new();
    let mut image: HashMap<[usize; 3], usize> = HashMap::new();
    for t in c.triangles() {
        *forward.entry(canonical_cycle(*t)).or_default() += 1;
        *backward.entry(reversed_cycle(*t)).or_default() += 1;
        *image
            .entry(canonical_cycle([p.apply(t[0]), p.apply(t[1]), p.apply(t[2])]))
            .or_default() += 1;
    }
    if image == forward {
        Ok(true)
    } else if image == backward || !c.triangles_connected() {
        Ok(false)
    } else {
        Err(GraphError::MixedOrientation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solids;

    fn path3() -> Complex2 {
        Complex2::new(vec!["a".into(), "b".into(), "c".into()], vec![[0, 1], [1, 2]], vec![]).unwrap()
    }

    fn two_k3() -> Complex2 {
        Complex2::new(
            (0..6).map(|i| i.to_string()).collect(),
            vec![[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]],
            vec![],
        )
        .unwrap()
    }

    /// Brute-force automorphism count over all permutations.
    fn brute_force_order(c: &Complex2) -> u128 {
        fn rec(c: &Complex2, perm: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut u128) {
            let n = c.vertex_count();
            if perm.len() == n {
                if VertexPermutation::new(perm.clone()).unwrap().is_automorphism_of(c) {
                    *count += 1;
                }
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    perm.push(v);
                    rec(c, perm, used, count);
                    perm.pop();
                    used[v] = false;
                }
            }
        }
        let mut count = 0;
        rec(c, &mut Vec::new(), &mut vec![false; c.vertex_count()], &mut count);
        count
    }

    #[test]
    fn k3_order_six() {
        let g = automorphism_group(&Complex2::complete_graph(3), false).unwrap();
        assert_eq!(g.order, 6);
        assert_eq!(g.elements(3, 100).unwrap().len(), 6);
    }

    #[test]
    fn two_triangles_order_matches_brute_force() {
        let c = two_k3();
        assert_eq!(brute_force_order(&c), 72);
        assert_eq!(automorphism_group(&c, false).unwrap().order, 72);
    }

    #[test]
    fn icosahedron_order_matches_closure() {
        let ico = solids::icosahedron();
        let g = automorphism_group(&ico, true).unwrap();
        assert_eq!(g.order, 120);
        assert_eq!(g.orientation_preserving_order, 60);
        assert_eq!(g.orientation_preserving_index, 2);
        assert_eq!(g.elements(12, 1_000_000).unwrap().len(), 120);
        let graph_only = automorphism_group(&ico.one_skeleton(), false).unwrap();
        assert_eq!(graph_only.order, 120);
    }

    #[test]
    fn generators_are_deterministic() {
        let ico = solids::icosahedron();
        assert_eq!(automorphism_group(&ico, true).unwrap(), automorphism_group(&ico, true).unwrap());
    }

    #[test]
    fn size_guard() {
        let limits = Limits {
            max_vertices: 2,
            ..Limits::default()
        };
        assert!(matches!(
            automorphism_group_with(&Complex2::complete_graph(3), false, &limits),
            Err(GraphError::SizeLimitExceeded { vertices: 3, limit: 2 })
        ));
    }

    #[test]
    fn k3_versus_cycle_and_path() {
        let cycle = Complex2::new(vec!["x".into(), "y".into(), "z".into()], vec![[1, 2], [2, 0], [0, 1]], vec![])
            .unwrap();
        let iso = graph_isomorphic(&Complex2::complete_graph(3), &cycle).unwrap();
        assert_eq!(iso.len(), 3);
        assert!(graph_isomorphic(&Complex2::complete_graph(3), &path3()).is_none());
        assert_eq!(
            graph_isomorphic(&Complex2::complete_graph(3), &cycle),
            graph_isomorphic(&Complex2::complete_graph(3), &cycle)
        );
    }

    #[test]
    fn orientation_of_icosahedron_maps() {
        let ico = solids::icosahedron();
        let id = VertexPermutation::identity(12);
        assert!(is_orientation_preserving(&ico, &id).unwrap());
        assert!(!is_orientation_preserving(&ico, &solids::icosahedron_reflection()).unwrap());
        assert!(is_orientation_preserving(&ico, &solids::icosahedron_rotation()).unwrap());
    }

    #[test]
    fn orientation_errors() {
        let ico = solids::icosahedron();
        let swap = {
            let mut m: Vec<usize> = (0..12).collect();
            m.swap(0, 1);
            VertexPermutation::new(m).unwrap()
        };
        assert_eq!(is_orientation_preserving(&ico, &swap), Err(GraphError::NotAnAutomorphism));

        // two tetrahedra glued at nothing; rotate one, reflect the other
        let t = solids::tetrahedron();
        let mut labels: Vec<String> = t.labels().iter().map(|l| format!("a{l}")).collect();
        labels.extend(t.labels().iter().map(|l| format!("b{l}")));
        let mut edges = t.edges().to_vec();
        edges.extend(t.edges().iter().map(|e| [e[0] + 4, e[1] + 4]));
        let mut tris = t.triangles().to_vec();
        tris.extend(t.triangles().iter().map(|x| [x[0] + 4, x[1] + 4, x[2] + 4]));
        let two = Complex2::new(labels, edges, tris).unwrap();
        let mixed = VertexPermutation::new(vec![0, 1, 2, 3, 5, 4, 6, 7]).unwrap();
        assert_eq!(is_orientation_preserving(&two, &mixed), Ok(false));

        // three triangles on a common edge; swapping 3 and 4 fixes the first
        // triangle and exchanges the other two with reversed orientation
        let c = Complex2::new(
            (0..5).map(|i| i.to_string()).collect(),
            vec![[0, 1], [1, 2], [0, 2], [1, 3], [2, 3], [1, 4], [2, 4]],
            vec![[0, 1, 2], [1, 2, 3], [2, 1, 4]],
        )
        .unwrap();
        let p = VertexPermutation::new(vec![0, 1, 2, 4, 3]).unwrap();
        assert_eq!(is_orientation_preserving(&c, &p), Err(GraphError::MixedOrientation));
    }
}

//! Hand-built triangulations of the tetrahedron, octahedron and icosahedron,
//! consistently oriented. Used as fixed references for the level quotients
//! at m = 3, 4, 5.

use std::collections::BTreeSet;

use crate::graph::{Complex2, VertexPermutation};

fn from_triangles(n: usize, triangles: Vec<[usize; 3]>) -> Complex2 {
    let mut pairs = BTreeSet::new();
    for t in &triangles {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            pairs.insert([a.min(b), a.max(b)]);
        }
    }
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Complex2::new(labels, pairs.into_iter().collect(), triangles).expect("hand-built solid is valid")
}

pub fn tetrahedron() -> Complex2 {
    from_triangles(4, vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
}

/// Apexes 0 and 5 over the square 1, 2, 3, 4.
pub fn octahedron() -> Complex2 {
    let r = |i: usize| 1 + i % 4;
    let mut t = Vec::new();
    for i in 0..4 {
        t.push([0, r(i), r(i + 1)]);
        t.push([5, r(i + 1), r(i)]);
    }
    from_triangles(6, t)
}

fn upper(i: usize) -> usize {
    1 + i % 5
}

fn lower(i: usize) -> usize {
    6 + i % 5
}

/// Poles 0 and 11, upper pentagon 1..=5, lower pentagon 6..=10 with lower
/// vertex `i` sitting between upper vertices `i` and `i + 1`.
pub fn icosahedron() -> Complex2 {
    let mut t = Vec::new();
    for i in 0..5 {
        t.push([0, upper(i), upper(i + 1)]);
        t.push([upper(i + 1), upper(i), lower(i)]);
        t.push([lower(i), lower(i + 1), upper(i + 1)]);
        t.push([11, lower(i + 1), lower(i)]);
    }
    from_triangles(12, t)
}

/// Rotation by a fifth of a turn about the polar axis.
pub fn icosahedron_rotation() -> VertexPermutation {
    let mut m = vec![0; 12];
    m[11] = 11;
    for i in 0..5 {
        m[upper(i)] = upper(i + 1);
        m[lower(i)] = lower(i + 1);
    }
    VertexPermutation::new(m).unwrap()
}

/// Mirror through the plane containing the poles and upper vertex 0.
pub fn icosahedron_reflection() -> VertexPermutation {
    let mut m = vec![0; 12];
    m[11] = 11;
    for i in 0..5 {
        m[upper(i)] = upper(5 - i);
        m[lower(i)] = lower(9 - i);
    }
    VertexPermutation::new(m).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn consistently_oriented(c: &Complex2) -> bool {
        let mut directed = HashSet::new();
        c.triangles()
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .all(|e| directed.insert(e))
    }

    #[test]
    fn counts_and_surfaces() {
        for (c, v, e, f) in [(tetrahedron(), 4, 6, 4), (octahedron(), 6, 12, 8), (icosahedron(), 12, 30, 20)] {
            assert_eq!((c.vertex_count(), c.edge_count(), c.triangle_count()), (v, e, f));
            assert!(c.is_closed_surface());
            assert!(consistently_oriented(&c));
            assert_eq!(c.euler_characteristic(), 2);
        }
    }

    #[test]
    fn symmetries_are_automorphisms() {
        let ico = icosahedron();
        assert!(icosahedron_rotation().is_automorphism_of(&ico));
        assert!(icosahedron_reflection().is_automorphism_of(&ico));
    }
}

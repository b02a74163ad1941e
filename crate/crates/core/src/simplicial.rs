//! Abstract simplicial complexes listed by dimension.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::search::{find_isomorphism, Shape, Structure};
use crate::graph::{Complex2, VertexPermutation};

/// `simplices[k]` holds the k-simplices as sorted vertex lists; the
/// 0-simplices are exactly `[[0], [1], ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Builds the complex from its vertices and higher simplices. Simplices
    /// are sorted and deduplicated; faces are not added.
    pub fn new(labels: Vec<String>, higher: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let n = labels.len();
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
        for mut s in higher {
            s.sort_unstable();
            s.dedup();
            assert!(s.iter().all(|&v| v < n), "simplex vertex out of range");
            let k = s.len() - 1;
            if k == 0 {
                continue;
            }
            while by_dim.len() <= k {
                by_dim.push(BTreeSet::new());
            }
            by_dim[k].insert(s);
        }
        while by_dim.len() > 1 && by_dim.last().is_some_and(BTreeSet::is_empty) {
            by_dim.pop();
        }
        SimplicialComplex {
            labels,
            simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Top dimension, or -1 for the empty complex.
    pub fn dimension(&self) -> isize {
        if self.labels.is_empty() {
            -1
        } else {
            self.simplices.len() as isize - 1
        }
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        if self.labels.is_empty() {
            return Vec::new();
        }
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Whether every face of every simplex is present.
    pub fn is_closed_under_faces(&self) -> bool {
        (2..self.simplices.len()).all(|k| {
            let lower: BTreeSet<&Vec<usize>> = self.simplices[k - 1].iter().collect();
            self.simplices[k].iter().all(|s| {
                (0..s.len()).all(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    lower.contains(&f)
                })
            })
        })
    }

    fn structure(&self) -> Structure {
        let mut st = Structure::new(self.vertex_count());
        for k in 1..self.simplices.len() {
            st.add_relation(Shape::Set, self.simplices[k].iter().cloned());
        }
        st
    }

    /// The 1- and 2-skeleton as a [`Complex2`] (triangles sorted, so
    /// orientation carries no information).
    pub fn two_skeleton(&self) -> Complex2 {
        let edges = self.simplices(1).iter().map(|s| [s[0], s[1]]).collect();
        let tris = self.simplices(2).iter().map(|s| [s[0], s[1], s[2]]).collect();
        Complex2::new(self.labels.clone(), edges, tris).expect("faces present")
    }
}

/// A vertex bijection carrying the simplices of `a` onto those of `b`.
pub fn simplicially_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<VertexPermutation> {
    if a.f_vector() != b.f_vector() {
        return None;
    }
    find_isomorphism(&a.structure(), &b.structure()).map(VertexPermutation::from_vec_unchecked)
}

//! Finite combinatorial 2-complexes.
//!
//! A [`Complex2`] has labeled vertices, an edge list that may contain
//! parallel edges, and triangles carrying a cyclic orientation. With no
//! triangles it is just a (multi)graph.

pub(crate) mod aut;
mod io;
mod nerve;
mod quotient;
pub(crate) mod search;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

pub use aut::{automorphism_group, automorphism_group_with, graph_isomorphic, is_orientation_preserving, AutGroup};
pub use nerve::nerve;
pub use quotient::{induced_quotient, quotient_by_action, quotient_by_partial_maps, quotient_with_map, Quotient};

/// Metadata key holding the [`Flavor`] of a complex.
pub const META_FLAVOR: &str = "flavor";
/// Metadata key holding the maximal Farey (or complete) pieces as a JSON
/// list of vertex-index lists.
pub const META_FIBERS: &str = "fibers";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {index} out of range for {count} vertices")]
    InvalidVertex { index: usize, count: usize },
    #[error("degenerate simplex {0:?}: repeated vertex")]
    DegenerateSimplex(Vec<usize>),
    #[error("triangle {0:?} has a boundary pair missing from the edge list")]
    MissingTriangleEdge([usize; 3]),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("size limit exceeded: {vertices} vertices, limit {limit}")]
    SizeLimitExceeded { vertices: usize, limit: usize },
    #[error("not a bijection on {0} vertices")]
    NotABijection(usize),
    #[error("permutation is not an automorphism")]
    NotAnAutomorphism,
    #[error("automorphism mixes orientations on a connected triangulation")]
    MixedOrientation,
    #[error("cover set {0} is empty")]
    EmptyCoverSet(usize),
    #[error("cover misses vertex {0}")]
    IncompleteCover(usize),
    #[error("induced action is not well defined on the quotient")]
    IllDefinedAction,
    #[error("group order overflows u128")]
    OrderOverflow,
    #[error("json: {0}")]
    Json(String),
}

/// Role a complex plays in the product constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Flavor {
    /// Pants graph of a dimension-one piece (Farey ball or level quotient).
    Pants,
    /// Complete graph on a pants vertex set.
    Star,
    /// One-point complex of a pair of pants.
    Point,
    #[default]
    Plain,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Pants => "pants",
            Flavor::Star => "star",
            Flavor::Point => "point",
            Flavor::Plain => "plain",
        }
    }

    fn parse(s: &str) -> Flavor {
        match s {
            "pants" => Flavor::Pants,
            "star" => Flavor::Star,
            "point" => Flavor::Point,
            _ => Flavor::Plain,
        }
    }
}

/// Rotate a triple so that its least entry comes first, keeping the cyclic
/// order.
pub fn canonical_cycle(t: [usize; 3]) -> [usize; 3] {
    let i = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
}

pub fn reversed_cycle(t: [usize; 3]) -> [usize; 3] {
    canonical_cycle([t[0], t[2], t[1]])
}

fn sorted_pair(a: usize, b: usize) -> [usize; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

fn sorted_triple(t: [usize; 3]) -> [usize; 3] {
    let mut s = t;
    s.sort_unstable();
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex2 {
    labels: Vec<String>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    metadata: BTreeMap<String, String>,
}

impl Complex2 {
    pub fn new(
        labels: Vec<String>,
        edges: Vec<[usize; 2]>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, GraphError> {
        let c = Complex2 {
            labels,
            edges,
            triangles,
            metadata: BTreeMap::new(),
        };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_parts_unchecked(
        labels: Vec<String>,
        edges: Vec<[usize; 2]>,
        triangles: Vec<[usize; 3]>,
        metadata: BTreeMap<String, String>,
    ) -> Self {
        let c = Complex2 {
            labels,
            edges,
            triangles,
            metadata,
        };
        debug_assert!(c.validate().is_ok(), "{:?}", c.validate());
        c
    }

    pub fn empty() -> Self {
        Complex2 {
            labels: Vec::new(),
            edges: Vec::new(),
            triangles: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    /// The one-point complex assigned to a pair of pants.
    pub fn point() -> Self {
        let mut c = Complex2 {
            labels: vec!["*".to_string()],
            edges: Vec::new(),
            triangles: Vec::new(),
            metadata: BTreeMap::new(),
        };
        c.set_flavor(Flavor::Point);
        c
    }

    /// Complete graph on `n` vertices labeled `0..n`, one piece spanning
    /// everything, no triangles.
    pub fn complete_graph(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                edges.push([a, b]);
            }
        }
        let mut c = Complex2::from_parts_unchecked(labels, edges, Vec::new(), BTreeMap::new());
        c.set_fibers(&[(0..n).collect()]);
        c
    }

    fn validate(&self) -> Result<(), GraphError> {
        let n = self.labels.len();
        let mut seen = HashSet::with_capacity(n);
        for l in &self.labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(GraphError::InvalidVertex { index: i, count: n })
            }
        };
        let mut pairs = HashSet::with_capacity(self.edges.len());
        for e in &self.edges {
            check(e[0])?;
            check(e[1])?;
            if e[0] == e[1] {
                return Err(GraphError::DegenerateSimplex(e.to_vec()));
            }
            pairs.insert(sorted_pair(e[0], e[1]));
        }
        for t in &self.triangles {
            for &v in t {
                check(v)?;
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(GraphError::DegenerateSimplex(t.to_vec()));
            }
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                if !pairs.contains(&sorted_pair(a, b)) {
                    return Err(GraphError::MissingTriangleEdge(*t));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.get(key).map(String::as_str)
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.insert(key.into(), value.into());
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.set_meta(key, value);
        self
    }

    pub fn remove_meta(&mut self, key: &str) -> Option<String> {
        self.metadata.remove(key)
    }

    pub fn flavor(&self) -> Flavor {
        self.meta(META_FLAVOR).map(Flavor::parse).unwrap_or_default()
    }

    pub fn set_flavor(&mut self, flavor: Flavor) {
        self.set_meta(META_FLAVOR, flavor.as_str());
    }

    /// Maximal pieces recorded in metadata, if any.
    pub fn fibers(&self) -> Option<Vec<Vec<usize>>> {
        let raw = self.meta(META_FIBERS)?;
        let fibers: Vec<Vec<usize>> = serde_json::from_str(raw).ok()?;
        let n = self.vertex_count();
        fibers.iter().flatten().all(|&v| v < n).then_some(fibers)
    }

    pub fn set_fibers(&mut self, fibers: &[Vec<usize>]) {
        let raw = serde_json::to_string(fibers).expect("vertex lists serialize");
        self.set_meta(META_FIBERS, raw);
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sorted, deduplicated neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Distinct unordered vertex pairs joined by at least one edge.
    pub fn edge_pairs(&self) -> HashSet<[usize; 2]> {
        self.edges.iter().map(|e| sorted_pair(e[0], e[1])).collect()
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.edge_pairs().len() != self.edges.len()
    }

    /// Full subcomplex on `vertices` (in the given order), keeping edges and
    /// triangles whose vertices all lie in the set.
    pub fn induced(&self, vertices: &[usize]) -> Complex2 {
        let mut pos = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            pos.insert(v, i);
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| Some([*pos.get(&e[0])?, *pos.get(&e[1])?]))
            .collect();
        let triangles = self
            .triangles
            .iter()
            .filter_map(|t| Some([*pos.get(&t[0])?, *pos.get(&t[1])?, *pos.get(&t[2])?]))
            .collect();
        let mut meta = BTreeMap::new();
        if let Some(f) = self.meta(META_FLAVOR) {
            meta.insert(META_FLAVOR.to_string(), f.to_string());
        }
        Complex2::from_parts_unchecked(labels, edges, triangles, meta)
    }

    /// Copy with relabeled vertices.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Complex2, GraphError> {
        assert_eq!(labels.len(), self.vertex_count());
        let mut c = Complex2::new(labels, self.edges.clone(), self.triangles.clone())?;
        c.metadata = self.metadata.clone();
        Ok(c)
    }

    /// Copy with the triangle list dropped.
    pub fn one_skeleton(&self) -> Complex2 {
        Complex2 {
            labels: self.labels.clone(),
            edges: self.edges.clone(),
            triangles: Vec::new(),
            metadata: self.metadata.clone(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.triangle_count() as i64
    }

    /// Number of connected components of the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count()];
        let mut count = 0;
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    /// Whether each edge lies in exactly two triangles and every vertex link
    /// is a single cycle. Edges are matched by vertex pair.
    pub fn is_closed_surface(&self) -> bool {
        if self.triangles.is_empty() || self.has_parallel_edges() {
            return false;
        }
        let mut per_edge: HashMap<[usize; 2], usize> = HashMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *per_edge.entry(sorted_pair(a, b)).or_default() += 1;
            }
        }
        if per_edge.len() != self.edges.len() || per_edge.values().any(|&k| k != 2) {
            return false;
        }
        // link of v: one link edge per triangle corner at v
        let mut links: Vec<Vec<[usize; 2]>> = vec![Vec::new(); self.vertex_count()];
        for t in &self.triangles {
            for i in 0..3 {
                links[t[i]].push([t[(i + 1) % 3], t[(i + 2) % 3]]);
            }
        }
        links.iter().all(|link| is_single_cycle(link))
    }

    /// Whether all triangles can be reached from each other across shared
    /// edges.
    pub fn triangles_connected(&self) -> bool {
        let k = self.triangles.len();
        if k <= 1 {
            return true;
        }
        let mut by_edge: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                by_edge.entry(sorted_pair(a, b)).or_default().push(i);
            }
        }
        let mut seen = vec![false; k];
        seen[0] = true;
        let mut stack = vec![0];
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            let t = self.triangles[i];
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                for &j in &by_edge[&sorted_pair(a, b)] {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        stack.push(j);
                    }
                }
            }
        }
        reached == k
    }
}

fn is_single_cycle(link: &[[usize; 2]]) -> bool {
    if link.is_empty() {
        return false;
    }
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, e) in link.iter().enumerate() {
        adj.entry(e[0]).or_default().push(i);
        adj.entry(e[1]).or_default().push(i);
    }
    if adj.values().any(|inc| inc.len() != 2) {
        return false;
    }
    // walk the cycle by edge ids so that 2-cycles with parallel link edges work
    let start = link[0][0];
    let mut at = start;
    let mut via = 0;
    let mut steps = 0;
    loop {
        let e = link[via];
        at = if e[0] == at { e[1] } else { e[0] };
        steps += 1;
        if at == start {
            break;
        }
        let inc = &adj[&at];
        via = if inc[0] == via { inc[1] } else { inc[0] };
    }
    steps == link.len()
}

/// A bijection on the vertex indices of a fixed complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPermutation(Vec<usize>);

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation((0..n).collect())
    }

    pub fn new(mapping: Vec<usize>) -> Result<Self, GraphError> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &x in &mapping {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GraphError::NotABijection(n));
            }
        }
        Ok(VertexPermutation(mapping))
    }

    pub(crate) fn from_vec_unchecked(mapping: Vec<usize>) -> Self {
        VertexPermutation(mapping)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        assert_eq!(self.len(), other.len());
        VertexPermutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        VertexPermutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Whether this permutation preserves the edge multiset and the
    /// triangle multiset (as vertex sets) of `c`.
    pub fn is_automorphism_of(&self, c: &Complex2) -> bool {
        if self.len() != c.vertex_count() {
            return false;
        }
        let count_edges = |f: &dyn Fn(usize) -> usize| {
            let mut m: HashMap<[usize; 2], usize> = HashMap::new();
            for e in c.edges() {
                *m.entry(sorted_pair(f(e[0]), f(e[1]))).or_default() += 1;
            }
            m
        };
        let count_tris = |f: &dyn Fn(usize) -> usize| {
            let mut m: HashMap<[usize; 3], usize> = HashMap::new();
            for t in c.triangles() {
                *m.entry(sorted_triple([f(t[0]), f(t[1]), f(t[2])])).or_default() += 1;
            }
            m
        };
        let id = |x: usize| x;
        let p = |x: usize| self.0[x];
        count_edges(&id) == count_edges(&p) && count_tris(&id) == count_tris(&p)
    }
}

impl fmt::Display for VertexPermutation {
    /// Cycle notation, fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.len()];
        let mut any = false;
        for s in 0..self.len() {
            if seen[s] || self.0[s] == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

//! Detection of the product structure of a complete-graph product and
//! recovery of the curve complex from it.
//!
//! Everything here looks only at the 1-skeleton. Two edges lie on the same
//! axis when they share a graph triangle or sit opposite each other on an
//! induced 4-cycle; the components of each union of axes are the members of
//! the subgraph family.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::farey::complete_closure;
use crate::graph::{automorphism_group_with, Complex2, Flavor, GraphError, VertexPermutation};
use crate::product::direct_curve_complex;
use crate::simplicial::{simplicially_isomorphic, SimplicialComplex};
use crate::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("size limit: {0}")]
    SizeLimit(String),
    #[error("vertex {vertex} has {size} neighbors, exact limit {limit}")]
    NeighborhoodTooLarge { vertex: usize, size: usize, limit: usize },
    #[error("not a product of complete graphs: {0}")]
    NotProductLike(String),
    #[error("member {0} is not maximal: an outside neighbor does not raise the local dimension")]
    NotMaximal(usize),
    #[error("the two complexes have different vertex sets")]
    VertexSetMismatch,
    #[error("vertex {0} out of range")]
    InvalidVertex(usize),
    #[error("deadline exceeded")]
    DeadlineExceeded,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Neighborhood guard used by the reconstruction: five factors of at most
/// thirty vertices.
pub const RECONSTRUCT_NEIGHBORHOOD: usize = 5 * 29;
pub const MAX_FACTORS: usize = 5;
pub const MAX_FACTOR_SIZE: usize = 30;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub limits: Limits,
    /// Largest neighborhood handed to the exact independence search.
    pub neighborhood_guard: usize,
    pub deadline: Option<Instant>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            limits: Limits::default(),
            neighborhood_guard: RECONSTRUCT_NEIGHBORHOOD,
            deadline: None,
        }
    }
}

fn check_deadline(deadline: Option<Instant>) -> Result<(), ReconstructError> {
    match deadline {
        Some(d) if Instant::now() >= d => Err(ReconstructError::DeadlineExceeded),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(64 * k + b)
            })
        })
    }
}

/// Independence number of the graph `adj` restricted to `cand`.
fn independence(adj: &[Bits], mut cand: Bits, deadline: Option<Instant>) -> Result<usize, ReconstructError> {
    let mut taken = 0;
    loop {
        if cand.count() == 0 {
            return Ok(taken);
        }
        check_deadline(deadline)?;
        // a vertex whose remaining neighborhood is a clique belongs to some
        // maximum independent set
        let simplicial = cand.ones().find(|&v| {
            let nb = adj[v].and(&cand);
            let list: Vec<usize> = nb.ones().collect();
            list.iter().all(|&x| {
                let inside = adj[x].and(&nb).count();
                inside == list.len() - 1
            })
        });
        match simplicial {
            Some(v) => {
                cand = cand.and_not(&adj[v]);
                cand.clear(v);
                taken += 1;
            }
            None => break,
        }
    }
    let v = cand
        .ones()
        .max_by_key(|&v| adj[v].and(&cand).count())
        .expect("nonempty");
    let mut without = cand.clone();
    without.clear(v);
    let a = independence(adj, without, deadline)?;
    let mut with = cand.and_not(&adj[v]);
    with.clear(v);
    let b = 1 + independence(adj, with, deadline)?;
    Ok(taken + a.max(b))
}

/// Independence number of the subgraph induced on `vertices` (given as a
/// list of indices into the simple adjacency `adj`).
fn independence_of(adj: &[Vec<usize>], vertices: &[usize], deadline: Option<Instant>) -> Result<usize, ReconstructError> {
    let k = vertices.len();
    let pos: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut local = vec![Bits::new(k); k];
    for (i, &v) in vertices.iter().enumerate() {
        for &u in &adj[v] {
            if let Some(&j) = pos.get(&u) {
                local[i].set(j);
            }
        }
    }
    let mut all = Bits::new(k);
    for i in 0..k {
        all.set(i);
    }
    independence(&local, all, deadline)
}

pub fn local_dimension(c: &Complex2, v: usize) -> Result<usize, ReconstructError> {
    local_dimension_with(c, v, Limits::default().max_neighborhood)
}

/// Largest number of pairwise non-adjacent neighbors of `v`, computed
/// exactly when `v` has at most `guard` neighbors.
pub fn local_dimension_with(c: &Complex2, v: usize, guard: usize) -> Result<usize, ReconstructError> {
    if v >= c.vertex_count() {
        return Err(ReconstructError::InvalidVertex(v));
    }
    let adj = c.adjacency();
    neighborhood_independence(&adj, v, guard, None)
}

fn neighborhood_independence(
    adj: &[Vec<usize>],
    v: usize,
    guard: usize,
    deadline: Option<Instant>,
) -> Result<usize, ReconstructError> {
    if adj[v].len() > guard {
        return Err(ReconstructError::NeighborhoodTooLarge {
            vertex: v,
            size: adj[v].len(),
            limit: guard,
        });
    }
    independence_of(adj, &adj[v], deadline)
}

/// Triangle-closure classes of the edges at `v`: two edges `vu`, `vw` fall
/// in the same class when `uw` is an edge, closed transitively. Each class
/// is returned with `v` added, sorted, the list ordered by least neighbor.
pub fn fibers_through(c: &Complex2, v: usize) -> Result<Vec<Vec<usize>>, ReconstructError> {
    if v >= c.vertex_count() {
        return Err(ReconstructError::InvalidVertex(v));
    }
    let adj = c.adjacency();
    Ok(neighbor_classes(&adj, v)
        .into_iter()
        .map(|mut class| {
            class.push(v);
            class.sort_unstable();
            class
        })
        .collect())
}

/// Components of the graph induced on the neighbors of `v`.
fn neighbor_classes(adj: &[Vec<usize>], v: usize) -> Vec<Vec<usize>> {
    let nb = &adj[v];
    let mut seen = vec![false; nb.len()];
    let mut classes = Vec::new();
    for s in 0..nb.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut class = vec![nb[s]];
        let mut stack = vec![nb[s]];
        while let Some(x) = stack.pop() {
            for (j, &y) in nb.iter().enumerate() {
                if !seen[j] && adj[x].binary_search(&y).is_ok() {
                    seen[j] = true;
                    class.push(y);
                    stack.push(y);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// One member of the family: the component of the union of the `free_axes`
/// containing its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Member {
    pub vertices: Vec<usize>,
    pub free_axes: Vec<usize>,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgraphFamily {
    /// Ordered by decreasing dimension, then by least vertex.
    pub members: Vec<Member>,
    /// Pairs `(i, j)` with member `i` strictly inside member `j`.
    pub inclusion_order: Vec<(usize, usize)>,
    /// Number of vertices of each axis fiber.
    pub fiber_sizes: Vec<usize>,
}

impl SubgraphFamily {
    pub fn axes(&self) -> usize {
        self.fiber_sizes.len()
    }

    /// Number of members of each dimension.
    pub fn by_dimension(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for m in &self.members {
            *out.entry(m.dimension).or_default() += 1;
        }
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
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

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Axis of every edge of the simple graph `adj`, keyed by sorted pair.
fn axis_classes(adj: &[Vec<usize>], deadline: Option<Instant>) -> Result<(BTreeMap<[usize; 2], usize>, usize), ReconstructError> {
    let mut id = BTreeMap::new();
    for (a, list) in adj.iter().enumerate() {
        for &b in list {
            if a < b {
                let k = id.len();
                id.insert([a, b], k);
            }
        }
    }
    let e = |a: usize, b: usize| id[&[a.min(b), a.max(b)]];
    let mut uf = UnionFind((0..id.len()).collect());
    for (v, nb) in adj.iter().enumerate() {
        check_deadline(deadline)?;
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if adj[u].binary_search(&w).is_ok() {
                    uf.union(e(v, u), e(v, w));
                    continue;
                }
                // induced 4-cycles v-u-x-w
                for &x in &adj[u] {
                    if x != v && adj[w].binary_search(&x).is_ok() && adj[v].binary_search(&x).is_err() {
                        uf.union(e(v, u), e(w, x));
                        uf.union(e(v, w), e(u, x));
                    }
                }
            }
        }
    }
    // number axes by first appearance in edge order
    let mut axis_of_root = BTreeMap::new();
    let mut out = BTreeMap::new();
    let mut next = 0;
    for (&pair, &k) in &id {
        let r = uf.find(k);
        let axis = *axis_of_root.entry(r).or_insert_with(|| {
            next += 1;
            next - 1
        });
        out.insert(pair, axis);
    }
    Ok((out, next))
}

/// Components of the graph keeping only edges whose axis is in `mask`.
fn components(adj: &[Vec<usize>], axis: &BTreeMap<[usize; 2], usize>, mask: u32) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let k = out.len();
        comp[s] = k;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX && mask >> axis[&[x.min(y), x.max(y)]] & 1 == 1 {
                    comp[y] = k;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn maximal_subsurface_subgraphs(c: &Complex2) -> Result<SubgraphFamily, ReconstructError> {
    maximal_subsurface_subgraphs_with(c, &Options::default())
}

/// All axis-aligned sub-products of a product of complete graphs, each
/// certified maximal by the neighbor-independence argument.
pub fn maximal_subsurface_subgraphs_with(c: &Complex2, opts: &Options) -> Result<SubgraphFamily, ReconstructError> {
    let n = c.vertex_count();
    if n > opts.limits.max_vertices {
        return Err(ReconstructError::SizeLimit(format!(
            "{n} vertices, limit {}",
            opts.limits.max_vertices
        )));
    }
    if n == 0 {
        return Err(ReconstructError::NotProductLike("empty complex".into()));
    }
    let adj = c.adjacency();
    let (axis, k) = axis_classes(&adj, opts.deadline)?;
    if k > MAX_FACTORS {
        return Err(ReconstructError::SizeLimit(format!("{k} axes, limit {MAX_FACTORS}")));
    }

    // each axis must split into equal cliques
    let mut fiber_sizes = Vec::with_capacity(k);
    for i in 0..k {
        let fibers = components(&adj, &axis, 1 << i);
        let s = fibers[0].len();
        if fibers.iter().any(|f| f.len() != s) {
            return Err(ReconstructError::NotProductLike(format!("fibers of axis {i} differ in size")));
        }
        for f in &fibers {
            if f.iter().any(|&x| f.iter().filter(|&&y| adj[x].binary_search(&y).is_ok()).count() != s - 1) {
                return Err(ReconstructError::NotProductLike(format!("a fiber of axis {i} is not complete")));
            }
        }
        if s > MAX_FACTOR_SIZE {
            return Err(ReconstructError::SizeLimit(format!("fiber of {s} vertices, limit {MAX_FACTOR_SIZE}")));
        }
        fiber_sizes.push(s);
    }
    if fiber_sizes.iter().product::<usize>() != n {
        return Err(ReconstructError::NotProductLike(format!(
            "{n} vertices but fiber sizes {fiber_sizes:?}"
        )));
    }

    // members, grouped by free-axis mask
    let full = (1u32 << k) - 1;
    let mut raw: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut comp_of: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for mask in 0..=full {
        check_deadline(opts.deadline)?;
        let comps = components(&adj, &axis, mask);
        let want: usize = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| fiber_sizes[i]).product();
        if comps.iter().any(|m| m.len() != want) {
            return Err(ReconstructError::NotProductLike(format!(
                "sub-products with free axes {mask:b} are not all of size {want}"
            )));
        }
        let mut which = vec![0; n];
        for (j, m) in comps.iter().enumerate() {
            for &v in m {
                which[v] = j;
            }
        }
        comp_of.insert(mask, which);
        raw.extend(comps.into_iter().map(|m| (mask, m)));
    }
    raw.sort_by(|a, b| b.0.count_ones().cmp(&a.0.count_ones()).then(a.1[0].cmp(&b.1[0])).then(a.0.cmp(&b.0)));

    let mut members = Vec::with_capacity(raw.len());
    for (mask, vertices) in &raw {
        let free_axes: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let dimension = free_axes.len();
        let sub = induce_adjacency(&adj, vertices);
        let d = neighborhood_independence(&sub, 0, opts.neighborhood_guard, opts.deadline)?;
        if d != dimension {
            return Err(ReconstructError::NotProductLike(format!(
                "member of {} axes has local dimension {d}",
                dimension
            )));
        }
        members.push(Member {
            vertices: vertices.clone(),
            free_axes,
            dimension,
        });
    }

    for (idx, m) in members.iter().enumerate() {
        certify(&adj, m, opts).map_err(|e| match e {
            ReconstructError::NotMaximal(_) => ReconstructError::NotMaximal(idx),
            other => other,
        })?;
    }

    let index: BTreeMap<(u32, usize), usize> = raw
        .iter()
        .enumerate()
        .map(|(i, (mask, vs))| ((*mask, comp_of[mask][vs[0]]), i))
        .collect();
    let mut inclusion_order = Vec::new();
    for (i, (mask, vs)) in raw.iter().enumerate() {
        for sup in 0..=full {
            if sup != *mask && sup & mask == *mask {
                inclusion_order.push((i, index[&(sup, comp_of[&sup][vs[0]])]));
            }
        }
    }
    inclusion_order.sort_unstable();
    Ok(SubgraphFamily {
        members,
        inclusion_order,
        fiber_sizes,
    })
}

/// Adjacency of the subgraph induced on `vertices`, reindexed by position.
fn induce_adjacency(adj: &[Vec<usize>], vertices: &[usize]) -> Vec<Vec<usize>> {
    let pos: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    vertices
        .iter()
        .map(|&v| {
            let mut l: Vec<usize> = adj[v].iter().filter_map(|u| pos.get(u).copied()).collect();
            l.sort_unstable();
            l
        })
        .collect()
}

/// For every `v` in the member and every outside neighbor `w`, the
/// neighbors of `v` inside `M + w` contain more than `dim M` pairwise
/// non-adjacent vertices.
fn certify(adj: &[Vec<usize>], m: &Member, opts: &Options) -> Result<(), ReconstructError> {
    let inside: std::collections::HashSet<usize> = m.vertices.iter().copied().collect();
    for &v in &m.vertices {
        check_deadline(opts.deadline)?;
        let own: Vec<usize> = adj[v].iter().copied().filter(|u| inside.contains(u)).collect();
        for &w in adj[v].iter().filter(|u| !inside.contains(u)) {
            let mut nb = own.clone();
            nb.push(w);
            if nb.len() > opts.neighborhood_guard {
                return Err(ReconstructError::NeighborhoodTooLarge {
                    vertex: v,
                    size: nb.len(),
                    limit: opts.neighborhood_guard,
                });
            }
            if independence_of(adj, &nb, opts.deadline)? <= m.dimension {
                return Err(ReconstructError::NotMaximal(0));
            }
        }
    }
    Ok(())
}

pub fn reconstruct_curve_complex(c: &Complex2) -> Result<SimplicialComplex, ReconstructError> {
    reconstruct_curve_complex_with(c, &Options::default())
}

/// The curve complex read off the family: its vertices are the members
/// fixing exactly one coordinate, and a member fixing `j + 1` coordinates
/// spans the `j`-simplex of the one-coordinate members containing it.
/// Vertex `i` is labeled `m{idx}` after its index in the family.
pub fn reconstruct_curve_complex_with(c: &Complex2, opts: &Options) -> Result<SimplicialComplex, ReconstructError> {
    let family = maximal_subsurface_subgraphs_with(c, opts)?;
    Ok(curve_complex_of(&family))
}

pub fn curve_complex_of(family: &SubgraphFamily) -> SimplicialComplex {
    let k = family.axes();
    let curves: Vec<usize> = (0..family.members.len())
        .filter(|&i| k > 0 && family.members[i].dimension == k - 1)
        .collect();
    let position: BTreeMap<usize, usize> = curves.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let labels = curves.iter().map(|i| format!("m{i}")).collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); family.members.len()];
    for &(small, big) in &family.inclusion_order {
        if let Some(&p) = position.get(&big) {
            containing[small].push(p);
        }
    }
    let higher = family
        .members
        .iter()
        .enumerate()
        .filter(|(_, m)| m.dimension + 2 <= k)
        .map(|(i, _)| containing[i].clone());
    SimplicialComplex::new(labels, higher)
}

/// Outcome of comparing automorphisms of a pants-flavor complex with those
/// of a star-flavor complex on the same vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutInclusionReport {
    pub aut_cp_order: u128,
    pub aut_cs_order: u128,
    pub generators_checked: usize,
    pub inclusion_holds: bool,
    /// `|Aut cs| / |Aut cp|` when the inclusion holds.
    pub index: Option<u128>,
}

pub fn check_aut_inclusion(cp: &Complex2, cs: &Complex2) -> Result<AutInclusionReport, ReconstructError> {
    check_aut_inclusion_with(cp, cs, &Limits::default())
}

/// Computes both edge automorphism groups and checks that every generator
/// of `Aut(cp)` is an automorphism of `cs`. Vertices are matched by label.
pub fn check_aut_inclusion_with(cp: &Complex2, cs: &Complex2, limits: &Limits) -> Result<AutInclusionReport, ReconstructError> {
    if cp.vertex_count() != cs.vertex_count() {
        return Err(ReconstructError::VertexSetMismatch);
    }
    let to_cs: Vec<usize> = cp
        .labels()
        .iter()
        .map(|l| cs.index_of(l).ok_or(ReconstructError::VertexSetMismatch))
        .collect::<Result<_, _>>()?;
    let from_cs = VertexPermutation::new(to_cs.clone()).map_err(|_| ReconstructError::VertexSetMismatch)?.inverse();
    let ap = automorphism_group_with(cp, false, limits)?;
    let as_ = automorphism_group_with(cs, false, limits)?;
    let cs_edges = cs.one_skeleton();
    let inclusion_holds = ap.generators.iter().all(|g| {
        // conjugate into cs indexing: x -> to_cs(g(from_cs(x)))
        let moved: Vec<usize> = (0..cs.vertex_count()).map(|x| to_cs[g.apply(from_cs.apply(x))]).collect();
        VertexPermutation::new(moved).is_ok_and(|p| p.is_automorphism_of(&cs_edges))
    });
    let index = (inclusion_holds && as_.order % ap.order == 0).then(|| as_.order / ap.order);
    Ok(AutInclusionReport {
        aut_cp_order: ap.order,
        aut_cs_order: as_.order,
        generators_checked: ap.generators.len(),
        inclusion_holds,
        index,
    })
}

/// Summary of a reconstruction run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructReport {
    pub members: usize,
    pub by_dimension: BTreeMap<usize, usize>,
    /// Whether the reconstructed complex is isomorphic to the curve complex
    /// of the detected fiber sizes.
    pub roundtrip_iso: bool,
    /// Present when the input was a pants-flavor complex.
    pub aut_cp_order: Option<u128>,
    pub aut_cs_order: u128,
}

/// Reconstructs from `c`, or from its complete closure when `c` is a
/// pants-flavor complex, and cross-checks against the direct construction.
pub fn reconstruct_report(c: &Complex2, opts: &Options) -> Result<ReconstructReport, ReconstructError> {
    let (cs, aut_cp_order) = if c.flavor() == Flavor::Pants {
        let cs = complete_closure(c).map_err(|e| ReconstructError::NotProductLike(e.to_string()))?;
        (cs, Some(automorphism_group_with(c, false, &opts.limits)?.order))
    } else {
        (c.clone(), None)
    };
    let family = maximal_subsurface_subgraphs_with(&cs, opts)?;
    let rebuilt = curve_complex_of(&family);
    let factors: Vec<Complex2> = family.fiber_sizes.iter().map(|&s| Complex2::complete_graph(s)).collect();
    let direct = direct_curve_complex(&factors).map_err(|e| ReconstructError::SizeLimit(e.to_string()))?;
    let roundtrip_iso = simplicially_isomorphic(&rebuilt, &direct).is_some();
    let aut_cs_order = automorphism_group_with(&cs, false, &opts.limits)?.order;
    Ok(ReconstructReport {
        members: family.members.len(),
        by_dimension: family.by_dimension(),
        roundtrip_iso,
        aut_cp_order,
        aut_cs_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::farey_level;
    use crate::product::{product_pants, product_star};

    fn k(n: usize) -> Complex2 {
        Complex2::complete_graph(n)
    }

    fn star(sizes: &[usize]) -> Complex2 {
        let fs: Vec<Complex2> = sizes.iter().map(|&n| k(n)).collect();
        product_star(&fs).unwrap().flattened
    }

    /// Largest independent set among the neighbors by trying every subset.
    fn brute_local_dimension(c: &Complex2, v: usize) -> usize {
        let adj = c.adjacency();
        let nb = &adj[v];
        let mut best = 0;
        for mask in 0u32..(1 << nb.len()) {
            let set: Vec<usize> = (0..nb.len()).filter(|i| mask >> i & 1 == 1).map(|i| nb[i]).collect();
            let independent = set
                .iter()
                .enumerate()
                .all(|(i, &a)| set[i + 1..].iter().all(|b| adj[a].binary_search(b).is_err()));
            if independent {
                best = best.max(set.len());
            }
        }
        best
    }

    #[test]
    fn local_dimension_examples() {
        let k33 = star(&[3, 3]);
        assert_eq!(brute_local_dimension(&k33, 0), 2);
        assert_eq!(local_dimension(&k33, 0), Ok(2));
        assert_eq!(local_dimension(&k(5), 2), Ok(1));
        let k333 = star(&[3, 3, 3]);
        assert_eq!(local_dimension(&k333, 13), Ok(brute_local_dimension(&k333, 13)));
        assert_eq!(local_dimension(&k333, 13), Ok(3));
        assert!(matches!(
            local_dimension(&k(26), 0),
            Err(ReconstructError::NeighborhoodTooLarge { size: 25, .. })
        ));
    }

    #[test]
    fn independence_on_cycles() {
        // C7: independence 3, no simplicial vertex so the branch is exercised
        let c7 = Complex2::new(
            (0..8).map(|i| i.to_string()).collect(),
            (1..8).map(|i| [0, i]).chain((1..8).map(|i| [i, i % 7 + 1])).collect(),
            vec![],
        )
        .unwrap();
        assert_eq!(local_dimension(&c7, 0), Ok(3));
        assert_eq!(brute_local_dimension(&c7, 0), 3);
    }

    #[test]
    fn fibers_examples() {
        let k33 = star(&[3, 3]);
        assert_eq!(fibers_through(&k33, 4).unwrap(), vec![vec![1, 4, 7], vec![3, 4, 5]]);
        assert_eq!(fibers_through(&k(5), 0).unwrap(), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(fibers_through(&star(&[3, 3, 3]), 0).unwrap().len(), 3);
    }

    #[test]
    fn family_counts() {
        let f = maximal_subsurface_subgraphs(&star(&[3, 3])).unwrap();
        assert_eq!(f.members.len(), 16);
        assert_eq!(f.by_dimension(), BTreeMap::from([(0, 9), (1, 6), (2, 1)]));
        assert_eq!(maximal_subsurface_subgraphs(&k(4)).unwrap().members.len(), 5);
        // partial tuples of a 3 x 3 x 3 grid: 4^3
        assert_eq!(maximal_subsurface_subgraphs(&star(&[3, 3, 3])).unwrap().members.len(), 64);
        let f = maximal_subsurface_subgraphs(&star(&[2, 3])).unwrap();
        assert_eq!(f.members[0].vertices, (0..6).collect::<Vec<_>>());
        // every singleton lies in two fibers and the whole
        let singleton = f.members.iter().position(|m| m.dimension == 0).unwrap();
        assert_eq!(f.inclusion_order.iter().filter(|p| p.0 == singleton).count(), 3);
    }

    #[test]
    fn rejects_non_products() {
        let path = Complex2::new(vec!["a".into(), "b".into(), "c".into()], vec![[0, 1], [1, 2]], vec![]).unwrap();
        assert!(matches!(maximal_subsurface_subgraphs(&path), Err(ReconstructError::NotProductLike(_))));
        let c5 = Complex2::new(
            (0..5).map(|i| i.to_string()).collect(),
            (0..5).map(|i| [i, (i + 1) % 5]).collect(),
            vec![],
        )
        .unwrap();
        assert!(matches!(maximal_subsurface_subgraphs(&c5), Err(ReconstructError::NotProductLike(_))));
    }

    #[test]
    fn roundtrip_small() {
        for sizes in [vec![3, 3], vec![4], vec![2, 3, 4], vec![1, 3]] {
            let rebuilt = reconstruct_curve_complex(&star(&sizes)).unwrap();
            let fs: Vec<Complex2> = sizes.iter().map(|&n| k(n)).collect();
            let direct = direct_curve_complex(&fs).unwrap();
            assert!(simplicially_isomorphic(&rebuilt, &direct).is_some(), "{sizes:?}");
        }
        let r = reconstruct_curve_complex(&star(&[3, 3])).unwrap();
        assert_eq!(r.f_vector(), vec![6, 9]);
        assert_eq!(reconstruct_curve_complex(&k(4)).unwrap().f_vector(), vec![4]);
    }

    #[test]
    fn deadline_in_the_past() {
        let opts = Options {
            deadline: Some(Instant::now()),
            ..Options::default()
        };
        assert_eq!(
            maximal_subsurface_subgraphs_with(&star(&[3, 3]), &opts),
            Err(ReconstructError::DeadlineExceeded)
        );
    }

    #[test]
    fn aut_inclusion() {
        let f2 = farey_level(2).unwrap();
        let mut k3 = f2.one_skeleton();
        k3.set_flavor(Flavor::Star);
        let r = check_aut_inclusion(&f2, &k3).unwrap();
        assert!(r.inclusion_holds);
        assert_eq!((r.aut_cp_order, r.aut_cs_order, r.index), (6, 6, Some(1)));

        let f3 = farey_level(3).unwrap();
        let cp = product_pants(&[f3.clone(), f3.clone()]).unwrap().flattened;
        let cs = complete_closure(&cp).unwrap();
        let r = check_aut_inclusion(&cp, &cs).unwrap();
        assert!(r.inclusion_holds);
        // tetrahedron 1-skeleton is K4, so both are K4 x K4: 2 * 24^2
        assert_eq!((r.aut_cp_order, r.aut_cs_order), (1152, 1152));

        assert_eq!(check_aut_inclusion(&f2, &k(4)), Err(ReconstructError::VertexSetMismatch));
        assert_eq!(check_aut_inclusion(&f2, &k(3)), Err(ReconstructError::VertexSetMismatch));
    }

    #[test]
    fn report_from_pants_input() {
        let f3 = farey_level(3).unwrap();
        let cp = product_pants(&[f3.clone(), farey_level(2).unwrap()]).unwrap().flattened;
        let r = reconstruct_report(&cp, &Options::default()).unwrap();
        assert!(r.roundtrip_iso);
        assert_eq!(r.members, 4 * 3 + 4 + 3 + 1);
        assert!(r.aut_cp_order.is_some());
    }
}

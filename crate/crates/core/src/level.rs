//! Congruence quotients of the Farey tessellation.
//!
//! `farey_level(m)` is the coset geometry of `PSL2(Z/m)` with respect to
//! `<T>`, `<S>` and `<R>`: vertices are cusp classes `±(p:q)`, edges join the
//! two columns of a group element and triangles are the orbits
//! `(g e1, g e2, g (e1 + e2))`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::farey::{farey_ball, slopes_of, FareyError, Psl2Matrix};
use crate::graph::{canonical_cycle, Complex2, Flavor, GraphError};
use crate::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LevelError {
    #[error("modulus {m} outside 2..={limit}")]
    ModulusLimit { m: u32, limit: u32 },
    #[error("{small} does not divide {big}")]
    NotDivisible { big: u32, small: u32 },
    #[error("cusp label {0:?} not recognized")]
    BadLabel(String),
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_modulus(m: u32, limits: &Limits) -> Result<(), LevelError> {
    if m < 2 || m > limits.max_modulus {
        return Err(LevelError::ModulusLimit {
            m,
            limit: limits.max_modulus,
        });
    }
    Ok(())
}

fn reduce(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

fn neg(x: u32, m: u32) -> u32 {
    (m - x) % m
}

/// Element of `PSL2(Z/m)`, stored as the lexicographically least of
/// `±(a, b, c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Psl2ModM {
    m: u32,
    e: [u32; 4],
}

impl Psl2ModM {
    /// None unless `ad - bc = 1 (mod m)`.
    pub fn new(m: u32, a: i64, b: i64, c: i64, d: i64) -> Option<Psl2ModM> {
        let e = [a, b, c, d].map(|x| reduce(x, m));
        let det = (e[0] as u64 * e[3] as u64 + (m as u64 - (e[1] as u64 * e[2] as u64) % m as u64)) % m as u64;
        (det == 1 % m as u64).then(|| Psl2ModM::canonical(m, e))
    }

    fn canonical(m: u32, e: [u32; 4]) -> Psl2ModM {
        let n = e.map(|x| neg(x, m));
        Psl2ModM { m, e: e.min(n) }
    }

    pub fn identity(m: u32) -> Psl2ModM {
        Psl2ModM::canonical(m, [1 % m, 0, 0, 1 % m])
    }

    /// Reduction of an integral matrix.
    pub fn from_matrix(m: u32, g: Psl2Matrix) -> Psl2ModM {
        let [a, b, c, d] = g.entries();
        Psl2ModM::new(m, a, b, c, d).expect("reduction keeps determinant 1")
    }

    pub fn modulus(self) -> u32 {
        self.m
    }

    pub fn entries(self) -> [u32; 4] {
        self.e
    }

    pub fn mul(self, o: Psl2ModM) -> Psl2ModM {
        let m = self.m as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        let [p, q, r, s] = o.e.map(u64::from);
        let e = [(a * p + b * r) % m, (a * q + b * s) % m, (c * p + d * r) % m, (c * q + d * s) % m];
        Psl2ModM::canonical(self.m, e.map(|x| x as u32))
    }

    pub fn inverse(self) -> Psl2ModM {
        let [a, b, c, d] = self.e;
        Psl2ModM::canonical(self.m, [d, neg(b, self.m), neg(c, self.m), a])
    }

    /// Image of a cusp under the linear action on columns.
    pub fn act(self, cusp: Cusp) -> Cusp {
        let m = self.m as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        let (p, q) = (cusp.p as u64, cusp.q as u64);
        Cusp::new(self.m, ((a * p + b * q) % m) as i64, ((c * p + d * q) % m) as i64)
    }

    fn column(self, j: usize) -> Cusp {
        Cusp::new(self.m, self.e[j] as i64, self.e[2 + j] as i64)
    }
}

/// A cusp class `±(p:q)` in `(Z/m)^2`, stored as the lexicographically least
/// of the pair and its negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cusp {
    p: u32,
    q: u32,
    m: u32,
}

impl Cusp {
    pub fn new(m: u32, p: i64, q: i64) -> Cusp {
        let (p, q) = (reduce(p, m), reduce(q, m));
        let (np, nq) = (neg(p, m), neg(q, m));
        let (p, q) = (p, q).min((np, nq));
        Cusp { p, q, m }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn q(self) -> u32 {
        self.q
    }

    /// Entrywise reduction to a divisor of the modulus.
    pub fn reduce_to(self, small: u32) -> Cusp {
        Cusp::new(small, self.p as i64, self.q as i64)
    }

    pub fn parse(s: &str) -> Result<Cusp, LevelError> {
        let bad = || LevelError::BadLabel(s.to_string());
        let rest = s.strip_prefix('(').ok_or_else(bad)?;
        let (pair, m) = rest.split_once(") mod ").ok_or_else(bad)?;
        let (p, q) = pair.split_once(':').ok_or_else(bad)?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        Ok(Cusp::new(m, p, q))
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}) mod {}", self.p, self.q, self.m)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All cusp classes at level `m`, sorted: the pairs with `gcd(p, q, m) = 1`
/// up to sign.
pub fn cusps(m: u32) -> Vec<Cusp> {
    let mut set = BTreeSet::new();
    for p in 0..m {
        for q in 0..m {
            if gcd(gcd(p, q), m) == 1 {
                set.insert(Cusp::new(m, p as i64, q as i64));
            }
        }
    }
    set.into_iter().collect()
}

/// `PSL2(Z/m)` enumerated by brute force over all quadruples.
#[derive(Clone, Debug)]
pub struct PslGroup {
    m: u32,
    elements: Vec<Psl2ModM>,
    index: HashMap<Psl2ModM, usize>,
}

impl PslGroup {
    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Psl2ModM] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Psl2ModM {
        self.elements[i]
    }

    pub fn index_of(&self, g: Psl2ModM) -> Option<usize> {
        self.index.get(&g).copied()
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(self.elements[j])]
    }

    /// Order of `g` in the group.
    pub fn element_order(&self, g: Psl2ModM) -> usize {
        let id = Psl2ModM::identity(self.m);
        let mut x = g;
        let mut k = 1;
        while x != id {
            x = x.mul(g);
            k += 1;
        }
        k
    }
}

pub fn psl2_enumerate(m: u32) -> Result<PslGroup, LevelError> {
    psl2_enumerate_with(m, &Limits::default())
}

pub fn psl2_enumerate_with(m: u32, limits: &Limits) -> Result<PslGroup, LevelError> {
    check_modulus(m, limits)?;
    let mut set = BTreeSet::new();
    let r = m as i64;
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    if let Some(g) = Psl2ModM::new(m, a, b, c, d) {
                        set.insert(g);
                    }
                }
            }
        }
    }
    let elements: Vec<Psl2ModM> = set.into_iter().collect();
    let index = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    Ok(PslGroup { m, elements, index })
}

/// Cosets of `<T>`, `<S>`, `<R>` in `PSL2(Z/m)` with their incidences.
#[derive(Clone, Debug)]
pub struct CosetGeometry {
    pub group: PslGroup,
    /// Cusp class of each vertex coset, sorted.
    pub vertices: Vec<Cusp>,
    /// Element indices of each edge coset `{g, gS}`.
    pub edge_cosets: Vec<Vec<usize>>,
    /// Element indices of each triangle coset `{g, gR, gR^2}`.
    pub triangle_cosets: Vec<Vec<usize>>,
    /// Endpoints of each edge coset.
    pub edges: Vec<[usize; 2]>,
    /// Oriented vertices `(g e1, g e2, g(e1 + e2))` of each triangle coset.
    pub triangles: Vec<[usize; 3]>,
}

/// Partition of the group into the left cosets of the cyclic subgroup
/// generated by `h`, each listed from its least element, in order of least
/// element.
fn left_cosets(group: &PslGroup, h: Psl2ModM) -> Vec<Vec<usize>> {
    let hi = group.index_of(h).expect("generator lies in the group");
    let mut seen = vec![false; group.order()];
    let mut cosets = Vec::new();
    for g in 0..group.order() {
        if seen[g] {
            continue;
        }
        let mut coset = vec![g];
        seen[g] = true;
        let mut x = group.mul(g, hi);
        while x != g {
            seen[x] = true;
            coset.push(x);
            x = group.mul(x, hi);
        }
        cosets.push(coset);
    }
    cosets
}

impl CosetGeometry {
    pub fn build(m: u32) -> Result<CosetGeometry, LevelError> {
        CosetGeometry::build_with(m, &Limits::default())
    }

    pub fn build_with(m: u32, limits: &Limits) -> Result<CosetGeometry, LevelError> {
        let group = psl2_enumerate_with(m, limits)?;
        let t = Psl2ModM::from_matrix(m, Psl2Matrix::T);
        let s = Psl2ModM::from_matrix(m, Psl2Matrix::S);
        let r = Psl2ModM::from_matrix(m, Psl2Matrix::R);

        let vertex_cosets = left_cosets(&group, t);
        let mut vertices: Vec<Cusp> = vertex_cosets.iter().map(|c| group.element(c[0]).column(0)).collect();
        vertices.sort_unstable();
        debug_assert_eq!(vertices.len(), vertices.iter().collect::<HashSet<_>>().len());
        let pos: HashMap<Cusp, usize> = vertices.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let vertex_of = |g: usize| pos[&group.element(g).column(0)];

        let edge_cosets = left_cosets(&group, s);
        let edges = edge_cosets
            .iter()
            .map(|c| {
                let g = group.element(c[0]);
                [pos[&g.column(0)], pos[&g.column(1)]]
            })
            .collect();

        let triangle_cosets = left_cosets(&group, r);
        let triangles = triangle_cosets
            .iter()
            .map(|c| {
                // coset listed as g, gR, gR^2: first columns g e1, g e2, -g(e1 + e2)
                [vertex_of(c[0]), vertex_of(c[1]), vertex_of(c[2])]
            })
            .collect();

        Ok(CosetGeometry {
            group,
            vertices,
            edge_cosets,
            triangle_cosets,
            edges,
            triangles,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.group.modulus()
    }

    pub fn into_complex(self) -> Complex2 {
        let m = self.modulus();
        let n = self.vertices.len();
        let labels = self.vertices.iter().map(Cusp::to_string).collect();
        let mut c = Complex2::new(labels, self.edges, self.triangles).expect("coset incidences are valid");
        c.set_flavor(Flavor::Pants);
        c.set_fibers(&[(0..n).collect()]);
        c.set_meta("level", m.to_string());
        c
    }
}

/// The triangulated modular curve at level `m`.
pub fn farey_level(m: u32) -> Result<Complex2, LevelError> {
    farey_level_with(m, &Limits::default())
}

pub fn farey_level_with(m: u32, limits: &Limits) -> Result<Complex2, LevelError> {
    Ok(CosetGeometry::build_with(m, limits)?.into_complex())
}

/// Complete graph on the cusp classes at level `m`, with no triangles.
pub fn gstar_level(m: u32) -> Result<Complex2, LevelError> {
    gstar_level_with(m, &Limits::default())
}

pub fn gstar_level_with(m: u32, limits: &Limits) -> Result<Complex2, LevelError> {
    check_modulus(m, limits)?;
    let labels: Vec<String> = cusps(m).iter().map(Cusp::to_string).collect();
    let n = labels.len();
    let mut c = Complex2::complete_graph(n).relabeled(labels)?;
    c.set_flavor(Flavor::Star);
    c.set_meta("level", m.to_string());
    Ok(c)
}

/// Vertex map from `farey_level(big)` to `farey_level(small)` reducing cusp
/// labels entrywise.
pub fn project_level(big: u32, small: u32) -> Result<Vec<usize>, LevelError> {
    project_level_with(big, small, &Limits::default())
}

pub fn project_level_with(big: u32, small: u32, limits: &Limits) -> Result<Vec<usize>, LevelError> {
    check_modulus(big, limits)?;
    check_modulus(small, limits)?;
    if !big.is_multiple_of(small) {
        return Err(LevelError::NotDivisible { big, small });
    }
    let target: HashMap<Cusp, usize> = cusps(small).into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    Ok(cusps(big).into_iter().map(|c| target[&c.reduce_to(small)]).collect())
}

/// Outcome of comparing a projected Farey ball with the coset construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallReport {
    pub m: u32,
    pub depth: u32,
    /// Vertex classes, edge pairs and oriented triangles of the projected
    /// ball coincide with those of `farey_level(m)`.
    pub matches: bool,
    /// The projected edge set is the same at `depth - 1` and `depth`.
    pub stabilized: bool,
    pub vertices_hit: usize,
    pub vertices_expected: usize,
    pub edges_found: usize,
    pub edges_expected: usize,
    pub triangles_found: usize,
    pub triangles_expected: usize,
}

type Projected = (BTreeSet<usize>, BTreeSet<[usize; 2]>, BTreeSet<[usize; 3]>);

fn project_ball(depth: u32, m: u32, pos: &HashMap<Cusp, usize>) -> Result<Projected, LevelError> {
    let ball = farey_ball(depth)?;
    let class: Vec<usize> = slopes_of(&ball)?
        .into_iter()
        .map(|s| pos[&Cusp::new(m, s.p(), s.q())])
        .collect();
    let vertices = class.iter().copied().collect();
    let edges = ball
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (class[e[0]], class[e[1]]);
            [a.min(b), a.max(b)]
        })
        .collect();
    let triangles = ball
        .triangles()
        .iter()
        .map(|t| canonical_cycle(t.map(|v| class[v])))
        .collect();
    Ok((vertices, edges, triangles))
}

/// Projects `farey_ball(depth)` to cusp classes mod `m` and compares the
/// induced simple complex with `farey_level(m)`. Multiplicities of parallel
/// edges are not compared.
pub fn verify_against_ball(m: u32, depth: u32) -> Result<BallReport, LevelError> {
    let level = farey_level(m)?;
    let pos: HashMap<Cusp, usize> = level
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| Ok((Cusp::parse(l)?, i)))
        .collect::<Result<_, LevelError>>()?;
    let (vs, es, ts) = project_ball(depth, m, &pos)?;
    let want_edges: BTreeSet<[usize; 2]> = level.edge_pairs().into_iter().collect();
    let want_tris: BTreeSet<[usize; 3]> = level.triangles().iter().map(|&t| canonical_cycle(t)).collect();
    let stabilized = depth > 0 && project_ball(depth - 1, m, &pos)?.1 == es;
    Ok(BallReport {
        m,
        depth,
        matches: vs.len() == level.vertex_count() && es == want_edges && ts == want_tris,
        stabilized,
        vertices_hit: vs.len(),
        vertices_expected: level.vertex_count(),
        edges_found: es.len(),
        edges_expected: want_edges.len(),
        triangles_found: ts.len(),
        triangles_expected: want_tris.len(),
    })
}

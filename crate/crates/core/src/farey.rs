//! Curves on the modular-dimension-1 surfaces `S_{0,4}` and `S_{1,1}` as
//! slopes, the Farey tessellation, and the modular group action.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Complex2, Flavor, GraphError};
use crate::surface::SurfaceType;
use crate::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FareyError {
    #[error("surface type ({0}) does not have modular dimension 1")]
    WrongType(SurfaceType),
    #[error("farey ball depth {depth} over limit {limit}")]
    DepthLimit { depth: u32, limit: u32 },
    #[error("complex carries no fiber metadata")]
    MissingFiberMetadata,
    #[error("({0},{1}) is not a primitive integer vector")]
    InvalidSlope(i64, i64),
    #[error("matrix has determinant {0}, expected 1")]
    InvalidMatrix(i64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Isotopy class of an essential simple closed curve on a dimension-1
/// surface: a primitive integer vector up to sign, stored with `q > 0` or
/// as `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ZERO: Slope = Slope { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Slope, FareyError> {
        if gcd(p, q) != 1 {
            return Err(FareyError::InvalidSlope(p, q));
        }
        Ok(Slope::canonical(p, q))
    }

    fn canonical(p: i64, q: i64) -> Slope {
        if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FareyError::InvalidSlope(0, 0);
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

/// `|p_s q_t - q_s p_t|`.
pub fn slope_det(s: Slope, t: Slope) -> u64 {
    (s.p * t.q - s.q * t.p).unsigned_abs()
}

fn dimension_one(t: SurfaceType) -> Result<(), FareyError> {
    match t.modular_dimension() {
        Ok(1) => Ok(()),
        _ => Err(FareyError::WrongType(t)),
    }
}

/// Geometric intersection number of two curves on `S_{1,1}` or `S_{0,4}`.
pub fn intersection_number(t: SurfaceType, s: Slope, u: Slope) -> Result<u64, FareyError> {
    dimension_one(t)?;
    let det = slope_det(s, u);
    Ok(if t.genus == 1 { det } else { 2 * det })
}

/// Whether the two curves differ by an elementary move, i.e. span a Farey
/// edge.
pub fn is_elementary_move(t: SurfaceType, s: Slope, u: Slope) -> Result<bool, FareyError> {
    dimension_one(t)?;
    Ok(slope_det(s, u) == 1)
}

/// Element of `PSL2(Z)`, sign-normalized so that the first nonzero entry of
/// `(a, b, c, d)` is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Psl2Matrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl Psl2Matrix {
    pub const IDENTITY: Psl2Matrix = Psl2Matrix { a: 1, b: 0, c: 0, d: 1 };
    /// `[[1, 1], [0, 1]]`, fixing `1/0`.
    pub const T: Psl2Matrix = Psl2Matrix { a: 1, b: 1, c: 0, d: 1 };
    /// `[[0, -1], [1, 0]]`, swapping `1/0` and `0/1`.
    pub const S: Psl2Matrix = Psl2Matrix { a: 0, b: -1, c: 1, d: 0 };
    /// `[[0, -1], [1, -1]]`, cycling `1/0 -> 0/1 -> 1/1`.
    pub const R: Psl2Matrix = Psl2Matrix { a: 0, b: -1, c: 1, d: -1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Psl2Matrix, FareyError> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(FareyError::InvalidMatrix(det));
        }
        Ok(Psl2Matrix::normalized(a, b, c, d))
    }

    fn normalized(a: i64, b: i64, c: i64, d: i64) -> Psl2Matrix {
        let first = [a, b, c, d].into_iter().find(|&x| x != 0).unwrap_or(0);
        if first < 0 {
            Psl2Matrix { a: -a, b: -b, c: -c, d: -d }
        } else {
            Psl2Matrix { a, b, c, d }
        }
    }

    pub fn entries(self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(self) -> Psl2Matrix {
        Psl2Matrix::normalized(self.d, -self.b, -self.c, self.a)
    }
}

impl Mul for Psl2Matrix {
    type Output = Psl2Matrix;

    fn mul(self, o: Psl2Matrix) -> Psl2Matrix {
        Psl2Matrix::normalized(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Fractional-linear action `p/q -> (ap + bq)/(cp + dq)`.
pub fn moebius_act(m: Psl2Matrix, s: Slope) -> Slope {
    Slope::canonical(m.a * s.p + m.b * s.q, m.c * s.p + m.d * s.q)
}

pub fn farey_ball(depth: u32) -> Result<Complex2, FareyError> {
    farey_ball_with(depth, &Limits::default())
}

/// Disc of the Farey tessellation around the edge `1/0 -- 0/1`.
///
/// Starts from the triangles `(1/0, 0/1, 1/1)` and `(0/1, 1/0, -1/1)`, then
/// runs `depth` rounds in which every boundary edge gets the missing third
/// vertex of its outer triangle. Vertices are listed in insertion order and
/// triangles oriented consistently with `g(1/0), g(0/1), g(1/1)` for
/// `g` in `PSL2(Z)`.
pub fn farey_ball_with(depth: u32, limits: &Limits) -> Result<Complex2, FareyError> {
    if depth > limits.max_farey_depth {
        return Err(FareyError::DepthLimit {
            depth,
            limit: limits.max_farey_depth,
        });
    }
    let inf = Slope::INFINITY;
    let zero = Slope::ZERO;
    let one = Slope { p: 1, q: 1 };
    let minus_one = Slope { p: -1, q: 1 };
    let mut slopes = vec![inf, zero, one, minus_one];
    let mut edges = vec![[0, 1], [1, 2], [2, 0], [0, 3], [3, 1]];
    let mut triangles = vec![[0, 1, 2], [1, 0, 3]];
    // directed boundary edges (u, v) as they run in their triangle, with the
    // triangle's third vertex
    let mut boundary: Vec<(usize, usize, usize)> = vec![(1, 2, 0), (2, 0, 1), (0, 3, 1), (3, 1, 0)];

    for _ in 0..depth {
        let mut next = Vec::with_capacity(2 * boundary.len());
        for &(u, v, apex) in &boundary {
            let (su, sv) = (slopes[u], slopes[v]);
            let sum = Slope::canonical(su.p + sv.p, su.q + sv.q);
            let diff = Slope::canonical(su.p - sv.p, su.q - sv.q);
            let fresh = if sum == slopes[apex] { diff } else { sum };
            debug_assert!(sum == slopes[apex] || diff == slopes[apex]);
            let w = slopes.len();
            slopes.push(fresh);
            edges.push([u, w]);
            edges.push([w, v]);
            triangles.push([v, u, w]);
            next.push((u, w, v));
            next.push((w, v, u));
        }
        boundary = next;
    }

    let n = slopes.len();
    let labels = slopes.iter().map(Slope::to_string).collect();
    let mut c = Complex2::new(labels, edges, triangles)?;
    c.set_flavor(Flavor::Pants);
    c.set_fibers(&[(0..n).collect()]);
    c.set_meta("depth", depth.to_string());
    Ok(c)
}

/// Slope of each vertex of a complex labeled by [`Slope`]'s display form.
pub fn slopes_of(c: &Complex2) -> Result<Vec<Slope>, FareyError> {
    c.labels().iter().map(|l| l.parse()).collect()
}

/// Replaces every maximal Farey piece recorded in the `fibers` metadata by
/// the complete graph on its vertices; triangles become all 3-subsets of
/// each piece. Edges outside every piece are kept.
pub fn complete_closure(c: &Complex2) -> Result<Complex2, FareyError> {
    let pieces = c.fibers().ok_or(FareyError::MissingFiberMetadata)?;
    let mut piece_of: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, p) in pieces.iter().enumerate() {
        for &v in p {
            piece_of.entry(v).or_default().push(i);
        }
    }
    let mut edges = BTreeSet::new();
    let mut triangles = BTreeSet::new();
    for p in &pieces {
        let mut vs = p.clone();
        vs.sort_unstable();
        vs.dedup();
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                edges.insert([a, b]);
                for &x in &vs[j + 1..] {
                    triangles.insert([a, b, x]);
                }
            }
        }
    }
    for e in c.edges() {
        let shared = match (piece_of.get(&e[0]), piece_of.get(&e[1])) {
            (Some(a), Some(b)) => a.iter().any(|i| b.contains(i)),
            _ => false,
        };
        if !shared {
            edges.insert([e[0].min(e[1]), e[0].max(e[1])]);
        }
    }
    let mut out = Complex2::new(c.labels().to_vec(), edges.into_iter().collect(), triangles.into_iter().collect())?;
    for (k, v) in c.metadata() {
        out.set_meta(k.clone(), v.clone());
    }
    out.set_flavor(Flavor::Star);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    const ONE_ONE: SurfaceType = SurfaceType::new(1, 1);
    const ZERO_FOUR: SurfaceType = SurfaceType::new(0, 4);

    #[test]
    fn canonical_form() {
        assert_eq!(s(-1, 0), Slope::INFINITY);
        assert_eq!(s(1, -2), s(-1, 2));
        assert_eq!(s(-1, 2).to_string(), "-1/2");
        assert_eq!("3/-4".parse::<Slope>().unwrap(), s(-3, 4));
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(0, 0).is_err());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(slope_det(s(0, 1), s(1, 0)), 1);
        assert_eq!(slope_det(s(1, 2), s(1, 3)), 1);
        assert_eq!(slope_det(s(5, 7), s(5, 7)), 0);
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_number(ONE_ONE, s(0, 1), s(1, 0)), Ok(1));
        assert_eq!(intersection_number(ZERO_FOUR, s(0, 1), s(1, 0)), Ok(2));
        assert_eq!(intersection_number(ONE_ONE, s(2, 3), s(2, 3)), Ok(0));
        assert_eq!(
            intersection_number(SurfaceType::new(0, 5), s(0, 1), s(1, 0)),
            Err(FareyError::WrongType(SurfaceType::new(0, 5)))
        );
    }

    #[test]
    fn elementary_moves() {
        assert_eq!(is_elementary_move(ONE_ONE, s(0, 1), s(1, 1)), Ok(true));
        assert_eq!(is_elementary_move(ONE_ONE, s(0, 1), s(2, 1)), Ok(false));
        assert_eq!(is_elementary_move(ZERO_FOUR, s(1, 2), s(1, 3)), Ok(true));
        assert!(is_elementary_move(SurfaceType::new(2, 0), s(0, 1), s(1, 1)).is_err());
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius_act(Psl2Matrix::IDENTITY, s(3, 5)), s(3, 5));
        assert_eq!(moebius_act(Psl2Matrix::T, s(0, 1)), s(1, 1));
        assert_eq!(moebius_act(Psl2Matrix::S, Slope::INFINITY), s(0, 1));
        let r = Psl2Matrix::R;
        assert_eq!(moebius_act(r, Slope::INFINITY), Slope::ZERO);
        assert_eq!(moebius_act(r, Slope::ZERO), s(1, 1));
        assert_eq!(r * r * r, Psl2Matrix::IDENTITY);
        assert_eq!(Psl2Matrix::S * Psl2Matrix::S, Psl2Matrix::IDENTITY);
        assert!(Psl2Matrix::new(1, 2, 3, 4).is_err());
    }

    #[test]
    fn ball_depth_zero() {
        let b = farey_ball(0).unwrap();
        assert_eq!(b.labels(), &["1/0", "0/1", "1/1", "-1/1"]);
        assert_eq!((b.vertex_count(), b.edge_count(), b.triangle_count()), (4, 5, 2));
        assert_eq!(b.flavor(), Flavor::Pants);
    }

    /// Independent count of depth-1 vertices: every Farey neighbor pair on
    /// the boundary of the depth-0 disc has exactly one outer common
    /// neighbor, found by searching small slopes.
    #[test]
    fn ball_depth_one_matches_enumeration() {
        let b0 = farey_ball(0).unwrap();
        let slopes0 = slopes_of(&b0).unwrap();
        let mut outer = BTreeSet::new();
        for e in b0.edges() {
            let (u, v) = (slopes0[e[0]], slopes0[e[1]]);
            let common: BTreeSet<Slope> = (-4i64..=4)
                .flat_map(|p| (0i64..=4).map(move |q| (p, q)))
                .filter_map(|(p, q)| Slope::new(p, q).ok())
                .filter(|&w| slope_det(w, u) == 1 && slope_det(w, v) == 1)
                .collect();
            assert_eq!(common.len(), 2);
            for w in common {
                if !slopes0.contains(&w) {
                    outer.insert(w);
                }
            }
        }
        let b1 = farey_ball(1).unwrap();
        assert_eq!(outer.len(), 4);
        assert_eq!(b1.vertex_count(), 4 + outer.len());
        let got: BTreeSet<Slope> = slopes_of(&b1).unwrap().into_iter().skip(4).collect();
        assert_eq!(got, outer);
    }

    #[test]
    fn ball_edges_and_triangles_are_farey() {
        let b = farey_ball(6).unwrap();
        let sl = slopes_of(&b).unwrap();
        assert_eq!(b.vertex_count(), 4 << 6);
        for e in b.edges() {
            assert_eq!(slope_det(sl[e[0]], sl[e[1]]), 1);
        }
        for t in b.triangles() {
            let [x, y, z] = t.map(|i| sl[i]);
            assert_eq!((slope_det(x, y), slope_det(y, z), slope_det(x, z)), (1, 1, 1));
            let mediant = |a: Slope, b: Slope, c: Slope| {
                [Slope::canonical(a.p + b.p, a.q + b.q), Slope::canonical(a.p - b.p, a.q - b.q)].contains(&c)
            };
            assert!(mediant(x, y, z) || mediant(y, z, x) || mediant(z, x, y));
        }
        // a disc: consistently oriented, boundary a single cycle
        let mut directed = std::collections::HashSet::new();
        for t in b.triangles() {
            for (a, c) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                assert!(directed.insert((a, c)));
            }
        }
        assert_eq!(b.euler_characteristic(), 1);
    }

    #[test]
    fn depth_limit() {
        assert_eq!(farey_ball(21), Err(FareyError::DepthLimit { depth: 21, limit: 20 }));
    }

    #[test]
    fn closure_of_base_disc_is_k4() {
        let g = complete_closure(&farey_ball(0).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.triangle_count()), (4, 6, 4));
        assert_eq!(g.flavor(), Flavor::Star);
        assert_eq!(complete_closure(&g).unwrap(), g);
        assert_eq!(
            complete_closure(&Complex2::complete_graph(3).with_meta("fibers", "oops")),
            Err(FareyError::MissingFiberMetadata)
        );
    }

    fn slope_strategy() -> impl Strategy<Value = Slope> {
        (-30i64..30, 0i64..30).prop_filter_map("primitive", |(p, q)| Slope::new(p, q).ok())
    }

    fn matrix_strategy() -> impl Strategy<Value = Psl2Matrix> {
        prop::collection::vec(0usize..4, 0..8).prop_map(|word| {
            let gens = [Psl2Matrix::T, Psl2Matrix::S, Psl2Matrix::R, Psl2Matrix::T.inverse()];
            word.into_iter().fold(Psl2Matrix::IDENTITY, |m, i| m * gens[i])
        })
    }

    proptest! {
        #[test]
        fn det_is_invariant(m in matrix_strategy(), a in slope_strategy(), b in slope_strategy()) {
            prop_assert_eq!(slope_det(moebius_act(m, a), moebius_act(m, b)), slope_det(a, b));
        }

        #[test]
        fn action_is_a_group_action(m in matrix_strategy(), n in matrix_strategy(), a in slope_strategy()) {
            prop_assert_eq!(moebius_act(m * n, a), moebius_act(m, moebius_act(n, a)));
            prop_assert_eq!(moebius_act(m.inverse(), moebius_act(m, a)), a);
        }

        #[test]
        fn moves_symmetric_irreflexive(a in slope_strategy(), b in slope_strategy()) {
            prop_assert_eq!(
                is_elementary_move(ONE_ONE, a, b).unwrap(),
                is_elementary_move(ONE_ONE, b, a).unwrap()
            );
            prop_assert!(!is_elementary_move(ZERO_FOUR, a, a).unwrap());
        }
    }
}

//! Complexes of disconnected surfaces built coordinatewise from their
//! dimension-one pieces.
//!
//! A vertex of a product is a tuple of factor vertices, indexed
//! lexicographically with the last coordinate varying fastest. Every edge
//! changes exactly one coordinate. In the pants flavor that coordinate moves
//! along a factor edge; in the star flavor it may jump to any other vertex of
//! the factor.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Complex2, Flavor, GraphError};
use crate::level::{farey_level_with, gstar_level_with, LevelError};
use crate::simplicial::SimplicialComplex;
use crate::surface::{SurfaceSpec, SurfaceType};
use crate::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("factor {index} has flavor {flavor:?}, not allowed in a {kind:?} product")]
    MixedFlavor { index: usize, flavor: Flavor, kind: Flavor },
    #[error("factor {0} is not a complete graph")]
    NotComplete(usize),
    #[error("product would have {count} {what}, limit {limit}")]
    SizeLimit { what: &'static str, count: usize, limit: usize },
    #[error("partial tuple {0:?} does not fit the factors")]
    InvalidCoordinate(Vec<Option<usize>>),
    #[error("surface piece ({0}) has no finite model here")]
    UnsupportedSurface(SurfaceType),
    #[error(transparent)]
    Level(#[from] LevelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Largest number of factors accepted by [`direct_curve_complex`].
pub const MAX_DIRECT_FACTORS: usize = 6;
const MAX_SIMPLICES: usize = 1_000_000;

/// A partial tuple: `Some(v)` fixes a coordinate, `None` leaves it free.
pub type PartialTuple = Vec<Option<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductComplex {
    pub factors: Vec<Complex2>,
    pub kind: Flavor,
    pub flattened: Complex2,
    /// Coordinate changed by each edge of `flattened`.
    pub coordinate_of_edge: Vec<usize>,
}

/// Mixed-radix indexing of tuples.
#[derive(Clone, Debug)]
struct Radix {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Radix {
    fn new(sizes: Vec<usize>) -> Radix {
        let mut strides = vec![1; sizes.len()];
        for i in (0..sizes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        let total = sizes.iter().product();
        Radix { sizes, strides, total }
    }

    fn tuple(&self, mut x: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let c = x / s;
                x %= s;
                c
            })
            .collect()
    }

    fn index(&self, t: &[usize]) -> usize {
        t.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    /// Tuple indices with coordinate `i` set to zero, in increasing order.
    fn bases(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.total).filter(move |&x| (x / self.strides[i]).is_multiple_of(self.sizes[i]))
    }
}

impl ProductComplex {
    pub fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(Complex2::vertex_count).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.flattened.vertex_count()
    }

    fn radix(&self) -> Radix {
        Radix::new(self.sizes())
    }

    /// Coordinates of a flattened vertex.
    pub fn tuple_of(&self, v: usize) -> Vec<usize> {
        self.radix().tuple(v)
    }

    pub fn vertex_of(&self, tuple: &[usize]) -> usize {
        self.radix().index(tuple)
    }

    fn check_partial(&self, sigma: &[Option<usize>]) -> Result<(), ProductError> {
        let sizes = self.sizes();
        if sigma.len() != sizes.len() || sigma.iter().zip(&sizes).any(|(c, &n)| c.is_some_and(|x| x >= n)) {
            return Err(ProductError::InvalidCoordinate(sigma.to_vec()));
        }
        Ok(())
    }

    /// Vertices whose tuple agrees with `sigma` on its fixed coordinates.
    pub fn vertices_matching(&self, sigma: &[Option<usize>]) -> Result<Vec<usize>, ProductError> {
        self.check_partial(sigma)?;
        let radix = self.radix();
        Ok((0..radix.total)
            .filter(|&v| {
                radix
                    .tuple(v)
                    .iter()
                    .zip(sigma)
                    .all(|(c, s)| s.is_none_or(|x| x == *c))
            })
            .collect())
    }
}

fn tuple_label(factors: &[Complex2], tuple: &[usize]) -> String {
    let parts: Vec<&str> = factors.iter().zip(tuple).map(|(f, &c)| f.label(c)).collect();
    format!("({})", parts.join("|"))
}

fn is_complete(c: &Complex2) -> bool {
    let n = c.vertex_count();
    c.edge_pairs().len() == n * n.saturating_sub(1) / 2
}

/// Pieces of a factor: its recorded fibers, or the whole vertex set.
fn factor_pieces(c: &Complex2) -> Vec<Vec<usize>> {
    if c.flavor() == Flavor::Point {
        return Vec::new();
    }
    c.fibers().unwrap_or_else(|| vec![(0..c.vertex_count()).collect()])
}

fn build(factors: &[Complex2], kind: Flavor, limits: &Limits) -> Result<ProductComplex, ProductError> {
    let sizes: Vec<usize> = factors.iter().map(Complex2::vertex_count).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
    let total = match total {
        Some(t) if t <= limits.max_vertices => t,
        _ => {
            return Err(ProductError::SizeLimit {
                what: "vertices",
                count: total.unwrap_or(usize::MAX),
                limit: limits.max_vertices,
            })
        }
    };
    let radix = Radix::new(sizes);
    let labels = (0..total).map(|v| tuple_label(factors, &radix.tuple(v))).collect();

    let mut edges = Vec::new();
    let mut coordinate_of_edge = Vec::new();
    let mut triangles = Vec::new();
    let mut fibers = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let s = radix.strides[i];
        let (local_edges, local_triangles): (Vec<[usize; 2]>, Vec<[usize; 3]>) = match kind {
            Flavor::Pants => (f.edges().to_vec(), f.triangles().to_vec()),
            _ => {
                let n = f.vertex_count();
                let mut es = Vec::new();
                let mut ts = Vec::new();
                for a in 0..n {
                    for b in a + 1..n {
                        es.push([a, b]);
                        for c in b + 1..n {
                            ts.push([a, b, c]);
                        }
                    }
                }
                (es, ts)
            }
        };
        let pieces = factor_pieces(f);
        for base in radix.bases(i) {
            for e in &local_edges {
                edges.push([base + e[0] * s, base + e[1] * s]);
                coordinate_of_edge.push(i);
            }
            for t in &local_triangles {
                triangles.push(t.map(|x| base + x * s));
            }
            for p in pieces.iter().filter(|p| p.len() >= 2) {
                fibers.push(p.iter().map(|&x| base + x * s).collect::<Vec<usize>>());
            }
        }
    }

    let mut flattened = Complex2::new(labels, edges, triangles)?;
    flattened.set_flavor(kind);
    flattened.set_fibers(&fibers);
    let sizes_json = serde_json::to_string(&radix.sizes).expect("sizes serialize");
    flattened.set_meta("factor_sizes", sizes_json);
    Ok(ProductComplex {
        factors: factors.to_vec(),
        kind,
        flattened,
        coordinate_of_edge,
    })
}

pub fn product_pants(factors: &[Complex2]) -> Result<ProductComplex, ProductError> {
    product_pants_with(factors, &Limits::default())
}

/// Product of pants graphs: edges are factor edges times vertices of the
/// other factors, triangles likewise.
pub fn product_pants_with(factors: &[Complex2], limits: &Limits) -> Result<ProductComplex, ProductError> {
    for (index, f) in factors.iter().enumerate() {
        if f.flavor() == Flavor::Star {
            return Err(ProductError::MixedFlavor {
                index,
                flavor: Flavor::Star,
                kind: Flavor::Pants,
            });
        }
    }
    build(factors, Flavor::Pants, limits)
}

pub fn product_star(factors: &[Complex2]) -> Result<ProductComplex, ProductError> {
    product_star_with(factors, &Limits::default())
}

/// Hamming-style product of complete graphs: tuples differing in exactly one
/// coordinate are adjacent; triangles are the 3-subsets of each axis fiber.
pub fn product_star_with(factors: &[Complex2], limits: &Limits) -> Result<ProductComplex, ProductError> {
    for (index, f) in factors.iter().enumerate() {
        if f.flavor() == Flavor::Pants {
            return Err(ProductError::MixedFlavor {
                index,
                flavor: Flavor::Pants,
                kind: Flavor::Star,
            });
        }
        if f.flavor() != Flavor::Point && !is_complete(f) {
            return Err(ProductError::NotComplete(index));
        }
    }
    build(factors, Flavor::Star, limits)
}

/// The curve complex of the disjoint union: a k-simplex picks k + 1 factors
/// and one vertex in each. Single-vertex factors (pants) carry no curves and
/// are skipped.
/// Vertices are labeled `"{factor}:{label}"`.
pub fn direct_curve_complex(factors: &[Complex2]) -> Result<SimplicialComplex, ProductError> {
    if factors.len() > MAX_DIRECT_FACTORS {
        return Err(ProductError::SizeLimit {
            what: "factors",
            count: factors.len(),
            limit: MAX_DIRECT_FACTORS,
        });
    }
    let live: Vec<(usize, &Complex2)> = factors
        .iter()
        .enumerate()
        .filter(|(_, f)| f.flavor() != Flavor::Point && f.vertex_count() > 1)
        .collect();
    let mut labels = Vec::new();
    let mut offset = Vec::new();
    for &(i, f) in &live {
        offset.push(labels.len());
        labels.extend(f.labels().iter().map(|l| format!("{i}:{l}")));
    }
    let k = live.len();
    let mut count = 0usize;
    for mask in 1u32..(1 << k) {
        let sizes = (0..k).filter(|j| mask >> j & 1 == 1).map(|j| live[j].1.vertex_count());
        count = count.saturating_add(sizes.product());
    }
    if count > MAX_SIMPLICES {
        return Err(ProductError::SizeLimit {
            what: "simplices",
            count,
            limit: MAX_SIMPLICES,
        });
    }
    let mut higher = Vec::new();
    for mask in 1u32..(1 << k) {
        let chosen: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).collect();
        if chosen.len() < 2 {
            continue;
        }
        let radix = Radix::new(chosen.iter().map(|&j| live[j].1.vertex_count()).collect());
        for x in 0..radix.total {
            let t = radix.tuple(x);
            higher.push(chosen.iter().zip(&t).map(|(&j, &c)| offset[j] + c).collect());
        }
    }
    Ok(SimplicialComplex::new(labels, higher))
}

/// Full subcomplex on the tuples agreeing with `sigma`.
pub fn subcomplex_of_cut(p: &ProductComplex, sigma: &[Option<usize>]) -> Result<Complex2, ProductError> {
    let vs = p.vertices_matching(sigma)?;
    Ok(p.flattened.induced(&vs))
}

/// Whether two partial tuples agree wherever both are fixed.
pub fn compatible(rho: &[Option<usize>], sigma: &[Option<usize>]) -> bool {
    rho.len() == sigma.len()
        && rho
            .iter()
            .zip(sigma)
            .all(|(a, b)| !matches!((a, b), (Some(x), Some(y)) if x != y))
}

/// Union of two compatible partial tuples.
pub fn merge(rho: &[Option<usize>], sigma: &[Option<usize>]) -> Option<PartialTuple> {
    compatible(rho, sigma).then(|| rho.iter().zip(sigma).map(|(a, b)| a.or(*b)).collect())
}

/// `C(S_rho) ∩ C(S_sigma)`: the subcomplex of the merged tuple, or the empty
/// complex when the tuples disagree.
pub fn subcomplex_intersection(
    p: &ProductComplex,
    rho: &[Option<usize>],
    sigma: &[Option<usize>],
) -> Result<Complex2, ProductError> {
    p.check_partial(rho)?;
    p.check_partial(sigma)?;
    match merge(rho, sigma) {
        Some(m) => subcomplex_of_cut(p, &m),
        None => Ok(Complex2::empty()),
    }
}

/// One factor per component of `spec`: `farey_level(m)` (or
/// `gstar_level(m)` when `star`) for dimension-one pieces and a point for
/// pants.
pub fn level_factors(spec: &SurfaceSpec, m: u32, star: bool, limits: &Limits) -> Result<Vec<Complex2>, ProductError> {
    let mut cache: BTreeMap<bool, Complex2> = BTreeMap::new();
    spec.components()
        .iter()
        .map(|&t| match t.modular_dimension() {
            Ok(0) => Ok(Complex2::point()),
            Ok(1) => {
                if let Some(c) = cache.get(&star) {
                    return Ok(c.clone());
                }
                let c = if star {
                    gstar_level_with(m, limits)?
                } else {
                    farey_level_with(m, limits)?
                };
                cache.insert(star, c.clone());
                Ok(c)
            }
            _ => Err(ProductError::UnsupportedSurface(t)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::complete_closure;
    use crate::graph::graph_isomorphic;
    use crate::level::{farey_level, gstar_level};
    use std::collections::BTreeSet;

    fn k(n: usize) -> Complex2 {
        Complex2::complete_graph(n)
    }

    #[test]
    fn pants_counts() {
        let f2 = farey_level(2).unwrap();
        let p = product_pants(&[f2.clone(), f2.clone()]).unwrap();
        assert_eq!((p.vertex_count(), p.flattened.edge_count()), (9, 18));
        assert_eq!(p.flattened.label(5), "((1:0) mod 2|(1:1) mod 2)");
        let single = product_pants(std::slice::from_ref(&f2)).unwrap();
        assert!(graph_isomorphic(&single.flattened, &f2).is_some());
        let with_point = product_pants(&[f2.clone(), Complex2::point()]).unwrap();
        assert!(graph_isomorphic(&with_point.flattened, &f2).is_some());
    }

    #[test]
    fn star_counts() {
        let g2 = gstar_level(2).unwrap();
        let p = product_star(&[g2.clone(), g2.clone()]).unwrap();
        assert_eq!((p.vertex_count(), p.flattened.edge_count()), (9, 18));
        let three = product_star(&[k(3), k(3), k(3)]).unwrap();
        assert_eq!((three.vertex_count(), three.flattened.edge_count()), (27, 81));
    }

    #[test]
    fn flavor_errors() {
        let f3 = farey_level(3).unwrap();
        let g3 = gstar_level(3).unwrap();
        assert!(matches!(product_pants(&[f3.clone(), g3.clone()]), Err(ProductError::MixedFlavor { index: 1, .. })));
        assert!(matches!(product_star(&[g3, f3]), Err(ProductError::MixedFlavor { index: 1, .. })));
        let path = Complex2::new(vec!["a".into(), "b".into(), "c".into()], vec![[0, 1], [1, 2]], vec![]).unwrap();
        assert_eq!(product_star(&[path]), Err(ProductError::NotComplete(0)));
    }

    #[test]
    fn edges_change_one_coordinate() {
        let p = product_pants(&[farey_level(3).unwrap(), farey_level(2).unwrap(), Complex2::point()]).unwrap();
        for (e, &i) in p.flattened.edges().iter().zip(&p.coordinate_of_edge) {
            let (a, b) = (p.tuple_of(e[0]), p.tuple_of(e[1]));
            let changed: Vec<usize> = (0..3).filter(|&j| a[j] != b[j]).collect();
            assert_eq!(changed, vec![i]);
        }
        for t in p.flattened.triangles() {
            let tuples = t.map(|v| p.tuple_of(v));
            let moving = (0..3).filter(|&j| tuples.iter().any(|x| x[j] != tuples[0][j])).count();
            assert_eq!(moving, 1);
        }
    }

    #[test]
    fn closure_commutes_with_product() {
        let fs = [farey_level(3).unwrap(), farey_level(2).unwrap()];
        let closed = complete_closure(&product_pants(&fs).unwrap().flattened).unwrap();
        let closures: Vec<Complex2> = fs.iter().map(|f| complete_closure(f).unwrap()).collect();
        let star = product_star(&closures).unwrap().flattened;
        assert_eq!(closed.edge_pairs(), star.edge_pairs());
        let sorted = |c: &Complex2| -> BTreeSet<[usize; 3]> {
            c.triangles()
                .iter()
                .map(|t| {
                    let mut s = *t;
                    s.sort_unstable();
                    s
                })
                .collect()
        };
        assert_eq!(sorted(&closed), sorted(&star));
    }

    #[test]
    fn direct_complex_counts() {
        let d = direct_curve_complex(&[k(3), k(3)]).unwrap();
        assert_eq!(d.f_vector(), vec![6, 9]);
        let one = direct_curve_complex(&[k(5)]).unwrap();
        assert_eq!(one.f_vector(), vec![5]);
        let three = direct_curve_complex(&[k(3), k(3), k(3)]).unwrap();
        assert_eq!(three.simplices(2).len(), 27);
        assert!(three.is_closed_under_faces());
        let with_point = direct_curve_complex(&[k(3), Complex2::point()]).unwrap();
        assert_eq!(with_point.f_vector(), vec![3]);
        assert!(direct_curve_complex(&vec![k(2); 7]).is_err());
    }

    #[test]
    fn cuts() {
        let p = product_star(&[k(3), k(3)]).unwrap();
        let row = subcomplex_of_cut(&p, &[Some(1), None]).unwrap();
        assert_eq!((row.vertex_count(), row.edge_count()), (3, 3));
        assert_eq!(subcomplex_of_cut(&p, &[None, None]).unwrap().edge_count(), 18);
        assert_eq!(subcomplex_of_cut(&p, &[Some(0), Some(2)]).unwrap().vertex_count(), 1);
        assert!(subcomplex_of_cut(&p, &[Some(3), None]).is_err());
        assert!(subcomplex_of_cut(&p, &[None]).is_err());
    }

    #[test]
    fn intersections() {
        let p = product_star(&[k(3), k(4)]).unwrap();
        let both = subcomplex_intersection(&p, &[Some(1), None], &[None, Some(2)]).unwrap();
        assert_eq!(both.labels(), &["(1|2)"]);
        let none = subcomplex_intersection(&p, &[Some(1), None], &[Some(0), None]).unwrap();
        assert_eq!(none.vertex_count(), 0);
        let nested = subcomplex_intersection(&p, &[Some(1), None], &[Some(1), Some(3)]).unwrap();
        assert_eq!(nested, subcomplex_of_cut(&p, &[Some(1), Some(3)]).unwrap());
    }

    #[test]
    fn fibers_metadata() {
        let p = product_star(&[k(3), Complex2::point(), k(2)]).unwrap();
        let fibers = p.flattened.fibers().unwrap();
        // 2 fibers along the first axis, 3 along the last
        assert_eq!(fibers.len(), 5);
        assert!(fibers.iter().all(|f| f.len() >= 2));
    }

    #[test]
    fn factors_from_surface() {
        let spec: SurfaceSpec = "1,1+0,3+0,4".parse().unwrap();
        let fs = level_factors(&spec, 3, false, &Limits::default()).unwrap();
        assert_eq!(fs.iter().map(Complex2::vertex_count).collect::<Vec<_>>(), vec![1, 4, 4]);
        let bad: SurfaceSpec = "0,5".parse().unwrap();
        assert!(matches!(
            level_factors(&bad, 3, false, &Limits::default()),
            Err(ProductError::UnsupportedSurface(_))
        ));
    }
}

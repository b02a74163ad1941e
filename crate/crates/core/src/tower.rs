//! Truncated inverse systems of level quotients.
//!
//! Each stage is the pants-flavor product of the level-`m` pieces of a
//! surface; every factor uses the same modulus. A projection reduces every
//! cusp coordinate to the smaller modulus.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::aut::close_group;
use crate::graph::search::{automorphisms, Shape, Structure};
use crate::graph::{automorphism_group_with, canonical_cycle, is_orientation_preserving, AutGroup, Complex2, GraphError, VertexPermutation};
use crate::level::{cusps, farey_level_with, project_level_with, psl2_enumerate_with, Cusp, LevelError};
use crate::product::{level_factors, product_pants_with, ProductError};
use crate::surface::{SurfaceSpec, SurfaceType};
use crate::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("a tower needs at least one level")]
    NoLevels,
    #[error("no level is divisible by all the others")]
    NoUniqueTop,
    #[error("surface piece ({0}) has no finite model here")]
    UnsupportedSurface(SurfaceType),
    #[error("projection mismatch: {0}")]
    ProjectionMismatch(String),
    #[error(transparent)]
    Level(#[from] LevelError),
    #[error(transparent)]
    Product(ProductError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<ProductError> for TowerError {
    fn from(e: ProductError) -> Self {
        match e {
            ProductError::UnsupportedSurface(t) => TowerError::UnsupportedSurface(t),
            ProductError::Level(l) => TowerError::Level(l),
            other => TowerError::Product(other),
        }
    }
}

/// Largest group enumerated when checking the group axioms.
const MAX_ENUMERATED: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct Tower {
    pub surface: SurfaceSpec,
    /// Increasing, without repeats.
    pub levels: Vec<u32>,
    pub stages: BTreeMap<u32, Complex2>,
    /// `(big, small)` to the vertex map of stage `big` onto stage `small`,
    /// for every proper divisibility among the levels.
    pub projections: BTreeMap<(u32, u32), Vec<usize>>,
}

impl Tower {
    /// The level divisible by every other level.
    pub fn top(&self) -> Result<u32, TowerError> {
        self.levels
            .iter()
            .copied()
            .find(|&t| self.levels.iter().all(|&m| t % m == 0))
            .ok_or(TowerError::NoUniqueTop)
    }

    /// Whether `proj(a, c) = proj(b, c) ∘ proj(a, b)` for every chain
    /// `c | b | a` of levels.
    pub fn composition_law_holds(&self) -> bool {
        self.projections.iter().all(|(&(a, b), ab)| {
            self.projections
                .iter()
                .filter(|((from, _), _)| *from == b)
                .all(|(&(_, c), bc)| {
                    let ac = &self.projections[&(a, c)];
                    ab.iter().zip(ac).all(|(&x, &y)| bc[x] == y)
                })
        })
    }
}

fn stage_projection(surface: &SurfaceSpec, big: u32, small: u32, limits: &Limits) -> Result<Vec<usize>, TowerError> {
    let factor_map = project_level_with(big, small, limits)?;
    let dims: Vec<bool> = surface.components().iter().map(|t| t.modular_dimension() == Ok(1)).collect();
    let (nb, ns) = (cusps(big).len(), cusps(small).len());
    let big_sizes: Vec<usize> = dims.iter().map(|&d| if d { nb } else { 1 }).collect();
    let small_sizes: Vec<usize> = dims.iter().map(|&d| if d { ns } else { 1 }).collect();
    let total: usize = big_sizes.iter().product();
    Ok((0..total)
        .map(|mut x| {
            let mut coords = vec![0; big_sizes.len()];
            for i in (0..big_sizes.len()).rev() {
                coords[i] = x % big_sizes[i];
                x /= big_sizes[i];
            }
            coords
                .iter()
                .zip(&small_sizes)
                .zip(&dims)
                .fold(0, |acc, ((&c, &s), &d)| acc * s + if d { factor_map[c] } else { 0 })
        })
        .collect())
}

fn check_simplicial_surjection(big: &Complex2, small: &Complex2, map: &[usize]) -> Result<(), String> {
    if map.iter().collect::<HashSet<_>>().len() != small.vertex_count() {
        return Err("not surjective on vertices".into());
    }
    let edges = small.edge_pairs();
    for e in big.edges() {
        let (a, b) = (map[e[0]], map[e[1]]);
        if !edges.contains(&[a.min(b), a.max(b)]) {
            return Err(format!("edge {e:?} does not map to an edge"));
        }
    }
    let tris: HashSet<[usize; 3]> = small.triangles().iter().map(|&t| canonical_cycle(t)).collect();
    for t in big.triangles() {
        if !tris.contains(&canonical_cycle(t.map(|v| map[v]))) {
            return Err(format!("triangle {t:?} does not map to a triangle"));
        }
    }
    Ok(())
}

pub fn build_tower(surface: &SurfaceSpec, levels: &[u32]) -> Result<Tower, TowerError> {
    build_tower_with(surface, levels, &Limits::default())
}

/// Builds every stage and every projection between comparable levels, then
/// checks that projections are simplicial surjections obeying the
/// composition law.
pub fn build_tower_with(surface: &SurfaceSpec, levels: &[u32], limits: &Limits) -> Result<Tower, TowerError> {
    let mut levels = levels.to_vec();
    levels.sort_unstable();
    levels.dedup();
    if levels.is_empty() {
        return Err(TowerError::NoLevels);
    }
    let mut stages = BTreeMap::new();
    for &m in &levels {
        let factors = level_factors(surface, m, false, limits)?;
        let mut stage = product_pants_with(&factors, limits)?.flattened;
        stage.set_meta("level", m.to_string());
        stages.insert(m, stage);
    }
    let mut projections = BTreeMap::new();
    for &a in &levels {
        for &b in &levels {
            if b < a && a % b == 0 {
                let map = stage_projection(surface, a, b, limits)?;
                check_simplicial_surjection(&stages[&a], &stages[&b], &map)
                    .map_err(|e| TowerError::ProjectionMismatch(format!("{a} -> {b}: {e}")))?;
                projections.insert((a, b), map);
            }
        }
    }
    let tower = Tower {
        surface: surface.clone(),
        levels,
        stages,
        projections,
    };
    if !tower.composition_law_holds() {
        return Err(TowerError::ProjectionMismatch("composition law fails".into()));
    }
    Ok(tower)
}

/// Automorphisms of the top stage that descend to every lower stage.
#[derive(Clone, Debug, Serialize)]
pub struct CompatibleGroup {
    pub level: u32,
    pub group: AutGroup,
    /// Image of each generator in each lower stage.
    #[serde(skip)]
    pub restrictions: BTreeMap<u32, Vec<VertexPermutation>>,
    /// Restrictions are automorphisms, restriction is multiplicative on
    /// generator pairs, and the generated group has the reported order.
    pub verified: bool,
}

/// The top stage with every lower stage attached: one extra vertex per
/// lower-stage vertex, colored by level, joined to its projection fiber and
/// carrying the lower stage's edges and triangles.
fn augmented(t: &Tower, top: u32, oriented: bool) -> (Structure, Vec<(u32, usize)>) {
    let c = &t.stages[&top];
    let n = c.vertex_count();
    let shape = if oriented { Shape::Cycle } else { Shape::Set };
    let lower: Vec<u32> = t.levels.iter().copied().filter(|&m| m != top).collect();
    let mut offsets = Vec::new();
    let mut total = n;
    for &m in &lower {
        offsets.push((m, total));
        total += t.stages[&m].vertex_count();
    }
    let mut colors = vec![0u64; n];
    for (k, &(m, _)) in offsets.iter().enumerate() {
        colors.extend(std::iter::repeat_n(k as u64 + 1, t.stages[&m].vertex_count()));
    }
    let mut s = Structure::new(total).with_colors(colors);
    s.add_relation(Shape::Set, c.edges().iter().map(|e| e.to_vec()));
    s.add_relation(shape, c.triangles().iter().map(|t| t.to_vec()));
    for &(m, off) in &offsets {
        let map = &t.projections[&(top, m)];
        s.add_relation(Shape::Set, map.iter().enumerate().map(|(v, &b)| vec![v, off + b]));
        let st = &t.stages[&m];
        s.add_relation(Shape::Set, st.edges().iter().map(|e| vec![off + e[0], off + e[1]]));
        s.add_relation(shape, st.triangles().iter().map(|t| t.iter().map(|&x| off + x).collect()));
    }
    (s, offsets)
}

/// Subgroup of the automorphisms of the top stage (triangles respected)
/// that permute every projection fiber and induce automorphisms of every
/// lower stage.
pub fn compatible_automorphisms(t: &Tower) -> Result<CompatibleGroup, TowerError> {
    let top = t.top()?;
    let c = &t.stages[&top];
    let n = c.vertex_count();
    let (s, offsets) = augmented(t, top, false);
    let (gens, order) = automorphisms(&s).ok_or(GraphError::OrderOverflow)?;
    let (_, plus_order) = automorphisms(&augmented(t, top, true).0).ok_or(GraphError::OrderOverflow)?;

    let generators: Vec<VertexPermutation> = gens
        .iter()
        .map(|g| VertexPermutation::new(g[..n].to_vec()))
        .collect::<Result<_, _>>()?;
    let mut restrictions = BTreeMap::new();
    for &(m, off) in &offsets {
        let k = t.stages[&m].vertex_count();
        let rs: Vec<VertexPermutation> = gens
            .iter()
            .map(|g| VertexPermutation::new(g[off..off + k].iter().map(|&x| x - off).collect()))
            .collect::<Result<_, _>>()?;
        restrictions.insert(m, rs);
    }
    let index = if c.triangle_count() > 0 { order / plus_order } else { 1 };
    let group = AutGroup {
        generators,
        order,
        orientation_preserving_order: plus_order,
        orientation_preserving_index: index,
    };
    let verified = verify_compatible(t, top, &group, &restrictions);
    Ok(CompatibleGroup {
        level: top,
        group,
        restrictions,
        verified,
    })
}

/// The map induced on stage `small` by a permutation of the top stage, if
/// it is well defined.
fn descend(p: &VertexPermutation, map: &[usize], k: usize) -> Option<VertexPermutation> {
    let mut image = vec![usize::MAX; k];
    for (x, &b) in map.iter().enumerate() {
        let t = map[p.apply(x)];
        if image[b] == usize::MAX {
            image[b] = t;
        } else if image[b] != t {
            return None;
        }
    }
    VertexPermutation::new(image).ok()
}

fn verify_compatible(
    t: &Tower,
    top: u32,
    group: &AutGroup,
    restrictions: &BTreeMap<u32, Vec<VertexPermutation>>,
) -> bool {
    let c = &t.stages[&top];
    if !group.generators.iter().all(|g| g.is_automorphism_of(c)) {
        return false;
    }
    for (&m, rs) in restrictions {
        let stage = &t.stages[&m];
        let map = &t.projections[&(top, m)];
        let k = stage.vertex_count();
        for (g, r) in group.generators.iter().zip(rs) {
            if descend(g, map, k).as_ref() != Some(r) || !r.is_automorphism_of(stage) {
                return false;
            }
        }
        for (g, rg) in group.generators.iter().zip(rs) {
            for (h, rh) in group.generators.iter().zip(rs) {
                if descend(&g.compose(h), map, k).as_ref() != Some(&rg.compose(rh)) {
                    return false;
                }
            }
        }
    }
    match close_group(&group.generators, c.vertex_count(), MAX_ENUMERATED) {
        Some(all) => all.len() as u128 == group.order,
        None => true,
    }
}

/// How `PSL2(Z/m)` sits inside the automorphisms of `farey_level(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Psl2ImageReport {
    pub m: u32,
    pub group_order: usize,
    pub image_order: usize,
    pub kernel_order: usize,
    pub faithful: bool,
    pub inside_orientation_preserving: bool,
    pub aut_order: u128,
    pub aut_plus_order: u128,
    /// `|Aut+| / |image|`.
    pub index_in_aut_plus: Option<u128>,
}

pub fn psl2_image_in_aut(m: u32) -> Result<Psl2ImageReport, TowerError> {
    psl2_image_in_aut_with(m, &Limits::default())
}

/// Left multiplication on cusp classes, compared with the automorphism
/// group of the level-`m` quotient computed by search.
pub fn psl2_image_in_aut_with(m: u32, limits: &Limits) -> Result<Psl2ImageReport, TowerError> {
    let group = psl2_enumerate_with(m, limits)?;
    let stage = farey_level_with(m, limits)?;
    let pos: HashMap<Cusp, usize> = cusps(m).into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    let order_of_cusps: Vec<Cusp> = cusps(m);
    let mut image: HashSet<VertexPermutation> = HashSet::new();
    let mut kernel_order = 0;
    let mut inside = true;
    for &g in group.elements() {
        let p = VertexPermutation::new(order_of_cusps.iter().map(|&x| pos[&g.act(x)]).collect())?;
        if p.is_identity() {
            kernel_order += 1;
        }
        if image.insert(p.clone()) {
            inside &= is_orientation_preserving(&stage, &p).unwrap_or(false);
        }
    }
    let aut = automorphism_group_with(&stage, true, limits)?;
    let image_order = image.len();
    let plus = aut.orientation_preserving_order;
    Ok(Psl2ImageReport {
        m,
        group_order: group.order(),
        image_order,
        kernel_order,
        faithful: kernel_order == 1,
        inside_orientation_preserving: inside,
        aut_order: aut.order,
        aut_plus_order: plus,
        index_in_aut_plus: (plus % image_order as u128 == 0).then(|| plus / image_order as u128),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageSize {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub levels: Vec<u32>,
    pub stage_sizes: BTreeMap<u32, StageSize>,
    pub compatible_order: u128,
    /// For the top level.
    pub psl2_image: Psl2ImageReport,
    pub composition_law: bool,
    pub verified: bool,
}

pub fn tower_report(surface: &SurfaceSpec, levels: &[u32], limits: &Limits) -> Result<TowerReport, TowerError> {
    let t = build_tower_with(surface, levels, limits)?;
    let compat = compatible_automorphisms(&t)?;
    let psl2_image = psl2_image_in_aut_with(compat.level, limits)?;
    Ok(TowerReport {
        levels: t.levels.clone(),
        stage_sizes: t
            .stages
            .iter()
            .map(|(&m, c)| {
                (
                    m,
                    StageSize {
                        vertices: c.vertex_count(),
                        edges: c.edge_count(),
                        triangles: c.triangle_count(),
                    },
                )
            })
            .collect(),
        compatible_order: compat.group.order,
        psl2_image,
        composition_law: t.composition_law_holds(),
        verified: compat.verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::automorphism_group;

    fn one_one() -> SurfaceSpec {
        SurfaceSpec::single(1, 1)
    }

    #[test]
    fn small_towers() {
        let t = build_tower(&one_one(), &[4, 2]).unwrap();
        assert_eq!(t.levels, vec![2, 4]);
        assert_eq!(t.projections.len(), 1);
        let t = build_tower(&one_one(), &[2, 3, 6]).unwrap();
        assert_eq!(t.projections.keys().copied().collect::<Vec<_>>(), vec![(6, 2), (6, 3)]);
        let two: SurfaceSpec = "1,1+1,1".parse().unwrap();
        let t = build_tower(&two, &[2]).unwrap();
        assert_eq!(t.stages[&2].vertex_count(), 9);
        assert_eq!(build_tower(&one_one(), &[]).unwrap_err(), TowerError::NoLevels);
        assert!(matches!(build_tower(&SurfaceSpec::single(0, 5), &[2]), Err(TowerError::UnsupportedSurface(_))));
        assert!(matches!(build_tower(&one_one(), &[99]), Err(TowerError::Level(LevelError::ModulusLimit { .. }))));
    }

    #[test]
    fn composition_on_chain() {
        let t = build_tower(&one_one(), &[2, 4, 8]).unwrap();
        assert_eq!(t.projections.len(), 3);
        assert!(t.composition_law_holds());
    }

    #[test]
    fn single_stage_gives_full_group() {
        let t = build_tower(&one_one(), &[5]).unwrap();
        let g = compatible_automorphisms(&t).unwrap();
        assert_eq!(g.group.order, automorphism_group(&t.stages[&5], true).unwrap().order);
        assert!(g.verified);
    }

    #[test]
    fn two_stage_group() {
        let t = build_tower(&one_one(), &[2, 4]).unwrap();
        let g = compatible_automorphisms(&t).unwrap();
        assert!(g.verified);
        // octahedron symmetries all preserve antipodal pairs, the fibers over F(2)
        assert_eq!(g.group.order, 48);
        assert!(matches!(
            compatible_automorphisms(&build_tower(&one_one(), &[2, 3]).unwrap()),
            Err(TowerError::NoUniqueTop)
        ));
    }

    #[test]
    fn psl2_images() {
        let r = psl2_image_in_aut(5).unwrap();
        assert_eq!((r.image_order, r.aut_plus_order, r.index_in_aut_plus), (60, 60, Some(1)));
        assert!(r.inside_orientation_preserving && r.faithful);
        let r = psl2_image_in_aut(3).unwrap();
        assert_eq!((r.image_order, r.aut_order), (12, 24));
        let r = psl2_image_in_aut(2).unwrap();
        assert_eq!(r.image_order, 6);
    }
}

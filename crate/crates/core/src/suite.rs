//! The built-in invariant suite run by `curvex verify`.

use std::collections::BTreeSet;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::farey::complete_closure;
use crate::graph::{automorphism_group, graph_isomorphic, nerve, Complex2};
use crate::level::{farey_level, gstar_level, psl2_enumerate, verify_against_ball};
use crate::product::{direct_curve_complex, product_pants, product_star, subcomplex_intersection, subcomplex_of_cut, ProductComplex};
use crate::reconstruct::{check_aut_inclusion, fibers_through, local_dimension_with, reconstruct_curve_complex_with, Options};
use crate::simplicial::simplicially_isomorphic;
use crate::surface::SurfaceSpec;
use crate::tower::{build_tower, compatible_automorphisms, psl2_image_in_aut};
use crate::solids;

/// One row of the pass/fail table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    match f() {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs the named suite; only `default` exists.
pub fn run_suite(name: &str) -> Option<Vec<Check>> {
    (name == "default").then(default_suite)
}

pub fn default_suite() -> Vec<Check> {
    vec![
        check("level counts", level_counts),
        check("closed surfaces", closed_surfaces),
        check("named solids", named_solids),
        check("ball agreement", ball_agreement),
        check("orientation split", orientation_split),
        check("product formulas", product_formulas),
        check("local dimension", local_dimensions),
        check("reconstruction round trip", round_trip),
        check("cut intersections", cut_intersections),
        check("automorphism inclusion", aut_inclusion),
        check("towers", towers),
        check("nerve of axis fibers", nerve_check),
    ]
}

pub fn render_table(rows: &[Check]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let status = if r.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{status}  {:<width$}  {}", r.name, r.detail).expect("write to string");
    }
    out
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn level_counts() -> Result<String, String> {
    for m in 2..=13u32 {
        let order = psl2_enumerate(m).map_err(err)?.order();
        let c = farey_level(m).map_err(err)?;
        let m = m as usize;
        ensure(
            (c.vertex_count(), c.edge_count(), c.triangle_count()) == (order / m, order / 2, order / 3),
            || format!("m = {m}: counts {} {} {}", c.vertex_count(), c.edge_count(), c.triangle_count()),
        )?;
    }
    Ok("m = 2..13".into())
}

fn closed_surfaces() -> Result<String, String> {
    for m in 2..=13 {
        let c = farey_level(m).map_err(err)?;
        ensure(c.is_closed_surface(), || format!("m = {m} is not a closed surface"))?;
        ensure(c.euler_characteristic() % 2 == 0, || format!("m = {m}: odd Euler characteristic"))?;
    }
    for (m, chi) in [(2, 2), (3, 2), (4, 2), (5, 2), (7, -4)] {
        let got = farey_level(m).map_err(err)?.euler_characteristic();
        ensure(got == chi, || format!("m = {m}: Euler characteristic {got}"))?;
    }
    Ok("m = 2..13".into())
}

fn named_solids() -> Result<String, String> {
    for (m, solid) in [(3, solids::tetrahedron()), (4, solids::octahedron()), (5, solids::icosahedron())] {
        let c = farey_level(m).map_err(err)?;
        ensure(graph_isomorphic(&c, &solid).is_some(), || format!("m = {m} does not match"))?;
    }
    Ok("tetrahedron, octahedron, icosahedron".into())
}

fn ball_agreement() -> Result<String, String> {
    for (m, d) in [(2, 8), (3, 10), (4, 10), (5, 12)] {
        let r = verify_against_ball(m, d).map_err(err)?;
        ensure(r.matches && r.stabilized, || format!("{r:?}"))?;
    }
    Ok("(2,8) (3,10) (4,10) (5,12)".into())
}

fn orientation_split() -> Result<String, String> {
    for m in 3..=7 {
        let c = farey_level(m).map_err(err)?;
        let aut = automorphism_group(&c, true).map_err(err)?;
        ensure(aut.orientation_preserving_index == 2, || format!("m = {m}: index {}", aut.orientation_preserving_index))?;
        let img = psl2_image_in_aut(m).map_err(err)?;
        ensure(img.inside_orientation_preserving, || format!("m = {m}: image leaves Aut+"))?;
    }
    Ok("m = 3..7".into())
}

/// The suite factors as (name, pants-flavor factor, star-flavor factor).
pub fn suite_factors() -> Vec<(&'static str, Complex2, Complex2)> {
    let f = |m| farey_level(m).expect("small level");
    let g = |m| gstar_level(m).expect("small level");
    vec![
        ("F(2)", f(2), g(2)),
        ("F(3)", f(3), g(3)),
        ("F(5)", f(5), g(5)),
        ("K3", Complex2::complete_graph(3), Complex2::complete_graph(3)),
        ("K4", Complex2::complete_graph(4), Complex2::complete_graph(4)),
        ("point", Complex2::point(), Complex2::point()),
    ]
}

/// Multisets of at most `max_len` indices into a catalog of `n` entries.
pub fn multisets(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, max_len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, max_len, i, cur, out);
            cur.pop();
        }
    }
    rec(n, max_len, 0, &mut cur, &mut out);
    out
}

fn pick(catalog: &[(&'static str, Complex2, Complex2)], list: &[usize], star: bool) -> Vec<Complex2> {
    list.iter()
        .map(|&i| if star { catalog[i].2.clone() } else { catalog[i].1.clone() })
        .collect()
}

fn names(catalog: &[(&'static str, Complex2, Complex2)], list: &[usize]) -> String {
    list.iter().map(|&i| catalog[i].0).collect::<Vec<_>>().join(" x ")
}

fn product_formulas() -> Result<String, String> {
    let catalog = suite_factors();
    let lists = multisets(catalog.len(), 3);
    for list in &lists {
        let pants = pick(&catalog, list, false);
        let stars = pick(&catalog, list, true);
        let sizes: Vec<usize> = pants.iter().map(Complex2::vertex_count).collect();
        let total: usize = sizes.iter().product();
        let others = |i: usize| total / sizes[i];
        let pe: usize = pants.iter().enumerate().map(|(i, f)| f.edge_count() * others(i)).sum();
        let se: usize = sizes.iter().enumerate().map(|(i, &n)| n * n.saturating_sub(1) / 2 * others(i)).sum();
        let p = product_pants(&pants).map_err(err)?.flattened;
        let s = product_star(&stars).map_err(err)?.flattened;
        ensure(p.vertex_count() == total && p.edge_count() == pe, || format!("pants {}", names(&catalog, list)))?;
        ensure(
            s.vertex_count() == total && s.edge_count() == se && s.edge_pairs().len() == se,
            || format!("star {}", names(&catalog, list)),
        )?;
    }
    Ok(format!("{} factor lists", lists.len()))
}

fn wide_guard() -> usize {
    crate::reconstruct::RECONSTRUCT_NEIGHBORHOOD
}

fn local_dimensions() -> Result<String, String> {
    let catalog = suite_factors();
    let lists = multisets(catalog.len(), 3);
    for list in &lists {
        let stars = pick(&catalog, list, true);
        let expected = stars.iter().filter(|f| f.vertex_count() > 1).count();
        let s = product_star(&stars).map_err(err)?.flattened;
        for v in 0..s.vertex_count() {
            let d = local_dimension_with(&s, v, wide_guard()).map_err(err)?;
            let fibers = fibers_through(&s, v).map_err(err)?.len();
            ensure(d == expected && fibers == d, || {
                format!("{} at {v}: dimension {d}, fibers {fibers}", names(&catalog, list))
            })?;
        }
    }
    Ok(format!("{} star products", lists.len()))
}

fn round_trip() -> Result<String, String> {
    let catalog = suite_factors();
    let lists = multisets(catalog.len(), 3);
    let opts = Options::default();
    for list in &lists {
        let stars = pick(&catalog, list, true);
        let s = product_star(&stars).map_err(err)?.flattened;
        let rebuilt = reconstruct_curve_complex_with(&s, &opts).map_err(err)?;
        let direct = direct_curve_complex(&stars).map_err(err)?;
        ensure(simplicially_isomorphic(&rebuilt, &direct).is_some(), || names(&catalog, list))?;
    }
    Ok(format!("{} factor lists", lists.len()))
}

fn random_partial(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Vec<Option<usize>> {
    sizes
        .iter()
        .map(|&n| rng.gen_bool(0.5).then(|| rng.gen_range(0..n)))
        .collect()
}

fn label_set(c: &Complex2) -> BTreeSet<String> {
    c.labels().iter().cloned().collect()
}

/// Checks one intersection against the set intersection of the two cuts.
fn intersection_agrees(p: &ProductComplex, rho: &[Option<usize>], sigma: &[Option<usize>]) -> Result<bool, String> {
    let got = subcomplex_intersection(p, rho, sigma).map_err(err)?;
    let a = label_set(&subcomplex_of_cut(p, rho).map_err(err)?);
    let b = label_set(&subcomplex_of_cut(p, sigma).map_err(err)?);
    let common: BTreeSet<String> = a.intersection(&b).cloned().collect();
    Ok(label_set(&got) == common)
}

fn cut_intersections() -> Result<String, String> {
    let catalog = suite_factors();
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let mut products = 0;
    for list in multisets(catalog.len(), 3) {
        let p = product_star(&pick(&catalog, &list, true)).map_err(err)?;
        let sizes = p.sizes();
        let Some(axis) = sizes.iter().position(|&n| n > 1) else {
            continue;
        };
        products += 1;
        for _ in 0..100 {
            let rho = random_partial(&mut rng, &sizes);
            let mut sigma = random_partial(&mut rng, &sizes);
            for (s, r) in sigma.iter_mut().zip(&rho) {
                if s.is_some() && r.is_some() {
                    *s = *r;
                }
            }
            ensure(intersection_agrees(&p, &rho, &sigma)?, || format!("compatible pair in {}", names(&catalog, &list)))?;

            let mut rho = random_partial(&mut rng, &sizes);
            let mut sigma = random_partial(&mut rng, &sizes);
            let x = rng.gen_range(0..sizes[axis]);
            rho[axis] = Some(x);
            sigma[axis] = Some((x + 1 + rng.gen_range(0..sizes[axis] - 1)) % sizes[axis]);
            let got = subcomplex_intersection(&p, &rho, &sigma).map_err(err)?;
            ensure(got.vertex_count() == 0, || format!("incompatible pair in {}", names(&catalog, &list)))?;
        }
    }
    Ok(format!("{products} products, 200 pairs each"))
}

fn aut_inclusion() -> Result<String, String> {
    let catalog = suite_factors();
    let lists: Vec<Vec<usize>> = multisets(catalog.len(), 2);
    for list in &lists {
        let cp = product_pants(&pick(&catalog, list, false)).map_err(err)?.flattened;
        let cs = complete_closure(&cp).map_err(err)?;
        let r = check_aut_inclusion(&cp, &cs).map_err(err)?;
        ensure(r.inclusion_holds, || names(&catalog, list))?;
    }
    Ok(format!("{} factor lists", lists.len()))
}

fn towers() -> Result<String, String> {
    let spec = SurfaceSpec::single(1, 1);
    let mut orders = Vec::new();
    for levels in [[2, 4, 8], [2, 3, 6]] {
        let t = build_tower(&spec, &levels).map_err(err)?;
        ensure(t.composition_law_holds(), || format!("{levels:?}: composition law"))?;
        let g = compatible_automorphisms(&t).map_err(err)?;
        ensure(g.verified, || format!("{levels:?}: compatible group not verified"))?;
        orders.push(g.group.order);
    }
    Ok(format!("compatible orders {orders:?}"))
}

fn nerve_check() -> Result<String, String> {
    let k3 = Complex2::complete_graph(3);
    let p = product_star(&[k3.clone(), k3]).map_err(err)?.flattened;
    let cover = p.fibers().ok_or("no fibers")?;
    let n = nerve(&p, &cover).map_err(err)?;
    let k33 = Complex2::new(
        (0..6).map(|i| i.to_string()).collect(),
        (0..3).flat_map(|a| (3..6).map(move |b| [a, b])).collect(),
        vec![],
    )
    .map_err(err)?;
    ensure(graph_isomorphic(&n, &k33).is_some(), || "nerve is not K3,3".into())?;
    Ok("K3,3".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn multiset_count() {
        // 6 + 21 + 56
        assert_eq!(multisets(6, 3).len(), 83);
        let distinct: HashSet<Vec<usize>> = multisets(6, 3).into_iter().collect();
        assert_eq!(distinct.len(), 83);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope").is_none());
    }

    #[test]
    fn table_format() {
        let rows = vec![Check {
            name: "x",
            passed: false,
            detail: "bad".into(),
        }];
        assert_eq!(render_table(&rows), "FAIL  x  bad\n");
    }
}

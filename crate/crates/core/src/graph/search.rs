//! Individualization-refinement search over colored relational structures.
//!
//! A [`Structure`] is a vertex set with initial colors and a list of
//! relations, each a multiset of tuples that are either unordered sets or
//! cyclically ordered. Colors are refined by hashing each vertex's color
//! together with the multiset of colors it sees through incident tuples,
//! iterated to a fixed point. The hash depends only on the signature, so
//! refinement commutes with isomorphisms; a collision can only coarsen the
//! partition, which the backtracking absorbs.

use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Set,
    Cycle,
}

#[derive(Clone, Debug)]
struct Relation {
    shape: Shape,
    tuples: Vec<Vec<usize>>,
    counts: HashMap<Vec<usize>, u32>,
}

fn canonical(shape: Shape, t: &[usize]) -> Vec<usize> {
    match shape {
        Shape::Set => {
            let mut s = t.to_vec();
            s.sort_unstable();
            s
        }
        Shape::Cycle => {
            let i = (0..t.len()).min_by_key(|&i| t[i]).unwrap_or(0);
            (0..t.len()).map(|k| t[(i + k) % t.len()]).collect()
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Structure {
    n: usize,
    colors: Vec<u64>,
    rels: Vec<Relation>,
    incidence: Vec<Vec<(u32, u32)>>,
}

impl Structure {
    pub fn new(n: usize) -> Self {
        Structure {
            n,
            colors: vec![0; n],
            rels: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn with_colors(mut self, colors: Vec<u64>) -> Self {
        assert_eq!(colors.len(), self.n);
        self.colors = colors;
        self
    }

    pub fn add_relation<I>(&mut self, shape: Shape, tuples: I)
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let r = self.rels.len() as u32;
        let mut rel = Relation {
            shape,
            tuples: Vec::new(),
            counts: HashMap::new(),
        };
        for t in tuples {
            let c = canonical(shape, &t);
            *rel.counts.entry(c.clone()).or_default() += 1;
            let idx = rel.tuples.len() as u32;
            for &v in &c {
                self.incidence[v].push((r, idx));
            }
            rel.tuples.push(c);
        }
        self.rels.push(rel);
    }

    /// Whether `perm` (self-vertex to other-vertex) carries colors and every
    /// relation multiset of `self` onto that of `other`.
    pub fn maps_onto(&self, other: &Structure, perm: &[usize]) -> bool {
        if self.n != other.n || self.rels.len() != other.rels.len() || perm.len() != self.n {
            return false;
        }
        if (0..self.n).any(|x| self.colors[x] != other.colors[perm[x]]) {
            return false;
        }
        for (ra, rb) in self.rels.iter().zip(&other.rels) {
            if ra.shape != rb.shape || ra.tuples.len() != rb.tuples.len() {
                return false;
            }
            let mut image: HashMap<Vec<usize>, u32> = HashMap::with_capacity(ra.counts.len());
            for t in &ra.tuples {
                let mapped: Vec<usize> = t.iter().map(|&v| perm[v]).collect();
                *image.entry(canonical(ra.shape, &mapped)).or_default() += 1;
            }
            if image != rb.counts {
                return false;
            }
        }
        true
    }

    fn compatible(&self, other: &Structure) -> bool {
        if self.n != other.n || self.rels.len() != other.rels.len() {
            return false;
        }
        let same_rels = self
            .rels
            .iter()
            .zip(&other.rels)
            .all(|(a, b)| a.shape == b.shape && a.tuples.len() == b.tuples.len());
        let mut ca = self.colors.clone();
        let mut cb = other.colors.clone();
        ca.sort_unstable();
        cb.sort_unstable();
        same_rels && ca == cb
    }

    fn signature(&self, colors: &[u64], x: usize, scratch: &mut Vec<u64>) -> u64 {
        scratch.clear();
        let mut others: Vec<u64> = Vec::with_capacity(8);
        for &(r, t) in &self.incidence[x] {
            let rel = &self.rels[r as usize];
            let tup = &rel.tuples[t as usize];
            let mut h = mix(0x51ed_270b_27a3_0f19, r as u64);
            match rel.shape {
                Shape::Set => {
                    others.clear();
                    let mut skipped = false;
                    for &v in tup {
                        if v == x && !skipped {
                            skipped = true;
                        } else {
                            others.push(colors[v]);
                        }
                    }
                    others.sort_unstable();
                    for &c in &others {
                        h = mix(h, c);
                    }
                }
                Shape::Cycle => {
                    let len = tup.len();
                    let pos = tup.iter().position(|&v| v == x).unwrap();
                    for k in 1..len {
                        h = mix(h, colors[tup[(pos + k) % len]]);
                    }
                }
            }
            scratch.push(h);
        }
        scratch.sort_unstable();
        let mut h = mix(0x2545_f491_4f6c_dd1d, colors[x]);
        for &s in scratch.iter() {
            h = mix(h, s);
        }
        h
    }

    fn signatures(&self, colors: &[u64]) -> Vec<u64> {
        let mut scratch = Vec::new();
        (0..self.n).map(|x| self.signature(colors, x, &mut scratch)).collect()
    }
}

fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn distinct(colors: &[u64]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn rank(values: &[u64], table: &[u64]) -> Vec<u64> {
    values
        .iter()
        .map(|v| table.binary_search(v).unwrap() as u64)
        .collect()
}

/// Refine one coloring to its stable partition, renumbering colors by the
/// sorted order of their signatures.
pub(crate) fn refine(s: &Structure, colors: &mut Vec<u64>) {
    let mut classes = distinct(colors);
    loop {
        let sig = s.signatures(colors);
        let mut table = sig.clone();
        table.sort_unstable();
        table.dedup();
        *colors = rank(&sig, &table);
        if table.len() == classes {
            return;
        }
        classes = table.len();
    }
}

/// Refine two colorings side by side with a shared color numbering.
/// Returns false as soon as the color histograms disagree.
fn refine_pair(a: &Structure, ca: &mut Vec<u64>, b: &Structure, cb: &mut Vec<u64>) -> bool {
    let mut classes = distinct(ca);
    loop {
        let sa = a.signatures(ca);
        let sb = b.signatures(cb);
        let mut ha = sa.clone();
        let mut hb = sb.clone();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return false;
        }
        ha.dedup();
        *ca = rank(&sa, &ha);
        *cb = rank(&sb, &ha);
        if ha.len() == classes {
            return true;
        }
        classes = ha.len();
    }
}

fn individualize(colors: &[u64], v: usize) -> Vec<u64> {
    colors
        .iter()
        .enumerate()
        .map(|(x, &c)| 2 * c + u64::from(x == v))
        .collect()
}

/// Smallest non-singleton cell, ties broken by color; None when discrete.
fn target_cell(colors: &[u64]) -> Option<u64> {
    let mut size: HashMap<u64, usize> = HashMap::new();
    for &c in colors {
        *size.entry(c).or_default() += 1;
    }
    size.into_iter()
        .filter(|&(_, k)| k > 1)
        .min_by_key(|&(c, k)| (k, c))
        .map(|(c, _)| c)
}

fn search(a: &Structure, b: &Structure, mut ca: Vec<u64>, mut cb: Vec<u64>) -> Option<Vec<usize>> {
    if !refine_pair(a, &mut ca, b, &mut cb) {
        return None;
    }
    match target_cell(&ca) {
        None => {
            let mut by_color = vec![0; a.n];
            for (y, &c) in cb.iter().enumerate() {
                by_color[c as usize] = y;
            }
            let perm: Vec<usize> = ca.iter().map(|&c| by_color[c as usize]).collect();
            a.maps_onto(b, &perm).then_some(perm)
        }
        Some(cell) => {
            let v = ca.iter().position(|&c| c == cell).unwrap();
            let next_a = individualize(&ca, v);
            for w in (0..b.n).filter(|&w| cb[w] == cell) {
                if let Some(p) = search(a, b, next_a.clone(), individualize(&cb, w)) {
                    return Some(p);
                }
            }
            None
        }
    }
}

/// An isomorphism from `a` to `b` (vertex of `a` to vertex of `b`), if any.
pub(crate) fn find_isomorphism(a: &Structure, b: &Structure) -> Option<Vec<usize>> {
    if !a.compatible(b) {
        return None;
    }
    search(a, b, a.colors.clone(), b.colors.clone())
}

fn orbit(start: usize, gens: &[Vec<usize>], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Generators and order of the automorphism group, computed along a
/// stabilizer chain: for each base point, deepest first, its orbit under the
/// pointwise stabilizer of the earlier base points is determined exactly by
/// testing every candidate in its cell. `None` if the order overflows u128.
pub(crate) fn automorphisms(s: &Structure) -> Option<(Vec<Vec<usize>>, u128)> {
    let n = s.n;
    let mut colors = s.colors.clone();
    refine(s, &mut colors);
    let mut levels: Vec<(Vec<u64>, usize, Vec<usize>)> = Vec::new();
    while let Some(cell) = target_cell(&colors) {
        let members: Vec<usize> = (0..n).filter(|&x| colors[x] == cell).collect();
        let base = members[0];
        let mut next = individualize(&colors, base);
        refine(s, &mut next);
        levels.push((std::mem::replace(&mut colors, next), base, members));
    }

    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut order: u128 = 1;
    for (part, base, cell) in levels.iter().rev() {
        let mut in_orbit = orbit(*base, &gens, n);
        let mut rejected = vec![false; n];
        let from = individualize(part, *base);
        for &w in cell {
            if in_orbit[w] || rejected[w] {
                continue;
            }
            match search(s, s, from.clone(), individualize(part, w)) {
                Some(g) => {
                    gens.push(g);
                    in_orbit = orbit(*base, &gens, n);
                }
                None => {
                    for (x, hit) in orbit(w, &gens, n).into_iter().enumerate() {
                        rejected[x] |= hit;
                    }
                }
            }
        }
        let size = in_orbit.iter().filter(|&&b| b).count() as u128;
        order = order.checked_mul(size)?;
    }
    Some((gens, order))
}

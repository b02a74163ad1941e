use super::{Complex2, GraphError};

/// Nerve of a cover of the vertex set: one vertex per cover set, an edge for
/// each pair of sets that intersect. The originating sets are stored under
/// the `cover` metadata key as JSON.
pub fn nerve(c: &Complex2, cover: &[Vec<usize>]) -> Result<Complex2, GraphError> {
    let n = c.vertex_count();
    let mut covered = vec![false; n];
    let mut member = Vec::with_capacity(cover.len());
    for (i, set) in cover.iter().enumerate() {
        if set.is_empty() {
            return Err(GraphError::EmptyCoverSet(i));
        }
        let mut bits = vec![false; n];
        for &v in set {
            if v >= n {
                return Err(GraphError::InvalidVertex { index: v, count: n });
            }
            bits[v] = true;
            covered[v] = true;
        }
        member.push(bits);
    }
    if let Some(v) = covered.iter().position(|&b| !b) {
        return Err(GraphError::IncompleteCover(v));
    }
    let mut edges = Vec::new();
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            if cover[j].iter().any(|&v| member[i][v]) {
                edges.push([i, j]);
            }
        }
    }
    let labels = (0..cover.len()).map(|i| format!("U{i}")).collect();
    let mut out = Complex2::new(labels, edges, Vec::new())?;
    out.set_meta("cover", serde_json::to_string(cover).expect("cover serializes"));
    Ok(out)
}

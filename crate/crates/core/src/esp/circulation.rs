use crate::error::{Error, Result};
use crate::flow::{feasible_circulation, BoundedArc};
use crate::graph::{Digraph, Multigraph};

/// Whether `f` (one value per arc) is nonnegative and conserved at every vertex.
pub fn is_circulation(d: &Digraph, f: &[i64]) -> bool {
    if f.len() != d.arc_count() || f.iter().any(|&x| x < 0) {
        return false;
    }
    let mut bal = vec![0i64; d.n()];
    for ((u, v), &x) in d.arcs().zip(f) {
        bal[u] -= x;
        bal[v] += x;
    }
    bal.iter().all(|&b| b == 0)
}

/// Writes a circulation `f` as `f1 + f2` with both parts circulations lying
/// between `floor(f / 2)` and `ceil(f / 2)` on every arc. Side 1 takes the
/// larger half on the first arc with odd flow.
pub fn circulation_split(d: &Digraph, f: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    if !is_circulation(d, f) {
        return Err(Error::Precondition("flow is not a circulation".into()));
    }
    let arcs: Vec<BoundedArc> = d
        .arcs()
        .zip(f)
        .map(|((from, to), &x)| BoundedArc { from, to, lo: x / 2, hi: (x + 1) / 2 })
        .collect();
    let f1 = feasible_circulation(d.n(), &arcs)
        .ok_or_else(|| Error::Internal("no halving circulation found".into()))?;
    let f2: Vec<i64> = f.iter().zip(&f1).map(|(a, b)| a - b).collect();
    let first_odd = f.iter().position(|&x| x % 2 == 1);
    let (f1, f2) = match first_odd {
        Some(i) if f1[i] < f2[i] => (f2, f1),
        _ => (f1, f2),
    };
    if !is_circulation(d, &f1) || !is_circulation(d, &f2) {
        return Err(Error::Internal("halves are not circulations".into()));
    }
    Ok((f1, f2))
}

/// Splits the edge multiplicities `mu` of a bipartite multigraph into
/// `mu1 + mu2` with `mu_i >= floor(mu / 2)` on every edge,
/// `max_degree(mu1) <= ceil(D / 2)` and `max_degree(mu2) <= floor(D / 2)`,
/// where `D = max_degree(mu)`.
///
/// The constraints are those of a bipartite flow, so `None` means no such
/// split exists at all.
pub fn matching_degree_split(h: &Multigraph) -> Result<Option<(Multigraph, Multigraph)>> {
    if h.has_loops() {
        return Err(Error::NotBipartite("multigraph has a loop".into()));
    }
    let color = h
        .simplification()
        .two_coloring()
        .ok_or_else(|| Error::NotBipartite("multigraph has an odd cycle".into()))?;
    let n = h.n();
    let delta = h.max_degree() as i64;
    let (cap1, cap2) = ((delta + 1) / 2, delta / 2);
    let (s, t) = (n, n + 1);
    let pairs: Vec<((usize, usize), u32)> = h.pairs().collect();
    let mut arcs = Vec::new();
    for &((a, b), m) in &pairs {
        let (u, v) = if color[a] == 0 { (a, b) } else { (b, a) };
        let m = m as i64;
        arcs.push(BoundedArc { from: u, to: v, lo: m / 2, hi: (m + 1) / 2 });
    }
    for (v, &side) in color.iter().enumerate() {
        let deg = h.degree(v) as i64;
        let (lo, hi) = ((deg - cap2).max(0), cap1.min(deg));
        if side == 0 {
            arcs.push(BoundedArc { from: s, to: v, lo, hi });
        } else {
            arcs.push(BoundedArc { from: v, to: t, lo, hi });
        }
    }
    arcs.push(BoundedArc { from: t, to: s, lo: 0, hi: h.edge_count() as i64 });
    let Some(flow) = feasible_circulation(n + 2, &arcs) else {
        return Ok(None);
    };
    let mut mu1 = Multigraph::new(n);
    let mut mu2 = Multigraph::new(n);
    for (i, &((a, b), m)) in pairs.iter().enumerate() {
        let x = flow[i] as u32;
        mu1.add_edges(a, b, x)?;
        mu2.add_edges(a, b, m - x)?;
    }
    if mu1.max_degree() as i64 > cap1 || mu2.max_degree() as i64 > cap2 {
        return Err(Error::Internal("degree caps violated".into()));
    }
    Ok(Some((mu1, mu2)))
}

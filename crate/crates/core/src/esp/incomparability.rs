use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{max_weight_stable_set, Orientation};

/// Splits `d` by layering the poset whose comparabilities are the arcs of
/// `orient` (a transitive orientation of the complement of `g`), each
/// vertex `v` blown up into a chain of `d(v)` copies. Maximal elements are
/// peeled off repeatedly; odd layers go to side 1, even layers to side 2.
///
/// An arc `(a, b)` means `a` lies below `b`.
pub fn incomparability_partition(g: &Graph, orient: &Orientation, d: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    let n = g.n();
    if d.len() != n {
        return Err(Error::DimensionMismatch(format!("d has {} entries, graph has {n} vertices", d.len())));
    }
    if let Some(v) = d.iter().position(|&x| x < 0) {
        return Err(Error::InvalidParameter(format!("negative replication at vertex {v}")));
    }
    let comp = g.complement();
    if !orient.is_transitive_orientation_of(&comp) {
        return Err(Error::Precondition("not a transitive orientation of the complement".into()));
    }
    let mut above = vec![Vec::new(); n];
    for &(a, b) in &orient.arcs {
        above[a].push(b);
    }
    // height[v]: longest chain strictly above the top copy of v; by
    // transitivity anything above v has fewer elements above it
    let mut height = vec![0i64; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| above[v].len());
    for &v in &order {
        height[v] = above[v].iter().map(|&u| height[u] + d[u]).max().unwrap_or(0);
    }
    let mut d1 = vec![0i64; n];
    for v in 0..n {
        // copies of v occupy layers height+1 ..= height+d
        let (lo, hi) = (height[v] + 1, height[v] + d[v]);
        d1[v] = if hi < lo { 0 } else { (hi + 1) / 2 - lo / 2 };
    }
    let d2: Vec<i64> = d.iter().zip(&d1).map(|(a, b)| a - b).collect();
    for v in 0..n {
        if d1[v] + d2[v] != d[v] || d1[v].min(d2[v]) < d[v] / 2 || d1[v].max(d2[v]) > (d[v] + 1) / 2 {
            return Err(Error::Internal(format!("layer split out of bounds at vertex {v}")));
        }
    }
    let a = |w: &[i64]| max_weight_stable_set(g, w).map(|r| r.0);
    if a(&d1)? + a(&d2)? > a(d)? {
        return Err(Error::Internal("layer split exceeds the stable number".into()));
    }
    Ok((d1, d2))
}

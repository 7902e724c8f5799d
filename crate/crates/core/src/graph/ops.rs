//! Graph constructions: line graphs, bipartite extensions, simplicial sums
//! and p-comparability graphs.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

use super::{check_size, Digraph, Graph, Multigraph};

/// Instances with more simple dicycles than this are rejected.
pub const DEFAULT_DICYCLE_BUDGET: u64 = 1_000_000;

/// `L(H)` together with the edge of `H` behind each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineGraph {
    pub graph: Graph,
    /// `edges[i]` is the endpoint pair of the edge that became vertex `i`;
    /// parallel copies appear once each, consecutively.
    pub edges: Vec<(usize, usize)>,
}

pub fn line_graph(h: &Multigraph) -> Result<LineGraph> {
    if h.has_loops() {
        return Err(Error::Precondition("line graph of a multigraph with loops".into()));
    }
    let mut edges = Vec::new();
    for ((u, v), m) in h.pairs() {
        edges.extend(std::iter::repeat_n((u, v), m as usize));
    }
    check_size(edges.len())?;
    let mut g = Graph::empty(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                g.add_edge(i, j);
            }
        }
    }
    Ok(LineGraph { graph: g, edges })
}

/// A loopless multigraph `H` without isolated vertices with `L(H) = g`
/// (vertex `i` of `g` is edge `i` of `H`), or `None` if `g` is not a line
/// graph of any multigraph.
pub fn line_graph_root(g: &Graph) -> Option<(Multigraph, Vec<(usize, usize)>)> {
    // visit vertices so that each one after the first of its component has
    // an earlier neighbour
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        let start = comp.first().unwrap();
        let mut seen = VertexSet::singleton(start);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in g.neighbors(v).difference(seen).iter() {
                seen.insert(u);
                queue.push_back(u);
            }
        }
    }
    let mut assigned: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    if !assign_root(g, &order, 0, 0, &mut assigned) {
        return None;
    }
    let edges: Vec<(usize, usize)> = assigned.into_iter().map(Option::unwrap).collect();
    let roots = edges.iter().map(|&(_, b)| b + 1).max().unwrap_or(0);
    let mut h = Multigraph::new(roots);
    for &(a, b) in &edges {
        h.add_edges(a, b, 1).expect("root vertices in range");
    }
    Some((h, edges))
}

fn assign_root(
    g: &Graph,
    order: &[usize],
    idx: usize,
    roots: usize,
    assigned: &mut [Option<(usize, usize)>],
) -> bool {
    let Some(&v) = order.get(idx) else {
        return true;
    };
    let consistent = |e: (usize, usize), assigned: &[Option<(usize, usize)>]| {
        order[..idx].iter().all(|&u| {
            let (a, b) = assigned[u].unwrap();
            let touch = e.0 == a || e.0 == b || e.1 == a || e.1 == b;
            touch == g.has_edge(u, v)
        })
    };
    let earlier = order[..idx].iter().copied().find(|&u| g.has_edge(u, v));
    let mut candidates = Vec::new();
    match earlier {
        None => candidates.push(((roots, roots + 1), roots + 2)),
        Some(u) => {
            let (a, b) = assigned[u].unwrap();
            for end in [a, b] {
                for other in 0..=roots {
                    if other == end {
                        continue;
                    }
                    let next = if other == roots { roots + 1 } else { roots };
                    candidates.push(((end.min(other), end.max(other)), next));
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    for (e, next_roots) in candidates {
        if consistent(e, assigned) {
            assigned[v] = Some(e);
            if assign_root(g, order, idx + 1, next_roots, assigned) {
                return true;
            }
            assigned[v] = None;
        }
    }
    false
}

/// Removes pendant twins: whenever `x` and `y` both have `z` as their only
/// neighbour, the `yz` edges move to `xz`. Isolated vertices are then
/// dropped. The line graph is unchanged up to isomorphism.
pub fn normalize_pendant_twins(h: &Multigraph) -> Multigraph {
    let mut h = h.clone();
    loop {
        let si = h.simplification();
        let mut merge = None;
        'scan: for z in 0..si.n() {
            let mut pendant = None;
            for x in si.neighbors(z).iter() {
                if si.degree(x) == 1 && !h.has_loop(x) {
                    if let Some(y) = pendant {
                        merge = Some((y, x, z));
                        break 'scan;
                    }
                    pendant = Some(x);
                }
            }
        }
        let Some((x, y, z)) = merge else { break };
        let m = h.multiplicity(y, z);
        h.remove_pair(y, z);
        h.add_edges(x, z, m).expect("vertices in range");
    }
    let keep: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
    let mut pos = vec![usize::MAX; h.n()];
    for (i, &v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let mut out = Multigraph::new(keep.len());
    for ((u, v), m) in h.pairs() {
        out.add_edges(pos[u], pos[v], m).expect("vertices in range");
    }
    out
}

/// Glues `b` onto `h` by identifying the `i`-th vertex of `s` with the
/// `i`-th vertex of `t` (both in increasing order).
///
/// Vertices of `h` keep their indices; the remaining vertices of `b`
/// follow in increasing order.
pub fn bipartite_extension(h: &Graph, s: VertexSet, b: &Graph, t: VertexSet) -> Result<Graph> {
    h.check_set(s)?;
    b.check_set(t)?;
    if !h.is_stable(s) {
        return Err(Error::Precondition("S is not stable in H".into()));
    }
    if let Some(first) = s.first() {
        if let Some(v) = s.iter().find(|&v| h.neighbors(v) != h.neighbors(first)) {
            return Err(Error::Precondition(format!(
                "vertices {first} and {v} of S have different neighbourhoods in H"
            )));
        }
    }
    let color = b
        .two_coloring()
        .ok_or_else(|| Error::NotBipartite("B contains an odd cycle".into()))?;
    for comp in b.components() {
        let inside = comp.intersection(t);
        if let Some(first) = inside.first() {
            if inside.iter().any(|v| color[v] != color[first]) {
                return Err(Error::Precondition("T meets both colour classes of B".into()));
            }
        }
    }
    if s.len() != t.len() {
        return Err(Error::Precondition(format!(
            "|S| = {} but |T| = {}",
            s.len(),
            t.len()
        )));
    }
    let rest = b.vertices().difference(t);
    check_size(h.n() + rest.len())?;
    let mut map = vec![0usize; b.n()];
    for (sv, tv) in s.iter().zip(t.iter()) {
        map[tv] = sv;
    }
    for (i, v) in rest.iter().enumerate() {
        map[v] = h.n() + i;
    }
    let mut g = Graph::empty(h.n() + rest.len());
    for (u, v) in h.edges() {
        g.add_edge(u, v);
    }
    for (u, v) in b.edges() {
        g.add_edge(map[u], map[v]);
    }
    Ok(g)
}

fn check_simplicial(g: &Graph, x: usize, which: &str) -> Result<()> {
    g.check_vertex(x)?;
    if g.n() < 3 {
        return Err(Error::Precondition(format!("{which} has fewer than 3 vertices")));
    }
    if g.neighbors(x).is_empty() {
        return Err(Error::Precondition(format!("vertex {x} of {which} is isolated")));
    }
    if !g.is_clique(g.closed_neighbors(x)) {
        return Err(Error::Precondition(format!("vertex {x} of {which} is not simplicial")));
    }
    Ok(())
}

/// Simplicial sum over `x1`, `x2`. Vertices of `g1 - x1` come first, then
/// those of `g2 - x2`, each in increasing order.
pub fn simplicial_sum(g1: &Graph, x1: usize, g2: &Graph, x2: usize) -> Result<Graph> {
    check_simplicial(g1, x1, "G1")?;
    check_simplicial(g2, x2, "G2")?;
    let a = g1.delete_vertex(x1)?;
    let b = g2.delete_vertex(x2)?;
    let shift = |v: usize, x: usize| if v > x { v - 1 } else { v };
    let mut g = a.disjoint_union(&b)?;
    for u in g1.neighbors(x1).iter() {
        for v in g2.neighbors(x2).iter() {
            g.add_edge(shift(u, x1), a.n() + shift(v, x2));
        }
    }
    Ok(g)
}

/// The p-comparability graph of `d` with transversal `t`: vertices of
/// `V - T` (in increasing order) joined when they lie on a common dicycle.
pub fn p_comparability_graph(d: &Digraph, t: VertexSet, budget: u64) -> Result<Graph> {
    let full = VertexSet::full(d.n());
    if let Some(v) = t.difference(full).first() {
        return Err(Error::VertexOutOfRange { vertex: v, n: d.n() });
    }
    for (u, v) in d.arcs() {
        if t.contains(u) && t.contains(v) {
            return Err(Error::Precondition(format!("arc {u}->{v} joins two vertices of T")));
        }
    }
    let cycles = d.simple_cycles(budget)?;
    let mut on_cycle = vec![false; d.arc_count()];
    for c in &cycles {
        let hits = c.iter().filter(|&&v| t.contains(v)).count();
        if hits != 1 {
            return Err(Error::Precondition(format!(
                "dicycle {c:?} meets T in {hits} vertices"
            )));
        }
        for k in 0..c.len() {
            let (a, b) = (c[k], c[(k + 1) % c.len()]);
            for (i, arc) in d.arcs().enumerate() {
                if arc == (a, b) {
                    on_cycle[i] = true;
                }
            }
        }
    }
    if let Some(i) = on_cycle.iter().position(|&b| !b) {
        let (u, v) = d.arc(i);
        return Err(Error::Precondition(format!("arc {u}->{v} lies on no dicycle")));
    }
    let keep = full.difference(t);
    let mut pos = vec![usize::MAX; d.n()];
    for (i, v) in keep.iter().enumerate() {
        pos[v] = i;
    }
    let mut g = Graph::empty(keep.len());
    for c in &cycles {
        let members: Vec<usize> = c.iter().copied().filter(|&v| !t.contains(v)).collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                g.add_edge(pos[u], pos[v]);
            }
        }
    }
    Ok(g)
}

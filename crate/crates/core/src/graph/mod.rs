//! Simple graphs, multigraphs and digraphs over dense vertex indices.

mod canon;
mod families;
mod format;
mod iso;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

pub use canon::{canonical_code, canonical_code_colored, CanonicalCode};
pub use families::{build_named, figure_four, Family};
pub use format::{read_graph, read_multigraph, read_digraph, write_graph, write_multigraph, write_digraph};
pub use iso::{contains_induced, Embedding};
pub use ops::{
    bipartite_extension, line_graph, line_graph_root, normalize_pendant_twins,
    p_comparability_graph, simplicial_sum, LineGraph, DEFAULT_DICYCLE_BUDGET,
};

/// A simple undirected graph on vertices `0..n`.
///
/// Labels are display metadata only; equality and hashing look at the
/// vertex count and adjacency alone.
#[derive(Clone, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices { n, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics above [`MAX_VERTICES`].
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graphs are limited to {MAX_VERTICES} vertices");
        Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = VertexSet::full(n).without(v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_size(n)?;
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph from a full adjacency row list. Rows must be symmetric and loop-free.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self> {
        let n = adj.len();
        check_size(n)?;
        let full = VertexSet::full(n);
        for (v, row) in adj.iter().enumerate() {
            if row.contains(v) || !row.is_subset(full) {
                return Err(Error::Precondition(format!("bad adjacency row for vertex {v}")));
            }
            for u in row.iter() {
                if !adj[u].contains(v) {
                    return Err(Error::Precondition(format!("asymmetric adjacency {v}-{u}")));
                }
            }
        }
        Ok(Graph { n, adj, labels: None })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_set(&self, set: VertexSet) -> Result<()> {
        match set.difference(self.vertices()).first() {
            None => Ok(()),
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
        }
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {u}")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Adds edge `uv`. Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "invalid edge {u}-{v}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adj
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset(self.adj[v]))
    }

    pub fn is_stable(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].intersection(set).is_empty())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    /// Display name of `v`: its label if present, else the index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Subgraph induced by `set`, re-indexed densely in increasing vertex order.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<Graph> {
        self.check_set(set)?;
        let order = set.to_vec();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(order.len());
        for (i, &v) in order.iter().enumerate() {
            g.adj[i] = self.adj[v].intersection(set).iter().map(|u| pos[u]).collect();
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(order.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(g)
    }

    /// `G - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        self.induced_subgraph(self.vertices().without(v))
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices();
        let adj = (0..self.n)
            .map(|v| full.difference(self.adj[v]).without(v))
            .collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    /// Adds a twin `v'` of `v` (index `n`) joined to every neighbor of `v`,
    /// and to `v` itself when `adjacent` is set.
    pub fn duplicate_vertex(&self, v: usize, adjacent: bool) -> Result<Graph> {
        self.check_vertex(v)?;
        check_size(self.n + 1)?;
        let mut g = Graph::empty(self.n + 1);
        g.adj[..self.n].copy_from_slice(&self.adj);
        let twin = self.n;
        for u in self.adj[v].iter() {
            g.add_edge(twin, u);
        }
        if adjacent {
            g.add_edge(twin, v);
        }
        if let Some(labels) = &self.labels {
            let mut l = labels.clone();
            l.push(format!("{}'", labels[v]));
            g.labels = Some(l);
        }
        Ok(g)
    }

    /// `G^d`: every vertex `v` becomes a stable set of `d[v]` copies.
    ///
    /// Copies are numbered class by class in vertex order; the returned
    /// provenance maps each new vertex to its origin.
    pub fn replicate(&self, d: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "replication vector has length {}, graph has {} vertices",
                d.len(),
                self.n
            )));
        }
        let total: usize = d.iter().sum();
        check_size(total)?;
        let provenance: Vec<usize> = (0..self.n)
            .flat_map(|v| std::iter::repeat_n(v, d[v]))
            .collect();
        let mut g = Graph::empty(total);
        for i in 0..total {
            for j in i + 1..total {
                if self.has_edge(provenance[i], provenance[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, provenance))
    }

    /// A proper 2-coloring (color of each vertex), or `None` if an odd cycle exists.
    /// Each component's least vertex gets color 0.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for u in self.adj[v].iter() {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        stack.push(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Connected components, each as a vertex set, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v]);
                }
                frontier = next.difference(comp);
                comp = comp.union(next);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        check_size(self.n + other.n)?;
        let mut g = Graph::empty(self.n + other.n);
        g.adj[..self.n].copy_from_slice(&self.adj);
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v);
        }
        Ok(g)
    }

    /// First chordless cycle (as a vertex sequence starting at its least
    /// vertex) with length at least `min_len` and `accept(length)` true.
    /// Cycles are searched by least vertex, then depth-first in increasing
    /// neighbour order.
    pub fn find_chordless_cycle(&self, min_len: usize, accept: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        for s in 0..self.n {
            let above = VertexSet::full(self.n).difference(VertexSet::full(s + 1));
            for a in self.adj[s].intersection(above).iter() {
                let mut path = vec![s, a];
                if let Some(c) = self.extend_induced(&mut path, above, VertexSet::EMPTY, min_len, &accept) {
                    return Some(c);
                }
            }
        }
        None
    }

    // `blocked`: closed neighbourhoods of the interior path vertices
    fn extend_induced(
        &self,
        path: &mut Vec<usize>,
        allowed: VertexSet,
        blocked: VertexSet,
        min_len: usize,
        accept: &impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let s = path[0];
        let x = *path.last().expect("path is nonempty");
        let on_path: VertexSet = path.iter().collect();
        let cand = self.adj[x].intersection(allowed).difference(blocked).difference(on_path);
        for y in cand.iter() {
            if self.adj[y].contains(s) {
                let len = path.len() + 1;
                if len >= min_len && accept(len) {
                    let mut c = path.clone();
                    c.push(y);
                    return Some(c);
                }
                continue;
            }
            path.push(y);
            let nb = if path.len() > 2 { blocked.union(self.closed_neighbors(x)) } else { blocked };
            let r = self.extend_induced(path, allowed, nb, min_len, accept);
            path.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

/// A loopless-or-not multigraph with integer edge multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    /// Keys are `(u, v)` with `u <= v`; zero multiplicities are never stored.
    mult: BTreeMap<(usize, usize), u32>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            mult: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut h = Multigraph::new(g.n());
        for (u, v) in g.edges() {
            h.mult.insert((u, v), 1);
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edges(&mut self, u: usize, v: usize, count: u32) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if count > 0 {
            *self.mult.entry((u.min(v), u.max(v))).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.mult.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// Distinct vertex pairs carrying at least one edge, with multiplicities.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.mult.iter().map(|(&k, &m)| (k, m))
    }

    pub fn has_loops(&self) -> bool {
        self.mult.keys().any(|&(u, v)| u == v)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.mult.contains_key(&(v, v))
    }

    /// Deletes every edge between `u` and `v`.
    pub fn remove_pair(&mut self, u: usize, v: usize) {
        self.mult.remove(&(u.min(v), u.max(v)));
    }

    pub fn edge_count(&self) -> usize {
        self.mult.values().map(|&m| m as usize).sum()
    }

    /// Number of edge ends at `v` (a loop counts twice).
    pub fn degree(&self, v: usize) -> usize {
        self.mult
            .iter()
            .map(|(&(a, b), &m)| m as usize * ((a == v) as usize + (b == v) as usize))
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `si(H)`: drop loops and collapse parallel edges.
    pub fn simplification(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for &(u, v) in self.mult.keys() {
            if u != v {
                g.add_edge(u, v);
            }
        }
        g
    }
}

/// A directed multigraph given as an arc list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize, u32)>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { n, arcs: Vec::new() }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Digraph::new(n);
        for &(u, v) in arcs {
            d.add_arc(u, v, 1)?;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Appends an arc; returns its index.
    pub fn add_arc(&mut self, u: usize, v: usize, mult: u32) -> Result<usize> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        self.arcs.push((u, v, mult));
        Ok(self.arcs.len() - 1)
    }

    /// Arcs as `(tail, head)`, indexed as inserted.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().map(|&(u, v, _)| (u, v))
    }

    pub fn arc(&self, i: usize) -> (usize, usize) {
        let (u, v, _) = self.arcs[i];
        (u, v)
    }

    pub fn arc_multiplicity(&self, i: usize) -> u32 {
        self.arcs[i].2
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn successors(&self, v: usize) -> VertexSet {
        self.arcs
            .iter()
            .filter(|&&(u, _, _)| u == v)
            .map(|&(_, w, _)| w)
            .collect()
    }

    /// All simple directed cycles as vertex sequences starting at their least
    /// vertex. Loops count as cycles of length one.
    pub fn simple_cycles(&self, budget: u64) -> Result<Vec<Vec<usize>>> {
        let succ: Vec<VertexSet> = (0..self.n).map(|v| self.successors(v)).collect();
        let mut out = Vec::new();
        for start in 0..self.n {
            let mut path = vec![start];
            let mut on_path = VertexSet::singleton(start);
            cycles_from(start, &succ, &mut path, &mut on_path, &mut out, budget)?;
        }
        Ok(out)
    }
}

fn cycles_from(
    start: usize,
    succ: &[VertexSet],
    path: &mut Vec<usize>,
    on_path: &mut VertexSet,
    out: &mut Vec<Vec<usize>>,
    budget: u64,
) -> Result<()> {
    let last = *path.last().unwrap();
    for w in succ[last].iter() {
        if w == start {
            if out.len() as u64 >= budget {
                return Err(Error::budget("simple dicycle enumeration", budget));
            }
            out.push(path.clone());
        } else if w > start && !on_path.contains(w) {
            path.push(w);
            on_path.insert(w);
            cycles_from(start, succ, path, on_path, out, budget)?;
            path.pop();
            on_path.remove(w);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.induced_subgraph(set(&[0, 1])).unwrap(), Graph::complete(2));
        assert_eq!(k3.induced_subgraph(VertexSet::EMPTY).unwrap().n(), 0);
        assert!(matches!(
            k3.induced_subgraph(set(&[0, 3])),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        let s3 = build_named("S_n", &[3]).unwrap();
        assert_eq!(s3.induced_subgraph(set(&[1, 3, 5])).unwrap(), Graph::complete(3));
    }

    #[test]
    fn duplicate_vertex_examples() {
        let k1 = Graph::empty(1);
        assert_eq!(k1.duplicate_vertex(0, true).unwrap(), Graph::complete(2));
        assert_eq!(k1.duplicate_vertex(0, false).unwrap(), Graph::empty(2));
        // K2 = a-b, duplicate a without the edge: b-a, b-a'
        let k2 = Graph::complete(2);
        let g = k2.duplicate_vertex(0, false).unwrap();
        assert_eq!(g, Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        assert!(k2.duplicate_vertex(2, true).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(4).complement(), Graph::empty(4));
        let s3 = build_named("S_n", &[3]).unwrap();
        assert_eq!(s3.complement().complement(), s3);
        // complement of S_3: odd vertices form a triangle, each with one pendant even vertex
        let bar = s3.complement();
        assert!(bar.is_clique(set(&[0, 2, 4])));
        assert!(bar.is_stable(set(&[1, 3, 5])));
        assert_eq!(bar.edge_count(), 6);
        for v in [1, 3, 5] {
            assert_eq!(bar.degree(v), 1);
        }
    }

    #[test]
    fn replicate_examples() {
        let g = build_named("S_n", &[3]).unwrap();
        let (same, prov) = g.replicate(&[1; 6]).unwrap();
        assert_eq!(same, g);
        assert_eq!(prov, vec![0, 1, 2, 3, 4, 5]);
        let (p, prov) = Graph::complete(2).replicate(&[2, 1]).unwrap();
        assert_eq!(prov, vec![0, 0, 1]);
        assert_eq!(p, Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap());
        assert_eq!(g.replicate(&[0; 6]).unwrap().0.n(), 0);
        assert!(g.replicate(&[1; 5]).is_err());
    }

    #[test]
    fn dicycles_of_two_triangles() {
        let d = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)]).unwrap();
        let cycles = d.simple_cycles(100).unwrap();
        assert_eq!(cycles, vec![vec![0, 1, 2], vec![0, 1, 2, 3]]);
        assert!(d.simple_cycles(1).is_err());
    }

    #[test]
    fn multigraph_degree_and_simplification() {
        let mut h = Multigraph::new(3);
        h.add_edges(0, 1, 2).unwrap();
        h.add_edges(1, 2, 1).unwrap();
        h.add_edges(2, 2, 1).unwrap();
        assert_eq!(h.degree(1), 3);
        assert_eq!(h.degree(2), 3);
        assert!(h.has_loops());
        assert_eq!(h.simplification(), Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
    }
}

//! Exact graph parameters and recognition predicates for small graphs.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{contains_induced, Graph};

/// Maximum total weight of a stable set, with the witness found first by a
/// branch and bound that includes heavier vertices before lighter ones.
/// Zero-weight vertices never enter the witness.
pub fn max_weight_stable_set(g: &Graph, w: &[i64]) -> Result<(i64, VertexSet)> {
    if w.len() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "weight vector has {} entries, graph has {} vertices",
            w.len(),
            g.n()
        )));
    }
    if let Some(v) = w.iter().position(|&x| x < 0) {
        return Err(Error::InvalidParameter(format!("negative weight on vertex {v}")));
    }
    let p: VertexSet = (0..g.n()).filter(|&v| w[v] > 0).collect();
    let mut best = (0, VertexSet::EMPTY);
    mwss(g, w, VertexSet::EMPTY, 0, p, &mut best);
    Ok(best)
}

fn mwss(g: &Graph, w: &[i64], cur: VertexSet, val: i64, p: VertexSet, best: &mut (i64, VertexSet)) {
    if p.is_empty() {
        if val > best.0 {
            *best = (val, cur);
        }
        return;
    }
    if val + cover_bound(g, w, p) <= best.0 {
        return;
    }
    let v = p
        .iter()
        .max_by_key(|&v| (w[v], std::cmp::Reverse(v)))
        .expect("p is nonempty");
    mwss(g, w, cur.with(v), val + w[v], p.difference(g.closed_neighbors(v)), best);
    mwss(g, w, cur, val, p.without(v), best);
}

// Sum over a greedy clique partition of the heaviest weight in each part.
fn cover_bound(g: &Graph, w: &[i64], mut p: VertexSet) -> i64 {
    let mut total = 0;
    while let Some(v) = p.first() {
        let mut clique = VertexSet::singleton(v);
        let mut cand = p.intersection(g.neighbors(v));
        let mut heaviest = w[v];
        while let Some(u) = cand.first() {
            clique.insert(u);
            heaviest = heaviest.max(w[u]);
            cand = cand.intersection(g.neighbors(u));
        }
        total += heaviest;
        p = p.difference(clique);
    }
    total
}

pub fn stable_number(g: &Graph) -> usize {
    max_weight_stable_set(g, &vec![1; g.n()]).expect("unit weights are valid").0 as usize
}

pub fn clique_number(g: &Graph) -> usize {
    stable_number(&g.complement())
}

/// Chromatic number by DSATUR backtracking.
pub fn chromatic_number(g: &Graph, budget: &Budget) -> Result<usize> {
    budget.require_n("chromatic number", g.n(), budget.chi_max_n)?;
    Ok(chromatic(g))
}

/// Clique cover number, the chromatic number of the complement.
pub fn clique_cover_number(g: &Graph, budget: &Budget) -> Result<usize> {
    chromatic_number(&g.complement(), budget)
}

fn chromatic(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let lower = clique_number(g);
    let mut color = vec![usize::MAX; n];
    let mut best = greedy_colors(g);
    if best > lower {
        dsatur(g, &mut color, 0, &mut best, lower);
    }
    best
}

fn greedy_colors(g: &Graph) -> usize {
    let mut color = vec![usize::MAX; g.n()];
    let mut used = 0;
    for v in 0..g.n() {
        let c = (0..)
            .find(|&c| g.neighbors(v).iter().all(|u| color[u] != c))
            .expect("some color is free");
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn dsatur(g: &Graph, color: &mut [usize], used: usize, best: &mut usize, lower: usize) -> bool {
    let uncolored: Vec<usize> = (0..g.n()).filter(|&v| color[v] == usize::MAX).collect();
    if uncolored.is_empty() {
        *best = used;
        return used == lower;
    }
    let sat = |v: usize| -> u64 {
        g.neighbors(v)
            .iter()
            .filter(|&u| color[u] != usize::MAX)
            .fold(0u64, |acc, u| acc | 1 << color[u])
    };
    let v = *uncolored
        .iter()
        .max_by_key(|&&v| (sat(v).count_ones(), g.degree(v), std::cmp::Reverse(v)))
        .expect("nonempty");
    let forbidden = sat(v);
    for c in 0..=used {
        if forbidden >> c & 1 == 1 {
            continue;
        }
        let next = used.max(c + 1);
        if next >= *best {
            break;
        }
        color[v] = c;
        let done = dsatur(g, color, next, best, lower);
        color[v] = usize::MAX;
        if done {
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub alpha: usize,
    pub omega: usize,
    pub chi: usize,
    pub chibar: usize,
}

pub fn parameters(g: &Graph, budget: &Budget) -> Result<ParamReport> {
    Ok(ParamReport {
        alpha: stable_number(g),
        omega: clique_number(g),
        chi: chromatic_number(g, budget)?,
        chibar: clique_cover_number(g, budget)?,
    })
}

/// Chromatic numbers of every induced subgraph, indexed by vertex mask.
fn subset_chromatic(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let full = 1usize << n;
    let mut stable = vec![false; full];
    stable[0] = true;
    for s in 1..full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        stable[s] = stable[rest] && g.neighbors(v).bits() & rest as u64 == 0;
    }
    let mut chi = vec![0u8; full];
    for s in 1..full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        // stable sets containing the lowest vertex
        let mut best = u8::MAX;
        let mut t = rest;
        loop {
            let i = t | low;
            if stable[i] {
                best = best.min(chi[s ^ i] + 1);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        chi[s] = best;
    }
    chi
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPerfectReport {
    pub q: usize,
    pub alpha_q: usize,
    pub chibar_q: usize,
    /// Largest `q`-colorable set; least in vertex-list order among ties.
    pub witness_x_alpha: VertexSet,
    /// Set `X` attaining the minimum; least among ties.
    pub witness_x_chibar: VertexSet,
    pub equal: bool,
}

struct SubsetTables {
    chi: Vec<u8>,
    chibar: Vec<u8>,
}

fn subset_tables(g: &Graph, budget: &Budget) -> Result<SubsetTables> {
    budget.require_n("q-perfectness tables", g.n(), budget.q_perfect_max_n)?;
    Ok(SubsetTables {
        chi: subset_chromatic(g),
        chibar: subset_chromatic(&g.complement()),
    })
}

/// `alpha_q` and `chibar_q` of `g` by enumeration of all vertex subsets.
pub fn q_perfect_report(g: &Graph, q: usize, budget: &Budget) -> Result<QPerfectReport> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be positive".into()));
    }
    let t = subset_tables(g, budget)?;
    let n = g.n();
    let full = (1usize << n) - 1;
    let mut alpha = (0usize, VertexSet::EMPTY);
    let mut chibar = (usize::MAX, VertexSet::EMPTY);
    for s in 0..=full {
        let x = VertexSet::from_bits(s as u64);
        if t.chi[s] as usize <= q && (x.len() > alpha.0 || (x.len() == alpha.0 && x < alpha.1)) {
            alpha = (x.len(), x);
        }
        let val = q * t.chibar[full ^ s] as usize + x.len();
        if val < chibar.0 || (val == chibar.0 && x < chibar.1) {
            chibar = (val, x);
        }
    }
    Ok(QPerfectReport {
        q,
        alpha_q: alpha.0,
        chibar_q: chibar.0,
        witness_x_alpha: alpha.1,
        witness_x_chibar: chibar.1,
        equal: alpha.0 == chibar.0,
    })
}

/// First induced subgraph `G[Y]` (by increasing mask) with `alpha_q != chibar_q`.
pub fn q_perfect_violation(g: &Graph, q: usize, budget: &Budget) -> Result<Option<VertexSet>> {
    let t = subset_tables(g, budget)?;
    Ok(q_violation(g.n(), q, &t))
}

fn q_violation(n: usize, q: usize, t: &SubsetTables) -> Option<VertexSet> {
    let full = 1usize << n;
    // a[Y] = alpha_q(G[Y]); m[Y] = min over Z within Y of q*chibar(Z) - |Z|
    let mut a = vec![0usize; full];
    let mut m = vec![0i64; full];
    for y in 1..full {
        let size = y.count_ones() as usize;
        a[y] = if t.chi[y] as usize <= q { size } else { 0 };
        m[y] = q as i64 * t.chibar[y] as i64 - size as i64;
        let mut rest = y;
        while rest != 0 {
            let b = rest & rest.wrapping_neg();
            rest ^= b;
            a[y] = a[y].max(a[y ^ b]);
            m[y] = m[y].min(m[y ^ b]);
        }
        if a[y] as i64 != size as i64 + m[y] {
            return Some(VertexSet::from_bits(y as u64));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalPerfection {
    pub totally_perfect: bool,
    /// Least failing `q` and the first induced subgraph where it fails.
    pub failure: Option<(usize, VertexSet)>,
}

/// Checks `q`-perfectness for `q = 1..=n`; larger `q` reduce to `q = n`.
pub fn is_totally_perfect(g: &Graph, budget: &Budget) -> Result<TotalPerfection> {
    let t = subset_tables(g, budget)?;
    for q in 1..=g.n().max(1) {
        if let Some(y) = q_violation(g.n(), q, &t) {
            return Ok(TotalPerfection {
                totally_perfect: false,
                failure: Some((q, y)),
            });
        }
    }
    Ok(TotalPerfection {
        totally_perfect: true,
        failure: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectReport {
    pub perfect: bool,
    /// An odd hole of `G`, or of the complement when `in_complement`.
    pub witness: Option<Vec<usize>>,
    pub in_complement: bool,
}

pub fn is_perfect(g: &Graph, budget: &Budget) -> Result<PerfectReport> {
    budget.require_n("odd hole search", g.n(), budget.perfect_max_n)?;
    let odd = |len: usize| len % 2 == 1;
    if let Some(c) = g.find_chordless_cycle(5, odd) {
        return Ok(PerfectReport {
            perfect: false,
            witness: Some(c),
            in_complement: false,
        });
    }
    let c = g.complement().find_chordless_cycle(5, odd);
    Ok(PerfectReport {
        perfect: c.is_none(),
        in_complement: c.is_some(),
        witness: c,
    })
}

/// A partition into a clique and a stable set, from the degree sequence.
/// The clique takes the highest-degree vertices (ties by index).
pub fn is_split(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let deg: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let m = (0..deg.len()).take_while(|&i| deg[i] >= i).count();
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    if head != m * m.saturating_sub(1) + tail {
        return None;
    }
    let clique: VertexSet = order[..m].iter().collect();
    let stable = g.vertices().difference(clique);
    debug_assert!(g.is_clique(clique) && g.is_stable(stable));
    Some((clique, stable))
}

pub fn is_claw_free(g: &Graph) -> bool {
    let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).expect("claw");
    contains_induced(g, &claw).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub parity: bool,
    /// Two induced paths with common ends and different parity, shorter first,
    /// for the least such pair of ends.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

pub fn is_parity(g: &Graph, budget: &Budget) -> Result<ParityReport> {
    budget.require_n("induced path enumeration", g.n(), budget.parity_max_n)?;
    let n = g.n();
    for u in 0..n {
        // first path of each parity to every later endpoint
        let mut found: Vec<[Option<Vec<usize>>; 2]> = vec![[None, None]; n];
        let mut path = vec![u];
        induced_paths(g, &mut path, VertexSet::EMPTY, &mut found);
        for (v, slot) in found.iter().enumerate().skip(u + 1) {
            if let [Some(a), Some(b)] = slot {
                let (a, b) = if a.len() < b.len() { (a, b) } else { (b, a) };
                let _ = v;
                return Ok(ParityReport {
                    parity: false,
                    witness: Some((a.clone(), b.clone())),
                });
            }
        }
    }
    Ok(ParityReport {
        parity: true,
        witness: None,
    })
}

fn induced_paths(g: &Graph, path: &mut Vec<usize>, blocked: VertexSet, found: &mut [[Option<Vec<usize>>; 2]]) {
    let x = *path.last().expect("nonempty");
    let on_path: VertexSet = path.iter().collect();
    let cand = g.neighbors(x).difference(blocked).difference(on_path);
    let next_blocked = blocked.union(g.closed_neighbors(x));
    for y in cand.iter() {
        path.push(y);
        let parity = (path.len() - 1) % 2;
        if y > path[0] && found[y][parity].is_none() {
            found[y][parity] = Some(path.clone());
        }
        induced_paths(g, path, next_blocked, found);
        path.pop();
    }
}

/// A direction for each edge: `arcs[i]` orients the `i`-th edge of
/// [`Graph::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn is_transitive_orientation_of(&self, g: &Graph) -> bool {
        let mut out = vec![VertexSet::EMPTY; g.n()];
        let edges: Vec<(usize, usize)> = g.edges().collect();
        if edges.len() != self.arcs.len() {
            return false;
        }
        for (&(a, b), &(u, v)) in self.arcs.iter().zip(&edges) {
            if (a, b) != (u, v) && (a, b) != (v, u) {
                return false;
            }
            out[a].insert(b);
        }
        (0..g.n()).all(|a| out[a].iter().all(|b| out[b].is_subset(out[a])))
    }
}

/// A transitive orientation, searched by forcing and backtracking on the
/// least undecided edge (trying `u -> v` with `u < v` first).
pub fn transitive_orientation(g: &Graph, budget: &Budget) -> Result<Option<Orientation>> {
    budget.require_n("transitive orientation", g.n(), budget.orientation_max_n)?;
    let out = vec![VertexSet::EMPTY; g.n()];
    Ok(orient(g, out).map(|out| Orientation {
        arcs: g
            .edges()
            .map(|(u, v)| if out[u].contains(v) { (u, v) } else { (v, u) })
            .collect(),
    }))
}

fn orient(g: &Graph, out: Vec<VertexSet>) -> Option<Vec<VertexSet>> {
    let undecided = g
        .edges()
        .find(|&(u, v)| !out[u].contains(v) && !out[v].contains(u));
    let Some((u, v)) = undecided else {
        return Some(out);
    };
    for (a, b) in [(u, v), (v, u)] {
        let mut o = out.clone();
        if force(g, &mut o, a, b) {
            if let Some(r) = orient(g, o) {
                return Some(r);
            }
        }
    }
    None
}

// Adds a -> b and everything it forces; false on contradiction.
fn force(g: &Graph, out: &mut [VertexSet], a: usize, b: usize) -> bool {
    let mut queue = vec![(a, b)];
    while let Some((a, b)) = queue.pop() {
        if out[b].contains(a) {
            return false;
        }
        if out[a].contains(b) {
            continue;
        }
        out[a].insert(b);
        // a -> b and a ~ c with b !~ c force a -> c
        for c in g.neighbors(a).difference(g.closed_neighbors(b)).iter() {
            queue.push((a, c));
        }
        // a -> b and c ~ b with a !~ c force c -> b
        for c in g.neighbors(b).difference(g.closed_neighbors(a)).iter() {
            queue.push((c, b));
        }
        // transitivity through existing arcs
        for c in out[b].iter() {
            if !g.has_edge(a, c) {
                return false;
            }
            queue.push((a, c));
        }
        for (c, above) in out.iter().enumerate() {
            if above.contains(a) {
                if !g.has_edge(c, b) {
                    return false;
                }
                queue.push((c, b));
            }
        }
    }
    true
}

pub fn is_comparability(g: &Graph, budget: &Budget) -> Result<bool> {
    Ok(transitive_orientation(g, budget)?.is_some())
}

pub fn is_incomparability(g: &Graph, budget: &Budget) -> Result<bool> {
    is_comparability(&g.complement(), budget)
}

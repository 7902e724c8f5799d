//! Enumeration of the minimally non-TU bipartite graphs and of the split
//! graphs built from them, plus the split-graph tests that use them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::boxtdi::{build_r_graph, make_r_certificate, verify_certificate, RRecord};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::esp::{is_esp, EspMode};
use crate::graph::{canonical_code, canonical_code_colored, contains_induced, Graph};
use crate::invariants::is_split;
use crate::matrix::IntMatrix;
use crate::tu::{is_totally_unimodular, is_tu_graph, minimally_non_tu_submatrices};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QTag {
    /// Some `u` is adjacent to all of `V`.
    Q1,
    /// Adding such a `u` creates no induced `Q1` member.
    Q2,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QOptions {
    /// Let the induced `Q1` member in the `Q2` test have its sides swapped.
    pub q2_any_orientation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Canonical code as hex; coloured by side for bipartite entries.
    pub code: String,
    pub graph: Graph,
    /// The `U` side, for bipartite entries (vertices `0..k`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_side: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record: Option<RRecord>,
    pub tags: Vec<QTag>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCatalog {
    pub members: Vec<CatalogEntry>,
}

impl ClassCatalog {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_json_lines(&self) -> String {
        self.members
            .iter()
            .map(|m| serde_json::to_string(m).expect("catalog entries serialize") + "\n")
            .collect()
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let members = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::parse(i + 1, e.to_string())))
            .collect::<Result<_>>()?;
        Ok(ClassCatalog { members })
    }
}

fn bipartite_from_rows(rows: &[u32], k: usize) -> Graph {
    let mut g = Graph::empty(2 * k);
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..k {
            if r >> j & 1 == 1 {
                g.add_edge(i, k + j);
            }
        }
    }
    g
}

fn matrix_from_rows(rows: &[u32], k: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|&r| (0..k).map(|j| i64::from(r >> j & 1)).collect()).collect();
    IntMatrix::from_rows(&rows, k).expect("rows have k entries")
}

/// Whether `m` is not TU while all its proper submatrices are.
fn minimally_non_tu(m: &IntMatrix, budget: &Budget) -> Result<bool> {
    let rep = is_totally_unimodular(m, budget)?;
    Ok(rep.violator.is_some_and(|v| v.rows.len() == m.rows() && v.cols.len() == m.cols()))
}

fn q_tags(m: &IntMatrix, opts: QOptions) -> Result<Vec<QTag>> {
    let k = m.cols();
    let full_row = |mat: &IntMatrix, rows: &[usize], cols: &[usize]| {
        rows.iter().any(|&i| cols.iter().all(|&j| mat.get(i, j) == 1))
    };
    if full_row(m, &(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>()) {
        return Ok(vec![QTag::Q1]);
    }
    let ext = m.with_row(&vec![1; k])?;
    let hit = minimally_non_tu_submatrices(&ext)?.iter().any(|(r, c)| {
        full_row(&ext, r, c) || (opts.q2_any_orientation && c.iter().any(|&j| r.iter().all(|&i| ext.get(i, j) == 1)))
    });
    Ok(if hit { vec![] } else { vec![QTag::Q2] })
}

/// All bipartite `(U, V)` with `|U| = |V| <= max_side` whose biadjacency
/// matrix is minimally non-TU, up to side-preserving isomorphism. Ordered
/// by side, then by the sorted row masks of the first representative found.
///
/// Only square matrices with distinct rows of even weight are candidates,
/// which a minimally non-TU matrix must be.
pub fn enumerate_q(max_side: usize, opts: QOptions, budget: &Budget) -> Result<ClassCatalog> {
    if max_side > budget.enumerate_q_max_side {
        return Err(Error::budget("class Q enumeration side", budget.enumerate_q_max_side as u64));
    }
    let mut members = Vec::new();
    for k in 2..=max_side {
        let choices: Vec<u32> = (0u32..1 << k).filter(|r| r.count_ones() >= 2 && r.count_ones() % 2 == 0).collect();
        let mut seen = BTreeSet::new();
        let mut rows = Vec::with_capacity(k);
        let mut err = None;
        increasing_rows(&choices, k, 0, &mut rows, &mut |rows| {
            let cols_even = (0..k).all(|j| rows.iter().filter(|&&r| r >> j & 1 == 1).count() % 2 == 0);
            let weight: u32 = rows.iter().map(|r| r.count_ones()).sum();
            if !cols_even || weight % 4 != 2 {
                return;
            }
            let m = matrix_from_rows(rows, k);
            let res = minimally_non_tu(&m, budget).and_then(|q| {
                if !q {
                    return Ok(());
                }
                let g = bipartite_from_rows(rows, k);
                let colors: Vec<u32> = (0..2 * k).map(|v| u32::from(v >= k)).collect();
                let code = canonical_code_colored(&g, &colors).0;
                if seen.insert(code.clone()) {
                    members.push(CatalogEntry {
                        code: code.to_hex(),
                        graph: g,
                        u_side: Some((0..k).collect()),
                        record: None,
                        tags: q_tags(&m, opts)?,
                    });
                }
                Ok(())
            });
            if let Err(e) = res {
                err.get_or_insert(e);
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(ClassCatalog { members })
}

fn increasing_rows(choices: &[u32], k: usize, from: usize, rows: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if rows.len() == k {
        f(rows);
        return;
    }
    for i in from..choices.len() {
        rows.push(choices[i]);
        increasing_rows(choices, k, i + 1, rows, f);
        rows.pop();
    }
}

/// The members of `S` on at most `max_n` vertices, up to isomorphism: each
/// `Q1` or `Q2` member of the right size joined with a complete graph.
pub fn enumerate_s(max_n: usize, opts: QOptions, budget: &Budget) -> Result<ClassCatalog> {
    let side = max_n.div_ceil(2);
    let q = enumerate_q(side, opts, budget)?;
    let mut seen = BTreeSet::new();
    let mut members = Vec::new();
    for e in &q.members {
        let k = e.graph.n() / 2;
        let size = if e.tags.contains(&QTag::Q1) { 2 * k - 1 } else { 2 * k };
        if e.tags.is_empty() || size > max_n {
            continue;
        }
        let u: VertexSet = (0..k).collect();
        let (g, rec) = build_r_graph(&e.graph, u, &Graph::complete(k), budget)?;
        if is_split(&g).is_none() {
            return Err(Error::Internal(format!("S member from {} is not split", e.code)));
        }
        let code = canonical_code(&g).0;
        if seen.insert(code.clone()) {
            members.push(CatalogEntry {
                code: code.to_hex(),
                graph: g,
                u_side: None,
                record: Some(rec),
                tags: e.tags.clone(),
            });
        }
    }
    Ok(ClassCatalog { members })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub tu: bool,
    pub s_free: bool,
    /// An induced member of `S`, as (catalog index, host vertices).
    pub s_witness: Option<(usize, Vec<usize>)>,
    pub esp: Option<bool>,
    /// `tu != s_free`; never expected.
    pub divergent: bool,
}

/// TU-ness of `B_G` against freedom from induced members of `S`, for a
/// split graph, with an optional direct ESP search.
pub fn split_box_perfect_test(g: &Graph, with_esp: bool, budget: &Budget) -> Result<SplitReport> {
    let catalog = enumerate_s(g.n().max(1), QOptions::default(), budget)?;
    split_box_perfect_test_with(g, &catalog, with_esp, budget)
}

/// As [`split_box_perfect_test`] with a precomputed `S` catalog covering
/// at least `g.n()` vertices.
pub fn split_box_perfect_test_with(g: &Graph, s: &ClassCatalog, with_esp: bool, budget: &Budget) -> Result<SplitReport> {
    if is_split(g).is_none() {
        return Err(Error::Precondition("graph is not split".into()));
    }
    let tu = is_tu_graph(g, budget)?.is_tu;
    let s_witness = s
        .members
        .iter()
        .enumerate()
        .filter(|(_, m)| m.graph.n() <= g.n())
        .find_map(|(i, m)| contains_induced(g, &m.graph).map(|e| (i, e.image().to_vec())));
    let s_free = s_witness.is_none();
    let esp = if with_esp {
        Some(is_esp(g, EspMode::Direct, budget)?.esp)
    } else {
        None
    };
    Ok(SplitReport {
        tu,
        s_free,
        s_witness,
        esp,
        divergent: tu != s_free,
    })
}

/// Maps a record through a vertex renaming `map[old] = new`.
fn relabel_record(rec: &RRecord, map: &[usize]) -> RRecord {
    RRecord {
        u_vertices: rec.u_vertices.iter().map(|u| u.map(|u| map[u])).collect(),
        v_vertices: rec.v_vertices.iter().map(|&v| map[v]).collect(),
        ..rec.clone()
    }
}

/// Looks `g` up among the members of `S` of its size and returns the
/// construction record expressed in `g`'s own vertex names.
pub fn find_s_record(g: &Graph, budget: &Budget) -> Result<Option<RRecord>> {
    if g.n() < 3 || is_split(g).is_none() {
        return Ok(None);
    }
    let (code, order) = canonical_code(g);
    let catalog = enumerate_s(g.n(), QOptions::default(), budget)?;
    let Some(m) = catalog.members.iter().find(|m| m.code == code.to_hex()) else {
        return Ok(None);
    };
    let (_, morder) = canonical_code(&m.graph);
    let mut map = vec![0; g.n()];
    for (pos, &v) in morder.iter().enumerate() {
        map[v] = order[pos];
    }
    Ok(Some(relabel_record(m.record.as_ref().expect("S members carry records"), &map)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub minimal: bool,
    pub certified: bool,
    /// A vertex whose deletion is neither TU nor ESP within budget.
    pub failing_vertex: Option<usize>,
}

/// Whether `g` carries a verified certificate and every `g - w` is TU or
/// passes the direct ESP search.
pub fn minimality_check(g: &Graph, budget: &Budget) -> Result<MinimalityReport> {
    let certified = match find_s_record(g, budget)? {
        Some(rec) => {
            let cert = make_r_certificate::<Rational>(g, &rec, None, budget)?;
            verify_certificate(g, &cert, true, budget)?.passed
        }
        None => false,
    };
    let mut failing_vertex = None;
    if certified {
        for w in 0..g.n() {
            let h = g.delete_vertex(w)?;
            if !is_tu_graph(&h, budget)?.is_tu && !is_esp(&h, EspMode::Direct, budget)?.esp {
                failing_vertex = Some(w);
                break;
            }
        }
    }
    Ok(MinimalityReport {
        minimal: certified && failing_vertex.is_none(),
        certified,
        failing_vertex,
    })
}

/// Every split graph on `n` vertices up to isomorphism: a clique of size
/// `k` plus `n - k` stable vertices, each choosing a neighbourhood inside
/// the clique.
pub fn split_graphs(n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for k in 0..=n {
        let s = n - k;
        let mut choice = vec![0u32; s];
        multisets(1 << k, s, 0, 0, &mut choice, &mut |nbhd| {
            let mut g = Graph::empty(n);
            for a in 0..k {
                for b in a + 1..k {
                    g.add_edge(a, b);
                }
            }
            for (i, &mask) in nbhd.iter().enumerate() {
                for a in 0..k {
                    if mask >> a & 1 == 1 {
                        g.add_edge(a, k + i);
                    }
                }
            }
            if seen.insert(canonical_code(&g).0) {
                out.push(g);
            }
        });
    }
    out
}

fn multisets(range: u32, len: usize, i: usize, from: u32, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if i == len {
        f(buf);
        return;
    }
    for x in from..range {
        buf[i] = x;
        multisets(range, len, i + 1, x, buf, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named;
    use crate::tu::class_q_membership;

    #[test]
    fn small_q_catalogs() {
        let b = Budget::default();
        assert!(enumerate_q(2, QOptions::default(), &b).unwrap().is_empty());
        let q3 = enumerate_q(3, QOptions::default(), &b).unwrap();
        assert_eq!(q3.len(), 1);
        let c6 = build_named("Cn", &[6]).unwrap();
        assert_eq!(canonical_code(&q3.members[0].graph).0, canonical_code(&c6).0);
        assert_eq!(q3.members[0].tags, vec![QTag::Q2]);
    }

    #[test]
    fn q4_members_pass_membership() {
        let b = Budget::default();
        let q4 = enumerate_q(4, QOptions::default(), &b).unwrap();
        assert!(q4.len() > 1);
        for m in &q4.members {
            let u: VertexSet = m.u_side.as_ref().unwrap().iter().collect();
            let rep = class_q_membership(&m.graph, u, &b).unwrap();
            assert!(rep.member && rep.eulerian && rep.equal_sides && rep.edges_two_mod_four);
        }
        assert!(q4.members.iter().any(|m| m.tags == vec![QTag::Q1]));
    }

    #[test]
    fn s_catalog_contains_named_members() {
        let b = Budget::default();
        let s7 = enumerate_s(7, QOptions::default(), &b).unwrap();
        for name in ["S_n", "barS3plus"] {
            let params: &[i64] = if name == "S_n" { &[3] } else { &[] };
            let code = canonical_code(&build_named(name, params).unwrap()).0.to_hex();
            assert!(s7.members.iter().any(|m| m.code == code), "{name}");
        }
        for m in &s7.members {
            let rec = m.record.as_ref().unwrap();
            let cert = make_r_certificate::<Rational>(&m.graph, rec, None, &b).unwrap();
            assert!(verify_certificate(&m.graph, &cert, true, &b).unwrap().passed);
            for w in 0..m.graph.n() {
                assert!(is_tu_graph(&m.graph.delete_vertex(w).unwrap(), &b).unwrap().is_tu);
            }
        }
    }

    #[test]
    fn catalog_json_lines() {
        let b = Budget::default();
        let s = enumerate_s(6, QOptions::default(), &b).unwrap();
        let text = s.to_json_lines();
        assert_eq!(ClassCatalog::from_json_lines(&text).unwrap(), s);
        assert_eq!(enumerate_s(6, QOptions::default(), &b).unwrap().to_json_lines(), text);
        assert!(matches!(ClassCatalog::from_json_lines("{}\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn split_tests() {
        let b = Budget::default();
        let s3 = build_named("S_n", &[3]).unwrap();
        let r = split_box_perfect_test(&s3, true, &b).unwrap();
        assert!(!r.tu && !r.s_free && !r.divergent);
        assert_eq!(r.esp, Some(false));
        let r = split_box_perfect_test(&Graph::complete(4), false, &b).unwrap();
        assert!(r.tu && r.s_free && r.esp.is_none());
        assert!(split_box_perfect_test(&build_named("Cn", &[4]).unwrap(), false, &b).is_err());
    }

    #[test]
    fn split_graph_counts() {
        // 1, 2, 4, 9, 21, 56 split graphs on 1..6 vertices
        let counts: Vec<usize> = (1..=6).map(|n| split_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 9, 21, 56]);
    }

    #[test]
    fn minimality() {
        let b = Budget::default();
        for (name, p) in [("S_n", vec![3]), ("barS3plus", vec![])] {
            let r = minimality_check(&build_named(name, &p).unwrap(), &b).unwrap();
            assert!(r.minimal, "{name}: {r:?}");
        }
        let r = minimality_check(&build_named("fig4", &[]).unwrap(), &b).unwrap();
        assert!(!r.minimal);
    }
}

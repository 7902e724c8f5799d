//! Acceptance criteria as runnable checks over seeded random corpora.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::boxtdi::{
    box_tdi_falsify_search, build_r_graph, figure_four_certificate, make_r_certificate, verify_certificate, Check,
};
use crate::budget::Budget;
use crate::classes::{enumerate_q, enumerate_s, split_box_perfect_test_with, split_graphs, QOptions};
use crate::error::{Error, Result};
use crate::esp::{circulation_split, is_circulation, is_esp, is_strong_esp, matching_degree_split, EspMode, EspWitness};
use crate::graph::{build_named, canonical_code, simplicial_sum, Digraph, Graph, Multigraph};
use crate::invariants::{is_comparability, is_incomparability, is_perfect, q_perfect_report};
use crate::tu::{class_q_membership, is_tu_graph};
use crate::Rational;

pub const CRITERIA: [&str; 11] = [
    "figure-four certificate",
    "R-construction certificates",
    "S_3 is not 2-perfect",
    "split graphs: TU iff S-free",
    "class Q parity conditions",
    "direct and replication ESP agree",
    "ESP on TU, incomparability and comparability graphs",
    "circulation and matching splits",
    "ESP closed under duplication and simplicial sums",
    "apex-bipartite graphs are TU",
    "negative controls",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Runs criterion `id` (1-based). Errors count as failures.
pub fn run_criterion(id: usize, seed: u64, budget: &Budget) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let res = match id {
        1 => figure_four(budget),
        2 => r_pipeline(budget),
        3 => two_perfect(budget),
        4 => split_equivalence(budget),
        5 => class_q(budget),
        6 => esp_modes(budget),
        7 => esp_classes(&mut rng, budget),
        8 => splits(&mut rng),
        9 => closure(&mut rng, budget),
        10 => apex_bipartite(&mut rng, budget),
        11 => negative_controls(budget),
        _ => Err(Error::InvalidParameter(format!("no criterion {id}"))),
    };
    let (passed, detail) = match res {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome {
        id,
        title: CRITERIA.get(id.wrapping_sub(1)).unwrap_or(&"unknown").to_string(),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(seed: u64, budget: &Budget) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, seed, budget)).collect()
}

type Verdict = Result<(bool, String)>;

fn figure_four(budget: &Budget) -> Verdict {
    let (h, cert) = figure_four_certificate();
    let rep = verify_certificate(&h, &cert, true, budget)?;
    let opt = rep.integral_dual_optimum.clone().unwrap_or_default();
    let ok = rep.passed && rep.value == "7/4" && opt.parse::<Rational>().is_ok_and(|o| o >= Rational::from(2));
    Ok((ok, format!("value {}, integral dual optimum {opt}", rep.value)))
}

/// `barS3plus` as assembled from a 4 x 4 bipartite graph with a full row.
pub fn bar_s3_plus_source() -> (Graph, VertexSet) {
    let g = Graph::from_edges(
        8,
        &[(0, 4), (0, 5), (0, 6), (0, 7), (1, 4), (1, 5), (2, 4), (2, 6), (3, 4), (3, 7)],
    )
    .expect("fixed edge list");
    (g, (0..4).collect())
}

fn r_pipeline(budget: &Budget) -> Verdict {
    let (bs, bu) = bar_s3_plus_source();
    let cases = [
        ("S_3", build_named("Cn", &[6])?, (0..6).step_by(2).collect(), 3),
        ("S_5", build_named("Cn", &[10])?, (0..10).step_by(2).collect(), 5),
        ("barS3plus", bs, bu, 4),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, gp, u, k) in cases {
        let (g, rec) = build_r_graph(&gp, u, &Graph::complete(k), budget)?;
        let p = (name == "S_3").then_some(5);
        let cert = make_r_certificate::<Rational>(&g, &rec, p, budget)?;
        let rep = verify_certificate(&g, &cert, true, budget)?;
        ok &= rep.passed;
        if name == "S_3" {
            ok &= rep.value == "3/10";
        }
        notes.push(format!("{name} {}", rep.value));
    }
    Ok((ok, notes.join(", ")))
}

fn two_perfect(budget: &Budget) -> Verdict {
    let r = q_perfect_report(&build_named("S_n", &[3])?, 2, budget)?;
    Ok((
        r.alpha_q == 4 && r.chibar_q == 5,
        format!("alpha_2 = {}, chibar_2 = {}", r.alpha_q, r.chibar_q),
    ))
}

fn split_equivalence(budget: &Budget) -> Verdict {
    let s = enumerate_s(7, QOptions::default(), budget)?;
    let mut total = 0;
    let mut diverged = Vec::new();
    for n in 1..=7 {
        for g in split_graphs(n) {
            total += 1;
            if split_box_perfect_test_with(&g, &s, false, budget)?.divergent {
                diverged.push(canonical_code(&g).0.to_hex());
            }
        }
    }
    Ok((
        diverged.is_empty(),
        format!("{total} split graphs, {} S members, {} divergences", s.len(), diverged.len()),
    ))
}

fn class_q(budget: &Budget) -> Verdict {
    let q5 = enumerate_q(5, QOptions::default(), budget)?;
    let mut bad = 0;
    for m in &q5.members {
        let u: VertexSet = m.u_side.as_deref().unwrap_or_default().iter().collect();
        let r = class_q_membership(&m.graph, u, budget)?;
        if !(r.member && r.eulerian && r.equal_sides && r.edges_two_mod_four) {
            bad += 1;
        }
    }
    let q3 = enumerate_q(3, QOptions::default(), budget)?;
    let c6 = canonical_code(&build_named("Cn", &[6])?).0;
    let q3_ok = q3.len() == 1 && canonical_code(&q3.members[0].graph).0 == c6;
    Ok((
        bad == 0 && q3_ok,
        format!("{} members up to side 5, {bad} failing; side 3 is C_6: {q3_ok}", q5.len()),
    ))
}

/// Every graph on `n` vertices up to isomorphism, in first-seen edge-mask order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, &edges).expect("valid pairs");
        if seen.insert(canonical_code(&g).0) {
            out.push(g);
        }
    }
    out
}

fn esp_modes(budget: &Budget) -> Verdict {
    let mut checked = 0;
    let mut disagree = 0;
    for n in 1..=6 {
        for g in all_graphs(n) {
            if !is_perfect(&g, budget)?.perfect {
                continue;
            }
            checked += 1;
            if is_esp(&g, EspMode::Direct, budget)?.esp != is_esp(&g, EspMode::PerfectReform, budget)?.esp {
                disagree += 1;
            }
        }
    }
    let s3 = is_esp(&build_named("S_n", &[3])?, EspMode::PerfectReform, budget)?;
    let witness_ok = s3.witness == Some(EspWitness::Replication(vec![1, 2, 1, 2, 1, 2]));
    Ok((
        disagree == 0 && witness_ok && !s3.esp,
        format!("{checked} perfect graphs, {disagree} disagreements; S_3 witness {:?}", s3.witness),
    ))
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Comparability graph of a random order on `0..n` (transitive closure of
/// random forward arcs).
pub fn random_comparability(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut below = vec![VertexSet::EMPTY; n];
    for b in 0..n {
        for a in 0..b {
            if rng.gen_bool(p) {
                below[b] = below[b].union(below[a]).with(a);
            }
        }
    }
    let mut g = Graph::empty(n);
    for (b, set) in below.iter().enumerate() {
        for a in set.iter() {
            g.add_edge(a, b);
        }
    }
    g
}

fn esp_classes(rng: &mut ChaCha8Rng, budget: &Budget) -> Verdict {
    let samples = 100;
    let mut fails = [0usize; 3];
    let mut tu_seen = 0;
    let mut tries = 0;
    while tu_seen < samples {
        tries += 1;
        if tries > 100 * samples {
            return Ok((false, "could not sample enough TU graphs".into()));
        }
        let (n, p) = (rng.gen_range(1..=7), rng.gen_range(0.2..0.8));
        let g = random_graph(rng, n, p);
        if is_tu_graph(&g, budget)?.is_tu {
            tu_seen += 1;
            fails[0] += usize::from(!is_esp(&g, EspMode::Direct, budget)?.esp);
        }
    }
    for _ in 0..samples {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.8);
        let inc = random_comparability(rng, n, p).complement();
        if !is_incomparability(&inc, budget)? {
            return Err(Error::Internal("sampled incomparability graph rejected".into()));
        }
        fails[1] += usize::from(!is_esp(&inc, EspMode::Direct, budget)?.esp);
        let m = rng.gen_range(1..=7);
        let comp = random_comparability(rng, m, p);
        if !is_comparability(&comp, budget)? {
            return Err(Error::Internal("sampled comparability graph rejected".into()));
        }
        fails[2] += usize::from(!is_strong_esp(&comp, budget)?.esp);
    }
    Ok((
        fails == [0; 3],
        format!(
            "failures: TU {}, incomparability {}, comparability (strong) {} of {samples} each",
            fails[0], fails[1], fails[2]
        ),
    ))
}

fn random_circulation(rng: &mut impl Rng) -> (Digraph, Vec<i64>) {
    let n = rng.gen_range(2..=8);
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut flow: Vec<i64> = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let len = rng.gen_range(2..=n);
        let mut verts: Vec<usize> = (0..n).collect();
        for i in 0..len {
            let j = rng.gen_range(i..n);
            verts.swap(i, j);
        }
        let cyc: Vec<(usize, usize)> = (0..len).map(|i| (verts[i], verts[(i + 1) % len])).collect();
        let idx: Vec<usize> = cyc
            .iter()
            .map(|&a| {
                arcs.iter().position(|&b| b == a).unwrap_or_else(|| {
                    arcs.push(a);
                    flow.push(0);
                    arcs.len() - 1
                })
            })
            .collect();
        let room = idx.iter().map(|&i| 5 - flow[i]).min().unwrap_or(0);
        if room > 0 {
            let add = rng.gen_range(1..=room);
            for &i in &idx {
                flow[i] += add;
            }
        }
    }
    (Digraph::from_arcs(n, &arcs).expect("arcs in range"), flow)
}

/// A random member of the even-cycle class with pendants and false twins.
pub fn random_class_c(rng: &mut impl Rng) -> Result<Graph> {
    let len = 2 * rng.gen_range(2..=4);
    let mut x: Vec<usize> = Vec::new();
    for v in 0..len {
        let adjacent = |a: usize, b: usize| (a + 1) % len == b || (b + 1) % len == a;
        if rng.gen_bool(0.4) && x.iter().all(|&u| !adjacent(u, v)) {
            x.push(v);
        }
    }
    let mut params = vec![len as i64, x.len() as i64];
    params.extend(x.iter().map(|&v| v as i64));
    params.extend(x.iter().map(|_| rng.gen_range(0..=2)));
    build_named("classC", &params)
}

fn splits(rng: &mut ChaCha8Rng) -> Verdict {
    let mut bad_circ = 0;
    for _ in 0..500 {
        let (d, f) = random_circulation(rng);
        let (f1, f2) = circulation_split(&d, &f)?;
        let within = f.iter().zip(f1.iter().zip(&f2)).all(|(&x, (&a, &b))| {
            a + b == x && a.min(b) >= x / 2 && a.max(b) <= (x + 1) / 2
        });
        if !(within && is_circulation(&d, &f1) && is_circulation(&d, &f2)) {
            bad_circ += 1;
        }
    }
    let k33 = build_named("Kmn", &[3, 3])?;
    let mut bad_match = 0;
    for i in 0..200 {
        let h = if i % 5 == 0 { k33.clone() } else { random_class_c(rng)? };
        let mut mu = Multigraph::new(h.n());
        for (a, b) in h.edges() {
            mu.add_edges(a, b, rng.gen_range(1..=3))?;
        }
        let delta = mu.max_degree();
        match matching_degree_split(&mu)? {
            Some((m1, m2)) => {
                let edges_ok = mu.pairs().all(|((a, b), m)| {
                    let (x, y) = (m1.multiplicity(a, b), m2.multiplicity(a, b));
                    x + y == m && x.min(y) >= m / 2
                });
                if !(edges_ok && m1.max_degree() <= delta.div_ceil(2) && m2.max_degree() <= delta / 2) {
                    bad_match += 1;
                }
            }
            None => bad_match += 1,
        }
    }
    Ok((
        bad_circ == 0 && bad_match == 0,
        format!("circulations: {bad_circ} of 500 bad; matching splits: {bad_match} of 200 bad"),
    ))
}

fn random_esp_graph(rng: &mut impl Rng, lo: usize, budget: &Budget, accept: impl Fn(&Graph) -> bool) -> Result<Graph> {
    loop {
        let (n, p) = (rng.gen_range(lo..=6), rng.gen_range(0.2..0.8));
        let g = random_graph(rng, n, p);
        if accept(&g) && is_esp(&g, EspMode::Direct, budget)?.esp {
            return Ok(g);
        }
    }
}

fn simplicial_vertices(g: &Graph) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| !g.neighbors(v).is_empty() && g.is_clique(g.closed_neighbors(v)))
        .collect()
}

fn closure(rng: &mut ChaCha8Rng, budget: &Budget) -> Verdict {
    let mut bad = [0usize; 2];
    for _ in 0..100 {
        let g = random_esp_graph(rng, 1, budget, |_| true)?;
        let h = g.duplicate_vertex(rng.gen_range(0..g.n()), rng.gen_bool(0.5))?;
        bad[0] += usize::from(!is_esp(&h, EspMode::Direct, budget)?.esp);
    }
    for _ in 0..100 {
        let has_simplicial = |g: &Graph| !simplicial_vertices(g).is_empty();
        let g1 = random_esp_graph(rng, 3, budget, has_simplicial)?;
        let g2 = random_esp_graph(rng, 3, budget, has_simplicial)?;
        let (s1, s2) = (simplicial_vertices(&g1), simplicial_vertices(&g2));
        let x1 = s1[rng.gen_range(0..s1.len())];
        let x2 = s2[rng.gen_range(0..s2.len())];
        let h = simplicial_sum(&g1, x1, &g2, x2)?;
        bad[1] += usize::from(!is_esp(&h, EspMode::Direct, budget)?.esp);
    }
    Ok((
        bad == [0; 2],
        format!("non-ESP results: duplication {}, simplicial sum {} of 100 each", bad[0], bad[1]),
    ))
}

/// Vertex 0 is joined to `A`; the rest `B` is stable and `G - 0` is
/// bipartite.
pub fn random_apex_bipartite(rng: &mut impl Rng, n: usize) -> Graph {
    let color: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let in_b: Vec<bool> = (0..n).map(|v| v > 0 && rng.gen_bool(0.4)).collect();
    let mut g = Graph::empty(n);
    for a in 1..n {
        if !in_b[a] {
            g.add_edge(0, a);
        }
        for b in a + 1..n {
            if color[a] != color[b] && !(in_b[a] && in_b[b]) && rng.gen_bool(0.5) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

fn apex_bipartite(rng: &mut ChaCha8Rng, budget: &Budget) -> Verdict {
    let mut bad = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=9);
        let g = random_apex_bipartite(rng, n);
        let rest = g.delete_vertex(0)?;
        let outside = g.vertices().difference(g.neighbors(0));
        if rest.two_coloring().is_none() || !g.is_stable(outside) {
            return Err(Error::Internal("generator broke the structure".into()));
        }
        bad += usize::from(!is_tu_graph(&g, budget)?.is_tu);
    }
    Ok((bad == 0, format!("{bad} of 100 not TU")))
}

fn negative_controls(budget: &Budget) -> Verdict {
    let (h, cert) = figure_four_certificate();
    let mut corruptions: Vec<(&str, Check, _)> = Vec::new();
    let mut c = cert.clone();
    c.x[4] += Rational::new(1, 4);
    corruptions.push(("x raised", Check::PrimalCliques, c));
    let mut c = cert.clone();
    c.x[5] = Rational::new(1, 4);
    corruptions.push(("x below l", Check::PrimalLowerBounds, c));
    let mut c = cert.clone();
    c.y[0] = Rational::new(-1, 2);
    corruptions.push(("y negative", Check::DualNonnegative, c));
    let mut c = cert.clone();
    c.z[6] = Rational::from(0);
    corruptions.push(("z dropped", Check::DualEquations, c));
    let mut c = cert.clone();
    c.value = Rational::new(3, 2);
    corruptions.push(("value changed", Check::PrimalObjective, c));
    let mut c = cert;
    c.w[0] = Rational::new(1, 2);
    corruptions.push(("fractional w", Check::IntegralWeights, c));
    let mut missed = Vec::new();
    for (name, check, c) in &corruptions {
        if !verify_certificate(&h, c, false, budget)?.failed().contains(check) {
            missed.push(*name);
        }
    }
    let mut falsifier = Vec::new();
    for (name, p) in [("Cn", vec![4]), ("Cn", vec![6]), ("K4", vec![])] {
        let g = if name == "K4" { Graph::complete(4) } else { build_named(name, &p)? };
        if box_tdi_falsify_search(&g, budget)?.counterexample.is_some() {
            falsifier.push(format!("false alarm on {name}{p:?}"));
        }
    }
    if box_tdi_falsify_search(&build_named("barS3plus", &[])?, budget)?.counterexample.is_none() {
        falsifier.push("missed barS3plus".into());
    }
    Ok((
        missed.is_empty() && falsifier.is_empty(),
        format!(
            "{} corruptions, missed {missed:?}; falsifier issues {falsifier:?}",
            corruptions.len()
        ),
    ))
}

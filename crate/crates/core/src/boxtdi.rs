//! Exact certificates that a graph is not box-perfect, and a bounded search
//! for integral clique-cover duals that fail to halve.
//!
//! A certificate is a primal-dual pair for
//! `max { w.x : B x <= 1, x >= l }` and its dual
//! `min { y.1 - z.l : y B - z = w, y, z >= 0 }` over the maximal-clique
//! matrix `B`, together with an integrality obstruction: `l` lies on the
//! grid `Z / L` but the common optimum does not, so no integral dual is
//! optimal.

use std::collections::HashMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::cliques::maximal_cliques;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::IntMatrix;
use crate::scalar::{denominator_lcm, dot, sum, ExactRational};
use crate::tu::{biadjacency, class_q_membership};
use crate::Rational;

/// How a member of the class was assembled from a bipartite `G'` and a
/// graph `G''` on its `V` side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RRecord {
    /// Biadjacency matrix of `G'`, rows `U`, columns `V`.
    pub biadjacency: IntMatrix,
    /// Output vertex of each row; `None` for the deleted row.
    pub u_vertices: Vec<Option<usize>>,
    /// Output vertex of each column.
    pub v_vertices: Vec<usize>,
    pub deleted_row: Option<usize>,
    /// `1^T M 1 = 4m + 2`.
    pub m: i64,
}

/// Joins `gprime` (bipartite, `u_side` one colour class, minimally non-TU
/// biadjacency) with `gsecond`, whose vertex `i` is the `i`-th vertex of the
/// other side. Every `N(u)` must be a clique of `gsecond`. A `u` adjacent to
/// the whole other side is deleted; the remaining vertices keep their order.
pub fn build_r_graph(gprime: &Graph, u_side: VertexSet, gsecond: &Graph, budget: &Budget) -> Result<(Graph, RRecord)> {
    if !class_q_membership(gprime, u_side, budget)?.member {
        return Err(Error::Precondition("G' is not minimally non-TU".into()));
    }
    let us = u_side.to_vec();
    let vset = gprime.vertices().difference(u_side);
    let vs = vset.to_vec();
    if gsecond.n() != vs.len() {
        return Err(Error::DimensionMismatch(format!(
            "G'' has {} vertices, the V side has {}",
            gsecond.n(),
            vs.len()
        )));
    }
    let pos = |v: usize| vs.iter().position(|&x| x == v).expect("v on the V side");
    for &u in &us {
        let nb: VertexSet = gprime.neighbors(u).iter().map(pos).collect();
        if !gsecond.is_clique(nb) {
            return Err(Error::Precondition(format!("N(u) of vertex {u} is not a clique of G''")));
        }
    }
    let mut g = gprime.clone();
    for (a, b) in gsecond.edges() {
        g.add_edge(vs[a], vs[b]);
    }
    let m_mat = biadjacency(gprime, u_side)?;
    let total: i64 = m_mat.row_sums().iter().sum();
    let deleted_row = us.iter().position(|&u| gprime.neighbors(u) == vset);
    let shift = |v: usize| match deleted_row {
        Some(r) if v > us[r] => v - 1,
        _ => v,
    };
    if let Some(r) = deleted_row {
        g = g.delete_vertex(us[r])?;
    }
    let record = RRecord {
        biadjacency: m_mat,
        u_vertices: us
            .iter()
            .enumerate()
            .map(|(i, &u)| (Some(i) != deleted_row).then(|| shift(u)))
            .collect(),
        v_vertices: vs.iter().map(|&v| shift(v)).collect(),
        deleted_row,
        m: (total - 2) / 4,
    };
    Ok((g, record))
}

/// Primal and dual vectors with the claimed common value, over the rows
/// listed in `rows` (each a maximal clique).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxCertificate<T> {
    pub rows: Vec<VertexSet>,
    pub w: Vec<T>,
    pub l: Vec<T>,
    pub x: Vec<T>,
    pub y: Vec<T>,
    pub z: Vec<T>,
    pub value: T,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    rows: Vec<VertexSet>,
    w: Vec<String>,
    l: Vec<String>,
    x: Vec<String>,
    y: Vec<String>,
    z: Vec<String>,
    value: String,
}

fn pq_all<T: ExactRational>(v: &[T]) -> Vec<String> {
    v.iter().map(|t| t.to_pq()).collect()
}

fn parse_all<T: ExactRational, E: serde::de::Error>(name: &str, v: &[String]) -> std::result::Result<Vec<T>, E> {
    v.iter()
        .map(|s| T::parse_pq(s).ok_or_else(|| E::custom(format!("bad rational `{s}` in {name}"))))
        .collect()
}

impl<T: ExactRational> Serialize for BoxCertificate<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            rows: self.rows.clone(),
            w: pq_all(&self.w),
            l: pq_all(&self.l),
            x: pq_all(&self.x),
            y: pq_all(&self.y),
            z: pq_all(&self.z),
            value: self.value.to_pq(),
        }
        .serialize(s)
    }
}

impl<'de, T: ExactRational> Deserialize<'de> for BoxCertificate<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CertificateJson::deserialize(d)?;
        Ok(BoxCertificate {
            rows: j.rows,
            w: parse_all("w", &j.w)?,
            l: parse_all("l", &j.l)?,
            x: parse_all("x", &j.x)?,
            y: parse_all("y", &j.y)?,
            z: parse_all("z", &j.z)?,
            value: T::parse_pq(&j.value).ok_or_else(|| D::Error::custom("bad rational in value"))?,
        })
    }
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_record(g: &Graph, rec: &RRecord) -> Result<()> {
    let m = &rec.biadjacency;
    let bad = |msg: String| Err(Error::Precondition(format!("record does not match the graph: {msg}")));
    if rec.u_vertices.len() != m.rows() || rec.v_vertices.len() != m.cols() || m.rows() != m.cols() {
        return bad("dimensions".into());
    }
    let present: Vec<usize> = rec.u_vertices.iter().flatten().copied().collect();
    let mut all: Vec<usize> = present.iter().chain(&rec.v_vertices).copied().collect();
    all.sort_unstable();
    if all != (0..g.n()).collect::<Vec<_>>() {
        return bad("vertices do not partition the graph".into());
    }
    let missing: Vec<usize> = (0..m.rows()).filter(|&i| rec.u_vertices[i].is_none()).collect();
    if missing.as_slice() != rec.deleted_row.as_slice() {
        return bad("deleted row".into());
    }
    for (i, u) in rec.u_vertices.iter().enumerate() {
        let expect: VertexSet = (0..m.cols()).filter(|&j| m.get(i, j) == 1).map(|j| rec.v_vertices[j]).collect();
        match u {
            Some(u) if g.neighbors(*u) != expect => return bad(format!("neighbourhood of vertex {u}")),
            None if m.row_sums()[i] as usize != m.cols() => return bad("deleted row is not all ones".into()),
            _ => {}
        }
    }
    if m.row_sums().iter().sum::<i64>() != 4 * rec.m + 2 {
        return bad("edge count is not 4m + 2".into());
    }
    Ok(())
}

/// Instantiates the primal-dual pair for a member of the class.
///
/// Without a deleted vertex the denominator is `2p` for a prime
/// `p > 2m + 1` (the least one by default); with a deleted vertex it is
/// `n = |V|` and `p` is ignored. On the `V` side `w = deg / 2` and
/// `x = 1 / D`; on the `U` side `l = x = 1 - deg / D` and `z = 1/2`;
/// `y = 1/2` on each clique `N[u]` and, with a deleted vertex, on `V`.
pub fn make_r_certificate<T: ExactRational>(
    g: &Graph,
    rec: &RRecord,
    p: Option<i64>,
    budget: &Budget,
) -> Result<BoxCertificate<T>> {
    check_record(g, rec)?;
    let mm = &rec.biadjacency;
    let (rs, cs) = (mm.row_sums(), mm.column_sums());
    let denom = match rec.deleted_row {
        Some(_) => mm.cols() as i64,
        None => {
            let p = match p {
                Some(p) => p,
                None => (2 * rec.m + 2..).find(|&q| is_prime(q)).expect("primes are unbounded"),
            };
            if !is_prime(p) || p <= 2 * rec.m + 1 {
                return Err(Error::InvalidParameter(format!("p = {p} must be a prime above {}", 2 * rec.m + 1)));
            }
            2 * p
        }
    };
    let n = g.n();
    let rows = maximal_cliques(g, budget)?.cliques;
    let half = T::half();
    let (mut w, mut l, mut x, mut z) = (vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n], vec![T::zero(); n]);
    for (j, &v) in rec.v_vertices.iter().enumerate() {
        if cs[j] % 2 != 0 {
            return Err(Error::Precondition(format!("column {j} has odd degree")));
        }
        w[v] = T::from_int(cs[j] / 2);
        x[v] = T::from_frac(1, denom);
    }
    let mut y = vec![T::zero(); rows.len()];
    let mut mark = |clique: VertexSet| -> Result<()> {
        let r = rows
            .iter()
            .position(|&c| c == clique)
            .ok_or_else(|| Error::Internal(format!("{clique:?} is not a maximal clique")))?;
        y[r] = T::half();
        Ok(())
    };
    for (i, u) in rec.u_vertices.iter().enumerate() {
        match u {
            Some(u) => {
                let b = T::one() - T::from_frac(rs[i], denom);
                l[*u] = b.clone();
                x[*u] = b;
                z[*u] = half.clone();
                mark(g.closed_neighbors(*u))?;
            }
            None => mark(rec.v_vertices.iter().collect())?,
        }
    }
    Ok(BoxCertificate {
        rows,
        w,
        l,
        x,
        y,
        z,
        value: T::from_frac(2 * rec.m + 1, denom),
    })
}

/// The certificate for the 8-vertex graph `fig4H` (labels `"1".."8"` are
/// vertices `0..7`), with the triangle `123` as first row.
pub fn figure_four_certificate() -> (Graph, BoxCertificate<Rational>) {
    let h = crate::graph::build_named("fig4H", &[]).expect("named family");
    let set = |labels: &[usize]| -> VertexSet { labels.iter().map(|&k| k - 1).collect() };
    let r = |a: i64, b: i64| Rational::new(a, b);
    let v = |xs: &[(i64, i64)]| xs.iter().map(|&(a, b)| r(a, b)).collect::<Vec<_>>();
    let cert = BoxCertificate {
        rows: vec![set(&[1, 2, 3]), set(&[1, 2, 6]), set(&[2, 3, 7]), set(&[3, 4, 8]), set(&[4, 5]), set(&[1, 5])],
        w: v(&[(1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (0, 1), (0, 1), (0, 1)]),
        l: v(&[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (1, 2)]),
        x: v(&[(1, 4), (1, 4), (1, 4), (1, 4), (3, 4), (1, 2), (1, 2), (1, 2)]),
        y: v(&[(0, 1), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2)]),
        z: v(&[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (1, 2)]),
        value: r(7, 4),
    };
    (h, cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Rows are exactly the maximal cliques, each once.
    RowOrder,
    IntegralWeights,
    NonnegativeLowerBounds,
    /// `B x <= 1`.
    PrimalCliques,
    /// `x >= l`.
    PrimalLowerBounds,
    DualNonnegative,
    /// `y B - z = w`.
    DualEquations,
    PrimalObjective,
    DualObjective,
    /// The value is off the grid of `l`.
    Obstruction,
    /// Every integral dual solution is strictly worse than the value.
    IntegralDual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub value: String,
    pub checks: Vec<CheckResult>,
    pub integral_dual_optimum: Option<String>,
}

impl VerifyReport {
    pub fn failed(&self) -> Vec<Check> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.check).collect()
    }
}

fn first_bad<T>(items: impl Iterator<Item = T>, bad: impl Fn(&T) -> Option<String>) -> (bool, String) {
    for it in items {
        if let Some(msg) = bad(&it) {
            return (false, msg);
        }
    }
    (true, String::new())
}

/// Checks every claim of `cert` with exact arithmetic. With
/// `exhaustive_dual`, also minimises the dual over integral `(y, z)` and
/// requires the minimum to exceed the value.
pub fn verify_certificate<T: ExactRational>(
    g: &Graph,
    cert: &BoxCertificate<T>,
    exhaustive_dual: bool,
    budget: &Budget,
) -> Result<VerifyReport> {
    let n = g.n();
    for (name, len) in [("w", cert.w.len()), ("l", cert.l.len()), ("x", cert.x.len()), ("z", cert.z.len())] {
        if len != n {
            return Err(Error::DimensionMismatch(format!("{name} has {len} entries, graph has {n} vertices")));
        }
    }
    if cert.y.len() != cert.rows.len() {
        return Err(Error::DimensionMismatch(format!(
            "y has {} entries for {} rows",
            cert.y.len(),
            cert.rows.len()
        )));
    }
    for &r in &cert.rows {
        g.check_set(r)?;
    }
    let mut checks = Vec::new();
    let mut push = |check: Check, (passed, detail): (bool, String)| checks.push(CheckResult { check, passed, detail });

    let mut mine = maximal_cliques(g, budget)?.cliques;
    let mut theirs = cert.rows.clone();
    mine.sort();
    theirs.sort();
    push(
        Check::RowOrder,
        if mine == theirs {
            (true, String::new())
        } else {
            (false, "rows are not the maximal cliques of the graph".into())
        },
    );
    push(
        Check::IntegralWeights,
        first_bad(cert.w.iter().enumerate(), |(v, w)| (!w.is_integral()).then(|| format!("w[{v}] = {}", w.to_pq()))),
    );
    push(
        Check::NonnegativeLowerBounds,
        first_bad(cert.l.iter().enumerate(), |(v, l)| l.is_negative().then(|| format!("l[{v}] = {}", l.to_pq()))),
    );
    let row_sum = |c: VertexSet, v: &[T]| c.iter().fold(T::zero(), |acc, i| acc + v[i].clone());
    let primal_rows = first_bad(cert.rows.iter().enumerate(), |(i, &c)| {
        let s = row_sum(c, &cert.x);
        (s > T::one()).then(|| format!("row {i} {c:?}: x sums to {}", s.to_pq()))
    });
    let primal_lower = first_bad(0..n, |&v| {
        (cert.x[v] < cert.l[v]).then(|| format!("x[{v}] = {} < l[{v}] = {}", cert.x[v].to_pq(), cert.l[v].to_pq()))
    });
    let primal_ok = primal_rows.0 && primal_lower.0;
    push(Check::PrimalCliques, primal_rows);
    push(Check::PrimalLowerBounds, primal_lower);
    let neg_y = cert.y.iter().position(|t| t.is_negative()).map(|i| format!("y[{i}] < 0"));
    let neg_z = cert.z.iter().position(|t| t.is_negative()).map(|v| format!("z[{v}] < 0"));
    push(
        Check::DualNonnegative,
        match neg_y.or(neg_z) {
            Some(m) => (false, m),
            None => (true, String::new()),
        },
    );
    push(
        Check::DualEquations,
        first_bad(0..n, |&v| {
            let lhs = cert
                .rows
                .iter()
                .zip(&cert.y)
                .filter(|(c, _)| c.contains(v))
                .fold(T::zero(), |acc, (_, y)| acc + y.clone())
                - cert.z[v].clone();
            (lhs != cert.w[v]).then(|| format!("vertex {v}: yB - z = {} but w = {}", lhs.to_pq(), cert.w[v].to_pq()))
        }),
    );
    let primal_obj = dot(&cert.w, &cert.x);
    push(
        Check::PrimalObjective,
        if primal_obj == cert.value {
            (true, String::new())
        } else {
            (false, format!("w.x = {}", primal_obj.to_pq()))
        },
    );
    let dual_obj = sum(&cert.y) - dot(&cert.z, &cert.l);
    push(
        Check::DualObjective,
        if dual_obj == cert.value {
            (true, String::new())
        } else {
            (false, format!("y.1 - z.l = {}", dual_obj.to_pq()))
        },
    );
    let grid = denominator_lcm(&cert.l);
    let scaled = cert.value.clone() * grid.clone();
    let step = grid.to_pq().trim_end_matches("/1").to_string();
    push(
        Check::Obstruction,
        if scaled.is_integral() {
            (false, format!("value {} lies on the grid 1/{step} of l", cert.value.to_pq()))
        } else {
            (true, format!("value {} is off the grid 1/{step} of l", cert.value.to_pq()))
        },
    );
    let mut integral = None;
    if exhaustive_dual {
        if primal_ok {
            let opt = integral_dual_for_certificate(cert, budget)?;
            let ok = opt > cert.value;
            push(
                Check::IntegralDual,
                (ok, format!("integral optimum {} vs value {}", opt.to_pq(), cert.value.to_pq())),
            );
            integral = Some(opt.to_pq());
        } else {
            push(Check::IntegralDual, (false, "skipped: the primal is infeasible".into()));
        }
    }
    Ok(VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        value: cert.value.to_pq(),
        checks,
        integral_dual_optimum: integral,
    })
}

/// `min { y.1 - z.l : y B - z = w; y, z >= 0 integral }`.
///
/// Substituting `z = y B - w` gives `w.l + sum_C y_C (1 - l(C))` subject to
/// `y B >= w`. Every cost `1 - l(C)` is nonnegative because a feasible
/// primal has `l(C) <= x(C) <= 1`. Hence a clique used more than `max(w)`
/// times can lose one copy without uncovering anything or raising the
/// cost, so `y <= max(w)` loses nothing; the search below never exceeds it
/// because each copy must reduce a positive residual.
fn integral_dual_for_certificate<T: ExactRational>(cert: &BoxCertificate<T>, budget: &Budget) -> Result<T> {
    let n = cert.w.len();
    let mut residual = Vec::with_capacity(n);
    for (v, w) in cert.w.iter().enumerate() {
        let w = w.to_integer_i64().ok_or_else(|| Error::Precondition(format!("w[{v}] is not a machine integer")))?;
        residual.push(w.max(0));
    }
    let costs: Vec<T> = cert
        .rows
        .iter()
        .map(|c| T::one() - c.iter().fold(T::zero(), |acc, v| acc + cert.l[v].clone()))
        .collect();
    let mut search = CoverSearch {
        rows: &cert.rows,
        row_cost: costs,
        vertex_cost: None,
        memo: HashMap::new(),
        limit: budget.dual_max_states,
    };
    Ok(search.best(&residual)? + dot(&cert.w, &cert.l))
}

trait ToI64 {
    fn to_integer_i64(&self) -> Option<i64>;
}

impl<T: ExactRational> ToI64 for T {
    fn to_integer_i64(&self) -> Option<i64> {
        if !self.is_integral() {
            return None;
        }
        self.to_pq().split('/').next()?.parse().ok()
    }
}

/// Cheapest integral cover of a residual demand by rows (each at its own
/// cost) and, when `vertex_cost` is set, by single vertices.
struct CoverSearch<'a, T> {
    rows: &'a [VertexSet],
    row_cost: Vec<T>,
    vertex_cost: Option<Vec<T>>,
    memo: HashMap<Vec<i64>, T>,
    limit: u64,
}

#[derive(Clone, Copy)]
enum Step {
    Row(usize),
    Vertex(usize),
}

impl<T: ExactRational> CoverSearch<'_, T> {
    fn best(&mut self, r: &[i64]) -> Result<T> {
        self.solve(r)
    }

    fn options(&self, r: &[i64], v: usize) -> Vec<(Step, T, Vec<i64>)> {
        let mut out = Vec::new();
        for (i, &c) in self.rows.iter().enumerate() {
            if c.contains(v) {
                let mut next = r.to_vec();
                for u in c.iter() {
                    next[u] = (next[u] - 1).max(0);
                }
                out.push((Step::Row(i), self.row_cost[i].clone(), next));
            }
        }
        if let Some(vc) = &self.vertex_cost {
            let mut next = r.to_vec();
            next[v] = 0;
            out.push((Step::Vertex(v), vc[v].clone() * T::from_int(r[v]), next));
        }
        out
    }

    fn solve(&mut self, r: &[i64]) -> Result<T> {
        let Some(v) = r.iter().position(|&x| x > 0) else {
            return Ok(T::zero());
        };
        if let Some(t) = self.memo.get(r) {
            return Ok(t.clone());
        }
        if self.memo.len() as u64 >= self.limit {
            return Err(Error::budget("integral dual states", self.limit));
        }
        let mut best: Option<T> = None;
        for (_, cost, next) in self.options(r, v) {
            let total = cost + self.solve(&next)?;
            if best.as_ref().is_none_or(|b| total < *b) {
                best = Some(total);
            }
        }
        let val = best.ok_or_else(|| Error::Precondition(format!("vertex {v} lies in no row")))?;
        self.memo.insert(r.to_vec(), val.clone());
        Ok(val)
    }

    fn witness(&mut self, r: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
        let n = r.len();
        let mut y = vec![0i64; self.rows.len()];
        let mut z = vec![0i64; n];
        let mut r = r.to_vec();
        while let Some(v) = r.iter().position(|&x| x > 0) {
            let goal = self.solve(&r)?;
            let mut chosen = None;
            for (step, cost, next) in self.options(&r, v) {
                if cost + self.solve(&next)? == goal {
                    chosen = Some((step, next));
                    break;
                }
            }
            let (step, next) = chosen.ok_or_else(|| Error::Internal("dual reconstruction failed".into()))?;
            match step {
                Step::Row(i) => y[i] += 1,
                Step::Vertex(u) => z[u] += r[u],
            }
            r = next;
        }
        Ok((y, z))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualOptimum<T> {
    pub value: T,
    /// Multiplicity of each maximal clique, in [`maximal_cliques`] order.
    pub y: Vec<i64>,
    pub z: Vec<i64>,
}

/// `min { y.1 + z.u : y B + z >= w; y, z >= 0 integral }` by exhaustive
/// search: the least vertex still short is covered either by `z` alone or
/// by some maximal clique through it.
pub fn integral_dual_optimum<T: ExactRational>(g: &Graph, u: &[T], w: &[i64], budget: &Budget) -> Result<DualOptimum<T>> {
    let n = g.n();
    if u.len() != n || w.len() != n {
        return Err(Error::DimensionMismatch(format!("u and w need {n} entries")));
    }
    if let Some(v) = u.iter().position(|t| t.is_negative()) {
        return Err(Error::InvalidParameter(format!("u[{v}] is negative")));
    }
    if let Some(v) = w.iter().position(|&t| t < 0) {
        return Err(Error::InvalidParameter(format!("w[{v}] is negative")));
    }
    let rows = maximal_cliques(g, budget)?.cliques;
    let mut search = CoverSearch {
        rows: &rows,
        row_cost: vec![T::one(); rows.len()],
        vertex_cost: Some(u.to_vec()),
        memo: HashMap::new(),
        limit: budget.dual_max_states,
    };
    let value = search.best(w)?;
    let (y, z) = search.witness(w)?;
    Ok(DualOptimum { value, y, z })
}

/// A pair `(u, w)` whose integral dual for `2w` costs less than twice the
/// one for `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub u: Vec<String>,
    pub w: Vec<i64>,
    pub min_double: String,
    pub twice_min: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub counterexample: Option<Counterexample>,
    pub pairs_checked: u64,
    pub max_w: i64,
    pub denominators: Vec<i64>,
}

/// `(k, r)`: `k` cliques leave residual demand `r`; only residuals minimal
/// within their level are kept.
type Front = Vec<(i64, Vec<i64>)>;

fn pareto_front(rows: &[VertexSet], t: &[i64]) -> Front {
    let mut front = vec![(0, t.to_vec())];
    let mut level = vec![t.to_vec()];
    let mut k = 0;
    while !level.iter().any(|r| r.iter().all(|&x| x == 0)) {
        k += 1;
        let mut next: Vec<Vec<i64>> = Vec::new();
        for r in &level {
            for c in rows {
                if c.iter().all(|v| r[v] == 0) {
                    continue;
                }
                let mut s = r.clone();
                for v in c.iter() {
                    s[v] = (s[v] - 1).max(0);
                }
                next.push(s);
            }
        }
        next.sort();
        next.dedup();
        let minimal: Vec<Vec<i64>> = next
            .iter()
            .filter(|a| !next.iter().any(|b| b != *a && b.iter().zip(a.iter()).all(|(x, y)| x <= y)))
            .cloned()
            .collect();
        front.extend(minimal.iter().map(|r| (k, r.clone())));
        level = minimal;
    }
    front
}

fn front_min(front: &Front, scale: i64, u: &[i64]) -> i64 {
    front
        .iter()
        .map(|(k, r)| k * scale + r.iter().zip(u).map(|(a, b)| a * b).sum::<i64>())
        .min()
        .expect("fronts are nonempty")
}

/// Sweeps integral `0 <= w <= max_w` (by sum, then lexicographically) and,
/// on the support of `w`, upper bounds `u` in `(0, 1]` with the configured
/// denominators (lexicographically), looking for a failure of
/// `min(2w) >= 2 min(w)` over integral duals. Coordinates off the support
/// do not matter, `u = 0` is the same as dropping the coordinate from `w`,
/// and every `u >= 1` behaves like `u = 1` since a clique costs 1.
///
/// Finding nothing is not a proof of box-perfectness.
pub fn box_tdi_falsify_search(g: &Graph, budget: &Budget) -> Result<FalsifyReport> {
    let n = g.n();
    let max_w = budget.falsify_max_w;
    let dens = &budget.falsify_denominators;
    if max_w < 0 || dens.iter().any(|&d| d <= 0) {
        return Err(Error::InvalidParameter("falsifier limits must be positive".into()));
    }
    let scale = dens.iter().fold(1i64, |a, &d| num_integer::lcm(a, d));
    let mut grid: Vec<Rational> = dens
        .iter()
        .flat_map(|&d| (1..=d).map(move |a| Rational::new(a, d)))
        .collect();
    grid.sort();
    grid.dedup();
    let grid_int: Vec<i64> = grid.iter().map(|q| (q * scale).to_integer()).collect();
    let rows = maximal_cliques(g, budget)?.cliques;
    let mut report = FalsifyReport {
        counterexample: None,
        pairs_checked: 0,
        max_w,
        denominators: dens.clone(),
    };
    let mut w = vec![0i64; n];
    for s in 1..=(n as i64 * max_w) {
        let mut err = None;
        let mut found = None;
        for_each_bounded(n, max_w, s, 0, &mut w, &mut |w| {
            let f1 = pareto_front(&rows, w);
            let double: Vec<i64> = w.iter().map(|x| 2 * x).collect();
            let f2 = pareto_front(&rows, &double);
            let supp: Vec<usize> = (0..n).filter(|&v| w[v] > 0).collect();
            let mut idx = vec![0usize; supp.len()];
            let mut u = vec![0i64; n];
            loop {
                for (i, &v) in supp.iter().enumerate() {
                    u[v] = grid_int[idx[i]];
                }
                report.pairs_checked += 1;
                if report.pairs_checked > budget.falsify_max_pairs {
                    err = Some(Error::budget("falsifier (u, w) pairs", budget.falsify_max_pairs));
                    return false;
                }
                let (a, b) = (front_min(&f2, scale, &u), front_min(&f1, scale, &u));
                if a < 2 * b {
                    found = Some(Counterexample {
                        u: (0..n)
                            .map(|v| if w[v] > 0 { grid[idx[supp.iter().position(|&x| x == v).unwrap()]].to_pq() } else { "0/1".into() })
                            .collect(),
                        w: w.to_vec(),
                        min_double: Rational::new(a, scale).to_pq(),
                        twice_min: Rational::new(2 * b, scale).to_pq(),
                    });
                    return false;
                }
                // odometer, last coordinate fastest
                let mut i = supp.len();
                loop {
                    if i == 0 {
                        return true;
                    }
                    i -= 1;
                    idx[i] += 1;
                    if idx[i] < grid.len() {
                        break;
                    }
                    idx[i] = 0;
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if found.is_some() {
            report.counterexample = found;
            return Ok(report);
        }
    }
    Ok(report)
}

/// Calls `f` on every vector in `[0, cap]^n` with sum `s`, lexicographically;
/// stops when `f` returns false.
fn for_each_bounded(n: usize, cap: i64, s: i64, i: usize, w: &mut Vec<i64>, f: &mut impl FnMut(&[i64]) -> bool) -> bool {
    if i == n {
        return s != 0 || f(w);
    }
    let rest = cap * (n - i - 1) as i64;
    for x in (s - rest).max(0)..=cap.min(s) {
        w[i] = x;
        if !for_each_bounded(n, cap, s - x, i + 1, w, f) {
            w[i] = 0;
            return false;
        }
    }
    w[i] = 0;
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_named, canonical_code};
    use crate::BigRational;

    fn s3_record() -> (Graph, RRecord) {
        let c6 = build_named("Cn", &[6]).unwrap();
        build_r_graph(&c6, [0, 2, 4].iter().collect(), &Graph::complete(3), &Budget::default()).unwrap()
    }

    #[test]
    fn s3_from_c6() {
        let (g, rec) = s3_record();
        assert_eq!(canonical_code(&g).0, canonical_code(&build_named("S_n", &[3]).unwrap()).0);
        assert_eq!((rec.m, rec.deleted_row), (1, None));
    }

    #[test]
    fn build_rejects_bad_inputs() {
        let b = Budget::default();
        let c6 = build_named("Cn", &[6]).unwrap();
        let u: VertexSet = [0, 2, 4].iter().collect();
        assert!(matches!(build_r_graph(&c6, u, &Graph::empty(3), &b), Err(Error::Precondition(_))));
        let c4 = build_named("Cn", &[4]).unwrap();
        assert!(build_r_graph(&c4, [0, 2].iter().collect(), &Graph::complete(2), &b).is_err());
    }

    #[test]
    fn s3_certificate() {
        let b = Budget::default();
        let (g, rec) = s3_record();
        let cert: BoxCertificate<Rational> = make_r_certificate(&g, &rec, None, &b).unwrap();
        assert_eq!(cert.value, Rational::new(3, 10));
        for &u in &[0usize, 2, 4] {
            assert_eq!(cert.w[u], Rational::from_int(0));
            assert_eq!(cert.l[u], Rational::new(4, 5));
        }
        for &v in &[1usize, 3, 5] {
            assert_eq!(cert.w[v], Rational::from_int(1));
        }
        let rep = verify_certificate(&g, &cert, true, &b).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(make_r_certificate::<Rational>(&g, &rec, Some(3), &b).is_err());
        assert!(make_r_certificate::<Rational>(&g, &rec, Some(9), &b).is_err());
        let p7: BoxCertificate<Rational> = make_r_certificate(&g, &rec, Some(7), &b).unwrap();
        assert!(verify_certificate(&g, &p7, false, &b).unwrap().passed);
    }

    #[test]
    fn s5_and_deleted_vertex_case() {
        let b = Budget::default();
        let c10 = build_named("Cn", &[10]).unwrap();
        let (s5, rec) = build_r_graph(&c10, [0, 2, 4, 6, 8].iter().collect(), &Graph::complete(5), &b).unwrap();
        assert_eq!(canonical_code(&s5).0, canonical_code(&build_named("S_n", &[5]).unwrap()).0);
        let cert: BoxCertificate<Rational> = make_r_certificate(&s5, &rec, None, &b).unwrap();
        assert_eq!(cert.value, Rational::new(5, 14));
        assert!(verify_certificate(&s5, &cert, true, &b).unwrap().passed);

        // U = 0..4 with 0 adjacent to all of V = 4..8
        let gp = Graph::from_edges(8, &[(0, 4), (0, 5), (0, 6), (0, 7), (1, 4), (1, 5), (2, 4), (2, 6), (3, 4), (3, 7)]).unwrap();
        let (g, rec) = build_r_graph(&gp, (0..4).collect(), &Graph::complete(4), &b).unwrap();
        assert_eq!(rec.deleted_row, Some(0));
        assert_eq!(rec.u_vertices, vec![None, Some(0), Some(1), Some(2)]);
        assert_eq!(canonical_code(&g).0, canonical_code(&build_named("barS3plus", &[]).unwrap()).0);
        let cert: BoxCertificate<Rational> = make_r_certificate(&g, &rec, Some(2), &b).unwrap();
        assert_eq!(cert.value, Rational::new(5, 4));
        let rep = verify_certificate(&g, &cert, true, &b).unwrap();
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn figure_four_vectors() {
        let b = Budget::default();
        let (h, cert) = figure_four_certificate();
        let rep = verify_certificate(&h, &cert, true, &b).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.value, "7/4");
        assert_eq!(rep.integral_dual_optimum.as_deref(), Some("2/1"));
    }

    #[test]
    fn corrupted_certificates_name_the_failure() {
        let b = Budget::default();
        let (h, cert) = figure_four_certificate();
        let mut bad = cert.clone();
        bad.x[4] += Rational::new(1, 4);
        let rep = verify_certificate(&h, &bad, true, &b).unwrap();
        assert!(rep.failed().contains(&Check::PrimalCliques));
        assert!(rep.failed().contains(&Check::IntegralDual));
        let mut bad = cert.clone();
        bad.y[0] = Rational::new(-1, 2);
        assert!(verify_certificate(&h, &bad, false, &b).unwrap().failed().contains(&Check::DualNonnegative));
        let mut bad = cert.clone();
        bad.z[5] = Rational::from_int(0);
        assert!(verify_certificate(&h, &bad, false, &b).unwrap().failed().contains(&Check::DualEquations));
        let mut bad = cert.clone();
        bad.value = Rational::new(3, 2);
        let f = verify_certificate(&h, &bad, false, &b).unwrap().failed();
        assert!(f.contains(&Check::PrimalObjective) && f.contains(&Check::Obstruction));
        let mut bad = cert.clone();
        bad.rows.swap(0, 1);
        bad.rows[0] = [0usize, 1].iter().collect();
        assert!(verify_certificate(&h, &bad, false, &b).unwrap().failed().contains(&Check::RowOrder));
        let mut bad = cert;
        bad.y.pop();
        assert!(matches!(verify_certificate(&h, &bad, false, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let (h, cert) = figure_four_certificate();
        let s = serde_json::to_string(&cert).unwrap();
        assert!(s.contains("\"7/4\""));
        let back: BoxCertificate<Rational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cert);
        let big: BoxCertificate<BigRational> = serde_json::from_str(&s).unwrap();
        let b = Budget::default();
        assert_eq!(
            verify_certificate(&h, &big, true, &b).unwrap(),
            verify_certificate(&h, &cert, true, &b).unwrap()
        );
    }

    #[test]
    fn integral_dual_examples() {
        let b = Budget::default();
        let one = Rational::from_int(1);
        let k2 = Graph::complete(2);
        let r = integral_dual_optimum(&k2, &[one; 2], &[1, 1], &b).unwrap();
        assert_eq!((r.value, r.y, r.z), (one, vec![1], vec![0, 0]));
        let s3 = build_named("S_n", &[3]).unwrap();
        let r = integral_dual_optimum(&s3, &[one; 6], &[0, 1, 0, 1, 0, 1], &b).unwrap();
        assert_eq!(r.value, one);
        let r = integral_dual_optimum(&s3, &[one; 6], &[0; 6], &b).unwrap();
        assert_eq!(r.value, Rational::from_int(0));
        let half = Rational::new(1, 2);
        let r = integral_dual_optimum(&k2, &[half, half], &[1, 1], &b).unwrap();
        assert_eq!((r.value, r.z), (one, vec![0, 0]));
        let r = integral_dual_optimum(&k2, &[half, half], &[1, 0], &b).unwrap();
        assert_eq!((r.value, r.z), (half, vec![1, 0]));
    }

    #[test]
    fn falsifier_controls() {
        let b = Budget::default();
        for g in [build_named("Cn", &[4]).unwrap(), build_named("Cn", &[6]).unwrap(), Graph::complete(1), Graph::complete(4)] {
            assert_eq!(box_tdi_falsify_search(&g, &b).unwrap().counterexample, None);
        }
        let r = box_tdi_falsify_search(&build_named("barS3plus", &[]).unwrap(), &b).unwrap();
        assert!(r.counterexample.is_some());
    }
}

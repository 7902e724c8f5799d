//! Named graph families with fixed vertex numbering.
//!
//! | id          | params              | numbering |
//! |-------------|---------------------|-----------|
//! | `S_n`       | `[n]`, n >= 2       | cycle `v1..v2n` as `0..2n-1`; the even `v_i` (odd indices) form a clique |
//! | `barS3`     | `[]`                | complement of `S_3`, same numbering |
//! | `barS3plus` | `[]`                | `barS3` plus vertex 6 joined to all |
//! | `Gamma`     | `[]`                | 6-cycle `0..5` plus chords `0-2`, `0-4` |
//! | `K4plus`    | `[]`                | `K4` on `0..3`, pendants `4-0`, `5-1` |
//! | `K2nplus`   | `[n]`, n >= 3       | `0,1` the degree-n side (joined to each other), `2..n+1` the other side, pendant `n+2` on vertex 2 |
//! | `Cn`        | `[n]`, n >= 3       | cycle `0-1-...-(n-1)-0` |
//! | `Kmn`       | `[m, n]`            | `0..m` one side, `m..m+n` the other |
//! | `classC`    | `[L, k, x1..xk, c1..ck]` | even cycle `0..L-1`; pendants on `Y = V - X - N(X)` in increasing order; then `c_i` false twins of each `x_i` |
//! | `fig4`      | `[]`                | the 10-vertex graph from `C_10` and `C_5 + e`, labels `"0".."9"` |
//! | `fig4H`     | `[]`                | `fig4` minus vertices 9 and 0, labels `"1".."8"` |

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

use super::Graph;

/// Catalog identifiers accepted by [`build_named`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    SN,
    BarS3,
    BarS3Plus,
    Gamma,
    K4Plus,
    K2nPlus,
    Cycle,
    CompleteBipartite,
    ClassC,
    FigureFour,
    FigureFourH,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::SN,
        Family::BarS3,
        Family::BarS3Plus,
        Family::Gamma,
        Family::K4Plus,
        Family::K2nPlus,
        Family::Cycle,
        Family::CompleteBipartite,
        Family::ClassC,
        Family::FigureFour,
        Family::FigureFourH,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::SN => "S_n",
            Family::BarS3 => "barS3",
            Family::BarS3Plus => "barS3plus",
            Family::Gamma => "Gamma",
            Family::K4Plus => "K4plus",
            Family::K2nPlus => "K2nplus",
            Family::Cycle => "Cn",
            Family::CompleteBipartite => "Kmn",
            Family::ClassC => "classC",
            Family::FigureFour => "fig4",
            Family::FigureFourH => "fig4H",
        }
    }

    pub fn from_id(id: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.id() == id)
            .ok_or_else(|| Error::UnknownFamily(id.to_string()))
    }
}

fn arity(name: &str, params: &[i64], expected: usize) -> Result<()> {
    if params.len() != expected {
        return Err(Error::InvalidParameter(format!(
            "{name} takes {expected} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

fn at_least(name: &str, value: i64, min: i64) -> Result<usize> {
    if value < min {
        return Err(Error::InvalidParameter(format!("{name} needs n >= {min}, got {value}")));
    }
    Ok(value as usize)
}

/// Builds a catalog graph. See the module docs for numbering.
pub fn build_named(name: &str, params: &[i64]) -> Result<Graph> {
    match Family::from_id(name)? {
        Family::SN => {
            arity(name, params, 1)?;
            s_n(at_least(name, params[0], 2)?)
        }
        Family::BarS3 => {
            arity(name, params, 0)?;
            Ok(s_n(3)?.complement())
        }
        Family::BarS3Plus => {
            arity(name, params, 0)?;
            let bar = s_n(3)?.complement();
            let mut g = Graph::empty(7);
            for (u, v) in bar.edges() {
                g.add_edge(u, v);
            }
            for v in 0..6 {
                g.add_edge(6, v);
            }
            Ok(g)
        }
        Family::Gamma => {
            arity(name, params, 0)?;
            let mut g = cycle(6);
            g.add_edge(0, 2);
            g.add_edge(0, 4);
            Ok(g)
        }
        Family::K4Plus => {
            arity(name, params, 0)?;
            let mut g = Graph::empty(6);
            for u in 0..4 {
                for v in u + 1..4 {
                    g.add_edge(u, v);
                }
            }
            g.add_edge(4, 0);
            g.add_edge(5, 1);
            Ok(g)
        }
        Family::K2nPlus => {
            arity(name, params, 1)?;
            let n = at_least(name, params[0], 3)?;
            super::check_size(n + 3)?;
            let mut g = Graph::empty(n + 3);
            g.add_edge(0, 1);
            for v in 2..n + 2 {
                g.add_edge(0, v);
                g.add_edge(1, v);
            }
            g.add_edge(2, n + 2);
            Ok(g)
        }
        Family::Cycle => {
            arity(name, params, 1)?;
            let n = at_least(name, params[0], 3)?;
            super::check_size(n)?;
            Ok(cycle(n))
        }
        Family::CompleteBipartite => {
            arity(name, params, 2)?;
            let m = at_least(name, params[0], 0)?;
            let n = at_least(name, params[1], 0)?;
            super::check_size(m + n)?;
            let mut g = Graph::empty(m + n);
            for u in 0..m {
                for v in m..m + n {
                    g.add_edge(u, v);
                }
            }
            Ok(g)
        }
        Family::ClassC => class_c(params),
        Family::FigureFour => {
            arity(name, params, 0)?;
            Ok(figure_four())
        }
        Family::FigureFourH => {
            arity(name, params, 0)?;
            let g = figure_four();
            g.induced_subgraph(VertexSet::full(10).without(0).without(9))
        }
    }
}

fn cycle(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    g
}

fn s_n(n: usize) -> Result<Graph> {
    super::check_size(2 * n)?;
    let mut g = cycle(2 * n);
    // v_i is index i-1, so the even v_i sit at odd indices
    for i in (1..2 * n).step_by(2) {
        for j in (i + 2..2 * n).step_by(2) {
            g.add_edge(i, j);
        }
    }
    Ok(g)
}

fn class_c(params: &[i64]) -> Result<Graph> {
    let bad = |m: &str| Error::InvalidParameter(format!("classC: {m}"));
    if params.len() < 2 {
        return Err(bad("expected [L, k, x1..xk, c1..ck]"));
    }
    let len = at_least("classC", params[0], 4)?;
    if len % 2 != 0 {
        return Err(bad("cycle length must be even"));
    }
    let k = at_least("classC", params[1], 0)?;
    if params.len() != 2 + 2 * k {
        return Err(bad("expected [L, k, x1..xk, c1..ck]"));
    }
    let xs: Vec<usize> = params[2..2 + k]
        .iter()
        .map(|&x| {
            if x < 0 || x as usize >= len {
                Err(bad("stable-set vertex out of range"))
            } else {
                Ok(x as usize)
            }
        })
        .collect::<Result<_>>()?;
    let copies: Vec<usize> = params[2 + k..]
        .iter()
        .map(|&c| at_least("classC duplication count", c, 0))
        .collect::<Result<_>>()?;
    let c = cycle(len);
    let x_set: VertexSet = xs.iter().collect();
    if x_set.len() != k {
        return Err(bad("X has repeated vertices"));
    }
    if !c.is_stable(x_set) {
        return Err(bad("X is not a stable set of the cycle"));
    }
    let mut covered = x_set;
    for &x in &xs {
        covered = covered.union(c.neighbors(x));
    }
    let ys = VertexSet::full(len).difference(covered).to_vec();
    let total = len + ys.len() + copies.iter().sum::<usize>();
    super::check_size(total)?;
    let mut g = Graph::empty(total);
    for (u, v) in c.edges() {
        g.add_edge(u, v);
    }
    let mut next = len;
    for &y in &ys {
        g.add_edge(y, next);
        next += 1;
    }
    for (&x, &count) in xs.iter().zip(&copies) {
        for _ in 0..count {
            for u in c.neighbors(x).iter() {
                g.add_edge(next, u);
            }
            next += 1;
        }
    }
    Ok(g)
}

/// The 10-vertex graph built from `C_10` and `C_5 + e`.
///
/// Vertex `i` carries label `"i"`. Vertices 1..5 induce the 5-cycle
/// 1-2-3-4-5-1 with chord 1-3; vertices 6, 7, 8, 9, 0 are attached to the
/// cycle edges 12, 23, 34, 45, 51 respectively, so that
/// 1-6-2-7-3-8-4-9-5-0-1 is the 10-cycle.
pub fn figure_four() -> Graph {
    let mut g = Graph::empty(10);
    for (u, v) in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)] {
        g.add_edge(u, v);
    }
    for (w, (a, b)) in [(6, (1, 2)), (7, (2, 3)), (8, (3, 4)), (9, (4, 5)), (0, (5, 1))] {
        g.add_edge(w, a);
        g.add_edge(w, b);
    }
    g.with_labels((0..10).map(|i| i.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_shape() {
        let g = build_named("S_n", &[3]).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 9);
        assert!(g.is_clique([1, 3, 5].iter().collect()));
        assert!(g.is_stable([0, 2, 4].iter().collect()));
        assert!(build_named("S_n", &[1]).is_err());
    }

    #[test]
    fn cycle_and_bars3plus() {
        let c4 = build_named("Cn", &[4]).unwrap();
        assert_eq!((c4.n(), c4.edge_count()), (4, 4));
        let g = build_named("barS3plus", &[]).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.degree(6), 6);
        assert_eq!(g.delete_vertex(6).unwrap(), build_named("S_n", &[3]).unwrap().complement());
    }

    #[test]
    fn small_families() {
        let k = build_named("K2nplus", &[3]).unwrap();
        assert_eq!((k.n(), k.edge_count()), (6, 8));
        let k4p = build_named("K4plus", &[]).unwrap();
        assert_eq!(k4p.edge_count(), 8);
        let gamma = build_named("Gamma", &[]).unwrap();
        assert_eq!(gamma.edge_count(), 8);
        assert_eq!(build_named("Kmn", &[3, 3]).unwrap().edge_count(), 9);
        assert!(matches!(build_named("Petersen", &[]), Err(Error::UnknownFamily(_))));
        assert!(build_named("Cn", &[4, 5]).is_err());
    }

    #[test]
    fn class_c_construction() {
        // C_8 with X = {0}: N(X) = {1, 7}, Y = {2..6}
        let g = build_named("classC", &[8, 1, 0, 2]).unwrap();
        assert_eq!(g.n(), 8 + 5 + 2);
        assert!(g.is_bipartite());
        assert_eq!(g.neighbors(13), g.neighbors(0));
        assert!(build_named("classC", &[8, 2, 0, 1, 0, 0]).is_err());
        assert!(build_named("classC", &[7, 0]).is_err());
        assert_eq!(build_named("classC", &[6, 0]).unwrap().n(), 12);
    }

    #[test]
    fn figure_four_h_has_labels_one_to_eight() {
        let h = build_named("fig4H", &[]).unwrap();
        assert_eq!(h.n(), 8);
        let labels: Vec<String> = (0..8).map(|v| h.label(v)).collect();
        assert_eq!(labels, ["1", "2", "3", "4", "5", "6", "7", "8"]);
        assert!(h.is_clique([0, 1, 2].iter().collect()));
    }
}

//! Maximal cliques and the maximal-clique incidence matrix `B_G`.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::IntMatrix;

/// An ordered list of cliques of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueFamily {
    pub cliques: Vec<VertexSet>,
    pub maximal: bool,
}

impl CliqueFamily {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Index of `clique` in the family.
    pub fn position(&self, clique: VertexSet) -> Option<usize> {
        self.cliques.iter().position(|&c| c == clique)
    }

    /// Clique-vertex incidence matrix over `n` vertices.
    pub fn incidence(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.cliques.len(), n);
        for (i, c) in self.cliques.iter().enumerate() {
            for v in c.iter() {
                m.set(i, v, 1);
            }
        }
        m
    }

    /// Number of members containing each vertex.
    pub fn counts(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0; n];
        for k in &self.cliques {
            for v in k.iter() {
                c[v] += 1;
            }
        }
        c
    }
}

/// All maximal cliques in increasing order of their sorted vertex lists.
///
/// The empty graph has no maximal cliques; an isolated vertex is one.
pub fn maximal_cliques(g: &Graph, budget: &Budget) -> Result<CliqueFamily> {
    let mut out = Vec::new();
    if g.n() > 0 {
        bron_kerbosch(g, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut out, budget.max_cliques)?;
    }
    out.sort();
    Ok(CliqueFamily {
        cliques: out,
        maximal: true,
    })
}

fn bron_kerbosch(
    g: &Graph,
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
    limit: u64,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() {
            if out.len() as u64 >= limit {
                return Err(Error::budget("maximal clique enumeration", limit));
            }
            out.push(r);
        }
        return Ok(());
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| (p.intersection(g.neighbors(u)).len(), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    for v in p.difference(g.neighbors(pivot)).iter() {
        let nv = g.neighbors(v);
        bron_kerbosch(g, r.with(v), p.intersection(nv), x.intersection(nv), out, limit)?;
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

/// `B_G` (rows in [`maximal_cliques`] order, columns by vertex) and `c_G = 1^T B_G`.
pub fn clique_matrix(g: &Graph, budget: &Budget) -> Result<(IntMatrix, Vec<i64>)> {
    let fam = maximal_cliques(g, budget)?;
    Ok((fam.incidence(g.n()), fam.counts(g.n())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named;

    fn brute_force(g: &Graph) -> Vec<VertexSet> {
        let n = g.n();
        let cliques: Vec<VertexSet> = (1u64..1 << n)
            .map(VertexSet::from_bits)
            .filter(|&s| g.is_clique(s))
            .collect();
        let mut max: Vec<VertexSet> = cliques
            .iter()
            .copied()
            .filter(|&c| !cliques.iter().any(|&d| d != c && c.is_subset(d)))
            .collect();
        max.sort();
        max
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn known_families() {
        let b = Budget::default();
        assert_eq!(maximal_cliques(&Graph::complete(5), &b).unwrap().cliques, vec![VertexSet::full(5)]);
        let s3 = build_named("S_n", &[3]).unwrap();
        assert_eq!(
            maximal_cliques(&s3, &b).unwrap().cliques,
            vec![set(&[0, 1, 5]), set(&[1, 2, 3]), set(&[1, 3, 5]), set(&[3, 4, 5])]
        );
        let c4 = build_named("Cn", &[4]).unwrap();
        assert_eq!(maximal_cliques(&c4, &b).unwrap().len(), 4);
        assert!(maximal_cliques(&Graph::empty(0), &b).unwrap().is_empty());
        assert_eq!(maximal_cliques(&Graph::empty(2), &b).unwrap().len(), 2);
    }

    #[test]
    fn clique_matrices() {
        let b = Budget::default();
        let (m, c) = clique_matrix(&Graph::complete(2), &b).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 1]], 2).unwrap());
        assert_eq!(c, vec![1, 1]);
        let (m, c) = clique_matrix(&build_named("S_n", &[3]).unwrap(), &b).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 6));
        assert_eq!(c, vec![1, 3, 1, 3, 1, 3]);
        assert_eq!(m.column_sums(), c);
        let (_, c) = clique_matrix(&build_named("Cn", &[4]).unwrap(), &b).unwrap();
        assert_eq!(c, vec![2; 4]);
    }

    #[test]
    fn budget_is_enforced() {
        let b = Budget {
            max_cliques: 3,
            ..Budget::default()
        };
        assert!(matches!(
            maximal_cliques(&build_named("Cn", &[5]).unwrap(), &b),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn agrees_with_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=9);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(maximal_cliques(&g, &Budget::default()).unwrap().cliques, brute_force(&g));
        }
    }

    #[test]
    fn restriction_rows_are_maximal_traces() {
        // B of G[X] = maximal elements among {K ∩ X}
        let g = build_named("fig4", &[]).unwrap();
        let b = Budget::default();
        let full = maximal_cliques(&g, &b).unwrap();
        let x = set(&[1, 2, 3, 4, 6, 8]);
        let traces: Vec<VertexSet> = full.cliques.iter().map(|k| k.intersection(x)).collect();
        let mut expect: Vec<VertexSet> = traces
            .iter()
            .copied()
            .filter(|&t| !t.is_empty() && !traces.iter().any(|&u| u != t && t.is_subset(u)))
            .collect();
        expect.sort();
        expect.dedup();
        let sub = g.induced_subgraph(x).unwrap();
        let mapped: Vec<VertexSet> = maximal_cliques(&sub, &b)
            .unwrap()
            .cliques
            .iter()
            .map(|c| c.iter().map(|i| x.to_vec()[i]).collect())
            .collect();
        let mut mapped = mapped;
        mapped.sort();
        assert_eq!(mapped, expect);
    }
}

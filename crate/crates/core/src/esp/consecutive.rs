use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::CliqueMultiset;

/// Rearranges the cliques of `lambda` on a graph covered by two cliques
/// `x` and `y`: the `i`-th output clique (from 1) holds every `v` in `x`
/// with `i <= d(v)` and every `v` in `y` with `i > |L| - d(v)`.
///
/// Each output is checked to be a clique; a failure means two nonadjacent
/// vertices `a` in `x`, `b` in `y` have `d(a) + d(b) > |L|`.
pub fn consecutive_clique_family(g: &Graph, lambda: &CliqueMultiset, x: VertexSet, y: VertexSet) -> Result<Vec<VertexSet>> {
    g.check_set(x)?;
    g.check_set(y)?;
    if !x.intersection(y).is_empty() || x.union(y) != g.vertices() || !g.is_clique(x) || !g.is_clique(y) {
        return Err(Error::Precondition("(X, Y) is not a partition into two cliques".into()));
    }
    lambda.validate(g)?;
    let k = lambda.size() as i64;
    let d = lambda.degrees(g.n());
    let mut out = Vec::new();
    for i in 1..=k {
        let q: VertexSet = x
            .iter()
            .filter(|&v| i <= d[v])
            .chain(y.iter().filter(|&v| i > k - d[v]))
            .collect();
        if !g.is_clique(q) {
            let (a, b) = x
                .intersection(q)
                .iter()
                .flat_map(|a| y.intersection(q).iter().map(move |b| (a, b)))
                .find(|&(a, b)| !g.has_edge(a, b))
                .expect("a non-clique union of two cliques has a cross non-edge");
            return Err(Error::Precondition(format!(
                "term {i} is not a clique: {a} and {b} are nonadjacent with d = {} + {} > {k}",
                d[a], d[b]
            )));
        }
        out.push(q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn small_cases() {
        let g = Graph::empty(2);
        let l = CliqueMultiset::from_cliques([set(&[0]), set(&[1])]);
        assert_eq!(consecutive_clique_family(&g, &l, set(&[0]), set(&[1])).unwrap(), vec![set(&[0]), set(&[1])]);
        let k2 = Graph::complete(2);
        let l = CliqueMultiset::from_cliques([set(&[0, 1]), set(&[0, 1])]);
        assert_eq!(consecutive_clique_family(&k2, &l, set(&[0]), set(&[1])).unwrap(), vec![set(&[0, 1]); 2]);
        assert!(consecutive_clique_family(&k2, &l, set(&[0]), set(&[0])).is_err());
    }

    #[test]
    fn cobipartite_random_families() {
        // 0,1 | 2,3 with the single non-edge 1-2
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (0, 3), (1, 3)]).unwrap();
        let cliques: Vec<VertexSet> = (1u64..16).map(VertexSet::from_bits).filter(|&c| g.is_clique(c)).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut built = 0;
        for _ in 0..200 {
            let l = CliqueMultiset::from_cliques((0..3).map(|_| cliques[rng.gen_range(0..cliques.len())]));
            match consecutive_clique_family(&g, &l, set(&[0, 1]), set(&[2, 3])) {
                Ok(q) => {
                    built += 1;
                    assert_eq!(q.len(), 3);
                    assert!(q.iter().all(|&c| g.is_clique(c)));
                    assert_eq!(CliqueMultiset::from_cliques(q).degrees(4), l.degrees(4));
                }
                Err(e) => {
                    let d = l.degrees(4);
                    assert!(d[1] + d[2] > 3, "{e}");
                }
            }
        }
        assert!(built > 0);
    }
}
